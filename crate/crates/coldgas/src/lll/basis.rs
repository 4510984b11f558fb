//! Bosonic lowest-Landau-level basis at fixed particle number and total
//! angular momentum: partitions of `L` into at most `N` parts, one
//! symmetrized monomial `m_lambda(z_1..z_N)` per partition.

use std::collections::HashMap;

use crate::math;

use super::LllError;

/// One basis state, stored as occupation numbers `occ[m]` of the
/// single-particle angular momentum modes `z^m`, `m = 0..=L`.
/// `sum occ = N`, `sum m * occ[m] = L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub occ: Vec<u8>,
}

impl BasisState {
    /// Partition view: positive parts in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (m, &c) in self.occ.iter().enumerate().rev() {
            for _ in 0..c {
                if m > 0 {
                    out.push(m as u32);
                }
            }
        }
        out
    }
}

/// Ordered basis of the `(N, L)` block with an index for occupation lookup.
#[derive(Debug, Clone)]
pub struct LLLBasis {
    pub n: u32,
    pub l: u32,
    pub states: Vec<BasisState>,
    index: HashMap<Vec<u8>, usize>,
}

impl LLLBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, occ: &[u8]) -> Option<usize> {
        self.index.get(occ).copied()
    }
}

/// Number of partitions of `l` into at most `n` parts, by the standard
/// recurrence `p(l, n) = p(l, n-1) + p(l - n, n)`.
pub fn count_partitions_at_most(l: u32, n: u32) -> u64 {
    let l = l as usize;
    let n = n as usize;
    let mut table = vec![0u64; l + 1];
    table[0] = 1;
    for k in 1..=n {
        for v in k..=l {
            table[v] += table[v - k];
        }
    }
    table[l]
}

/// Enumerate the full `(N, L)` basis in lexicographic (largest-part-first)
/// order, duplicate-free. Errors with `SizeLimit` if the block dimension
/// would exceed `cap`.
pub fn enumerate_basis_capped(n: u32, l: u32, cap: usize) -> Result<LLLBasis, LllError> {
    assert!(n >= 1, "need at least one particle");
    let dim = count_partitions_at_most(l, n);
    if dim > cap as u64 {
        return Err(LllError::SizeLimit {
            dim,
            cap,
            n,
            l,
        });
    }
    let mut states = Vec::with_capacity(dim as usize);
    let mut parts: Vec<u32> = Vec::new();
    gen_partitions(l, n, l, &mut parts, &mut |parts| {
        let mut occ = vec![0u8; l as usize + 1];
        occ[0] = (n - parts.len() as u32) as u8;
        for &p in parts {
            occ[p as usize] += 1;
        }
        states.push(BasisState { occ });
    });
    debug_assert_eq!(states.len() as u64, dim);
    let index = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.occ.clone(), i))
        .collect();
    Ok(LLLBasis {
        n,
        l,
        states,
        index,
    })
}

/// Enumerate with the default size cap.
pub fn enumerate_basis(n: u32, l: u32) -> Result<LLLBasis, LllError> {
    enumerate_basis_capped(n, l, super::DEFAULT_SIZE_CAP)
}

fn gen_partitions(
    remaining: u32,
    slots: u32,
    max_part: u32,
    parts: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if remaining == 0 {
        emit(parts);
        return;
    }
    if slots == 0 {
        return;
    }
    let hi = remaining.min(max_part);
    for p in (1..=hi).rev() {
        parts.push(p);
        gen_partitions(remaining - p, slots - 1, p, parts, emit);
        parts.pop();
    }
}

/// Squared Bargmann norm of the single mode `z^m` under the weight
/// `e^{-beta |z|^2}`: `pi m! / beta^{m+1}`.
pub fn single_mode_norm(m: u32, beta: f64) -> f64 {
    assert!(beta > 0.0);
    std::f64::consts::PI * math::factorial(m) / beta.powi(m as i32 + 1)
}

/// Squared Bargmann norms of the symmetrized monomials: the number of
/// distinct arrangements `N! / prod_m occ_m!` times the product of
/// single-mode norms over all N slots (zeros included).
pub fn bargmann_norms(basis: &LLLBasis, beta: f64) -> Vec<f64> {
    assert!(beta > 0.0);
    basis
        .states
        .iter()
        .map(|s| {
            let mut arrangements = math::factorial(basis.n);
            let mut product = 1.0;
            for (m, &c) in s.occ.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                arrangements /= math::factorial(c as u32);
                product *= single_mode_norm(m as u32, beta).powi(c as i32);
            }
            arrangements * product
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_blocks_match_hand_enumeration() {
        let b = enumerate_basis(2, 2).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.states[0].parts(), vec![2]);
        assert_eq!(b.states[1].parts(), vec![1, 1]);

        let b = enumerate_basis(3, 3).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.states[0].parts(), vec![3]);
        assert_eq!(b.states[1].parts(), vec![2, 1]);
        assert_eq!(b.states[2].parts(), vec![1, 1, 1]);
    }

    #[test]
    fn single_particle_block_is_one_dimensional() {
        for l in [0, 1, 5, 12] {
            assert_eq!(enumerate_basis(1, l).unwrap().dim(), 1);
        }
    }

    #[test]
    fn enumeration_count_matches_recurrence() {
        for n in 1..=8u32 {
            for l in 0..=40u32 {
                let count = count_partitions_at_most(l, n);
                if count <= 20_000 {
                    let b = enumerate_basis(n, l).unwrap();
                    assert_eq!(b.dim() as u64, count, "N = {n}, L = {l}");
                }
            }
        }
    }

    #[test]
    fn states_are_unique_and_consistent() {
        let b = enumerate_basis(6, 30).unwrap();
        for (i, s) in b.states.iter().enumerate() {
            let total: u32 = s.occ.iter().map(|&c| c as u32).sum();
            let ell: u32 = s.occ.iter().enumerate().map(|(m, &c)| m as u32 * c as u32).sum();
            assert_eq!(total, 6);
            assert_eq!(ell, 30);
            assert_eq!(b.index_of(&s.occ), Some(i));
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let err = enumerate_basis_capped(6, 30, 10).unwrap_err();
        assert!(matches!(err, LllError::SizeLimit { .. }));
    }

    #[test]
    fn single_mode_norm_ratio_is_beta() {
        for beta in [0.25, 0.5, 1.0, 2.0] {
            let ratio = single_mode_norm(0, beta) / single_mode_norm(1, beta);
            assert!((ratio - beta).abs() < 1e-14);
        }
    }

    /// 2-variable Gaussian integral oracle for the symmetrized-monomial
    /// norms: after a global rotation the angular integrals reduce to one
    /// relative angle; the remaining 3D integral is done by quadrature.
    fn norm_sq_quadrature(parts: &[u32], beta: f64) -> f64 {
        // m_lambda over two variables, |m(z1, z2)|^2, z1 = r1 e^{i th}, z2 = r2.
        let monomial = |r1: f64, r2: f64, th: f64| -> (f64, f64) {
            let (mut re, mut im) = (0.0, 0.0);
            let mut seen = std::collections::HashSet::new();
            let perms: [(u32, u32); 2] = [(parts[0], parts[1]), (parts[1], parts[0])];
            for (a, b) in perms {
                if !seen.insert((a, b)) {
                    continue;
                }
                let mag = r1.powi(a as i32) * r2.powi(b as i32);
                re += mag * (a as f64 * th).cos();
                im += mag * (a as f64 * th).sin();
            }
            (re, im)
        };
        let rmax = 9.0 / beta.sqrt();
        let nr = 400;
        let nth = 256;
        let dr = rmax / nr as f64;
        let dth = 2.0 * std::f64::consts::PI / nth as f64;
        let mut acc = 0.0;
        for i in 0..nr {
            let r1 = (i as f64 + 0.5) * dr;
            for j in 0..nr {
                let r2 = (j as f64 + 0.5) * dr;
                let w = (-beta * (r1 * r1 + r2 * r2)).exp() * r1 * r2;
                let mut ang = 0.0;
                for k in 0..nth {
                    let th = k as f64 * dth;
                    let (re, im) = monomial(r1, r2, th);
                    ang += re * re + im * im;
                }
                acc += w * ang * dth;
            }
        }
        // Global-rotation factor 2 pi and radial measure r dr per variable.
        acc * dr * dr * 2.0 * std::f64::consts::PI
    }

    #[test]
    fn norms_match_gaussian_quadrature_oracle() {
        let beta = 1.0;
        let b = enumerate_basis(2, 2).unwrap();
        let norms = bargmann_norms(&b, beta);
        // (2,0) and (1,1) blocks.
        let oracle20 = norm_sq_quadrature(&[2, 0], beta);
        let oracle11 = norm_sq_quadrature(&[1, 1], beta);
        assert!((norms[0] - oracle20).abs() < 1e-3 * oracle20);
        assert!((norms[1] - oracle11).abs() < 1e-3 * oracle11);
        // Symmetrization factor ratio: norms divided by the single-mode
        // products leave the arrangement counts, 2 for (2,0) vs 1 for (1,1).
        let prod20 = single_mode_norm(2, beta) * single_mode_norm(0, beta);
        let prod11 = single_mode_norm(1, beta) * single_mode_norm(1, beta);
        let ratio = (norms[0] / prod20) / (norms[1] / prod11);
        assert!((ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn one_particle_norm_matches_closed_form() {
        let beta = 0.7;
        for m in [0u32, 1, 3, 6] {
            let b = enumerate_basis(1, m).unwrap();
            assert_eq!(b.dim(), 1);
            let norms = bargmann_norms(&b, beta);
            assert!((norms[0] - single_mode_norm(m, beta)).abs() < 1e-12 * norms[0]);
        }
    }
}
