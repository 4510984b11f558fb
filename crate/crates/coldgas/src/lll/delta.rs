//! Assembly of the projected contact interaction `Delta_N = sum_{i<j} delta_ij`
//! in the orthonormalized symmetrized-monomial basis of one `(N, L)` block.
//!
//! The production route follows the printed operator action literally: the
//! pair map is expanded on monomial pairs via the binomial theorem,
//! `delta_12 (z_1^p z_2^q) = c 2^{-M} sum_k C(M,k) z_1^k z_2^{M-k}` with
//! `M = p + q`, and lifted to `N` particles by summing over particle pairs
//! of the symmetrized monomials. Matrix elements between unnormalized
//! monomial states follow from multiset counting; the orthonormal-basis
//! matrix is the similarity transform by the Bargmann norms. A second,
//! independent assembly from second-quantized two-body elements lives in the
//! test suite as the oracle for this one.

use crate::math;

use super::basis::{bargmann_norms, enumerate_basis_capped, LLLBasis};
use super::{LllError, LllOptions};

/// Measure weight exponent that reproduces the known closed-form yrast
/// values; see the module docs.
pub const DEFAULT_BETA: f64 = 1.0;

/// Strength of the projected contact pair interaction for measure exponent
/// `beta`: `(beta / 2 pi)^{3/2}`. Equals `(2 pi)^{-3/2}` at `beta = 1`.
pub fn delta_constant(beta: f64) -> f64 {
    assert!(beta > 0.0);
    (beta / (2.0 * std::f64::consts::PI)).powf(1.5)
}

/// Sparse symmetric matrix of `Delta_N` on one angular-momentum block,
/// stored by columns in the orthonormalized basis.
#[derive(Debug, Clone)]
pub struct DeltaMatrix {
    pub dim: usize,
    cols: Vec<Vec<(u32, f64)>>,
}

impl DeltaMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d * d];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize * d + j] = v;
            }
        }
        out
    }

    /// `y = A x` (uses the stored columns as rows, valid up to the assembly
    /// symmetry error of ~1e-15).
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        crate::exec::fill(y, |i| {
            let mut acc = 0.0;
            for &(j, v) in &self.cols[i] {
                acc += v * x[j as usize];
            }
            acc
        });
    }

    /// Largest |A_ij - A_ji| over the stored pattern.
    pub fn max_asymmetry(&self) -> f64 {
        let mut lookup = vec![std::collections::HashMap::new(); self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                lookup[i as usize].insert(j, v);
            }
        }
        let mut worst: f64 = 0.0;
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                let vt = lookup[j].get(&(i as usize)).copied().unwrap_or(0.0);
                worst = worst.max((v - vt).abs());
            }
        }
        worst
    }
}

/// Assemble the block for `(N, L)` with explicit options.
pub fn delta_matrix(n: u32, l: u32, opts: &LllOptions) -> Result<DeltaMatrix, LllError> {
    let basis = enumerate_basis_capped(n, l, opts.size_cap)?;
    Ok(delta_matrix_for_basis(&basis, opts.beta))
}

/// Assemble the block on an existing basis.
pub fn delta_matrix_for_basis(basis: &LLLBasis, beta: f64) -> DeltaMatrix {
    let c = delta_constant(beta);
    let norms = bargmann_norms(basis, beta);
    let d: Vec<f64> = norms.iter().map(|&x| x.sqrt()).collect();
    let dim = basis.dim();
    let l = basis.l as usize;

    let col_indices: Vec<usize> = (0..dim).collect();
    let columns: Vec<Vec<(u32, f64)>> = crate::exec::map_collect(&col_indices, |&j| {
        let state = &basis.states[j];
        let mut acc: Vec<f64> = vec![0.0; dim];
        // Unordered removable value pairs {p, q} of the source multiset.
        for p in 0..=l {
            if state.occ[p] == 0 {
                continue;
            }
            for q in p..=l {
                if state.occ[q] == 0 || (q == p && state.occ[p] < 2) {
                    continue;
                }
                let ordered = if p == q { 1.0 } else { 2.0 };
                let m_tot = p + q;
                let two_pow = 0.5f64.powi(m_tot as i32);
                let mut reduced = state.occ.clone();
                reduced[p] -= 1;
                reduced[q] -= 1;
                // Unordered target pairs {r, m_tot - r}.
                for r in m_tot.div_ceil(2)..=m_tot {
                    let s = m_tot - r;
                    let mut target = reduced.clone();
                    target[r] += 1;
                    target[s] += 1;
                    let row = basis
                        .index_of(&target)
                        .expect("target stays in the same (N, L) block");
                    // Multiplicity of the pair {r, s} inside the target state.
                    let mult = if r == s {
                        let nr = target[r] as f64;
                        nr * (nr - 1.0) / 2.0
                    } else {
                        target[r] as f64 * target[s] as f64
                    };
                    acc[row] +=
                        c * ordered * mult * two_pow * math::binomial(m_tot as u32, r as u32);
                }
            }
        }
        // Orthonormal basis: B = D T D^{-1} with D the norms.
        acc.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, &v)| (i as u32, v * d[i] / d[j]))
            .collect()
    });

    DeltaMatrix {
        dim,
        cols: columns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lll::enumerate_basis;

    const TOL: f64 = 1e-12;

    fn dense(n: u32, l: u32) -> (LLLBasis, Vec<f64>) {
        let basis = enumerate_basis(n, l).unwrap();
        let m = delta_matrix_for_basis(&basis, DEFAULT_BETA);
        (basis, m.to_dense())
    }

    #[test]
    fn two_particles_l0_is_the_bare_constant() {
        let (_, m) = dense(2, 0);
        assert_eq!(m.len(), 1);
        assert!((m[0] - delta_constant(DEFAULT_BETA)).abs() < TOL);
    }

    #[test]
    fn two_particles_l2_matches_hand_calculation() {
        // Unnormalized action: delta m_(2,0) = c (m_(2,0)/2 + m_(1,1)) and
        // delta m_(1,1) = c (m_(2,0)/4 + m_(1,1)/2); with norms (2pi, pi)
        // the orthonormal matrix is c/2 * [[1, 1], [1, 1]]: eigenvalues {0, c}.
        let c = delta_constant(DEFAULT_BETA);
        let (_, m) = dense(2, 2);
        for &entry in &m {
            assert!((entry - 0.5 * c).abs() < TOL, "entry {entry}");
        }
        let tr = m[0] + m[3];
        let det = m[0] * m[3] - m[1] * m[2];
        assert!((tr - c).abs() < TOL);
        assert!(det.abs() < TOL * TOL);
    }

    #[test]
    fn zero_mode_of_two_particle_block_is_the_pair_laughlin() {
        // (z1 - z2)^2 = m_(2,0) - 2 m_(1,1): orthonormal coords prop to
        // (norm_20, -2 norm_11).
        let basis = enumerate_basis(2, 2).unwrap();
        let m = delta_matrix_for_basis(&basis, DEFAULT_BETA);
        let norms = bargmann_norms(&basis, DEFAULT_BETA);
        let v = [norms[0].sqrt(), -2.0 * norms[1].sqrt()];
        let dense = m.to_dense();
        for i in 0..2 {
            let r = dense[2 * i] * v[0] + dense[2 * i + 1] * v[1];
            assert!(r.abs() < TOL, "residual {r}");
        }
    }

    #[test]
    fn matrix_is_symmetric_to_assembly_precision() {
        for (n, l) in [(3u32, 6u32), (4, 8), (5, 12), (6, 15)] {
            let basis = enumerate_basis(n, l).unwrap();
            let m = delta_matrix_for_basis(&basis, DEFAULT_BETA);
            assert!(
                m.max_asymmetry() < 1e-12,
                "asymmetry {} at N={n} L={l}",
                m.max_asymmetry()
            );
        }
    }

    #[test]
    fn matrix_is_positive_semidefinite() {
        use nalgebra::DMatrix;
        for (n, l) in [(3u32, 4u32), (4, 6), (5, 8)] {
            let basis = enumerate_basis(n, l).unwrap();
            let m = delta_matrix_for_basis(&basis, DEFAULT_BETA);
            let d = m.dim();
            let dm = DMatrix::from_row_slice(d, d, &m.to_dense());
            let sym = (&dm + dm.transpose()) * 0.5;
            let eig = sym.symmetric_eigen();
            let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(min > -1e-10, "min eigenvalue {min} at N={n} L={l}");
        }
    }

    #[test]
    fn matvec_agrees_with_dense() {
        let basis = enumerate_basis(4, 9).unwrap();
        let m = delta_matrix_for_basis(&basis, DEFAULT_BETA);
        let d = m.dim();
        let dense = m.to_dense();
        let x: Vec<f64> = (0..d).map(|i| ((i * 37 + 11) % 17) as f64 - 8.0).collect();
        let mut y = vec![0.0; d];
        m.matvec(&x, &mut y);
        for i in 0..d {
            let want: f64 = (0..d).map(|j| dense[i * d + j] * x[j]).sum();
            assert!((y[i] - want).abs() < 1e-11);
        }
    }
}
