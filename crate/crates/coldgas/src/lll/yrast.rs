//! Yrast curve (lowest interaction eigenvalue at fixed angular momentum),
//! its known closed form, and the Laughlin zero mode.

use serde::{Deserialize, Serialize};

use super::basis::{bargmann_norms, enumerate_basis_capped};
use super::delta::{delta_constant, delta_matrix_for_basis};
use super::eigen::smallest_eigenpair;
use super::{LllError, LllOptions};

/// Lowest eigenvalue and ground eigenvector of `Delta_N` at fixed `L`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct YrastPoint {
    pub n: u32,
    pub l: u32,
    pub dim: usize,
    pub delta_min: f64,
    /// Coefficients in the orthonormalized symmetrized-monomial basis.
    pub ground_vector: Vec<f64>,
    /// Count of eigenvalues within 1e-10 of the minimum (exact on the dense
    /// path; converged Ritz values only on the iterative path).
    pub degeneracy: usize,
}

/// Exact diagonalization of one `(N, L)` block with default options.
pub fn yrast(n: u32, l: u32) -> Result<YrastPoint, LllError> {
    yrast_with(n, l, &LllOptions::default())
}

pub fn yrast_with(n: u32, l: u32, opts: &LllOptions) -> Result<YrastPoint, LllError> {
    let basis = enumerate_basis_capped(n, l, opts.size_cap)?;
    let matrix = delta_matrix_for_basis(&basis, opts.beta);
    let eig = smallest_eigenpair(&matrix, opts.dense_cutoff)?;
    Ok(YrastPoint {
        n,
        l,
        dim: basis.dim(),
        delta_min: eig.value,
        ground_vector: eig.vector,
        degeneracy: eig.degeneracy,
    })
}

/// Yrast table for `L = 0..=l_max`; blocks are independent and run in
/// parallel when the `parallel` feature is enabled.
pub fn yrast_table(n: u32, l_max: u32) -> Result<Vec<YrastPoint>, LllError> {
    yrast_table_with(n, l_max, &LllOptions::default())
}

pub fn yrast_table_with(n: u32, l_max: u32, opts: &LllOptions) -> Result<Vec<YrastPoint>, LllError> {
    let ls: Vec<u32> = (0..=l_max).collect();
    crate::exec::map_collect(&ls, |&l| yrast_with(n, l, opts))
        .into_iter()
        .collect()
}

/// The closed-form yrast values, in units fixed by the default measure
/// exponent: `c {N(N-1)/2 for L in {0,1}; N(N-1-L/2)/2 for 2 <= L <= N}`
/// with `c = (2 pi)^{-3/2}`, and `0` for `L >= N(N-1)`. `None` on the open
/// stretch `N < L < N(N-1)` where no formula is known.
pub fn yrast_closed_form(n: u32, l: u32) -> Option<f64> {
    let c = delta_constant(super::DEFAULT_BETA);
    let nf = n as f64;
    let lf = l as f64;
    if l <= 1 {
        Some(c * 0.5 * nf * (nf - 1.0))
    } else if l <= n {
        Some(c * 0.5 * nf * (nf - 1.0 - 0.5 * lf))
    } else if l >= n * (n.saturating_sub(1)) {
        Some(0.0)
    } else {
        None
    }
}

/// Expansion of the bosonic Laughlin state `prod_{i<j} (z_i - z_j)^2` in the
/// symmetrized-monomial basis at `L = N(N-1)`, with exact integer
/// coefficients (overflow-checked).
///
/// The squared Vandermonde is expanded as a double sum over signed
/// permutations: the coefficient of the sorted monomial `z^lambda` is
/// `sum_{sigma, tau : sigma + tau - 2 = lambda} sgn(sigma) sgn(tau)`.
pub fn laughlin_coefficients(
    n: u32,
    opts: &LllOptions,
) -> Result<(super::LLLBasis, Vec<i64>), LllError> {
    let l = n * (n - 1);
    let basis = enumerate_basis_capped(n, l, opts.size_cap)?;
    let mut coeffs = vec![0i64; basis.dim()];
    let perms = signed_permutations(n as usize);
    let nn = n as usize;
    let mut alpha = vec![0u8; nn];
    for (sigma, s_sign) in &perms {
        'tau: for (tau, t_sign) in &perms {
            let mut prev = u8::MAX;
            for i in 0..nn {
                let e = sigma[i] + tau[i];
                if e > prev {
                    continue 'tau; // not the sorted representative
                }
                prev = e;
                alpha[i] = e;
            }
            let mut occ = vec![0u8; l as usize + 1];
            for &e in &alpha {
                occ[e as usize] += 1;
            }
            let idx = basis.index_of(&occ).expect("degree matches the block");
            let sign = (s_sign * t_sign) as i64;
            coeffs[idx] = coeffs[idx].checked_add(sign).ok_or(LllError::Overflow)?;
        }
    }
    Ok((basis, coeffs))
}

/// Relative residual `||Delta_N psi_Laughlin|| / ||psi_Laughlin||` in the
/// orthonormalized basis; zero in exact arithmetic.
pub fn laughlin_residual(n: u32) -> Result<f64, LllError> {
    laughlin_residual_with(n, &LllOptions::default())
}

pub fn laughlin_residual_with(n: u32, opts: &LllOptions) -> Result<f64, LllError> {
    if n == 1 {
        return Ok(0.0);
    }
    let (basis, coeffs) = laughlin_coefficients(n, opts)?;
    let matrix = delta_matrix_for_basis(&basis, opts.beta);
    let norms = bargmann_norms(&basis, opts.beta);
    // psi = sum c_lambda m_lambda: orthonormal coordinates c_lambda * ||m_lambda||.
    let v: Vec<f64> = coeffs
        .iter()
        .zip(&norms)
        .map(|(&c, &nsq)| c as f64 * nsq.sqrt())
        .collect();
    let mut av = vec![0.0; basis.dim()];
    matrix.matvec(&v, &mut av);
    let nv: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nav: f64 = av.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(nav / nv)
}

/// All permutations of `0..n` (as exponent bytes) with their signs.
fn signed_permutations(n: usize) -> Vec<(Vec<u8>, i8)> {
    let mut items: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::with_capacity((1..=n).product());
    let mut sign = 1i8;
    out.push((items.clone(), sign));
    // Heap's algorithm; every emitted swap flips the parity.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            sign = -sign;
            out.push((items.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
