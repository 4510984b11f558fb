//! Smallest eigenpair of a symmetric block: dense diagonalization below the
//! crossover dimension, restarted Lanczos with full reorthogonalization above.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::delta::DeltaMatrix;
use super::LllError;

pub(crate) struct SmallestEig {
    pub value: f64,
    pub vector: Vec<f64>,
    /// Eigenvalues (dense) or converged Ritz values (Lanczos) within 1e-10
    /// of the minimum.
    pub degeneracy: usize,
}

const DEGENERACY_TOL: f64 = 1e-10;

pub(crate) fn smallest_eigenpair(
    mat: &DeltaMatrix,
    dense_cutoff: usize,
) -> Result<SmallestEig, LllError> {
    if mat.dim() <= dense_cutoff {
        Ok(dense_smallest(mat))
    } else {
        lanczos_smallest(mat)
    }
}

fn dense_smallest(mat: &DeltaMatrix) -> SmallestEig {
    let d = mat.dim();
    if d == 1 {
        let v = mat.to_dense()[0];
        return SmallestEig {
            value: v,
            vector: vec![1.0],
            degeneracy: 1,
        };
    }
    let m = DMatrix::from_row_slice(d, d, &mat.to_dense());
    let sym = (&m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut k_min = 0;
    for k in 1..d {
        if eig.eigenvalues[k] < eig.eigenvalues[k_min] {
            k_min = k;
        }
    }
    let value = eig.eigenvalues[k_min];
    let degeneracy = eig
        .eigenvalues
        .iter()
        .filter(|&&x| (x - value).abs() <= DEGENERACY_TOL)
        .count();
    let mut vector: Vec<f64> = eig.eigenvectors.column(k_min).iter().copied().collect();
    canonicalize_sign(&mut vector);
    SmallestEig {
        value,
        vector,
        degeneracy,
    }
}

fn lanczos_smallest(mat: &DeltaMatrix) -> Result<SmallestEig, LllError> {
    let n = mat.dim();
    let k_max = 300.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1357_9bdf);
    let mut v0: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    normalize(&mut v0);

    let mut last_residual = f64::INFINITY;
    for _restart in 0..16 {
        let (alphas, betas, vs) = lanczos_sweep(mat, &v0, k_max);
        let k = alphas.len();
        let tri = tridiagonal(&alphas, &betas);
        let eig = tri.symmetric_eigen();
        let mut k_min = 0;
        for i in 1..k {
            if eig.eigenvalues[i] < eig.eigenvalues[k_min] {
                k_min = i;
            }
        }
        let theta = eig.eigenvalues[k_min];
        let y = eig.eigenvectors.column(k_min);
        // Ritz residual ||A x - theta x|| = |beta_k * y_k|.
        let scale = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs())) + 1.0;
        let residual = betas.last().map_or(0.0, |b| (b * y[k - 1]).abs());
        let mut ritz = vec![0.0; n];
        for (j, vj) in vs.iter().enumerate().take(k) {
            let w = y[j];
            for i in 0..n {
                ritz[i] += w * vj[i];
            }
        }
        normalize(&mut ritz);
        if residual <= 1e-11 * scale || k == n {
            let degeneracy = eig
                .eigenvalues
                .iter()
                .filter(|&&x| (x - theta).abs() <= DEGENERACY_TOL)
                .count();
            let mut vector = ritz;
            canonicalize_sign(&mut vector);
            return Ok(SmallestEig {
                value: theta,
                vector,
                degeneracy,
            });
        }
        last_residual = residual;
        v0 = ritz;
    }
    Err(LllError::EigenNotConverged {
        residual: last_residual,
    })
}

/// One Lanczos sweep with full two-pass reorthogonalization. Returns the
/// tridiagonal coefficients and the Krylov basis.
fn lanczos_sweep(mat: &DeltaMatrix, v0: &[f64], k_max: usize) -> (Vec<f64>, Vec<f64>, Vec<Vec<f64>>) {
    let n = mat.dim();
    let mut vs: Vec<Vec<f64>> = vec![v0.to_vec()];
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut w = vec![0.0; n];
    for j in 0..k_max {
        mat.matvec(&vs[j], &mut w);
        let alpha = dot(&w, &vs[j]);
        alphas.push(alpha);
        for vj in &vs {
            let c = dot(&w, vj);
            axpy(&mut w, -c, vj);
        }
        // Second orthogonalization pass against drift.
        for vj in &vs {
            let c = dot(&w, vj);
            axpy(&mut w, -c, vj);
        }
        let beta = dot(&w, &w).sqrt();
        if beta < 1e-14 || j + 1 == k_max {
            break;
        }
        betas.push(beta);
        let mut v_next = w.clone();
        for x in &mut v_next {
            *x /= beta;
        }
        vs.push(v_next);
    }
    (alphas, betas, vs)
}

fn tridiagonal(alphas: &[f64], betas: &[f64]) -> DMatrix<f64> {
    let k = alphas.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    t
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn normalize(v: &mut [f64]) {
    let n = dot(v, v).sqrt();
    for x in v.iter_mut() {
        *x /= n;
    }
}

/// Deterministic sign: largest-magnitude entry positive.
fn canonicalize_sign(v: &mut [f64]) {
    let mut k = 0;
    for i in 1..v.len() {
        if v[i].abs() > v[k].abs() {
            k = i;
        }
    }
    if v[k] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

#[allow(dead_code)]
pub(crate) fn residual_norm(mat: &DeltaMatrix, value: f64, vector: &[f64]) -> f64 {
    let mut y = vec![0.0; mat.dim()];
    mat.matvec(vector, &mut y);
    let mut acc = 0.0;
    for i in 0..mat.dim() {
        let r = y[i] - value * vector[i];
        acc += r * r;
    }
    acc.sqrt()
}

#[allow(dead_code)]
fn to_dvector(v: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lll::{delta_matrix_for_basis, enumerate_basis, DEFAULT_BETA};

    #[test]
    fn lanczos_matches_dense_on_medium_block() {
        let basis = enumerate_basis(5, 14).unwrap();
        let m = delta_matrix_for_basis(&basis, DEFAULT_BETA);
        let dense = dense_smallest(&m);
        let lanczos = lanczos_smallest(&m).unwrap();
        assert!(
            (dense.value - lanczos.value).abs() < 1e-10,
            "dense {} vs lanczos {}",
            dense.value,
            lanczos.value
        );
        let overlap: f64 = dense
            .vector
            .iter()
            .zip(&lanczos.vector)
            .map(|(a, b)| a * b)
            .sum();
        assert!(overlap.abs() > 1.0 - 1e-8, "overlap {overlap}");
    }

    #[test]
    fn ritz_pair_satisfies_eigen_equation() {
        let basis = enumerate_basis(4, 10).unwrap();
        let m = delta_matrix_for_basis(&basis, DEFAULT_BETA);
        let sol = lanczos_smallest(&m).unwrap();
        assert!(residual_norm(&m, sol.value, &sol.vector) < 1e-9);
    }
}
