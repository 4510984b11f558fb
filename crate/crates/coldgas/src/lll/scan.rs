//! Ground states of `H = (1-|Omega|) L_N + 8 pi a Delta_N` as the ratio
//! `kappa = (1-|Omega|)/(8 pi a)` varies, plus the single-mode constrained
//! minimization whose value gives the convex hull of the yrast curve in the
//! many-particle, low-angular-momentum regime.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::math;

use super::delta::delta_constant;
use super::yrast::yrast_table_with;
use super::{LllError, LllOptions};

/// One row of the ground-state scan. Energies are in units of `8 pi a`
/// (so `E0 = kappa L_star + Delta_N(L_star)` with the `(2 pi)^{-3/2}` factor
/// kept explicit inside the `Delta` values).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HlllScanRow {
    pub kappa: f64,
    pub l_star: u32,
    pub e0: f64,
}

/// Scan the ground state over a `kappa` grid. Ties in the minimizer go to
/// the smaller `L`, which makes `L_star(kappa)` nonincreasing by
/// construction.
pub fn hll_ground_scan(n: u32, kappa_grid: &[f64]) -> Result<Vec<HlllScanRow>, LllError> {
    hll_ground_scan_with(n, kappa_grid, &LllOptions::default())
}

pub fn hll_ground_scan_with(
    n: u32,
    kappa_grid: &[f64],
    opts: &LllOptions,
) -> Result<Vec<HlllScanRow>, LllError> {
    let l_max = n * (n - 1);
    let table = yrast_table_with(n, l_max, opts)?;
    let deltas: Vec<f64> = table.iter().map(|p| p.delta_min).collect();
    Ok(kappa_grid
        .iter()
        .map(|&kappa| {
            let mut best_l = 0u32;
            let mut best = f64::INFINITY;
            for (l, &d) in deltas.iter().enumerate() {
                let value = kappa * l as f64 + d;
                if value < best {
                    best = value;
                    best_l = l as u32;
                }
            }
            HlllScanRow {
                kappa,
                l_star: best_l,
                e0: best,
            }
        })
        .collect())
}

/// One tabulated yrast point with its lower-convex-hull status. Hull
/// vertices are exactly the angular momenta that appear as ground states of
/// the full Hamiltonian for some `kappa`; `[kappa_lo, kappa_hi]` is that
/// interval (`kappa_hi = inf` for `L = 0`).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HullPoint {
    pub l: u32,
    pub dim: usize,
    pub delta_min: f64,
    pub on_hull: bool,
    pub kappa_lo: f64,
    pub kappa_hi: f64,
}

/// Lower convex hull of the yrast table over `L = 0..=N(N-1)`.
pub fn yrast_hull(n: u32) -> Result<Vec<HullPoint>, LllError> {
    yrast_hull_with(n, &LllOptions::default())
}

pub fn yrast_hull_with(n: u32, opts: &LllOptions) -> Result<Vec<HullPoint>, LllError> {
    let l_max = n * (n - 1);
    let table = yrast_table_with(n, l_max, opts)?;
    let pts: Vec<(f64, f64)> = table
        .iter()
        .map(|p| (p.l as f64, p.delta_min))
        .collect();
    // Andrew monotone chain, lower hull only (x is already sorted).
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (pts[b].0 - pts[a].0) * (pts[i].1 - pts[a].1)
                - (pts[b].1 - pts[a].1) * (pts[i].0 - pts[a].0);
            if cross <= 1e-15 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let slope = |a: usize, b: usize| (pts[b].1 - pts[a].1) / (pts[b].0 - pts[a].0);
    let mut out = Vec::with_capacity(table.len());
    for (li, p) in table.iter().enumerate() {
        let vertex = hull.iter().position(|&h| h == li);
        let (kappa_lo, kappa_hi) = match vertex {
            Some(k) => {
                let lo = if k + 1 < hull.len() {
                    -slope(hull[k], hull[k + 1])
                } else {
                    0.0
                };
                let hi = if k > 0 {
                    -slope(hull[k - 1], hull[k])
                } else {
                    f64::INFINITY
                };
                (lo, hi)
            }
            None => (f64::NAN, f64::NAN),
        };
        out.push(HullPoint {
            l: p.l,
            dim: p.dim,
            delta_min: p.delta_min,
            on_hull: vertex.is_some(),
            kappa_lo,
            kappa_hi,
        });
    }
    Ok(out)
}

/// Result of the constrained single-mode (Gross-Pitaevskii) minimization on
/// the lowest Landau level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LllGpSolution {
    /// `(1/2) <f x f | delta_12 | f x f>` at the constrained minimum.
    pub energy: f64,
    /// Mode coefficients of `f` in the normalized basis `z^m / ||z^m||`.
    pub coefficients: Vec<Complex64>,
    pub iterations: usize,
    pub gradient_norm: f64,
}

/// Minimize `(1/2) <f x f| delta_12 |f x f>` over a single mode
/// `f = sum_m c_m z^m / ||z^m||` with `||f||^2 = N` and `<f| z d/dz |f> = L`.
///
/// Because the two-body element factorizes over total pair momentum, the
/// quartic form is `(1/2) sum_M c 2^{-M} |S_M|^2` with
/// `S_M = sum_k sqrt(C(M,k)) c_k c_{M-k}`: manifestly nonnegative, cheap to
/// evaluate, with an explicit Wirtinger gradient. Projected gradient descent
/// with a two-multiplier retraction enforces both constraints exactly after
/// every step.
pub fn lll_gp_minimize(
    n_weight: f64,
    l_target: f64,
    m_modes: usize,
    tol: f64,
) -> Result<LllGpSolution, LllError> {
    lll_gp_minimize_with(n_weight, l_target, m_modes, tol, &LllOptions::default())
}

pub fn lll_gp_minimize_with(
    n_weight: f64,
    l_target: f64,
    m_modes: usize,
    tol: f64,
    opts: &LllOptions,
) -> Result<LllGpSolution, LllError> {
    assert!(m_modes >= 2, "need at least two modes");
    assert!(n_weight > 0.0 && l_target >= 0.0);
    assert!(
        l_target < n_weight * (m_modes as f64 - 1.0),
        "L must be reachable with the given mode cutoff"
    );
    let c = delta_constant(opts.beta);

    if l_target == 0.0 {
        // The angular-momentum constraint forces all weight into m = 0.
        let mut coefficients = vec![Complex64::new(0.0, 0.0); m_modes];
        coefficients[0] = Complex64::new(n_weight.sqrt(), 0.0);
        return Ok(LllGpSolution {
            energy: 0.5 * c * n_weight * n_weight,
            coefficients,
            iterations: 0,
            gradient_norm: 0.0,
        });
    }

    let sqrt_binom: Vec<Vec<f64>> = (0..2 * m_modes - 1)
        .map(|m| {
            (0..=m)
                .map(|k| math::binomial(m as u32, k as u32).sqrt())
                .collect()
        })
        .collect();
    let weights: Vec<f64> = (0..2 * m_modes - 1)
        .map(|m| c * 0.5f64.powi(m as i32))
        .collect();

    let pair_sums = |cs: &[Complex64]| -> Vec<Complex64> {
        let mut s = vec![Complex64::new(0.0, 0.0); 2 * m_modes - 1];
        for (k, ck) in cs.iter().enumerate() {
            for (j, cj) in cs.iter().enumerate() {
                s[k + j] += sqrt_binom[k + j][k] * ck * cj;
            }
        }
        s
    };
    let energy = |cs: &[Complex64]| -> f64 {
        let s = pair_sums(cs);
        0.5 * s
            .iter()
            .zip(&weights)
            .map(|(sm, w)| w * sm.norm_sqr())
            .sum::<f64>()
    };
    // Wirtinger gradient dE/d(conj c_j) = sum_M w_M sqrt(C(M,j)) S_M conj(c_{M-j}).
    let gradient = |cs: &[Complex64]| -> Vec<Complex64> {
        let s = pair_sums(cs);
        (0..m_modes)
            .map(|j| {
                let mut g = Complex64::new(0.0, 0.0);
                for (i, ci) in cs.iter().enumerate() {
                    let m = i + j;
                    g += weights[m] * sqrt_binom[m][j] * s[m] * ci.conj();
                }
                g
            })
            .collect()
    };

    let mut best: Option<LllGpSolution> = None;
    for init in 0..3 {
        let mut cs = initial_guess(n_weight, l_target, m_modes, init);
        project(&mut cs, n_weight, l_target);
        let mut e = energy(&cs);
        let mut step = 0.5 / (c * n_weight);
        let mut iterations = 0usize;
        let mut gnorm = f64::INFINITY;
        let max_iter = 60_000;
        while iterations < max_iter {
            iterations += 1;
            let g = gradient(&cs);
            let gt = tangent_part(&g, &cs);
            gnorm = gt.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if gnorm <= tol {
                break;
            }
            let mut accepted = false;
            while step > 1e-18 {
                let mut trial: Vec<Complex64> =
                    cs.iter().zip(&gt).map(|(a, b)| a - step * b).collect();
                project(&mut trial, n_weight, l_target);
                let et = energy(&trial);
                if et <= e + 1e-14 * (1.0 + e.abs()) {
                    cs = trial;
                    e = et;
                    step *= 1.2;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        let candidate = LllGpSolution {
            energy: e,
            coefficients: cs,
            iterations,
            gradient_norm: gnorm,
        };
        match &best {
            Some(b) if b.energy <= candidate.energy => {}
            _ => best = Some(candidate),
        }
    }
    let best = best.unwrap();
    if best.gradient_norm > tol {
        return Err(LllError::NotConverged {
            gradient: best.gradient_norm,
        });
    }
    Ok(best)
}

fn initial_guess(n_weight: f64, l_target: f64, m_modes: usize, variant: usize) -> Vec<Complex64> {
    let center = l_target / n_weight;
    (0..m_modes)
        .map(|m| {
            let x = m as f64 - center;
            let base = (-0.5 * x * x).exp();
            let wiggle = match variant {
                0 => 1.0,
                1 => 1.0 + 0.35 * ((2.7 * m as f64 + 0.4).sin()),
                _ => 1.0 + 0.2 * ((1.3 * m as f64).cos()) + 0.15 * ((3.1 * m as f64).sin()),
            };
            let phase = match variant {
                2 => Complex64::from_polar(1.0, 0.3 * m as f64),
                _ => Complex64::new(1.0, 0.0),
            };
            phase * (base * wiggle + 1e-3)
        })
        .collect()
}

/// Rescale `c_m <- c_m sqrt(x + y m)` so that both constraints hold exactly.
fn project(cs: &mut [Complex64], n_weight: f64, l_target: f64) {
    for _ in 0..4 {
        let a: f64 = cs.iter().map(|z| z.norm_sqr()).sum();
        let b: f64 = cs.iter().enumerate().map(|(m, z)| m as f64 * z.norm_sqr()).sum();
        let q: f64 = cs
            .iter()
            .enumerate()
            .map(|(m, z)| (m as f64).powi(2) * z.norm_sqr())
            .sum();
        let det = a * q - b * b;
        if det.abs() < 1e-14 * (a * q).max(1e-300) {
            // Nearly single-mode: spread a little mass to regularize.
            let eps = 1e-6 * a.sqrt();
            for (m, z) in cs.iter_mut().enumerate() {
                *z += Complex64::new(eps / (1.0 + m as f64), 0.0);
            }
            continue;
        }
        let x = (n_weight * q - l_target * b) / det;
        let y = (l_target * a - n_weight * b) / det;
        let mut clamped = false;
        for (m, z) in cs.iter_mut().enumerate() {
            let f = x + y * m as f64;
            if f <= 0.0 {
                *z = Complex64::new(0.0, 0.0);
                clamped = true;
            } else {
                *z *= f.sqrt();
            }
        }
        if !clamped {
            return;
        }
    }
}

/// Remove the components of the gradient along the two constraint gradients
/// (c and m*c), in the real inner product.
fn tangent_part(g: &[Complex64], cs: &[Complex64]) -> Vec<Complex64> {
    let re_dot = |u: &[Complex64], v: &[Complex64]| -> f64 {
        u.iter().zip(v).map(|(a, b)| (a.conj() * b).re).sum()
    };
    let mc: Vec<Complex64> = cs.iter().enumerate().map(|(m, z)| m as f64 * z).collect();
    let a11 = re_dot(cs, cs);
    let a12 = re_dot(cs, &mc);
    let a22 = re_dot(&mc, &mc);
    let b1 = re_dot(cs, g);
    let b2 = re_dot(&mc, g);
    let det = a11 * a22 - a12 * a12;
    let (l1, l2) = if det.abs() > 1e-14 * (a11 * a22).max(1e-300) {
        ((b1 * a22 - b2 * a12) / det, (b2 * a11 - b1 * a12) / det)
    } else {
        (b1 / a11.max(1e-300), 0.0)
    };
    g.iter()
        .zip(cs.iter().zip(&mc))
        .map(|(gi, (ci, mi))| gi - l1 * ci - l2 * mi)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lll::{yrast, yrast_closed_form};

    const C: f64 = 0.063_493_635_934_240_97;

    #[test]
    fn scan_endpoints() {
        let grid: Vec<f64> = (0..60).map(|i| i as f64 * 0.02).collect();
        let rows = hll_ground_scan(3, &grid).unwrap();
        // kappa = 0: smallest zero-interaction momentum is N(N-1).
        assert_eq!(rows[0].l_star, 6);
        assert!(rows[0].e0.abs() < 1e-10);
        // Large kappa: interaction-dominated, L = 0.
        let last = hll_ground_scan(3, &[100.0]).unwrap()[0];
        assert_eq!(last.l_star, 0);
        assert!((last.e0 - yrast(3, 0).unwrap().delta_min).abs() < 1e-12);
    }

    #[test]
    fn l_star_monotone_and_e0_concave() {
        let grid: Vec<f64> = (0..200).map(|i| i as f64 * 0.002).collect();
        let rows = hll_ground_scan(4, &grid).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].l_star <= w[0].l_star);
        }
        for w in rows.windows(3) {
            let second_diff = w[2].e0 - 2.0 * w[1].e0 + w[0].e0;
            assert!(second_diff <= 1e-12);
        }
    }

    #[test]
    fn l_one_is_never_a_ground_state() {
        // Delta_3(1) = Delta_3(0), so L = 1 always loses to L = 0 for
        // kappa > 0: crossing the breakpoint near (Delta_3(0) - Delta_3(2))/2
        // the ground state jumps from 0 past 1.
        let crossing = (yrast_closed_form(3, 0).unwrap() - yrast_closed_form(3, 2).unwrap()) / 2.0;
        let grid: Vec<f64> = (1..=60).map(|i| i as f64 * crossing / 30.0).collect();
        let rows = hll_ground_scan(3, &grid).unwrap();
        assert!(rows.iter().all(|r| r.l_star != 1));
        // Fine grid through the breakpoint: 0 is attained above, >= 2 below.
        assert_eq!(rows.last().unwrap().l_star, 0);
        assert!(rows[0].l_star >= 2);
        // Brute-force oracle over the tabulated yrast points.
        let table: Vec<f64> = (0..=6).map(|l| yrast(3, l).unwrap().delta_min).collect();
        for r in &rows {
            let (mut bl, mut bv) = (0usize, f64::INFINITY);
            for (l, &d) in table.iter().enumerate() {
                let v = r.kappa * l as f64 + d;
                if v < bv {
                    bv = v;
                    bl = l;
                }
            }
            assert_eq!(r.l_star as usize, bl);
            assert!((r.e0 - bv).abs() < 1e-14);
        }
    }

    #[test]
    fn hull_n2_runs_through_known_points() {
        let hull = yrast_hull(2).unwrap();
        assert_eq!(hull.len(), 3);
        assert!(hull[0].on_hull && (hull[0].delta_min - C).abs() < 1e-10);
        assert!(!hull[1].on_hull); // Delta_2(1) = Delta_2(0) sits above the chord
        assert!(hull[2].on_hull && hull[2].delta_min.abs() < 1e-10);
    }

    #[test]
    fn hull_flags_match_scan_ground_states() {
        let n = 4;
        let hull = yrast_hull(n).unwrap();
        let vertices: Vec<u32> = hull.iter().filter(|p| p.on_hull).map(|p| p.l).collect();
        assert!(vertices.contains(&0));
        assert!(vertices.contains(&(n * (n - 1))));
        // A fine kappa grid attains exactly the hull vertices.
        let grid: Vec<f64> = (0..4000).map(|i| 1e-4 + i as f64 * 5e-4).collect();
        let rows = hll_ground_scan(n, &grid).unwrap();
        let mut attained: Vec<u32> = rows.iter().map(|r| r.l_star).collect();
        attained.dedup();
        for l in &attained {
            assert!(vertices.contains(l), "attained {l} not a hull vertex");
        }
        for v in &vertices {
            assert!(
                attained.contains(v) || *v == 0 || hull[*v as usize].kappa_hi < 1e-4,
                "vertex {v} never attained"
            );
        }
    }

    #[test]
    fn gp_minimum_at_zero_momentum_is_half_n_squared() {
        let sol = lll_gp_minimize(4.0, 0.0, 6, 1e-9).unwrap();
        assert!((sol.energy - 0.5 * C * 16.0).abs() < 1e-9);
    }

    #[test]
    fn gp_energy_is_degree_two_homogeneous() {
        let e1 = lll_gp_minimize(3.0, 2.0, 10, 1e-9).unwrap().energy;
        let e2 = lll_gp_minimize(6.0, 4.0, 10, 1e-9).unwrap().energy;
        assert!(
            (e2 - 4.0 * e1).abs() < 1e-5 * e2,
            "e1 = {e1}, 4 e1 = {} vs e2 = {e2}",
            4.0 * e1
        );
    }

    #[test]
    fn gp_constraints_hold_at_solution() {
        let n = 5.0;
        let l = 3.0;
        let sol = lll_gp_minimize(n, l, 12, 1e-8).unwrap();
        let a: f64 = sol.coefficients.iter().map(|z| z.norm_sqr()).sum();
        let b: f64 = sol
            .coefficients
            .iter()
            .enumerate()
            .map(|(m, z)| m as f64 * z.norm_sqr())
            .sum();
        assert!((a - n).abs() < 1e-8);
        assert!((b - l).abs() < 1e-8);
        assert!(sol.energy >= 0.0);
    }
}
