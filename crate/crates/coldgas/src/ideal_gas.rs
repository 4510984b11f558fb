//! Exact thermodynamics of the non-interacting Bose gas.
//!
//! The momentum integrals of the grand-canonical free energy reduce to the
//! Bose functions `g_s(z) = sum_{k>=1} z^k / k^s` with `s = 3/2` (density)
//! and `s = 5/2` (pressure). In the units `hbar = 2m = k_B = 1`:
//!
//! * density at chemical potential mu:  `rho = (T/4pi)^(3/2) g_{3/2}(e^{mu/T})`
//! * free energy density:               `f0 = mu_bar rho - T (T/4pi)^(3/2) g_{5/2}(e^{mu_bar/T})`
//! * critical density:                  `rho_c(T) = zeta(3/2) (T/4pi)^(3/2)`
//!
//! where `mu_bar <= 0` is the maximizer of the Legendre transform: the root
//! of the density relation below the critical density and exactly 0 at or
//! above it. The one-particle density-matrix kernel is summed directly with
//! controlled tail bounds.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::math;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdealGasError {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("kernel tail not converged at n_max = {n_max} (estimated tail error {err:.3e})")]
    TailNotConverged { n_max: usize, err: f64 },
}

/// The two Bose-function orders that arise from the 3D momentum integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoseOrder {
    ThreeHalves,
    FiveHalves,
}

impl BoseOrder {
    fn s(self) -> f64 {
        match self {
            BoseOrder::ThreeHalves => 1.5,
            BoseOrder::FiveHalves => 2.5,
        }
    }
}

/// Bose function `g_s(z)` for fugacity `z in [0, 1]`, absolute error <= 1e-12.
///
/// Direct series for `z <= 1/2`; for `z > 1/2` the expansion around `z = 1`,
/// `g_s(e^{-alpha}) = Gamma(1-s) alpha^{s-1} + sum_k zeta(s-k) (-alpha)^k / k!`,
/// which converges geometrically for `alpha < 2 pi`.
pub fn polylog(order: BoseOrder, z: f64) -> Result<f64, IdealGasError> {
    if !(0.0..=1.0).contains(&z) {
        return Err(IdealGasError::DomainError(format!(
            "fugacity z = {z} outside [0, 1]"
        )));
    }
    let s = order.s();
    if z == 0.0 {
        return Ok(0.0);
    }
    if z <= 0.5 {
        let mut sum = 0.0;
        let mut zk = 1.0;
        for k in 1..200u32 {
            zk *= z;
            let term = zk / (k as f64).powf(s);
            sum += term;
            // Geometric tail bound: sum_{j>k} z^j/j^s <= term * z / (1 - z).
            if term * z / (1.0 - z) < 1e-16 {
                break;
            }
        }
        return Ok(sum);
    }
    let alpha = -z.ln();
    let coeffs = robinson_coeffs(order);
    let mut sum = coeffs.gamma_term * alpha.powf(s - 1.0);
    let mut alpha_k = 1.0; // (-alpha)^k / k!
    for (k, zk) in coeffs.zetas.iter().enumerate() {
        if k > 0 {
            alpha_k *= -alpha / k as f64;
        }
        sum += zk * alpha_k;
    }
    Ok(sum)
}

struct RobinsonCoeffs {
    gamma_term: f64,
    zetas: Vec<f64>,
}

fn robinson_coeffs(order: BoseOrder) -> &'static RobinsonCoeffs {
    static C32: OnceLock<RobinsonCoeffs> = OnceLock::new();
    static C52: OnceLock<RobinsonCoeffs> = OnceLock::new();
    let build = |s: f64| RobinsonCoeffs {
        // Gamma(1-s) at s = 3/2 is -2 sqrt(pi); at s = 5/2 it is 4 sqrt(pi)/3.
        gamma_term: match order {
            BoseOrder::ThreeHalves => -2.0 * std::f64::consts::PI.sqrt(),
            BoseOrder::FiveHalves => 4.0 / 3.0 * std::f64::consts::PI.sqrt(),
        },
        zetas: (0..32).map(|k| math::zeta(s - k as f64)).collect(),
    };
    match order {
        BoseOrder::ThreeHalves => C32.get_or_init(|| build(1.5)),
        BoseOrder::FiveHalves => C52.get_or_init(|| build(2.5)),
    }
}

/// `zeta(3/2)`, the Bose function at unit fugacity.
pub fn zeta_3_2() -> f64 {
    static Z: OnceLock<f64> = OnceLock::new();
    *Z.get_or_init(|| math::zeta(1.5))
}

/// `zeta(5/2)`.
pub fn zeta_5_2() -> f64 {
    static Z: OnceLock<f64> = OnceLock::new();
    *Z.get_or_init(|| math::zeta(2.5))
}

/// Critical density `rho_c(T) = zeta(3/2) (T/4pi)^{3/2}`.
pub fn critical_density(t: f64) -> f64 {
    assert!(t > 0.0, "temperature must be positive");
    zeta_3_2() * (t / (4.0 * std::f64::consts::PI)).powf(1.5)
}

/// Critical temperature `T_c(rho) = 4pi (rho/zeta(3/2))^{2/3}`, the inverse
/// of [`critical_density`].
pub fn critical_temperature(rho: f64) -> f64 {
    assert!(rho > 0.0, "density must be positive");
    4.0 * std::f64::consts::PI * (rho / zeta_3_2()).powf(2.0 / 3.0)
}

/// Density at chemical potential `mu <= 0`: the stationarity condition of the
/// Legendre transform.
pub fn density_from_mu(mu: f64, t: f64) -> Result<f64, IdealGasError> {
    if mu > 0.0 {
        return Err(IdealGasError::DomainError(format!("mu = {mu} must be <= 0")));
    }
    if !(t > 0.0) {
        return Err(IdealGasError::DomainError(format!("T = {t} must be > 0")));
    }
    let z = (mu / t).exp();
    Ok((t / (4.0 * std::f64::consts::PI)).powf(1.5) * polylog(BoseOrder::ThreeHalves, z)?)
}

/// The chemical potential `mu_bar <= 0` where the maximum of the Legendre
/// transform is attained: 0 in the condensed phase (`rho >= rho_c`),
/// otherwise the unique root of `density_from_mu(mu, T) = rho`, located by
/// bracketed bisection to 1e-12 relative width (200 iterations max).
pub fn effective_mu(rho: f64, t: f64) -> f64 {
    assert!(rho >= 0.0 && t > 0.0);
    if rho == 0.0 {
        return f64::NEG_INFINITY;
    }
    if rho >= critical_density(t) {
        return 0.0;
    }
    let mut lo = -t * 1e3 * (1.0 + rho.ln().abs());
    let mut hi = 0.0_f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if density_from_mu(mid, t).unwrap() < rho {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) <= 1e-12 * mid.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Ideal-gas free energy density, the Legendre transform evaluated at its
/// maximizer `mu_bar`.
pub fn free_energy_ideal(rho: f64, t: f64) -> f64 {
    assert!(rho >= 0.0 && t > 0.0);
    if rho == 0.0 {
        return 0.0;
    }
    let mu = effective_mu(rho, t);
    let z = (mu / t).exp();
    mu * rho
        - t * (t / (4.0 * std::f64::consts::PI)).powf(1.5)
            * polylog(BoseOrder::FiveHalves, z).unwrap()
}

/// Decay regime of the one-particle density-matrix kernel at separation
/// `|x - y| -> inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayClass {
    LongRangeOrder,
    Exponential,
    Algebraic,
}

/// Classify the kernel decay: long-range order above the critical density,
/// algebraic exactly at it (1e-12 relative), exponential below.
pub fn obdm_decay_class(rho: f64, t: f64) -> DecayClass {
    assert!(rho > 0.0 && t > 0.0);
    let rho_c = critical_density(t);
    if (rho - rho_c).abs() <= 1e-12 * rho_c {
        DecayClass::Algebraic
    } else if rho > rho_c {
        DecayClass::LongRangeOrder
    } else {
        DecayClass::Exponential
    }
}

/// One-particle density-matrix kernel at separation `r`,
/// `gamma(r) = [rho - rho_c]_+ + sum_{n>=1} e^{mu_bar n/T} (4pi n/T)^{-3/2} e^{-T r^2/(4n)}`,
/// summed to absolute tail error below 1e-10.
///
/// Below the critical density the geometric tail bound terminates the sum;
/// at (or extremely near) criticality the algebraic tail is completed with a
/// midpoint integral estimate. `TailNotConverged` is returned only when the
/// integral estimate itself cannot certify the tolerance at `n_max`.
pub fn obdm_kernel(rho: f64, t: f64, r: f64, n_max: usize) -> Result<f64, IdealGasError> {
    if !(r >= 0.0) {
        return Err(IdealGasError::DomainError(format!("r = {r} must be >= 0")));
    }
    if !(rho >= 0.0 && t > 0.0) {
        return Err(IdealGasError::DomainError("need rho >= 0 and T > 0".into()));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let tol = 1e-10;
    let mu = effective_mu(rho, t);
    let rho_c = critical_density(t);
    let condensate = (rho - rho_c).max(0.0);
    let pref = (t / (4.0 * std::f64::consts::PI)).powf(1.5);
    let a = t * r * r / 4.0;

    let term = |n: f64| (mu * n / t).exp() * pref * n.powf(-1.5) * (-a / n).exp();
    let mut sum = 0.0;
    let ratio = (mu / t).exp();
    for n in 1..=n_max {
        sum += term(n as f64);
        if ratio < 1.0 {
            // tail <= pref * sum_{m>n} ratio^m = pref * ratio^{n+1} / (1 - ratio)
            let bound = pref * ratio.powi(n as i32 + 1) / (1.0 - ratio);
            if bound < tol {
                return Ok(condensate + sum);
            }
        }
    }

    // Algebraic (or near-critical) tail: midpoint integral estimate
    // sum_{n>N} f(n) ~ int_{N+1/2}^inf f(x) dx, error ~ |f'(N+1/2)| / 24.
    let nh = n_max as f64 + 0.5;
    let fp = term(nh) * (1.5 / nh + (mu / t).abs() + a / (nh * nh));
    let err = fp / 24.0 * 2.0;
    if err > tol {
        return Err(IdealGasError::TailNotConverged { n_max, err });
    }
    // Substitute x = nh / w^2: integral = 2 nh^{-1/2} pref
    //   int_0^1 exp(mu nh / (w^2 t)) exp(-a w^2 / nh) dw.
    let g = |w: f64| -> f64 {
        if w == 0.0 {
            if mu < 0.0 {
                return 0.0;
            }
            return 1.0;
        }
        (mu * nh / (w * w * t)).exp() * (-a * w * w / nh).exp()
    };
    let m = 512usize;
    let h = 1.0 / m as f64;
    let mut simpson = g(0.0) + g(1.0);
    for i in 1..m {
        let w = i as f64 * h;
        simpson += if i % 2 == 1 { 4.0 } else { 2.0 } * g(w);
    }
    let tail = 2.0 * pref / nh.sqrt() * simpson * h / 3.0;
    Ok(condensate + sum + tail)
}

/// Bundle of ideal-gas quantities at a state point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub rho: f64,
    pub t: f64,
    pub mu_bar: f64,
    pub f0: f64,
    pub rho_c: f64,
    pub condensate: f64,
}

pub fn thermo_point(rho: f64, t: f64) -> ThermoPoint {
    let rho_c = critical_density(t);
    ThermoPoint {
        rho,
        t,
        mu_bar: effective_mu(rho, t),
        f0: free_energy_ideal(rho, t),
        rho_c,
        condensate: (rho - rho_c).max(0.0),
    }
}
