//! Closed-form dilute-gas corrections on top of the ideal Bose gas.
//!
//! Everything here is leading-order in the diluteness parameter `a^3 rho`;
//! the o(rho^2) remainders are not modeled. Each result carries the
//! diluteness so callers can judge validity (conventionally `a^3 rho <= 1e-2`).

use serde::{Deserialize, Serialize};

use crate::ideal_gas;

/// Threshold above which the dilute expansions are flagged as out of regime.
pub const DILUTENESS_LIMIT: f64 = 1e-2;

/// Physical inputs for the dilute corrections: scattering length, density,
/// temperature and the (non-constructive) bound constant `c`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DiluteParams {
    pub a: f64,
    pub rho: f64,
    pub t: f64,
    pub c: f64,
}

impl DiluteParams {
    pub fn new(a: f64, rho: f64, t: f64, c: f64) -> Self {
        assert!(a >= 0.0 && rho >= 0.0 && t >= 0.0);
        Self { a, rho, t, c }
    }

    /// Diluteness parameter `a^3 rho`.
    pub fn diluteness(&self) -> f64 {
        diluteness(self.a, self.rho)
    }

    pub fn is_dilute(&self) -> bool {
        self.diluteness() <= DILUTENESS_LIMIT
    }
}

pub fn diluteness(a: f64, rho: f64) -> f64 {
    a.powi(3) * rho
}

/// Leading-order ground-state energy density `e(rho) = 4 pi a rho^2`.
pub fn ground_energy_density(a: f64, rho: f64) -> f64 {
    assert!(a >= 0.0 && rho >= 0.0);
    4.0 * std::f64::consts::PI * a * rho * rho
}

/// Lee-Huang-Yang corrected energy density
/// `4 pi a rho^2 (1 + (128 / 15 sqrt(pi)) sqrt(a^3 rho))`.
pub fn lhy_energy_density(a: f64, rho: f64) -> f64 {
    ground_energy_density(a, rho) * (1.0 + lhy_relative_correction(a, rho))
}

/// The relative LHY correction `(128 / 15 sqrt(pi)) sqrt(a^3 rho)`.
pub fn lhy_relative_correction(a: f64, rho: f64) -> f64 {
    128.0 / (15.0 * std::f64::consts::PI.sqrt()) * diluteness(a, rho).sqrt()
}

/// Interacting free energy density at positive temperature:
/// `f = f0 + 4 pi a (2 rho^2 - [rho - rho_c(T)]_+^2)`.
pub fn free_energy_dilute(a: f64, rho: f64, t: f64) -> f64 {
    assert!(a >= 0.0 && rho >= 0.0 && t > 0.0);
    ideal_gas::free_energy_ideal(rho, t) + interaction_correction(a, rho, t)
}

/// The interaction correction alone, `4 pi a (2 rho^2 - [rho - rho_c]_+^2)`.
pub fn interaction_correction(a: f64, rho: f64, t: f64) -> f64 {
    let cond = condensate_density(rho, t);
    4.0 * std::f64::consts::PI * a * (2.0 * rho * rho - cond * cond)
}

/// Condensate density of the ideal gas, `[rho - rho_c(T)]_+`.
pub fn condensate_density(rho: f64, t: f64) -> f64 {
    assert!(rho >= 0.0 && t > 0.0);
    (rho - ideal_gas::critical_density(t)).max(0.0)
}

/// Rigorous upper bound on the interacting critical temperature,
/// `T_c <= T_c^(0) (1 + c sqrt(a rho^{1/3}))` for a caller-supplied `c > 0`.
pub fn tc_upper_bound(rho: f64, a: f64, c: f64) -> f64 {
    assert!(rho > 0.0 && a >= 0.0 && c > 0.0);
    ideal_gas::critical_temperature(rho) * (1.0 + c * (a * rho.powf(1.0 / 3.0)).sqrt())
}

/// One row of the critical-temperature bound curve.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TcBoundRow {
    /// Grid value `x = a rho^{1/3}`.
    pub x: f64,
    /// Relative shift of the rigorous bound, `c sqrt(x)`.
    pub sqrt_bound: f64,
    /// Linear reference line `slope * x` (the expected behavior from
    /// numerical simulations; the slope is user-chosen, not a paper value).
    pub linear_reference: f64,
}

/// Tabulate the relative critical-temperature shift bound `c sqrt(x)` over a
/// grid of `x = a rho^{1/3}`, next to a linear reference line.
pub fn tc_bound_curve(grid: &[f64], c: f64, linear_slope: f64) -> Vec<TcBoundRow> {
    assert!(grid.iter().all(|&x| x >= 0.0), "grid values must be >= 0");
    grid.iter()
        .map(|&x| TcBoundRow {
            x,
            sqrt_bound: c * x.sqrt(),
            linear_reference: linear_slope * x,
        })
        .collect()
}
