//! Rotating Gross-Pitaevskii ground states on a grid.
//!
//! The energy functional per particle is
//! `E[phi] = <phi| -Lap + V - Omega L_z |phi> + 4 pi g int |phi|^4`
//! with `V(x) = s |x|^2 + q |x|^4`, `g = N a >= 0`, `int |phi|^2 = 1` and
//! `L_z = -i (x d_y - y d_x)` (rotation about the symmetry axis). Any
//! minimizer solves `(-Lap + V - Omega L_z + 8 pi g |phi|^2) phi = mu phi`.
//!
//! Discretization: uniform cell-centered grid, implicit Dirichlet box,
//! 2nd-order central differences for both the Laplacian and the angular
//! momentum operator. Minimization is a normalized gradient flow
//! (imaginary-time stepping with renormalization after every step) with
//! step halving on energy increase and best-of-restarts selection.
//!
//! The 2D mode treats the quartic coupling `4 pi g` literally as in the 3D
//! functional; 2D results are a reduced model for vortex phenomenology.

mod grid;
mod minimize;
mod scan;
mod vortex;

pub use grid::{Dim, Grid};
pub use minimize::{minimize_gp, minimize_gp_with, SolverOpts};
pub use scan::{symmetry_breaking_scan, ScanResult, ScanRow};
pub use vortex::{anisotropy, detect_vortices, fix_global_phase, lz_expectation, Vortex};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GpError {
    #[error("unstable configuration: need q > 0 or omega^2 < 4 s (s = {s}, q = {q}, omega = {omega})")]
    Unstable { s: f64, q: f64, omega: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("field norm {norm} is not 1 within 1e-8")]
    NotNormalized { norm: f64 },
    #[error("grid too coarse: high-frequency fraction {fraction:.3e} of the norm exceeds 1e-6")]
    GridTooCoarse { fraction: f64 },
    #[error("symmetry-breaking scan requires a trap growing faster than quadratically (q > 0)")]
    QuarticTrapRequired,
}

/// Trap `V(x) = quad_coeff |x|^2 + quart_coeff |x|^4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapSpec {
    pub quad_coeff: f64,
    pub quart_coeff: f64,
}

impl TrapSpec {
    pub fn harmonic(s: f64) -> Self {
        Self {
            quad_coeff: s,
            quart_coeff: 0.0,
        }
    }

    pub fn value(&self, r2: f64) -> f64 {
        self.quad_coeff * r2 + self.quart_coeff * r2 * r2
    }
}

/// Validated solver configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GPConfig {
    pub trap: TrapSpec,
    /// Dimensionless coupling `g = N a`.
    pub g: f64,
    /// Angular speed of the rotating frame.
    pub omega: f64,
    pub grid: Grid,
}

impl GPConfig {
    pub fn new(trap: TrapSpec, g: f64, omega: f64, grid: Grid) -> Result<Self, GpError> {
        let (s, q) = (trap.quad_coeff, trap.quart_coeff);
        if !(s >= 0.0 && q >= 0.0 && s + q > 0.0) {
            return Err(GpError::InvalidConfig(
                "trap coefficients must satisfy s >= 0, q >= 0, s + q > 0".into(),
            ));
        }
        if g < 0.0 {
            return Err(GpError::InvalidConfig("coupling g must be >= 0".into()));
        }
        // Confinement against the centrifugal term: V - |Omega ^ x|^2 / 4
        // must diverge, i.e. q > 0 or omega^2 < 4 s.
        if !(q > 0.0 || omega * omega < 4.0 * s) {
            return Err(GpError::Unstable { s, q, omega });
        }
        Ok(Self {
            trap,
            g,
            omega,
            grid,
        })
    }
}

/// Energy components of a normalized field. `total` is the functional value;
/// `mu`-type quantities live on [`GPState`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub trap: f64,
    pub rotation: f64,
    pub interaction: f64,
    pub total: f64,
    /// `<phi| L_z |phi>` (real part; the imaginary part is a hermiticity
    /// check and is carried separately).
    pub lz: f64,
    pub lz_imag: f64,
}

/// Converged (or best-so-far) minimizer with diagnostics.
#[derive(Debug, Clone)]
pub struct GPState {
    pub config: GPConfig,
    pub seed: u64,
    pub phi: Vec<Complex64>,
    pub energy: EnergyBreakdown,
    pub mu: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub restarts: usize,
    /// Accepted-step energy sequence of the winning restart, when recorded.
    pub energy_trace: Option<Vec<f64>>,
}

pub(crate) struct Workspace {
    pub grid: Grid,
    pub g: f64,
    pub omega: f64,
    pub potential: Vec<f64>,
}

impl Workspace {
    pub fn new(cfg: &GPConfig) -> Self {
        let grid = cfg.grid;
        let n = grid.n;
        let mut potential = vec![0.0; grid.len()];
        exec::fill(&mut potential, |idx| {
            let r2 = match grid.dim {
                Dim::Two => {
                    let (ix, iy) = (idx / n, idx % n);
                    let (x, y) = (grid.coord(ix), grid.coord(iy));
                    x * x + y * y
                }
                Dim::Three => {
                    let iz = idx % n;
                    let iy = (idx / n) % n;
                    let ix = idx / (n * n);
                    let (x, y, z) = (grid.coord(ix), grid.coord(iy), grid.coord(iz));
                    x * x + y * y + z * z
                }
            };
            cfg.trap.value(r2)
        });
        Self {
            grid,
            g: cfg.g,
            omega: cfg.omega,
            potential,
        }
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `out = (-Lap + V - Omega L_z + 8 pi g |phi|^2) phi`, Dirichlet box.
pub(crate) fn apply_hamiltonian(ws: &Workspace, phi: &[Complex64], out: &mut [Complex64]) {
    let n = ws.grid.n;
    let h = ws.grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let inv_2h = 1.0 / (2.0 * h);
    let g8pi = 8.0 * std::f64::consts::PI * ws.g;
    let omega = ws.omega;
    match ws.grid.dim {
        Dim::Two => exec::fill(out, |idx| {
            let (ix, iy) = (idx / n, idx % n);
            let c = phi[idx];
            let xm = if ix > 0 { phi[idx - n] } else { ZERO };
            let xp = if ix + 1 < n { phi[idx + n] } else { ZERO };
            let ym = if iy > 0 { phi[idx - 1] } else { ZERO };
            let yp = if iy + 1 < n { phi[idx + 1] } else { ZERO };
            let lap = (xm + xp + ym + yp - 4.0 * c) * inv_h2;
            let (x, y) = (ws.grid.coord(ix), ws.grid.coord(iy));
            let lz = Complex64::new(0.0, -1.0) * (x * (yp - ym) - y * (xp - xm)) * inv_2h;
            -lap + (ws.potential[idx] + g8pi * c.norm_sqr()) * c - omega * lz
        }),
        Dim::Three => exec::fill(out, |idx| {
            let iz = idx % n;
            let iy = (idx / n) % n;
            let ix = idx / (n * n);
            let c = phi[idx];
            let xm = if ix > 0 { phi[idx - n * n] } else { ZERO };
            let xp = if ix + 1 < n { phi[idx + n * n] } else { ZERO };
            let ym = if iy > 0 { phi[idx - n] } else { ZERO };
            let yp = if iy + 1 < n { phi[idx + n] } else { ZERO };
            let zm = if iz > 0 { phi[idx - 1] } else { ZERO };
            let zp = if iz + 1 < n { phi[idx + 1] } else { ZERO };
            let lap = (xm + xp + ym + yp + zm + zp - 6.0 * c) * inv_h2;
            let (x, y) = (ws.grid.coord(ix), ws.grid.coord(iy));
            let lz = Complex64::new(0.0, -1.0) * (x * (yp - ym) - y * (xp - xm)) * inv_2h;
            -lap + (ws.potential[idx] + g8pi * c.norm_sqr()) * c - omega * lz
        }),
    }
}

/// `(mu, quartic)` from an already-applied Hamiltonian:
/// `mu = h^d sum re(conj(phi) H phi)`, `quartic = h^d sum |phi|^4`.
pub(crate) fn quadratic_stats(ws: &Workspace, phi: &[Complex64], hphi: &[Complex64]) -> (f64, f64) {
    let [mu, quart] = exec::sums::<2, _>(phi.len(), |i| {
        [(phi[i].conj() * hphi[i]).re, phi[i].norm_sqr().powi(2)]
    });
    let dv = ws.grid.cell_volume();
    (mu * dv, quart * dv)
}

pub(crate) fn norm_squared(grid: &Grid, phi: &[Complex64]) -> f64 {
    let [s] = exec::sums::<1, _>(phi.len(), |i| [phi[i].norm_sqr()]);
    s * grid.cell_volume()
}

pub(crate) fn normalize(grid: &Grid, phi: &mut [Complex64]) {
    let scale = 1.0 / norm_squared(grid, phi).sqrt();
    exec::for_each_mut(phi, |z| *z *= scale);
}

/// Residual field `r = H phi - mu phi`, the chemical potential
/// `mu = <phi|H phi> / <phi|phi>`, and the residual L2 norm. The residual is
/// orthogonal to `phi` by construction of `mu`.
pub fn gp_residual(phi: &[Complex64], cfg: &GPConfig) -> (Vec<Complex64>, f64, f64) {
    let ws = Workspace::new(cfg);
    let mut hphi = vec![ZERO; phi.len()];
    apply_hamiltonian(&ws, phi, &mut hphi);
    let nsq = norm_squared(&cfg.grid, phi);
    let (mu_raw, _) = quadratic_stats(&ws, phi, &hphi);
    let mu = mu_raw / nsq;
    let mut r = vec![ZERO; phi.len()];
    exec::fill(&mut r, |i| hphi[i] - mu * phi[i]);
    let [rn] = exec::sums::<1, _>(r.len(), |i| [r[i].norm_sqr()]);
    let residual_norm = (rn * cfg.grid.cell_volume()).sqrt();
    (r, mu, residual_norm)
}

/// Full energy decomposition of a field (not necessarily normalized; the
/// caller-facing [`gp_energy`] validates normalization first).
pub(crate) fn energy_components(ws: &Workspace, phi: &[Complex64]) -> EnergyBreakdown {
    let n = ws.grid.n;
    let h = ws.grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let inv_2h = 1.0 / (2.0 * h);
    let acc = |idx: usize| -> [f64; 6] {
        let (lap, lz, v, c) = match ws.grid.dim {
            Dim::Two => {
                let (ix, iy) = (idx / n, idx % n);
                let c = phi[idx];
                let xm = if ix > 0 { phi[idx - n] } else { ZERO };
                let xp = if ix + 1 < n { phi[idx + n] } else { ZERO };
                let ym = if iy > 0 { phi[idx - 1] } else { ZERO };
                let yp = if iy + 1 < n { phi[idx + 1] } else { ZERO };
                let lap = (xm + xp + ym + yp - 4.0 * c) * inv_h2;
                let (x, y) = (ws.grid.coord(ix), ws.grid.coord(iy));
                let lz =
                    Complex64::new(0.0, -1.0) * (x * (yp - ym) - y * (xp - xm)) * inv_2h;
                (lap, lz, ws.potential[idx], c)
            }
            Dim::Three => {
                let iz = idx % n;
                let iy = (idx / n) % n;
                let ix = idx / (n * n);
                let c = phi[idx];
                let xm = if ix > 0 { phi[idx - n * n] } else { ZERO };
                let xp = if ix + 1 < n { phi[idx + n * n] } else { ZERO };
                let ym = if iy > 0 { phi[idx - n] } else { ZERO };
                let yp = if iy + 1 < n { phi[idx + n] } else { ZERO };
                let zm = if iz > 0 { phi[idx - 1] } else { ZERO };
                let zp = if iz + 1 < n { phi[idx + 1] } else { ZERO };
                let lap = (xm + xp + ym + yp + zm + zp - 6.0 * c) * inv_h2;
                let (x, y) = (ws.grid.coord(ix), ws.grid.coord(iy));
                let lz =
                    Complex64::new(0.0, -1.0) * (x * (yp - ym) - y * (xp - xm)) * inv_2h;
                (lap, lz, ws.potential[idx], c)
            }
        };
        let cc = c.conj();
        [
            (cc * -lap).re,
            v * c.norm_sqr(),
            (cc * lz).re,
            (cc * lz).im,
            c.norm_sqr().powi(2),
            c.norm_sqr(),
        ]
    };
    let [kin, trap, lz_re, lz_im, quart, _norm] = exec::sums::<6, _>(phi.len(), acc);
    let dv = ws.grid.cell_volume();
    let interaction = 4.0 * std::f64::consts::PI * ws.g * quart * dv;
    let kinetic = kin * dv;
    let trap_e = trap * dv;
    let rotation = -ws.omega * lz_re * dv;
    EnergyBreakdown {
        kinetic,
        trap: trap_e,
        rotation,
        interaction,
        total: kinetic + trap_e + rotation + interaction,
        lz: lz_re * dv,
        lz_imag: lz_im * dv,
    }
}

/// Energy breakdown of a normalized field.
///
/// Fails with `NotNormalized` if the norm is off by more than 1e-8, and with
/// `GridTooCoarse` if more than 1e-6 of the norm sits in the top of the
/// discrete frequency band (measured by a twice-applied scaled Laplacian
/// high-pass filter, whose multiplier is ~1 at the Nyquist corner and
/// O((h k)^4) for resolved modes).
pub fn gp_energy(phi: &[Complex64], cfg: &GPConfig) -> Result<EnergyBreakdown, GpError> {
    let norm = norm_squared(&cfg.grid, phi);
    if (norm - 1.0).abs() > 1e-8 {
        return Err(GpError::NotNormalized { norm });
    }
    let fraction = high_frequency_fraction(cfg, phi);
    if fraction > 1e-6 {
        return Err(GpError::GridTooCoarse { fraction });
    }
    let ws = Workspace::new(cfg);
    Ok(energy_components(&ws, phi))
}

/// Norm fraction carried by the twice-applied high-pass filter
/// `(h^2 (-Lap) / 4d)^2`.
pub fn high_frequency_fraction(cfg: &GPConfig, phi: &[Complex64]) -> f64 {
    let grid = cfg.grid;
    let scale = grid.spacing().powi(2) / (4.0 * grid.dim.ndim() as f64);
    let mut w1 = vec![ZERO; phi.len()];
    scaled_neg_laplacian(&grid, phi, scale, &mut w1);
    let mut w2 = vec![ZERO; phi.len()];
    scaled_neg_laplacian(&grid, &w1, scale, &mut w2);
    let [num] = exec::sums::<1, _>(w2.len(), |i| [w2[i].norm_sqr()]);
    let [den] = exec::sums::<1, _>(phi.len(), |i| [phi[i].norm_sqr()]);
    num / den
}

fn scaled_neg_laplacian(grid: &Grid, phi: &[Complex64], scale: f64, out: &mut [Complex64]) {
    let n = grid.n;
    let inv_h2 = scale / grid.spacing().powi(2);
    match grid.dim {
        Dim::Two => exec::fill(out, |idx| {
            let (ix, iy) = (idx / n, idx % n);
            let c = phi[idx];
            let xm = if ix > 0 { phi[idx - n] } else { ZERO };
            let xp = if ix + 1 < n { phi[idx + n] } else { ZERO };
            let ym = if iy > 0 { phi[idx - 1] } else { ZERO };
            let yp = if iy + 1 < n { phi[idx + 1] } else { ZERO };
            -(xm + xp + ym + yp - 4.0 * c) * inv_h2
        }),
        Dim::Three => exec::fill(out, |idx| {
            let iz = idx % n;
            let iy = (idx / n) % n;
            let ix = idx / (n * n);
            let c = phi[idx];
            let xm = if ix > 0 { phi[idx - n * n] } else { ZERO };
            let xp = if ix + 1 < n { phi[idx + n * n] } else { ZERO };
            let ym = if iy > 0 { phi[idx - n] } else { ZERO };
            let yp = if iy + 1 < n { phi[idx + n] } else { ZERO };
            let zm = if iz > 0 { phi[idx - 1] } else { ZERO };
            let zp = if iz + 1 < n { phi[idx + 1] } else { ZERO };
            -(xm + xp + ym + yp + zm + zp - 6.0 * c) * inv_h2
        }),
    }
}
