//! Numerical toolkit for dilute cold Bose gases.
//!
//! The crate covers four computational areas:
//!
//! * [`scattering`] — s-wave scattering length of a repulsive radial
//!   potential from the zero-energy radial equation.
//! * [`ideal_gas`] — exact thermodynamics of the non-interacting Bose gas
//!   (Bose functions, critical density/temperature, free energy, one-particle
//!   density-matrix kernel and its decay regimes).
//! * [`dilute`] — closed-form dilute-gas corrections: ground-state energy
//!   density, Lee-Huang-Yang term, interacting free energy, and the
//!   square-root upper bound on the critical temperature shift.
//! * [`gp`] — rotating Gross-Pitaevskii ground states on a grid: gradient
//!   flow minimization, vortex detection, anisotropy, symmetry-breaking scans.
//! * [`lll`] — exact diagonalization of the lowest-Landau-level contact
//!   Hamiltonian on the bosonic Bargmann space: yrast curve, Laughlin zero
//!   mode, convex-hull ground-state scan, and the single-mode (GP) limit.
//!
//! Units are fixed throughout: `hbar = 2m = k_B = 1`. All lengths are in trap
//! units where applicable; no unit conversion is ever performed implicitly.
//!
//! With the default `parallel` feature the data-parallel inner loops run on
//! rayon. Reductions are chunked so that parallel and sequential builds (and
//! any thread count) produce bit-identical results.

pub mod dilute;
pub(crate) mod exec;
pub mod gp;
pub mod ideal_gas;
pub mod lll;
pub(crate) mod math;
pub mod scattering;

/// Unit convention note attached to all serialized outputs.
pub const UNITS_NOTE: &str = "hbar = 2m = k_B = 1";
