//! Vortex detection, azimuthal anisotropy, and phase fixing for 2D fields.

use num_complex::Complex64;

use super::{Dim, Grid};

/// A detected phase singularity: plaquette-center position and integer
/// winding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vortex {
    pub x: f64,
    pub y: f64,
    pub winding: i32,
}

/// Locate quantized vortices of a 2D field by the plaquette winding number:
/// the wrapped phase differences around each grid plaquette sum to `2 pi w`
/// with integer `w`, nonzero only when a phase singularity (a density zero)
/// sits inside. Plaquettes whose corners carry negligible density are
/// skipped; detections closer than `min_core_distance` are merged (opposite
/// windings cancel and drop out).
pub fn detect_vortices(phi: &[Complex64], grid: &Grid, min_core_distance: f64) -> Vec<Vortex> {
    assert!(grid.dim == Dim::Two, "vortex detection is 2D only");
    let n = grid.n;
    let peak = phi.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    let floor = 1e-12 * peak;
    let mut raw: Vec<Vortex> = Vec::new();
    for ix in 0..n - 1 {
        for iy in 0..n - 1 {
            let c00 = phi[ix * n + iy];
            let c10 = phi[(ix + 1) * n + iy];
            let c11 = phi[(ix + 1) * n + iy + 1];
            let c01 = phi[ix * n + iy + 1];
            if c00.norm_sqr() < floor
                || c10.norm_sqr() < floor
                || c11.norm_sqr() < floor
                || c01.norm_sqr() < floor
            {
                continue;
            }
            let total = wrapped(c10.arg() - c00.arg())
                + wrapped(c11.arg() - c10.arg())
                + wrapped(c01.arg() - c11.arg())
                + wrapped(c00.arg() - c01.arg());
            let w = (total / (2.0 * std::f64::consts::PI)).round() as i32;
            if w != 0 {
                raw.push(Vortex {
                    x: 0.5 * (grid.coord(ix) + grid.coord(ix + 1)),
                    y: 0.5 * (grid.coord(iy) + grid.coord(iy + 1)),
                    winding: w,
                });
            }
        }
    }
    merge_close(raw, min_core_distance)
}

fn wrapped(dtheta: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut d = dtheta;
    while d > std::f64::consts::PI {
        d -= two_pi;
    }
    while d <= -std::f64::consts::PI {
        d += two_pi;
    }
    d
}

fn merge_close(raw: Vec<Vortex>, min_dist: f64) -> Vec<Vortex> {
    let mut clusters: Vec<(f64, f64, i32, usize)> = Vec::new(); // (sum x, sum y, winding, count)
    for v in raw {
        let mut joined = false;
        for c in clusters.iter_mut() {
            let (cx, cy) = (c.0 / c.3 as f64, c.1 / c.3 as f64);
            if ((v.x - cx).powi(2) + (v.y - cy).powi(2)).sqrt() < min_dist {
                c.0 += v.x;
                c.1 += v.y;
                c.2 += v.winding;
                c.3 += 1;
                joined = true;
                break;
            }
        }
        if !joined {
            clusters.push((v.x, v.y, v.winding, 1));
        }
    }
    clusters
        .into_iter()
        .filter(|c| c.2 != 0)
        .map(|c| Vortex {
            x: c.0 / c.3 as f64,
            y: c.1 / c.3 as f64,
            winding: c.2,
        })
        .collect()
}

/// Relative L2 deviation of the density from its azimuthal average, in
/// [0, 1]. Grid points are grouped into exact-radius classes (the
/// cell-centered grid makes `x^2 + y^2` an exact integer multiple of
/// `h^2/4`), so any density that is a function of radius alone gives 0 to
/// roundoff, with no interpolation error.
pub fn anisotropy(phi: &[Complex64], grid: &Grid) -> f64 {
    assert!(grid.dim == Dim::Two, "anisotropy is 2D only");
    let n = grid.n;
    let mut sums: std::collections::HashMap<u64, (f64, u32)> = std::collections::HashMap::new();
    let class = |ix: usize, iy: usize| -> u64 {
        let a = (2 * ix as i64 + 1 - n as i64).unsigned_abs();
        let b = (2 * iy as i64 + 1 - n as i64).unsigned_abs();
        a * a + b * b
    };
    for ix in 0..n {
        for iy in 0..n {
            let d = phi[ix * n + iy].norm_sqr();
            let e = sums.entry(class(ix, iy)).or_insert((0.0, 0));
            e.0 += d;
            e.1 += 1;
        }
    }
    let mut dev2 = 0.0;
    let mut tot2 = 0.0;
    for ix in 0..n {
        for iy in 0..n {
            let d = phi[ix * n + iy].norm_sqr();
            let (s, c) = sums[&class(ix, iy)];
            let mean = s / c as f64;
            dev2 += (d - mean) * (d - mean);
            tot2 += d * d;
        }
    }
    if tot2 == 0.0 {
        return 0.0;
    }
    (dev2 / tot2).sqrt().min(1.0)
}

/// Rotate the global phase so the largest-magnitude value is real positive
/// (first index wins ties): deterministic output representative.
pub fn fix_global_phase(phi: &mut [Complex64]) {
    let mut k = 0;
    for (i, z) in phi.iter().enumerate() {
        if z.norm_sqr() > phi[k].norm_sqr() {
            k = i;
        }
    }
    let z = phi[k];
    if z.norm() == 0.0 {
        return;
    }
    let rot = z.conj() / z.norm();
    for v in phi.iter_mut() {
        *v *= rot;
    }
}

/// `<phi| L_z |phi>` of a 2D field (real and imaginary parts).
pub fn lz_expectation(phi: &[Complex64], grid: &Grid) -> (f64, f64) {
    assert!(grid.dim == Dim::Two);
    let n = grid.n;
    let inv_2h = 1.0 / (2.0 * grid.spacing());
    let [re, im] = crate::exec::sums::<2, _>(phi.len(), |idx| {
        let (ix, iy) = (idx / n, idx % n);
        let zero = Complex64::new(0.0, 0.0);
        let xm = if ix > 0 { phi[idx - n] } else { zero };
        let xp = if ix + 1 < n { phi[idx + n] } else { zero };
        let ym = if iy > 0 { phi[idx - 1] } else { zero };
        let yp = if iy + 1 < n { phi[idx + 1] } else { zero };
        let (x, y) = (grid.coord(ix), grid.coord(iy));
        let lz = Complex64::new(0.0, -1.0) * (x * (yp - ym) - y * (xp - xm)) * inv_2h;
        let val = phi[idx].conj() * lz;
        [val.re, val.im]
    });
    let dv = grid.cell_volume();
    (re * dv, im * dv)
}
