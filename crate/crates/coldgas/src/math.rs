//! Shared special-function and combinatorics helpers.

/// Riemann zeta for real `s` with `s != 1` and `s != 0`.
///
/// For `s > 0` uses Euler-Maclaurin with a 24-term head; for `s < 0` the
/// functional equation `zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)`.
/// Accurate to ~1e-15 relative on the range used here (s in [-40, 40]).
pub(crate) fn zeta(s: f64) -> f64 {
    assert!(s != 1.0, "zeta pole at s = 1");
    if s < 0.0 {
        let t = 1.0 - s; // t > 1
        return 2f64.powf(s)
            * std::f64::consts::PI.powf(s - 1.0)
            * (std::f64::consts::PI * s / 2.0).sin()
            * gamma_pos(t)
            * zeta(t);
    }
    zeta_euler_maclaurin(s)
}

fn zeta_euler_maclaurin(s: f64) -> f64 {
    // Bernoulli numbers B_2, B_4, ..., B_14.
    const B2K: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let n = 24usize;
    let nf = n as f64;
    let mut sum = 0.0;
    for k in 1..n {
        sum += (k as f64).powf(-s);
    }
    sum += nf.powf(1.0 - s) / (s - 1.0);
    sum += 0.5 * nf.powf(-s);
    // Correction terms: B_2k / (2k)! * s(s+1)...(s+2k-2) * n^(-s-2k+1).
    let mut rising = s; // s (s+1) ... accumulated
    let mut fact = 2.0; // (2k)!
    for (k, b) in B2K.iter().enumerate() {
        let two_k = 2 * (k + 1);
        if k > 0 {
            rising *= (s + (two_k - 3) as f64) * (s + (two_k - 2) as f64);
            fact *= ((two_k - 1) * two_k) as f64;
        }
        sum += b / fact * rising * nf.powf(-(s + (two_k - 1) as f64));
    }
    sum
}

/// Gamma function for `x > 0`, via half-integer/integer exact products when
/// applicable and the Lanczos approximation otherwise.
pub(crate) fn gamma_pos(x: f64) -> f64 {
    assert!(x > 0.0);
    // Exact paths for the integer and half-integer arguments used by the
    // polylogarithm expansions.
    if x.fract() == 0.0 && x <= 170.0 {
        let mut acc = 1.0;
        let mut k = 1.0;
        while k < x - 0.5 {
            acc *= k;
            k += 1.0;
        }
        return acc;
    }
    if (x - 0.5).fract() == 0.0 && x < 170.0 {
        // Gamma(1/2) = sqrt(pi); Gamma(x) = (x-1) Gamma(x-1).
        let mut acc = std::f64::consts::PI.sqrt();
        let mut k = 0.5;
        while k < x - 0.25 {
            acc *= k;
            k += 1.0;
        }
        return acc;
    }
    lanczos_gamma(x)
}

fn lanczos_gamma(x: f64) -> f64 {
    // Lanczos g=7, n=9 coefficients.
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, &c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// n! as f64 (exact up to n = 170 in the double range).
pub(crate) fn factorial(n: u32) -> f64 {
    let mut acc = 1.0_f64;
    for k in 2..=n as u64 {
        acc *= k as f64;
    }
    acc
}

/// Binomial coefficient C(n, k) as f64.
pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_reference_values() {
        // zeta(2) = pi^2/6, zeta(4) = pi^4/90.
        let pi = std::f64::consts::PI;
        assert!((zeta(2.0) - pi * pi / 6.0).abs() < 1e-13);
        assert!((zeta(4.0) - pi.powi(4) / 90.0).abs() < 1e-13);
        // zeta(-1) = -1/12 via the functional equation.
        assert!((zeta(-1.0) + 1.0 / 12.0).abs() < 1e-13);
        // zeta(1/2) = -1.4603545088...
        assert!((zeta(0.5) + 1.460_354_508_809_586_8).abs() < 1e-12);
        // zeta(-1/2) = -0.2078862249...
        assert!((zeta(-0.5) + 0.207_886_224_977_354_57).abs() < 1e-12);
    }

    #[test]
    fn gamma_half_integers() {
        let sp = std::f64::consts::PI.sqrt();
        assert!((gamma_pos(0.5) - sp).abs() < 1e-14);
        assert!((gamma_pos(1.5) - 0.5 * sp).abs() < 1e-14);
        assert!((gamma_pos(2.5) - 0.75 * sp).abs() < 1e-14);
        assert!((gamma_pos(5.0) - 24.0).abs() < 1e-10);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(4, 5), 0.0);
        assert_eq!(factorial(6), 720.0);
    }
}
