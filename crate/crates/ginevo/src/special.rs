//! Special functions implemented in-repo so results do not depend on
//! platform math libraries: complementary error function, log-gamma, and the
//! truncated exponential series.

/// Natural log of the gamma function, Lanczos approximation (g = 7, n = 9).
/// Absolute accuracy ~1e-13 for positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // Reflection formula.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Log of n! via log-gamma.
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Log surface area of the unit (n-1)-sphere in R^n:
/// `|S_{n-1}| = 2 pi^{n/2} / Gamma(n/2)`.
pub fn ln_sphere_area(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    std::f64::consts::LN_2 + half * std::f64::consts::PI.ln() - ln_gamma(half)
}

/// Truncated exponential series `e_n(z) = sum_{k=0}^{n} z^k / k!`.
///
/// Ascending-term summation with compensated accumulation; `n!` is never
/// formed. For the exponential polynomial `E_n(z) = n! e_n(z)` fold the
/// factorial into a log-space prefactor instead.
pub fn exp_poly_ratio(n: usize, z: f64) -> f64 {
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan correction
    let mut term = 1.0f64;
    for k in 1..=n {
        term *= z / k as f64;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < 1e-300 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// Complementary error function `erfc(x) = (2/sqrt(pi)) int_x^inf e^{-u^2} du`.
///
/// Series for small arguments, Lentz continued fraction for large; negative
/// arguments via `erfc(-x) = 2 - erfc(x)`. Verified against a quadrature
/// oracle to 1e-12 in the test suite.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

pub fn erf(x: f64) -> f64 {
    1.0 - erfc(x)
}

/// Maclaurin series for erf, adequate for |x| < ~3.
fn erf_series(x: f64) -> f64 {
    let two_over_sqrt_pi = 2.0 / std::f64::consts::PI.sqrt();
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0usize;
    loop {
        k += 1;
        // term_k = x^{2k+1} (-1)^k / (k! (2k+1))
        term *= -x2 / k as f64;
        let add = term / (2 * k + 1) as f64;
        sum += add;
        if add.abs() < 1e-18 * sum.abs() || k > 200 {
            break;
        }
    }
    two_over_sqrt_pi * sum
}

/// Continued fraction erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...))))
/// evaluated by the modified Lentz algorithm.
fn erfc_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x.max(tiny);
    let mut d = 0.0f64;
    // f ~ x + a1/(x + a2/(x + ...)) with a_m = m/2.
    let mut m = 1usize;
    loop {
        let a = m as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 || m > 400 {
            break;
        }
        m += 1;
    }
    (-x * x).exp() / (std::f64::consts::PI.sqrt() * f)
}
