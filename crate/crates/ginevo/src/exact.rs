//! Closed-form and quadrature-based reference quantities for the real
//! spectrum of the matrix Brownian motion.
//!
//! Everything here is deterministic: a finite-dimensional two-time modified
//! density given by a one-dimensional integral, its zero-argument
//! specialisation under the `1/n` lag scaling, the large-dimension limits,
//! the limiting spin-correlation function, and a handful of scalar
//! identities (crossing probability, effective diffusion constant, the
//! characteristic-polynomial pair moment). All prefactors are assembled in
//! log space so the formulas stay finite at dimensions of several hundred.

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadResult, QuadratureConfig};
use crate::special::{erfc, exp_poly_ratio, ln_factorial, ln_sphere_area};

/// Parameters of a two-time observation: dimension `n`, first time `t`,
/// and positive lag `tau` (second time `t + tau`).
#[derive(Debug, Clone, Copy)]
pub struct TwoTimeParams {
    pub n: usize,
    pub t: f64,
    pub tau: f64,
}

impl TwoTimeParams {
    pub fn new(n: usize, t: f64, tau: f64) -> Result<Self> {
        if n < 4 {
            return Err(Error::invalid("dimension must be at least 4"));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::invalid("time t must be positive and finite"));
        }
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::invalid("lag tau must be positive and finite"));
        }
        Ok(TwoTimeParams { n, t, tau })
    }
}

/// Parameters of the scaled-lag regime: first time `t` and macroscopic lag
/// `big_t`, with the physical lag being `big_t / n` at dimension `n`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledLagParams {
    pub t: f64,
    pub big_t: f64,
}

impl ScaledLagParams {
    pub fn new(t: f64, big_t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::invalid("time t must be positive and finite"));
        }
        if !(big_t > 0.0) || !big_t.is_finite() {
            return Err(Error::invalid("scaled lag must be positive and finite"));
        }
        Ok(ScaledLagParams { t, big_t })
    }
}

/// `(sign, ln|value|)` of the truncated exponential sum
/// `e_n(w) = sum_{k=0}^{n} w^k / k!`, stable for large positive `w`.
pub fn ln_exp_poly(n: usize, w: f64) -> (f64, f64) {
    if w == 0.0 {
        return (1.0, 0.0);
    }
    if w < 0.0 {
        // Once the truncation order dwarfs |w| the sum is the full
        // exponential to machine precision; otherwise the direct
        // compensated sum is adequate because |w| is then moderate.
        let first_tail = (n as f64 + 1.0) * w.abs().ln() - ln_factorial(n + 1);
        if first_tail < w - 45.0 {
            return (1.0, w);
        }
        let v = exp_poly_ratio(n, w);
        return (v.signum(), v.abs().ln());
    }
    if w < 650.0 {
        let v = exp_poly_ratio(n, w);
        return (1.0, v.ln());
    }
    // Log-sum-exp over the (all positive) terms.
    let lnw = w.ln();
    let mut peak = f64::NEG_INFINITY;
    for k in 0..=n {
        let l = k as f64 * lnw - ln_factorial(k);
        if l > peak {
            peak = l;
        }
    }
    let mut acc = 0.0;
    for k in 0..=n {
        acc += (k as f64 * lnw - ln_factorial(k) - peak).exp();
    }
    (1.0, peak + acc.ln())
}

/// Two-time modified density `rho~(y, x)` at dimension `n`: the mixed
/// derivative `(1/4) d^2/dx dy E[s_y(t) s_x(t+tau)]` of the spin
/// correlation, expressed as a single integral over `z` in `[0, 1]`.
///
/// `y` is observed at the earlier time `t`, `x` at `t + tau`.
pub fn modified_density_finite_n(
    p: &TwoTimeParams,
    y: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let n = p.n;
    let (t, tau) = (p.t, p.tau);
    let nf = n as f64;
    let ln_pref = std::f64::consts::LN_2
        + ln_sphere_area(n)
        + ln_sphere_area(n - 1)
        - 2.0 * t.ln()
        - nf * (2.0 * std::f64::consts::PI).ln();
    let ln_fact = ln_factorial(n - 2);
    let w = 2.0 * x * y / t;
    let (s2, l2) = ln_exp_poly(n - 2, w);
    let (s3, l3) = ln_exp_poly(n - 3, w);
    let integrand = move |z: f64| {
        let u = 1.0 - z * z;
        if u <= 0.0 {
            return 0.0;
        }
        let d = tau + t * u;
        let a = (x - y * u * (t + tau) / d) * (y - x * u * t / d);
        let b = (nf - 1.0) * t * tau * z * z / (2.0 * d);
        let c = tau * z * z * x * y / d;
        let m = l2.max(l3);
        let bracket = (a + b) * s2 * (l2 - m).exp() - c * s3 * (l3 - m).exp();
        if bracket == 0.0 {
            return 0.0;
        }
        let expo = ln_pref
            + ln_fact
            + 0.5 * (nf - 3.0) * u.ln()
            - 0.5 * nf * (tau / t + u).ln()
            - (x * x - 2.0 * z * z * x * y + y * y * (1.0 + tau / t)) / d
            + m
            + bracket.abs().ln();
        bracket.signum() * expo.exp()
    };
    integrate(integrand, 0.0, 1.0, cfg)
}

/// Log of the prefactor `c1(n)` in the zero-argument scaled-lag formula;
/// tends to `ln(big_t / (pi t^2))` as `n` grows.
fn ln_c1(n: usize, t: f64, big_t: f64) -> f64 {
    let nf = n as f64;
    ln_factorial(n - 1) - nf * (2.0 * std::f64::consts::PI).ln()
        + ln_sphere_area(n)
        + ln_sphere_area(n - 1)
        + big_t.ln()
        - nf.ln()
        - 2.0 * t.ln()
}

/// Two-time modified density at `y = 0` with the lag scaled as `big_t / n`:
/// `rho~(0, x)` at times `(t, t + big_t/n)`, dimension `n`. Equivalent to
/// `modified_density_finite_n` with `tau = big_t / n`, but numerically
/// better conditioned and used as an internal-consistency check.
pub fn modified_density_finite_n_y0(
    n: usize,
    p: &ScaledLagParams,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if n < 4 {
        return Err(Error::invalid("dimension must be at least 4"));
    }
    let (t, big_t) = (p.t, p.big_t);
    let nf = n as f64;
    let ln_pref = ln_c1(n, t, big_t);
    let integrand = move |z: f64| {
        let u = 1.0 - z * z;
        if u <= 0.0 {
            return 0.0;
        }
        let factor = z * z - 2.0 * nf * x * x * u / ((nf - 1.0) * big_t);
        if factor == 0.0 {
            return 0.0;
        }
        let expo = ln_pref - 2.5 * u.ln()
            - x * x / (big_t / nf + t * u)
            - (0.5 * nf + 1.0) * (big_t / (nf * t * u)).ln_1p()
            + factor.abs().ln();
        factor.signum() * expo.exp()
    };
    integrate(integrand, 0.0, 1.0, cfg)
}

/// Large-dimension limit of `rho~(0, x)` under the scaled lag:
/// with `q = x^2/t + big_t/(2t)`,
/// `rho~(0, x) = (big_t / (2 sqrt(pi) t^2)) e^{-q} [ q^{-3/2}/2 - (2x^2/big_t) q^{-1/2} ]`.
pub fn modified_density_limit(p: &ScaledLagParams, x: f64) -> f64 {
    let (t, big_t) = (p.t, p.big_t);
    let q = x * x / t + big_t / (2.0 * t);
    let pref = big_t / (2.0 * std::f64::consts::PI.sqrt() * t * t) * (-q).exp();
    pref * (0.5 * q.powf(-1.5) - (2.0 * x * x / big_t) / q.sqrt())
}

/// Small-lag limit of the smooth part of `rho~(0, x)`:
/// `-(|x| / (sqrt(pi) t^{3/2})) e^{-x^2/t}`, the `big_t -> 0` limit of
/// `modified_density_limit` away from `x = 0`.
pub fn modified_density_limit_small_lag(t: f64, x: f64) -> f64 {
    -(x.abs() / (std::f64::consts::PI.sqrt() * t.powf(1.5))) * (-x * x / t).exp()
}

/// Limiting two-time spin correlation under the scaled lag:
/// `E[s_y(t) s_x(t + big_t/n)] -> erfc( sqrt((x-y)^2/t + big_t/(2t)) )`.
pub fn spin_corr_limit(p: &ScaledLagParams, y: f64, x: f64) -> f64 {
    erfc(((x - y) * (x - y) / p.t + p.big_t / (2.0 * p.t)).sqrt())
}

/// Reconstructs the spin correlation `E[s_0(t) s_x(t + big_t/n)]` from the
/// limiting modified density by the inversion
/// `R(x) = 4 int_{-inf}^{x} (z - x) rho~(0, z) dz`,
/// truncating the lower limit where the Gaussian envelope is negligible.
/// Agreement with `spin_corr_limit` is an internal-consistency check on
/// the density formula.
pub fn spin_corr_from_density(p: &ScaledLagParams, x: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    let lower = x.min(0.0) - 10.0 * p.t.sqrt().max(1.0);
    let pp = *p;
    integrate(
        move |z| 4.0 * (z - x) * modified_density_limit(&pp, z),
        lower,
        x,
        cfg,
    )
}

/// Leading-order probability that the number of real eigenvalues changes
/// parity between times `t` and `t + tau`: `sqrt(n tau / (2 pi t))`.
pub fn crossing_probability_approx(n: usize, t: f64, tau: f64) -> f64 {
    (n as f64 * tau / (2.0 * std::f64::consts::PI * t)).sqrt()
}

/// Effective diffusion constant of the real-eigenvalue count under the
/// scaled lag: `n pi / 8`.
pub fn effective_diffusion(n: usize) -> f64 {
    n as f64 * std::f64::consts::PI / 8.0
}

/// `(sign, ln|value|)` of the characteristic-polynomial pair moment
/// `E[ det(M_t - x) det(M_t - y) ] = 2^{-n} n! t^n e_n(2xy/t)`.
pub fn charpoly_pair_moment(n: usize, t: f64, x: f64, y: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if !(t > 0.0) {
        return Err(Error::invalid("time t must be positive"));
    }
    let (s, l) = ln_exp_poly(n, 2.0 * x * y / t);
    Ok((
        s,
        l + ln_factorial(n) - n as f64 * std::f64::consts::LN_2 + n as f64 * t.ln(),
    ))
}

/// `charpoly_pair_moment` recombined to a plain value; only valid when the
/// magnitude fits in `f64`.
pub fn charpoly_pair_moment_value(n: usize, t: f64, x: f64, y: f64) -> Result<f64> {
    let (s, l) = charpoly_pair_moment(n, t, x, y)?;
    Ok(s * l.exp())
}
