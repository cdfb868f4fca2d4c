//! Sampling of gl(N,R)-valued Brownian motion.
//!
//! Entries are independent scalar Brownian motions normalized so that an
//! entry has variance `t/2` at time `t`. Increments over `dt` are therefore
//! `N(0, dt/2)`. This factor of two is fixed by the covariance
//! `E <A,M_t><B,M_s> = (1/2) <A,B> min(s,t)` and differs from codes that use
//! variance `dt` per entry.

use crate::error::{Error, Result};
use crate::rng::SeedSpec;
use rand::Rng;
use rand_distr::StandardNormal;

/// An N x N real matrix tagged with its process time.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSample {
    n: usize,
    time: f64,
    entries: Vec<f64>, // row-major, n*n
}

impl MatrixSample {
    pub fn zero(n: usize) -> Self {
        MatrixSample {
            n,
            time: 0.0,
            entries: vec![0.0; n * n],
        }
    }

    pub fn from_entries(n: usize, time: f64, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "entry buffer has length {}, expected {}",
                entries.len(),
                n * n
            )));
        }
        if time < 0.0 {
            return Err(Error::invalid("time must be nonnegative"));
        }
        Ok(MatrixSample { n, time, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

/// Strictly increasing positive observation times.
#[derive(Debug, Clone, PartialEq)]
pub struct PathTimes {
    times: Vec<f64>,
}

impl PathTimes {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::invalid("need at least one time"));
        }
        let mut prev = 0.0;
        for &t in &times {
            if !(t > prev) {
                return Err(Error::invalid(format!(
                    "times must be strictly increasing and positive, got {t} after {prev}"
                )));
            }
            prev = t;
        }
        Ok(PathTimes { times })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// One Brownian increment: an n x n matrix of independent `N(0, dt/2)`
/// entries. Deterministic given the seed.
pub fn sample_increment(n: usize, dt: f64, seed: SeedSpec) -> Result<MatrixSample> {
    if n < 1 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if !(dt > 0.0) {
        return Err(Error::invalid("dt must be positive"));
    }
    let mut rng = seed.rng();
    let sd = (dt / 2.0).sqrt();
    let entries = (0..n * n)
        .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
        .collect();
    Ok(MatrixSample {
        n,
        time: dt,
        entries,
    })
}

/// Sample the process at each time in `times` along a single path.
///
/// Consecutive slices differ by an independent Gaussian increment, so the
/// marginal at `t_k` has entry variance `t_k/2` and entries at two times have
/// covariance `min(s,t)/2`.
pub fn sample_path(n: usize, times: &PathTimes, seed: SeedSpec) -> Result<Vec<MatrixSample>> {
    if n < 1 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let mut rng = seed.rng();
    let mut out = Vec::with_capacity(times.len());
    let mut current = vec![0.0f64; n * n];
    let mut prev_t = 0.0;
    for &t in times.as_slice() {
        let sd = ((t - prev_t) / 2.0).sqrt();
        for e in current.iter_mut() {
            *e += sd * rng.sample::<f64, _>(StandardNormal);
        }
        out.push(MatrixSample {
            n,
            time: t,
            entries: current.clone(),
        });
        prev_t = t;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_var(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        (mean, var)
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(sample_increment(0, 1.0, SeedSpec::new(1, 0)).is_err());
        assert!(sample_increment(2, 0.0, SeedSpec::new(1, 0)).is_err());
        assert!(sample_increment(2, -1.0, SeedSpec::new(1, 0)).is_err());
        assert!(PathTimes::new(vec![1.0, 1.0]).is_err());
        assert!(PathTimes::new(vec![-1.0]).is_err());
        assert!(PathTimes::new(vec![]).is_err());
    }

    #[test]
    fn determinism() {
        let a = sample_increment(4, 0.7, SeedSpec::new(42, 5)).unwrap();
        let b = sample_increment(4, 0.7, SeedSpec::new(42, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_scale_shrinks() {
        // dt -> 0: empirical variance well below 1e-7 at dt = 1e-8.
        let mut draws = Vec::new();
        for k in 0..100_000 / 4 {
            let m = sample_increment(2, 1e-8, SeedSpec::new(9, k)).unwrap();
            draws.extend_from_slice(m.entries());
        }
        let (_, var) = mean_var(&draws);
        assert!(var < 1e-7, "var = {var}");
    }

    #[test]
    fn entry_variance_is_half_dt() {
        // n = 4, dt = 1: per-entry variance 0.5 within 3 standard errors.
        let samples = 62_500; // 1e6 entries total
        let mut draws = Vec::with_capacity(samples * 16);
        for k in 0..samples {
            let m = sample_increment(4, 1.0, SeedSpec::new(3, k as u64)).unwrap();
            draws.extend_from_slice(m.entries());
        }
        let (mean, var) = mean_var(&draws);
        let n = draws.len() as f64;
        // stderr of the sample variance of a Gaussian: var * sqrt(2/(n-1))
        let se_var = 0.5 * (2.0 / (n - 1.0)).sqrt();
        let se_mean = (0.5f64 / n).sqrt();
        assert!(mean.abs() < 3.0 * se_mean, "mean = {mean}");
        assert!((var - 0.5).abs() < 3.0 * se_var, "var = {var}");
    }

    #[test]
    fn distinct_entries_uncorrelated() {
        let samples = 100_000;
        let mut sum = 0.0;
        for k in 0..samples {
            let m = sample_increment(2, 1.0, SeedSpec::new(11, k)).unwrap();
            sum += m.get(0, 1) * m.get(1, 0);
        }
        let mean = sum / samples as f64;
        let se = 0.5 / (samples as f64).sqrt(); // var of product of two N(0,1/2) is 1/4
        assert!(mean.abs() < 3.0 * se, "cross moment = {mean}");
    }

    #[test]
    fn path_marginal_and_covariance() {
        // times [1,2]: covariance of one entry between slices = min(1,2)/2 = 0.5.
        let times = PathTimes::new(vec![1.0, 2.0]).unwrap();
        let samples = 200_000u64;
        let (mut s_xy, mut s_xx) = (0.0, 0.0);
        for k in 0..samples {
            let path = sample_path(2, &times, SeedSpec::new(21, k)).unwrap();
            let a = path[0].get(0, 0);
            let b = path[1].get(0, 0);
            s_xy += a * b;
            s_xx += a * a;
        }
        let n = samples as f64;
        let cov = s_xy / n;
        let var1 = s_xx / n;
        // Var(a*b) for jointly Gaussian, Var a = 1/2, Var b = 1, Cov = 1/2:
        // E[a^2 b^2] - cov^2 = var_a var_b + 2 cov^2 - cov^2 = 0.75.
        let se_cov = (0.75f64 / n).sqrt();
        let se_var = 0.5 * (2.0 / n).sqrt();
        assert!((cov - 0.5).abs() < 3.0 * se_cov, "cov = {cov}");
        assert!((var1 - 0.5).abs() < 3.0 * se_var, "var = {var1}");
    }

    #[test]
    fn nearby_times_differ_by_small_noise() {
        // Gaussian tail bound: entries of the increment are N(0, 0.0005),
        // sd ~ 0.0224. Max over 1e3 paths of 100 entries each is the max of
        // 1e5 standard Gaussians scaled by sd: P(max > 0.5) = P(|Z| > 22) ~ 0.
        let times = PathTimes::new(vec![1.0, 1.001]).unwrap();
        let mut max_delta: f64 = 0.0;
        for k in 0..1000 {
            let path = sample_path(10, &times, SeedSpec::new(31, k)).unwrap();
            for (a, b) in path[0].entries().iter().zip(path[1].entries()) {
                max_delta = max_delta.max((a - b).abs());
            }
        }
        assert!(max_delta < 0.5, "max delta = {max_delta}");
        assert!(max_delta > 0.0);
    }

    #[test]
    fn single_time_path_matches_increment() {
        let times = PathTimes::new(vec![1.0]).unwrap();
        let path = sample_path(3, &times, SeedSpec::new(5, 0)).unwrap();
        let inc = sample_increment(3, 1.0, SeedSpec::new(5, 0)).unwrap();
        assert_eq!(path[0], inc);
    }
}
