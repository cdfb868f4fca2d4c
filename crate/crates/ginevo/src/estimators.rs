//! Monte Carlo estimators for every quantity the deterministic layers
//! predict, each returning a mean together with a standard error.
//!
//! Reproducibility contract: sample `i` always draws from the dedicated
//! substream `seed.stream(i)`, samples are evaluated in parallel but
//! collected into an indexed buffer, and the reduction runs sequentially.
//! Results are therefore bit-identical for any thread-pool size.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::process::{sample_increment, sample_path, MatrixSample, PathTimes};
use crate::rng::SeedSpec;
use crate::spectral::{det_sign_log, real_schur_spectrum, spin_at_inclusive, spin_via_det_sign, Spectrum};

/// Sample budget and seeding for a Monte Carlo run.
#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    pub samples: usize,
    pub seed: SeedSpec,
}

impl McConfig {
    pub fn new(samples: usize, seed: SeedSpec) -> Result<Self> {
        if samples < 2 {
            return Err(Error::invalid("need at least two samples"));
        }
        Ok(McConfig { samples, seed })
    }
}

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl Estimate {
    /// Distance from a reference value in units of the standard error.
    pub fn z_score(&self, reference: f64) -> f64 {
        (self.mean - reference) / self.stderr
    }
}

fn reduce_scalar(values: &[f64]) -> Estimate {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
    Estimate {
        mean,
        stderr: (var / n as f64).sqrt(),
        samples: n,
    }
}

/// Runs `f` over per-sample substreams in parallel and reduces sequentially.
fn run_scalar_mc<F>(cfg: &McConfig, f: F) -> Result<Estimate>
where
    F: Fn(SeedSpec) -> Result<f64> + Sync,
{
    let values: Vec<f64> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| f(cfg.seed.stream(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(reduce_scalar(&values))
}

/// Vector-valued variant of [`run_scalar_mc`]; each sample yields `dim`
/// components which are reduced coordinate-wise.
fn run_vector_mc<F>(cfg: &McConfig, dim: usize, f: F) -> Result<Vec<Estimate>>
where
    F: Fn(SeedSpec) -> Result<Vec<f64>> + Sync,
{
    let rows: Vec<Vec<f64>> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            let v = f(cfg.seed.stream(i))?;
            debug_assert_eq!(v.len(), dim);
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(dim);
    let mut scratch = vec![0.0; rows.len()];
    for d in 0..dim {
        for (k, row) in rows.iter().enumerate() {
            scratch[k] = row[d];
        }
        out.push(reduce_scalar(&scratch));
    }
    Ok(out)
}

fn two_time_pair(n: usize, t: f64, tau: f64, seed: SeedSpec) -> Result<(MatrixSample, MatrixSample)> {
    let times = PathTimes::new(vec![t, t + tau])?;
    let mut path = sample_path(n, &times, seed)?;
    let later = path.pop().expect("two entries");
    let earlier = path.pop().expect("two entries");
    Ok((earlier, later))
}

/// Estimates the two-time spin correlation `E[s_y(t) s_x(t + tau)]` via
/// determinant signs (no eigendecomposition needed).
pub fn estimate_spin_corr_two_time(
    n: usize,
    t: f64,
    tau: f64,
    y: f64,
    x: f64,
    cfg: &McConfig,
) -> Result<Estimate> {
    run_scalar_mc(cfg, |seed| {
        let (early, late) = two_time_pair(n, t, tau, seed)?;
        let a = spin_via_det_sign(&early, y)?;
        let b = spin_via_det_sign(&late, x)?;
        Ok((a * b) as f64)
    })
}

/// Multi-point variant of [`estimate_spin_corr_two_time`]: one shared set
/// of samples serves every `x`, so the per-point estimates are correlated
/// but each is individually unbiased.
pub fn estimate_spin_corr_two_time_multi(
    n: usize,
    t: f64,
    tau: f64,
    y: f64,
    xs: &[f64],
    cfg: &McConfig,
) -> Result<Vec<Estimate>> {
    if xs.is_empty() {
        return Err(Error::invalid("need at least one evaluation point"));
    }
    let xs = xs.to_vec();
    run_vector_mc(cfg, xs.len(), move |seed| {
        let (early, late) = two_time_pair(n, t, tau, seed)?;
        let a = spin_via_det_sign(&early, y)?;
        xs.iter()
            .map(|&x| Ok((a * spin_via_det_sign(&late, x)?) as f64))
            .collect()
    })
}

/// A binned estimate of the two-time modified density on a rectangular
/// grid: `values[i][j]` estimates `rho~(y_i, x_j)` averaged over the bin.
#[derive(Debug, Clone)]
pub struct DensityGridEstimate {
    pub y_edges: Vec<f64>,
    pub x_edges: Vec<f64>,
    /// Row-major over (y-bin, x-bin).
    pub cells: Vec<Estimate>,
}

impl DensityGridEstimate {
    pub fn cell(&self, iy: usize, ix: usize) -> &Estimate {
        &self.cells[iy * (self.x_edges.len() - 1) + ix]
    }

    pub fn bin_center(edges: &[f64], i: usize) -> f64 {
        0.5 * (edges[i] + edges[i + 1])
    }
}

fn check_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 || edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("bin edges must be strictly increasing"));
    }
    Ok(())
}

/// Signed spin weight of the real eigenvalues of one sample, binned by the
/// given edges: bin `k` receives `sum_{lambda in bin} s_{lambda+}` where
/// `s_{lambda+}` is the spin immediately to the right of the eigenvalue.
fn binned_spin_weights(spec: &Spectrum, edges: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; edges.len() - 1];
    for &lam in spec.real_eigs() {
        if lam < edges[0] || lam >= edges[edges.len() - 1] {
            continue;
        }
        let k = edges.partition_point(|&e| e <= lam) - 1;
        out[k] += spin_at_inclusive(spec, lam) as f64;
    }
    out
}

/// Estimates the two-time modified density `rho~(y, x)` on a grid: each
/// sample contributes, per (y-bin, x-bin) pair, the product of the signed
/// spin weights of the two times, normalized by the bin area.
pub fn estimate_modified_density_two_time(
    n: usize,
    t: f64,
    tau: f64,
    y_edges: &[f64],
    x_edges: &[f64],
    cfg: &McConfig,
) -> Result<DensityGridEstimate> {
    check_edges(y_edges)?;
    check_edges(x_edges)?;
    let ny = y_edges.len() - 1;
    let nx = x_edges.len() - 1;
    let cells = run_vector_mc(cfg, ny * nx, |seed| {
        let (early, late) = two_time_pair(n, t, tau, seed)?;
        let wy = binned_spin_weights(&real_schur_spectrum(&early)?, y_edges);
        let wx = binned_spin_weights(&real_schur_spectrum(&late)?, x_edges);
        let mut row = Vec::with_capacity(ny * nx);
        for (iy, &a) in wy.iter().enumerate() {
            let dy = y_edges[iy + 1] - y_edges[iy];
            for (ix, &b) in wx.iter().enumerate() {
                let dx = x_edges[ix + 1] - x_edges[ix];
                row.push(a * b / (dy * dx));
            }
        }
        Ok(row)
    })?;
    Ok(DensityGridEstimate {
        y_edges: y_edges.to_vec(),
        x_edges: x_edges.to_vec(),
        cells,
    })
}

/// Estimates the equal-time K-point modified density at the centers of K
/// disjoint windows `[c_k - w/2, c_k + w/2]`: the sample weight is the
/// product over windows of the signed spin weight, normalized by `w^K`.
pub fn estimate_fixed_time_kpoint(
    n: usize,
    t: f64,
    centers: &[f64],
    width: f64,
    cfg: &McConfig,
) -> Result<Estimate> {
    if centers.is_empty() || centers.len() % 2 != 0 {
        return Err(Error::invalid("need a positive even number of windows"));
    }
    if !(width > 0.0) {
        return Err(Error::invalid("window width must be positive"));
    }
    if centers.windows(2).any(|c| !(c[0] + width <= c[1])) {
        return Err(Error::invalid("windows must be disjoint and ordered"));
    }
    let centers = centers.to_vec();
    run_scalar_mc(cfg, move |seed| {
        let m = sample_increment(n, t, seed)?;
        let spec = real_schur_spectrum(&m)?;
        let mut prod = 1.0;
        for &c in &centers {
            let lo = c - 0.5 * width;
            let hi = c + 0.5 * width;
            let mut w = 0.0;
            for &lam in spec.real_eigs() {
                if lam >= lo && lam < hi {
                    w += spin_at_inclusive(&spec, lam) as f64;
                }
            }
            prod *= w / width;
        }
        Ok(prod)
    })
}

/// Multi-configuration variant of [`estimate_fixed_time_kpoint`]: each
/// sample's spectrum is reused for every window configuration.
pub fn estimate_fixed_time_kpoint_multi(
    n: usize,
    t: f64,
    configs: &[(Vec<f64>, f64)],
    cfg: &McConfig,
) -> Result<Vec<Estimate>> {
    if configs.is_empty() {
        return Err(Error::invalid("need at least one window configuration"));
    }
    for (centers, width) in configs {
        if centers.is_empty() || centers.len() % 2 != 0 {
            return Err(Error::invalid("need a positive even number of windows"));
        }
        if !(*width > 0.0) {
            return Err(Error::invalid("window width must be positive"));
        }
        if centers.windows(2).any(|c| !(c[0] + width <= c[1])) {
            return Err(Error::invalid("windows must be disjoint and ordered"));
        }
    }
    let configs = configs.to_vec();
    run_vector_mc(cfg, configs.len(), move |seed| {
        let m = sample_increment(n, t, seed)?;
        let spec = real_schur_spectrum(&m)?;
        Ok(configs
            .iter()
            .map(|(centers, width)| {
                let mut prod = 1.0;
                for &c in centers {
                    let lo = c - 0.5 * width;
                    let hi = c + 0.5 * width;
                    let mut w = 0.0;
                    for &lam in spec.real_eigs() {
                        if lam >= lo && lam < hi {
                            w += spin_at_inclusive(&spec, lam) as f64;
                        }
                    }
                    prod *= w / width;
                }
                prod
            })
            .collect())
    })
}

/// Estimates the mean number of real eigenvalues at time `t`.
pub fn estimate_real_count(n: usize, t: f64, cfg: &McConfig) -> Result<Estimate> {
    run_scalar_mc(cfg, |seed| {
        let m = sample_increment(n, t, seed)?;
        Ok(real_schur_spectrum(&m)?.num_real() as f64)
    })
}

/// Estimates the density of real eigenvalues per unit length in the
/// centered window `[-half_width, half_width]` at time `t`.
pub fn estimate_local_real_density(
    n: usize,
    t: f64,
    half_width: f64,
    cfg: &McConfig,
) -> Result<Estimate> {
    if !(half_width > 0.0) {
        return Err(Error::invalid("half_width must be positive"));
    }
    run_scalar_mc(cfg, |seed| {
        let m = sample_increment(n, t, seed)?;
        let spec = real_schur_spectrum(&m)?;
        let count = spec
            .real_eigs()
            .iter()
            .filter(|&&l| l.abs() <= half_width)
            .count();
        Ok(count as f64 / (2.0 * half_width))
    })
}

/// Estimates the probability that the spin at the origin flips between
/// times `t` and `t + tau`, i.e. that an odd number of real eigenvalues
/// crosses zero: `(1 - E[s_0(t) s_0(t + tau)]) / 2`.
pub fn estimate_crossing_parity(n: usize, t: f64, tau: f64, cfg: &McConfig) -> Result<Estimate> {
    run_scalar_mc(cfg, |seed| {
        let (early, late) = two_time_pair(n, t, tau, seed)?;
        let a = spin_via_det_sign(&early, 0.0)?;
        let b = spin_via_det_sign(&late, 0.0)?;
        Ok(if a == b { 0.0 } else { 1.0 })
    })
}

/// Estimates the pair moment `E[det(M_t - x) det(M_t - y)]`.
pub fn estimate_charpoly_pair(n: usize, t: f64, x: f64, y: f64, cfg: &McConfig) -> Result<Estimate> {
    run_scalar_mc(cfg, |seed| {
        let m = sample_increment(n, t, seed)?;
        let shifted = |s: f64| -> Vec<f64> {
            let mut e = m.entries().to_vec();
            for i in 0..n {
                e[i * n + i] -= s;
            }
            e
        };
        let (s1, l1) = det_sign_log(n, &shifted(x))?;
        let (s2, l2) = det_sign_log(n, &shifted(y))?;
        Ok((s1 * s2) as f64 * (l1 + l2).exp())
    })
}
