//! Real eigenvalues, spin variables and the counting measure.
//!
//! Realness is classified structurally from the real Schur form: 1x1 diagonal
//! blocks are real eigenvalues, 2x2 blocks with negative discriminant are
//! conjugate pairs. No tolerance on imaginary parts is ever applied, so the
//! spin parity cannot flicker with a threshold choice.
//!
//! Spins follow a right-limit convention: `spin_at(s, x)` counts eigenvalues
//! strictly below `x`, so an eigenvalue sitting exactly at `x` (a
//! probability-zero event) is not counted. The estimator-side weight
//! `spin_at_inclusive` counts it, matching the "intervals just to the right"
//! prescription for modified densities.

use crate::error::{Error, Result};
use crate::process::MatrixSample;

/// Eigenvalues of a real matrix, split structurally into real eigenvalues and
/// conjugate pairs `a +- ib` with `b > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    real_eigs: Vec<f64>,
    complex_pairs: Vec<(f64, f64)>,
    n: usize,
}

impl Spectrum {
    pub fn real_eigs(&self) -> &[f64] {
        &self.real_eigs
    }

    pub fn complex_pairs(&self) -> &[(f64, f64)] {
        &self.complex_pairs
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_real(&self) -> usize {
        self.real_eigs.len()
    }
}

/// The piecewise-constant spin function represented by its jump points.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinProfile {
    jump_points: Vec<f64>,
}

impl SpinProfile {
    pub fn from_spectrum(s: &Spectrum) -> Self {
        SpinProfile {
            jump_points: s.real_eigs.clone(),
        }
    }

    pub fn jump_points(&self) -> &[f64] {
        &self.jump_points
    }

    /// Value just right of `x`: +1 below all jumps, flipping at each jump.
    pub fn eval(&self, x: f64) -> i32 {
        let below = self.jump_points.iter().filter(|&&j| j < x).count();
        if below % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

// ---------------------------------------------------------------------------
// Real Schur form: Hessenberg reduction + Francis double-shift QR.
// ---------------------------------------------------------------------------

struct Dense {
    n: usize,
    a: Vec<f64>,
}

impl Dense {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }
}

/// Reduce to upper Hessenberg form by Householder reflections.
fn hessenberg(m: &mut Dense) {
    let n = m.n;
    if n < 3 {
        return;
    }
    let mut v = vec![0.0f64; n];
    for k in 0..n - 2 {
        // Householder vector for column k, rows k+1..n.
        let mut norm2 = 0.0;
        for i in k + 1..n {
            norm2 += m.at(i, k) * m.at(i, k);
        }
        if norm2 == 0.0 {
            continue;
        }
        let alpha = m.at(k + 1, k);
        let norm = norm2.sqrt();
        let sign = if alpha >= 0.0 { 1.0 } else { -1.0 };
        let v1 = alpha + sign * norm;
        if v1 == 0.0 {
            continue;
        }
        v[k + 1] = 1.0;
        for i in k + 2..n {
            v[i] = m.at(i, k) / v1;
        }
        let mut vtv = 1.0;
        for i in k + 2..n {
            vtv += v[i] * v[i];
        }
        let beta = 2.0 / vtv;
        // A <- (I - beta v v^T) A
        for j in k..n {
            let mut dot = 0.0;
            for i in k + 1..n {
                dot += v[i] * m.at(i, j);
            }
            let s = beta * dot;
            for i in k + 1..n {
                let val = m.at(i, j) - s * v[i];
                m.set(i, j, val);
            }
        }
        // A <- A (I - beta v v^T)
        for i in 0..n {
            let mut dot = 0.0;
            for j in k + 1..n {
                dot += m.at(i, j) * v[j];
            }
            let s = beta * dot;
            for j in k + 1..n {
                let val = m.at(i, j) - s * v[j];
                m.set(i, j, val);
            }
        }
        // Zero out the annihilated part explicitly.
        for i in k + 2..n {
            m.set(i, k, 0.0);
        }
    }
}

/// Eigenvalues of a 2x2 block, classified by the exact sign of the
/// discriminant.
fn eig2(a: f64, b: f64, c: f64, d: f64) -> ([f64; 2], Option<(f64, f64)>) {
    let mid = 0.5 * (a + d);
    let disc = 0.25 * (a - d) * (a - d) + b * c;
    if disc >= 0.0 {
        let r = disc.sqrt();
        ([mid - r, mid + r], None)
    } else {
        ([0.0, 0.0], Some((mid, (-disc).sqrt())))
    }
}

/// 3-row Householder reflector annihilating (y, z) against x, applied to the
/// active window [l, hi] from both sides (eigenvalues only, so rows above l
/// and columns right of hi are never touched).
fn apply_reflector3(h: &mut Dense, p: usize, l: usize, hi: usize, x: f64, y: f64, z: f64) {
    let norm = (x * x + y * y + z * z).sqrt();
    if norm == 0.0 {
        return;
    }
    let sign = if x >= 0.0 { 1.0 } else { -1.0 };
    let v0 = x + sign * norm;
    if v0 == 0.0 {
        return;
    }
    let v1 = y / v0;
    let v2 = z / v0;
    let beta = 2.0 / (1.0 + v1 * v1 + v2 * v2);
    let jstart = if p > l { p - 1 } else { l };
    for j in jstart..=hi {
        let dot = h.at(p, j) + v1 * h.at(p + 1, j) + v2 * h.at(p + 2, j);
        let s = beta * dot;
        h.set(p, j, h.at(p, j) - s);
        h.set(p + 1, j, h.at(p + 1, j) - s * v1);
        h.set(p + 2, j, h.at(p + 2, j) - s * v2);
    }
    let iend = hi.min(p + 3);
    for i in l..=iend {
        let dot = h.at(i, p) + v1 * h.at(i, p + 1) + v2 * h.at(i, p + 2);
        let s = beta * dot;
        h.set(i, p, h.at(i, p) - s);
        h.set(i, p + 1, h.at(i, p + 1) - s * v1);
        h.set(i, p + 2, h.at(i, p + 2) - s * v2);
    }
}

/// Closing 2-row reflector on rows (p, p+1) of the active window.
fn apply_reflector2(h: &mut Dense, p: usize, l: usize, hi: usize, x: f64, y: f64) {
    let norm = (x * x + y * y).sqrt();
    if norm == 0.0 {
        return;
    }
    let sign = if x >= 0.0 { 1.0 } else { -1.0 };
    let v0 = x + sign * norm;
    if v0 == 0.0 {
        return;
    }
    let v1 = y / v0;
    let beta = 2.0 / (1.0 + v1 * v1);
    let jstart = if p > l { p - 1 } else { l };
    for j in jstart..=hi {
        let dot = h.at(p, j) + v1 * h.at(p + 1, j);
        let s = beta * dot;
        h.set(p, j, h.at(p, j) - s);
        h.set(p + 1, j, h.at(p + 1, j) - s * v1);
    }
    for i in l..=hi {
        let dot = h.at(i, p) + v1 * h.at(i, p + 1);
        let s = beta * dot;
        h.set(i, p, h.at(i, p) - s);
        h.set(i, p + 1, h.at(i, p + 1) - s * v1);
    }
}

/// Francis double-shift QR on a Hessenberg matrix; returns eigenvalues.
fn francis_qr(h: &mut Dense, sweep_cap: usize) -> Result<(Vec<f64>, Vec<(f64, f64)>)> {
    let n = h.n;
    let mut real = Vec::new();
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    if n == 0 {
        return Ok((real, pairs));
    }
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut stagnation = 0usize;

    'outer: loop {
        // Deflate converged trailing blocks.
        loop {
            if hi == 0 {
                real.push(h.at(0, 0));
                break 'outer;
            }
            // Find the start of the active block: smallest l with
            // non-negligible subdiagonals in (l, hi].
            let mut l = hi;
            while l > 0 {
                let sub = h.at(l, l - 1).abs();
                let scale = h.at(l - 1, l - 1).abs() + h.at(l, l).abs();
                if sub <= eps * scale || sub < f64::MIN_POSITIVE {
                    h.set(l, l - 1, 0.0);
                    break;
                }
                l -= 1;
            }
            if l == hi {
                real.push(h.at(hi, hi));
                hi -= 1;
                stagnation = 0;
                continue;
            }
            if l + 1 == hi {
                let (r2, pair) = eig2(h.at(l, l), h.at(l, hi), h.at(hi, l), h.at(hi, hi));
                match pair {
                    Some(p) => pairs.push(p),
                    None => real.extend_from_slice(&r2),
                }
                if l == 0 {
                    break 'outer;
                }
                hi = l - 1;
                stagnation = 0;
                continue;
            }
            // Active block [l, hi] of size >= 3: run one Francis sweep.
            sweeps += 1;
            stagnation += 1;
            if sweeps > sweep_cap {
                return Err(Error::NumericalFailure { n, sweeps });
            }
            let (mut x, mut y, mut z);
            if stagnation % 16 == 0 {
                // Exceptional shift to break symmetric stalls.
                let s = h.at(hi, hi - 1).abs() + h.at(hi - 1, hi - 2).abs();
                x = h.at(l, l) * h.at(l, l) - 1.5 * s * h.at(l, l) + s * s * 0.81;
                y = h.at(l + 1, l) * (h.at(l, l) + h.at(l + 1, l + 1) - 1.5 * s);
                z = h.at(l + 2, l + 1) * h.at(l + 1, l);
            } else {
                let s = h.at(hi - 1, hi - 1) + h.at(hi, hi);
                let t = h.at(hi - 1, hi - 1) * h.at(hi, hi) - h.at(hi - 1, hi) * h.at(hi, hi - 1);
                x = h.at(l, l) * h.at(l, l) + h.at(l, l + 1) * h.at(l + 1, l) - s * h.at(l, l) + t;
                y = h.at(l + 1, l) * (h.at(l, l) + h.at(l + 1, l + 1) - s);
                z = h.at(l + 2, l + 1) * h.at(l + 1, l);
            }
            // Chase the bulge: 3-row reflectors at positions l..=hi-2,
            // then a closing 2-row reflector on the last two rows.
            for p in l..=hi - 2 {
                apply_reflector3(h, p, l, hi, x, y, z);
                x = h.at(p + 1, p);
                y = h.at(p + 2, p);
                if p < hi - 2 {
                    z = h.at(p + 3, p);
                }
            }
            apply_reflector2(h, hi - 1, l, hi, x, y);
            // Restore exact Hessenberg structure below the bulge path.
            for i in l + 2..=hi {
                for j in l..i - 1 {
                    h.set(i, j, 0.0);
                }
            }
        }
    }
    Ok((real, pairs))
}

/// Extract the spectrum of a real matrix via its real Schur form.
///
/// Fails with `NumericalFailure` if the QR iteration does not converge within
/// `40 * n` sweeps; convergence failure is reported, never silently
/// classified.
pub fn real_schur_spectrum(m: &MatrixSample) -> Result<Spectrum> {
    let n = m.n();
    if m.entries().iter().any(|e| !e.is_finite()) {
        return Err(Error::invalid("matrix entries must be finite"));
    }
    let mut d = Dense {
        n,
        a: m.entries().to_vec(),
    };
    hessenberg(&mut d);
    let (mut real, mut pairs) = francis_qr(&mut d, 40 * n.max(1))?;
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    debug_assert_eq!(real.len() + 2 * pairs.len(), n);
    Ok(Spectrum {
        real_eigs: real,
        complex_pairs: pairs,
        n,
    })
}

// ---------------------------------------------------------------------------
// Spins and counting.
// ---------------------------------------------------------------------------

/// Spin at `x`: `(-1)^{# real eigenvalues strictly below x}`.
pub fn spin_at(s: &Spectrum, x: f64) -> i32 {
    let below = s.real_eigs.iter().filter(|&&e| e < x).count();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Spin just right of `x`: counts an eigenvalue at exactly `x` as below.
/// This is the weight `s_{x+}` used when binning modified densities.
pub fn spin_at_inclusive(s: &Spectrum, x: f64) -> i32 {
    let below = s.real_eigs.iter().filter(|&&e| e <= x).count();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign and log-magnitude of `det(A)` via partially pivoted LU.
///
/// Only the sign and the log of the magnitude are accumulated; the
/// determinant value itself is never formed, so there is no overflow for
/// large `n`. Reports `DegenerateInput` if any pivot magnitude drops below
/// `1e-300`.
pub fn det_sign_log(n: usize, entries: &[f64]) -> Result<(i32, f64)> {
    debug_assert_eq!(entries.len(), n * n);
    let mut a = entries.to_vec();
    let mut sign = 1i32;
    let mut log_mag = 0.0f64;
    for k in 0..n {
        // Partial pivoting.
        let mut p = k;
        let mut best = a[k * n + k].abs();
        for i in k + 1..n {
            let v = a[i * n + k].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best < 1e-300 {
            return Err(Error::DegenerateInput(format!(
                "pivot magnitude {best:e} below degeneracy floor"
            )));
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        if pivot < 0.0 {
            sign = -sign;
        }
        log_mag += pivot.abs().ln();
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            if f != 0.0 {
                for j in k + 1..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
    }
    Ok((sign, log_mag))
}

/// Spin via the sign of the characteristic polynomial:
/// `s_x(M) = sgn det(M - xI)`.
pub fn spin_via_det_sign(m: &MatrixSample, x: f64) -> Result<i32> {
    let n = m.n();
    let mut shifted = m.entries().to_vec();
    for i in 0..n {
        shifted[i * n + i] -= x;
    }
    let (sign, _) = det_sign_log(n, &shifted)?;
    Ok(sign)
}

/// Number of real eigenvalues in `(a, b)` (open) or `[a, b)` (half-open when
/// `half_open` is set, for binning).
pub fn count_real_in(s: &Spectrum, a: f64, b: f64, half_open: bool) -> Result<usize> {
    if !(a < b) {
        return Err(Error::invalid("interval must satisfy a < b"));
    }
    let count = s
        .real_eigs
        .iter()
        .filter(|&&e| if half_open { e >= a && e < b } else { e > a && e < b })
        .count();
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{sample_increment, MatrixSample};
    use crate::rng::SeedSpec;

    fn mat(n: usize, entries: &[f64]) -> MatrixSample {
        MatrixSample::from_entries(n, 1.0, entries.to_vec()).unwrap()
    }

    #[test]
    fn diagonal_matrix() {
        let s = real_schur_spectrum(&mat(2, &[-1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(s.real_eigs(), &[-1.0, 1.0]);
        assert!(s.complex_pairs().is_empty());
    }

    #[test]
    fn rotation_matrix() {
        let s = real_schur_spectrum(&mat(2, &[0.0, 1.0, -1.0, 0.0])).unwrap();
        assert!(s.real_eigs().is_empty());
        assert_eq!(s.complex_pairs().len(), 1);
        let (a, b) = s.complex_pairs()[0];
        assert!(a.abs() < 1e-14);
        assert!((b - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spin_at_examples() {
        let s = real_schur_spectrum(&mat(2, &[-1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(spin_at(&s, 0.0), -1);
        assert_eq!(spin_at(&s, -5.0), 1);
        assert_eq!(spin_at(&s, 5.0), 1);
        // Right-limit convention: eigenvalue at x not counted.
        assert_eq!(spin_at(&s, 1.0), -1);
        assert_eq!(spin_at_inclusive(&s, 1.0), 1);
    }

    #[test]
    fn spin_det_sign_examples() {
        let m = mat(2, &[-1.0, 0.0, 0.0, 1.0]);
        assert_eq!(spin_via_det_sign(&m, 0.0).unwrap(), -1);
        let r = mat(2, &[0.0, 1.0, -1.0, 0.0]);
        assert_eq!(spin_via_det_sign(&r, 0.0).unwrap(), 1);
    }

    #[test]
    fn count_real_examples() {
        let s = real_schur_spectrum(&mat(2, &[-1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(count_real_in(&s, 0.0, 2.0, false).unwrap(), 1);
        assert_eq!(count_real_in(&s, -2.0, 2.0, false).unwrap(), 2);
        assert_eq!(count_real_in(&s, 5.0, 6.0, false).unwrap(), 0);
        assert_eq!(count_real_in(&s, 1.0, 2.0, true).unwrap(), 1);
        assert_eq!(count_real_in(&s, 1.0, 2.0, false).unwrap(), 0);
        assert!(count_real_in(&s, 2.0, 1.0, false).is_err());
    }

    #[test]
    fn spectrum_structure_random() {
        for k in 0..50 {
            let m = sample_increment(20, 1.0, SeedSpec::new(100, k)).unwrap();
            let s = real_schur_spectrum(&m).unwrap();
            assert_eq!(s.num_real() + 2 * s.complex_pairs().len(), 20);
            // Parity of real count matches n.
            assert_eq!(s.num_real() % 2, 0);
            for &(_, b) in s.complex_pairs() {
                assert!(b > 0.0);
            }
            // Trace preservation.
            let tr: f64 = s.real_eigs().iter().sum::<f64>()
                + 2.0 * s.complex_pairs().iter().map(|p| p.0).sum::<f64>();
            let norm: f64 = m.entries().iter().map(|e| e * e).sum::<f64>().sqrt();
            assert!(
                (tr - m.trace()).abs() < 1e-8 * norm.max(1.0),
                "trace mismatch: {} vs {}",
                tr,
                m.trace()
            );
        }
    }

    #[test]
    fn schur_matches_independent_eigensolver() {
        // Oracle: nalgebra's own Schur-based complex eigenvalues.
        for k in 0..20 {
            let m = sample_increment(20, 1.0, SeedSpec::new(200, k)).unwrap();
            let s = real_schur_spectrum(&m).unwrap();
            let nm = nalgebra::DMatrix::from_row_slice(20, 20, m.entries());
            let oracle = nm.complex_eigenvalues();
            let mut ours: Vec<(f64, f64)> = s.real_eigs().iter().map(|&e| (e, 0.0)).collect();
            for &(a, b) in s.complex_pairs() {
                ours.push((a, b));
                ours.push((a, -b));
            }
            let mut theirs: Vec<(f64, f64)> = oracle.iter().map(|c| (c.re, c.im)).collect();
            let key = |p: &(f64, f64)| (p.0, p.1);
            ours.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            theirs.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            for (a, b) in ours.iter().zip(theirs.iter()) {
                let d = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
                assert!(d < 1e-8, "eig mismatch: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn spin_routes_agree_on_random_draws() {
        // Self-consistency between the parity and determinant-sign routes.
        use rand::Rng;
        let mut rng = SeedSpec::new(300, 0).rng();
        for k in 0..200 {
            let m = sample_increment(50, 1.0, SeedSpec::new(300, k + 1)).unwrap();
            let s = real_schur_spectrum(&m).unwrap();
            let x = rng.gen_range(-10.0..10.0);
            assert_eq!(spin_at(&s, x), spin_via_det_sign(&m, x).unwrap(), "x = {x}");
        }
    }

    #[test]
    fn large_dimension_converges() {
        let m = sample_increment(400, 1.0, SeedSpec::new(400, 0)).unwrap();
        let s = real_schur_spectrum(&m).unwrap();
        assert_eq!(s.num_real() % 2, 0);
        // O(sqrt(N)) real eigenvalues: loose sanity corridor.
        assert!(s.num_real() >= 4 && s.num_real() <= 60, "{}", s.num_real());
    }

    #[test]
    fn spin_profile_matches_spin_at() {
        let s = real_schur_spectrum(&mat(2, &[-1.0, 0.0, 0.0, 1.0])).unwrap();
        let p = SpinProfile::from_spectrum(&s);
        for x in [-3.0, -0.5, 0.5, 3.0] {
            assert_eq!(p.eval(x), spin_at(&s, x));
        }
    }
}
