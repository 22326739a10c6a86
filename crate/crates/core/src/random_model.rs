//! The random trigonometric series X(θ) = Σ r_γ sin(2πθ_γ) and Montgomery's
//! tail bounds for it.
//!
//! Sample i is drawn from ChaCha8 seeded with the run seed and switched to
//! stream i, so every sample is reproducible on its own and the sample set
//! does not depend on thread count or scheduling.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limiting::DensityCurve;
use crate::numeric::{least_squares, ordered_par_sum};
use crate::zeta::ZeroSet;

/// Default seed for Monte Carlo runs.
pub const DEFAULT_SEED: u64 = 42;

/// Independent draws of the series truncated to its first `n` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    values: Vec<f64>,
    n_zeros: usize,
    seed: u64,
}

fn draw(r: &[f64], seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    r.iter().map(|&r| r * (TAU * rng.gen::<f64>()).sin()).sum()
}

/// `n_samples` draws of X truncated to the first `n_zeros` zeros.
pub fn sample_x(zeros: &ZeroSet, n_zeros: usize, n_samples: usize, seed: u64) -> Result<Samples> {
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be positive".into()));
    }
    if n_zeros > zeros.len() {
        return crate::error::out_of_range("n_zeros", n_zeros as f64, zeros.len() as f64);
    }
    let r: Vec<f64> = zeros.records()[..n_zeros].iter().map(|z| z.r).collect();
    let values = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| draw(&r, seed, i))
        .collect();
    Ok(Samples {
        values,
        n_zeros,
        seed,
    })
}

impl Samples {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn n_zeros(&self) -> usize {
        self.n_zeros
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mean(&self) -> f64 {
        ordered_par_sum(self.len(), |i| self.values[i]) / self.len() as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        ordered_par_sum(n, |i| (self.values[i] - m).powi(2)) / (n - 1) as f64
    }

    /// Standard error of the sample mean.
    pub fn mean_stderr(&self) -> f64 {
        (self.variance() / self.len() as f64).sqrt()
    }

    /// Standard error of the sample variance, from the fourth central moment.
    pub fn variance_stderr(&self) -> f64 {
        let n = self.len() as f64;
        let m = self.mean();
        let m4 = ordered_par_sum(self.len(), |i| (self.values[i] - m).powi(4)) / n;
        let s2 = self.variance();
        ((m4 - s2 * s2) / n).max(0.0).sqrt()
    }

    /// Fraction of samples ≥ v, with its binomial standard error.
    pub fn tail(&self, v: f64) -> (f64, f64) {
        let hits = self.values.iter().filter(|&&x| x >= v).count();
        let n = self.len() as f64;
        let p = hits as f64 / n;
        (p, (p * (1.0 - p) / n).sqrt())
    }

    /// Kolmogorov–Smirnov distance between the sample CDF and a density
    /// (normalized by its total mass).
    pub fn ks_distance(&self, density: &DensityCurve) -> f64 {
        let mut sorted = self.values.clone();
        sorted.sort_by(f64::total_cmp);
        let cum = density.cumulative();
        let mass = *cum.last().unwrap();
        let n = sorted.len() as f64;
        sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = density.cdf_at(x, &cum) / mass;
                (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Samples as little-endian f64, 8 bytes each.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        for x in &self.values {
            w.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }
}

/// (I₀(κ), I₁(κ)) by their power series; every term is positive.
fn bessel_i0_i1(kappa: f64) -> (f64, f64) {
    let q = 0.25 * kappa * kappa;
    let (mut t0, mut t1) = (1.0, 0.5 * kappa);
    let (mut i0, mut i1) = (t0, t1);
    let mut m = 0.0;
    loop {
        m += 1.0;
        t0 *= q / (m * m);
        t1 *= q / (m * (m + 1.0));
        i0 += t0;
        i1 += t1;
        if t0 <= 1e-17 * i0 && m > kappa {
            return (i0, i1);
        }
    }
}

/// Largest concentration accepted by the tilted sampler.
const MAX_KAPPA: f64 = 500.0;

/// cos ψ for ψ drawn from the von Mises law with concentration κ about 0
/// (Best and Fisher's wrapped-Cauchy rejection sampler).
fn von_mises_cos<R: Rng>(kappa: f64, rng: &mut R) -> f64 {
    if kappa == 0.0 {
        return (PI * rng.gen::<f64>()).cos();
    }
    let s = (1.0 + 4.0 * kappa * kappa).sqrt();
    let tau = 1.0 + s;
    let rho = 2.0 * kappa * tau / ((s + 1.0) * (tau + (2.0 * tau).sqrt()));
    let r = (1.0 + rho * rho) / (2.0 * rho);
    loop {
        let z = (PI * rng.gen::<f64>()).cos();
        let f = (1.0 + r * z) / (r + z);
        let c = kappa * (r - f);
        let u: f64 = rng.gen();
        if c * (2.0 - c) > u || (c / u).ln() + 1.0 >= c {
            return f.clamp(-1.0, 1.0);
        }
    }
}

/// Tilt t with E_t[X] = V, where under tilt t each phase has density
/// ∝ exp(t r sin 2πθ).
pub fn tilt_for_v(r: &[f64], v: f64) -> Result<f64> {
    if v <= 0.0 {
        return Ok(0.0);
    }
    let total: f64 = r.iter().sum();
    if v >= total {
        return Err(Error::Degenerate(format!(
            "V = {v} is not below the largest value Σ r = {total} of the series"
        )));
    }
    let max_r = r.iter().copied().fold(0.0, f64::max);
    let mean = |t: f64| -> f64 {
        r.iter()
            .map(|&r| {
                let (i0, i1) = bessel_i0_i1(t * r);
                r * i1 / i0
            })
            .sum()
    };
    let (mut lo, mut hi) = (0.0, MAX_KAPPA / max_r);
    if mean(hi) < v {
        return Err(Error::Degenerate(format!(
            "V = {v} needs a tilt beyond concentration {MAX_KAPPA}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean(mid) < v {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Importance-sampled estimate of P(X ≥ V) for X truncated to `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TiltedTail {
    #[serde(rename = "V")]
    pub v: f64,
    pub tilt: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub n_samples: usize,
}

/// P(X ≥ V) by exponential tilting: phases are drawn from the tilted law
/// with mean V and each hit is weighted by Π I₀(t r) · e^{−tX}.
///
/// Sample i uses ChaCha8 stream i of `seed`, as in [`sample_x`].
pub fn tilted_tail(r: &[f64], v: f64, n_samples: usize, seed: u64) -> Result<TiltedTail> {
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be positive".into()));
    }
    let t = tilt_for_v(r, v)?;
    let kappas: Vec<f64> = r.iter().map(|&r| t * r).collect();
    let log_norm: f64 = kappas.iter().map(|&k| bessel_i0_i1(k).0.ln()).sum();
    let weights: Vec<f64> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let x: f64 = r
                .iter()
                .zip(&kappas)
                .map(|(&r, &k)| r * von_mises_cos(k, &mut rng))
                .sum();
            if x >= v {
                (log_norm - t * x).exp()
            } else {
                0.0
            }
        })
        .collect();
    let n = n_samples as f64;
    let mean = ordered_par_sum(n_samples, |i| weights[i]) / n;
    let second = ordered_par_sum(n_samples, |i| weights[i] * weights[i]) / n;
    let stderr = ((second - mean * mean).max(0.0) / n).sqrt();
    Ok(TiltedTail {
        v,
        tilt: t,
        estimate: mean,
        stderr,
        n_samples,
    })
}

/// Σ r², half of which is the exact variance of the truncated series.
pub fn sum_r_squared(zeros: &ZeroSet, n_zeros: usize) -> f64 {
    zeros.records()[..n_zeros.min(zeros.len())]
        .iter()
        .map(|z| z.r * z.r)
        .sum()
}

/// First `n` values of r_γ, sorted decreasing.
pub fn sorted_r(zeros: &ZeroSet, n: usize) -> Vec<f64> {
    let mut r: Vec<f64> = zeros.records()[..n.min(zeros.len())]
        .iter()
        .map(|z| z.r)
        .collect();
    r.sort_by(|a, b| b.total_cmp(a));
    r
}

/// Upper bound of Lemma 11(i) with r already sorted decreasing.
///
/// Returns `(threshold, bound)` with threshold = 2 Σ_{k≤K} r_k.
pub fn montgomery_upper(r_sorted: &[f64], k: usize) -> Result<(f64, f64)> {
    if k == 0 || k > r_sorted.len() {
        return Err(Error::Domain(format!(
            "K = {k} must lie in [1, {}]",
            r_sorted.len()
        )));
    }
    let head: f64 = r_sorted[..k].iter().sum();
    let tail: f64 = r_sorted[k..].iter().map(|r| r * r).sum();
    if tail <= 0.0 {
        return Err(Error::Degenerate(format!(
            "no mass beyond K = {k}: the upper bound needs Σ_(k>K) r_k² > 0"
        )));
    }
    Ok((2.0 * head, (-0.75 * head * head / tail).exp()))
}

/// Σ_{r>δ} (r − δ).
pub fn excess(r: &[f64], delta: f64) -> f64 {
    r.iter().filter(|&&r| r > delta).map(|r| r - delta).sum()
}

/// Lower bound of Lemma 11(ii); refuses δ that violates Σ_{r>δ}(r − δ) ≥ V.
pub fn montgomery_lower(r: &[f64], v: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("delta = {delta} must be positive")));
    }
    let mass = excess(r, delta);
    if mass < v {
        return Err(Error::DeltaTooLarge { delta, v, mass });
    }
    let log_sum: f64 = r
        .iter()
        .filter(|&&r| r > delta)
        .map(|r| (PI * PI * r / (2.0 * delta)).ln())
        .sum();
    Ok(0.5 * (-0.5 * log_sum).exp())
}

/// Relative width at which the δ search stops.
const DELTA_TOL: f64 = 1e-3;

/// Largest δ with Σ_{r>δ}(r − δ) ≥ V, by bisection on log δ.
///
/// The search runs over [min r · 10⁻⁶, max r]; V ≤ 0 returns max r.
pub fn delta_for_v(r: &[f64], v: f64) -> Result<f64> {
    let max_r = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_r = r.iter().copied().fold(f64::INFINITY, f64::min);
    if r.is_empty() || !(max_r > 0.0) {
        return Err(Error::Degenerate("no positive coefficients".into()));
    }
    if v <= 0.0 {
        return Ok(max_r);
    }
    let mut lo = min_r * 1e-6;
    let mut hi = max_r;
    if excess(r, lo) < v {
        return Err(Error::DeltaTooLarge {
            delta: lo,
            v,
            mass: excess(r, lo),
        });
    }
    while hi / lo > 1.0 + DELTA_TOL {
        let mid = (lo * hi).sqrt();
        if excess(r, mid) >= v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Smallest K whose prefix of the decreasing r reaches V/2, so that the
/// upper-bound threshold 2 Σ_{k≤K} r_k is at least V.
pub fn k_for_v(r_sorted: &[f64], v: f64) -> Result<usize> {
    let mut acc = 0.0;
    for (i, r) in r_sorted.iter().enumerate() {
        acc += r;
        if acc >= v / 2.0 {
            return Ok(i + 1);
        }
    }
    Err(Error::Degenerate(format!(
        "Σ r = {acc} never reaches V/2 = {}",
        v / 2.0
    )))
}

/// Montgomery bounds at V next to Monte Carlo estimates from the same
/// truncated model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailBoundReport {
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub delta: f64,
    /// Threshold 2 Σ_{k≤K} r_k at which `upper` applies.
    pub upper_threshold: f64,
    pub upper: f64,
    /// Applies at V itself.
    pub lower: f64,
    pub upper_valid: bool,
    pub lower_valid: bool,
    /// P(X ≥ V), importance sampled.
    pub mc_estimate: f64,
    pub mc_stderr: f64,
    /// P(X ≥ upper_threshold), importance sampled.
    pub mc_at_threshold: f64,
    pub mc_at_threshold_stderr: f64,
    pub n_zeros: usize,
    pub n_samples: usize,
    pub seed: u64,
}

impl TailBoundReport {
    /// lower ≤ mc + 3σ at V and mc − 3σ ≤ upper at the upper threshold.
    pub fn sandwiched(&self) -> bool {
        let lower_ok = !self.lower_valid || self.lower <= self.mc_estimate + 3.0 * self.mc_stderr;
        let upper_ok = !self.upper_valid
            || self.mc_at_threshold - 3.0 * self.mc_at_threshold_stderr <= self.upper;
        lower_ok && upper_ok
    }
}

/// Options for [`tail_bound_report`].
#[derive(Debug, Clone, Copy)]
pub struct TailOptions {
    pub n_zeros: usize,
    pub n_samples: usize,
    pub seed: u64,
    /// Overrides the rule of [`k_for_v`].
    pub k: Option<usize>,
}

fn tail_estimate(r: &[f64], v: f64, n_samples: usize, seed: u64) -> Result<(f64, f64)> {
    let total: f64 = r.iter().sum();
    if v >= total {
        return Ok((0.0, 0.0));
    }
    let t = tilted_tail(r, v, n_samples, seed)?;
    Ok((t.estimate, t.stderr))
}

/// Bounds for V, with K from [`k_for_v`] unless overridden and δ from
/// [`delta_for_v`]; both probabilities are estimated with [`tilted_tail`].
pub fn tail_bound_report(zeros: &ZeroSet, v: f64, opts: TailOptions) -> Result<TailBoundReport> {
    if opts.n_zeros == 0 || opts.n_zeros > zeros.len() {
        return crate::error::out_of_range("n_zeros", opts.n_zeros as f64, zeros.len() as f64);
    }
    let r = sorted_r(zeros, opts.n_zeros);
    let k = match opts.k {
        Some(k) => k,
        None => k_for_v(&r, v)?,
    };
    let (upper_threshold, upper, upper_valid) = match montgomery_upper(&r, k) {
        Ok((t, b)) => (t, b, true),
        Err(Error::Degenerate(_)) => (2.0 * r.iter().sum::<f64>(), 1.0, false),
        Err(e) => return Err(e),
    };
    let (delta, lower, lower_valid) = match delta_for_v(&r, v) {
        Ok(d) => (d, montgomery_lower(&r, v, d)?, true),
        Err(Error::DeltaTooLarge { .. }) => (0.0, 0.0, false),
        Err(e) => return Err(e),
    };
    let (mc_estimate, mc_stderr) = tail_estimate(&r, v, opts.n_samples, opts.seed)?;
    let (mc_at_threshold, mc_at_threshold_stderr) =
        tail_estimate(&r, upper_threshold, opts.n_samples, opts.seed)?;
    Ok(TailBoundReport {
        v,
        k,
        delta,
        upper_threshold,
        upper,
        lower,
        upper_valid,
        lower_valid,
        mc_estimate,
        mc_stderr,
        mc_at_threshold,
        mc_at_threshold_stderr,
        n_zeros: opts.n_zeros,
        n_samples: opts.n_samples,
        seed: opts.seed,
    })
}

/// Least-squares slope of log log log(1/p) against log V: the exponent a
/// in p = exp(−exp(c V^a)).
///
/// Every p must lie in (0, 1/e) so that log log(1/p) is positive.
pub fn tail_exponent_fit(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 4 {
        return Err(Error::Degenerate(format!(
            "need at least 4 tail points, got {}",
            points.len()
        )));
    }
    let mut vs: Vec<f64> = points.iter().map(|p| p.0).collect();
    vs.sort_by(f64::total_cmp);
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Degenerate("repeated V in tail data".into()));
    }
    let pts = points
        .iter()
        .map(|&(v, p)| {
            if !(v > 0.0) || !(p > 0.0 && p < (-1.0f64).exp()) {
                return Err(Error::Degenerate(format!(
                    "tail point (V = {v}, p = {p}) needs V > 0 and p in (0, 1/e)"
                )));
            }
            Ok((v.ln(), (1.0 / p).ln().ln().ln()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(least_squares(&pts)?.0)
}

/// Importance-sampled tail points on an equally spaced V-grid; point i uses
/// seed `seed + i`.
pub fn tail_curve(
    r: &[f64],
    v_min: f64,
    v_max: f64,
    count: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<TiltedTail>> {
    (0..count)
        .map(|i| {
            let f = if count > 1 { i as f64 / (count - 1) as f64 } else { 0.0 };
            tilted_tail(r, v_min + (v_max - v_min) * f, n_samples, seed.wrapping_add(i as u64))
        })
        .collect()
}
