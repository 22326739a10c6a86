//! The limiting distribution ν of φ(y) = e^{−y/2} M(e^y).
//!
//! Under linear independence of the ordinates, ν̂(ξ) = Π_{γ>0} J₀(r_γ ξ) with
//! r_γ = 2/|ρζ′(ρ)|. This module builds the truncated product on a ξ-grid,
//! inverts it by a cosine transform and exposes tail masses, the variance β
//! and the logarithmic density of {|M(x)| ≤ √x}.

use std::f64::consts::{FRAC_PI_4, PI};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::fmt17;
use crate::numeric::{ordered_par_sum, trapezoid};
use crate::sieve::MertensSeries;
use crate::zeta::{b_tail_beyond_table, ZeroSet};

/// |ν̂| must fall below this at the end of the ξ-grid.
pub const DECAY_THRESHOLD: f64 = 1e-8;

/// ξ-grid oversampling relative to the Nyquist step π/x_max.
pub const OVERSAMPLE: f64 = 4.0;

const SERIES_LIMIT: f64 = 12.0;

/// Bessel J₀ for real argument.
///
/// Power series for |z| ≤ 12, Hankel's asymptotic expansion (truncated at its
/// smallest term) beyond.
pub fn bessel_j0(z: f64) -> f64 {
    let z = z.abs();
    if z <= SERIES_LIMIT {
        let q = -0.25 * z * z;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut m = 0.0;
        loop {
            m += 1.0;
            term *= q / (m * m);
            sum += term;
            if term.abs() < 1e-17 && m > z {
                break;
            }
        }
        sum
    } else {
        let mut p = 0.0;
        let mut q = 0.0;
        let mut a = 1.0; // |a_k(0)|
        let mut zk = 1.0; // z^{-k}
        let mut prev = f64::INFINITY;
        for k in 0..80usize {
            let term = a * zk;
            if term > prev {
                break;
            }
            prev = term;
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p += sign * term;
            } else {
                q -= sign * term;
            }
            let next = (2 * k + 1) as f64;
            a *= next * next / (8.0 * (k + 1) as f64);
            zk /= z;
        }
        let chi = z - FRAC_PI_4;
        (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
    }
}

/// ν̂(ξ) truncated to the first `n` zeros; `n = 0` is the empty product 1.
pub fn nu_hat(xi: f64, zeros: &ZeroSet, n: usize) -> Result<f64> {
    if n > zeros.len() {
        return out_of_range("n", n as f64, zeros.len() as f64);
    }
    Ok(product_over(xi, &radii(zeros, n)))
}

fn radii(zeros: &ZeroSet, n: usize) -> Vec<f64> {
    zeros.records()[..n].iter().map(|r| r.r).collect()
}

fn product_over(xi: f64, r: &[f64]) -> f64 {
    let mut prod = 1.0;
    for &ri in r {
        prod *= bessel_j0(ri * xi);
        if prod == 0.0 {
            break;
        }
    }
    prod
}

/// ν̂ sampled on ξ = 0, Δ, 2Δ, … until it decays below [`DECAY_THRESHOLD`].
#[derive(Debug, Clone, Serialize)]
pub struct CharacteristicCurve {
    pub xi_step: f64,
    #[serde(skip)]
    pub values: Vec<f64>,
    pub n_zeros: usize,
    /// Bound on |1 − Π over omitted factors| at ξ_max: ξ_max² · Σ_{omitted} r²/4.
    pub omission_bound: f64,
}

impl CharacteristicCurve {
    pub fn xi_max(&self) -> f64 {
        self.xi_step * (self.values.len() - 1) as f64
    }

    pub fn xi(&self, i: usize) -> f64 {
        self.xi_step * i as f64
    }

    /// CSV `xi,nu_hat`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "xi,nu_hat")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{},{}", fmt17(self.xi(i)), fmt17(*v))?;
        }
        Ok(())
    }
}

/// Cap on ξ-grid length before giving up on decay.
const MAX_XI_POINTS: usize = 1 << 20;

/// Sample ν̂ from the first `n` zeros with step π/(4·x_max).
///
/// The grid stops at the first point where |ν̂| < [`DECAY_THRESHOLD`].
pub fn characteristic_curve(zeros: &ZeroSet, n: usize, x_max: f64) -> Result<CharacteristicCurve> {
    if n > zeros.len() {
        return out_of_range("n", n as f64, zeros.len() as f64);
    }
    if !(x_max > 0.0) {
        return Err(Error::Domain(format!("x_max = {x_max} must be positive")));
    }
    let r = radii(zeros, n);
    let step = PI / (OVERSAMPLE * x_max);
    let mut values = Vec::new();
    // Evaluate in parallel blocks until the decay point is reached.
    let block = 256;
    'outer: while values.len() < MAX_XI_POINTS {
        let start = values.len();
        let chunk: Vec<f64> = (start..start + block)
            .into_par_iter()
            .map(|i| product_over(step * i as f64, &r))
            .collect();
        for v in chunk {
            values.push(v);
            if v.abs() < DECAY_THRESHOLD {
                break 'outer;
            }
        }
    }
    let last = *values.last().unwrap();
    if last.abs() >= DECAY_THRESHOLD {
        return Err(Error::InsufficientDecay {
            threshold: DECAY_THRESHOLD,
            value: last.abs(),
            xi: step * (values.len() - 1) as f64,
        });
    }
    let omitted: f64 = zeros.records()[n..].iter().map(|z| z.r * z.r).sum::<f64>()
        + b_tail_beyond_table(zeros);
    let xi_max = step * (values.len() - 1) as f64;
    Ok(CharacteristicCurve {
        xi_step: step,
        values,
        n_zeros: n,
        omission_bound: xi_max * xi_max * omitted / 4.0,
    })
}

/// Density of ν on an equally spaced symmetric grid.
#[derive(Debug, Clone, Serialize)]
pub struct DensityCurve {
    #[serde(skip)]
    pub x_grid: Vec<f64>,
    #[serde(skip)]
    pub density: Vec<f64>,
    pub total_mass: f64,
    /// Mass of the negative lobes removed by clipping.
    pub clipped_mass: f64,
}

impl DensityCurve {
    pub fn x_step(&self) -> f64 {
        self.x_grid[1] - self.x_grid[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x_grid.last().unwrap()
    }

    /// ∫ x^k density(x) dx.
    pub fn moment(&self, k: i32) -> f64 {
        let vals: Vec<f64> = self
            .x_grid
            .iter()
            .zip(&self.density)
            .map(|(x, d)| x.powi(k) * d)
            .collect();
        trapezoid(&vals, self.x_step())
    }

    /// Cumulative trapezoidal integral at each grid point (starts at 0).
    pub fn cumulative(&self) -> Vec<f64> {
        let h = self.x_step();
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.density.len());
        out.push(0.0);
        for w in self.density.windows(2) {
            acc += 0.5 * h * (w[0] + w[1]);
            out.push(acc);
        }
        out
    }

    /// ∫_{−x_max}^{v} density, linear-in-density interpolation inside a cell.
    pub fn cdf_at(&self, v: f64, cumulative: &[f64]) -> f64 {
        let x0 = self.x_grid[0];
        let h = self.x_step();
        if v <= x0 {
            return 0.0;
        }
        if v >= self.x_max() {
            return *cumulative.last().unwrap();
        }
        let i = (((v - x0) / h).floor() as usize).min(self.x_grid.len() - 2);
        let t = v - self.x_grid[i];
        let d0 = self.density[i];
        let d1 = self.density[i + 1];
        cumulative[i] + t * d0 + 0.5 * t * t * (d1 - d0) / h
    }

    /// CSV `x,density`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,density")?;
        for (x, d) in self.x_grid.iter().zip(&self.density) {
            writeln!(w, "{},{}", fmt17(*x), fmt17(*d))?;
        }
        Ok(())
    }
}

/// density(x) = (1/π) ∫₀^{ξmax} cos(xξ) ν̂(ξ) dξ on `x_count` points over
/// [−x_max, x_max], negative lobes clipped to zero.
pub fn invert_density(curve: &CharacteristicCurve, x_max: f64, x_count: usize) -> Result<DensityCurve> {
    let last = curve.values.last().copied().unwrap_or(1.0);
    if last.abs() >= DECAY_THRESHOLD {
        return Err(Error::InsufficientDecay {
            threshold: DECAY_THRESHOLD,
            value: last.abs(),
            xi: curve.xi_max(),
        });
    }
    let product = curve.xi_step * x_max;
    if !(product < PI) {
        return Err(Error::GridTooCoarse { product });
    }
    if x_count < 3 || !(x_max > 0.0) {
        return Err(Error::Domain(format!(
            "density grid needs x_max > 0 and >= 3 points (got {x_max}, {x_count})"
        )));
    }
    let h = 2.0 * x_max / (x_count - 1) as f64;
    let x_grid: Vec<f64> = (0..x_count).map(|i| -x_max + h * i as f64).collect();
    let raw: Vec<f64> = x_grid
        .par_iter()
        .map(|&x| {
            let vals: Vec<f64> = curve
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| (x * curve.xi(i)).cos() * v)
                .collect();
            trapezoid(&vals, curve.xi_step) / PI
        })
        .collect();
    let negative: Vec<f64> = raw.iter().map(|d| (-d).max(0.0)).collect();
    let clipped_mass = trapezoid(&negative, h);
    let density: Vec<f64> = raw.iter().map(|d| d.max(0.0)).collect();
    let total_mass = trapezoid(&density, h);
    Ok(DensityCurve {
        x_grid,
        density,
        total_mass,
        clipped_mass,
    })
}

/// Cosine transform of a density back to ξ-space: ∫ cos(xξ) density(x) dx.
pub fn forward_transform(density: &DensityCurve, xi: f64) -> f64 {
    let vals: Vec<f64> = density
        .x_grid
        .iter()
        .zip(&density.density)
        .map(|(x, d)| (x * xi).cos() * d)
        .collect();
    trapezoid(&vals, density.x_step())
}

/// Σ r_γ²/2 over the first `n` zeros.
pub fn beta_truncated(zeros: &ZeroSet, n: usize) -> f64 {
    zeros.records()[..n.min(zeros.len())]
        .iter()
        .map(|r| 0.5 * r.r * r.r)
        .sum()
}

/// β = Σ_{γ>0} 2/|ρζ′(ρ)|²: the table sum plus half the modeled b(t_max) tail.
pub fn beta(zeros: &ZeroSet) -> f64 {
    beta_truncated(zeros, zeros.len()) + 0.5 * b_tail_beyond_table(zeros)
}

/// ν([V, ∞)) from the inverted density.
pub fn tail_mass(v: f64, density: &DensityCurve) -> Result<f64> {
    let x_max = density.x_max();
    if !(v >= -x_max && v <= x_max) {
        return out_of_range("V", v, x_max);
    }
    let cum = density.cumulative();
    Ok(cum.last().unwrap() - density.cdf_at(v, &cum))
}

/// Normalized logarithmic measure of {x : |M(x)| ≤ √x} ∩ [1, x_max].
///
/// M is constant on [n, n+1), so each plateau contributes log((n+1)/n).
pub fn log_density_s(series: &MertensSeries) -> Result<f64> {
    let values = series.unit_values()?;
    let x_max = series.x_max();
    if x_max < 2 {
        return Err(Error::Degenerate("log density needs x_max >= 2".into()));
    }
    // Σ_{n<x_max} log((n+1)/n) = log x_max, so only the excluded plateaus
    // are summed; the result is then exactly 1 when none are excluded.
    let outside = ordered_par_sum(values.len() - 1, |i| {
        let n = i as u64 + 1;
        let m = values[i];
        if m.unsigned_abs() * m.unsigned_abs() > n {
            (1.0 / n as f64).ln_1p()
        } else {
            0.0
        }
    });
    Ok((1.0 - outside / (x_max as f64).ln()).clamp(0.0, 1.0))
}

/// Summary of a distribution build, serialized as JSON.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionSummary {
    pub n_zeros: usize,
    pub xi_max: f64,
    pub total_mass: f64,
    pub beta: f64,
    pub clipped_mass: f64,
}
