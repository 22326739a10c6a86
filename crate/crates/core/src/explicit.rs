//! Reconstruction of M(x) from a truncated sum over zeta zeros.
//!
//! Each zero γ > 0 is paired with its conjugate, so the zero sum is
//! √x · Σ_{0<γ≤T} 2 Re(x^{iγ} / (ρ ζ′(ρ))). The non-oscillating part of the
//! explicit formula (the pole at s = 0 and the trivial zeros) is available
//! separately as [`smooth_part`]; residuals are taken against the sum of both.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::fmt17;
use crate::numeric::gauss_legendre;
use crate::sieve::{floor_exp, MertensSeries};
use crate::zeta::{ZeroRecord, ZeroSet};

/// Default ε in [`error_envelope`].
pub const DEFAULT_EPS: f64 = 0.05;

fn oscillating_sum(log_x: f64, zeros: &[ZeroRecord]) -> f64 {
    zeros
        .iter()
        .map(|r| {
            let (s, c) = (r.gamma * log_x).sin_cos();
            2.0 * (Complex64::new(c, s) * r.coeff).re
        })
        .sum()
}

/// √x · Σ_{0<γ≤T} 2 Re(x^{iγ} b_γ).
pub fn zero_sum_m(x: f64, t: f64, zeros: &ZeroSet) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("zero sum needs x >= 2, got {x}")));
    }
    if t > zeros.t_max() {
        return out_of_range("T", t, zeros.t_max());
    }
    Ok(x.sqrt() * oscillating_sum(x.ln(), zeros.up_to(t)))
}

fn zeta_odd(s: u32) -> f64 {
    // s ≥ 3: direct sum with an Euler–Maclaurin tail.
    let k = 64.0f64;
    let s = s as f64;
    let head: f64 = (1..64).map(|n| (n as f64).powf(-s)).sum();
    head + k.powf(1.0 - s) / (s - 1.0) + 0.5 * k.powf(-s) + s / 12.0 * k.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * k.powf(-s - 3.0)
}

/// The non-oscillating terms of the explicit formula for M(x):
/// −2 + Σ_{n≥1} (−1)^{n−1} (2π/x)^{2n} / (n (2n)! ζ(2n+1)).
pub fn smooth_part(x: f64) -> f64 {
    let u = (TAU / x).powi(2);
    let mut sum = -2.0;
    // (2π/x)^{2n} / (2n)!
    let mut pow_over_fact = 1.0;
    for n in 1..200u32 {
        let m = 2.0 * n as f64;
        pow_over_fact *= u / (m * (m - 1.0));
        let term = pow_over_fact / (n as f64 * zeta_odd(2 * n + 1));
        sum += if n % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    sum
}

/// Zero sum plus [`smooth_part`]: the full truncated explicit formula.
pub fn reconstruct_m(x: f64, t: f64, zeros: &ZeroSet) -> Result<f64> {
    Ok(zero_sum_m(x, t, zeros)? + smooth_part(x))
}

/// x log x / T + x / (T^{1−ε} log x) + (x log T / T)^{1/2} + 1, implied constant 1.
pub fn error_envelope(x: f64, t: f64, eps: f64) -> Result<f64> {
    if !(x >= 2.0 && t >= 2.0) {
        return Err(Error::Domain(format!("envelope needs x, T >= 2 (x = {x}, T = {t})")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps = {eps} must lie in (0, 1)")));
    }
    let lx = x.ln();
    let lt = t.ln();
    Ok(x * lx / t + x / (t.powf(1.0 - eps) * lx) + (x * lt / t).sqrt() + 1.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    #[serde(rename = "T")]
    pub t_cutoff: f64,
    #[serde(skip)]
    pub x_grid: Vec<f64>,
    #[serde(skip)]
    pub m_values: Vec<i64>,
    #[serde(skip)]
    pub zero_sums: Vec<f64>,
    #[serde(skip)]
    pub residuals: Vec<f64>,
    pub max_abs: f64,
    pub rms: f64,
}

impl ResidualReport {
    /// CSV with columns `x,M,zero_sum,residual`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,M,zero_sum,residual")?;
        for i in 0..self.x_grid.len() {
            writeln!(
                w,
                "{},{},{},{}",
                fmt17(self.x_grid[i]),
                self.m_values[i],
                fmt17(self.zero_sums[i]),
                fmt17(self.residuals[i])
            )?;
        }
        Ok(())
    }

    /// JSON summary `{T, max_abs, rms}`.
    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Log-spaced grid on [x_min, x_max], each point moved to ⌊x⌋ + ½.
///
/// Nearby points may coincide after the shift at small x.
pub fn half_integer_grid(count: usize, x_min: f64, x_max: f64) -> Result<Vec<f64>> {
    if count == 0 || !(x_min >= 2.0) || !(x_min <= x_max) {
        return Err(Error::Domain(format!(
            "bad grid: {count} points on [{x_min}, {x_max}]"
        )));
    }
    let (a, b) = (x_min.ln(), x_max.ln());
    Ok((0..count)
        .map(|i| {
            let f = if count > 1 { i as f64 / (count - 1) as f64 } else { 0.0 };
            floor_exp(a + (b - a) * f) as f64 + 0.5
        })
        .collect())
}

/// Residuals M(⌊x⌋) − (zero sum + smooth part) on a half-integer log grid.
pub fn residual_scan(
    x_count: usize,
    x_min: f64,
    x_max: f64,
    t: f64,
    series: &MertensSeries,
    zeros: &ZeroSet,
) -> Result<ResidualReport> {
    let grid = half_integer_grid(x_count, x_min, x_max)?;
    if grid.last().unwrap().floor() as u64 > series.x_max() {
        return out_of_range("x_max", x_max, series.x_max() as f64);
    }
    let rows = grid
        .par_iter()
        .map(|&x| {
            let m = series.value_at(x.floor() as u64)?;
            let zs = zero_sum_m(x, t, zeros)?;
            Ok((m, zs, m as f64 - zs - smooth_part(x)))
        })
        .collect::<Result<Vec<_>>>()?;
    let residuals: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let max_abs = residuals.iter().fold(0.0f64, |a, r| a.max(r.abs()));
    let rms = (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt();
    Ok(ResidualReport {
        t_cutoff: t,
        x_grid: grid,
        m_values: rows.iter().map(|r| r.0).collect(),
        zero_sums: rows.iter().map(|r| r.1).collect(),
        residuals,
        max_abs,
        rms,
    })
}

/// GL nodes per panel in [`truncation_fluctuation`].
const PANEL_NODES: usize = 10;

/// ∫_Z^{eZ} |Σ_{T<|γ|≤X} x^{iγ}/(ρζ′(ρ))|² dx/x, by Gauss–Legendre panels on
/// y = log x, each panel one period of the fastest oscillation of the integrand.
pub fn truncation_fluctuation(z: f64, t: f64, x: f64, zeros: &ZeroSet) -> Result<f64> {
    if !(z >= 2.0) {
        return Err(Error::Domain(format!("Z = {z} must be >= 2")));
    }
    if !(t >= 14.0 && t <= x) {
        return Err(Error::Domain(format!("need 14 <= T <= X (T = {t}, X = {x})")));
    }
    if x > zeros.t_max() {
        return out_of_range("X", x, zeros.t_max());
    }
    let records = zeros.records();
    let lo = records.partition_point(|r| r.gamma <= t);
    let hi = records.partition_point(|r| r.gamma <= x);
    let band = &records[lo..hi];
    let Some(top) = band.last() else {
        return Ok(0.0);
    };
    let y0 = z.ln();
    let n_panels = (top.gamma / std::f64::consts::PI).ceil().max(1.0) as usize;
    let width = 1.0 / n_panels as f64;
    let (nodes, weights) = gauss_legendre(PANEL_NODES);
    let total: f64 = (0..n_panels)
        .into_par_iter()
        .map(|p| {
            let mid = y0 + (p as f64 + 0.5) * width;
            nodes
                .iter()
                .zip(&weights)
                .map(|(&u, &w)| {
                    let s = oscillating_sum(mid + 0.5 * width * u, band);
                    w * s * s
                })
                .sum::<f64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(0.5 * width * total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_direct_value() {
        let e2 = std::f64::consts::E.powi(2);
        let eps = 0.05f64;
        let expected = 2.0 + (2.0 * eps).exp() / 2.0 + 2f64.sqrt() + 1.0;
        assert!((error_envelope(e2, e2, eps).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn envelope_decreases_in_t() {
        let mut prev = f64::INFINITY;
        for t in [20.0, 50.0, 100.0, 1000.0, 1e5] {
            let v = error_envelope(1e4, t, DEFAULT_EPS).unwrap();
            assert!(v < prev && v >= 1.0);
            prev = v;
        }
        assert!(error_envelope(1.0, 10.0, 0.05).is_err());
        assert!(error_envelope(10.0, 10.0, 1.0).is_err());
    }

    #[test]
    fn smooth_part_limits() {
        assert!((smooth_part(1e9) + 2.0).abs() < 1e-12);
        // first correction term dominates at moderate x
        let x = 100.0;
        let first = (TAU / x).powi(2) / (2.0 * zeta_odd(3));
        assert!((smooth_part(x) + 2.0 - first).abs() < 1e-5);
        assert!((zeta_odd(3) - 1.2020569031595942).abs() < 1e-12);
    }

    #[test]
    fn grid_is_half_integer() {
        let g = half_integer_grid(200, 10.0, 1e4).unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 10.5);
        assert_eq!(*g.last().unwrap(), 10000.5);
        assert!(g.iter().all(|x| x.fract() == 0.5));
    }
}
