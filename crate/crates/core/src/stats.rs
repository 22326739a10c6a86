//! Integral statistics of M(x) evaluated exactly on its integer plateaus.
//!
//! M is constant on every [n, n+1), so each integral below is a finite sum of
//! closed-form plateau contributions; there is no quadrature error.

use std::io::Write;

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::fmt17;
use crate::limiting::DensityCurve;
use crate::numeric::ordered_par_sum;
use crate::sieve::{floor_exp, MertensSeries};

/// One integral statement evaluated at an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralReport {
    /// X for the x-integrals, Y for the y-integrals.
    pub endpoint: f64,
    pub value: f64,
    pub normalizer: f64,
    pub ratio: f64,
}

impl IntegralReport {
    fn new(endpoint: f64, value: f64, normalizer: f64) -> Self {
        IntegralReport {
            endpoint,
            value,
            normalizer,
            ratio: value / normalizer,
        }
    }
}

/// CSV `X,value,ratio`.
pub fn write_integral_csv<W: Write>(reports: &[IntegralReport], mut w: W) -> Result<()> {
    writeln!(w, "X,value,ratio")?;
    for r in reports {
        writeln!(w, "{},{},{}", fmt17(r.endpoint), fmt17(r.value), fmt17(r.ratio))?;
    }
    Ok(())
}

fn check_endpoint(values: &[i64], x: f64) -> Result<()> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("endpoint X = {x} must be >= 2")));
    }
    if x.floor() as usize > values.len() {
        return out_of_range("X", x, values.len() as f64);
    }
    Ok(())
}

/// ∫_a^b f(M(x), x) dx for 2 ≤ a ≤ b, where `plateau(m, lo, hi)` integrates
/// over [lo, hi) ⊂ [n, n+1).
fn plateau_integral<F>(values: &[i64], a: f64, b: f64, plateau: F) -> f64
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    let first = a.floor() as usize;
    let last = b.floor() as usize;
    if first == last {
        return plateau(values[first - 1] as f64, a, b);
    }
    let head = plateau(values[first - 1] as f64, a, (first + 1) as f64);
    let middle = ordered_par_sum(last - first - 1, |i| {
        let n = first + 1 + i;
        plateau(values[n - 1] as f64, n as f64, (n + 1) as f64)
    });
    let tail = if b > last as f64 {
        plateau(values[last - 1] as f64, last as f64, b)
    } else {
        0.0
    };
    head + middle + tail
}

/// ∫_a^b (M(x)/x)² dx, exact.
pub fn weak_mertens_integral(series: &MertensSeries, a: f64, b: f64) -> Result<f64> {
    let values = series.unit_values()?;
    check_endpoint(values, b)?;
    if !(a >= 2.0 && a <= b) {
        return Err(Error::Domain(format!("bad interval [{a}, {b}]")));
    }
    Ok(plateau_integral(values, a, b, |m, lo, hi| {
        m * m * (1.0 / lo - 1.0 / hi)
    }))
}

/// ∫_2^X (M(x)/x)² dx against log X.
pub fn weak_mertens_ratio(series: &MertensSeries, x: f64) -> Result<IntegralReport> {
    let value = weak_mertens_integral(series, 2.0, x)?;
    Ok(IntegralReport::new(x, value, x.ln()))
}

/// ∫_a^b M(x)²/x dx, exact.
pub fn cramer_integral(series: &MertensSeries, a: f64, b: f64) -> Result<f64> {
    let values = series.unit_values()?;
    check_endpoint(values, b)?;
    if !(a >= 2.0 && a <= b) {
        return Err(Error::Domain(format!("bad interval [{a}, {b}]")));
    }
    Ok(plateau_integral(values, a, b, |m, lo, hi| {
        m * m * (hi / lo).ln()
    }))
}

/// ∫_2^X M(x)²/x dx against X.
pub fn cramer_ratio(series: &MertensSeries, x: f64) -> Result<IntegralReport> {
    let value = cramer_integral(series, 2.0, x)?;
    Ok(IntegralReport::new(x, value, x))
}

fn check_y(series: &MertensSeries, y: f64) -> Result<&[i64]> {
    let values = series.unit_values()?;
    if !(y > std::f64::consts::LN_2) {
        return Err(Error::Domain(format!("Y = {y} must exceed log 2")));
    }
    if floor_exp(y) > series.x_max() {
        return out_of_range("Y", y, (series.x_max() as f64).ln());
    }
    Ok(values)
}

/// (1/Y) ∫_{log 2}^{Y} φ(y) dy with φ(y) = e^{−y/2} M(e^y).
pub fn mean_ratio(series: &MertensSeries, y: f64) -> Result<f64> {
    let values = check_y(series, y)?;
    let x_end = y.exp().min(series.x_max() as f64 + 1.0);
    // ∫ e^{−y/2} dy over [log lo, log hi) = 2(lo^{−1/2} − hi^{−1/2})
    let integral = plateau_integral(values, 2.0, x_end, |m, lo, hi| {
        2.0 * m * (lo.powf(-0.5) - hi.powf(-0.5))
    });
    Ok(integral / y)
}

/// Length-weighted (in y) distribution of φ over [log 2, Y], binned exactly.
#[derive(Debug, Clone)]
pub struct PhiDistribution {
    pub edges: Vec<f64>,
    /// y-measure falling in each bin [edges[i], edges[i+1]).
    pub weights: Vec<f64>,
    /// ∫ φ dy restricted to each bin.
    pub moments: Vec<f64>,
    /// y-measure below the first edge and at or above the last.
    pub underflow: f64,
    pub overflow: f64,
    pub total_weight: f64,
}

impl PhiDistribution {
    /// Empirical CDF at every edge.
    pub fn cdf_at_edges(&self) -> Vec<f64> {
        let mut acc = self.underflow;
        let mut out = Vec::with_capacity(self.edges.len());
        out.push(acc / self.total_weight);
        for w in &self.weights {
            acc += w;
            out.push(acc / self.total_weight);
        }
        out
    }

    /// ∫ φ dy over [log 2, Y], summed bin by bin.
    pub fn first_moment(&self) -> f64 {
        self.moments.iter().sum()
    }

    /// Kolmogorov–Smirnov distance to a density, evaluated at the bin edges.
    pub fn ks_distance(&self, density: &DensityCurve) -> f64 {
        let cum = density.cumulative();
        let mass = *cum.last().unwrap();
        self.edges
            .iter()
            .zip(self.cdf_at_edges())
            .map(|(&e, f)| (f - density.cdf_at(e, &cum) / mass).abs())
            .fold(0.0, f64::max)
    }

    /// CSV `phi,cdf` at the bin edges.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "phi,cdf")?;
        for (e, f) in self.edges.iter().zip(self.cdf_at_edges()) {
            writeln!(w, "{},{}", fmt17(*e), fmt17(f))?;
        }
        Ok(())
    }
}

/// sup |φ| over [log 2, Y].
pub fn phi_sup(series: &MertensSeries, y: f64) -> Result<f64> {
    let values = check_y(series, y)?;
    let n_end = floor_exp(y).min(series.x_max()) as usize;
    Ok((2..=n_end)
        .map(|n| values[n - 1].unsigned_abs() as f64 / (n as f64).sqrt())
        .fold(0.0, f64::max))
}

/// Histogram of φ over `bins` equal bins spanning ±(sup|φ| padded by 1%).
pub fn empirical_phi_distribution(series: &MertensSeries, y: f64, bins: usize) -> Result<PhiDistribution> {
    let half = 1.01 * phi_sup(series, y)?.max(1e-3);
    empirical_phi_distribution_on(series, y, bins, -half, half)
}

/// As [`empirical_phi_distribution`] over an explicit range [lo, hi].
pub fn empirical_phi_distribution_on(
    series: &MertensSeries,
    y: f64,
    bins: usize,
    lo: f64,
    hi: f64,
) -> Result<PhiDistribution> {
    if bins < 2 {
        return Err(Error::Domain(format!("need at least 2 bins, got {bins}")));
    }
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty phi range [{lo}, {hi}]")));
    }
    let values = check_y(series, y)?;
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
    let mut hist = Hist {
        lo,
        width,
        weights: vec![0.0; bins],
        moments: vec![0.0; bins],
        underflow: 0.0,
        overflow: 0.0,
    };
    let n_end = floor_exp(y).min(series.x_max()) as usize;
    let mut total = 0.0;
    for n in 2..=n_end {
        let y_lo = (n as f64).ln();
        let y_hi = if n == n_end { y.max(y_lo) } else { ((n + 1) as f64).ln() };
        if y_hi <= y_lo {
            continue;
        }
        total += y_hi - y_lo;
        hist.add_plateau(values[n - 1] as f64, y_lo, y_hi);
    }
    Ok(PhiDistribution {
        edges,
        weights: hist.weights,
        moments: hist.moments,
        underflow: hist.underflow,
        overflow: hist.overflow,
        total_weight: total,
    })
}

struct Hist {
    lo: f64,
    width: f64,
    weights: Vec<f64>,
    moments: Vec<f64>,
    underflow: f64,
    overflow: f64,
}

impl Hist {
    fn hi(&self) -> f64 {
        self.lo + self.width * self.weights.len() as f64
    }

    /// φ(y) = m e^{−y/2} on [y_lo, y_hi).
    fn add_plateau(&mut self, m: f64, y_lo: f64, y_hi: f64) {
        let dy = y_hi - y_lo;
        if m == 0.0 {
            let k = ((0.0 - self.lo) / self.width).floor();
            if k < 0.0 {
                self.underflow += dy;
            } else if k as usize >= self.weights.len() {
                self.overflow += dy;
            } else {
                self.weights[k as usize] += dy;
            }
            return;
        }
        // φ is monotone in y, with y = 2 log(m/φ), so a φ-interval [u, v]
        // carries y-measure 2|log(v/u)| and ∫φ dy = 2 sgn(m) (v − u).
        let a = m * (-0.5 * y_lo).exp();
        let b = m * (-0.5 * y_hi).exp();
        let (p, q) = if a < b { (a, b) } else { (b, a) };
        let measure = |u: f64, v: f64| 2.0 * (v / u).abs().ln().abs();
        let (lo, hi) = (self.lo, self.hi());
        if p < lo {
            self.underflow += measure(p, q.min(lo));
        }
        if q > hi {
            self.overflow += measure(p.max(hi), q);
        }
        let (u0, v0) = (p.max(lo), q.min(hi));
        if u0 >= v0 {
            return;
        }
        let k_lo = ((u0 - lo) / self.width).floor() as usize;
        let k_hi = (((v0 - lo) / self.width).ceil() as usize).min(self.weights.len());
        for k in k_lo..k_hi {
            let e0 = lo + self.width * k as f64;
            let u = u0.max(e0);
            let v = v0.min(e0 + self.width);
            if u < v {
                self.weights[k] += measure(u, v);
                self.moments[k] += 2.0 * (v - u) * m.signum();
            }
        }
    }
}

/// A new running maximum or minimum of M(x)/√x (or of the triple-log normalization).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthRecord {
    pub x: u64,
    #[serde(rename = "M")]
    pub m: i64,
    pub over_sqrt: f64,
    /// M(x)/(√x (log log log x)^{5/4}), only for x ≥ e^{e^e}.
    pub over_sqrt_lll: Option<f64>,
}

/// e^{e^e}: smallest x with log log log x ≥ 1.
pub const TRIPLE_LOG_START: f64 = 3_814_279.104_760_214;

/// Running record maxima and minima of both normalizations, scanning x ≥ 2.
pub fn growth_records(series: &MertensSeries) -> Result<Vec<GrowthRecord>> {
    let values = series.unit_values()?;
    let mut out = Vec::new();
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    let (mut hi3, mut lo3) = (f64::NEG_INFINITY, f64::INFINITY);
    for (i, &m) in values.iter().enumerate().skip(1) {
        let x = i as u64 + 1;
        let xf = x as f64;
        let v = m as f64 / xf.sqrt();
        let v3 = (xf >= TRIPLE_LOG_START).then(|| v / xf.ln().ln().ln().powf(1.25));
        let mut record = false;
        if v > hi {
            hi = v;
            record = true;
        }
        if v < lo {
            lo = v;
            record = true;
        }
        if let Some(t) = v3 {
            if t > hi3 {
                hi3 = t;
                record = true;
            }
            if t < lo3 {
                lo3 = t;
                record = true;
            }
        }
        if record {
            out.push(GrowthRecord {
                x,
                m,
                over_sqrt: v,
                over_sqrt_lll: v3,
            });
        }
    }
    Ok(out)
}

/// CSV `x,M,M_over_sqrt_x,M_over_sqrt_x_lll` (last column empty below e^{e^e}).
pub fn write_records_csv<W: Write>(records: &[GrowthRecord], mut w: W) -> Result<()> {
    writeln!(w, "x,M,M_over_sqrt_x,M_over_sqrt_x_lll")?;
    for r in records {
        let lll = r.over_sqrt_lll.map(fmt17).unwrap_or_default();
        writeln!(w, "{},{},{},{}", r.x, r.m, fmt17(r.over_sqrt), lll)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::{mertens_series, SeriesKind};

    fn series(n: u64) -> MertensSeries {
        mertens_series(n, 1, SeriesKind::Moebius).unwrap()
    }

    #[test]
    fn first_plateau_is_zero() {
        let s = series(100);
        assert_eq!(weak_mertens_ratio(&s, 3.0).unwrap().value, 0.0);
        assert_eq!(cramer_ratio(&s, 3.0).unwrap().value, 0.0);
        assert!(weak_mertens_ratio(&s, 1.5).is_err());
        assert!(weak_mertens_ratio(&s, 101.0).is_err());
    }

    #[test]
    fn mean_ratio_near_log2_is_zero() {
        let s = series(100);
        assert_eq!(mean_ratio(&s, 2f64.ln() + 1e-3).unwrap(), 0.0);
        assert!(mean_ratio(&s, 0.5).is_err());
    }

    #[test]
    fn coarse_series_rejected() {
        let s = mertens_series(100, 10, SeriesKind::Moebius).unwrap();
        assert!(matches!(
            weak_mertens_ratio(&s, 50.0),
            Err(Error::SeriesTooCoarse { stride: 10 })
        ));
    }

    #[test]
    fn histogram_bookkeeping() {
        let s = series(20_000);
        let y = 20_000f64.ln();
        let d = empirical_phi_distribution(&s, y, 64).unwrap();
        let w: f64 = d.weights.iter().sum::<f64>() + d.underflow + d.overflow;
        assert!((w - (y - 2f64.ln())).abs() < 1e-12);
        assert!((d.total_weight - (y - 2f64.ln())).abs() < 1e-12);
        assert_eq!(d.underflow + d.overflow, 0.0);
        let mean = mean_ratio(&s, y).unwrap() * y;
        assert!((d.first_moment() - mean).abs() < 1e-9);
        assert!(empirical_phi_distribution(&s, y, 1).is_err());
    }

    #[test]
    fn records_are_monotone() {
        let s = series(100_000);
        let recs = growth_records(&s).unwrap();
        let maxima: Vec<f64> = recs.iter().map(|r| r.over_sqrt).filter(|v| *v > 0.0).collect();
        assert!(recs[0].x == 2);
        let mut best = f64::NEG_INFINITY;
        let mut worst = f64::INFINITY;
        for r in &recs {
            assert!(r.over_sqrt >= best || r.over_sqrt <= worst);
            best = best.max(r.over_sqrt);
            worst = worst.min(r.over_sqrt);
        }
        assert!(!maxima.is_empty());
        assert!(recs.iter().all(|r| r.over_sqrt_lll.is_none()));
    }
}
