//! Segmented sieve for the Möbius and Liouville functions and their partial
//! sums M(x) and L(x).
//!
//! A [`MertensSeries`] keeps exact partial sums at every multiple of a
//! checkpoint stride (and at `x_max`). Point queries between checkpoints
//! re-sieve the short gap.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// Default number of integers sieved per segment.
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 20;

/// Default spacing of stored partial sums.
pub const DEFAULT_STRIDE: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Moebius,
    Liouville,
}

/// μ(n) by trial division.
pub fn mu(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("mu(0) is undefined".into()));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// λ(n) = (-1)^Ω(n) by trial division.
pub fn liouville(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("lambda(0) is undefined".into()));
    }
    let mut n = n;
    let mut omega = 0u32;
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            omega += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        omega += 1;
    }
    Ok(if omega % 2 == 0 { 1 } else { -1 })
}

/// Primes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Fill `out` with f(n) for n in `lo..hi` (lo ≥ 1), where f is μ or λ.
///
/// `primes` must contain every prime up to √(hi − 1).
fn sieve_segment(lo: u64, hi: u64, primes: &[u64], kind: SeriesKind, out: &mut Vec<i8>) {
    let len = (hi - lo) as usize;
    out.clear();
    out.resize(len, 1);
    let mut prod = vec![1u64; len];
    for &p in primes {
        if p * p >= hi {
            break;
        }
        match kind {
            SeriesKind::Moebius => {
                let mut m = lo.div_ceil(p) * p;
                while m < hi {
                    let i = (m - lo) as usize;
                    out[i] = -out[i];
                    prod[i] *= p;
                    m += p;
                }
                let q = p * p;
                let mut m = lo.div_ceil(q) * q;
                while m < hi {
                    out[(m - lo) as usize] = 0;
                    m += q;
                }
            }
            SeriesKind::Liouville => {
                let mut q = p;
                loop {
                    let mut m = lo.div_ceil(q) * q;
                    while m < hi {
                        let i = (m - lo) as usize;
                        out[i] = -out[i];
                        prod[i] *= p;
                        m += q;
                    }
                    match q.checked_mul(p) {
                        Some(next) if next < hi => q = next,
                        _ => break,
                    }
                }
            }
        }
    }
    // What is left after dividing out the small primes is 1 or one large prime.
    for (i, (v, &pr)) in out.iter_mut().zip(prod.iter()).enumerate() {
        if *v != 0 && pr != lo + i as u64 {
            *v = -*v;
        }
    }
}

/// μ(n) (or λ(n)) for n in `lo..hi` via the segmented sieve.
pub fn sieve_range(lo: u64, hi: u64, kind: SeriesKind) -> Result<Vec<i8>> {
    if lo == 0 {
        return Err(Error::Domain("sieve range must start at 1".into()));
    }
    if hi <= lo {
        return Ok(Vec::new());
    }
    let primes = primes_up_to(isqrt(hi - 1));
    let mut out = Vec::new();
    sieve_segment(lo, hi, &primes, kind, &mut out);
    Ok(out)
}

/// Checkpointed partial sums of μ (M(x)) or λ (L(x)).
#[derive(Debug, Clone, PartialEq)]
pub struct MertensSeries {
    kind: SeriesKind,
    x_max: u64,
    stride: u64,
    /// Partial sums at stride, 2·stride, … and finally at `x_max`.
    values: Vec<i64>,
}

/// Tuning knobs for [`mertens_series_with`].
#[derive(Debug, Clone, Copy)]
pub struct SieveOptions {
    pub segment_len: usize,
}

impl Default for SieveOptions {
    fn default() -> Self {
        SieveOptions {
            segment_len: DEFAULT_SEGMENT_LEN,
        }
    }
}

/// Exact partial sums up to `x_max`, stored every `stride` integers.
pub fn mertens_series(x_max: u64, stride: u64, kind: SeriesKind) -> Result<MertensSeries> {
    mertens_series_with(x_max, stride, kind, SieveOptions::default())
}

pub fn mertens_series_with(
    x_max: u64,
    stride: u64,
    kind: SeriesKind,
    opts: SieveOptions,
) -> Result<MertensSeries> {
    if x_max == 0 {
        return Err(Error::Domain("x_max must be at least 1".into()));
    }
    if stride == 0 {
        return Err(Error::Domain("checkpoint stride must be at least 1".into()));
    }
    if opts.segment_len == 0 {
        return Err(Error::Domain("segment length must be positive".into()));
    }
    let n_checkpoints = (x_max / stride) as usize + usize::from(x_max % stride != 0);
    let mut values = Vec::new();
    values
        .try_reserve_exact(n_checkpoints)
        .map_err(|_| Error::Domain(format!("cannot allocate {n_checkpoints} checkpoints")))?;

    let primes = primes_up_to(isqrt(x_max));
    let seg = opts.segment_len as u64;
    let n_segments = x_max.div_ceil(seg);
    let batch = (rayon::current_num_threads() * 4) as u64;

    let mut running = 0i64;
    let mut first = 0u64;
    while first < n_segments {
        let last = (first + batch).min(n_segments);
        // Each segment yields its total and the local prefix sums at its checkpoints.
        let parts: Vec<(i64, Vec<i64>)> = (first..last)
            .into_par_iter()
            .map_init(Vec::new, |buf, s| {
                let lo = 1 + s * seg;
                let hi = (lo + seg).min(x_max + 1);
                sieve_segment(lo, hi, &primes, kind, buf);
                let mut acc = 0i64;
                let mut local = Vec::new();
                for (i, &v) in buf.iter().enumerate() {
                    acc += v as i64;
                    let x = lo + i as u64;
                    if x % stride == 0 || x == x_max {
                        local.push(acc);
                    }
                }
                (acc, local)
            })
            .collect();
        for (total, local) in parts {
            values.extend(local.into_iter().map(|v| running + v));
            running += total;
        }
        first = last;
    }
    debug_assert_eq!(values.len(), n_checkpoints);
    Ok(MertensSeries {
        kind,
        x_max,
        stride,
        values,
    })
}

impl MertensSeries {
    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    pub fn stride(&self) -> u64 {
        self.stride
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The partial sum at the last checkpoint, i.e. M(x_max).
    pub fn last(&self) -> i64 {
        *self.values.last().expect("series is never empty")
    }

    fn checkpoint_x(&self, i: usize) -> u64 {
        ((i as u64 + 1) * self.stride).min(self.x_max)
    }

    /// Iterator over `(x, M(x))` checkpoints in increasing `x`.
    pub fn checkpoints(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &m)| (self.checkpoint_x(i), m))
    }

    /// Dense values M(1), …, M(x_max) for a unit-stride series.
    pub fn unit_values(&self) -> Result<&[i64]> {
        if self.stride != 1 {
            return Err(Error::SeriesTooCoarse {
                stride: self.stride,
            });
        }
        Ok(&self.values)
    }

    /// Exact M(n) for an integer 1 ≤ n ≤ x_max.
    pub fn value_at(&self, n: u64) -> Result<i64> {
        if n == 0 {
            return Err(Error::Domain("M is evaluated for x >= 1".into()));
        }
        if n > self.x_max {
            return out_of_range("x", n as f64, self.x_max as f64);
        }
        let below = n / self.stride;
        let (base_x, base) = if below == 0 {
            (0, 0)
        } else {
            (below * self.stride, self.values[below as usize - 1])
        };
        if base_x == n {
            return Ok(base);
        }
        if n == self.x_max {
            return Ok(self.last());
        }
        let gap = sieve_range(base_x + 1, n + 1, self.kind)?;
        Ok(base + gap.iter().map(|&v| v as i64).sum::<i64>())
    }

    /// Write the checkpoints as CSV with header `x,M`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,M")?;
        for (x, m) in self.checkpoints() {
            writeln!(w, "{x},{m}")?;
        }
        Ok(())
    }

    /// Read a checkpoint CSV written by [`MertensSeries::write_csv`].
    ///
    /// The stride is taken from the first row and every following row must
    /// sit on the same lattice (the final row may be a partial stride).
    pub fn read_csv<R: BufRead>(r: R, kind: SeriesKind) -> Result<MertensSeries> {
        let mut lines = r.lines();
        match lines.next() {
            Some(Ok(h)) if h.trim_end() == "x,M" => {}
            Some(Err(e)) => return Err(e.into()),
            _ => return Err(Error::Checkpoint("missing `x,M` header".into())),
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Checkpoint(format!("row {}: {line:?}", i + 2));
            let (x, m) = line.split_once(',').ok_or_else(bad)?;
            let x: u64 = x.parse().map_err(|_| bad())?;
            let m: i64 = m.parse().map_err(|_| bad())?;
            rows.push((x, m));
        }
        let Some(&(stride, _)) = rows.first() else {
            return Err(Error::Checkpoint("no rows".into()));
        };
        let x_max = rows.last().unwrap().0;
        if stride == 0 {
            return Err(Error::Checkpoint("x must be positive".into()));
        }
        let series = MertensSeries {
            kind,
            x_max,
            stride,
            values: rows.iter().map(|r| r.1).collect(),
        };
        let expected = (x_max / stride) as usize + usize::from(x_max % stride != 0);
        if expected != rows.len() || series.checkpoints().zip(&rows).any(|(a, b)| a.0 != b.0) {
            return Err(Error::Checkpoint("rows are not on a single stride lattice".into()));
        }
        Ok(series)
    }
}

/// Exact M(⌊x⌋) for real x, from the nearest checkpoint below plus a local sieve.
pub fn mertens_at(x: f64, series: &MertensSeries) -> Result<i64> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("M(x) needs x >= 1, got {x}")));
    }
    if x > series.x_max as f64 + 1.0 || x.floor() as u64 > series.x_max {
        return out_of_range("x", x, series.x_max as f64);
    }
    series.value_at(x.floor() as u64)
}

/// ⌊e^y⌋, snapping to the nearest integer when e^y lands within rounding of it.
pub(crate) fn floor_exp(y: f64) -> u64 {
    let e = y.exp();
    let r = e.round();
    if (e - r).abs() <= 1e-9 * e.max(1.0) {
        r as u64
    } else {
        e.floor() as u64
    }
}

/// One point of φ(y) = e^{−y/2} M(e^y).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedSample {
    pub y: f64,
    pub phi: f64,
}

/// φ on an equally spaced y-grid of `count` points over `[y_min, y_max]`.
pub fn normalized_samples(
    series: &MertensSeries,
    y_min: f64,
    y_max: f64,
    count: usize,
) -> Result<Vec<NormalizedSample>> {
    if count == 0 || !(y_min < y_max) {
        return Err(Error::Domain(format!("empty y range [{y_min}, {y_max}]")));
    }
    if y_min < std::f64::consts::LN_2 - 1e-12 {
        return out_of_range("y_min", y_min, std::f64::consts::LN_2);
    }
    if floor_exp(y_max) > series.x_max {
        return out_of_range("y_max", y_max, (series.x_max as f64).ln());
    }
    let step = if count > 1 {
        (y_max - y_min) / (count - 1) as f64
    } else {
        0.0
    };
    (0..count)
        .into_par_iter()
        .map(|i| {
            let y = y_min + step * i as f64;
            let n = floor_exp(y).clamp(1, series.x_max);
            let m = series.value_at(n)?;
            Ok(NormalizedSample {
                y,
                phi: (-0.5 * y).exp() * m as f64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sum(n: u64, f: fn(u64) -> Result<i8>) -> i64 {
        (1..=n).map(|k| f(k).unwrap() as i64).sum()
    }

    #[test]
    fn mu_small_values() {
        assert_eq!(mu(1).unwrap(), 1);
        assert_eq!(mu(4).unwrap(), 0);
        assert_eq!(mu(6).unwrap(), 1);
        assert_eq!(mu(30).unwrap(), -1);
        assert!(matches!(mu(0), Err(Error::Domain(_))));
    }

    #[test]
    fn small_partial_sums() {
        let s = mertens_series(2, 1, SeriesKind::Moebius).unwrap();
        assert_eq!(s.last(), 0);
        let s = mertens_series(10, 1, SeriesKind::Moebius).unwrap();
        assert_eq!(s.last(), -1);
        assert_eq!(s.last(), naive_sum(10, mu));
        let l = mertens_series(9, 1, SeriesKind::Liouville).unwrap();
        assert_eq!(l.last(), -1);
        assert_eq!(l.last(), naive_sum(9, liouville));
    }

    #[test]
    fn tiny_segments_match_one_segment() {
        let opts = SieveOptions { segment_len: 7 };
        for kind in [SeriesKind::Moebius, SeriesKind::Liouville] {
            let a = mertens_series_with(5000, 13, kind, opts).unwrap();
            let b = mertens_series(5000, 13, kind).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn checkpoints_include_x_max() {
        let s = mertens_series(105, 10, SeriesKind::Moebius).unwrap();
        let cps: Vec<_> = s.checkpoints().collect();
        assert_eq!(cps.len(), 11);
        assert_eq!(cps.last().unwrap().0, 105);
        assert_eq!(cps[0], (10, -1));
    }

    #[test]
    fn point_queries() {
        let s = mertens_series(1000, 100, SeriesKind::Moebius).unwrap();
        assert_eq!(mertens_at(1.0, &s).unwrap(), 1);
        assert_eq!(mertens_at(10.5, &s).unwrap(), -1);
        assert_eq!(mertens_at(2.999, &s).unwrap(), 0);
        assert_eq!(mertens_at(1000.0, &s).unwrap(), 2);
        assert!(mertens_at(1001.0, &s).is_err());
        assert!(mertens_at(0.5, &s).is_err());
    }

    #[test]
    fn normalized_grid() {
        let s = mertens_series(100, 1, SeriesKind::Moebius).unwrap();
        let pts = normalized_samples(&s, 4f64.ln(), 100f64.ln(), 5).unwrap();
        assert_eq!(pts.len(), 5);
        assert!((pts[0].phi + 0.5).abs() < 1e-15);
        let pts = normalized_samples(&s, 2f64.ln(), 3.0, 1).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].phi, 0.0);
        assert!(normalized_samples(&s, 3.0, 3.0, 4).is_err());
        assert!(normalized_samples(&s, 0.1, 3.0, 4).is_err());
        assert!(normalized_samples(&s, 1.0, 5.0, 4).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = mertens_series(12345, 1000, SeriesKind::Moebius).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let back = MertensSeries::read_csv(&buf[..], SeriesKind::Moebius).unwrap();
        assert_eq!(back, s);
        let mut again = Vec::new();
        back.write_csv(&mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn csv_rejects_bad_lattice() {
        let text = "x,M\n10,-1\n25,0\n";
        assert!(MertensSeries::read_csv(text.as_bytes(), SeriesKind::Moebius).is_err());
        assert!(MertensSeries::read_csv("x,M\n".as_bytes(), SeriesKind::Moebius).is_err());
        assert!(MertensSeries::read_csv("a,b\n1,1\n".as_bytes(), SeriesKind::Moebius).is_err());
    }

    #[test]
    fn floor_exp_snaps() {
        assert_eq!(floor_exp(4f64.ln()), 4);
        assert_eq!(floor_exp(1000f64.ln()), 1000);
        assert_eq!(floor_exp(2.5f64.ln()), 2);
    }
}
