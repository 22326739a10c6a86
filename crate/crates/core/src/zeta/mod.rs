//! Zeta-zero tables and the quantities derived from them: ζ′(ρ), the
//! coefficients 1/(ρζ′(ρ)), discrete moments J₋ₖ(T), N(T), a(T), b(T), and
//! the Euler-product constant aₖ.

mod riemann_siegel;
mod rs_coeffs;

use std::f64::consts::{E, TAU};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{out_of_range, Error, Result};
use crate::fmt17;
use crate::sieve::primes_up_to;

pub use riemann_siegel::{derivative_step, theta, z_derivative, z_function, zeta_prime_at_zero};

/// Smallest ordinate accepted in a zero table.
pub const MIN_ORDINATE: f64 = 14.0;

/// One zero ρ = ½ + iγ with ζ′(ρ) and the derived coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub gamma: f64,
    pub zeta_prime: Complex64,
    /// b_γ = 1/(ρ ζ′(ρ)).
    pub coeff: Complex64,
    /// r_γ = 2/|ρ ζ′(ρ)|.
    pub r: f64,
}

impl ZeroRecord {
    pub fn new(gamma: f64, zeta_prime: Complex64) -> Result<Self> {
        if zeta_prime.norm() == 0.0 || !zeta_prime.is_finite() {
            return Err(Error::NotSimple {
                gamma,
                z_abs: 0.0,
                dz_abs: zeta_prime.norm(),
            });
        }
        let rho = Complex64::new(0.5, gamma);
        let coeff = (rho * zeta_prime).inv();
        Ok(ZeroRecord {
            gamma,
            zeta_prime,
            coeff,
            r: 2.0 * coeff.norm(),
        })
    }

    /// Record with ζ′ computed from the Riemann–Siegel function.
    pub fn from_ordinate(gamma: f64) -> Result<Self> {
        ZeroRecord::new(gamma, zeta_prime_at_zero(gamma)?)
    }
}

/// An immutable, strictly increasing table of zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    records: Vec<ZeroRecord>,
}

fn parse_ordinates<R: BufRead>(reader: R, limit: Option<usize>) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        if limit.is_some_and(|l| out.len() >= l) {
            break;
        }
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let value: f64 = text.parse().map_err(|_| Error::Parse {
            line: lineno,
            content: text.to_string(),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line: lineno,
                content: text.to_string(),
            });
        }
        if value < MIN_ORDINATE {
            return Err(Error::OrdinateTooSmall { line: lineno, value });
        }
        if out.last().is_some_and(|&prev| value <= prev) {
            return Err(Error::NonMonotone { line: lineno, value });
        }
        out.push(value);
    }
    if out.is_empty() {
        return Err(Error::NoZeros);
    }
    Ok(out)
}

impl ZeroSet {
    /// Build from already-validated records.
    pub fn from_records(records: Vec<ZeroRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::NoZeros);
        }
        for (i, w) in records.windows(2).enumerate() {
            if w[1].gamma <= w[0].gamma {
                return Err(Error::NonMonotone {
                    line: i + 2,
                    value: w[1].gamma,
                });
            }
        }
        Ok(ZeroSet { records })
    }

    /// Compute ζ′ for each ordinate (in parallel) and build the set.
    pub fn from_ordinates(ordinates: &[f64]) -> Result<Self> {
        let records = ordinates
            .par_iter()
            .map(|&g| ZeroRecord::from_ordinate(g))
            .collect::<Result<Vec<_>>>()?;
        ZeroSet::from_records(records)
    }

    /// Parse a one-ordinate-per-line table (LF or CRLF), keeping at most `limit` zeros.
    pub fn parse<R: BufRead>(reader: R, limit: Option<usize>) -> Result<Self> {
        ZeroSet::from_ordinates(&parse_ordinates(reader, limit)?)
    }

    pub fn records(&self) -> &[ZeroRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Largest ingested ordinate.
    pub fn t_max(&self) -> f64 {
        self.records.last().expect("ZeroSet is nonempty").gamma
    }

    /// Ordinate of the n-th zero (1-based).
    pub fn gamma(&self, n: usize) -> Option<f64> {
        n.checked_sub(1)
            .and_then(|i| self.records.get(i))
            .map(|r| r.gamma)
    }

    /// The first `n` zeros (all of them if `n` exceeds the table).
    pub fn truncated(&self, n: usize) -> Result<ZeroSet> {
        ZeroSet::from_records(self.records[..n.min(self.len())].to_vec())
    }

    /// Records with γ ≤ t.
    pub fn up_to(&self, t: f64) -> &[ZeroRecord] {
        let end = self.records.partition_point(|r| r.gamma <= t);
        &self.records[..end]
    }

    fn check_cutoff(&self, t: f64) -> Result<()> {
        if t > self.t_max() {
            return out_of_range("T", t, self.t_max());
        }
        Ok(())
    }

    /// Write `gamma,re_zeta_prime,im_zeta_prime`.
    pub fn write_cache<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "gamma,re_zeta_prime,im_zeta_prime")?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{}",
                fmt17(r.gamma),
                fmt17(r.zeta_prime.re),
                fmt17(r.zeta_prime.im)
            )?;
        }
        Ok(())
    }

    /// Read a cache written by [`ZeroSet::write_cache`] without recomputing ζ′.
    pub fn read_cache<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        match lines.next() {
            Some(Ok(h)) if h.trim_end() == "gamma,re_zeta_prime,im_zeta_prime" => {}
            Some(Err(e)) => return Err(e.into()),
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    content: "expected gamma,re_zeta_prime,im_zeta_prime header".into(),
                })
            }
        }
        let mut records = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            let bad = || Error::Parse {
                line: i + 2,
                content: text.to_string(),
            };
            let fields: Vec<f64> = text
                .split(',')
                .map(|f| f.parse::<f64>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            let [g, re, im] = fields[..] else {
                return Err(bad());
            };
            if g < MIN_ORDINATE {
                return Err(Error::OrdinateTooSmall {
                    line: i + 2,
                    value: g,
                });
            }
            records.push(ZeroRecord::new(g, Complex64::new(re, im))?);
        }
        ZeroSet::from_records(records)
    }
}

/// Load a zero table from disk, computing ζ′ at every ordinate.
pub fn load_zeros(path: impl AsRef<Path>, limit: Option<usize>) -> Result<ZeroSet> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => e.into(),
    })?;
    ZeroSet::parse(BufReader::new(file), limit)
}

/// J₋ₖ(T) = Σ_{0<γ≤T} |ζ′(ρ)|^{−2k}.
pub fn discrete_moment(k: f64, t: f64, zeros: &ZeroSet) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(Error::Domain(format!("moment order k = {k} must be >= 0")));
    }
    zeros.check_cutoff(t)?;
    Ok(zeros
        .up_to(t)
        .iter()
        .map(|r| r.zeta_prime.norm().powf(-2.0 * k))
        .sum())
}

/// N(T): ingested ordinates ≤ T.
pub fn zero_count(t: f64, zeros: &ZeroSet) -> Result<usize> {
    zeros.check_cutoff(t)?;
    Ok(zeros.up_to(t).len())
}

/// (T/2π) log(T/(2πe)).
pub fn zero_count_main_term(t: f64) -> f64 {
    t / TAU * (t / (TAU * E)).ln()
}

/// a(T) = Σ_{γ<T} r_γ.
pub fn a_of_t(t: f64, zeros: &ZeroSet) -> Result<f64> {
    zeros.check_cutoff(t)?;
    let end = zeros.records.partition_point(|r| r.gamma < t);
    Ok(zeros.records[..end].iter().map(|r| r.r).sum())
}

/// Constant C of the b(T) ≈ C/T tail model, fit on the table's last decade.
pub fn b_tail_constant(zeros: &ZeroSet) -> f64 {
    let t_max = zeros.t_max();
    let t_lo = t_max / 10.0;
    let start = zeros.records.partition_point(|r| r.gamma < t_lo);
    let mass: f64 = zeros.records[start..].iter().map(|r| r.r * r.r).sum();
    mass / (1.0 / t_lo - 1.0 / t_max)
}

/// Modeled Σ_{γ>t_max} r_γ² beyond the table.
pub fn b_tail_beyond_table(zeros: &ZeroSet) -> f64 {
    b_tail_constant(zeros) / zeros.t_max()
}

/// b(T) = Σ_{γ≥T} r_γ², in-table part plus the modeled tail past t_max.
pub fn b_of_t(t: f64, zeros: &ZeroSet) -> Result<f64> {
    zeros.check_cutoff(t)?;
    let start = zeros.records.partition_point(|r| r.gamma < t);
    let in_table: f64 = zeros.records[start..].iter().map(|r| r.r * r.r).sum();
    Ok(in_table + b_tail_beyond_table(zeros))
}

/// Truncated Euler product
/// aₖ = Π_{p ≤ cut} (1 − 1/p)^{k²} Σ_m (Γ(m+k)/(m! Γ(k)))² p^{−m}.
///
/// The ratio Γ(m+k)/(m!Γ(k)) is taken as the rising factorial (k)_m/m!, which
/// is also the correct limit at k = 0 and k = −1.
pub fn euler_product_a_k(k: f64, prime_cut: u64) -> f64 {
    const TERM_FLOOR: f64 = 1e-15;
    const MAX_TERMS: usize = 100_000;
    let exponent = k * k;
    primes_up_to(prime_cut)
        .into_iter()
        .map(|p| {
            let inv_p = 1.0 / p as f64;
            let mut c = 1.0f64;
            let mut pow = 1.0f64;
            let mut sum = 1.0f64;
            for m in 1..MAX_TERMS {
                let m = m as f64;
                c *= (k + m - 1.0) / m;
                if c == 0.0 {
                    break;
                }
                pow *= inv_p;
                let term = c * c * pow;
                sum += term;
                // Successive terms shrink from here on once this ratio is below 1.
                let ratio = ((k + m) / (m + 1.0)).powi(2) * inv_p;
                if term < TERM_FLOOR && ratio < 1.0 {
                    break;
                }
            }
            (1.0 - inv_p).powf(exponent) * sum
        })
        .product()
}

/// Running records of log(1/|ζ′(ρ)|)/log γ, as `(gamma, value)`.
///
/// A diagnostic view of Gonek's exponent Θ; finite data cannot decide it.
pub fn inverse_derivative_exponent_records(zeros: &ZeroSet) -> Vec<(f64, f64)> {
    let mut best = f64::NEG_INFINITY;
    let mut out = Vec::new();
    for r in &zeros.records {
        let v = -r.zeta_prime.norm().ln() / r.gamma.ln();
        if v > best {
            best = v;
            out.push((r.gamma, v));
        }
    }
    out
}

/// Least-squares exponent v in J₋ₖ(T) ≈ C·T·(log T)^v over the given cutoffs.
///
/// Returns `(v, C)`.
pub fn fit_moment_log_power(k: f64, cutoffs: &[f64], zeros: &ZeroSet) -> Result<(f64, f64)> {
    let pts = cutoffs
        .iter()
        .map(|&t| Ok((t.ln().ln(), (discrete_moment(k, t, zeros)? / t).ln())))
        .collect::<Result<Vec<_>>>()?;
    let (slope, intercept) = crate::numeric::least_squares(&pts)?;
    Ok((slope, intercept.exp()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIRST: &str = "14.134725142\n21.022039639\n25.010857580\n30.424876126\n32.935061588\n";

    fn small() -> ZeroSet {
        ZeroSet::parse(FIRST.as_bytes(), None).unwrap()
    }

    #[test]
    fn parses_table() {
        let z = small();
        assert_eq!(z.len(), 5);
        assert!((z.gamma(1).unwrap() - 14.1347).abs() < 1e-4);
        assert!((z.gamma(2).unwrap() - 21.0220).abs() < 1e-4);
        assert_eq!(z.t_max(), 32.935061588);
        let crlf = FIRST.replace('\n', "\r\n");
        assert_eq!(ZeroSet::parse(crlf.as_bytes(), Some(2)).unwrap().len(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ZeroSet::parse("".as_bytes(), None), Err(Error::NoZeros)));
        assert!(matches!(
            ZeroSet::parse("21.0\n14.1\n".as_bytes(), None),
            Err(Error::NonMonotone { line: 2, .. })
        ));
        assert!(matches!(
            ZeroSet::parse("14.134725142\nabc\n".as_bytes(), None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            ZeroSet::parse("13.0\n".as_bytes(), None),
            Err(Error::OrdinateTooSmall { line: 1, .. })
        ));
    }

    #[test]
    fn record_coefficients() {
        for r in small().records() {
            assert!((r.coeff.norm() - r.r / 2.0).abs() < 1e-15);
            assert!(r.gamma >= MIN_ORDINATE);
        }
    }

    #[test]
    fn cache_round_trip() {
        let z = small();
        let mut buf = Vec::new();
        z.write_cache(&mut buf).unwrap();
        let back = ZeroSet::read_cache(&buf[..]).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn moments_basic() {
        let z = small();
        assert_eq!(discrete_moment(1.0, 13.0, &z).unwrap(), 0.0);
        assert_eq!(discrete_moment(0.0, 30.0, &z).unwrap(), 3.0);
        assert!(discrete_moment(1.0, 40.0, &z).is_err());
        assert_eq!(a_of_t(14.0, &z).unwrap(), 0.0);
        assert_eq!(zero_count(25.0, &z).unwrap(), 2);
    }

    #[test]
    fn main_term_values() {
        assert!(zero_count_main_term(TAU * E).abs() < 1e-12);
        let expected = 100.0 / TAU * (100.0 / (TAU * E)).ln();
        assert_eq!(zero_count_main_term(100.0), expected);
        assert!((expected - 28.127).abs() < 1e-3);
    }

    #[test]
    fn euler_product_limits() {
        assert_eq!(euler_product_a_k(0.7, 1), 1.0);
        assert_eq!(euler_product_a_k(0.0, 1000), 1.0);
        let six_over_pi2 = 6.0 / std::f64::consts::PI.powi(2);
        assert!((euler_product_a_k(-1.0, 10_000) - six_over_pi2).abs() < 1e-3);
        assert!((euler_product_a_k(1.0, 10_000) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn b_tail_model_is_positive() {
        let z = small();
        assert!(b_tail_constant(&z) > 0.0);
        assert!(b_of_t(20.0, &z).unwrap() >= b_of_t(30.0, &z).unwrap());
    }
}
