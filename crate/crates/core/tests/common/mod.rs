#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use mertens::{load_zeros, mertens_series, MertensSeries, SeriesKind, ZeroSet};
use num_complex::Complex64;

pub fn table_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_2000.txt")
}

/// The shipped 2000-zero table with ζ′ computed.
pub fn zeros() -> &'static ZeroSet {
    static Z: OnceLock<ZeroSet> = OnceLock::new();
    Z.get_or_init(|| load_zeros(table_path(), None).expect("zero table"))
}

/// Unit-stride M(n) for n ≤ 10⁴.
pub fn small_series() -> &'static MertensSeries {
    static S: OnceLock<MertensSeries> = OnceLock::new();
    S.get_or_init(|| mertens_series(10_000, 1, SeriesKind::Moebius).unwrap())
}

/// Unit-stride M(n) for n ≤ 10⁷.
pub fn big_series() -> &'static MertensSeries {
    static S: OnceLock<MertensSeries> = OnceLock::new();
    S.get_or_init(|| mertens_series(10_000_000, 1, SeriesKind::Moebius).unwrap())
}

/// μ(n) by trial division.
pub fn mu_naive(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// λ(n) by trial division.
pub fn liouville_naive(mut n: u64) -> i8 {
    let mut omega = 0;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            omega += 1;
        }
        p += 1;
    }
    if n > 1 {
        omega += 1;
    }
    if omega % 2 == 0 {
        1
    } else {
        -1
    }
}

const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// ζ(s) by Euler–Maclaurin summation with `n` direct terms.
pub fn zeta_em(s: Complex64, n: u32) -> Complex64 {
    let big_n = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * big_n.ln()).exp();
    sum += n_pow * big_n / (s - 1.0) + 0.5 * n_pow;
    // B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_pow / big_n;
    for (k, b) in BERNOULLI.iter().enumerate() {
        sum += rising * npow * (*b / fact);
        let m = 2.0 * (k as f64 + 1.0);
        rising *= (s + (m - 1.0)) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        npow /= big_n * big_n;
    }
    sum
}

/// ζ′(½+iγ) from a sixth-order central difference of the Euler–Maclaurin ζ
/// along the critical line: ζ′ = −i · d/dt ζ(½+it).
pub fn zeta_prime_oracle(gamma: f64) -> Complex64 {
    let n = (gamma / 2.0).ceil() as u32 + 40;
    let h = 1e-3;
    let f = |t: f64| zeta_em(Complex64::new(0.5, t), n);
    let d = (f(gamma + 3.0 * h) - f(gamma - 3.0 * h)) * (1.0 / 60.0)
        - (f(gamma + 2.0 * h) - f(gamma - 2.0 * h)) * (3.0 / 20.0)
        + (f(gamma + h) - f(gamma - h)) * (3.0 / 4.0);
    -Complex64::i() * d / h
}
