mod common;

use std::f64::consts::E;

use mertens::explicit::{
    error_envelope, half_integer_grid, reconstruct_m, residual_scan, smooth_part,
    truncation_fluctuation, zero_sum_m, DEFAULT_EPS,
};
use mertens::zeta::a_of_t;
use mertens::Error;
use num_complex::Complex64;
use proptest::prelude::*;

use common::{small_series, zeros};

fn gamma(n: usize) -> f64 {
    zeros().gamma(n).unwrap()
}

#[test]
fn empty_sum_below_first_zero() {
    assert_eq!(zero_sum_m(100.5, 13.9, zeros()).unwrap(), 0.0);
}

#[test]
fn zero_sum_near_m_1000() {
    let zs = zero_sum_m(1000.5, gamma(100), zeros()).unwrap();
    assert!((zs - 2.0).abs() <= 5.0, "{zs}");
}

#[test]
fn zero_sum_matches_conjugate_pairs() {
    // Both ρ and ρ̄ summed explicitly as complex numbers.
    let x: f64 = 537.5;
    let mut direct = Complex64::new(0.0, 0.0);
    for rec in &zeros().records()[..30] {
        let rho = Complex64::new(0.5, rec.gamma);
        let term = (rho * x.ln()).exp() / (rho * rec.zeta_prime);
        let conj = (rho.conj() * x.ln()).exp() / (rho.conj() * rec.zeta_prime.conj());
        direct += term + conj;
    }
    assert!(direct.im.abs() < 1e-12 * x.sqrt());
    let zs = zero_sum_m(x, gamma(30), zeros()).unwrap();
    assert!((zs - direct.re).abs() < 1e-10 * x.sqrt());
}

#[test]
fn zero_sum_order_independent() {
    let x: f64 = 8765.5;
    let recs = &zeros().records()[..2000];
    let forward: f64 = recs
        .iter()
        .map(|r| {
            let (s, c) = (r.gamma * x.ln()).sin_cos();
            2.0 * (Complex64::new(c, s) * r.coeff).re
        })
        .sum::<f64>()
        * x.sqrt();
    let backward: f64 = recs
        .iter()
        .rev()
        .map(|r| {
            let (s, c) = (r.gamma * x.ln()).sin_cos();
            2.0 * (Complex64::new(c, s) * r.coeff).re
        })
        .sum::<f64>()
        * x.sqrt();
    let zs = zero_sum_m(x, zeros().t_max(), zeros()).unwrap();
    assert!((forward - backward).abs() <= 1e-9 * x.sqrt());
    assert!((zs - forward).abs() <= 1e-9 * x.sqrt());
}

#[test]
fn zero_sum_rejects_bad_input() {
    assert!(matches!(zero_sum_m(1.5, 100.0, zeros()), Err(Error::Domain(_))));
    assert!(matches!(zero_sum_m(100.0, 3000.0, zeros()), Err(Error::OutOfRange { .. })));
}

#[test]
fn smooth_part_limit() {
    // The trivial-zero series vanishes as x grows, leaving −2.
    assert!((smooth_part(1e8) + 2.0).abs() < 1e-14);
    let s10 = smooth_part(10.0);
    assert!(s10 > -2.0 && s10 < 0.0);
}

#[test]
fn envelope_examples() {
    let e2 = E * E;
    let eps = 0.05f64;
    let expected = 2.0 + (2.0 * eps).exp() / 2.0 + 2f64.sqrt() + 1.0;
    assert!((error_envelope(e2, e2, eps).unwrap() - expected).abs() < 1e-12);
    let mut prev = f64::INFINITY;
    for t in [2.0, 10.0, 100.0, 1e3, 1e4] {
        let v = error_envelope(1e4, t, DEFAULT_EPS).unwrap();
        assert!(v < prev && v >= 1.0);
        prev = v;
    }
    assert!(error_envelope(1.0, 10.0, 0.05).is_err());
    assert!(error_envelope(10.0, 10.0, 1.0).is_err());
}

#[test]
fn grid_is_half_integer() {
    let g = half_integer_grid(200, 10.0, 1e4).unwrap();
    assert_eq!(g.len(), 200);
    assert_eq!(g[0], 10.5);
    assert_eq!(*g.last().unwrap(), 10_000.5);
    assert!(g.iter().all(|x| x.fract() == 0.5));
    assert!(g.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn residual_scan_pins() {
    let r = residual_scan(200, 10.0, 1e4, gamma(1000), small_series(), zeros()).unwrap();
    assert_eq!(r.residuals.len(), r.x_grid.len());
    assert!(r.max_abs >= r.rms && r.rms >= 0.0);
    assert!((r.rms - 0.382_016_029_352_541_253).abs() < 1e-9);
    assert!((r.max_abs - 1.915_390_759_211_334_84).abs() < 1e-9);
    let coarse = residual_scan(200, 10.0, 1e4, gamma(100), small_series(), zeros()).unwrap();
    assert!(r.rms * 1.3 <= coarse.rms);
    for (x, res) in r.x_grid.iter().zip(&r.residuals) {
        assert!(res.abs() <= 10.0 * error_envelope(*x, gamma(1000), DEFAULT_EPS).unwrap());
    }
    assert!(residual_scan(200, 10.0, 1e5, gamma(100), small_series(), zeros()).is_err());
}

#[test]
fn doubling_t_does_not_hurt() {
    let mut t = 50.0;
    let mut prev = residual_scan(200, 10.0, 1e4, t, small_series(), zeros()).unwrap().rms;
    while 2.0 * t <= zeros().t_max() {
        t *= 2.0;
        let rms = residual_scan(200, 10.0, 1e4, t, small_series(), zeros()).unwrap().rms;
        assert!(rms <= 1.1 * prev, "T = {t}: {prev} -> {rms}");
        prev = rms;
    }
}

#[test]
fn rounding_recovers_m() {
    let t = zeros().t_max();
    let grid: Vec<f64> = half_integer_grid(200, 10.0, 1e4)
        .unwrap()
        .into_iter()
        .filter(|&x| x <= 1000.0)
        .collect();
    let hits = grid
        .iter()
        .filter(|&&x| {
            let m = small_series().value_at(x.floor() as u64).unwrap();
            reconstruct_m(x, t, zeros()).unwrap().round() as i64 == m
        })
        .count();
    assert!(2 * hits >= grid.len(), "{hits}/{}", grid.len());
}

/// ∫ over one unit of y of |Σ_{T<|γ|≤X} e^{iγy} b_γ|², expanded into
/// frequency pairs and integrated term by term.
fn fluctuation_closed_form(z: f64, t: f64, x: f64) -> f64 {
    let mut terms = Vec::new();
    for r in zeros().records().iter().filter(|r| r.gamma > t && r.gamma <= x) {
        terms.push((r.gamma, r.coeff));
        terms.push((-r.gamma, r.coeff.conj()));
    }
    let y0 = z.ln();
    let mut total = Complex64::new(0.0, 0.0);
    for &(wa, ca) in &terms {
        for &(wb, cb) in &terms {
            let w = wa - wb;
            let integral = if w == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                let i = Complex64::i();
                ((i * w * (y0 + 1.0)).exp() - (i * w * y0).exp()) / (i * w)
            };
            total += ca * cb.conj() * integral;
        }
    }
    total.re
}

#[test]
fn fluctuation_matches_closed_form() {
    for (z, t, x) in [(100.0, gamma(50), gamma(120)), (1000.0, gamma(10), gamma(60))] {
        let quad = truncation_fluctuation(z, t, x, zeros()).unwrap();
        let exact = fluctuation_closed_form(z, t, x);
        assert!((quad - exact).abs() < 1e-10 * exact.max(1e-12), "{quad} vs {exact}");
    }
}

#[test]
fn fluctuation_bound_and_edges() {
    let z = zeros();
    assert_eq!(truncation_fluctuation(100.0, gamma(50), gamma(50), z).unwrap(), 0.0);
    let mut worst: f64 = 0.0;
    for zz in [100.0, 1000.0] {
        for t in [gamma(50), gamma(200)] {
            let f = truncation_fluctuation(zz, t, z.t_max(), z).unwrap();
            assert!(f >= 0.0);
            worst = worst.max(f / (t.ln() / t.powf(0.25)));
        }
    }
    assert!(worst <= 1e-3, "constant {worst}");
    assert!(truncation_fluctuation(1.0, 100.0, 200.0, z).is_err());
    assert!(truncation_fluctuation(100.0, 10.0, 200.0, z).is_err());
    assert!(truncation_fluctuation(100.0, 300.0, 200.0, z).is_err());
    assert!(truncation_fluctuation(100.0, 100.0, 3000.0, z).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_sum_bounded_by_a(x in 2.0f64..1e7, n in 1usize..2000) {
        let z = zeros();
        let t = z.gamma(n).unwrap();
        let zs = zero_sum_m(x, t, z).unwrap();
        // a(T) sums γ < T; nudge T past γ_n so the cutoffs agree.
        let a = a_of_t(t + 1e-9, z).unwrap();
        prop_assert!(zs.abs() / x.sqrt() <= a * (1.0 + 1e-12));
    }

    #[test]
    fn fluctuation_nonnegative(z in 2.0f64..1e4, t in 14.0f64..400.0, width in 0.0f64..200.0) {
        let f = truncation_fluctuation(z, t, t + width, zeros()).unwrap();
        prop_assert!(f >= 0.0);
    }
}
