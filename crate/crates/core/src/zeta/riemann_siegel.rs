//! Riemann–Siegel θ and Z on the critical line, and ζ′ at a simple zero.

use std::f64::consts::{FRAC_PI_8, TAU};

use num_complex::Complex64;

use super::rs_coeffs::COEFFS;
use crate::error::{Error, Result};

/// Riemann–Siegel theta via its asymptotic expansion through the t⁻³ term.
pub fn theta(t: f64) -> f64 {
    let half = 0.5 * t;
    half * (t / TAU).ln() - half - FRAC_PI_8 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t)
}

fn horner(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// Z(t) = e^{iθ(t)} ζ(½ + it), real for real t.
///
/// Main sum plus the remainder terms C₀…C₄; valid for t ≥ 2π.
pub fn z_function(t: f64) -> f64 {
    let a = (t / TAU).sqrt();
    let n = a.floor();
    let frac = a - n;
    let th = theta(t);
    let main: f64 = (1..=n as u64)
        .map(|k| {
            let k = k as f64;
            (th - t * k.ln()).cos() / k.sqrt()
        })
        .sum();
    let inv_a = 1.0 / a;
    let mut scale = 1.0;
    let mut rem = 0.0;
    for c in COEFFS.iter() {
        rem += horner(c, frac - 0.5) * scale;
        scale *= inv_a;
    }
    let sign = if (n as u64) % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * rem / a.sqrt()
}

/// Central-difference step used for Z′ at ordinate `gamma`.
pub fn derivative_step(gamma: f64) -> f64 {
    1e-4 * (gamma / 100.0).max(1.0)
}

/// Z′(t) by the five-point central difference.
pub fn z_derivative(t: f64) -> f64 {
    let h = derivative_step(t);
    (-z_function(t + 2.0 * h) + 8.0 * z_function(t + h) - 8.0 * z_function(t - h)
        + z_function(t - 2.0 * h))
        / (12.0 * h)
}

/// |Z′| below this is treated as a multiple zero.
pub const MIN_DERIVATIVE: f64 = 1e-8;

/// Largest |Z(γ)| accepted at a tabulated ordinate, relative part.
const RESIDUAL_REL: f64 = 1e-6;
/// Absolute part of the residual allowance (covers the Riemann–Siegel truncation).
const RESIDUAL_ABS: f64 = 1e-4;

/// ζ′(½ + iγ) at a simple zero, from ζ′ = −i e^{−iθ(γ)} Z′(γ).
pub fn zeta_prime_at_zero(gamma: f64) -> Result<Complex64> {
    if !(gamma >= TAU) {
        return Err(Error::Domain(format!(
            "ordinate {gamma} below the Riemann-Siegel range"
        )));
    }
    let dz = z_derivative(gamma);
    let z = z_function(gamma);
    if dz.abs() < MIN_DERIVATIVE || z.abs() > RESIDUAL_ABS + RESIDUAL_REL * dz.abs() {
        return Err(Error::NotSimple {
            gamma,
            z_abs: z.abs(),
            dz_abs: dz.abs(),
        });
    }
    let phase = Complex64::from_polar(1.0, -theta(gamma));
    Ok(Complex64::new(0.0, -1.0) * phase * dz)
}
