//! Closed-form half-power Fourier tails.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::fresnel::fresnel_aux;
use crate::error::{Error, Result};

/// ∫_b^∞ x^{−1/2} e^{i(kx+φ)} dx = √(2π/k)·e^{i(kb+φ)}·(g + i f)(√(2kb/π)).
pub fn half_power_tail_complex(k: f64, phi: f64, b: f64) -> Result<Complex64> {
    if !(k > 0.0) || !(b >= 0.0) || !k.is_finite() || !b.is_finite() || !phi.is_finite() {
        return Err(Error::domain("half_power_tail", format!("k={k}, b={b}, phi={phi}")));
    }
    let a = fresnel_aux((2.0 * k * b / PI).sqrt())?;
    let rot = Complex64::from_polar(1.0, k * b + phi);
    Ok((2.0 * PI / k).sqrt() * rot * Complex64::new(a.g, a.f))
}

/// (∫_b^∞ x^{−1/2} cos(kx+φ) dx, ∫_b^∞ x^{−1/2} sin(kx+φ) dx).
pub fn half_power_tail(k: f64, phi: f64, b: f64) -> Result<(f64, f64)> {
    if !(b > 0.0) {
        return Err(Error::domain("half_power_tail", format!("b={b} must be > 0")));
    }
    let v = half_power_tail_complex(k, phi, b)?;
    Ok((v.re, v.im))
}
