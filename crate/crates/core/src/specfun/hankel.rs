//! The Hankel-function combinations h_α^± that carry the spherical
//! time-state waves.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bessel::bessel_jy_any;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelCombo {
    pub value: Complex64,
    pub alpha: f64,
    pub kind: HankelKind,
}

/// h_α^±(z) = √(πz/2)·exp(∓iz ± iπ(2α+1)/4)·[H_{α+1}(z) − i H_α(z)], with
/// H = H^{(1)} for + and H^{(2)} for −.
pub fn h_combo(alpha: f64, z: f64, kind: HankelKind) -> Result<HankelCombo> {
    if !(alpha >= -0.75) || !alpha.is_finite() {
        return Err(Error::domain("h_combo", format!("alpha={alpha} < -3/4")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain("h_combo", format!("z={z} on or beyond the branch cut")));
    }
    let (j0, y0) = bessel_jy_any(alpha, z)?;
    let (j1, y1) = bessel_jy_any(alpha + 1.0, z)?;
    let s = match kind {
        HankelKind::Plus => 1.0,
        HankelKind::Minus => -1.0,
    };
    let h_a = Complex64::new(j0, s * y0);
    let h_a1 = Complex64::new(j1, s * y1);
    let phase = s * (-z + PI * (2.0 * alpha + 1.0) / 4.0);
    let pre = (PI * z / 2.0).sqrt() * Complex64::from_polar(1.0, phase);
    Ok(HankelCombo {
        value: pre * (h_a1 - Complex64::i() * h_a),
        alpha,
        kind,
    })
}
