//! Time-state ("timeline") waves Ξ_τ for the three continua.
//!
//! These are the functions the selection rules are derived from; they are
//! evaluated here so that the formulas can be checked against each other
//! (Bessel vs Hankel-combination representations, parity relations, time
//! reversal). ħ = 1; the mass is explicit.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::Parity;
use crate::solver::{adaptive_quad, QuadratureSpec};
use crate::specfun::{bessel_j_real_order, h_combo, HankelKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeClass {
    UniformField { force: f64 },
    /// Radial waves of angular momentum l ≥ −1 (l = −1 is the formal
    /// even-parity companion).
    Spherical { l: i32 },
    Free { parity: Parity },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeState {
    pub class: TimeClass,
    pub tau: f64,
    pub mass: f64,
}

impl TimeState {
    pub fn new(class: TimeClass, tau: f64, mass: f64) -> Result<Self> {
        if !(mass > 0.0) || !tau.is_finite() {
            return Err(Error::domain("time_state", format!("tau={tau}, m={mass}")));
        }
        if let TimeClass::UniformField { force } = class {
            if !(force > 0.0) {
                return Err(Error::domain("time_state", format!("F={force} must be > 0")));
            }
        }
        Ok(Self { class, tau, mass })
    }

    /// Ξ_τ at position x (radius r for the spherical class).
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        match self.class {
            TimeClass::UniformField { force } => xi_uniform(self.tau, x, force, self.mass),
            TimeClass::Spherical { l } => xi_spherical(l, self.tau, x, self.mass),
            TimeClass::Free { parity } => xi_free(parity, self.tau, x, self.mass),
        }
    }
}

/// Uniform-field time state: a plane wave of modulus √(F/2π).
pub fn xi_uniform(tau: f64, x: f64, force: f64, mass: f64) -> Result<Complex64> {
    if !(force > 0.0) || !(mass > 0.0) {
        return Err(Error::domain("xi_uniform", format!("F={force}, m={mass}")));
    }
    let phase = force * x * tau - force * force * tau.powi(3) / (6.0 * mass);
    Ok((force / (2.0 * PI)).sqrt() * Complex64::from_polar(1.0, phase))
}

fn alpha_of(l: i32) -> f64 {
    0.5 * (l as f64 - 0.5)
}

fn check_tau(op: &'static str, tau: f64) -> Result<()> {
    if tau == 0.0 {
        return Err(Error::Singular {
            op,
            detail: "tau = 0".into(),
        });
    }
    if !tau.is_finite() {
        return Err(Error::domain(op, format!("tau={tau}")));
    }
    Ok(())
}

/// Applies Ξ_{−τ} = conj(Ξ_τ).
fn time_reversed(tau: f64, f: impl Fn(f64) -> Result<Complex64>) -> Result<Complex64> {
    if tau > 0.0 {
        f(tau)
    } else {
        f(-tau).map(|v| v.conj())
    }
}

/// Radial time state Ξ_τ^l(r) in its Bessel-J form.
pub fn xi_spherical(l: i32, tau: f64, r: f64, mass: f64) -> Result<Complex64> {
    check_tau("xi_spherical", tau)?;
    if l < -1 || !(r > 0.0) || !(mass > 0.0) {
        return Err(Error::domain("xi_spherical", format!("l={l}, r={r}, m={mass}")));
    }
    let alpha = alpha_of(l);
    time_reversed(tau, |t| {
        let z = mass / (4.0 * t);
        let w = r * r * z;
        let ja1 = bessel_j_real_order(alpha + 1.0, w)?;
        let ja = bessel_j_real_order(alpha, w)?;
        let phase = Complex64::from_polar(1.0, w - PI * (2.0 * alpha + 1.0) / 4.0);
        Ok((4.0 * r / mass).sqrt() * z.powf(1.5) * phase * Complex64::new(ja1, -ja))
    })
}

/// Radial time state in the Hankel-combination form.
pub fn xi_spherical_hankel(l: i32, tau: f64, r: f64, mass: f64) -> Result<Complex64> {
    check_tau("xi_spherical", tau)?;
    if l < -1 || !(r > 0.0) || !(mass > 0.0) {
        return Err(Error::domain("xi_spherical", format!("l={l}, r={r}, m={mass}")));
    }
    let alpha = alpha_of(l);
    time_reversed(tau, |t| {
        let z = mass / (4.0 * t);
        let w = r * r * z;
        let hp = h_combo(alpha, w, HankelKind::Plus)?.value;
        let hm = h_combo(alpha, w, HankelKind::Minus)?.value;
        let rot = Complex64::from_polar(1.0, 2.0 * w - PI * (2.0 * alpha + 1.0) / 2.0);
        Ok((2.0 / (PI * mass * r)).sqrt() * z * (rot * hp + hm))
    })
}

/// Standing-wave time state Ξ_τ^±(x) of the free particle.
pub fn xi_free(parity: Parity, tau: f64, x: f64, mass: f64) -> Result<Complex64> {
    check_tau("xi_free", tau)?;
    if !(mass > 0.0) || !x.is_finite() {
        return Err(Error::domain("xi_free", format!("x={x}, m={mass}")));
    }
    if x < 0.0 {
        let v = xi_free(parity, tau, -x, mass)?;
        return Ok(match parity {
            Parity::Even => v,
            Parity::Odd => -v,
        });
    }
    if x == 0.0 {
        return Ok(match parity {
            Parity::Odd => Complex64::new(0.0, 0.0),
            // limit of x·Ξ^{−1}/√2 from the leading term of J_{−3/4}
            Parity::Even => time_reversed(tau, |t| {
                let z = mass / (4.0 * t);
                let c = 2f64.powf(0.75) * 2.0 / ((2.0 * mass).sqrt() * libm::tgamma(0.25));
                Ok(-Complex64::i() * Complex64::from_polar(c * z.powf(0.75), PI / 8.0))
            })?,
        });
    }
    let (alpha, sign) = match parity {
        Parity::Odd => (-0.25, -1.0),
        Parity::Even => (-0.75, 1.0),
    };
    time_reversed(tau, |t| {
        let z = mass / (4.0 * t);
        let w = x * x * z;
        let hp = h_combo(alpha, w, HankelKind::Plus)?.value;
        let hm = h_combo(alpha, w, HankelKind::Minus)?.value;
        let rot = Complex64::from_polar(1.0, 2.0 * w + sign * PI / 4.0);
        Ok((x / (PI * mass)).sqrt() * z * (rot * hp + hm))
    })
}

/// I_τ(x) = ∫₀^x Ξ_τ^+(x′) dx′ in closed form.
pub fn i_tau(tau: f64, x: f64, mass: f64) -> Result<Complex64> {
    check_tau("i_tau", tau)?;
    if !(mass > 0.0) || !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain("i_tau", format!("x={x}, m={mass}")));
    }
    if x == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    time_reversed(tau, |t| {
        let z = mass / (4.0 * t);
        let w = x * x * z;
        let hp_e = h_combo(-0.75, w, HankelKind::Plus)?.value;
        let hp_p = h_combo(0.25, w, HankelKind::Plus)?.value;
        let hm_e = h_combo(-0.75, w, HankelKind::Minus)?.value;
        let hm_p = h_combo(0.25, w, HankelKind::Minus)?.value;
        let rot = Complex64::from_polar(1.0, 2.0 * w + PI / 4.0);
        Ok((x.powi(3) / (PI * mass)).sqrt() * z * (rot * (hp_e - hp_p) + hm_e + hm_p))
    })
}

/// ∫₀^x Ξ_τ^+ by quadrature (x′ = s² removes the endpoint singularity of
/// the Bessel form); used to cross-check [`i_tau`].
pub fn i_tau_quadrature(tau: f64, x: f64, mass: f64) -> Result<Complex64> {
    let spec = QuadratureSpec::default().with_rel_tol(1e-12);
    let smax = x.sqrt();
    let part = |re: bool| {
        adaptive_quad(
            |s: f64| {
                let v = if s == 0.0 {
                    xi_free(Parity::Even, tau, 0.0, mass)
                } else {
                    xi_free(Parity::Even, tau, s * s, mass)
                };
                let v = v.map(|c| if re { c.re } else { c.im }).unwrap_or(f64::NAN);
                2.0 * s * v
            },
            0.0,
            smax,
            &spec,
        )
    };
    Ok(Complex64::new(part(true)?, part(false)?))
}
