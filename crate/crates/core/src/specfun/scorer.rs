//! Scorer functions Gi and Hi of real argument.
//!
//! Hi comes from its integral (1/π)∫₀^∞ exp(−t³/3 + zt) dt, truncated where
//! the integrand has fallen by e^{−40}. For z > 0 the integrand peaks at
//! t = √z with height e^{ζ}; it is integrated about the peak in scaled form.
//! Gi for z > 0 uses the same integral with the contour rotated by 2π/3,
//! which is exponentially damped; for z ≤ 0, Gi = Bi − Hi.

use std::f64::consts::PI;

use super::airy::{airy, zeta};
use crate::error::{Error, Result};
use crate::solver::{adaptive_quad, QuadratureSpec};

const CUTOFF: f64 = 40.0;
const ZETA_MAX: f64 = 709.0;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default().with_rel_tol(1e-14).with_abs_tol(1e-300)
}

/// Smallest s > 0 with t0·s² + s³/3 ≥ CUTOFF.
fn peak_halfwidth_upper(t0: f64) -> f64 {
    let g = |s: f64| t0 * s * s + s * s * s / 3.0 - CUTOFF;
    let mut hi = (3.0 * CUTOFF).cbrt().min((CUTOFF / t0.max(1e-300)).sqrt()).max(1e-3);
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    bisect(g, 0.0, hi)
}

fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    hi
}

/// Hi(z)·e^{−ζ} for z > 0; plain Hi(z) for z ≤ 0.
pub fn hi_scaled(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain("scorer", format!("non-finite argument {z}")));
    }
    if z <= 0.0 {
        let a = -z;
        // exp(−t³/3 − a t) ≤ e^{−40} past either single-term cutoff
        let t_max = if a > 0.0 { (3.0 * CUTOFF).cbrt().min(CUTOFF / a) } else { (3.0 * CUTOFF).cbrt() };
        let v = adaptive_quad(|t| (-t * t * t / 3.0 - a * t).exp(), 0.0, t_max, &spec())?;
        return Ok(v / PI);
    }
    // t = t0 + s, exponent −t0 s² − s³/3 relative to the peak value e^{ζ}
    let t0 = z.sqrt();
    let s_hi = peak_halfwidth_upper(t0);
    let s_lo = if zeta(z) <= CUTOFF {
        t0
    } else {
        bisect(|s| t0 * s * s - s * s * s / 3.0 - CUTOFF, 0.0, t0)
    };
    let f = |s: f64| (-t0 * s * s - s * s * s / 3.0).exp();
    let left = adaptive_quad(f, -s_lo, 0.0, &spec())?;
    let right = adaptive_quad(f, 0.0, s_hi, &spec())?;
    Ok((left + right) / PI)
}

/// Hi(z). Errors once the value would overflow.
pub fn hi(z: f64) -> Result<f64> {
    let v = hi_scaled(z)?;
    if z <= 0.0 {
        return Ok(v);
    }
    let zt = zeta(z);
    if zt > ZETA_MAX {
        return Err(Error::Range {
            op: "scorer",
            threshold: (1.5 * ZETA_MAX).powf(2.0 / 3.0),
            arg: z,
        });
    }
    Ok(v * zt.exp())
}

/// Gi(z).
pub fn gi(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain("scorer", format!("non-finite argument {z}")));
    }
    if z <= 0.0 {
        return Ok(airy(z)?.bi - hi(z)?);
    }
    let c = 3f64.sqrt() / 2.0;
    let t_max = (3.0 * CUTOFF).cbrt().min(2.0 * CUTOFF / z);
    let f = |s: f64| (-s * s * s / 3.0 - 0.5 * z * s).exp() * (PI / 6.0 + c * z * s).sin();
    Ok(adaptive_quad(f, 0.0, t_max, &spec())? / PI)
}

/// (Gi(z), Hi(z)).
pub fn scorer(z: f64) -> Result<(f64, f64)> {
    Ok((gi(z)?, hi(z)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sum_is_bi_at_seven_tenths() {
        let (g, h) = scorer(0.7).unwrap();
        let bi = airy(0.7).unwrap().bi;
        assert!((g + h - bi).abs() < 1e-13 * bi);
    }

    #[test]
    fn hi_origin_matches_integral() {
        // (1/π)∫₀^∞ e^{−t³/3} dt = 3^{−2/3} Γ(1/3)/π, the same integral evaluated
        // in closed form
        let want = 3f64.powf(-2.0 / 3.0) * libm::tgamma(1.0 / 3.0) / PI;
        let oracle = adaptive_quad(|t| (-t * t * t / 3.0).exp(), 0.0, 8.0, &QuadratureSpec::default()).unwrap() / PI;
        assert!((oracle - want).abs() < 1e-12);
        let h = hi(0.0).unwrap();
        assert!((h - want).abs() < 1e-14);
        // Hi(0) = 2 Gi(0); the two Gi branches meet at the origin
        let g = gi(0.0).unwrap();
        assert!((h - 2.0 * g).abs() < 1e-14);
        assert!((gi(1e-12).unwrap() - g).abs() < 1e-11);
    }

    #[test]
    fn hi_satisfies_inhomogeneous_airy_equation() {
        let z = -2.0;
        let h = 1e-3;
        let d2 = (hi(z + h).unwrap() - 2.0 * hi(z).unwrap() + hi(z - h).unwrap()) / (h * h);
        assert!((d2 - z * hi(z).unwrap() - 1.0 / PI).abs() < 1e-6);
        // Gi″ − z Gi = −1/π
        let z = 2.5;
        let d2 = (gi(z + h).unwrap() - 2.0 * gi(z).unwrap() + gi(z - h).unwrap()) / (h * h);
        assert!((d2 - z * gi(z).unwrap() + 1.0 / PI).abs() < 1e-6);
    }

    #[test]
    fn large_argument_asymptotes() {
        // Gi(z) ~ 1/(πz) (1 + 2/z³ + …), Hi(−z) ~ 1/(πz) (1 − 2/z³ + …)
        let z = 50.0;
        let g = gi(z).unwrap();
        assert!((g * PI * z - (1.0 + 2.0 / z.powi(3))).abs() < 1e-8);
        let h = hi(-z).unwrap();
        assert!((h * PI * z - (1.0 - 2.0 / z.powi(3))).abs() < 1e-8);
        // Hi(z) e^{−ζ} → 1/(√π z^{1/4})
        let z = 557.0;
        let hs = hi_scaled(z).unwrap();
        assert!((hs * PI.sqrt() * z.powf(0.25) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn overflow_is_range_error() {
        assert!(matches!(hi(200.0), Err(Error::Range { .. })));
        assert!(hi_scaled(200.0).unwrap().is_finite());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn gi_plus_hi_is_bi(z in -10.0f64..5.0) {
            let (g, h) = scorer(z).unwrap();
            let bi = airy(z).unwrap().bi;
            prop_assert!((g + h - bi).abs() <= 1e-11 * bi.abs().max(1e-3));
        }
    }
}
