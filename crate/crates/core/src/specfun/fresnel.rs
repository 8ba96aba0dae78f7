//! Fresnel auxiliary functions f and g.
//!
//! With θ = πz²/2:
//!   C(z) = 1/2 + f sin θ − g cos θ,   S(z) = 1/2 − f cos θ − g sin θ.
//! Power series for C, S up to z = 1.5, then the complex continued fraction
//! for the complementary integral, which yields g + i f directly.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XMIN: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelAux {
    pub f: f64,
    pub g: f64,
}

/// Fresnel integrals C(z), S(z) by their ascending series, |z| ≤ 1.5.
fn fresnel_series(z: f64) -> (f64, f64) {
    let t = 0.5 * PI * z * z;
    let t2 = t * t;
    // C = Σ (−1)^n t^{2n} z / ((2n)! (4n+1)), S = Σ (−1)^n t^{2n+1} z / ((2n+1)! (4n+3))
    let mut c = 0.0;
    let mut s = 0.0;
    let mut pc = z;
    let mut ps = z * t;
    for n in 0..40 {
        let nf = n as f64;
        c += pc / (4.0 * nf + 1.0);
        s += ps / (4.0 * nf + 3.0);
        pc *= -t2 / ((2.0 * nf + 1.0) * (2.0 * nf + 2.0));
        ps *= -t2 / ((2.0 * nf + 2.0) * (2.0 * nf + 3.0));
        if pc.abs() < 1e-18 * c.abs() && ps.abs() < 1e-18 * s.abs().max(1e-300) {
            break;
        }
    }
    (c, s)
}

/// g + i f from the continued fraction (z > 1.5).
fn aux_continued_fraction(z: f64) -> Result<Complex64> {
    let tiny = f64::MIN_POSITIVE / f64::EPSILON;
    let mut b = Complex64::new(1.0, -PI * z * z);
    let mut cc = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0;
    for _ in 0..200 {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = (a * d + b).inv();
        cc = b + a / cc;
        let del = cc * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() <= f64::EPSILON {
            h *= Complex64::new(z, -z);
            // ∫_z^∞ e^{iπt²/2} dt = (1+i)/2 · e^{iθ} h = e^{iθ}(g + i f)
            return Ok(Complex64::new(0.5, 0.5) * h);
        }
    }
    Err(Error::no_convergence("fresnel_aux", format!("continued fraction at z={z}")))
}

/// f(z), g(z) for z ≥ 0.
pub fn fresnel_aux(z: f64) -> Result<FresnelAux> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain("fresnel_aux", format!("z={z} must be finite and >= 0")));
    }
    if z <= XMIN {
        let (c, s) = fresnel_series(z);
        let th = 0.5 * PI * z * z;
        let (sn, cs) = th.sin_cos();
        let u = 0.5 - c;
        let v = 0.5 - s;
        return Ok(FresnelAux {
            g: u * cs + v * sn,
            f: v * cs - u * sn,
        });
    }
    let w = aux_continued_fraction(z)?;
    Ok(FresnelAux { g: w.re, f: w.im })
}

/// Fresnel integrals (C(z), S(z)) for z ≥ 0.
pub fn fresnel_cs(z: f64) -> Result<(f64, f64)> {
    let a = fresnel_aux(z)?;
    let (sn, cs) = (0.5 * PI * z * z).sin_cos();
    Ok((0.5 + a.f * sn - a.g * cs, 0.5 - a.f * cs - a.g * sn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{adaptive_quad, QuadratureSpec};
    use proptest::prelude::*;

    #[test]
    fn origin_values() {
        let a = fresnel_aux(0.0).unwrap();
        assert_eq!(a.g, 0.5);
        assert_eq!(a.f, 0.5);
    }

    #[test]
    fn decays_at_large_argument() {
        let a = fresnel_aux(50.0).unwrap();
        let b = fresnel_aux(50.5).unwrap();
        assert!(a.g < 1e-2 && b.g < a.g);
        // f ~ 1/(πz), g ~ 1/(π² z³)
        assert!((a.f * PI * 50.0 - 1.0).abs() < 1e-5);
        assert!((a.g * PI * PI * 50f64.powi(3) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn g_at_one_from_cosine_tail() {
        // ∫_x^∞ cos(u − x)/√u du = √(2π) g(√(2x/π)); x = π/2 gives z = 1.
        // The path u = x + is turns the oscillatory tail into a damped one.
        let x = PI / 2.0;
        let spec = QuadratureSpec::default().with_rel_tol(1e-13);
        let integrand = |s: f64| (Complex64::i() * (-s).exp() / Complex64::new(x, s).sqrt()).re;
        let tail = adaptive_quad(integrand, 0.0, 60.0, &spec).unwrap();
        let want = (2.0 * PI).sqrt() * fresnel_aux(1.0).unwrap().g;
        assert!((tail - want).abs() < 1e-12, "{tail} vs {want}");
        let (c, s) = fresnel_cs(1.0).unwrap();
        assert!((c - 0.779_893_400_376_822_8).abs() < 1e-14);
        assert!((s - 0.438_259_147_390_354_8).abs() < 1e-14);
    }

    #[test]
    fn laplace_representation() {
        // g(z) = (1/π√2) ∫₀^∞ e^{−πz²t/2} √t/(1+t²) dt, and f with 1/√t
        let spec = QuadratureSpec::default().with_rel_tol(1e-12);
        for &z in &[0.3, 1.2, 1.7, 4.0] {
            let a = fresnel_aux(z).unwrap();
            let k = 0.5 * PI * z * z;
            let gq = adaptive_quad(|s: f64| 2.0 * s * s * (-k * s * s).exp() / (1.0 + s.powi(4)), 0.0, 40.0, &spec).unwrap();
            let fq = adaptive_quad(|s: f64| 2.0 * (-k * s * s).exp() / (1.0 + s.powi(4)), 0.0, 40.0, &spec).unwrap();
            let c = 1.0 / (PI * 2f64.sqrt());
            assert!((a.g - c * gq).abs() < 1e-12, "g z={z}");
            assert!((a.f - c * fq).abs() < 1e-12, "f z={z}");
        }
    }

    #[test]
    fn branches_agree_at_switch() {
        let z = XMIN;
        let (c, s) = fresnel_series(z);
        let w = aux_continued_fraction(z).unwrap();
        let (sn, cs) = (0.5 * PI * z * z).sin_cos();
        assert!((0.5 + w.im * sn - w.re * cs - c).abs() < 1e-14);
        assert!((0.5 - w.im * cs - w.re * sn - s).abs() < 1e-14);
    }

    #[test]
    fn negative_is_domain_error() {
        assert!(matches!(fresnel_aux(-0.1), Err(Error::Domain { .. })));
    }

    proptest! {
        #[test]
        fn g_nonincreasing(a in 0.0f64..100.0, b in 0.0f64..100.0) {
            let (z1, z2) = if a < b { (a, b) } else { (b, a) };
            let g1 = fresnel_aux(z1).unwrap().g;
            let g2 = fresnel_aux(z2).unwrap().g;
            prop_assert!(g1 >= g2);
            prop_assert!((0.0..=0.5).contains(&g1));
        }
    }
}
