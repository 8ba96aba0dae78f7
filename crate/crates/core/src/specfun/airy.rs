//! Airy functions of real argument.
//!
//! Maclaurin series for |z| ≤ [`Z_SWITCH`]; beyond, the Bessel connection
//! formulas with Bessel functions of order 1/3 and 2/3. At the switch point
//! both paths agree to about 2e-15 relative.

use std::f64::consts::PI;

use super::bessel::{bessel_ik_scaled, bessel_jy};
use crate::error::{Error, Result};

pub const AI0: f64 = 0.355_028_053_887_817_239_26;
pub const AIP0: f64 = -0.258_819_403_792_806_798_41;
pub const BI0: f64 = 0.614_926_627_446_000_735_15;
pub const BIP0: f64 = 0.448_288_357_353_826_357_91;

const SQRT3: f64 = 1.732_050_807_568_877_2;
const ONOVRT: f64 = 0.577_350_269_189_625_8;

/// Series/Bessel switch point.
pub const Z_SWITCH: f64 = 1.5;

/// ζ = (2/3) z^{3/2} beyond which e^{ζ} overflows.
const ZETA_MAX: f64 = 709.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub ai_prime: f64,
    pub bi: f64,
    pub bi_prime: f64,
}

impl AiryPair {
    pub fn wronskian(&self) -> f64 {
        self.ai * self.bi_prime - self.ai_prime * self.bi
    }
}

/// ζ = (2/3)|z|^{3/2}.
pub fn zeta(z: f64) -> f64 {
    2.0 / 3.0 * z.abs() * z.abs().sqrt()
}

/// Largest z for which Bi(z) is representable.
pub fn bi_overflow_threshold() -> f64 {
    (1.5 * ZETA_MAX).powf(2.0 / 3.0)
}

fn maclaurin(z: f64) -> AiryPair {
    let z3 = z * z * z;
    let mut tf = 1.0;
    let mut tg = z;
    let (mut f, mut g) = (tf, tg);
    let (mut fp, mut gp) = (0.0, 1.0);
    for k in 1..60 {
        let k3 = 3.0 * k as f64;
        tf *= z3 / ((k3 - 1.0) * k3);
        tg *= z3 / (k3 * (k3 + 1.0));
        f += tf;
        g += tg;
        if z != 0.0 {
            fp += k3 * tf / z;
            gp += (k3 + 1.0) * tg / z;
        }
        if tf.abs() < 1e-18 * f.abs() && tg.abs() < 1e-18 * g.abs().max(1e-300) {
            break;
        }
    }
    let c1 = AI0;
    let c2 = -AIP0;
    AiryPair {
        ai: c1 * f - c2 * g,
        ai_prime: c1 * fp - c2 * gp,
        bi: SQRT3 * (c1 * f + c2 * g),
        bi_prime: SQRT3 * (c1 * fp + c2 * gp),
    }
}

fn check(z: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::domain("airy", format!("non-finite argument {z}")));
    }
    Ok(())
}

/// Ai, Ai′, Bi, Bi′ at real z. Errors when Bi overflows.
pub fn airy(z: f64) -> Result<AiryPair> {
    check(z)?;
    if z > 0.0 && zeta(z) > ZETA_MAX {
        return Err(Error::Range {
            op: "airy",
            threshold: bi_overflow_threshold(),
            arg: z,
        });
    }
    let s = airy_scaled(z)?;
    if z <= Z_SWITCH {
        return Ok(s);
    }
    let e = zeta(z).exp();
    Ok(AiryPair {
        ai: s.ai / e,
        ai_prime: s.ai_prime / e,
        bi: s.bi * e,
        bi_prime: s.bi_prime * e,
    })
}

/// Exponentially scaled Airy functions.
///
/// For z > [`Z_SWITCH`] returns Ai·e^{ζ}, Ai′·e^{ζ}, Bi·e^{−ζ}, Bi′·e^{−ζ}
/// with ζ = (2/3)z^{3/2}; elsewhere the plain values (use
/// [`airy_scale_exponent`] to tell which).
pub fn airy_scaled(z: f64) -> Result<AiryPair> {
    check(z)?;
    if z.abs() <= Z_SWITCH {
        return Ok(maclaurin(z));
    }
    let ax = z.abs();
    let rootx = ax.sqrt();
    let zt = zeta(z);
    if z > 0.0 {
        let b13 = bessel_ik_scaled(1.0 / 3.0, zt)?;
        let b23 = bessel_ik_scaled(2.0 / 3.0, zt)?;
        let damp = (-2.0 * zt).exp();
        Ok(AiryPair {
            ai: rootx * ONOVRT * b13.k / PI,
            bi: rootx * (b13.k * damp / PI + 2.0 * ONOVRT * b13.i),
            ai_prime: -z * ONOVRT * b23.k / PI,
            bi_prime: z * (b23.k * damp / PI + 2.0 * ONOVRT * b23.i),
        })
    } else {
        let b13 = bessel_jy(1.0 / 3.0, zt)?;
        let b23 = bessel_jy(2.0 / 3.0, zt)?;
        Ok(AiryPair {
            ai: 0.5 * rootx * (b13.j - ONOVRT * b13.y),
            bi: -0.5 * rootx * (b13.y + ONOVRT * b13.j),
            ai_prime: 0.5 * ax * (ONOVRT * b23.y + b23.j),
            bi_prime: 0.5 * ax * (ONOVRT * b23.j - b23.y),
        })
    }
}

/// The ζ used by [`airy_scaled`] at z (zero where no scaling is applied).
pub fn airy_scale_exponent(z: f64) -> f64 {
    if z > Z_SWITCH {
        zeta(z)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{adaptive_quad, QuadratureSpec};
    use proptest::prelude::*;

    const INV_PI: f64 = 1.0 / PI;

    // Independent oracle: Ai(z) = (1/π) Re[e^{iπ/6} ∫₀^∞ exp(−s³/3 + z s e^{2πi/3}) ds],
    // the standard oscillatory integral with its contour rotated by π/6.
    fn ai_quadrature(z: f64) -> f64 {
        let c = 3f64.sqrt() / 2.0;
        let spec = QuadratureSpec::default().with_rel_tol(1e-13);
        let f = |s: f64| (-s * s * s / 3.0 - 0.5 * z * s).exp() * (PI / 6.0 + c * z * s).cos();
        adaptive_quad(f, 0.0, 12.0, &spec).unwrap() / PI
    }

    #[test]
    fn origin_matches_forty_term_series() {
        // Ai(0) = 1/(3^{2/3} Γ(2/3)) is the constant term of the series
        let want = 1.0 / (3f64.powf(2.0 / 3.0) * libm::tgamma(2.0 / 3.0));
        let a = airy(0.0).unwrap();
        assert!((a.ai - want).abs() < 1e-15);
        let bp = 3f64.powf(1.0 / 6.0) / libm::tgamma(1.0 / 3.0);
        assert!((a.bi_prime - bp).abs() < 1e-15);
    }

    #[test]
    fn wronskian_at_one() {
        let a = airy(1.0).unwrap();
        assert!((a.wronskian() - INV_PI).abs() < 1e-15);
    }

    #[test]
    fn negative_five_against_quadrature() {
        let a = airy(-5.0).unwrap();
        assert!((a.ai - ai_quadrature(-5.0)).abs() < 1e-10);
    }

    #[test]
    fn quadrature_agreement_across_switch() {
        for &z in &[-8.0, -1.6, -1.4, 0.3, 1.4, 1.6, 4.0] {
            let a = airy(z).unwrap();
            assert!((a.ai - ai_quadrature(z)).abs() < 1e-12 * a.ai.abs().max(1e-2), "z={z}");
        }
    }

    #[test]
    fn both_paths_agree_at_switch() {
        let z = Z_SWITCH;
        let m = maclaurin(z);
        let e = zeta(z).exp();
        let ik13 = bessel_ik_scaled(1.0 / 3.0, zeta(z)).unwrap();
        let ai_b = z.sqrt() * ONOVRT * ik13.k / PI / e;
        assert!((m.ai - ai_b).abs() < 1e-14 * m.ai);
        let jy13 = bessel_jy(1.0 / 3.0, zeta(-z)).unwrap();
        let ai_neg = 0.5 * z.sqrt() * (jy13.j - ONOVRT * jy13.y);
        assert!((maclaurin(-z).ai - ai_neg).abs() < 1e-14);
    }

    #[test]
    fn scaled_large_argument() {
        // Ai(z)e^{ζ} → 1/(2√π z^{1/4}) (1 − 5/(72ζ) + …)
        let z = 557.0;
        let s = airy_scaled(z).unwrap();
        let zt = zeta(z);
        let lead = 0.5 / (PI.sqrt() * z.powf(0.25)) * (1.0 - 5.0 / (72.0 * zt));
        assert!((s.ai / lead - 1.0).abs() < 1e-7);
        let lead_bi = 1.0 / (PI.sqrt() * z.powf(0.25)) * (1.0 + 5.0 / (72.0 * zt));
        assert!((s.bi / lead_bi - 1.0).abs() < 1e-7);
    }

    #[test]
    fn bi_overflow_is_range_error() {
        let t = bi_overflow_threshold();
        assert!(airy(100.0).is_ok());
        match airy(t + 1.0) {
            Err(Error::Range { threshold, .. }) => assert_eq!(threshold, t),
            other => panic!("{other:?}"),
        }
        assert!(airy(f64::NAN).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn wronskian_holds(z in -12.0f64..8.0) {
            let a = airy(z).unwrap();
            prop_assert!((a.wronskian() * PI - 1.0).abs() < 1e-12);
        }
    }
}
