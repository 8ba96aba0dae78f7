//! Spherical Bessel functions j_l, y_l of integer order.

use crate::error::{Error, Result};

pub const L_MAX: u32 = 25;

/// (j_l(x), y_l(x)).
pub fn sph_bessel(l: u32, x: f64) -> Result<(f64, f64)> {
    if l > L_MAX || !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("sph_bessel", format!("l={l}, x={x}")));
    }
    Ok((sph_j(l, x), sph_y(l, x)))
}

/// j_l, y_l and their x-derivatives.
pub fn sph_bessel_with_derivatives(l: u32, x: f64) -> Result<[f64; 4]> {
    let (j, y) = sph_bessel(l, x)?;
    // f_l′ = f_{l−1} − (l+1) f_l / x, with f_{−1} from j_{−1} = cos x / x, y_{−1} = sin x / x
    let (jm, ym) = if l == 0 {
        (x.cos() / x, x.sin() / x)
    } else {
        sph_bessel(l - 1, x)?
    };
    let c = (l + 1) as f64 / x;
    Ok([j, y, jm - c * j, ym - c * y])
}

fn sph_j(l: u32, x: f64) -> f64 {
    let j0 = x.sin() / x;
    if l == 0 {
        return j0;
    }
    let j1 = (x.sin() / x - x.cos()) / x;
    if l == 1 {
        return j1;
    }
    let lf = l as f64;
    if x > lf {
        // upward recurrence is stable once x exceeds the order
        let (mut a, mut b) = (j0, j1);
        for n in 1..l {
            let c = (2 * n + 1) as f64 / x * b - a;
            a = b;
            b = c;
        }
        return b;
    }
    // Miller: downward from well above l, normalised to j0 or j1
    let start = l + 20 + (40.0 * lf).sqrt() as u32 + x as u32;
    let mut above = 0.0;
    let mut cur = 1e-300;
    let mut at_l = 0.0;
    let mut f1 = 0.0;
    let mut n = start;
    while n > 0 {
        let below = (2 * n + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        n -= 1;
        if n == l {
            at_l = cur;
        }
        if n == 1 {
            f1 = cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            at_l *= 1e-250;
            f1 *= 1e-250;
        }
    }
    let f0 = cur;
    if f0.abs() >= f1.abs() {
        at_l * (j0 / f0)
    } else {
        at_l * (j1 / f1)
    }
}

fn sph_y(l: u32, x: f64) -> f64 {
    let y0 = -x.cos() / x;
    if l == 0 {
        return y0;
    }
    let y1 = (-x.cos() / x - x.sin()) / x;
    let (mut a, mut b) = (y0, y1);
    for n in 1..l {
        let c = (2 * n + 1) as f64 / x * b - a;
        a = b;
        b = c;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn j_series(l: u32, x: f64) -> f64 {
        // j_l(x) = x^l / (2l+1)!! Σ (−x²/2)^k / (k! (2l+3)(2l+5)…(2l+2k+1))
        let mut df = 1.0;
        for n in 0..=l {
            df *= (2 * n + 1) as f64;
        }
        let mut term = x.powi(l as i32) / df;
        let mut sum = term;
        for k in 1..40 {
            term *= -0.5 * x * x / (k as f64 * (2 * l + 2 * k + 1) as f64);
            sum += term;
        }
        sum
    }

    #[test]
    fn j0_vanishes_at_pi() {
        let (j, y) = sph_bessel(0, PI).unwrap();
        assert!(j.abs() < 1e-16);
        assert_eq!(y, -PI.cos() / PI);
    }

    #[test]
    fn wronskian_l1_x2() {
        let [j, y, jp, yp] = sph_bessel_with_derivatives(1, 2.0).unwrap();
        assert!((j * yp - jp * y - 0.25).abs() < 1e-12);
    }

    #[test]
    fn l3_series() {
        let (j, _) = sph_bessel(3, 0.5).unwrap();
        let want = j_series(3, 0.5);
        assert!((j - want).abs() < 1e-12 * want.abs());
    }

    #[test]
    fn high_order_small_argument() {
        for &(l, x) in &[(10u32, 0.3), (25, 1.0), (25, 12.0), (7, 7.5)] {
            let (j, _) = sph_bessel(l, x).unwrap();
            let want = j_series(l, x);
            assert!((j - want).abs() < 1e-12 * want.abs(), "l={l} x={x}: {j} vs {want}");
            let [j, y, jp, yp] = sph_bessel_with_derivatives(l, x).unwrap();
            assert!(((j * yp - jp * y) * x * x - 1.0).abs() < 1e-11, "wronskian l={l} x={x}");
        }
    }

    #[test]
    fn domain() {
        assert!(sph_bessel(0, 0.0).is_err());
        assert!(sph_bessel(26, 1.0).is_err());
    }
}
