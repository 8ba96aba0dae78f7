//! Error function and Dawson's integral.
//!
//! erf comes from libm. The imaginary error function is only exposed as
//! D(x) = e^{−x²}·erfi(x)·√π/2 (Dawson's integral), computed by Rybicki's
//! method, which stays finite for every real x.

const H: f64 = 0.2;
const NMAX: usize = 24;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Dawson's integral D(x) = e^{−x²} ∫₀^x e^{t²} dt.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 0.2 {
        // D(x) = Σ (−2)^n x^{2n+1} / (2n+1)!!
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for n in 1..12 {
            term *= -2.0 * x2 / (2 * n + 1) as f64;
            sum += term;
        }
        return sum;
    }
    if ax > 1e4 {
        // D(x) ~ 1/(2x) (1 + 1/(2x²) + 3/(4x⁴))
        let y = 1.0 / (x * x);
        return 0.5 / x * (1.0 + 0.5 * y + 0.75 * y * y);
    }
    let n0 = 2.0 * (0.5 * ax / H + 0.5).floor();
    let xp = ax - n0 * H;
    let mut e1 = (2.0 * xp * H).exp();
    let e2 = e1 * e1;
    let mut d1 = n0 + 1.0;
    let mut d2 = d1 - 2.0;
    let mut sum = 0.0;
    for i in 0..NMAX {
        let c = (-((2 * i + 1) as f64 * H).powi(2)).exp();
        sum += c * (e1 / d1 + 1.0 / (d2 * e1));
        d1 += 2.0;
        d2 -= 2.0;
        e1 *= e2;
    }
    (FRAC_1_SQRT_PI * (-xp * xp).exp() * sum).copysign(x)
}

/// (erf(x), e^{−x²}·erfi(x)·√π/2).
pub fn dawson_erf(x: f64) -> (f64, f64) {
    (libm::erf(x), dawson(x))
}
