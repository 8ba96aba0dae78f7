//! Globally adaptive 21-point Gauss–Kronrod quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_614_000,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights, paired with the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Hard cap on live subintervals, independent of `max_depth`.
const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-14,
            max_depth: 50,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_depth: u32) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_depth,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain(
                "adaptive_quad",
                "tolerances must be positive",
            ));
        }
        if self.max_depth < 10 {
            return Err(Error::domain("adaptive_quad", "max_depth must be >= 10"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // roundoff floor of `error`; segments at the floor cannot improve
    floor: f64,
    depth: u32,
}

impl Segment {
    fn reducible(&self) -> f64 {
        (self.error - self.floor).max(0.0)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation {
                op: "adaptive_quad",
                location: x,
            })
        }
    };

    let fc = eval(center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let err = rescale_error(
        (res_k - res_g) * half,
        res_abs * half.abs(),
        res_asc * half.abs(),
    );
    let floor = 50.0 * f64::EPSILON * res_abs * half.abs();
    Ok((value, err, floor))
}

/// Integrates `f` over `[a, b]` to within `max(rel_tol·|I|, abs_tol)`.
///
/// The interval with the largest error estimate is bisected until the
/// summed estimate meets the tolerance. A subinterval that would need to be
/// split beyond `max_depth` halvings aborts with a non-convergence error
/// naming that subinterval.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("adaptive_quad", "limits must be finite"));
    }
    if a > b {
        return Err(Error::domain("adaptive_quad", format!("a={a} > b={b}")));
    }
    if a == b {
        return Ok(0.0);
    }

    let (v, e, fl) = gk21(&f, a, b)?;
    let mut segments = vec![Segment {
        a,
        b,
        value: v,
        error: e,
        floor: fl,
        depth: 0,
    }];

    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        // error beyond what roundoff permits
        let error: f64 = segments.iter().map(Segment::reducible).sum();
        let tol = (spec.rel_tol * total.abs()).max(spec.abs_tol);
        if error <= tol {
            return Ok(total);
        }

        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.reducible().total_cmp(&y.1.reducible()))
            .map(|(i, _)| i)
            .expect("at least one segment");
        let seg = segments[worst];
        let mid = 0.5 * (seg.a + seg.b);
        if seg.depth >= spec.max_depth || mid <= seg.a || mid >= seg.b || segments.len() >= MAX_INTERVALS {
            return Err(Error::no_convergence(
                "adaptive_quad",
                format!(
                    "worst subinterval [{:e}, {:e}] has error {:e} against tolerance {:e}",
                    seg.a, seg.b, seg.error, tol
                ),
            ));
        }
        let (v1, e1, f1) = gk21(&f, seg.a, mid)?;
        let (v2, e2, f2) = gk21(&f, mid, seg.b)?;
        segments[worst] = Segment {
            a: seg.a,
            b: mid,
            value: v1,
            error: e1,
            floor: f1,
            depth: seg.depth + 1,
        };
        segments.push(Segment {
            a: mid,
            b: seg.b,
            value: v2,
            error: e2,
            floor: f2,
            depth: seg.depth + 1,
        });
    }
}

/// Integrates over consecutive panels `[p0, p1], [p1, p2], …`, each to the
/// same relative tolerance. Useful when the integrand has known kinks or
/// peaks at the panel edges.
pub fn adaptive_quad_panels<F: Fn(f64) -> f64>(f: F, points: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    points
        .windows(2)
        .map(|w| adaptive_quad(&f, w[0], w[1], spec))
        .sum()
}

/// ∫_a^b f(x)/√(x - a) dx via x = a + s², removing the endpoint singularity.
pub fn quad_inverse_sqrt<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if b < a {
        return Err(Error::domain("quad_inverse_sqrt", "b < a"));
    }
    let s_max = (b - a).sqrt();
    adaptive_quad(|s| 2.0 * f(a + s * s), 0.0, s_max, spec)
}
