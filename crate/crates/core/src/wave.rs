//! Piecewise closed-form waves.
//!
//! A [`Piecewise`] is an ordered list of contiguous regions, each carrying an
//! analytic expression (sinusoid, exponential pair or Airy combination). The
//! representation keeps selection integrals exact on unbounded regions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver::{adaptive_quad, QuadratureSpec};
use crate::specfun::{airy_scale_exponent, airy_scaled, zeta};

/// Closed-form expression on one region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    /// a_sin·sin(kx) + a_cos·cos(kx), x global.
    Sinusoid { k: f64, a_sin: f64, a_cos: f64 },
    /// decay·e^{−κ(x−origin)} + grow·e^{κ(x−origin)}.
    Exponential {
        kappa: f64,
        origin: f64,
        decay: f64,
        grow: f64,
    },
    /// c_ai·e^{e_ai}·Ai(u) + c_bi·e^{e_bi}·Bi(u) with u = −κ(x + shift).
    ///
    /// The exponents carry magnitudes that would over- or underflow.
    Airy {
        kappa: f64,
        shift: f64,
        c_ai: f64,
        e_ai: f64,
        c_bi: f64,
        e_bi: f64,
    },
}

fn scaled_term(c: f64, e: f64, v: f64) -> f64 {
    if c == 0.0 || v == 0.0 {
        0.0
    } else {
        c * v * e.exp()
    }
}

impl Piece {
    /// (ψ, ψ′) at x.
    pub fn eval_with_slope(&self, x: f64) -> Result<(f64, f64)> {
        match *self {
            Piece::Sinusoid { k, a_sin, a_cos } => {
                let (s, c) = (k * x).sin_cos();
                Ok((a_sin * s + a_cos * c, k * (a_sin * c - a_cos * s)))
            }
            Piece::Exponential {
                kappa,
                origin,
                decay,
                grow,
            } => {
                let t = kappa * (x - origin);
                let d = if decay == 0.0 { 0.0 } else { decay * (-t).exp() };
                let g = if grow == 0.0 { 0.0 } else { grow * t.exp() };
                Ok((d + g, kappa * (g - d)))
            }
            Piece::Airy {
                kappa,
                shift,
                c_ai,
                e_ai,
                c_bi,
                e_bi,
            } => {
                let u = -kappa * (x + shift);
                let a = airy_scaled(u)?;
                let zs = airy_scale_exponent(u);
                let v = scaled_term(c_ai, e_ai - zs, a.ai) + scaled_term(c_bi, e_bi + zs, a.bi);
                let d = scaled_term(c_ai, e_ai - zs, a.ai_prime) + scaled_term(c_bi, e_bi + zs, a.bi_prime);
                Ok((v, -kappa * d))
            }
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.eval_with_slope(x)?.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub lo: f64,
    pub hi: f64,
    pub piece: Piece,
}

/// Contiguous regions covering `[regions[0].lo, regions[last].hi]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Piecewise {
    pub regions: Vec<Region>,
}

impl Piecewise {
    pub fn new(regions: Vec<Region>) -> Result<Self> {
        if regions.is_empty() {
            return Err(Error::Contract("piecewise wave needs at least one region".into()));
        }
        for r in &regions {
            if !(r.lo < r.hi) || r.lo.is_nan() || r.hi.is_nan() {
                return Err(Error::Contract(format!("empty region [{}, {}]", r.lo, r.hi)));
            }
        }
        for w in regions.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(Error::Contract(format!(
                    "regions not contiguous at {} / {}",
                    w[0].hi, w[1].lo
                )));
            }
        }
        Ok(Self { regions })
    }

    pub fn lo(&self) -> f64 {
        self.regions[0].lo
    }

    pub fn hi(&self) -> f64 {
        self.regions[self.regions.len() - 1].hi
    }

    /// Interior breakpoints.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.regions[1..].iter().map(|r| r.lo).collect()
    }

    fn region_at(&self, x: f64) -> Option<&Region> {
        // right-continuous: a breakpoint belongs to the region it starts
        self.regions
            .iter()
            .rev()
            .find(|r| r.lo <= x && x <= r.hi)
    }

    pub fn eval_with_slope(&self, x: f64) -> Result<(f64, f64)> {
        match self.region_at(x) {
            Some(r) => r.piece.eval_with_slope(x),
            None => Err(Error::domain("wave", format!("x={x} outside [{}, {}]", self.lo(), self.hi()))),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.eval_with_slope(x)?.0)
    }

    /// Largest jumps of ψ and ψ′ across the breakpoints, skipping slope jumps
    /// at the listed points.
    pub fn continuity_defects(&self, kinks: &[f64]) -> Result<(f64, f64)> {
        let mut dv: f64 = 0.0;
        let mut ds: f64 = 0.0;
        for w in self.regions.windows(2) {
            let x = w[0].hi;
            let (v0, s0) = w[0].piece.eval_with_slope(x)?;
            let (v1, s1) = w[1].piece.eval_with_slope(x)?;
            let scale = v0.abs().max(v1.abs()).max(1.0);
            dv = dv.max((v1 - v0).abs() / scale);
            if !kinks.contains(&x) {
                let sscale = s0.abs().max(s1.abs()).max(1.0);
                ds = ds.max((s1 - s0).abs() / sscale);
            }
        }
        Ok((dv, ds))
    }
}

/// ∫_{u0}^∞ Ai(u) du as (q, Z) with value q·e^{−Z}.
pub(crate) fn ai_upper_integral(u0: f64) -> Result<(f64, f64)> {
    let spec = QuadratureSpec::default().with_rel_tol(1e-13).with_abs_tol(1e-300);
    let scaled_from = |u_start: f64, z_ref: f64| -> Result<f64> {
        // integrand Ai_s(u)·e^{Z − ζ_s(u)} decays past ζ(u) = Z + 45
        let u_end = (1.5 * (z_ref + 45.0)).powf(2.0 / 3.0);
        adaptive_quad(
            |u| {
                let a = airy_scaled(u).map(|a| a.ai).unwrap_or(f64::NAN);
                a * (z_ref - airy_scale_exponent(u)).exp()
            },
            u_start,
            u_end.max(u_start),
            &spec,
        )
    };
    if u0 > 1.5 {
        let z = zeta(u0);
        return Ok((scaled_from(u0, z)?, z));
    }
    let z15 = zeta(1.5);
    let tail = scaled_from(1.5, z15)? * (-z15).exp();
    let mut body = 0.0;
    // unit panels keep the oscillations resolved for negative u0
    let mut x = u0;
    while x < 1.5 {
        let next = (x + 1.0).min(1.5);
        body += adaptive_quad(|u| airy_scaled(u).map(|a| a.ai).unwrap_or(f64::NAN), x, next, &spec)?;
        x = next;
    }
    Ok((body + tail, 0.0))
}

/// ∫_{−∞}^{u0} Bi(u) du as (q, Z) with value q·e^{Z}; uses ∫_{−∞}^0 Bi = 0.
pub(crate) fn bi_lower_integral(u0: f64) -> Result<(f64, f64)> {
    let spec = QuadratureSpec::default().with_rel_tol(1e-13).with_abs_tol(1e-300);
    let z = airy_scale_exponent(u0);
    let f = |u: f64| {
        let b = airy_scaled(u).map(|a| a.bi).unwrap_or(f64::NAN);
        b * (airy_scale_exponent(u) - z).exp()
    };
    if u0 <= 0.0 {
        let mut acc = 0.0;
        let mut x = u0;
        while x < 0.0 {
            let next = (x + 1.0).min(0.0);
            acc -= adaptive_quad(f, x, next, &spec)?;
            x = next;
        }
        return Ok((acc, 0.0));
    }
    let u_lo = if z > 45.0 {
        (1.5 * (z - 45.0)).powf(2.0 / 3.0)
    } else {
        0.0
    };
    let mut pts = vec![u_lo];
    if u_lo < 1.5 && u0 > 1.5 {
        pts.push(1.5);
    }
    pts.push(u0);
    let mut acc = 0.0;
    for w in pts.windows(2) {
        acc += adaptive_quad(f, w[0], w[1], &spec)?;
    }
    Ok((acc, z))
}

impl Piece {
    /// ∫ψ dx over [lo, hi], either end possibly infinite.
    pub fn integral(&self, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<f64> {
        if lo.is_finite() && hi.is_finite() {
            return adaptive_quad(|x| self.eval(x).unwrap_or(f64::NAN), lo, hi, spec);
        }
        match *self {
            Piece::Airy {
                kappa,
                shift,
                c_ai,
                e_ai,
                c_bi,
                e_bi,
            } => {
                if lo.is_finite() {
                    // x ∈ [lo, ∞) ↦ u ∈ (−∞, u0]
                    let u0 = -kappa * (lo + shift);
                    let (qa, za) = ai_upper_integral(u0)?;
                    let ai_part = if c_ai == 0.0 {
                        0.0
                    } else {
                        c_ai * e_ai.exp() - c_ai * qa * (e_ai - za).exp()
                    };
                    let bi_part = if c_bi == 0.0 {
                        0.0
                    } else {
                        let (qb, zb) = bi_lower_integral(u0)?;
                        c_bi * qb * (e_bi + zb).exp()
                    };
                    Ok((ai_part + bi_part) / kappa)
                } else if hi.is_finite() {
                    if c_bi != 0.0 {
                        return Err(Error::Contract("Bi component diverges on a left tail".into()));
                    }
                    let u0 = -kappa * (hi + shift);
                    let (qa, za) = ai_upper_integral(u0)?;
                    Ok(c_ai * qa * (e_ai - za).exp() / kappa)
                } else {
                    Err(Error::Contract("doubly infinite region".into()))
                }
            }
            Piece::Exponential {
                kappa,
                origin,
                decay,
                grow,
            } => {
                if lo.is_finite() && grow == 0.0 {
                    Ok(decay * (-kappa * (lo - origin)).exp() / kappa)
                } else if hi.is_finite() && decay == 0.0 {
                    Ok(grow * (kappa * (hi - origin)).exp() / kappa)
                } else {
                    Err(Error::Contract("exponential tail grows".into()))
                }
            }
            Piece::Sinusoid { .. } => Err(Error::Contract(
                "plain integral of a sinusoidal tail does not converge".into(),
            )),
        }
    }
}

/// A sampled point of a [`Waveform`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub x: f64,
    pub psi: f64,
    pub envelope: Option<f64>,
    pub potential: f64,
}

/// Potential profile used for the `potential` column.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    /// −F·x, with a delta well at the origin (not sampled).
    Field { force: f64 },
    /// Constant `value` on each `[lo, hi]`, zero elsewhere.
    Steps { steps: Vec<(f64, f64, f64)> },
}

impl Profile {
    pub fn at(&self, x: f64) -> f64 {
        match self {
            Profile::Field { force } => -force * x,
            Profile::Steps { steps } => steps
                .iter()
                .find(|(lo, hi, _)| *lo <= x && x <= *hi)
                .map(|s| s.2)
                .unwrap_or(0.0),
        }
    }
}

/// A wave with its reference envelope and samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Waveform {
    pub wave: Piecewise,
    pub envelope: Option<Piecewise>,
    pub profile: Profile,
    /// Points where the slope legitimately jumps (delta potentials).
    pub kinks: Vec<f64>,
    pub samples: Vec<Sample>,
}

impl Waveform {
    pub fn new(wave: Piecewise, envelope: Option<Piecewise>, profile: Profile, kinks: Vec<f64>) -> Self {
        Self {
            wave,
            envelope,
            profile,
            kinks,
            samples: Vec::new(),
        }
    }

    /// Fills `samples` at the given abscissae.
    pub fn sample(&mut self, xs: &[f64]) -> Result<()> {
        let mut out = Vec::with_capacity(xs.len());
        for &x in xs {
            let env = match &self.envelope {
                Some(e) => Some(e.eval(x)?),
                None => None,
            };
            out.push(Sample {
                x,
                psi: self.wave.eval(x)?,
                envelope: env,
                potential: self.profile.at(x),
            });
        }
        self.samples = out;
        Ok(())
    }

    pub fn continuity_defects(&self) -> Result<(f64, f64)> {
        self.wave.continuity_defects(&self.kinks)
    }
}
