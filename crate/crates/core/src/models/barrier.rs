//! Rectangular barrier models: the leaky spherical well (s-waves) and twin
//! barriers on the line (even and odd parity).
//!
//! Both reduce to a defect of the form
//!   D = ±1 + c₁·(2mV0/κ)·I₁ + c₂·(2mV0/κ)·I₂,
//!   I₁ = ∫_a^b g(√(2kr/π)) e^{κ(a−r)} dr,  I₂ = ∫_a^b g(√(2kr/π)) e^{κ(r−a)} dr,
//! with k² = 2mE and κ² = 2m(V0 − E).

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::{EnergyRoot, Grid, Model, ModelSpec, Parity, SCAN_POINTS};
use crate::error::{Error, Result};
use crate::solver::{adaptive_quad, bracket_scan_par, first_extremum, refine_root, QuadratureSpec};
use crate::specfun::{dawson, fresnel_aux};
use crate::wave::{Piece, Piecewise, Profile, Region, Waveform};

const LEAKY_THRESHOLD: f64 = 120.0;
const TWIN_THRESHOLD: f64 = 248.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierIntegrals {
    pub i1: f64,
    pub i2: f64,
}

fn g_of(k: f64, r: f64) -> f64 {
    fresnel_aux((2.0 * k * r / PI).sqrt()).map(|a| a.g).unwrap_or(f64::NAN)
}

impl BarrierIntegrals {
    /// Both barrier integrals by adaptive quadrature.
    pub fn quadrature(k: f64, kappa: f64, a: f64, b: f64) -> Result<Self> {
        let spec = QuadratureSpec::default();
        let i1 = adaptive_quad(|r| g_of(k, r) * (kappa * (a - r)).exp(), a, b, &spec)?;
        let i2 = adaptive_quad(|r| g_of(k, r) * (kappa * (r - a)).exp(), a, b, &spec)?;
        Ok(Self { i1, i2 })
    }

    /// Both integrals through the closed form in terms of Fresnel, Dawson
    /// and error functions.
    pub fn closed_form(k: f64, kappa: f64, a: f64, b: f64) -> Result<Self> {
        // r = πz²/(2k) turns κr into γz² with γ = κπ/(2k), and dr into d(γz²)/κ
        let gamma = kappa * PI / (2.0 * k);
        let za = (2.0 * k * a / PI).sqrt();
        let zb = (2.0 * k * b / PI).sqrt();
        let i2 = (-kappa * a).exp() / kappa * closed_g_exp_integral(gamma, za, zb)?;
        let i1 = -(kappa * a).exp() / kappa * closed_g_exp_integral(-gamma, za, zb)?;
        Ok(Self { i1, i2 })
    }
}

/// ∫_{z0}^{z1} g(z) e^{γz²} d(γz²).
///
/// Antiderivative [1 + π²/(4γ²)]⁻¹·{[g − (π/2γ)f]e^{γz²} + ∫₀^z e^{γt²}dt},
/// the last term via Dawson's function (γ > 0) or erf (γ < 0). Tiny |γ|
/// falls back to direct quadrature of 2γ z g(z) e^{γz²}.
pub fn closed_g_exp_integral(gamma: f64, z0: f64, z1: f64) -> Result<f64> {
    if !gamma.is_finite() || !(z0 >= 0.0) || !(z1 >= z0) || !z1.is_finite() {
        return Err(Error::domain(
            "closed_g_exp_integral",
            format!("gamma={gamma}, z0={z0}, z1={z1}"),
        ));
    }
    if z0 == z1 {
        return Ok(0.0);
    }
    if gamma.abs() < 1e-14 {
        let spec = QuadratureSpec::default();
        return adaptive_quad(
            |z| {
                let g = fresnel_aux(z).map(|a| a.g).unwrap_or(f64::NAN);
                2.0 * gamma * z * g * (gamma * z * z).exp()
            },
            z0,
            z1,
            &spec,
        );
    }
    let alpha = 1.0 / (1.0 + PI * PI / (4.0 * gamma * gamma));
    let anti = |z: f64| -> Result<f64> {
        let aux = fresnel_aux(z)?;
        let e = (gamma * z * z).exp();
        let gauss = if gamma > 0.0 {
            let s = gamma.sqrt();
            e * dawson(s * z) / s
        } else {
            let s = (-gamma).sqrt();
            PI.sqrt() / (2.0 * s) * libm::erf(s * z)
        };
        Ok(alpha * ((aux.g - PI / (2.0 * gamma) * aux.f) * e + gauss))
    };
    Ok(anti(z1)? - anti(z0)?)
}

/// Mixing coefficient s of the barrier wave e^{−κr} + s·e^{κr}.
pub fn leaky_mixing(k: f64, kappa: f64, a: f64) -> Result<f64> {
    if !(k > 0.0) || !(kappa > 0.0) || !(a > 0.0) {
        return Err(Error::domain("leaky_mixing", format!("k={k}, kappa={kappa}, a={a}")));
    }
    let (s, c) = (k * a).sin_cos();
    let den = kappa * s - k * c;
    if den.abs() <= 1e-12 * (kappa + k) {
        return Err(Error::Degenerate {
            op: "leaky_mixing",
            detail: format!("kappa sin ka = k cos ka at ka={}", k * a),
        });
    }
    Ok((-2.0 * kappa * a).exp() * (kappa * s + k * c) / den)
}

struct Kinematics {
    k: f64,
    kappa: f64,
    v0: f64,
    a: f64,
    b: f64,
    m: f64,
}

fn kinematics(op: &'static str, spec: &ModelSpec, e: f64) -> Result<Kinematics> {
    let (v0, a, b) = spec
        .barrier_geometry()
        .ok_or_else(|| Error::Config(format!("{op}: expected a barrier model")))?;
    if !(e > 0.0) {
        return Err(Error::domain(op, format!("energy {e} must be > 0")));
    }
    if e >= v0 {
        return Err(Error::Regime {
            op,
            energy: e,
            detail: format!("requires E < V0 = {v0}"),
        });
    }
    let m = spec.mass();
    Ok(Kinematics {
        k: (2.0 * m * e).sqrt(),
        kappa: (2.0 * m * (v0 - e)).sqrt(),
        v0,
        a,
        b,
        m,
    })
}

fn energy_of_ka(spec: &ModelSpec, ka: f64) -> Result<f64> {
    let (_, a, _) = spec
        .barrier_geometry()
        .ok_or_else(|| Error::Config("expected a barrier model".into()))?;
    if !(ka > 0.0) {
        return Err(Error::domain("barrier defect", format!("ka={ka} must be > 0")));
    }
    let k = ka / a;
    Ok(k * k / (2.0 * spec.mass()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Form {
    /// 1 + [(κ/k)sin − cos]·… + [(κ/k)sin + cos]·…
    SWave,
    /// the same equation written with P = (sin − (k/κ)cos)/2, Q = (sin + (k/κ)cos)/2
    OddPq,
    /// −1 + [(κ/k)cos + sin]·… + [(κ/k)cos − sin]·…
    Even,
}

fn form_of(spec: &ModelSpec) -> Form {
    match spec.model {
        Model::TwinBarrier { parity: Parity::Even, .. } => Form::Even,
        Model::TwinBarrier { parity: Parity::Odd, .. } => Form::OddPq,
        _ => Form::SWave,
    }
}

/// (defect, magnitude of its largest term).
fn defect_terms(form: Form, spec: &ModelSpec, e: f64) -> Result<(f64, f64)> {
    let kin = kinematics("barrier defect", spec, e)?;
    let Kinematics { k, kappa, v0, a, b, m } = kin;
    let ints = BarrierIntegrals::quadrature(k, kappa, a, b)?;
    let (s, c) = (k * a).sin_cos();
    let (lead, t1, t2) = match form {
        Form::SWave => {
            let w = 2.0 * m * v0 / kappa;
            (1.0, (kappa / k * s - c) * w * ints.i1, (kappa / k * s + c) * w * ints.i2)
        }
        Form::OddPq => {
            let w = 2.0 * m * v0 / k * 2.0;
            let p = 0.5 * (s - k / kappa * c);
            let q = 0.5 * (s + k / kappa * c);
            (1.0, w * p * ints.i1, w * q * ints.i2)
        }
        Form::Even => {
            let w = 2.0 * m * v0 / kappa;
            (-1.0, (kappa / k * c + s) * w * ints.i1, (kappa / k * c - s) * w * ints.i2)
        }
    };
    let scale = 1f64.max(t1.abs()).max(t2.abs());
    Ok((lead + t1 + t2, scale))
}

/// Leaky-well defect at wave number ka; zero at a stationary quasibound state.
pub fn leaky_defect(ka: f64, spec: &ModelSpec) -> Result<f64> {
    if !matches!(spec.model, Model::LeakySphericalWell { .. }) {
        return Err(Error::Config("leaky_defect expects the leaky-sphere model".into()));
    }
    Ok(defect_terms(Form::SWave, spec, energy_of_ka(spec, ka)?)?.0)
}

/// Even-parity twin-barrier defect at ka.
pub fn twin_even_defect(ka: f64, spec: &ModelSpec) -> Result<f64> {
    if !matches!(spec.model, Model::TwinBarrier { .. }) {
        return Err(Error::Config("twin_even_defect expects the twin-barrier model".into()));
    }
    Ok(defect_terms(Form::Even, spec, energy_of_ka(spec, ka)?)?.0)
}

/// Odd-parity twin-barrier defect at ka.
pub fn twin_odd_defect(ka: f64, spec: &ModelSpec) -> Result<f64> {
    if !matches!(spec.model, Model::TwinBarrier { .. }) {
        return Err(Error::Config("twin_odd_defect expects the twin-barrier model".into()));
    }
    Ok(defect_terms(Form::OddPq, spec, energy_of_ka(spec, ka)?)?.0)
}

/// Twin-barrier defect for the parity carried by the spec.
pub fn twin_defect(ka: f64, spec: &ModelSpec) -> Result<f64> {
    match spec.model {
        Model::TwinBarrier { parity: Parity::Even, .. } => twin_even_defect(ka, spec),
        Model::TwinBarrier { parity: Parity::Odd, .. } => twin_odd_defect(ka, spec),
        _ => Err(Error::Config("twin_defect expects the twin-barrier model".into())),
    }
}

/// Open uniform ka-grid over (0, √(2mV0)·a), mapped to energies.
fn scan_energies(spec: &ModelSpec, n: usize) -> Vec<f64> {
    let (v0, _, _) = spec.barrier_geometry().expect("barrier model");
    (0..n)
        .map(|i| {
            let t = (i as f64 + 1.0) / (n as f64 + 1.0);
            v0 * t * t
        })
        .collect()
}

fn roots_with(spec: &ModelSpec, n: usize, refine: bool) -> Result<Vec<EnergyRoot>> {
    let (v0, _, _) = spec
        .barrier_geometry()
        .ok_or_else(|| Error::Config("expected a barrier model".into()))?;
    let form = form_of(spec);
    let f = |e: f64| defect_terms(form, spec, e).map(|t| t.0);
    let es = scan_energies(spec, n);
    let brackets = bracket_scan_par(f, &es)?;
    let mut out = Vec::with_capacity(brackets.len());
    for (i, br) in brackets.iter().enumerate() {
        let (energy, iterations) = if refine {
            let r = refine_root(f, br, 1e-12 * v0)?;
            (r.x, r.iterations)
        } else {
            (0.5 * (br.lo + br.hi), 0)
        };
        let (d, scale) = defect_terms(form, spec, energy)?;
        out.push(EnergyRoot {
            energy,
            bracket: (br.lo, br.hi),
            residual: d / scale,
            iterations,
            index: i + 1,
        });
    }
    Ok(out)
}

/// All stationary quasibound roots below V0, in increasing energy.
pub fn barrier_roots(spec: &ModelSpec) -> Result<Vec<EnergyRoot>> {
    roots_with(spec, SCAN_POINTS, true)
}

/// Bound levels of the closed well (b → ∞) below V0.
pub fn bound_reference(spec: &ModelSpec) -> Result<Vec<f64>> {
    let (v0, a, _) = spec
        .barrier_geometry()
        .ok_or_else(|| Error::Config("expected a barrier model".into()))?;
    let m = spec.mass();
    let even = form_of(spec) == Form::Even;
    // matching conditions multiplied through by k to stay finite at k → 0
    let f = move |e: f64| -> Result<f64> {
        let k = (2.0 * m * e).sqrt();
        let kappa = (2.0 * m * (v0 - e)).sqrt();
        let (s, c) = (k * a).sin_cos();
        Ok(if even { kappa * c - k * s } else { kappa * s + k * c })
    };
    let es = scan_energies(spec, SCAN_POINTS);
    let brackets = bracket_scan_par(f, &es)?;
    brackets
        .iter()
        .map(|br| refine_root(f, br, 1e-14 * v0).map(|r| r.x))
        .collect()
}

/// Critical barrier thickness in units of a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalWidth {
    /// From the thin-barrier bound.
    pub estimate: f64,
    /// Where the root count changes, by bisection to 1e-4.
    pub actual: f64,
}

fn thin_barrier_estimate(strength: f64, threshold: f64) -> f64 {
    let s = strength.sqrt();
    (threshold / s).asinh() / s
}

fn actual_width(base: &ModelSpec, needed: usize) -> Result<f64> {
    let count = |w: f64| -> Result<usize> { Ok(roots_with(&base.with_width(w)?, SCAN_POINTS, false)?.len()) };
    let mut lo = 0.05;
    if count(lo)? >= needed {
        return Err(Error::no_convergence("critical width", format!("already {needed} roots at w={lo}a")));
    }
    let mut hi = 1.0;
    while count(hi)? < needed {
        lo = hi;
        hi *= 2.0;
        if hi > 16.0 {
            return Err(Error::no_convergence("critical width", "root count never reached"));
        }
    }
    while hi - lo > 1e-4 {
        let mid = 0.5 * (lo + hi);
        if count(mid)? >= needed {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn cutoff(v0: f64, a: f64, m: f64, parity: Option<Parity>, threshold: f64, needed: usize) -> Result<CriticalWidth> {
    let strength = 2.0 * m * v0 * a * a;
    let base = ModelSpec::barrier(strength, a, 1.0, parity, super::PhysicalUnits::new(m)?)?;
    Ok(CriticalWidth {
        estimate: thin_barrier_estimate(strength, threshold),
        actual: actual_width(&base, needed)?,
    })
}

/// Leaky well: thinnest barrier that holds any stationary quasibound state.
pub fn leaky_cutoff(v0: f64, a: f64, m: f64) -> Result<CriticalWidth> {
    cutoff(v0, a, m, None, LEAKY_THRESHOLD, 1)
}

/// Twin barriers, even parity: thinnest barrier that holds a second state.
pub fn twin_cutoff(v0: f64, a: f64, m: f64) -> Result<CriticalWidth> {
    cutoff(v0, a, m, Some(Parity::Even), TWIN_THRESHOLD, 2)
}

/// First minimum of 2g(√(2x/π))·sin(x)/x: (x, value).
pub fn leaky_landmark() -> Result<(f64, f64)> {
    first_extremum(|x| Ok(2.0 * g_of(1.0, x) * x.sin() / x), 0.1, 12.0, SCAN_POINTS, false, 1e-10)
}

/// First maximum of 2g(√(2x/π))·cos(x)/x: (x, value).
pub fn twin_landmark() -> Result<(f64, f64)> {
    first_extremum(|x| Ok(2.0 * g_of(1.0, x) * x.cos() / x), 0.5, 12.0, SCAN_POINTS, true, 1e-10)
}

/// Interior standing wave, barrier exponentials, sinusoidal exterior.
pub(super) fn barrier_waveform(root: &EnergyRoot, spec: &ModelSpec, grid: &Grid) -> Result<Waveform> {
    let Kinematics { k, kappa, v0, a, b, m } = kinematics("model_waveform", spec, root.energy)?;
    let even = form_of(spec) == Form::Even;
    let (s, c) = (k * a).sin_cos();
    // (ψ, ψ′) at a from sin(kx) or cos(kx); two-coefficient matching avoids
    // the pole of the mixing ratio
    let (psi_a, dpsi_a, inner) = if even {
        (c, -k * s, Piece::Sinusoid { k, a_sin: 0.0, a_cos: 1.0 })
    } else {
        (s, k * c, Piece::Sinusoid { k, a_sin: 1.0, a_cos: 0.0 })
    };
    let decay = 0.5 * (psi_a - dpsi_a / kappa);
    let grow = 0.5 * (psi_a + dpsi_a / kappa);
    let barrier = Piece::Exponential { kappa, origin: a, decay, grow };
    let (psi_b, dpsi_b) = barrier.eval_with_slope(b)?;
    let (sb, cb) = (k * b).sin_cos();
    let outer = Piece::Sinusoid {
        k,
        a_sin: psi_b * sb + dpsi_b / k * cb,
        a_cos: psi_b * cb - dpsi_b / k * sb,
    };
    let wave = Piecewise::new(vec![
        Region { lo: 0.0, hi: a, piece: inner },
        Region { lo: a, hi: b, piece: barrier },
        Region { lo: b, hi: f64::INFINITY, piece: outer },
    ])?;
    let envelope = match bound_reference(spec)?
        .into_iter()
        .min_by(|x, y| (x - root.energy).abs().total_cmp(&(y - root.energy).abs()))
    {
        Some(eb) => {
            let kb = (2.0 * m * eb).sqrt();
            let kap = (2.0 * m * (v0 - eb)).sqrt();
            let (inner, edge) = if even {
                (Piece::Sinusoid { k: kb, a_sin: 0.0, a_cos: 1.0 }, (kb * a).cos())
            } else {
                // matched to the interior slope k at the origin
                let amp = k / kb;
                (Piece::Sinusoid { k: kb, a_sin: amp, a_cos: 0.0 }, amp * (kb * a).sin())
            };
            Some(Piecewise::new(vec![
                Region { lo: 0.0, hi: a, piece: inner },
                Region {
                    lo: a,
                    hi: f64::INFINITY,
                    piece: Piece::Exponential { kappa: kap, origin: a, decay: edge, grow: 0.0 },
                },
            ])?)
        }
        None => None,
    };
    let mut w = Waveform::new(wave, envelope, Profile::Steps { steps: vec![(a, b, v0)] }, vec![]);
    w.sample(&grid.points())?;
    Ok(w)
}

/// Root counts over a set of widths, in the given order.
pub fn root_count_scan(base: &ModelSpec, widths: &[f64]) -> Result<Vec<usize>> {
    widths
        .par_iter()
        .map(|&w| Ok(barrier_roots(&base.with_width(w)?)?.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::selection_apply;
    use crate::models::PhysicalUnits;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn energies(spec: &ModelSpec) -> Vec<f64> {
        barrier_roots(spec).unwrap().iter().map(|r| r.energy).collect()
    }

    #[test]
    fn mixing_at_quarter_period() {
        let (kappa, a) = (1.3, 0.8);
        let k = PI / 2.0 / a;
        let s = leaky_mixing(k, kappa, a).unwrap();
        assert!((s - (-2.0 * kappa * a).exp()).abs() < 1e-15);
    }

    #[test]
    fn mixing_matches_log_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let k = rng.gen_range(0.1..3.0);
            let kappa = rng.gen_range(0.1..3.0);
            let a = rng.gen_range(0.2..2.0);
            let Ok(s) = leaky_mixing(k, kappa, a) else { continue };
            // u = e^{−κr} + s e^{κr}: u′/u at a vs k cot(ka)
            let u = (-kappa * a).exp() + s * (kappa * a).exp();
            let du = kappa * (-(-kappa * a).exp() + s * (kappa * a).exp());
            let want = k / (k * a).tan();
            assert!((du / u - want).abs() < 1e-9 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn mixing_flags_degeneracy() {
        // κ sin ka = k cos ka when tan ka = k/κ
        let (k, kappa) = (1.0, 1.0);
        let a = PI / 4.0;
        assert!(matches!(leaky_mixing(k, kappa, a), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spec = QuadratureSpec::default().with_rel_tol(1e-12);
        for _ in 0..30 {
            let gamma: f64 = rng.gen_range(-5.0..5.0);
            if gamma.abs() < 0.05 {
                continue;
            }
            let z0: f64 = rng.gen_range(0.0..2.0);
            let z1 = z0 + rng.gen_range(0.0..1.5);
            let direct = adaptive_quad(
                |z| 2.0 * gamma * z * fresnel_aux(z).unwrap().g * (gamma * z * z).exp(),
                z0,
                z1,
                &spec,
            )
            .unwrap();
            let closed = closed_g_exp_integral(gamma, z0, z1).unwrap();
            assert!((closed - direct).abs() < 1e-9 * (1.0 + direct.abs()), "γ={gamma}: {closed} vs {direct}");
        }
        assert_eq!(closed_g_exp_integral(1.0, 0.7, 0.7).unwrap(), 0.0);
        assert!(closed_g_exp_integral(1e-16, 0.0, 1.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn closed_form_converges_for_negative_gamma() {
        let spec = QuadratureSpec::default().with_rel_tol(1e-12);
        let gamma = -0.8;
        let far = closed_g_exp_integral(gamma, 0.5, 60.0).unwrap();
        let trunc = adaptive_quad(
            |z| 2.0 * gamma * z * fresnel_aux(z).unwrap().g * (gamma * z * z).exp(),
            0.5,
            12.0,
            &spec,
        )
        .unwrap();
        assert!((far - trunc).abs() < 1e-10);
    }

    #[test]
    fn barrier_integrals_two_paths_agree() {
        let (k, kappa, a, b) = (1.0, 2.6, 3.0, 4.5);
        let q = BarrierIntegrals::quadrature(k, kappa, a, b).unwrap();
        let c = BarrierIntegrals::closed_form(k, kappa, a, b).unwrap();
        assert!((q.i1 - c.i1).abs() < 1e-9 * q.i1.abs());
        assert!((q.i2 - c.i2).abs() < 1e-9 * q.i2.abs());
    }

    #[test]
    fn leaky_reference_roots() {
        let e = energies(&ModelSpec::reference_leaky(0.5));
        assert_eq!(e.len(), 2, "{e:?}");
        assert!((e[0] - 1.067).abs() < 2e-3 && (e[1] - 2.331).abs() < 2e-3, "{e:?}");
    }

    #[test]
    fn residuals_are_small() {
        for spec in [ModelSpec::reference_leaky(0.5), ModelSpec::reference_twin(0.5, Parity::Even)] {
            for r in barrier_roots(&spec).unwrap() {
                assert!(r.residual.abs() <= 1e-10, "{r:?}");
                assert!(r.bracket.0 <= r.energy && r.energy <= r.bracket.1);
            }
        }
    }

    #[test]
    fn thin_leaky_barrier_has_no_roots() {
        assert!(energies(&ModelSpec::reference_leaky(0.3)).is_empty());
    }

    #[test]
    fn thick_barriers_merge_with_bound_levels() {
        for spec in [ModelSpec::reference_leaky(3.0), ModelSpec::reference_twin(3.0, Parity::Even)] {
            let e = energies(&spec);
            let (v0, a, b) = spec.barrier_geometry().unwrap();
            let bound = bound_reference(&spec).unwrap();
            // only levels deep enough that the barrier is opaque; near the
            // top the leaky spectrum gains extra roots of its own
            let deep: Vec<f64> = bound.into_iter().filter(|&eb| (v0 - eb).sqrt() * (b - a) >= 10.0).collect();
            assert!(deep.len() >= 2);
            for y in deep {
                let x = e.iter().copied().min_by(|p, q| (p - y).abs().total_cmp(&(q - y).abs())).unwrap();
                assert!((x - y).abs() < 1e-3 * y, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn odd_twin_equals_leaky() {
        for w in [0.5, 0.8] {
            let a = energies(&ModelSpec::reference_leaky(w));
            let b = energies(&ModelSpec::reference_twin(w, Parity::Odd));
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12, "{x} {y}");
            }
        }
    }

    #[test]
    fn even_twin_always_has_a_root() {
        assert!(!energies(&ModelSpec::reference_twin(0.05, Parity::Even)).is_empty());
    }

    #[test]
    fn bound_levels_increase_and_shallow_well_threshold() {
        let spec = ModelSpec::reference_leaky(0.5);
        let b = bound_reference(&spec).unwrap();
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        // √(2mV0a²) = 1.2 < π/2: an even level but no odd one
        let shallow_even = ModelSpec::barrier(1.44, 1.0, 1.0, Some(Parity::Even), PhysicalUnits::default()).unwrap();
        let shallow_odd = ModelSpec::barrier(1.44, 1.0, 1.0, Some(Parity::Odd), PhysicalUnits::default()).unwrap();
        assert_eq!(bound_reference(&shallow_even).unwrap().len(), 1);
        assert!(bound_reference(&shallow_odd).unwrap().is_empty());
    }

    /// Dense-scan oracle for the lowest odd bound level: sign change of
    /// κ sin ka + k cos ka located by plain bisection.
    #[test]
    fn lowest_bound_level_dense_scan() {
        let spec = ModelSpec::reference_leaky(0.5);
        let f = |e: f64| {
            let k = e.sqrt();
            let kappa = (8.0 - e).sqrt();
            kappa * (3.0 * k).sin() + k * (3.0 * k).cos()
        };
        let mut x0 = 1e-6;
        let h = 1e-4;
        while f(x0) * f(x0 + h) > 0.0 {
            x0 += h;
        }
        let (mut lo, mut hi) = (x0, x0 + h);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let b = bound_reference(&spec).unwrap();
        assert!((b[0] - lo).abs() < 1e-10);
        // thick-barrier leaky roots approach it
        let e = energies(&ModelSpec::reference_leaky(3.0));
        assert!((e[0] - lo).abs() < 1e-4);
    }

    #[test]
    fn landmarks() {
        let (x, v) = leaky_landmark().unwrap();
        assert!((x - 4.2149).abs() < 1e-3, "{x}");
        assert!((v * 120.0 + 1.0).abs() < 0.05, "{v}");
        let (x, v) = twin_landmark().unwrap();
        assert!((x - 5.90).abs() < 1e-2, "{x}");
        assert!((v * 248.0 - 1.0).abs() < 0.05, "{v}");
    }

    #[test]
    fn estimates() {
        let c = thin_barrier_estimate(72.0, LEAKY_THRESHOLD);
        assert!((c - 0.394).abs() < 0.01 * 0.394);
        let c = thin_barrier_estimate(72.0, TWIN_THRESHOLD);
        assert!((c - 0.480).abs() < 0.01 * 0.480);
    }

    #[test]
    fn regime_error_above_barrier() {
        let spec = ModelSpec::reference_leaky(0.5);
        // ka = √(2mV0)·a corresponds to E = V0
        let ka = (8.0f64).sqrt() * 3.0 * 1.01;
        assert!(matches!(leaky_defect(ka, &spec), Err(Error::Regime { .. })));
    }

    #[test]
    fn waveform_construction_and_selection() {
        for spec in [ModelSpec::reference_leaky(0.5), ModelSpec::reference_twin(0.5, Parity::Even)] {
            let grid = Grid::default_for(&spec);
            for r in barrier_roots(&spec).unwrap() {
                let w = barrier_waveform(&r, &spec, &grid).unwrap();
                let (dv, ds) = w.continuity_defects().unwrap();
                assert!(dv < 1e-9 && ds < 1e-9);
                let sel = selection_apply(spec.selection_class(), &w.wave).unwrap();
                assert!(sel.abs() < 1e-6, "{sel}");
            }
        }
    }

    #[test]
    fn leaky_ground_state_leaks_with_considerable_amplitude() {
        let spec = ModelSpec::reference_leaky(0.5);
        let r = barrier_roots(&spec).unwrap()[0];
        let grid = Grid::new(2001, 0.0, 20.0).unwrap();
        let w = barrier_waveform(&r, &spec, &grid).unwrap();
        let interior = w.samples.iter().filter(|s| s.x <= 3.0).map(|s| s.psi.abs()).fold(0.0, f64::max);
        let exterior = w.samples.iter().filter(|s| s.x >= 4.5).map(|s| s.psi.abs()).fold(0.0, f64::max);
        assert!(exterior > 0.2 * interior, "{exterior} {interior}");
        // interior has the shape of the lowest bound level: one sign, no node
        let inside: Vec<_> = w.samples.iter().filter(|s| s.x > 0.0 && s.x < 3.0).collect();
        assert!(inside.iter().all(|s| s.psi * s.envelope.unwrap() > 0.0));
    }

    #[test]
    fn thick_barrier_gap_is_exponential() {
        let widths = [1.0, 1.5, 2.0, 2.5];
        let pts: Vec<(f64, f64)> = widths
            .iter()
            .map(|&w| {
                let spec = ModelSpec::reference_leaky(w);
                let e = energies(&spec)[0];
                let eb = bound_reference(&spec).unwrap()[0];
                let kappa = (8.0 - eb).sqrt();
                (kappa * w * 3.0, (e - eb).abs().ln())
            })
            .collect();
        assert!(pts.windows(2).all(|p| p[1].1 < p[0].1));
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
        let r2 = sxy * sxy / (sxx * syy);
        assert!(r2 > 0.95, "R² = {r2}");
    }

    #[test]
    fn doubling_scan_density_finds_close_pairs() {
        // a coarse grid can step over a close pair of roots; doubling finds them
        let spec = ModelSpec::reference_twin(0.6, Parity::Even);
        let fine = roots_with(&spec, 4000, false).unwrap().len();
        let coarse = roots_with(&spec, 8, false).unwrap().len();
        assert!(fine >= coarse);
        assert_eq!(fine, roots_with(&spec, SCAN_POINTS, false).unwrap().len());
    }
}
