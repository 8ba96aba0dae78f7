//! Delta well −λδ(x) in a uniform field −Fx.

use std::f64::consts::PI;

use super::{EnergyRoot, Grid, Model, ModelSpec, SCAN_POINTS};
use crate::error::{Error, Result};
use crate::solver::{bracket_scan_par, refine_root};
use crate::specfun::airy::AI0;
use crate::specfun::{airy_scale_exponent, airy_scaled, gi, hi, hi_scaled, zeta};
use crate::wave::{Piece, Piecewise, Profile, Region, Waveform};

fn params(spec: &ModelSpec) -> Result<(f64, f64)> {
    match spec.model {
        Model::DeltaWellInField { lambda, force } => Ok((lambda, force)),
        _ => Err(Error::Config("expected the delta-field model".into())),
    }
}

fn hi_exponent(y: f64) -> f64 {
    if y > 0.0 {
        zeta(y)
    } else {
        0.0
    }
}

/// 1 − 2π√(κ|E_b|/F)·Hi(y)·Ai(y) with y = −κE/F and κ = (2mF)^{1/3}.
pub fn delta_defect(e: f64, spec: &ModelSpec) -> Result<f64> {
    let (_, force) = params(spec)?;
    let m = spec.mass();
    let e_b = spec.binding_energy().expect("delta model");
    let kappa = (2.0 * m * force).cbrt();
    let y = -kappa * e / force;
    // Hi·e^{−ζ_h}·Ai·e^{ζ_a}: the exponents cancel for y > 1.5
    let h = hi_scaled(y)?;
    let a = airy_scaled(y)?.ai;
    let prod = h * a * (hi_exponent(y) - airy_scale_exponent(y)).exp();
    Ok(1.0 - 2.0 * PI * (kappa * e_b.abs() / force).sqrt() * prod)
}

/// F_cr = (2π·Hi(0)·Ai(0))³·√(2m)·|E_b|^{3/2}.
pub fn delta_critical_force(e_b: f64, m: f64) -> Result<f64> {
    if !(e_b < 0.0) || !(m > 0.0) {
        return Err(Error::domain("delta_critical_force", format!("E_b={e_b}, m={m}")));
    }
    let c = 2.0 * PI * hi(0.0)? * AI0;
    Ok(c.powi(3) * (2.0 * m).sqrt() * e_b.abs().powf(1.5))
}

/// The stationary quasibound root with E < 0, if any.
///
/// The scan runs over E = −4|E_b|·t² with t uniform, which keeps grid
/// points close to E = 0 where the root goes as F → F_cr.
pub fn delta_solve(spec: &ModelSpec) -> Result<Vec<EnergyRoot>> {
    let e_b = spec.binding_energy().ok_or_else(|| Error::Config("expected the delta-field model".into()))?;
    let span = 4.0 * e_b.abs();
    let n = SCAN_POINTS;
    let es: Vec<f64> = (0..n)
        .rev()
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            -span * t * t
        })
        .collect();
    let f = |e: f64| delta_defect(e, spec);
    let brackets = bracket_scan_par(f, &es)?;
    let tol = 1e-14 * e_b.abs();
    let mut out = Vec::new();
    for (i, br) in brackets.iter().enumerate() {
        let r = refine_root(f, br, tol)?;
        out.push(EnergyRoot {
            energy: r.x,
            bracket: (br.lo, br.hi),
            residual: r.fx,
            iterations: r.iterations,
            index: i + 1,
        });
    }
    Ok(out)
}

/// ψ(x) ∝ G_E(x, 0), normalized so ψ(0) = √(mλ), with the field-free bound
/// state √(mλ)e^{−mλ|x|} as envelope.
pub fn delta_waveform(root: &EnergyRoot, spec: &ModelSpec, grid: &Grid) -> Result<Waveform> {
    let (lambda, force) = params(spec)?;
    let m = spec.mass();
    let e = root.energy;
    let kappa = (2.0 * m * force).cbrt();
    let shift = e / force;
    let y0 = -kappa * shift;
    let psi0 = (m * lambda).sqrt();
    let a = airy_scaled(y0)?;
    let za = airy_scale_exponent(y0);
    let hs = hi_scaled(y0)?;
    let zh = hi_exponent(y0);
    // x < 0: ψ0·Ai(u)/Ai(y0)
    let left = Piece::Airy {
        kappa,
        shift,
        c_ai: psi0 / a.ai,
        e_ai: za,
        c_bi: 0.0,
        e_bi: 0.0,
    };
    // x > 0: K[−Gi(y0)Ai(u) + Ai(y0)Bi(u)] with K = ψ0/(Hi(y0)Ai(y0))
    let right = Piece::Airy {
        kappa,
        shift,
        c_ai: -psi0 * gi(y0)? / (hs * a.ai),
        e_ai: za - zh,
        c_bi: psi0 / hs,
        e_bi: -zh,
    };
    let wave = Piecewise::new(vec![
        Region { lo: f64::NEG_INFINITY, hi: 0.0, piece: left },
        Region { lo: 0.0, hi: f64::INFINITY, piece: right },
    ])?;
    let ml = m * lambda;
    let envelope = Piecewise::new(vec![
        Region {
            lo: f64::NEG_INFINITY,
            hi: 0.0,
            piece: Piece::Exponential { kappa: ml, origin: 0.0, decay: 0.0, grow: psi0 },
        },
        Region {
            lo: 0.0,
            hi: f64::INFINITY,
            piece: Piece::Exponential { kappa: ml, origin: 0.0, decay: psi0, grow: 0.0 },
        },
    ])?;
    let mut w = Waveform::new(wave, Some(envelope), Profile::Field { force }, vec![0.0]);
    w.sample(&grid.points())?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::{selection_apply, GreensClass};
    use crate::specfun::airy;
    use crate::models::{envelope_deviation, PhysicalUnits};
    use crate::solver::{adaptive_quad, QuadratureSpec};

    fn plain_defect(e: f64, spec: &ModelSpec) -> Result<f64> {
        // unscaled evaluation, valid while Bi and Hi stay representable
        let (_, force) = params(spec)?;
        let m = spec.mass();
        let e_b = spec.binding_energy().expect("delta model");
        let kappa = (2.0 * m * force).cbrt();
        let y = -kappa * e / force;
        Ok(1.0 - 2.0 * PI * (kappa * e_b.abs() / force).sqrt() * hi(y)? * airy(y)?.ai)
    }

    fn spec(frac: f64) -> ModelSpec {
        ModelSpec::delta_from_binding(-1.0, frac, PhysicalUnits::default()).unwrap()
    }

    fn root(frac: f64) -> EnergyRoot {
        let r = delta_solve(&spec(frac)).unwrap();
        assert_eq!(r.len(), 1, "F/F_cr = {frac}");
        r[0]
    }

    #[test]
    fn critical_force_from_quadrature_oracles() {
        // Hi(0) and Ai(0) from their integral representations
        let q = QuadratureSpec::default().with_rel_tol(1e-13);
        let hi0 = adaptive_quad(|t| (-t * t * t / 3.0).exp(), 0.0, 9.0, &q).unwrap() / PI;
        // Ai(0) = 1/(3^{2/3}Γ(2/3)) independently of the series constant
        let ai0 = 1.0 / (3f64.powf(2.0 / 3.0) * libm::tgamma(2.0 / 3.0));
        let want = (2.0 * PI * hi0 * ai0).powi(3);
        let got = delta_critical_force(-1.0, 0.5).unwrap();
        assert!((got - want).abs() < 1e-12, "{got} {want}");
        assert!((got - 0.764_757_493_286_065_9).abs() < 1e-12);
        let ratio = delta_critical_force(-4.0, 0.5).unwrap() / got;
        assert!((ratio - 8.0).abs() < 1e-12);
    }

    #[test]
    fn existence_flips_at_critical_force() {
        assert_eq!(delta_solve(&spec(0.99)).unwrap().len(), 1);
        assert!(delta_solve(&spec(1.01)).unwrap().is_empty());
    }

    #[test]
    fn one_root_at_half_critical() {
        let r = root(0.5);
        assert!(r.energy < 0.0 && r.residual.abs() < 1e-10);
    }

    #[test]
    fn root_approaches_zero_monotonically() {
        let es: Vec<f64> = [0.9, 0.99, 0.999].iter().map(|&f| root(f).energy).collect();
        assert!(es[0] < es[1] && es[1] < es[2] && es[2] < 0.0, "{es:?}");
    }

    #[test]
    fn weak_field_limit() {
        let r = root(1e-4);
        assert!((r.energy + 1.0).abs() < 1e-6);
    }

    #[test]
    fn scaled_defect_matches_plain() {
        let s = spec(0.3);
        for &e in &[-2.0, -1.0, -0.3] {
            let a = delta_defect(e, &s).unwrap();
            let b = plain_defect(e, &s).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn leading_shift_scales_as_field_squared() {
        let fracs = [1e-3f64, 2e-3, 5e-3, 1e-2];
        let pts: Vec<(f64, f64)> = fracs
            .iter()
            .map(|&f| (f.ln(), (root(f).energy + 1.0).abs().ln()))
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let slope = sxy / sxx;
        assert!((slope - 2.0).abs() < 0.1, "slope {slope}");
    }

    #[test]
    fn waveform_construction() {
        let s = spec(0.1);
        let r = root(0.1);
        let g = Grid::new(401, -4.0, 4.0).unwrap();
        let w = delta_waveform(&r, &s, &g).unwrap();
        let (dv, ds) = w.continuity_defects().unwrap();
        assert!(dv < 1e-9 && ds < 1e-9);
        let psi0 = w.wave.eval(0.0).unwrap();
        assert!((psi0 - (0.5f64 * 2.0).sqrt()).abs() < 1e-12);
        // slope jump −2mλψ(0)
        let (_, sl) = w.wave.regions[0].piece.eval_with_slope(0.0).unwrap();
        let (_, sr) = w.wave.regions[1].piece.eval_with_slope(0.0).unwrap();
        assert!((sr - sl + 2.0 * 0.5 * 2.0 * psi0).abs() < 1e-8);
        let sel = selection_apply(GreensClass::UniformField, &w.wave).unwrap();
        assert!(sel.abs() < 1e-7, "{sel}");
    }

    #[test]
    fn envelope_agreement_depends_on_field() {
        let g = Grid::new(801, -2.0, 2.0).unwrap();
        let weak = delta_waveform(&root(0.1), &spec(0.1), &g).unwrap();
        let strong = delta_waveform(&root(0.9), &spec(0.9), &g).unwrap();
        // mλ = 1 here
        assert!(envelope_deviation(&weak, 2.0) < 0.05);
        assert!(envelope_deviation(&strong, 2.0) > 0.30);
    }
}
