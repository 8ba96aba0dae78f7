//! Complex-energy S-matrix poles of the piecewise-constant barrier models.
//!
//! Layers: V = 0 on [0, a), V0 on [a, b], V = 0 beyond. The interior
//! solution is regular at the origin (sin for odd, cos for even), the
//! exterior one purely outgoing e^{ikr}.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{Model, ModelSpec, Parity, SCAN_POINTS};
use crate::solver::complex_secant;

/// Pole acceptance threshold on |D|.
pub const POLE_RESIDUAL: f64 = 1e-10;
const SECANT_TOL: f64 = 1e-13;
const DEDUPE: f64 = 1e-6;

/// A resonance E_r + iE_i, E_i < 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexPole {
    pub e_r: f64,
    pub e_i: f64,
    /// |D| at the pole.
    pub residual: f64,
    pub parity: Parity,
}

impl ComplexPole {
    pub fn energy(&self) -> Complex64 {
        Complex64::new(self.e_r, self.e_i)
    }

    /// Γ = −2E_i.
    pub fn width(&self) -> f64 {
        -2.0 * self.e_i
    }
}

fn layers(spec: &ModelSpec, parity: Parity) -> Result<(f64, f64, f64)> {
    match (spec.model, parity) {
        (Model::LeakySphericalWell { v0, a, b }, Parity::Odd) => Ok((v0, a, b)),
        (Model::LeakySphericalWell { .. }, Parity::Even) => {
            Err(Error::Config("the s-wave well has only the sin-type (odd) interior solution".into()))
        }
        (Model::TwinBarrier { v0, a, b, .. }, _) => Ok((v0, a, b)),
        _ => Err(Error::Config("resonances need a piecewise-constant barrier model".into())),
    }
}

/// Matching determinant as a function of the exterior wave number k.
///
/// Entire in k apart from the κ branch, which drops out of the zeros.
/// D(−k*) = ±D(k)* (even/odd) for real potentials.
pub fn matching_determinant_k(k: Complex64, spec: &ModelSpec, parity: Parity) -> Result<Complex64> {
    let (v0, a, b) = layers(spec, parity)?;
    let m = spec.mass();
    let kappa = (2.0 * m * v0 - k * k).sqrt();
    if kappa.norm() == 0.0 {
        return Err(Error::Singular {
            op: "matching_determinant",
            detail: "E at the barrier top".into(),
        });
    }
    // interior transfer from the origin values (0, 1) or (1, 0)
    let (s, c) = ((k * a).sin(), (k * a).cos());
    let (psi, dpsi) = match parity {
        Parity::Odd => (s, k * c),
        Parity::Even => (c, -k * s),
    };
    // into the barrier basis e^{±κ(r−a)}
    let grow = (kappa * psi + dpsi) / (2.0 * kappa);
    let decay = (kappa * psi - dpsi) / (2.0 * kappa);
    // across the barrier and onto e^{ikr}, normalized by (κ − ik)e^{κw}
    let i = Complex64::i();
    let w = b - a;
    Ok(grow - decay * (kappa + i * k) / (kappa - i * k) * (-2.0 * kappa * w).exp())
}

/// Matching determinant at complex energy E with k = √(2mE) on the
/// principal branch.
pub fn matching_determinant(e: Complex64, spec: &ModelSpec, parity: Parity) -> Result<Complex64> {
    if !(e.re.is_finite() && e.im.is_finite()) {
        return Err(Error::domain("matching_determinant", format!("E={e}")));
    }
    if e.im == 0.0 && e.re <= 0.0 {
        return Err(Error::Branch {
            op: "matching_determinant",
            detail: format!("E={e} lies on the cut of k = √(2mE)"),
        });
    }
    let k = (2.0 * spec.mass() * e).sqrt();
    matching_determinant_k(k, spec, parity)
}

/// Zero of the determinant from `seed`, on either side of the real axis.
pub fn determinant_zero(seed: Complex64, spec: &ModelSpec, parity: Parity) -> Result<Complex64> {
    let f = |e: Complex64| matching_determinant(e, spec, parity);
    let z1 = seed + Complex64::new(1e-7 * seed.norm().max(f64::MIN_POSITIVE), 0.0);
    complex_secant(f, seed, z1, SECANT_TOL)
}

/// Converges from `seed` to a decaying pole.
pub fn pole_find(seed: Complex64, spec: &ModelSpec, parity: Parity) -> Result<ComplexPole> {
    let z = determinant_zero(seed, spec, parity)?;
    let residual = matching_determinant(z, spec, parity)?.norm();
    if residual > POLE_RESIDUAL {
        return Err(Error::no_convergence("pole_find", format!("|D| = {residual:e} at E = {z}")));
    }
    if !(z.im < 0.0) {
        return Err(Error::no_convergence(
            "pole_find",
            format!("seed {seed} converged to E = {z}, not a decaying pole"),
        ));
    }
    Ok(ComplexPole {
        e_r: z.re,
        e_i: z.im,
        residual,
        parity,
    })
}

/// Poles with 0 < E_r < E_max, seeded from local minima of |D| on the real
/// axis. E_max is capped at V0.
pub fn resonance_scan(spec: &ModelSpec, parity: Parity, e_max: f64) -> Result<Vec<ComplexPole>> {
    resonance_scan_with(spec, parity, e_max, SCAN_POINTS)
}

/// As [`resonance_scan`] with an explicit scan size.
pub fn resonance_scan_with(spec: &ModelSpec, parity: Parity, e_max: f64, n: usize) -> Result<Vec<ComplexPole>> {
    let (v0, _, _) = layers(spec, parity)?;
    let top = e_max.min(v0);
    if !(top > 0.0) || n < 3 {
        return Ok(Vec::new());
    }
    let es: Vec<f64> = (0..n).map(|j| top * (j as f64 + 0.5) / n as f64).collect();
    let mags: Vec<f64> = es
        .par_iter()
        .map(|&e| {
            matching_determinant(Complex64::new(e, 0.0), spec, parity)
                .map(|d| d.norm())
                .unwrap_or(f64::NAN)
        })
        .collect();
    let seeds: Vec<f64> = (1..n - 1)
        .filter(|&j| mags[j] < mags[j - 1] && mags[j] <= mags[j + 1])
        .map(|j| es[j])
        .collect();
    let found: Vec<ComplexPole> = seeds
        .par_iter()
        .filter_map(|&e| pole_find(Complex64::new(e, 0.0), spec, parity).ok())
        .collect();
    let mut poles: Vec<ComplexPole> = Vec::new();
    for p in found {
        if !(p.e_r > 0.0 && p.e_r < top) {
            continue;
        }
        if poles.iter().all(|q| (q.energy() - p.energy()).norm() > DEDUPE) {
            poles.push(p);
        }
    }
    poles.sort_by(|p, q| p.e_r.total_cmp(&q.e_r));
    Ok(poles)
}

/// One line of the side-by-side table of poles and stationary roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub index: usize,
    pub pole: Option<ComplexPole>,
    pub stationary: Option<f64>,
}

/// Pairs poles and stationary quasibound energies by ordinal.
pub fn comparison_table(poles: &[ComplexPole], stationary: &[f64]) -> Vec<ComparisonRow> {
    (0..poles.len().max(stationary.len()))
        .map(|i| ComparisonRow {
            index: i + 1,
            pole: poles.get(i).copied(),
            stationary: stationary.get(i).copied(),
        })
        .collect()
}
