//! The three worked potentials: a delta well in a uniform field, a leaky
//! spherical well, and twin rectangular barriers.

mod barrier;
mod delta;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::greens::GreensClass;
use crate::wave::Waveform;

pub use barrier::{
    barrier_roots, bound_reference, closed_g_exp_integral, leaky_cutoff, leaky_defect, leaky_landmark,
    leaky_mixing, twin_cutoff, twin_defect, twin_even_defect, twin_landmark, twin_odd_defect, BarrierIntegrals, root_count_scan,
    CriticalWidth,
};
pub use delta::{delta_critical_force, delta_defect, delta_solve, delta_waveform};

/// Grid size of the root scan.
pub const SCAN_POINTS: usize = 2000;

/// Dimensionless strength 2m·V0·a² of the reference barrier models.
pub const REFERENCE_STRENGTH: f64 = 72.0;
/// Well radius (half-width) of the reference barrier models.
pub const REFERENCE_A: f64 = 3.0;

/// ħ = 1; only the mass is configurable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalUnits {
    pub mass: f64,
}

impl Default for PhysicalUnits {
    fn default() -> Self {
        Self { mass: 0.5 }
    }
}

impl PhysicalUnits {
    pub fn new(mass: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::Config(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { mass })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" | "+" => Ok(Parity::Even),
            "odd" | "-" => Ok(Parity::Odd),
            _ => Err(Error::Config(format!("unknown parity '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Model {
    /// Attractive delta well −λδ(x) in the field −Fx.
    DeltaWellInField { lambda: f64, force: f64 },
    /// Well of radius a inside a spherical shell barrier V0 on a ≤ r ≤ b.
    LeakySphericalWell { v0: f64, a: f64, b: f64 },
    /// Barriers V0 on a ≤ |x| ≤ b.
    TwinBarrier { v0: f64, a: f64, b: f64, parity: Parity },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelSpec {
    pub model: Model,
    pub units: PhysicalUnits,
}

impl ModelSpec {
    pub fn new(model: Model, units: PhysicalUnits) -> Result<Self> {
        let bad = |m: String| Err(Error::Config(m));
        match model {
            Model::DeltaWellInField { lambda, force } => {
                if !(lambda > 0.0 && lambda.is_finite()) || !(force > 0.0 && force.is_finite()) {
                    return bad(format!("need lambda > 0 and F > 0, got {lambda}, {force}"));
                }
            }
            Model::LeakySphericalWell { v0, a, b } | Model::TwinBarrier { v0, a, b, .. } => {
                if !(v0 > 0.0 && v0.is_finite()) || !(a > 0.0) || !(b > a) || !b.is_finite() {
                    return bad(format!("need V0 > 0 and b > a > 0, got V0={v0}, a={a}, b={b}"));
                }
            }
        }
        PhysicalUnits::new(units.mass)?;
        Ok(Self { model, units })
    }

    /// Delta well with binding energy `e_b` < 0 at field `f_frac`·F_cr.
    pub fn delta_from_binding(e_b: f64, f_frac: f64, units: PhysicalUnits) -> Result<Self> {
        if !(e_b < 0.0) || !(f_frac > 0.0) {
            return Err(Error::Config(format!("need E_b < 0 and F/F_cr > 0, got {e_b}, {f_frac}")));
        }
        let m = units.mass;
        let lambda = (2.0 * e_b.abs() / m).sqrt();
        let force = f_frac * delta_critical_force(e_b, m)?;
        Self::new(Model::DeltaWellInField { lambda, force }, units)
    }

    /// Barrier model from the strength 2mV0a², the radius a and w/a.
    pub fn barrier(strength: f64, a: f64, w_over_a: f64, parity: Option<Parity>, units: PhysicalUnits) -> Result<Self> {
        if !(strength > 0.0) || !(a > 0.0) || !(w_over_a > 0.0) {
            return Err(Error::Config(format!(
                "need 2mV0a² > 0, a > 0, w > 0, got {strength}, {a}, {w_over_a}"
            )));
        }
        let v0 = strength / (2.0 * units.mass * a * a);
        let b = a * (1.0 + w_over_a);
        let model = match parity {
            None => Model::LeakySphericalWell { v0, a, b },
            Some(parity) => Model::TwinBarrier { v0, a, b, parity },
        };
        Self::new(model, units)
    }

    /// Leaky well at the reference strength and radius.
    pub fn reference_leaky(w_over_a: f64) -> Self {
        Self::barrier(REFERENCE_STRENGTH, REFERENCE_A, w_over_a, None, PhysicalUnits::default())
            .expect("reference parameters are valid")
    }

    /// Twin barriers at the reference strength and radius.
    pub fn reference_twin(w_over_a: f64, parity: Parity) -> Self {
        Self::barrier(REFERENCE_STRENGTH, REFERENCE_A, w_over_a, Some(parity), PhysicalUnits::default())
            .expect("reference parameters are valid")
    }

    pub fn mass(&self) -> f64 {
        self.units.mass
    }

    /// Bound energy of the field-free delta well, −mλ²/2.
    pub fn binding_energy(&self) -> Option<f64> {
        match self.model {
            Model::DeltaWellInField { lambda, .. } => Some(-self.units.mass * lambda * lambda / 2.0),
            _ => None,
        }
    }

    /// (V0, a, b) of barrier models.
    pub fn barrier_geometry(&self) -> Option<(f64, f64, f64)> {
        match self.model {
            Model::LeakySphericalWell { v0, a, b } | Model::TwinBarrier { v0, a, b, .. } => Some((v0, a, b)),
            _ => None,
        }
    }

    /// Selection functional that marks this model's quasibound states.
    pub fn selection_class(&self) -> GreensClass {
        match self.model {
            Model::DeltaWellInField { .. } => GreensClass::UniformField,
            Model::LeakySphericalWell { .. } => GreensClass::SWave,
            Model::TwinBarrier { parity: Parity::Even, .. } => GreensClass::FreeEven,
            Model::TwinBarrier { parity: Parity::Odd, .. } => GreensClass::FreeOdd,
        }
    }

    /// Same barrier with a different thickness (units of a).
    pub fn with_width(&self, w_over_a: f64) -> Result<Self> {
        let model = match self.model {
            Model::LeakySphericalWell { v0, a, .. } => Model::LeakySphericalWell { v0, a, b: a * (1.0 + w_over_a) },
            Model::TwinBarrier { v0, a, parity, .. } => Model::TwinBarrier {
                v0,
                a,
                b: a * (1.0 + w_over_a),
                parity,
            },
            Model::DeltaWellInField { .. } => return Err(Error::Config("delta model has no width".into())),
        };
        Self::new(model, self.units)
    }
}

/// A located stationary quasibound energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyRoot {
    pub energy: f64,
    pub bracket: (f64, f64),
    /// Defect at `energy`, normalized by the magnitude of its largest term.
    pub residual: f64,
    pub iterations: u32,
    /// 1-based ordinal in increasing energy.
    pub index: usize,
}

/// Uniform sampling grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub n: usize,
    pub min: f64,
    pub max: f64,
}

impl Grid {
    pub fn new(n: usize, min: f64, max: f64) -> Result<Self> {
        if n < 2 || !(min < max) || !min.is_finite() || !max.is_finite() {
            return Err(Error::Config(format!("grid needs n >= 2 and min < max, got {n},{min},{max}")));
        }
        Ok(Self { n, min, max })
    }

    pub fn points(&self) -> Vec<f64> {
        crate::solver::uniform_grid(self.min, self.max, self.n)
    }

    /// Default plotting window for a model.
    pub fn default_for(spec: &ModelSpec) -> Self {
        match spec.model {
            Model::DeltaWellInField { lambda, .. } => {
                let l = 8.0 / (spec.units.mass * lambda);
                Self { n: 801, min: -l, max: l }
            }
            Model::LeakySphericalWell { b, .. } | Model::TwinBarrier { b, .. } => Self { n: 801, min: 0.0, max: 3.0 * b },
        }
    }
}

/// Solves for every stationary quasibound energy of the model.
pub fn solve(spec: &ModelSpec) -> Result<Vec<EnergyRoot>> {
    match spec.model {
        Model::DeltaWellInField { .. } => delta_solve(spec),
        _ => barrier_roots(spec),
    }
}

/// Closed-form waveform at a root, sampled on `grid`.
pub fn model_waveform(root: &EnergyRoot, spec: &ModelSpec, grid: &Grid) -> Result<Waveform> {
    match spec.model {
        Model::DeltaWellInField { .. } => delta_waveform(root, spec, grid),
        _ => barrier::barrier_waveform(root, spec, grid),
    }
}

/// max |ψ − envelope| over samples with |x| ≤ `half_width`, relative to max |envelope|.
pub fn envelope_deviation(w: &Waveform, half_width: f64) -> f64 {
    let mut dev: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for s in w.samples.iter().filter(|s| s.x.abs() <= half_width) {
        if let Some(e) = s.envelope {
            dev = dev.max((s.psi - e).abs());
            peak = peak.max(e.abs());
        }
    }
    if peak > 0.0 {
        dev / peak
    } else {
        f64::NAN
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let u = PhysicalUnits::default();
        assert!(ModelSpec::new(Model::LeakySphericalWell { v0: 8.0, a: 3.0, b: 2.0 }, u).is_err());
        assert!(ModelSpec::new(Model::DeltaWellInField { lambda: -1.0, force: 0.1 }, u).is_err());
        assert!(PhysicalUnits::new(0.0).is_err());
        let s = ModelSpec::reference_leaky(0.5);
        let (v0, a, b) = s.barrier_geometry().unwrap();
        assert_eq!((v0, a, b), (8.0, 3.0, 4.5));
    }

    #[test]
    fn binding_energy_from_strength() {
        let s = ModelSpec::delta_from_binding(-1.0, 0.5, PhysicalUnits::default()).unwrap();
        assert!((s.binding_energy().unwrap() + 1.0).abs() < 1e-15);
        let s = ModelSpec::delta_from_binding(-2.0, 0.5, PhysicalUnits::new(1.0).unwrap()).unwrap();
        assert!((s.binding_energy().unwrap() + 2.0).abs() < 1e-14);
    }

    #[test]
    fn parity_parsing() {
        assert_eq!("even".parse::<Parity>().unwrap(), Parity::Even);
        assert!("up".parse::<Parity>().is_err());
    }

    #[test]
    fn grid_rejects_bad_ranges() {
        assert!(Grid::new(1, 0.0, 1.0).is_err());
        assert!(Grid::new(10, 1.0, 1.0).is_err());
        assert_eq!(Grid::new(3, 0.0, 1.0).unwrap().points(), vec![0.0, 0.5, 1.0]);
    }
}
