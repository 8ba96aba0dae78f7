//! Python bindings for the quasibound solver.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use quasibound::models::{self, delta_critical_force, leaky_cutoff, twin_cutoff, Grid, Model};
use quasibound::{regression, resonance, specfun, Error};

create_exception!(quasibound_py, NumericalError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::Io(_) | Error::Contract(_) => PyValueError::new_err(e.to_string()),
        _ => NumericalError::new_err(e.to_string()),
    }
}

fn parity(s: &str) -> PyResult<models::Parity> {
    s.parse().map_err(to_py)
}

fn units(mass: f64) -> PyResult<models::PhysicalUnits> {
    models::PhysicalUnits::new(mass).map_err(to_py)
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct ModelSpec {
    inner: models::ModelSpec,
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct EnergyRoot {
    energy: f64,
    bracket: (f64, f64),
    residual: f64,
    iterations: u32,
    index: usize,
}

impl From<&models::EnergyRoot> for EnergyRoot {
    fn from(r: &models::EnergyRoot) -> Self {
        Self {
            energy: r.energy,
            bracket: r.bracket,
            residual: r.residual,
            iterations: r.iterations,
            index: r.index,
        }
    }
}

#[pymethods]
impl EnergyRoot {
    fn __repr__(&self) -> String {
        format!("EnergyRoot(index={}, energy={}, residual={:e})", self.index, self.energy, self.residual)
    }
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct ComplexPole {
    e_r: f64,
    e_i: f64,
    residual: f64,
    parity: String,
}

#[pymethods]
impl ComplexPole {
    #[getter]
    fn energy(&self) -> Complex64 {
        Complex64::new(self.e_r, self.e_i)
    }

    /// Γ = −2E_i.
    #[getter]
    fn width(&self) -> f64 {
        -2.0 * self.e_i
    }

    fn __repr__(&self) -> String {
        format!("ComplexPole({} {:+e}i, parity={})", self.e_r, self.e_i, self.parity)
    }
}

#[pyclass(frozen)]
struct Waveform {
    inner: quasibound::Waveform,
    class: quasibound::greens::GreensClass,
}

#[pymethods]
impl Waveform {
    #[getter]
    fn x(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.x).collect()
    }

    #[getter]
    fn psi(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.psi).collect()
    }

    #[getter]
    fn envelope(&self) -> Vec<Option<f64>> {
        self.inner.samples.iter().map(|s| s.envelope).collect()
    }

    #[getter]
    fn potential(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.potential).collect()
    }

    /// Relative value and slope mismatch across region boundaries.
    fn continuity_defects(&self) -> PyResult<(f64, f64)> {
        self.inner.continuity_defects().map_err(to_py)
    }

    /// Selection functional of the model applied to the wave.
    fn selection(&self) -> PyResult<f64> {
        quasibound::greens::selection_apply(self.class, &self.inner.wave).map_err(to_py)
    }

    /// max |ψ − envelope| on |x| ≤ half_width relative to the envelope peak.
    fn envelope_deviation(&self, half_width: f64) -> f64 {
        models::envelope_deviation(&self.inner, half_width)
    }
}

#[pymethods]
impl ModelSpec {
    /// Delta well with field-free energy `eb` < 0 at F = f_frac·F_cr.
    #[staticmethod]
    #[pyo3(signature = (eb=-1.0, f_frac=0.1, mass=0.5))]
    fn delta_field(eb: f64, f_frac: f64, mass: f64) -> PyResult<Self> {
        let inner = models::ModelSpec::delta_from_binding(eb, f_frac, units(mass)?).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Spherical well of radius a inside a shell of thickness w·a; v0a2 = 2mV0a².
    #[staticmethod]
    #[pyo3(signature = (v0a2=72.0, w=0.5, a=3.0, mass=0.5))]
    fn leaky_sphere(v0a2: f64, w: f64, a: f64, mass: f64) -> PyResult<Self> {
        let inner = models::ModelSpec::barrier(v0a2, a, w, None, units(mass)?).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (parity="even", v0a2=72.0, w=0.5, a=3.0, mass=0.5))]
    fn twin_barrier(parity: &str, v0a2: f64, w: f64, a: f64, mass: f64) -> PyResult<Self> {
        let p = self::parity(parity)?;
        let inner = models::ModelSpec::barrier(v0a2, a, w, Some(p), units(mass)?).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.inner.mass()
    }

    fn solve(&self) -> PyResult<Vec<EnergyRoot>> {
        Ok(models::solve(&self.inner).map_err(to_py)?.iter().map(EnergyRoot::from).collect())
    }

    /// Waveform at the `index`-th root (1-based); grid = (n, min, max).
    #[pyo3(signature = (index=1, grid=None))]
    fn waveform(&self, index: usize, grid: Option<(usize, f64, f64)>) -> PyResult<Waveform> {
        let roots = models::solve(&self.inner).map_err(to_py)?;
        let root = roots
            .get(index.wrapping_sub(1))
            .ok_or_else(|| NumericalError::new_err(format!("no root {index}; the model has {}", roots.len())))?;
        let grid = match grid {
            Some((n, lo, hi)) => Grid::new(n, lo, hi).map_err(to_py)?,
            None => Grid::default_for(&self.inner),
        };
        let inner = models::model_waveform(root, &self.inner, &grid).map_err(to_py)?;
        Ok(Waveform {
            inner,
            class: self.inner.selection_class(),
        })
    }

    /// {"F_cr"} for the delta well, {"estimate", "actual"} (units of a) for barriers.
    fn critical(&self) -> PyResult<Vec<(String, f64)>> {
        let m = self.inner.mass();
        let pair = |c: models::CriticalWidth| vec![("estimate".to_string(), c.estimate), ("actual".to_string(), c.actual)];
        Ok(match self.inner.model {
            Model::DeltaWellInField { .. } => {
                let eb = self.inner.binding_energy().expect("delta model");
                vec![("F_cr".to_string(), delta_critical_force(eb, m).map_err(to_py)?)]
            }
            Model::TwinBarrier { v0, a, parity: models::Parity::Even, .. } => pair(twin_cutoff(v0, a, m).map_err(to_py)?),
            Model::LeakySphericalWell { v0, a, .. } | Model::TwinBarrier { v0, a, .. } => {
                pair(leaky_cutoff(v0, a, m).map_err(to_py)?)
            }
        })
    }

    /// S-matrix poles with 0 < E_r < e_max (default V0).
    #[pyo3(signature = (e_max=None))]
    fn resonances(&self, e_max: Option<f64>) -> PyResult<Vec<ComplexPole>> {
        let (p, v0) = self.barrier_parity()?;
        let poles = resonance::resonance_scan(&self.inner, p, e_max.unwrap_or(v0)).map_err(to_py)?;
        Ok(poles
            .iter()
            .map(|q| ComplexPole {
                e_r: q.e_r,
                e_i: q.e_i,
                residual: q.residual,
                parity: q.parity.to_string(),
            })
            .collect())
    }

    /// Matching determinant at complex energy.
    fn matching_determinant(&self, e: Complex64) -> PyResult<Complex64> {
        let (p, _) = self.barrier_parity()?;
        resonance::matching_determinant(e, &self.inner, p).map_err(to_py)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("ModelSpec({:?}, mass={})", self.inner.model, self.inner.mass())
    }
}

impl ModelSpec {
    fn barrier_parity(&self) -> PyResult<(models::Parity, f64)> {
        match self.inner.model {
            Model::LeakySphericalWell { v0, .. } => Ok((models::Parity::Odd, v0)),
            Model::TwinBarrier { v0, parity, .. } => Ok((parity, v0)),
            Model::DeltaWellInField { .. } => Err(PyValueError::new_err("resonances need a barrier model")),
        }
    }
}

/// (Ai, Ai′, Bi, Bi′) at real z.
#[pyfunction]
fn airy(z: f64) -> PyResult<(f64, f64, f64, f64)> {
    let a = specfun::airy(z).map_err(to_py)?;
    Ok((a.ai, a.ai_prime, a.bi, a.bi_prime))
}

/// Scorer functions (Gi, Hi) at real z.
#[pyfunction]
fn scorer(z: f64) -> PyResult<(f64, f64)> {
    specfun::scorer(z).map_err(to_py)
}

/// Fresnel auxiliary functions (f, g).
#[pyfunction]
fn fresnel_aux(z: f64) -> PyResult<(f64, f64)> {
    let a = specfun::fresnel_aux(z).map_err(to_py)?;
    Ok((a.f, a.g))
}

/// Regression report text; `passed` is the second element.
#[pyfunction]
#[pyo3(signature = (tol_scale=1.0))]
fn regression_report(tol_scale: f64) -> (String, bool) {
    let r = regression::run_suite(tol_scale);
    (r.render(), r.passed())
}

#[pymodule]
fn quasibound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<ModelSpec>()?;
    m.add_class::<EnergyRoot>()?;
    m.add_class::<ComplexPole>()?;
    m.add_class::<Waveform>()?;
    m.add_function(wrap_pyfunction!(airy, m)?)?;
    m.add_function(wrap_pyfunction!(scorer, m)?)?;
    m.add_function(wrap_pyfunction!(fresnel_aux, m)?)?;
    m.add_function(wrap_pyfunction!(regression_report, m)?)?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    Ok(())
}
