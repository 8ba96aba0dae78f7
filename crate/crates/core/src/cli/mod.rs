//! Command-line front end.
//!
//! Every flag can also be given in a `key = value` file passed with
//! `--config`; flags win over the file. Exit status: 0 success, 1 failed
//! regression checks, 2 invalid configuration, 3 numerical failure.

mod config;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::ConfigFile;
pub use output::{csv, emit, num, UnitsBlock};

use crate::error::{Error, Result};
use crate::greens::GreensFunction;
use crate::models::{
    delta_critical_force, leaky_cutoff, model_waveform, solve, twin_cutoff, EnergyRoot, Grid, Model, ModelSpec,
    Parity, PhysicalUnits, REFERENCE_A, REFERENCE_STRENGTH,
};
use crate::regression::run_suite;
use crate::resonance::{comparison_table, resonance_scan, ComparisonRow, ComplexPole};
use crate::timeline::{TimeClass, TimeState};
use output::opt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    DeltaField,
    LeakySphere,
    TwinBarrier,
}

impl FromStr for ModelKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "delta-field" => Ok(Self::DeltaField),
            "leaky-sphere" => Ok(Self::LeakySphere),
            "twin-barrier" => Ok(Self::TwinBarrier),
            _ => Err(format!("unknown model '{s}' (delta-field, leaky-sphere, twin-barrier)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "text" => Ok(Self::Text),
            _ => Err(format!("unknown format '{s}' (csv, json, text)")),
        }
    }
}

/// `N,min,max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg(pub Grid);

impl FromStr for GridArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [n, lo, hi] = parts.as_slice() else {
            return Err(format!("grid '{s}' is not N,min,max"));
        };
        let n: usize = n.parse().map_err(|_| format!("grid size '{n}' is not an integer"))?;
        let lo: f64 = lo.parse().map_err(|_| format!("grid min '{lo}' is not a number"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("grid max '{hi}' is not a number"))?;
        Grid::new(n, lo, hi).map(GridArg).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Stationary quasibound energies.
    Solve,
    /// Energies over a parameter grid (w/a for barriers, F/F_cr for the delta well).
    Scan,
    /// Waveform samples x,psi,envelope,potential at one root.
    Waveform,
    /// Critical barrier width or critical field.
    Critical,
    /// S-matrix poles next to the stationary roots.
    Resonances,
    /// Time-state wave Ξ_τ on a grid.
    Timeline,
    /// Quasibound Green's function on a grid.
    Greens,
    /// Reference-value regression report.
    Regress,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Model family (default leaky-sphere).
    #[arg(long, global = true, value_name = "delta-field|leaky-sphere|twin-barrier")]
    pub model: Option<ModelKind>,
    /// Barrier strength 2m·V0·a².
    #[arg(long = "V0a2", global = true)]
    pub v0a2: Option<f64>,
    /// Barrier thickness in units of a.
    #[arg(long, global = true)]
    pub w: Option<f64>,
    /// Well radius a.
    #[arg(long, global = true)]
    pub a: Option<f64>,
    /// Field as a fraction of the critical field.
    #[arg(long = "f-frac", global = true)]
    pub f_frac: Option<f64>,
    /// Field-free bound energy of the delta well (sign ignored).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eb: Option<f64>,
    /// Twin-barrier parity (default even).
    #[arg(long, global = true, value_name = "even|odd")]
    pub parity: Option<Parity>,
    /// Sample grid or scan range.
    #[arg(long, global = true, value_name = "N,min,max", allow_hyphen_values = true)]
    pub grid: Option<GridArg>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_name = "csv|json|text")]
    pub format: Option<Format>,
    /// key = value file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Particle mass (default 1/2).
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    /// Time parameter of the timeline wave.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    /// Angular momentum of the spherical timeline wave.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l: Option<i32>,
    /// Energy of the Green's function.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Source point of the Green's function.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub source: Option<f64>,
    /// 1-based root used by `waveform`.
    #[arg(long, global = true)]
    pub index: Option<usize>,
    /// Multiplier on regression tolerances.
    #[arg(long = "tol-scale", global = true)]
    pub tol_scale: Option<f64>,
}

#[derive(Debug, Parser)]
#[command(name = "quasibound", version, about = "Stationary quasibound states and S-matrix resonances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

/// Fully resolved run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub kind: ModelKind,
    pub model: ModelSpec,
    pub grid: Option<Grid>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub units: PhysicalUnits,
    pub f_frac: f64,
    pub e_b: f64,
    pub tau: f64,
    pub l: i32,
    pub energy: Option<f64>,
    pub source: Option<f64>,
    pub index: usize,
    pub tol_scale: f64,
}

impl RunConfig {
    /// Merges flags over the optional config file and applies defaults.
    pub fn resolve(command: Command, flags: Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let kind = file.pick(flags.model, "model")?.unwrap_or(ModelKind::LeakySphere);
        let mass = file.pick(flags.mass, "mass")?.unwrap_or(0.5);
        let units = PhysicalUnits::new(mass)?;
        let strength = file.pick(flags.v0a2, "V0a2")?.unwrap_or(REFERENCE_STRENGTH);
        let a = file.pick(flags.a, "a")?.unwrap_or(REFERENCE_A);
        let w = file.pick(flags.w, "w")?.unwrap_or(0.5);
        let f_frac = file.pick(flags.f_frac, "f-frac")?.unwrap_or(0.1);
        let e_b = -file.pick(flags.eb, "eb")?.unwrap_or(1.0).abs();
        let parity = file.pick(flags.parity, "parity")?;
        let model = match kind {
            ModelKind::DeltaField => ModelSpec::delta_from_binding(e_b, f_frac, units)?,
            ModelKind::LeakySphere => {
                if parity == Some(Parity::Even) {
                    return Err(Error::Config("the leaky sphere has s-waves only; drop --parity".into()));
                }
                ModelSpec::barrier(strength, a, w, None, units)?
            }
            ModelKind::TwinBarrier => ModelSpec::barrier(strength, a, w, Some(parity.unwrap_or(Parity::Even)), units)?,
        };
        let format = file.pick(flags.format, "format")?.unwrap_or(match command {
            Command::Scan | Command::Waveform | Command::Timeline | Command::Greens => Format::Csv,
            Command::Regress => Format::Text,
            _ => Format::Json,
        });
        let index = file.pick(flags.index, "index")?.unwrap_or(1);
        if index == 0 {
            return Err(Error::Config("--index is 1-based".into()));
        }
        let tol_scale = file.pick(flags.tol_scale, "tol-scale")?.unwrap_or(1.0);
        if !(tol_scale > 0.0) {
            return Err(Error::Config(format!("--tol-scale must be positive, got {tol_scale}")));
        }
        Ok(Self {
            command,
            kind,
            model,
            grid: file.pick(flags.grid, "grid")?.map(|g| g.0),
            out: file.pick(flags.out, "out")?,
            format,
            units,
            f_frac,
            e_b,
            tau: file.pick(flags.tau, "tau")?.unwrap_or(1.0),
            l: file.pick(flags.l, "l")?.unwrap_or(0),
            energy: file.pick(flags.energy, "energy")?,
            source: file.pick(flags.source, "source")?,
            index,
            tol_scale,
        })
    }

    fn describe(&self) -> String {
        match self.model.model {
            Model::DeltaWellInField { lambda, force } => {
                format!("delta-field lambda={lambda} F={force} (F/F_cr={}) m={}", self.f_frac, self.units.mass)
            }
            Model::LeakySphericalWell { v0, a, b } => format!("leaky-sphere V0={v0} a={a} b={b} m={}", self.units.mass),
            Model::TwinBarrier { v0, a, b, parity } => {
                format!("twin-barrier V0={v0} a={a} b={b} parity={parity} m={}", self.units.mass)
            }
        }
    }
}

/// Rendered output of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    /// False only for a regression report with failures.
    pub passed: bool,
}

#[derive(Serialize)]
struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    v0a2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w_over_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_over_f_cr: Option<f64>,
}

fn parameters(cfg: &RunConfig) -> Parameters {
    match cfg.model.barrier_geometry() {
        Some((v0, a, b)) => Parameters {
            v0a2: Some(2.0 * cfg.units.mass * v0 * a * a),
            w_over_a: Some((b - a) / a),
            e_b: None,
            f_over_f_cr: None,
        },
        None => Parameters {
            v0a2: None,
            w_over_a: None,
            e_b: Some(cfg.e_b),
            f_over_f_cr: Some(cfg.f_frac),
        },
    }
}

#[derive(Serialize)]
struct RootRecord {
    #[serde(rename = "E")]
    energy: f64,
    residual: f64,
    bracket: [f64; 2],
    index: usize,
    iterations: u32,
}

impl From<&EnergyRoot> for RootRecord {
    fn from(r: &EnergyRoot) -> Self {
        Self {
            energy: r.energy,
            residual: r.residual,
            bracket: [r.bracket.0, r.bracket.1],
            index: r.index,
            iterations: r.iterations,
        }
    }
}

fn header(cfg: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "command": cfg.command,
        "model": cfg.model.model,
        "parameters": parameters(cfg),
        "units": UnitsBlock::from(cfg.units),
    })
}

fn with_header(cfg: &RunConfig, body: serde_json::Value) -> Result<String> {
    let mut v = header(cfg);
    if let (Some(obj), serde_json::Value::Object(extra)) = (v.as_object_mut(), body) {
        obj.extend(extra);
    }
    output::json(&v)
}

fn to_value<T: Serialize>(t: &T) -> Result<serde_json::Value> {
    serde_json::to_value(t).map_err(|e| Error::Io(e.to_string()))
}

fn no_text(cfg: &RunConfig) -> Error {
    Error::Config(format!("format text is only available for regress, not {:?}", cfg.command).to_lowercase())
}

/// Executes one command.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let text = match cfg.command {
        Command::Solve => cmd_solve(cfg)?,
        Command::Scan => cmd_scan(cfg)?,
        Command::Waveform => cmd_waveform(cfg)?,
        Command::Critical => cmd_critical(cfg)?,
        Command::Resonances => cmd_resonances(cfg)?,
        Command::Timeline => cmd_timeline(cfg)?,
        Command::Greens => cmd_greens(cfg)?,
        Command::Regress => {
            let report = run_suite(cfg.tol_scale);
            let text = match cfg.format {
                Format::Text => report.render(),
                Format::Json => output::json(&report)?,
                Format::Csv => csv(
                    &["criterion", "check", "measured", "expected", "tolerance", "pass"],
                    report.checks.iter().map(|c| {
                        vec![
                            c.criterion.to_string(),
                            c.name.replace(',', ";"),
                            num(c.measured),
                            num(c.expected),
                            num(c.tolerance),
                            c.pass.to_string(),
                        ]
                    }),
                ),
            };
            return Ok(Outcome {
                text,
                passed: report.passed(),
            });
        }
    };
    Ok(Outcome { text, passed: true })
}

fn cmd_solve(cfg: &RunConfig) -> Result<String> {
    let roots = solve(&cfg.model)?;
    match cfg.format {
        Format::Json => {
            let recs: Vec<RootRecord> = roots.iter().map(RootRecord::from).collect();
            with_header(cfg, serde_json::json!({ "roots": recs }))
        }
        Format::Csv => Ok(csv(
            &["index", "E", "residual", "bracket_lo", "bracket_hi"],
            roots.iter().map(|r| {
                vec![r.index.to_string(), num(r.energy), num(r.residual), num(r.bracket.0), num(r.bracket.1)]
            }),
        )),
        Format::Text => Err(no_text(cfg)),
    }
}

fn cmd_scan(cfg: &RunConfig) -> Result<String> {
    let delta = cfg.kind == ModelKind::DeltaField;
    let grid = match cfg.grid {
        Some(g) => g,
        None if delta => Grid::new(20, 0.05, 1.0)?,
        None => Grid::new(15, 0.1, 1.5)?,
    };
    let mut rows = Vec::new();
    for p in grid.points() {
        let spec = if delta {
            ModelSpec::delta_from_binding(cfg.e_b, p, cfg.units)?
        } else {
            cfg.model.with_width(p)?
        };
        let es: Vec<f64> = solve(&spec)?.iter().map(|r| r.energy).collect();
        rows.push((p, es));
    }
    let width = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(1);
    match cfg.format {
        Format::Csv => {
            let names: Vec<String> = (1..=width).map(|i| format!("E_{i}")).collect();
            let mut head = vec!["parameter"];
            head.extend(names.iter().map(String::as_str));
            Ok(csv(
                &head,
                rows.iter().map(|(p, es)| {
                    let mut r = vec![num(*p)];
                    r.extend((0..width).map(|i| opt(es.get(i).copied())));
                    r
                }),
            ))
        }
        Format::Json => {
            let parameter = if delta { "F/F_cr" } else { "w/a" };
            let pts: Vec<_> = rows.iter().map(|(p, es)| serde_json::json!({"parameter": p, "E": es})).collect();
            with_header(cfg, serde_json::json!({ "scan_parameter": parameter, "points": pts }))
        }
        Format::Text => Err(no_text(cfg)),
    }
}

fn cmd_waveform(cfg: &RunConfig) -> Result<String> {
    let roots = solve(&cfg.model)?;
    let root = roots.get(cfg.index - 1).ok_or_else(|| {
        Error::no_convergence(
            "waveform",
            format!("root {} requested but the model has {} stationary quasibound roots", cfg.index, roots.len()),
        )
    })?;
    let grid = cfg.grid.unwrap_or_else(|| Grid::default_for(&cfg.model));
    let w = model_waveform(root, &cfg.model, &grid)?;
    match cfg.format {
        Format::Csv => Ok(csv(
            &["x", "psi", "envelope", "potential"],
            w.samples
                .iter()
                .map(|s| vec![num(s.x), num(s.psi), opt(s.envelope), num(s.potential)]),
        )),
        Format::Json => with_header(
            cfg,
            serde_json::json!({ "root": RootRecord::from(root), "samples": to_value(&w.samples)? }),
        ),
        Format::Text => Err(no_text(cfg)),
    }
}

fn cmd_critical(cfg: &RunConfig) -> Result<String> {
    let m = cfg.units.mass;
    let (names, values): (Vec<&str>, Vec<f64>) = match cfg.model.model {
        Model::DeltaWellInField { .. } => (vec!["F_cr"], vec![delta_critical_force(cfg.e_b, m)?]),
        Model::LeakySphericalWell { v0, a, .. } | Model::TwinBarrier { v0, a, parity: Parity::Odd, .. } => {
            let c = leaky_cutoff(v0, a, m)?;
            (vec!["estimate", "actual"], vec![c.estimate, c.actual])
        }
        Model::TwinBarrier { v0, a, parity: Parity::Even, .. } => {
            let c = twin_cutoff(v0, a, m)?;
            (vec!["estimate", "actual"], vec![c.estimate, c.actual])
        }
    };
    match cfg.format {
        Format::Json => {
            let mut body = serde_json::Map::new();
            for (n, v) in names.iter().zip(&values) {
                body.insert(n.to_string(), serde_json::json!(v));
            }
            with_header(cfg, serde_json::Value::Object(body))
        }
        Format::Csv => Ok(csv(&names, [values.iter().map(|&v| num(v)).collect()])),
        Format::Text => Err(no_text(cfg)),
    }
}

fn resonance_parity(cfg: &RunConfig) -> Result<Parity> {
    match cfg.model.model {
        Model::LeakySphericalWell { .. } => Ok(Parity::Odd),
        Model::TwinBarrier { parity, .. } => Ok(parity),
        Model::DeltaWellInField { .. } => Err(Error::Config(
            "resonances are available for the piecewise-constant barrier models only".into(),
        )),
    }
}

fn cmd_resonances(cfg: &RunConfig) -> Result<String> {
    let parity = resonance_parity(cfg)?;
    let (v0, _, _) = cfg.model.barrier_geometry().expect("barrier model");
    let poles: Vec<ComplexPole> = resonance_scan(&cfg.model, parity, v0)?;
    let stationary: Vec<f64> = solve(&cfg.model)?.iter().map(|r| r.energy).collect();
    let table: Vec<ComparisonRow> = comparison_table(&poles, &stationary);
    match cfg.format {
        Format::Json => with_header(
            cfg,
            serde_json::json!({ "poles": to_value(&poles)?, "stationary": stationary, "table": to_value(&table)? }),
        ),
        Format::Csv => Ok(csv(
            &["index", "E_r", "E_i", "residual", "stationary_E"],
            table.iter().map(|r| {
                vec![
                    r.index.to_string(),
                    opt(r.pole.map(|p| p.e_r)),
                    opt(r.pole.map(|p| p.e_i)),
                    opt(r.pole.map(|p| p.residual)),
                    opt(r.stationary),
                ]
            }),
        )),
        Format::Text => Err(no_text(cfg)),
    }
}

/// Default grid of the half-line classes starts one step off the origin.
fn half_line_grid(cfg: &RunConfig) -> Grid {
    cfg.grid.unwrap_or_else(|| {
        let g = Grid::default_for(&cfg.model);
        let step = (g.max - g.min) / (g.n - 1) as f64;
        Grid { min: g.min.max(step), ..g }
    })
}

fn cmd_timeline(cfg: &RunConfig) -> Result<String> {
    let class = match cfg.model.model {
        Model::DeltaWellInField { force, .. } => TimeClass::UniformField { force },
        Model::LeakySphericalWell { .. } => TimeClass::Spherical { l: cfg.l },
        Model::TwinBarrier { parity, .. } => TimeClass::Free { parity },
    };
    let state = TimeState::new(class, cfg.tau, cfg.units.mass)?;
    let grid = half_line_grid(cfg);
    let xs = grid.points();
    let vals = xs.iter().map(|&x| state.eval(x)).collect::<Result<Vec<_>>>()?;
    match cfg.format {
        Format::Csv => Ok(csv(
            &["x", "re", "im"],
            xs.iter().zip(&vals).map(|(x, v)| vec![num(*x), num(v.re), num(v.im)]),
        )),
        Format::Json => {
            let pts: Vec<_> = xs.iter().zip(&vals).map(|(x, v)| serde_json::json!([x, v.re, v.im])).collect();
            with_header(cfg, serde_json::json!({ "tau": cfg.tau, "points": pts }))
        }
        Format::Text => Err(no_text(cfg)),
    }
}

fn cmd_greens(cfg: &RunConfig) -> Result<String> {
    let m = cfg.units.mass;
    let class = cfg.model.selection_class();
    let (energy, force, source) = match cfg.model.model {
        Model::DeltaWellInField { force, .. } => (cfg.energy.unwrap_or(cfg.e_b), Some(force), cfg.source.unwrap_or(0.0)),
        Model::LeakySphericalWell { a, .. } | Model::TwinBarrier { a, .. } => {
            (cfg.energy.unwrap_or(1.0), None, cfg.source.unwrap_or(0.5 * a))
        }
    };
    let g = GreensFunction::new(class, energy, m, force)?;
    let xs = cfg.grid.unwrap_or_else(|| Grid::default_for(&cfg.model)).points();
    let vals = xs.iter().map(|&x| g.eval(x, source).map(|e| e.value)).collect::<Result<Vec<_>>>()?;
    match cfg.format {
        Format::Csv => Ok(csv(&["x", "G"], xs.iter().zip(&vals).map(|(x, v)| vec![num(*x), num(*v)]))),
        Format::Json => {
            let pts: Vec<_> = xs.iter().zip(&vals).map(|(x, v)| serde_json::json!([x, v])).collect();
            with_header(
                cfg,
                serde_json::json!({ "class": class, "energy": energy, "source": source, "points": pts }),
            )
        }
        Format::Text => Err(no_text(cfg)),
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Io(_) => 2,
        _ => 3,
    }
}

/// Parses `args`, runs, writes the output; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = match RunConfig::resolve(cli.command, cli.flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("quasibound: {e}");
            return exit_code(&e);
        }
    };
    let result = run(&cfg).and_then(|o| emit(cfg.out.as_deref(), &o.text).map(|_| o.passed));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("quasibound: {e} [{}]", cfg.describe());
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("quasibound").chain(args.iter().copied()))
            .map_err(|e| Error::Config(e.to_string()))?;
        RunConfig::resolve(cli.command, cli.flags)
    }

    #[test]
    fn flags_resolve_to_models() {
        let c = cfg(&["solve", "--model", "leaky-sphere", "--V0a2", "72", "--w", "0.5"]).unwrap();
        assert_eq!(c.model, ModelSpec::reference_leaky(0.5));
        let c = cfg(&["critical", "--model", "twin-barrier", "--parity", "even"]).unwrap();
        assert_eq!(c.model, ModelSpec::reference_twin(0.5, Parity::Even));
        let c = cfg(&["waveform", "--model", "delta-field", "--f-frac", "0.1", "--eb", "-2"]).unwrap();
        assert!((c.model.binding_energy().unwrap() + 2.0).abs() < 1e-14);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn grid_flag() {
        let c = cfg(&["waveform", "--grid", "5,-2,2"]).unwrap();
        assert_eq!(c.grid.unwrap().points(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!("3,1".parse::<GridArg>().is_err());
        assert!("3,2,1".parse::<GridArg>().is_err());
    }

    #[test]
    fn invalid_values_are_config_errors() {
        assert!(matches!(cfg(&["solve", "--mass", "-1"]), Err(Error::Config(_))));
        assert!(matches!(cfg(&["solve", "--model", "leaky-sphere", "--parity", "even"]), Err(Error::Config(_))));
        assert!(cfg(&["solve", "--model", "box"]).is_err());
        assert!(matches!(cfg(&["solve", "--w", "-0.5"]), Err(Error::Config(_))));
    }

    #[test]
    fn config_file_with_flag_override() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.cfg");
        std::fs::write(&p, "model = twin-barrier\nparity = odd\nw = 0.8\n").unwrap();
        let path = p.to_str().unwrap();
        let c = cfg(&["solve", "--config", path, "--w", "0.5"]).unwrap();
        assert_eq!(c.model, ModelSpec::reference_twin(0.5, Parity::Odd));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::no_convergence("op", "x")), 3);
        assert_eq!(main_with_args(["quasibound", "solve", "--model", "nope"]), 2);
        assert_eq!(main_with_args(["quasibound"]), 2);
    }

    #[test]
    fn solve_json_carries_units_and_roots() {
        let c = cfg(&["solve", "--model", "leaky-sphere"]).unwrap();
        let out = run(&c).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["units"]["hbar"], 1.0);
        assert_eq!(v["units"]["two_m"], 1.0);
        assert_eq!(v["roots"].as_array().unwrap().len(), 2);
        assert!((v["roots"][0]["E"].as_f64().unwrap() - 1.067).abs() < 2e-3);
    }

    #[test]
    fn text_format_only_for_regress() {
        let c = cfg(&["solve", "--format", "text"]).unwrap();
        assert!(matches!(run(&c), Err(Error::Config(_))));
    }
}
