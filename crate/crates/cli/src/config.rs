//! The experiment configuration document.
//!
//! A config is one JSON object. Every struct rejects unknown fields, and
//! parse and validation failures carry the dotted path of the offending field.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use sbc_core::analysis::{FiberAnchor, SectionGeometry, SweepSettings};
use sbc_core::dynamics::Coupling;
use sbc_core::flow::{IntegratorConfig, Precision, Rescale};

use crate::{CliError, SCHEMA_VERSION};

/// A complete, self-contained experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    /// Stem of every artifact file.
    pub name: String,
    pub masses: [f64; 4],
    #[serde(default)]
    pub precision: Precision,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub integrator: IntegratorConfig,
    #[serde(default)]
    pub output: OutputConfig,
    pub experiment: Experiment,
}

fn default_seed() -> u64 {
    2024
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Directory for artifacts; `--out` takes precedence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

/// The experiment kinds, one per subcommand, written as `{"<kind>": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Simulate(SimulateParams),
    Blockmap(BlockmapParams),
    Exponent(ExponentParams),
    Invariants(InvariantsParams),
    CollisionManifold(ManifoldParams),
}

impl Experiment {
    pub fn kind(&self) -> &'static str {
        match self {
            Experiment::Simulate(_) => "simulate",
            Experiment::Blockmap(_) => "blockmap",
            Experiment::Exponent(_) => "exponent",
            Experiment::Invariants(_) => "invariants",
            Experiment::CollisionManifold(_) => "collision-manifold",
        }
    }
}

/// A generalised Levi-Civita state; complex numbers are `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialState {
    pub zeta: [[f64; 2]; 2],
    pub h: [f64; 2],
    /// `Gamma_j = exp(i gamma_phase_j)`.
    pub gamma_phase: [f64; 2],
    pub x: [f64; 2],
    pub y: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateParams {
    pub initial: InitialState,
    /// Signed integration span in the time of `rescale`.
    pub span: f64,
    #[serde(default = "default_rescale")]
    pub rescale: Rescale,
    #[serde(default)]
    pub coupling: Coupling,
}

fn default_rescale() -> Rescale {
    Rescale::Tau
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockmapParams {
    pub anchor: FiberAnchor,
    /// Entry directions `(beta_0, gamma_0, delta_0)` in the unit box.
    pub directions: Vec<[f64; 3]>,
    pub eps: Vec<f64>,
    #[serde(default)]
    pub geometry: SectionGeometry,
    #[serde(default)]
    pub coupling: Coupling,
}

/// Log-spaced epsilon grid from `hi` down to `lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub hi: f64,
    pub lo: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentParams {
    /// Shared fiber anchor. When absent every direction gets its own random anchor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<FiberAnchor>,
    #[serde(default)]
    pub directions: Vec<[f64; 3]>,
    /// Extra directions drawn uniformly from the unit box.
    #[serde(default)]
    pub random_directions: usize,
    pub grid: GridSpec,
    #[serde(default)]
    pub geometry: SectionGeometry,
    #[serde(default)]
    pub sweep: SweepSettings,
    #[serde(default)]
    pub coupling: Coupling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsParams {
    pub trajectories: usize,
    /// Fictitious-time span of each trajectory.
    pub span: f64,
    pub lemma_states: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldParams {
    pub orbits: usize,
    /// Desingularised-time span of each orbit.
    pub span: f64,
    pub angle_points: usize,
    /// Random fibers at which the normal spectrum is computed.
    pub spectrum_fibers: usize,
}

fn invalid(path: &str, message: impl Into<String>) -> CliError {
    CliError::Config { path: path.to_string(), message: message.into() }
}

fn unit_box(path: &str, d: &[f64; 3]) -> Result<(), CliError> {
    if d.iter().any(|v| !(v.abs() <= 1.0)) || d.iter().all(|v| *v == 0.0) {
        return Err(invalid(path, "direction must be nonzero with entries in [-1, 1]"));
    }
    Ok(())
}

fn anchor_ok(path: &str, a: &FiberAnchor) -> Result<(), CliError> {
    if a.h.iter().chain(&a.phase).chain(&a.y).any(|v| !v.is_finite()) {
        return Err(invalid(path, "anchor entries must be finite"));
    }
    Ok(())
}

fn positive(path: &str, v: f64) -> Result<(), CliError> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(invalid(path, format!("must be positive and finite, got {v}")));
    }
    Ok(())
}

fn core(path: &str, r: sbc_core::Result<()>) -> Result<(), CliError> {
    r.map_err(|e| invalid(path, e.to_string()))
}

impl ExperimentConfig {
    /// Parses a config, reporting the field path of any structural error.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Config { path: if path == "." { "<root>".into() } else { path }, message: e.into_inner().to_string() }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    /// Checks every precondition the experiment modules would otherwise hit at run time.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c)) {
            return Err(invalid("name", "must be a non-empty file stem of [A-Za-z0-9._-]"));
        }
        for (i, m) in self.masses.iter().enumerate() {
            positive(&format!("masses[{i}]"), *m)?;
        }
        core("integrator", self.integrator.validate())?;
        let p = format!("experiment.{}", self.experiment.kind());
        match &self.experiment {
            Experiment::Simulate(s) => {
                let i = &s.initial;
                let all = i.zeta.iter().flatten().chain(&i.h).chain(&i.gamma_phase).chain(&i.x).chain(&i.y);
                if all.into_iter().any(|v| !v.is_finite()) {
                    return Err(invalid(&format!("{p}.initial"), "entries must be finite"));
                }
                if !(s.span.is_finite() && s.span != 0.0) {
                    return Err(invalid(&format!("{p}.span"), "must be finite and nonzero"));
                }
                for j in 0..2 {
                    let z2 = i.zeta[j][0].powi(2) + i.zeta[j][1].powi(2);
                    if !(1.0 + 4.0 * i.h[j] * z2 > 0.0) {
                        return Err(invalid(
                            &format!("{p}.initial.h[{j}]"),
                            "1 + 4 h |zeta|^2 must be positive (state outside the working neighbourhood)",
                        ));
                    }
                }
            }
            Experiment::Blockmap(b) => {
                anchor_ok(&format!("{p}.anchor"), &b.anchor)?;
                if b.directions.is_empty() {
                    return Err(invalid(&format!("{p}.directions"), "at least one direction is needed"));
                }
                for (k, d) in b.directions.iter().enumerate() {
                    unit_box(&format!("{p}.directions[{k}]"), d)?;
                }
                if b.eps.is_empty() {
                    return Err(invalid(&format!("{p}.eps"), "at least one value is needed"));
                }
                for (k, e) in b.eps.iter().enumerate() {
                    positive(&format!("{p}.eps[{k}]"), *e)?;
                }
                core(&format!("{p}.geometry"), b.geometry.validate())?;
            }
            Experiment::Exponent(x) => {
                if let Some(a) = &x.anchor {
                    anchor_ok(&format!("{p}.anchor"), a)?;
                }
                if x.directions.is_empty() && x.random_directions == 0 {
                    return Err(invalid(&format!("{p}.directions"), "give directions or random_directions > 0"));
                }
                for (k, d) in x.directions.iter().enumerate() {
                    unit_box(&format!("{p}.directions[{k}]"), d)?;
                }
                positive(&format!("{p}.grid.hi"), x.grid.hi)?;
                positive(&format!("{p}.grid.lo"), x.grid.lo)?;
                if x.grid.lo >= x.grid.hi {
                    return Err(invalid(&format!("{p}.grid.lo"), "must be below grid.hi"));
                }
                let need = x.sweep.stencil_points + 3;
                if x.grid.points < need {
                    return Err(invalid(
                        &format!("{p}.grid.points"),
                        format!("need at least stencil_points + 3 = {need} points for a fit"),
                    ));
                }
                if x.sweep.stencil_points < 2 {
                    return Err(invalid(&format!("{p}.sweep.stencil_points"), "must be at least 2"));
                }
                if !(x.sweep.refine > 0.0 && x.sweep.refine < 1.0) {
                    return Err(invalid(&format!("{p}.sweep.refine"), "must lie in (0, 1)"));
                }
                core(&format!("{p}.geometry"), x.geometry.validate())?;
            }
            Experiment::Invariants(v) => {
                if v.trajectories == 0 && v.lemma_states == 0 {
                    return Err(invalid(&format!("{p}.trajectories"), "nothing to do: trajectories and lemma_states are 0"));
                }
                positive(&format!("{p}.span"), v.span)?;
            }
            Experiment::CollisionManifold(c) => {
                if c.orbits == 0 && c.spectrum_fibers == 0 {
                    return Err(invalid(&format!("{p}.orbits"), "nothing to do: orbits and spectrum_fibers are 0"));
                }
                positive(&format!("{p}.span"), c.span)?;
            }
        }
        Ok(())
    }
}
