//! Built-in experiment configs.

use sbc_core::analysis::{FiberAnchor, SectionGeometry, SweepSettings};
use sbc_core::dynamics::Coupling;
use sbc_core::flow::{IntegratorConfig, Precision, Rescale};

use crate::config::{
    BlockmapParams, Experiment, ExperimentConfig, ExponentParams, GridSpec, InitialState, InvariantsParams,
    ManifoldParams, OutputConfig, SimulateParams,
};
use crate::SCHEMA_VERSION;

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub config: ExperimentConfig,
}

fn base(name: &str, masses: [f64; 4], precision: Precision, integrator: IntegratorConfig, e: Experiment) -> ExperimentConfig {
    ExperimentConfig {
        schema_version: SCHEMA_VERSION,
        name: name.into(),
        masses,
        precision,
        seed: 2024,
        integrator: IntegratorConfig { precision, ..integrator },
        output: OutputConfig::default(),
        experiment: e,
    }
}

fn sweep_grid() -> GridSpec {
    GridSpec { hi: 1e-2, lo: 1e-4, points: 13 }
}

fn fine() -> IntegratorConfig {
    IntegratorConfig::with_tol(1e-22, 1e-24)
}

/// Every preset, in display order.
pub fn list_presets() -> Vec<Preset> {
    let equal = [1.0; 4];
    vec![
        Preset {
            name: "equal-masses",
            description: "h-channel exponent over 5 random directions, equal masses, double-double",
            config: base(
                "equal-masses",
                equal,
                Precision::Extended,
                fine(),
                Experiment::Exponent(ExponentParams {
                    anchor: None,
                    directions: Vec::new(),
                    random_directions: 5,
                    grid: sweep_grid(),
                    geometry: SectionGeometry::default(),
                    sweep: SweepSettings::default(),
                    coupling: Coupling::Full,
                }),
            ),
        },
        Preset {
            name: "collinear",
            description: "block map of a collinear passage; every imaginary part is zero",
            config: base(
                "collinear",
                equal,
                Precision::Standard,
                IntegratorConfig::default(),
                Experiment::Blockmap(BlockmapParams {
                    anchor: FiberAnchor { h: [-0.3, 0.2], phase: [0.0, 0.0], y: [0.1, 0.0] },
                    directions: vec![[0.0, 0.6, 0.0]],
                    eps: vec![1e-2, 3e-3, 1e-3],
                    geometry: SectionGeometry::default(),
                    coupling: Coupling::Full,
                }),
            ),
        },
        Preset {
            name: "rectangular",
            description: "block map of a rectangular passage with equal masses and energies",
            config: base(
                "rectangular",
                equal,
                Precision::Standard,
                IntegratorConfig::default(),
                Experiment::Blockmap(BlockmapParams {
                    anchor: FiberAnchor { h: [-0.3, -0.3], phase: [0.7, 0.7], y: [0.0, 0.0] },
                    directions: vec![[0.5, 0.0, 0.5]],
                    eps: vec![1e-2, 3e-3, 1e-3],
                    geometry: SectionGeometry::default(),
                    coupling: Coupling::Full,
                }),
            ),
        },
        Preset {
            name: "caledonian",
            description: "h-channel exponent for masses (1, 2, 1, 2), where a1 = a2",
            config: base(
                "caledonian",
                [1.0, 2.0, 1.0, 2.0],
                Precision::Extended,
                fine(),
                Experiment::Exponent(ExponentParams {
                    anchor: None,
                    directions: Vec::new(),
                    random_directions: 3,
                    grid: sweep_grid(),
                    geometry: SectionGeometry::default(),
                    sweep: SweepSettings::default(),
                    coupling: Coupling::Full,
                }),
            ),
        },
        Preset {
            name: "invariants",
            description: "energy, angular momentum and Kepler-integral drifts plus lemma residuals",
            config: base(
                "invariants",
                [1.0, 2.0, 0.7, 1.6],
                Precision::Standard,
                IntegratorConfig::default(),
                Experiment::Invariants(InvariantsParams { trajectories: 8, span: 2.0, lemma_states: 50 }),
            ),
        },
        Preset {
            name: "collision-manifold",
            description: "kappa drift on the collision manifold and the normal eigenvalues",
            config: base(
                "collision-manifold",
                [1.0, 2.0, 0.7, 1.6],
                Precision::Standard,
                IntegratorConfig::default(),
                Experiment::CollisionManifold(ManifoldParams {
                    orbits: 6,
                    span: 5.0,
                    angle_points: 64,
                    spectrum_fibers: 4,
                }),
            ),
        },
        Preset {
            name: "simulate",
            description: "one trajectory in fictitious time with physical time accumulated",
            config: base(
                "simulate",
                equal,
                Precision::Standard,
                IntegratorConfig::default(),
                Experiment::Simulate(SimulateParams {
                    initial: InitialState {
                        zeta: [[0.3, 0.1], [-0.2, 0.25]],
                        h: [-0.4, -0.3],
                        gamma_phase: [0.0, 1.0],
                        x: [2.0, 0.5],
                        y: [0.0, 0.1],
                    },
                    span: 2.0,
                    rescale: Rescale::Tau,
                    coupling: Coupling::Full,
                }),
            ),
        },
    ]
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Option<Preset> {
    list_presets().into_iter().find(|p| p.name == name)
}
