//! Executes a validated config in the requested precision.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use sbc_core::analysis::{
    base_orbit, block_map, collision_manifold_suite, conservation_suite, entry_point, epsilon_sweep, geometric_grid,
    h_integral, kappa_lead, lemma_suite, rotate, spectrum_suite, summarize_sweep, BlockExperiment, ChannelFit,
    CrossingKind, FiberAnchor, SweepSummary, SweepTable, SPECTRUM_TARGET,
};
use sbc_core::coords::{Fiber, GlcState, GLC_DIM};
use sbc_core::dynamics::{hamiltonian, total_angular_momentum};
use sbc_core::flow::{integrate, GlcSystem, Precision, Rescale, StopConditions, StopReason};
use sbc_core::params::derive_params_f64;
use sbc_core::{Cx, DoubleDouble, Scalar};

use crate::artifacts::{num, Table};
use crate::config::{
    BlockmapParams, Experiment, ExperimentConfig, ExponentParams, InvariantsParams, ManifoldParams, SimulateParams,
};
use crate::SCHEMA_VERSION;

/// Overall outcome of a run.
#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Complete,
    /// Some rows failed; they are flagged in the tables.
    Partial { failed: usize, total: usize },
    /// Nothing usable was produced.
    Failed(String),
}

impl Status {
    fn label(&self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::Partial { .. } => "partial",
            Status::Failed(_) => "failed",
        }
    }

    fn from_counts(failed: usize, total: usize, what: &str) -> Status {
        if failed == 0 {
            Status::Complete
        } else if failed == total {
            Status::Failed(format!("all {total} {what} failed"))
        } else {
            Status::Partial { failed, total }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub summary: Value,
    pub status: Status,
}

/// Runs `cfg` in its configured precision.
pub fn run(cfg: &ExperimentConfig) -> RunOutput {
    let mut cfg = cfg.clone();
    cfg.integrator.precision = cfg.precision;
    let cfg = &cfg;
    let (tables, results, status) = match cfg.precision {
        Precision::Standard => dispatch::<f64>(cfg),
        Precision::Extended => dispatch::<DoubleDouble>(cfg),
    };
    let mut summary = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": env!("CARGO_PKG_NAME"),
        "tool_version": env!("CARGO_PKG_VERSION"),
        "name": cfg.name,
        "kind": cfg.experiment.kind(),
        "precision": cfg.precision.to_string(),
        "seed": cfg.seed,
        "status": status.label(),
        "config": cfg,
        "results": results,
    });
    match &status {
        Status::Partial { failed, total } => {
            summary["failed_rows"] = json!(failed);
            summary["total_rows"] = json!(total);
        }
        Status::Failed(msg) => summary["failure"] = json!(msg),
        Status::Complete => {}
    }
    RunOutput { tables, summary, status }
}

fn dispatch<T: Scalar>(cfg: &ExperimentConfig) -> (Vec<Table>, Value, Status) {
    match &cfg.experiment {
        Experiment::Simulate(s) => simulate::<T>(cfg, s),
        Experiment::Blockmap(b) => blockmap::<T>(cfg, b),
        Experiment::Exponent(x) => exponent::<T>(cfg, x),
        Experiment::Invariants(v) => invariants::<T>(cfg, v),
        Experiment::CollisionManifold(m) => manifold::<T>(cfg, m),
    }
}

fn failed(msg: String) -> (Vec<Table>, Value, Status) {
    (Vec::new(), Value::Null, Status::Failed(msg))
}

fn initial_state<T: Scalar>(s: &SimulateParams) -> sbc_core::Result<GlcState<T>> {
    let i = &s.initial;
    let c = |v: [f64; 2]| Cx::new(T::c(v[0]), T::c(v[1]));
    let g = |a: f64| Cx::new(T::c(a).cos(), T::c(a).sin());
    let fiber = Fiber {
        h: i.h.map(T::c),
        gamma: i.gamma_phase.map(g),
        x: c(i.x),
        y: c(i.y),
    };
    GlcState::new([c(i.zeta[0]), c(i.zeta[1])], fiber)
}

fn simulate<T: Scalar>(cfg: &ExperimentConfig, s: &SimulateParams) -> (Vec<Table>, Value, Status) {
    let p = match derive_params_f64::<T>(cfg.masses) {
        Ok(p) => p,
        Err(e) => return failed(e.to_string()),
    };
    let s0 = match initial_state::<T>(s) {
        Ok(s0) => s0,
        Err(e) => return failed(e.to_string()),
    };
    let mut sys = GlcSystem::new(&p, s.rescale);
    sys.coupling = s.coupling;
    let timed = s.rescale != Rescale::Physical;
    if timed {
        sys = sys.with_time();
    }
    let mut y0 = s0.to_array().to_vec();
    if timed {
        y0.push(T::zero());
    }
    let traj = match integrate(&sys, T::zero(), &y0, T::c(s.span), &cfg.integrator, &StopConditions::new()) {
        Ok(t) => t,
        Err(e) => return failed(e.to_string()),
    };
    let mut header = vec!["step", "tau", "t"];
    header.extend([
        "zeta1_re", "zeta1_im", "zeta2_re", "zeta2_im", "h1", "h2", "gamma1_re", "gamma1_im", "gamma2_re",
        "gamma2_im", "x_re", "x_im", "y_re", "y_im", "energy", "angular_momentum",
    ]);
    let mut table = Table::new("", &header);
    let invariants = |st: &GlcState<T>| {
        let e = hamiltonian(st, &p).map(|v| v.f64()).unwrap_or(f64::NAN);
        (e, total_angular_momentum(st, &p).f64())
    };
    let (e0, l0) = invariants(&s0);
    let (mut de, mut dl) = (0.0f64, 0.0f64);
    for (k, smp) in traj.samples.iter().enumerate() {
        let st = match GlcState::from_slice(&smp.state[..GLC_DIM]) {
            Ok(st) => st,
            Err(e) => return failed(format!("sample {k}: {e}")),
        };
        let t = if timed { smp.state[GLC_DIM] } else { smp.tau };
        let (e, l) = invariants(&st);
        de = de.max((e - e0).abs());
        dl = dl.max((l - l0).abs());
        let mut row = vec![k.to_string(), num(smp.tau.f64()), num(t.f64())];
        row.extend(smp.state[..GLC_DIM].iter().map(|v| num(v.f64())));
        row.push(num(e));
        row.push(num(l));
        table.push(row);
    }
    let results = json!({
        "stop": traj.stop,
        "accepted": traj.accepted,
        "rejected": traj.rejected,
        "evaluations": traj.evaluations,
        "tau_end": traj.last().tau.f64(),
        "energy_initial": e0,
        "max_energy_drift": de,
        "relative_energy_drift": de / e0.abs().max(1.0),
        "angular_momentum_initial": l0,
        "max_angular_momentum_drift": dl,
        "final_state": traj.last().state[..GLC_DIM].iter().map(|v| v.f64()).collect::<Vec<_>>(),
    });
    let status = match traj.stop {
        StopReason::SpanCompleted => Status::Complete,
        _ => Status::Partial { failed: 1, total: 1 },
    };
    (vec![table], results, status)
}

fn blockmap<T: Scalar>(cfg: &ExperimentConfig, b: &BlockmapParams) -> (Vec<Table>, Value, Status) {
    let p = match derive_params_f64::<T>(cfg.masses) {
        Ok(p) => p,
        Err(e) => return failed(e.to_string()),
    };
    let base = match base_orbit(&b.anchor, &p, &b.geometry, b.coupling, &cfg.integrator) {
        Ok(s) => s,
        Err(e) => return failed(format!("base orbit: {e}")),
    };
    let jobs: Vec<(usize, usize)> =
        (0..b.directions.len()).flat_map(|k| (0..b.eps.len()).map(move |i| (k, i))).collect();
    let mut rows: Vec<((usize, usize), Result<Vec<String>, String>)> = jobs
        .par_iter()
        .map(|&(k, i)| {
            let d = b.directions[k];
            let r = entry_point(&base, d, T::c(b.eps[i]))
                .and_then(|e| block_map(&e, &p, &b.geometry, b.coupling, &cfg.integrator))
                .map(|bp| {
                    let out = rotate(&bp.exit).ratios();
                    let s_of = |kind| bp.crossing(kind).map_or(f64::NAN, |c| c.s.f64());
                    let kl = kappa_lead(&bp.exit.homogeneous()) - kappa_lead(&bp.entry.homogeneous());
                    let hi = h_integral(&bp.exit, &p) - h_integral(&bp.entry, &p);
                    let mut row = out.iter().map(|v| num(v.f64())).collect::<Vec<_>>();
                    row.extend(bp.exit.h().iter().map(|v| num(v.f64())));
                    row.extend([
                        num(kl.f64()),
                        num(hi.f64()),
                        bp.sign_flips().to_string(),
                        bp.log_complete().to_string(),
                        num(s_of(CrossingKind::IntEntry)),
                        num(s_of(CrossingKind::Flip)),
                        num(s_of(CrossingKind::IntExit)),
                        num(bp.span.f64()),
                        bp.steps.to_string(),
                        num(bp.max_imag.f64()),
                    ]);
                    row
                })
                .map_err(|e| e.to_string());
            ((k, i), r)
        })
        .collect();
    rows.sort_by_key(|r| r.0);
    let header = [
        "direction", "eps_index", "eps", "beta0", "gamma0", "delta0", "status", "beta3", "gamma3", "delta3", "h1",
        "h2", "kappa_lead_drift", "h_integral_drift", "sign_flips", "log_complete", "s_int_entry", "s_flip",
        "s_int_exit", "s_sigma3", "steps", "max_imag", "error",
    ];
    let mut table = Table::new("", &header);
    let mut n_failed = 0;
    for ((k, i), r) in &rows {
        let d = b.directions[*k];
        let mut row = vec![k.to_string(), i.to_string(), num(b.eps[*i]), num(d[0]), num(d[1]), num(d[2])];
        match r {
            Ok(v) => {
                row.push("ok".into());
                row.extend(v.iter().cloned());
                row.push(String::new());
            }
            Err(e) => {
                n_failed += 1;
                row.push("failed".into());
                row.extend(std::iter::repeat_n("NaN".to_string(), header.len() - 8));
                row.push(e.clone());
            }
        }
        table.push(row);
    }
    let base_ratios = rotate(&base).ratios().map(|v| v.f64());
    let results = json!({
        "base_entry_ratios": base_ratios,
        "passages": rows.len(),
        "failed": n_failed,
    });
    (vec![table], results, Status::from_counts(n_failed, rows.len(), "passages"))
}

/// The experiments of an `exponent` config, in the order their random draws are made.
pub fn exponent_experiments(cfg: &ExperimentConfig, x: &ExponentParams) -> Vec<BlockExperiment> {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    let draw_anchor = |r: &mut ChaCha8Rng| {
        x.anchor.unwrap_or_else(|| FiberAnchor {
            h: [r.gen_range(-0.5..0.5), r.gen_range(-0.5..0.5)],
            phase: [r.gen_range(0.0..TAU), r.gen_range(0.0..TAU)],
            y: [r.gen_range(-0.2..0.2), r.gen_range(-0.2..0.2)],
        })
    };
    let mut pairs = Vec::new();
    for d in &x.directions {
        pairs.push((draw_anchor(&mut r), *d));
    }
    for _ in 0..x.random_directions {
        let a = draw_anchor(&mut r);
        let d = [0; 3].map(|_| r.gen_range(-1.0..1.0));
        pairs.push((a, d));
    }
    let grid = geometric_grid(x.grid.hi, x.grid.lo, x.grid.points);
    pairs
        .into_iter()
        .map(|(anchor, direction)| BlockExperiment {
            masses: cfg.masses,
            anchor,
            direction,
            eps_grid: grid.clone(),
            geometry: x.geometry,
            integrator: cfg.integrator,
            sweep: x.sweep,
            coupling: x.coupling,
        })
        .collect()
}

fn fit_json(c: &ChannelFit) -> Value {
    match &c.fit {
        Some(f) => json!({
            "channel": c.channel, "slope": f.slope, "slope_stderr": f.slope_stderr, "rms": f.rms,
            "window": f.window, "rows": f.used,
        }),
        None => json!({ "channel": c.channel, "slope": Value::Null, "note": c.note }),
    }
}

fn exponent<T: Scalar>(cfg: &ExperimentConfig, x: &ExponentParams) -> (Vec<Table>, Value, Status) {
    let exps = exponent_experiments(cfg, x);
    let mut runs: Vec<(usize, Result<(SweepTable, SweepSummary), String>)> = exps
        .par_iter()
        .enumerate()
        .map(|(k, e)| {
            let r = epsilon_sweep::<T>(e).map(|t| {
                let s = summarize_sweep(&t, &e.sweep);
                (t, s)
            });
            (k, r.map_err(|e| e.to_string()))
        })
        .collect();
    runs.sort_by_key(|r| r.0);
    let header = [
        "direction", "k", "eps", "status", "beta3", "gamma3", "delta3", "h1", "h2", "h1_err", "h2_err",
        "h1_signal", "h2_signal", "h1_signal_err", "h2_signal_err", "usable", "r1", "beta1", "gamma1", "delta1",
        "entry_face", "r2", "exit_face", "t_deviation", "kappa_lead_drift", "kappa_full_drift", "h_integral_drift",
        "max_imag", "sign_flips", "log_complete", "error",
    ];
    let mut table = Table::new("", &header);
    let mut per_direction = Vec::new();
    let mut slopes = Vec::new();
    let mut n_failed = 0;
    for (k, r) in &runs {
        let e = &exps[*k];
        match r {
            Ok((t, s)) => {
                for row in &t.rows {
                    let mut v = vec![k.to_string(), row.k.to_string(), num(row.eps)];
                    v.push(if row.error.is_none() { "ok" } else { "failed" }.into());
                    v.extend(row.exit_ratios.iter().map(|x| num(*x)));
                    v.extend(row.exit_h.iter().chain(&row.exit_h_err).map(|x| num(*x)));
                    v.extend(row.h_signal.iter().chain(&row.h_signal_err).map(|x| num(*x)));
                    v.push(row.usable.to_string());
                    v.push(num(row.r1));
                    v.extend(row.ratios1.iter().map(|x| num(*x)));
                    v.extend([row.entry_face.to_string(), num(row.r2), row.exit_face.to_string()]);
                    v.extend([row.t_deviation, row.kappa_lead_drift, row.kappa_full_drift, row.h_integral_drift].map(num));
                    v.extend([num(row.max_imag), row.sign_flips.to_string(), row.log_complete.to_string()]);
                    v.push(row.error.clone().unwrap_or_default());
                    table.push(v);
                }
                let hs: Vec<f64> = s.h.iter().filter_map(ChannelFit::slope).collect();
                if hs.is_empty() {
                    n_failed += 1;
                }
                slopes.extend(hs);
                per_direction.push(json!({
                    "direction": k,
                    "vector": e.direction,
                    "anchor": e.anchor,
                    "h": s.h.iter().map(fit_json).collect::<Vec<_>>(),
                    "position": s.position.iter().map(fit_json).collect::<Vec<_>>(),
                    "quadratic_c2": s.quadratic.iter().map(|q| q.as_ref().map(|q| json!({
                        "c2": q.coeffs[2], "stderr": q.stderr[2],
                    }))).collect::<Vec<_>>(),
                    "d1": s.d1.iter().map(fit_json).collect::<Vec<_>>(),
                    "t_deviation": fit_json(&s.t_deviation),
                    "amplitude": s.amplitude,
                    "noise_floor": s.noise_floor,
                    "exceptional": s.exceptional,
                    "usable_rows": s.usable_rows,
                    "max_imag": s.max_imag,
                    "all_logs_complete": s.all_logs_complete,
                }));
            }
            Err(msg) => {
                n_failed += 1;
                per_direction.push(json!({ "direction": k, "vector": e.direction, "error": msg }));
            }
        }
    }
    let mean = if slopes.is_empty() { f64::NAN } else { slopes.iter().sum::<f64>() / slopes.len() as f64 };
    let results = json!({
        "directions": per_direction,
        "h_slopes": slopes,
        "mean_h_slope": if mean.is_finite() { json!(mean) } else { Value::Null },
        "target_h_slope": 8.0 / 3.0,
    });
    (vec![table], results, Status::from_counts(n_failed, runs.len(), "directions"))
}

fn invariants<T: Scalar>(cfg: &ExperimentConfig, v: &InvariantsParams) -> (Vec<Table>, Value, Status) {
    let mut tables = Vec::new();
    let mut results = json!({});
    let mut errors = Vec::new();
    if v.trajectories > 0 {
        match conservation_suite::<T>(cfg.masses, v.trajectories, v.span, cfg.seed, &cfg.integrator) {
            Ok(c) => {
                let mut t = Table::new("", &["trajectory", "field", "energy_drift", "momentum_drift", "steps"]);
                let mut recs = c.records.clone();
                recs.sort_by(|a, b| (a.trajectory, &a.field).cmp(&(b.trajectory, &b.field)));
                for r in &recs {
                    t.push(vec![
                        r.trajectory.to_string(),
                        r.field.clone(),
                        num(r.energy_drift),
                        num(r.momentum_drift),
                        r.steps.to_string(),
                    ]);
                }
                let mut kt = Table::new("kepler", &["trajectory", "h_drift", "l_drift", "y_drift"]);
                let mut kep = c.kepler.clone();
                kep.sort_by_key(|r| r.trajectory);
                for r in &kep {
                    kt.push(vec![r.trajectory.to_string(), num(r.h_drift), num(r.l_drift), num(r.y_drift)]);
                }
                tables.push(t);
                tables.push(kt);
                results["conservation"] = json!({
                    "trajectories": v.trajectories,
                    "rejected_draws": c.rejected,
                    "max_energy_drift": c.max_energy_drift,
                    "max_angular_momentum_drift": c.max_momentum_drift,
                    "max_kepler_drift": c.max_kepler_drift,
                });
            }
            Err(e) => errors.push(format!("conservation: {e}")),
        }
    }
    if v.lemma_states > 0 {
        match lemma_suite::<T>(cfg.masses, v.lemma_states, cfg.seed.wrapping_add(1)) {
            Ok(l) => results["lemma"] = json!(l),
            Err(e) => errors.push(format!("lemma: {e}")),
        }
    }
    let parts = usize::from(v.trajectories > 0) + usize::from(v.lemma_states > 0);
    if !errors.is_empty() {
        results["errors"] = json!(errors);
    }
    let status = match Status::from_counts(errors.len(), parts, "checks") {
        Status::Failed(_) => Status::Failed(errors.join("; ")),
        s => s,
    };
    (tables, results, status)
}

fn manifold<T: Scalar>(cfg: &ExperimentConfig, m: &ManifoldParams) -> (Vec<Table>, Value, Status) {
    let mut tables = Vec::new();
    let mut results = json!({});
    let mut errors = Vec::new();
    if m.orbits > 0 {
        match collision_manifold_suite::<T>(cfg.masses, m.orbits, m.span, m.angle_points, cfg.seed, &cfg.integrator) {
            Ok(s) => {
                let mut t = Table::new(
                    "",
                    &[
                        "orbit", "start_chart", "kappa1_drift", "kappa2_drift", "switches", "switch_continuity",
                        "samples", "max_r", "completed",
                    ],
                );
                for o in &s.orbits {
                    t.push(vec![
                        o.orbit.to_string(),
                        o.start_chart.clone(),
                        num(o.kappa1_drift),
                        num(o.kappa2_drift),
                        o.switches.to_string(),
                        num(o.switch_continuity),
                        o.samples.to_string(),
                        num(o.max_r),
                        o.completed.to_string(),
                    ]);
                }
                tables.push(t);
                results["drift"] = json!({
                    "orbits": s.orbits.len(),
                    "max_kappa1_drift": s.max_kappa1_drift,
                    "max_kappa2_drift": s.max_kappa2_drift,
                    "total_switches": s.total_switches,
                    "angle_points": s.angles.len(),
                    "min_transversality_angle": s.min_angle,
                });
            }
            Err(e) => errors.push(format!("collision manifold: {e}")),
        }
    }
    if m.spectrum_fibers > 0 {
        match spectrum_suite::<T>(&[cfg.masses], m.spectrum_fibers, cfg.seed.wrapping_add(1)) {
            Ok(s) => {
                let mut t = Table::new(
                    "spectrum",
                    &["fiber", "lambda1", "lambda2", "lambda3", "lambda4", "norm1", "norm2", "norm3", "norm4", "rel_err"],
                );
                for r in &s.records {
                    let mut row = vec![r.fiber.to_string()];
                    row.extend(r.spectrum.eigenvalues.iter().chain(&r.spectrum.normalised).map(|v| num(*v)));
                    row.push(num(r.rel_err));
                    t.push(row);
                }
                tables.push(t);
                results["eigenvalues"] = json!({
                    "target_normalised": SPECTRUM_TARGET,
                    "fibers": s.records.len(),
                    "max_rel_err": s.max_rel_err,
                    "first": s.records.first().map(|r| &r.spectrum),
                });
            }
            Err(e) => errors.push(format!("spectrum: {e}")),
        }
    }
    let parts = usize::from(m.orbits > 0) + usize::from(m.spectrum_fibers > 0);
    if !errors.is_empty() {
        results["errors"] = json!(errors);
    }
    let status = match Status::from_counts(errors.len(), parts, "checks") {
        Status::Failed(_) => Status::Failed(errors.join("; ")),
        s => s,
    };
    (tables, results, status)
}
