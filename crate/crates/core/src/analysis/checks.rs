//! Reproducible check suites over random states: spectrum at the equilibrium
//! manifold, the collision-manifold integrals, conservation, the series
//! order, the potential identities, the drift order of the approximate
//! integrals and the C^0 exit sequence.
//!
//! Every suite draws from a seeded ChaCha stream, so a seed and a size fully
//! determine the result.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blowup::{jacobian_at_n, kappa1, kappa2, on_divisor, transversality_angle, Chart, SpectrumResult};
use crate::coords::{Fiber, GlcState, GLC_DIM};
use crate::dynamics::{hamiltonian, total_angular_momentum, Coupling};
use crate::error::{Error, Result};
use crate::flow::{integrate, GlcSystem, IntegratorConfig, NearCollisionConfig, NearStop, Rescale, StopConditions, System};
use crate::params::{derive_params_f64, MassParams};
use crate::potential::{check_partial_relations, k_exact, k_series};
use crate::scalar::{Cx, Scalar};

use super::fit::{fit_exponent, ExponentFit};
use super::normal_form::{kappa_full, kappa_lead, NormalFormSystem};
use super::sweep::{epsilon_sweep, BlockExperiment, SweepTable};

/// Normal eigenvalues at the equilibrium manifold divided by the positive one.
pub const SPECTRUM_TARGET: [f64; 4] = [1.0, -1.0, -1.0, -3.0];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn polar<T: Scalar>(r: f64, phi: f64) -> Cx<T> {
    Cx::new(T::c(r * phi.cos()), T::c(r * phi.sin()))
}

/// Fiber with energies in `h_range`, uniform phases, `|x|` in `x_range` and
/// `y` in the box of half-width `y_half`.
fn random_fiber<T: Scalar>(r: &mut ChaCha8Rng, h_range: [f64; 2], x_range: [f64; 2], y_half: f64) -> Fiber<T> {
    let h = [r.gen_range(h_range[0]..h_range[1]), r.gen_range(h_range[0]..h_range[1])];
    Fiber {
        h: h.map(T::c),
        gamma: [polar(1.0, r.gen_range(0.0..TAU)), polar(1.0, r.gen_range(0.0..TAU))],
        x: polar(r.gen_range(x_range[0]..x_range[1]), r.gen_range(0.0..TAU)),
        y: Cx::new(T::c(r.gen_range(-y_half..y_half)), T::c(r.gen_range(-y_half..y_half))),
    }
}

/// Random masses in `[0.5, 2]`.
pub fn random_masses(seed: u64) -> [f64; 4] {
    let mut r = rng(seed);
    [0; 4].map(|_| r.gen_range(0.5..2.0))
}

fn mass_params<T: Scalar>(m: [f64; 4]) -> Result<MassParams<T>> {
    derive_params_f64(m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub masses: [f64; 4],
    pub fiber: usize,
    pub spectrum: SpectrumResult,
    /// Largest `|normalised_i - target_i| / |target_i|`.
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSuite {
    pub records: Vec<SpectrumRecord>,
    pub max_rel_err: f64,
}

/// Linearises at the equilibrium manifold for `fibers` random fibers per mass set.
pub fn spectrum_suite<T: Scalar>(mass_sets: &[[f64; 4]], fibers: usize, seed: u64) -> Result<SpectrumSuite> {
    let mut r = rng(seed);
    let mut records = Vec::new();
    for m in mass_sets {
        let p = mass_params::<T>(*m)?;
        for k in 0..fibers {
            let f = random_fiber::<T>(&mut r, [-0.5, 0.5], [0.8, 1.5], 0.5);
            let spectrum = jacobian_at_n(&f, &p)?;
            let rel_err = spectrum
                .normalised
                .iter()
                .zip(SPECTRUM_TARGET)
                .map(|(v, t)| ((v - t) / t).abs())
                .fold(0.0, f64::max);
            records.push(SpectrumRecord { masses: *m, fiber: k, spectrum, rel_err });
        }
    }
    let max_rel_err = records.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    Ok(SpectrumSuite { records, max_rel_err })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifoldOrbit {
    pub orbit: usize,
    pub start_chart: String,
    pub kappa1_drift: f64,
    pub kappa2_drift: f64,
    pub switches: usize,
    pub switch_continuity: f64,
    pub samples: usize,
    /// Largest `|r|` seen; the orbit should stay on the divisor.
    pub max_r: f64,
    pub completed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifoldSuite {
    pub orbits: Vec<ManifoldOrbit>,
    pub max_kappa1_drift: f64,
    pub max_kappa2_drift: f64,
    pub total_switches: usize,
    /// Transversality angle at each sampled direction, radians.
    pub angles: Vec<f64>,
    pub min_angle: f64,
}

/// Integrates `orbits` random orbits of the collision manifold for `span`
/// units of desingularised time and measures the drift of the two integrals
/// in the projective metric. Separately samples `angle_points` random
/// directions and measures the angle between the level sets there.
pub fn collision_manifold_suite<T: Scalar>(
    masses: [f64; 4],
    orbits: usize,
    span: f64,
    angle_points: usize,
    seed: u64,
    cfg: &IntegratorConfig,
) -> Result<ManifoldSuite> {
    let p = mass_params::<T>(masses)?;
    let mut r = rng(seed);
    let near = NearCollisionConfig { span, ..Default::default() };
    let mut out = Vec::new();
    for k in 0..orbits {
        let chart = Chart::from_index(r.gen_range(0..4));
        let ratios = [0; 3].map(|_| T::c(r.gen_range(-1.0..1.0)));
        let f = random_fiber::<T>(&mut r, [-0.5, 0.5], [0.8, 1.5], 0.5);
        let start = on_divisor(chart, ratios, f);
        let tr = crate::flow::integrate_near_collision(&start, &p, Coupling::Full, &near, cfg)?;
        let k1 = kappa1(&start)?;
        let k2 = kappa2(&start)?;
        let mut d1 = T::zero();
        let mut d2 = T::zero();
        let mut max_r = T::zero();
        for s in &tr.samples {
            d1 = d1.max(kappa1(&s.point)?.distance(&k1));
            d2 = d2.max(kappa2(&s.point)?.distance(&k2));
            max_r = max_r.max(s.point.r.abs());
        }
        out.push(ManifoldOrbit {
            orbit: k,
            start_chart: chart.to_string(),
            kappa1_drift: d1.f64(),
            kappa2_drift: d2.f64(),
            switches: tr.switches.len(),
            switch_continuity: tr.switch_continuity.f64(),
            samples: tr.samples.len(),
            max_r: max_r.f64(),
            completed: matches!(tr.stop, NearStop::SpanCompleted),
        });
    }
    let mut angles = Vec::with_capacity(angle_points);
    while angles.len() < angle_points {
        let v = [0; 4].map(|_| T::c(r.gen_range(-1.0..1.0)));
        match transversality_angle(&v) {
            Ok(a) => angles.push(a.f64()),
            Err(Error::DegenerateProjective) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(ManifoldSuite {
        max_kappa1_drift: out.iter().map(|o| o.kappa1_drift).fold(0.0, f64::max),
        max_kappa2_drift: out.iter().map(|o| o.kappa2_drift).fold(0.0, f64::max),
        total_switches: out.iter().map(|o| o.switches).sum(),
        min_angle: angles.iter().copied().fold(f64::INFINITY, f64::min),
        orbits: out,
        angles,
    })
}

/// Drift record of one conservation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservationRecord {
    pub trajectory: usize,
    pub field: String,
    /// Largest `|H(tau) - H(0)|` over the samples, divided by the sum of the
    /// magnitudes of the terms of `H(0)`.
    pub energy_drift: f64,
    /// The same for the total angular momentum.
    pub momentum_drift: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeplerRecord {
    pub trajectory: usize,
    pub h_drift: f64,
    pub l_drift: f64,
    pub y_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservationSuite {
    pub records: Vec<ConservationRecord>,
    pub kepler: Vec<KeplerRecord>,
    /// Initial conditions redrawn because the orbit left the working domain.
    pub rejected: usize,
    pub max_energy_drift: f64,
    pub max_momentum_drift: f64,
    pub max_kepler_drift: f64,
}

fn energy_scale<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<T> {
    let half = T::c(0.5);
    let h = s.h();
    Ok((p.a_third[0] * h[0] * half).abs()
        + (p.a_third[1] * h[1] * half).abs()
        + p.mu * s.y().norm_sqr() * half
        + k_exact(s, p)?.abs())
}

fn momentum_scale<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> T {
    let z = s.zeta();
    let half = T::c(0.5);
    (p.a_third[0] * z[0].im * half).abs()
        + (p.a_third[1] * z[1].im * half).abs()
        + (s.x().conj() * s.y()).im.abs()
}

/// A state in the working neighbourhood, away from both binary collisions:
/// `|zeta_j| <= 0.12` with `|Im zeta_j| >= 0.02`. The fictitious flow then
/// stays clear of the turning point `U_j^2 = 1/2`, where these coordinates
/// end, for the spans used here.
fn random_near_state<T: Scalar>(r: &mut ChaCha8Rng) -> Result<GlcState<T>> {
    let f = random_fiber::<T>(r, [-0.3, 0.3], [2.0, 3.0], 0.3);
    let zeta = [0; 2].map(|_| {
        let re = r.gen_range(-0.1..0.1);
        let im = r.gen_range(0.02..0.06) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        Cx::new(T::c(re), T::c(im))
    });
    GlcState::new(zeta, f)
}

fn conservation_run<T: Scalar, S: System<T>>(
    sys: &S,
    s0: &GlcState<T>,
    p: &MassParams<T>,
    span: f64,
    cfg: &IntegratorConfig,
) -> Result<(f64, f64, usize)> {
    let tr = integrate(sys, T::zero(), &s0.to_array(), T::c(span), cfg, &StopConditions::new())?;
    if !matches!(tr.stop, crate::flow::StopReason::SpanCompleted) {
        return Err(Error::DomainExit(format!("{:?}", tr.stop)));
    }
    let h0 = hamiltonian(s0, p)?;
    let m0 = total_angular_momentum(s0, p);
    let (hs, ms) = (energy_scale(s0, p)?, momentum_scale(s0, p));
    let mut dh = T::zero();
    let mut dm = T::zero();
    for smp in &tr.samples {
        let s = GlcState::from_slice(&smp.state[..GLC_DIM])?;
        dh = dh.max((hamiltonian(&s, p)? - h0).abs());
        dm = dm.max((total_angular_momentum(&s, p) - m0).abs());
    }
    Ok(((dh / hs).f64(), (dm / ms).f64(), tr.accepted))
}

/// Integrates `trajectories` random states along `X` for `span` units of
/// `tau`, along `X_H` for the matching physical time `span |zeta_1|^2 |zeta_2|^2`
/// of the initial point, and along the uncoupled field for the Kepler invariants.
pub fn conservation_suite<T: Scalar>(
    masses: [f64; 4],
    trajectories: usize,
    span: f64,
    seed: u64,
    cfg: &IntegratorConfig,
) -> Result<ConservationSuite> {
    let p = mass_params::<T>(masses)?;
    let mut r = rng(seed);
    let mut records = Vec::new();
    let mut kepler = Vec::new();
    let mut rejected = 0;
    let fields = [("X", Rescale::Tau), ("X_H", Rescale::Physical)];
    while kepler.len() < trajectories {
        if rejected > 20 * trajectories {
            return Err(Error::DomainExit("too many rejected initial conditions".into()));
        }
        let s0 = match random_near_state::<T>(&mut r) {
            Ok(s) => s,
            Err(_) => {
                rejected += 1;
                continue;
            }
        };
        let k = kepler.len();
        // X_H runs over the physical time the initial rescaling assigns to `span`.
        let z = s0.zeta();
        let w0 = (z[0].norm_sqr() * z[1].norm_sqr()).f64();
        let runs: Result<Vec<(f64, f64, usize)>> = fields
            .iter()
            .map(|(_, rs)| {
                let t = if *rs == Rescale::Physical { span * w0 } else { span };
                conservation_run(&GlcSystem::new(&p, *rs), &s0, &p, t, cfg)
            })
            .collect();
        let kep = GlcSystem::new(&p, Rescale::Tau).kepler();
        let kt = integrate(&kep, T::zero(), &s0.to_array(), T::c(span), cfg, &StopConditions::new());
        let (runs, kt) = match (runs, kt) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                rejected += 1;
                continue;
            }
        };
        for ((name, _), (e, m, steps)) in fields.iter().zip(runs) {
            records.push(ConservationRecord {
                trajectory: k,
                field: name.to_string(),
                energy_drift: e,
                momentum_drift: m,
                steps,
            });
        }
        let mut rec = KeplerRecord { trajectory: k, h_drift: 0.0, l_drift: 0.0, y_drift: 0.0 };
        for smp in &kt.samples {
            let s = GlcState::from_slice(&smp.state[..GLC_DIM])?;
            for j in 0..2 {
                rec.h_drift = rec.h_drift.max((s.h()[j] - s0.h()[j]).abs().f64());
                rec.l_drift = rec.l_drift.max((s.zeta()[j].im - s0.zeta()[j].im).abs().f64());
            }
            rec.y_drift = rec.y_drift.max((s.y() - s0.y()).norm_sqr().sqrt().f64());
        }
        kepler.push(rec);
    }
    Ok(ConservationSuite {
        max_energy_drift: records.iter().map(|r| r.energy_drift).fold(0.0, f64::max),
        max_momentum_drift: records.iter().map(|r| r.momentum_drift).fold(0.0, f64::max),
        max_kepler_drift: kepler.iter().map(|r| r.h_drift.max(r.l_drift).max(r.y_drift)).fold(0.0, f64::max),
        records,
        kepler,
        rejected,
    })
}

/// Truncation error of the degree-`degree` potential series under `zeta -> s zeta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesOrder {
    pub scales: Vec<f64>,
    pub errors: Vec<f64>,
    /// Rows whose error stands above the round-off floor `100 eps |K|`.
    pub usable: Vec<bool>,
    pub fit: ExponentFit,
}

/// Scales only the binary coordinates of `base`; the fiber is kept. Rows at
/// the round-off floor of `T` are excluded from the fit.
pub fn series_order<T: Scalar>(base: &GlcState<T>, p: &MassParams<T>, degree: u32, scales: &[f64]) -> Result<SeriesOrder> {
    let mut errors = Vec::with_capacity(scales.len());
    let mut usable = Vec::with_capacity(scales.len());
    for s in scales {
        let st = GlcState::new(base.zeta().map(|z| z * T::c(*s)), *base.fiber())?;
        let exact = k_exact(&st, p)?;
        let err = (k_series(&st, p, degree)? - exact).abs();
        usable.push(err > T::c(100.0) * T::epsilon() * exact.abs());
        errors.push(err.f64());
    }
    let fit = fit_exponent(scales, &errors, &usable)?;
    Ok(SeriesOrder { scales: scales.to_vec(), errors, usable, fit })
}

/// A random state suitable for the series check.
pub fn random_series_state<T: Scalar>(seed: u64) -> Result<GlcState<T>> {
    let mut r = rng(seed);
    let f = random_fiber::<T>(&mut r, [-0.2, 0.2], [1.0, 1.5], 0.5);
    let zeta = [0; 2].map(|_| polar(r.gen_range(0.5..1.0), r.gen_range(0.0..TAU)));
    GlcState::new(zeta, f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaSuite {
    pub states: usize,
    /// Largest residual of each relation.
    pub max_residual: [f64; 3],
    /// Largest residual of each relation divided by `max(1, |K|)` at the state.
    pub max_relative: [f64; 3],
}

/// Evaluates the three partial-derivative relations of the potential on
/// `n` random states with `|zeta_j|` in `[0.05, 0.5]`.
pub fn lemma_suite<T: Scalar>(masses: [f64; 4], n: usize, seed: u64) -> Result<LemmaSuite> {
    let p = mass_params::<T>(masses)?;
    let mut r = rng(seed);
    let mut max_residual = [0.0f64; 3];
    let mut max_relative = [0.0f64; 3];
    let mut done = 0;
    while done < n {
        let f = random_fiber::<T>(&mut r, [-0.5, 0.5], [1.0, 2.0], 0.5);
        let zeta = [0; 2].map(|_| polar(r.gen_range(0.05..0.5), r.gen_range(0.0..TAU)));
        let Ok(s) = GlcState::new(zeta, f) else { continue };
        let res = check_partial_relations(&s, &p)?;
        let k = k_exact(&s, &p)?.abs().f64().max(1.0);
        for i in 0..3 {
            max_residual[i] = max_residual[i].max(res[i].f64());
            max_relative[i] = max_relative[i].max(res[i].f64() / k);
        }
        done += 1;
    }
    Ok(LemmaSuite { states: n, max_residual, max_relative })
}

/// Which field carries the trajectories of a drift-order measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriftField {
    /// The full field `X`.
    Full,
    /// The truncated degree-9 normal form.
    NormalForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KappaDrift {
    pub field: DriftField,
    pub scales: Vec<f64>,
    pub lead_drift: Vec<f64>,
    pub full_drift: Vec<f64>,
    pub lead: ExponentFit,
    pub full: ExponentFit,
}

impl KappaDrift {
    pub fn slope_gain(&self) -> f64 {
        self.full.slope - self.lead.slope
    }
}

/// Scales the homogeneous coordinates of `base` by each `eps`, integrates
/// for `span` units of `tau`, and records the largest change of the
/// leading and the extended integral along each trajectory.
pub fn kappa_drift_orders<T: Scalar>(
    base: &GlcState<T>,
    p: &MassParams<T>,
    field: DriftField,
    scales: &[f64],
    span: f64,
    cfg: &IntegratorConfig,
) -> Result<KappaDrift> {
    let mut lead_drift = Vec::with_capacity(scales.len());
    let mut full_drift = Vec::with_capacity(scales.len());
    for eps in scales {
        let s0 = GlcState::new(base.zeta().map(|z| z * T::c(*eps)), *base.fiber())?;
        let y0 = s0.to_array();
        let none = StopConditions::new();
        let tr = match field {
            DriftField::Full => integrate(&GlcSystem::new(p, Rescale::Tau), T::zero(), &y0, T::c(span), cfg, &none)?,
            DriftField::NormalForm => {
                let sys = NormalFormSystem { params: p, rescale: Rescale::Tau };
                integrate(&sys, T::zero(), &y0, T::c(span), cfg, &none)?
            }
        };
        let l0 = kappa_lead(&s0.homogeneous());
        let f0 = kappa_full(&s0);
        let mut dl = T::zero();
        let mut df = T::zero();
        for smp in &tr.samples {
            let s = GlcState::from_slice(&smp.state[..GLC_DIM])?;
            dl = dl.max((kappa_lead(&s.homogeneous()) - l0).abs());
            df = df.max((kappa_full(&s) - f0).abs());
        }
        lead_drift.push(dl.f64());
        full_drift.push(df.f64());
    }
    let all = vec![true; scales.len()];
    Ok(KappaDrift {
        field,
        scales: scales.to_vec(),
        lead: fit_exponent(scales, &lead_drift, &all)?,
        full: fit_exponent(scales, &full_drift, &all)?,
        lead_drift,
        full_drift,
    })
}

/// Successive exit-point differences of a sweep on a halving grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExitSequence {
    pub eps: Vec<f64>,
    /// `|exit_k - exit_{k+1}|` over ratios and energies.
    pub differences: Vec<f64>,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    pub monotone: bool,
}

pub fn exit_sequence(table: &SweepTable) -> Result<ExitSequence> {
    if let Some(r) = table.rows.iter().find(|r| r.error.is_some()) {
        return Err(Error::DomainExit(format!("row {} failed: {}", r.k, r.error.as_deref().unwrap_or(""))));
    }
    let rows = &table.rows;
    let differences: Vec<f64> = rows
        .windows(2)
        .map(|w| {
            let a = w[0].exit_ratios.iter().chain(&w[0].exit_h);
            let b = w[1].exit_ratios.iter().chain(&w[1].exit_h);
            a.zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
        })
        .collect();
    let ratios: Vec<f64> = differences.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(ExitSequence {
        eps: rows.iter().map(|r| r.eps).collect(),
        max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        monotone: !ratios.is_empty() && ratios.iter().all(|r| *r < 1.0),
        differences,
        ratios,
    })
}

/// Runs the experiment on `eps_k = 2^{-k} eps_0` for `k < levels` and
/// measures the exit sequence.
pub fn c0_sequence<T: Scalar>(exp: &BlockExperiment, eps0: f64, levels: usize) -> Result<ExitSequence> {
    let mut e = exp.clone();
    e.eps_grid = (0..levels).map(|k| eps0 * 0.5f64.powi(k as i32)).collect();
    exit_sequence(&epsilon_sweep::<T>(&e)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_repeat() {
        assert_eq!(random_masses(7), random_masses(7));
        assert_ne!(random_masses(7), random_masses(8));
    }

    #[test]
    fn series_order_is_ten_in_f64_window() {
        let p = mass_params::<f64>([1.0, 2.0, 0.7, 1.6]).unwrap();
        let s = random_series_state::<f64>(3).unwrap();
        let so = series_order(&s, &p, 8, &[0.3, 0.2, 0.15, 0.1]).unwrap();
        assert!(so.fit.slope > 9.0, "{:?}", so);
    }

    #[test]
    fn exit_sequence_of_linear_exits() {
        let mut rows = Vec::new();
        for k in 0..5 {
            let eps = 0.01 * 0.5f64.powi(k);
            let mut row: super::super::sweep::SweepRow = serde_json::from_value(serde_json::json!({
                "k": k, "eps": eps, "error": null, "exit_ratios": [eps, 0.0, 0.0], "exit_h": [0.0, 0.0],
                "exit_h_err": [0.0, 0.0], "h_signal": [0.0, 0.0], "h_signal_err": [0.0, 0.0], "usable": false,
                "r1": 0.0, "ratios1": [0.0, 0.0, 0.0], "entry_face": 0, "r2": 0.0, "exit_face": 0,
                "t_deviation": 0.0, "t_deviation_h": [0.0, 0.0], "kappa_lead_drift": 0.0,
                "kappa_full_drift": 0.0, "h_integral_drift": 0.0, "max_imag": 0.0, "sign_flips": 1,
                "log_complete": true, "steps": 1
            }))
            .unwrap();
            row.k = k as usize;
            rows.push(row);
        }
        let seq = exit_sequence(&SweepTable { precision: "f64".into(), rows, grid_ratio: Some(0.5) }).unwrap();
        assert!(seq.ratios.iter().all(|r| (r - 0.5).abs() < 1e-12) && seq.monotone);
    }
}
