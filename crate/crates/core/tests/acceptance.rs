//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Failures are reported rather than asserted, so the target always exits
//! cleanly; a check that cannot run at all reports FAIL with its error.

use std::f64::consts::TAU;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sbc_core::analysis::{
    c0_sequence, collision_manifold_suite, conservation_suite, epsilon_sweep, geometric_grid, kappa_drift_orders,
    lemma_suite, random_masses, random_series_state, series_order, spectrum_suite, summarize_sweep, BlockExperiment,
    ChannelFit, DriftField, FiberAnchor, SweepSettings, SweepSummary, H_EXPONENT,
};
use sbc_core::flow::IntegratorConfig;
use sbc_core::params::derive_params_f64;
use sbc_core::{DoubleDouble, Error, Result};

const SEED: u64 = 2024;
const H_BAND: f64 = 0.15;
const H_RMS: f64 = 0.05;
const POSITION_BAND: f64 = 0.05;
const D1_BAND: f64 = 0.02;
const T_SLOPE_MIN: f64 = 7.5;
const RECT_SLOPE_MIN: f64 = 3.0;
const SPECTRUM_TOL: f64 = 1e-9;
const KAPPA_TOL: f64 = 1e-8;
const ANGLE_MIN: f64 = 1e-3;
const CONSERVATION_TOL: f64 = 1e-10;
const KEPLER_TOL: f64 = 1e-12;
const COLLINEAR_IMAG: f64 = 1e-11;
const SERIES_SLOPE_MIN: f64 = 9.5;
const KAPPA_GAIN_MIN: f64 = 3.0;
const C0_RATIO_MAX: f64 = 0.9;
const LEMMA_TOL: f64 = 1e-8;

struct Report {
    passed: usize,
    total: usize,
}

impl Report {
    fn line(&mut self, n: usize, name: &str, outcome: Result<(bool, String)>) {
        let (pass, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.total += 1;
        self.passed += usize::from(pass);
        println!("criterion {n:>2} {} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
}

fn experiment(anchor: FiberAnchor, direction: [f64; 3]) -> BlockExperiment {
    BlockExperiment {
        masses: [1.0; 4],
        anchor,
        direction,
        eps_grid: geometric_grid(1e-2, 1e-4, 13),
        geometry: Default::default(),
        integrator: IntegratorConfig::with_tol(1e-22, 1e-24),
        sweep: SweepSettings::default(),
        coupling: Default::default(),
    }
}

fn random_experiments(n: usize) -> Vec<BlockExperiment> {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    (0..n)
        .map(|_| {
            let anchor = FiberAnchor {
                h: [r.gen_range(-0.5..0.5), r.gen_range(-0.5..0.5)],
                phase: [r.gen_range(0.0..TAU), r.gen_range(0.0..TAU)],
                y: [r.gen_range(-0.2..0.2), r.gen_range(-0.2..0.2)],
            };
            let direction = [0; 3].map(|_| r.gen_range(-1.0..1.0));
            experiment(anchor, direction)
        })
        .collect()
}

fn run(exp: &BlockExperiment) -> Result<SweepSummary> {
    let t = epsilon_sweep::<DoubleDouble>(exp)?;
    Ok(summarize_sweep(&t, &exp.sweep))
}

fn fitted(c: &ChannelFit) -> Result<(f64, f64)> {
    c.fit
        .as_ref()
        .map(|f| (f.slope, f.rms))
        .ok_or_else(|| Error::Config(format!("{}: {}", c.channel, c.note.as_deref().unwrap_or("no fit"))))
}

fn h_ok(s: &SweepSummary) -> Result<(bool, String)> {
    let mut pass = true;
    let mut parts = Vec::new();
    for c in &s.h {
        let (slope, rms) = fitted(c)?;
        pass &= (slope - H_EXPONENT).abs() <= H_BAND && rms < H_RMS;
        parts.push(format!("{} {slope:.4} (rms {rms:.3})", c.channel));
    }
    Ok((pass, parts.join(", ")))
}

fn criterion_1(sums: &[Result<SweepSummary>]) -> Result<(bool, String)> {
    let mut pass = sums.len() >= 5;
    let mut parts = Vec::new();
    for s in sums {
        let s = s.as_ref().map_err(Clone::clone)?;
        let (ok, d) = h_ok(s)?;
        let non_collinear = s.max_imag > 1e-3;
        pass &= ok && non_collinear && !s.exceptional;
        parts.push(format!("[{d}]"));
    }
    Ok((pass, format!("{} directions {}", sums.len(), parts.join(" "))))
}

fn criterion_2(sums: &[Result<SweepSummary>]) -> Result<(bool, String)> {
    let mut worst_slope: f64 = 0.0;
    let mut worst_sigma: f64 = 0.0;
    for s in sums {
        let s = s.as_ref().map_err(Clone::clone)?;
        for c in &s.position {
            worst_slope = worst_slope.max((fitted(c)?.0 - 1.0).abs());
        }
        for q in &s.quadratic {
            let q = q.as_ref().ok_or_else(|| Error::Config("quadratic fit failed".into()))?;
            worst_sigma = worst_sigma.max(q.coeffs[2].abs() / q.stderr[2]);
        }
    }
    let pass = worst_slope <= POSITION_BAND && worst_sigma <= 2.0;
    Ok((pass, format!("max |slope - 1| {worst_slope:.4}, max |c2|/sigma {worst_sigma:.3e}")))
}

fn criterion_3() -> Result<(bool, String)> {
    let anchor = FiberAnchor { h: [-0.3, 0.2], phase: [0.0, 0.0], y: [0.1, 0.0] };
    let exp = experiment(anchor, [0.0, 0.6, 0.0]);
    let s = run(&exp)?;
    let mut pass = exp.anchor.is_collinear() && s.max_imag < COLLINEAR_IMAG;
    let mut parts = Vec::new();
    for c in &s.h {
        let (slope, rms) = fitted(c)?;
        pass &= (slope - H_EXPONENT).abs() <= H_BAND;
        parts.push(format!("{} {slope:.4} (rms {rms:.3})", c.channel));
    }
    Ok((pass, format!("{}, max |Im| {:.1e}", parts.join(", "), s.max_imag)))
}

fn criterion_4() -> Result<(bool, String)> {
    let anchor = FiberAnchor { h: [-0.3, -0.3], phase: [0.7, 0.7], y: [0.0, 0.0] };
    let mut pass = true;
    let mut parts = Vec::new();
    for points in [5, 6] {
        let mut exp = experiment(anchor.clone(), [0.5, 0.0, 0.5]);
        exp.sweep.stencil_points = points;
        let s = run(&exp)?;
        for c in &s.h {
            let (slope, _) = fitted(c)?;
            pass &= slope >= RECT_SLOPE_MIN;
            parts.push(format!("{}@{points}pt {slope:.3}", c.channel));
        }
    }
    Ok((pass, parts.join(", ")))
}

fn criterion_5() -> Result<(bool, String)> {
    let masses: Vec<[f64; 4]> = (1..=3).map(|k| random_masses(SEED + k)).collect();
    let s = spectrum_suite::<DoubleDouble>(&masses, 10, SEED)?;
    let pass = s.records.len() == 30 && s.max_rel_err < SPECTRUM_TOL;
    Ok((pass, format!("{} linearisations, max relative error {:.2e}", s.records.len(), s.max_rel_err)))
}

fn criterion_6() -> Result<(bool, String)> {
    let cfg = IntegratorConfig::with_tol(1e-20, 1e-22);
    let s = collision_manifold_suite::<DoubleDouble>([1.0; 4], 20, 5.0, 100, SEED, &cfg)?;
    let completed = s.orbits.iter().all(|o| o.completed && o.max_r == 0.0);
    let pass = completed
        && s.total_switches > 0
        && s.max_kappa1_drift < KAPPA_TOL
        && s.max_kappa2_drift < KAPPA_TOL
        && s.min_angle > ANGLE_MIN;
    Ok((
        pass,
        format!(
            "drift k1 {:.1e}, k2 {:.1e}, {} chart switches, min angle {:.2e} rad over {} points",
            s.max_kappa1_drift,
            s.max_kappa2_drift,
            s.total_switches,
            s.min_angle,
            s.angles.len()
        ),
    ))
}

fn criterion_7() -> Result<(bool, String)> {
    let cfg = IntegratorConfig::with_tol(1e-13, 1e-13);
    let s = conservation_suite::<f64>(random_masses(SEED + 7), 50, 10.0, SEED, &cfg)?;
    let pass = s.kepler.len() == 50
        && s.max_energy_drift < CONSERVATION_TOL
        && s.max_momentum_drift < CONSERVATION_TOL
        && s.max_kepler_drift < KEPLER_TOL;
    Ok((
        pass,
        format!(
            "H {:.1e}, angular momentum {:.1e}, Kepler invariants {:.1e} ({} redrawn)",
            s.max_energy_drift, s.max_momentum_drift, s.max_kepler_drift, s.rejected
        ),
    ))
}

fn criterion_8() -> Result<(bool, String)> {
    let p = derive_params_f64::<DoubleDouble>(random_masses(SEED + 8))?;
    let base = random_series_state::<DoubleDouble>(SEED)?;
    let s = series_order(&base, &p, 8, &geometric_grid(1e-1, 1e-3, 9))?;
    let pass = s.fit.slope >= SERIES_SLOPE_MIN;
    Ok((
        pass,
        format!(
            "slope {:.3} over s in [{:.1e}, {:.1e}] ({} rows above the round-off floor)",
            s.fit.slope, s.fit.window[0], s.fit.window[1], s.fit.used
        ),
    ))
}

fn criterion_9(sums: &[Result<SweepSummary>]) -> Result<(bool, String)> {
    let mut worst_r: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    let mut min_t = f64::INFINITY;
    for s in sums {
        let s = s.as_ref().map_err(Clone::clone)?;
        for c in &s.d1 {
            let (slope, _) = fitted(c)?;
            if c.channel == "r1" {
                worst_r = worst_r.max((slope - 1.0 / 3.0).abs());
            } else {
                worst_ratio = worst_ratio.max((slope - 2.0 / 3.0).abs());
            }
        }
        min_t = min_t.min(fitted(&s.t_deviation)?.0);
    }
    let pass = worst_r <= D1_BAND && worst_ratio <= D1_BAND && min_t >= T_SLOPE_MIN;
    Ok((
        pass,
        format!("max |r1 - 1/3| {worst_r:.4}, max |ratio - 2/3| {worst_ratio:.4}, min T slope {min_t:.3}"),
    ))
}

fn criterion_10() -> Result<(bool, String)> {
    let p = derive_params_f64::<DoubleDouble>([1.0; 4])?;
    let base = random_series_state::<DoubleDouble>(SEED + 10)?;
    let cfg = IntegratorConfig::with_tol(1e-26, 1e-30);
    let grid = geometric_grid(0.16, 0.02, 7);
    let nf = kappa_drift_orders(&base, &p, DriftField::NormalForm, &grid, 1.0, &cfg)?;
    let full = kappa_drift_orders(&base, &p, DriftField::Full, &grid, 1.0, &cfg)?;
    let pass = nf.slope_gain() >= KAPPA_GAIN_MIN;
    Ok((
        pass,
        format!(
            "normal form: lead {:.3}, full {:.3}, gain {:.3}; field X: lead {:.3}, full {:.3}, gain {:.3}",
            nf.lead.slope,
            nf.full.slope,
            nf.slope_gain(),
            full.lead.slope,
            full.full.slope,
            full.slope_gain()
        ),
    ))
}

fn criterion_11(exp: &BlockExperiment) -> Result<(bool, String)> {
    let s = c0_sequence::<DoubleDouble>(exp, 1e-2, 8)?;
    let pass = s.monotone && s.max_ratio < C0_RATIO_MAX;
    Ok((pass, format!("{} differences, max ratio {:.4}", s.differences.len(), s.max_ratio)))
}

fn criterion_12() -> Result<(bool, String)> {
    let s = lemma_suite::<f64>(random_masses(SEED + 12), 1000, SEED)?;
    let pass = s.max_residual.iter().all(|r| *r < LEMMA_TOL);
    let [a, b, c] = s.max_residual;
    Ok((pass, format!("{} states, max residuals {a:.2e}, {b:.2e}, {c:.2e}", s.states)))
}

fn main() {
    let start = Instant::now();
    let mut rep = Report { passed: 0, total: 0 };
    let exps = random_experiments(5);
    let sums: Vec<Result<SweepSummary>> = exps.iter().map(run).collect();
    rep.line(1, "h-channel exponent", criterion_1(&sums));
    rep.line(2, "position-channel regularity", criterion_2(&sums));
    rep.line(3, "collinear restriction", criterion_3());
    rep.line(4, "rectangular entries", criterion_4());
    rep.line(5, "spectrum at the equilibrium manifold", criterion_5());
    rep.line(6, "collision-manifold integrals", criterion_6());
    rep.line(7, "conservation", criterion_7());
    rep.line(8, "potential series order", criterion_8());
    rep.line(9, "Dulac asymptotics", criterion_9(&sums));
    rep.line(10, "extended integral drift order", criterion_10());
    rep.line(11, "C0 block map", criterion_11(&exps[0]));
    rep.line(12, "potential identities", criterion_12());
    println!("{}/{} criteria pass ({:.1?})", rep.passed, rep.total, start.elapsed());
}
