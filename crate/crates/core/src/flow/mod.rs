//! Adaptive integration with dense output and section events.
//!
//! The stepper is a 13-stage explicit Runge-Kutta pair of orders 8(7) with a
//! PI step-size controller and a max-norm mixed error test. Dense output
//! re-runs the accepted step from its start with a shortened step, which is
//! accurate to the order of the method and needs no interpolation weights.
//! Events are located by bisection on the dense output followed by one
//! secant polish.

mod near;
mod systems;
mod tableau;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use near::{integrate_near_collision, lift, ChartSample, ChartTrajectory, NearCollisionConfig, NearStop};
pub use systems::{ChartSystem, FnSystem, GlcSystem, Rescale};

/// Arithmetic used for an integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// `f64`.
    #[default]
    Standard,
    /// Double-double.
    Extended,
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precision::Standard => "standard",
            Precision::Extended => "extended",
        })
    }
}

/// Tolerances and budgets of one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; chosen automatically when zero.
    pub h_init: f64,
    pub h_max: f64,
    /// Smallest step, relative to `max(1, |tau|)`, before giving up.
    pub h_min_rel: f64,
    pub max_steps: usize,
    /// Largest `|tau|` span before stopping.
    pub tau_max: f64,
    /// Section residual accepted by event location.
    pub event_tol: f64,
    /// `|dg/dtau|` below which a crossing is reported as tangential.
    pub tangential_tol: f64,
    pub precision: Precision,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rtol: 1e-12,
            atol: 1e-14,
            h_init: 0.0,
            h_max: 0.5,
            h_min_rel: 1e-28,
            max_steps: 2_000_000,
            tau_max: 1e3,
            event_tol: 1e-13,
            tangential_tol: 1e-10,
            precision: Precision::Standard,
        }
    }
}

impl IntegratorConfig {
    pub fn with_tol(rtol: f64, atol: f64) -> Self {
        IntegratorConfig { rtol, atol, event_tol: rtol.min(1e-13), ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return bad("tolerances must be positive");
        }
        if !(self.event_tol > 0.0) || self.event_tol > self.rtol.max(1e-13) {
            return bad("event_tol must be positive and at most max(rtol, 1e-13)");
        }
        if !(self.h_max > 0.0 && self.tau_max > 0.0) {
            return bad("h_max and tau_max must be positive");
        }
        Ok(())
    }
}

/// A first-order system `y' = f(tau, y)`.
pub trait System<T: Scalar> {
    fn dim(&self) -> usize;

    fn rhs(&self, tau: T, y: &[T], dy: &mut [T]) -> Result<()>;

    /// Called on every accepted state, e.g. to renormalise phases.
    fn project(&self, _y: &mut [T]) {}
}

/// Which sign change of an event function counts as a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rising,
    Falling,
    Either,
}

impl Direction {
    fn matches<T: Scalar>(self, before: T, after: T) -> bool {
        let up = before < T::zero() && after >= T::zero();
        let down = before > T::zero() && after <= T::zero();
        match self {
            Direction::Rising => up,
            Direction::Falling => down,
            Direction::Either => up || down,
        }
    }
}

type EventFn<'a, T> = Box<dyn Fn(T, &[T]) -> T + Send + Sync + 'a>;
type DomainFn<'a, T> = Box<dyn Fn(T, &[T]) -> Option<String> + Send + Sync + 'a>;

/// A section `g(tau, y) = 0`.
pub struct Event<'a, T> {
    pub id: String,
    pub g: EventFn<'a, T>,
    pub direction: Direction,
    /// Stop the integration at the first crossing.
    pub terminal: bool,
}

impl<'a, T: Scalar> Event<'a, T> {
    pub fn new(
        id: impl Into<String>,
        direction: Direction,
        terminal: bool,
        g: impl Fn(T, &[T]) -> T + Send + Sync + 'a,
    ) -> Self {
        Event { id: id.into(), g: Box::new(g), direction, terminal }
    }

    /// Terminal event on a sign change of component `index`.
    pub fn sign_change(id: impl Into<String>, index: usize) -> Self {
        Event::new(id, Direction::Either, true, move |_, y: &[T]| y[index])
    }
}

/// Composable stopping rules, checked after every accepted step.
#[derive(Default)]
pub struct StopConditions<'a, T> {
    pub events: Vec<Event<'a, T>>,
    pub domain: Vec<DomainFn<'a, T>>,
}

impl<'a, T: Scalar> StopConditions<'a, T> {
    pub fn new() -> Self {
        StopConditions { events: Vec::new(), domain: Vec::new() }
    }

    pub fn event(mut self, e: Event<'a, T>) -> Self {
        self.events.push(e);
        self
    }

    /// Stops when `check` returns a reason; the offending step is kept.
    pub fn domain(mut self, check: impl Fn(T, &[T]) -> Option<String> + Send + Sync + 'a) -> Self {
        self.domain.push(Box::new(check));
        self
    }
}

/// A located section crossing.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing<T> {
    pub id: String,
    pub tau: T,
    pub state: Vec<T>,
    /// `g` at the returned state.
    pub residual: T,
    /// `dg/dtau` at the crossing.
    pub rate: T,
}

/// Why an integration ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum StopReason {
    SpanCompleted,
    Event(String),
    DomainExit(String),
    StepUnderflow,
    MaxSteps,
}

/// One accepted step: the state at its start and the step taken from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample<T> {
    pub tau: T,
    pub state: Vec<T>,
    /// Step taken from this sample; zero for the final sample.
    pub h: T,
}

/// Output of [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub samples: Vec<Sample<T>>,
    pub crossings: Vec<Crossing<T>>,
    pub stop: StopReason,
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

impl<T: Scalar> Trajectory<T> {
    pub fn last(&self) -> &Sample<T> {
        self.samples.last().expect("a trajectory always holds its initial sample")
    }

    /// Dense output at `tau` by re-stepping from the enclosing sample.
    pub fn dense<S: System<T>>(&self, sys: &S, tau: T) -> Result<Vec<T>> {
        let tab = Tableau::new();
        let idx = self
            .samples
            .windows(2)
            .position(|w| {
                let (a, b) = (w[0].tau, w[1].tau);
                (tau >= a.min(b)) && (tau <= a.max(b))
            })
            .ok_or_else(|| Error::DomainExit(format!("tau {} outside trajectory", tau.f64())))?;
        let s = &self.samples[idx];
        let mut ws = Workspace::new(sys.dim());
        tab.step(sys, s.tau, &s.state, tau - s.tau, &mut ws)?;
        Ok(ws.y_new.clone())
    }
}

pub(crate) struct Tableau<T> {
    c: [T; tableau::STAGES],
    b: [T; tableau::STAGES],
    e: [T; tableau::STAGES],
    a: Vec<Vec<T>>,
}

struct Workspace<T> {
    k: Vec<Vec<T>>,
    tmp: Vec<T>,
    y_new: Vec<T>,
    err: Vec<T>,
}

impl<T: Scalar> Workspace<T> {
    fn new(n: usize) -> Self {
        Workspace {
            k: vec![vec![T::zero(); n]; tableau::STAGES],
            tmp: vec![T::zero(); n],
            y_new: vec![T::zero(); n],
            err: vec![T::zero(); n],
        }
    }
}

impl<T: Scalar> Tableau<T> {
    pub(crate) fn new() -> Self {
        let conv = |v: &[(f64, f64)]| v.iter().map(|&(h, l)| T::from_parts(h, l)).collect::<Vec<T>>();
        let b = conv(&tableau::B);
        let bh = conv(&tableau::BHAT);
        let mut bb = [T::zero(); tableau::STAGES];
        let mut ee = [T::zero(); tableau::STAGES];
        let mut cc = [T::zero(); tableau::STAGES];
        for i in 0..tableau::STAGES {
            bb[i] = b[i];
            ee[i] = b[i] - bh[i];
            cc[i] = T::from_parts(tableau::C[i].0, tableau::C[i].1);
        }
        Tableau { c: cc, b: bb, e: ee, a: tableau::A.iter().map(|r| conv(r)).collect() }
    }

    /// One step of size `h`; fills `ws.y_new` and `ws.err`.
    fn step<S: System<T> + ?Sized>(&self, sys: &S, tau: T, y: &[T], h: T, ws: &mut Workspace<T>) -> Result<()> {
        let n = y.len();
        for s in 0..tableau::STAGES {
            for i in 0..n {
                let mut acc = T::zero();
                for (j, a) in self.a[s].iter().enumerate() {
                    if !a.is_zero() {
                        acc = acc + *a * ws.k[j][i];
                    }
                }
                ws.tmp[i] = y[i] + h * acc;
            }
            let (head, tail) = ws.k.split_at_mut(s);
            let _ = head;
            sys.rhs(tau + self.c[s] * h, &ws.tmp, &mut tail[0])?;
        }
        for i in 0..n {
            let mut acc = T::zero();
            let mut err = T::zero();
            for s in 0..tableau::STAGES {
                acc = acc + self.b[s] * ws.k[s][i];
                err = err + self.e[s] * ws.k[s][i];
            }
            ws.y_new[i] = y[i] + h * acc;
            ws.err[i] = h * err;
        }
        if ws.y_new.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }
}

fn error_norm<T: Scalar>(y: &[T], y_new: &[T], err: &[T], cfg: &IntegratorConfig) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..y.len() {
        let scale = cfg.atol + cfg.rtol * y[i].abs().f64().max(y_new[i].abs().f64());
        worst = worst.max(err[i].abs().f64() / scale);
    }
    worst
}

fn initial_step<T: Scalar, S: System<T> + ?Sized>(sys: &S, tau: T, y: &[T], cfg: &IntegratorConfig) -> Result<f64> {
    if cfg.h_init > 0.0 {
        return Ok(cfg.h_init.min(cfg.h_max));
    }
    let mut f = vec![T::zero(); y.len()];
    sys.rhs(tau, y, &mut f)?;
    let mut d0: f64 = 0.0;
    let mut d1: f64 = 0.0;
    for i in 0..y.len() {
        let sc = cfg.atol + cfg.rtol * y[i].abs().f64();
        d0 = d0.max(y[i].abs().f64() / sc);
        d1 = d1.max(f[i].abs().f64() / sc);
    }
    let h = if d1 < 1e-10 { 1e-3 } else { 0.01 * (d0.max(1.0) / d1) };
    Ok(h.min(cfg.h_max).max(1e-12))
}

/// Integrates `sys` from `(tau0, y0)` over the signed span `span`, stopping
/// early on terminal events, domain exits or step underflow.
pub fn integrate<T: Scalar, S: System<T>>(
    sys: &S,
    tau0: T,
    y0: &[T],
    span: T,
    cfg: &IntegratorConfig,
    stops: &StopConditions<'_, T>,
) -> Result<Trajectory<T>> {
    cfg.validate()?;
    let n = sys.dim();
    if y0.len() != n {
        return Err(Error::Config(format!("initial state has {} components, system needs {n}", y0.len())));
    }
    let tab = Tableau::new();
    let mut ws = Workspace::new(n);
    let dir = if span < T::zero() { -T::one() } else { T::one() };
    let tau_end = tau0 + span;
    let mut tau = tau0;
    let mut y = y0.to_vec();
    sys.project(&mut y);
    let mut traj = Trajectory {
        samples: vec![Sample { tau, state: y.clone(), h: T::zero() }],
        crossings: Vec::new(),
        stop: StopReason::SpanCompleted,
        accepted: 0,
        rejected: 0,
        evaluations: 0,
    };
    let mut h = initial_step(sys, tau, &y, cfg)?;
    traj.evaluations += 1;
    let mut err_prev: f64 = 1e-4;
    let mut g_prev: Vec<T> = stops.events.iter().map(|e| (e.g)(tau, &y)).collect();
    let (beta1, beta2) = (0.7 / 8.0, 0.4 / 8.0);
    loop {
        if traj.accepted >= cfg.max_steps {
            traj.stop = StopReason::MaxSteps;
            break;
        }
        let remaining = (tau_end - tau) * dir;
        if remaining <= T::zero() || (tau - tau0).abs().f64() >= cfg.tau_max {
            traj.stop = StopReason::SpanCompleted;
            break;
        }
        let mut h_t = T::c(h).min(remaining).min(T::c(cfg.tau_max) - (tau - tau0).abs());
        let floor = cfg.h_min_rel * tau.abs().f64().max(1.0);
        if h_t.f64() < floor {
            traj.stop = StopReason::StepUnderflow;
            break;
        }
        if (remaining - h_t).f64() < 1e-3 * h_t.f64() {
            h_t = remaining;
        }
        traj.evaluations += tableau::STAGES;
        let err = match tab.step(sys, tau, &y, h_t * dir, &mut ws) {
            Ok(()) => error_norm(&y, &ws.y_new, &ws.err, cfg),
            Err(_) => f64::INFINITY,
        };
        if err > 1.0 {
            traj.rejected += 1;
            let fac = if err.is_finite() { (0.9 * err.powf(-1.0 / 8.0)).max(0.2) } else { 0.25 };
            h = h_t.f64() * fac;
            continue;
        }
        let mut y_new = ws.y_new.clone();
        sys.project(&mut y_new);
        let tau_new = tau + h_t * dir;
        let step_h = h_t * dir;
        traj.samples.last_mut().expect("nonempty").h = step_h;
        // events
        let mut terminal_hit: Option<Crossing<T>> = None;
        let g_new: Vec<T> = stops.events.iter().map(|e| (e.g)(tau_new, &y_new)).collect();
        let mut hits: Vec<Crossing<T>> = Vec::new();
        for (i, ev) in stops.events.iter().enumerate() {
            if ev.direction.matches(g_prev[i], g_new[i]) {
                let c = locate(&tab, sys, ev, tau, &y, step_h, g_prev[i], g_new[i], cfg, &mut traj.evaluations)?;
                if ev.terminal {
                    let earlier = terminal_hit.as_ref().map_or(true, |t| (c.tau - t.tau) * dir < T::zero());
                    if earlier {
                        terminal_hit = Some(c.clone());
                    }
                }
                hits.push(c);
            }
        }
        if let Some(stop) = terminal_hit {
            hits.retain(|c| (c.tau - stop.tau) * dir <= T::zero());
            hits.sort_by(|a, b| ((a.tau - b.tau) * dir).f64().total_cmp(&0.0));
            traj.crossings.extend(hits);
            traj.samples.last_mut().expect("nonempty").h = stop.tau - tau;
            traj.samples.push(Sample { tau: stop.tau, state: stop.state.clone(), h: T::zero() });
            traj.accepted += 1;
            traj.stop = StopReason::Event(stop.id);
            return Ok(traj);
        }
        hits.sort_by(|a, b| ((a.tau - b.tau) * dir).f64().total_cmp(&0.0));
        traj.crossings.extend(hits);
        tau = tau_new;
        y = y_new;
        g_prev = g_new;
        traj.accepted += 1;
        traj.samples.push(Sample { tau, state: y.clone(), h: T::zero() });
        if let Some(reason) = stops.domain.iter().find_map(|d| d(tau, &y)) {
            traj.stop = StopReason::DomainExit(reason);
            return Ok(traj);
        }
        let e = err.max(1e-10);
        let fac = 0.9 * e.powf(-beta1) * err_prev.powf(beta2);
        h = h_t.f64() * fac.clamp(0.2, 5.0);
        h = h.min(cfg.h_max);
        err_prev = e;
    }
    Ok(traj)
}

#[allow(clippy::too_many_arguments)]
fn locate<T: Scalar, S: System<T> + ?Sized>(
    tab: &Tableau<T>,
    sys: &S,
    ev: &Event<'_, T>,
    tau: T,
    y: &[T],
    h: T,
    g0: T,
    g1: T,
    cfg: &IntegratorConfig,
    evals: &mut usize,
) -> Result<Crossing<T>> {
    let mut ws = Workspace::new(y.len());
    let mut eval = |theta: T, ws: &mut Workspace<T>| -> Result<(T, Vec<T>)> {
        *evals += tableau::STAGES;
        if theta.is_zero() {
            return Ok((g0, y.to_vec()));
        }
        tab.step(sys, tau, y, h * theta, ws)?;
        let mut s = ws.y_new.clone();
        sys.project(&mut s);
        Ok(((ev.g)(tau + h * theta, &s), s))
    };
    let (mut lo, mut hi) = (T::zero(), T::one());
    let (mut glo, mut ghi) = (g0, g1);
    let tol = T::c(cfg.event_tol);
    let mut best = (T::one(), g1);
    for _ in 0..200 {
        if ghi.abs() <= tol || (hi - lo) * h.abs() <= T::epsilon() * T::c(4.0) * (tau.abs() + h.abs()) {
            break;
        }
        // secant guess safeguarded by bisection
        let sec = lo - glo * (hi - lo) / (ghi - glo);
        let mid = (lo + hi) * T::c(0.5);
        let width = hi - lo;
        let theta = if sec > lo + width * T::c(0.05) && sec < hi - width * T::c(0.05) { sec } else { mid };
        let (g, _) = eval(theta, &mut ws)?;
        if (g < T::zero()) == (glo < T::zero()) && !g.is_zero() {
            lo = theta;
            glo = g;
        } else {
            hi = theta;
            ghi = g;
        }
        best = if ghi.abs() < glo.abs() { (hi, ghi) } else { (lo, glo) };
        if best.1.abs() <= tol && (hi - lo) < T::c(1e-3) {
            break;
        }
    }
    let (theta, _) = best;
    let (g, state) = eval(theta, &mut ws)?;
    // rate from a symmetric difference on the dense output
    let d = (hi - lo).max(T::c(1e-6)).min(T::c(1e-3));
    let a = (theta - d).max(T::zero());
    let b = (theta + d).min(T::one());
    let (ga, _) = eval(a, &mut ws)?;
    let (gb, _) = eval(b, &mut ws)?;
    let rate = (gb - ga) / ((b - a) * h);
    // one secant polish
    let (theta, g, state) = if !rate.is_zero() && g.abs() > T::zero() {
        let t2 = (theta - g / (rate * h)).max(lo).min(hi);
        let (g2, s2) = eval(t2, &mut ws)?;
        if g2.abs() < g.abs() {
            (t2, g2, s2)
        } else {
            (theta, g, state)
        }
    } else {
        (theta, g, state)
    };
    if rate.abs().f64() < cfg.tangential_tol {
        return Err(Error::Tangential { tau: (tau + h * theta).f64(), rate: rate.f64() });
    }
    Ok(Crossing { id: ev.id.clone(), tau: tau + h * theta, state, residual: g, rate })
}

/// Integrates until the first crossing of `event` (made terminal).
pub fn integrate_to_section<T: Scalar, S: System<T>>(
    sys: &S,
    tau0: T,
    y0: &[T],
    span: T,
    cfg: &IntegratorConfig,
    event: Event<'_, T>,
) -> Result<(Crossing<T>, Trajectory<T>)> {
    let id = event.id.clone();
    let stops = StopConditions { events: vec![Event { terminal: true, ..event }], domain: Vec::new() };
    let traj = integrate(sys, tau0, y0, span, cfg, &stops)?;
    match &traj.stop {
        StopReason::Event(e) if *e == id => {
            let c = traj.crossings.iter().rev().find(|c| c.id == id).cloned().expect("terminal crossing recorded");
            Ok((c, traj))
        }
        StopReason::StepUnderflow => {
            Err(Error::StepUnderflow { tau: traj.last().tau.f64(), h: traj.samples.last().map_or(0.0, |s| s.h.f64()) })
        }
        StopReason::DomainExit(r) => Err(Error::DomainExit(r.clone())),
        _ => Err(Error::Timeout { tau: traj.last().tau.f64() }),
    }
}

/// CSV rows `tau,<columns...>` for every sample.
pub fn trajectory_csv<T: Scalar>(traj: &Trajectory<T>, columns: &[&str]) -> String {
    let mut out = String::from("tau");
    for c in columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for s in &traj.samples {
        out.push_str(&format!("{:e}", s.tau.f64()));
        for v in &s.state {
            out.push_str(&format!(",{:e}", v.f64()));
        }
        out.push('\n');
    }
    out
}

/// JSON summary of a trajectory: stop reason, counters and crossings.
pub fn trajectory_json<T: Scalar>(traj: &Trajectory<T>) -> serde_json::Value {
    serde_json::json!({
        "stop": traj.stop,
        "accepted": traj.accepted,
        "rejected": traj.rejected,
        "evaluations": traj.evaluations,
        "tau_end": traj.last().tau.f64(),
        "crossings": traj.crossings.iter().map(|c| serde_json::json!({
            "id": c.id,
            "tau": c.tau.f64(),
            "residual": c.residual.f64(),
            "rate": c.rate.f64(),
            "state": c.state.iter().map(|v| v.f64()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;
    use num_traits::Float;

    struct Linear;
    impl<T: Scalar> System<T> for Linear {
        fn dim(&self) -> usize {
            1
        }
        fn rhs(&self, _: T, y: &[T], dy: &mut [T]) -> Result<()> {
            dy[0] = y[0];
            Ok(())
        }
    }

    struct Oscillator;
    impl<T: Scalar> System<T> for Oscillator {
        fn dim(&self) -> usize {
            2
        }
        fn rhs(&self, _: T, y: &[T], dy: &mut [T]) -> Result<()> {
            dy[0] = y[1];
            dy[1] = -y[0];
            Ok(())
        }
    }

    #[test]
    fn linear_section_time() {
        let eps = 1e-6;
        let ev = Event::new("x=1", Direction::Rising, true, |_, y: &[f64]| y[0] - 1.0);
        let (c, _) =
            integrate_to_section(&Linear, 0.0, &[eps], 100.0, &IntegratorConfig::with_tol(1e-13, 1e-15), ev).unwrap();
        assert!((c.tau - (1.0 / eps).ln()).abs() < 1e-10, "{}", c.tau);
    }

    #[test]
    fn tangential_crossing_rejected() {
        // g = (y - 1)^3 crosses zero with zero slope at y = 1
        let ev = Event::new("cubic", Direction::Rising, true, |_, y: &[f64]| (y[0] - 1.0).powi(3));
        let cfg = IntegratorConfig { tangential_tol: 1e-6, ..Default::default() };
        let r = integrate_to_section(&Linear, 0.0, &[0.5], 10.0, &cfg, ev);
        assert!(matches!(r, Err(Error::Tangential { .. })), "{r:?}");
    }

    #[test]
    fn no_crossing_times_out() {
        let ev = Event::new("never", Direction::Rising, true, |_, y: &[f64]| y[0] - 10.0);
        let cfg = IntegratorConfig { tau_max: 1.0, ..Default::default() };
        let r = integrate_to_section(&Linear, 0.0, &[1.0], 5.0, &cfg, ev);
        assert!(matches!(r, Err(Error::Timeout { .. })));
    }

    #[test]
    fn extended_precision_oscillator() {
        let cfg = IntegratorConfig { rtol: 1e-26, atol: 1e-28, event_tol: 1e-13, ..Default::default() };
        let y0 = [DoubleDouble::from_f64(1.0), DoubleDouble::from_f64(0.0)];
        let t = integrate(&Oscillator, DoubleDouble::from_f64(0.0), &y0, DoubleDouble::from_f64(5.0), &cfg, &StopConditions::new())
            .unwrap();
        let end = t.last();
        let exact = DoubleDouble::from_f64(5.0).cos();
        assert!((end.state[0] - exact).abs().to_f64() < 1e-24, "{}", (end.state[0] - exact).to_f64());
    }

    #[test]
    fn backward_integration() {
        let t = integrate(&Oscillator, 0.0, &[1.0, 0.0], -2.0, &IntegratorConfig::default(), &StopConditions::new())
            .unwrap();
        assert!((t.last().state[0] - 2f64.cos()).abs() < 1e-11);
        assert!((t.last().state[1] - 2f64.sin()).abs() < 1e-11);
    }

    #[test]
    fn dense_output_midpoint() {
        let cfg = IntegratorConfig { h_init: 0.3, h_max: 0.3, ..IntegratorConfig::default() };
        let t = integrate(&Oscillator, 0.0, &[1.0, 0.0], 3.0, &cfg, &StopConditions::new()).unwrap();
        let v = t.dense(&Oscillator, 1.234).unwrap();
        assert!((v[0] - 1.234f64.cos()).abs() < 1e-11);
    }
}
