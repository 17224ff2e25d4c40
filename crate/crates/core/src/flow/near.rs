use serde::{Deserialize, Serialize};

use crate::blowup::{from_chart, preferred_chart, to_chart, transition, Chart, ChartPoint, SWITCH_ABOVE};
use crate::coords::GlcState;
use crate::dynamics::Coupling;
use crate::error::{Error, Result};
use crate::params::MassParams;
use crate::scalar::Scalar;

use super::{integrate, ChartSystem, Direction, Event, IntegratorConfig, StopConditions, StopReason};

/// Settings of [`integrate_near_collision`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NearCollisionConfig {
    /// Leave the chart representation once `|zeta|` exceeds this.
    pub exit_radius: f64,
    /// Desingularised time budget.
    pub span: f64,
    pub max_switches: usize,
}

impl Default for NearCollisionConfig {
    fn default() -> Self {
        NearCollisionConfig { exit_radius: 0.5, span: 100.0, max_switches: 10_000 }
    }
}

/// A sample of a chart trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSample<T> {
    /// Desingularised time.
    pub s: T,
    /// Physical time.
    pub t: T,
    pub point: ChartPoint<T>,
}

/// How a near-collision integration ended.
#[derive(Debug, Clone, PartialEq)]
pub enum NearStop<T> {
    /// Left the neighbourhood; the state is handed back in GLC coordinates.
    Exited(GlcState<T>),
    SpanCompleted,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartTrajectory<T> {
    pub samples: Vec<ChartSample<T>>,
    /// `(s, from, to)` for every chart switch.
    pub switches: Vec<(T, Chart, Chart)>,
    /// Largest `|zeta|` mismatch across a switch.
    pub switch_continuity: T,
    pub stop: NearStop<T>,
}

impl<T: Scalar> ChartTrajectory<T> {
    /// Number of sign changes of `I_1 = Re zeta_1` along the samples, counted
    /// on the homogeneous direction so that points on the divisor contribute.
    pub fn i1_sign_changes(&self) -> usize {
        let signs: Vec<bool> = self
            .samples
            .iter()
            .filter_map(|s| {
                let i1 = s.point.homogeneous()[0] * s.point.time_sign();
                (!i1.is_zero()).then(|| i1 > T::zero())
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Lifts a state into the chart of its largest homogeneous coordinate.
pub fn lift<T: Scalar>(s: &GlcState<T>) -> Result<ChartPoint<T>> {
    to_chart(s, preferred_chart(&s.homogeneous()))
}

/// Integrates the oriented desingularised field through a neighbourhood of
/// the collision set, switching charts whenever a ratio exceeds the switch
/// threshold. `start` may lie on the divisor (`r = 0`), in which case the
/// orbit stays there.
pub fn integrate_near_collision<T: Scalar>(
    start: &ChartPoint<T>,
    p: &MassParams<T>,
    coupling: Coupling,
    near: &NearCollisionConfig,
    cfg: &IntegratorConfig,
) -> Result<ChartTrajectory<T>> {
    let mut c = *start;
    if c.max_ratio() > T::c(SWITCH_ABOVE) {
        c = transition(&c, preferred_chart(&c.homogeneous()))?;
    }
    let mut s = T::zero();
    let mut t = T::zero();
    let mut out = ChartTrajectory {
        samples: vec![ChartSample { s, t, point: c }],
        switches: Vec::new(),
        switch_continuity: T::zero(),
        stop: NearStop::SpanCompleted,
    };
    let span = T::c(near.span);
    let exit = T::c(near.exit_radius);
    for _ in 0..=near.max_switches {
        let sys = ChartSystem { params: p, chart: c.chart, orientation: c.orientation, coupling, accumulate_time: true };
        let mut y0 = c.to_array().to_vec();
        y0.push(t);
        let stops = StopConditions::new()
            .event(Event::new("switch", Direction::Falling, true, |_, y: &[T]| {
                T::c(SWITCH_ABOVE) - y[1].abs().max(y[2].abs()).max(y[3].abs())
            }))
            .event(Event::new("exit", Direction::Rising, true, move |_, y: &[T]| {
                let n = T::one() + y[1] * y[1] + y[2] * y[2] + y[3] * y[3];
                y[0].abs() * n.sqrt() - exit
            }));
        let remaining = span - s;
        if remaining <= T::zero() {
            out.stop = NearStop::SpanCompleted;
            return Ok(out);
        }
        let traj = match integrate(&sys, s, &y0, remaining, cfg, &stops) {
            Ok(tr) => tr,
            Err(e) => {
                out.stop = NearStop::Failed(e.to_string());
                return Ok(out);
            }
        };
        for smp in traj.samples.iter().skip(1) {
            let point = ChartPoint::from_slice(c.chart, c.orientation, &smp.state[..14]);
            out.samples.push(ChartSample { s: smp.tau, t: smp.state[14], point });
        }
        let last = traj.last();
        s = last.tau;
        t = last.state[14];
        c = ChartPoint::from_slice(c.chart, c.orientation, &last.state[..14]);
        match traj.stop {
            StopReason::Event(ref id) if id == "switch" => {
                let target = preferred_chart(&c.homogeneous());
                let next = transition(&c, target)?;
                let before = c.zeta();
                let after = next.zeta();
                let gap = (before[0] - after[0]).norm_sqr().sqrt() + (before[1] - after[1]).norm_sqr().sqrt();
                out.switch_continuity = out.switch_continuity.max(gap);
                out.switches.push((s, c.chart, target));
                c = next;
                out.samples.push(ChartSample { s, t, point: c });
            }
            StopReason::Event(_) => {
                out.stop = NearStop::Exited(from_chart(&c)?);
                return Ok(out);
            }
            StopReason::SpanCompleted => {
                out.stop = NearStop::SpanCompleted;
                return Ok(out);
            }
            ref other => {
                out.stop = NearStop::Failed(format!("{other:?}"));
                return Ok(out);
            }
        }
    }
    Err(Error::DomainExit("too many chart switches".into()))
}
