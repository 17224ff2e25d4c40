use serde::{Deserialize, Serialize};

use crate::coords::{Fiber, GlcState};
use crate::dynamics::Coupling;
use crate::error::{Error, Result};
use crate::flow::{integrate, Direction, Event, GlcSystem, IntegratorConfig, Rescale, StopConditions, StopReason};
use crate::params::MassParams;
use crate::scalar::{Cx, Scalar};

use super::rotated::{j1_of, rotate, transverse_of, RotatedPoint};

/// Geometry of the sections `Sigma_0 = {J_1 = -rho0}`, `Sigma_3 = {J_1 = +rho0}`
/// and the box `Sigma_int` around the collision direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SectionGeometry {
    pub rho0: f64,
    /// Half-width of `Sigma_int` in ratio coordinates.
    pub box_half_width: f64,
    /// Factor by which the exit faces of `Sigma_int` are widened.
    pub exit_widening: f64,
    /// `|J_1|` of the point on the collision ray the base orbit is traced back from.
    pub base_offset: f64,
    /// Passages with `|zeta|` above this leave the neighbourhood.
    pub max_radius: f64,
}

impl Default for SectionGeometry {
    fn default() -> Self {
        SectionGeometry { rho0: 0.25, box_half_width: 1.0, exit_widening: 1.5, base_offset: 1e-8, max_radius: 1.0 }
    }
}

impl SectionGeometry {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rho0 > 0.0
            && self.box_half_width > 0.0
            && self.exit_widening >= 1.0
            && self.base_offset > 0.0
            && self.base_offset < self.rho0
            && self.max_radius > 2.0 * self.rho0;
        if ok {
            Ok(())
        } else {
            Err(Error::Config("section geometry: need 0 < base_offset < rho0, max_radius > 2 rho0, widening >= 1".into()))
        }
    }
}

/// Fiber values on the collision ray: `h*`, the phases of `Gamma*`, `x* = 1` and `y*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberAnchor {
    pub h: [f64; 2],
    /// `Gamma_j* = exp(i phase_j)`.
    pub phase: [f64; 2],
    pub y: [f64; 2],
}

impl Default for FiberAnchor {
    fn default() -> Self {
        FiberAnchor { h: [-0.5, -0.5], phase: [0.0, 0.0], y: [0.0, 0.0] }
    }
}

impl FiberAnchor {
    pub fn fiber<T: Scalar>(&self) -> Fiber<T> {
        let g = |a: f64| Cx::new(T::c(a).cos(), T::c(a).sin());
        Fiber {
            h: [T::c(self.h[0]), T::c(self.h[1])],
            gamma: [g(self.phase[0]), g(self.phase[1])],
            x: Cx::new(T::one(), T::zero()),
            y: Cx::new(T::c(self.y[0]), T::c(self.y[1])),
        }
    }

    /// True when the anchor lies in the collinear subspace (all phases and `y` real).
    pub fn is_collinear(&self) -> bool {
        self.phase.iter().all(|p| (p / std::f64::consts::PI).fract() == 0.0) && self.y[1] == 0.0
    }
}

/// Which section a logged crossing belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingKind {
    /// Leaving the box around the incoming collision direction.
    IntEntry,
    /// Entering the box around the outgoing direction.
    IntExit,
    /// `J_1` changes sign.
    Flip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionCrossing<T> {
    pub kind: CrossingKind,
    pub s: T,
    pub state: GlcState<T>,
    /// Index into `(L_1, J_2, L_2)` of the face that was crossed.
    pub face: usize,
}

/// One passage `Sigma_0 -> Sigma_3`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPassage<T> {
    pub entry: GlcState<T>,
    pub exit: GlcState<T>,
    pub log: Vec<SectionCrossing<T>>,
    /// Desingularised time of the passage.
    pub span: T,
    pub steps: usize,
    /// Largest imaginary part of `zeta`, `Gamma`, `x`, `y` over the accepted steps.
    pub max_imag: T,
}

impl<T: Scalar> BlockPassage<T> {
    pub fn crossing(&self, kind: CrossingKind) -> Option<&SectionCrossing<T>> {
        self.log.iter().find(|c| c.kind == kind)
    }

    pub fn sign_flips(&self) -> usize {
        self.log.iter().filter(|c| c.kind == CrossingKind::Flip).count()
    }

    /// True when the log holds exactly one entry, one exit and one flip, in that order.
    pub fn log_complete(&self) -> bool {
        let kinds: Vec<_> = self.log.iter().map(|c| c.kind).collect();
        kinds == [CrossingKind::IntEntry, CrossingKind::Flip, CrossingKind::IntExit]
    }
}

/// Traces the collision orbit with the given fiber anchor back from
/// `J_1 = -base_offset` to `Sigma_0`.
pub fn base_orbit<T: Scalar>(
    anchor: &FiberAnchor,
    p: &MassParams<T>,
    geom: &SectionGeometry,
    coupling: Coupling,
    cfg: &IntegratorConfig,
) -> Result<GlcState<T>> {
    geom.validate()?;
    let z = Cx::new(-T::c(geom.base_offset), T::zero());
    let start = GlcState::new([z, z], anchor.fiber())?;
    let sys = GlcSystem { params: p, coupling, rescale: Rescale::Desingularised, accumulate_time: false };
    let rho0 = T::c(geom.rho0);
    let stops = StopConditions::new().event(Event::new("sigma0", Direction::Falling, true, move |_, y: &[T]| {
        j1_of(y) + rho0
    }));
    let tr = integrate(&sys, T::zero(), &start.to_array(), T::c(-cfg.tau_max), cfg, &stops)?;
    match tr.stop {
        StopReason::Event(_) => GlcState::from_slice(&tr.last().state),
        _ => Err(Error::Timeout { tau: tr.last().tau.f64() }),
    }
}

/// The point of `Sigma_0` whose ratios are those of `base` shifted by `eps * direction`.
pub fn entry_point<T: Scalar>(base: &GlcState<T>, direction: [f64; 3], eps: T) -> Result<GlcState<T>> {
    let b = rotate(base);
    let r = b.ratios();
    let shifted = [0, 1, 2].map(|i| r[i] + eps * T::c(direction[i]));
    let p = RotatedPoint { j1: b.j1, l1: shifted[0] * b.j1, j2: shifted[1] * b.j1, l2: shifted[2] * b.j1, fiber: b.fiber };
    super::rotated::unrotate(&p)
}

/// Flows `entry` from `Sigma_0` to `Sigma_3` with the desingularised field,
/// logging the `Sigma_int` crossings and the sign change of `J_1`.
pub fn block_map<T: Scalar>(
    entry: &GlcState<T>,
    p: &MassParams<T>,
    geom: &SectionGeometry,
    coupling: Coupling,
    cfg: &IntegratorConfig,
) -> Result<BlockPassage<T>> {
    geom.validate()?;
    let sys = GlcSystem { params: p, coupling, rescale: Rescale::Desingularised, accumulate_time: false };
    let rho0 = T::c(geom.rho0);
    let w_in = T::c(geom.box_half_width);
    let w_out = T::c(geom.box_half_width * geom.exit_widening);
    let max_r2 = T::c(geom.max_radius * geom.max_radius);
    let stops = StopConditions::new()
        .event(Event::new("int_entry", Direction::Rising, false, move |_, y: &[T]| {
            transverse_of(y) / w_in - j1_of(y).abs()
        }))
        .event(Event::new("int_exit", Direction::Falling, false, move |_, y: &[T]| {
            transverse_of(y) / w_out - j1_of(y).abs()
        }))
        .event(Event::new("flip", Direction::Either, false, |_, y: &[T]| j1_of(y)))
        .event(Event::new("sigma3", Direction::Rising, true, move |_, y: &[T]| j1_of(y) - rho0))
        .domain(move |_, y: &[T]| {
            let n = y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3];
            (n > max_r2).then(|| "left the collision neighbourhood".to_string())
        });
    let tr = integrate(&sys, T::zero(), &entry.to_array(), T::c(cfg.tau_max), cfg, &stops)?;
    match &tr.stop {
        StopReason::Event(_) => {}
        StopReason::DomainExit(m) => return Err(Error::DomainExit(m.clone())),
        StopReason::StepUnderflow => {
            return Err(Error::StepUnderflow { tau: tr.last().tau.f64(), h: 0.0 });
        }
        _ => return Err(Error::Timeout { tau: tr.last().tau.f64() }),
    }
    let mut log = Vec::new();
    for c in &tr.crossings {
        let state = GlcState::from_slice(&c.state)?;
        let j1 = j1_of(&c.state);
        let kind = match c.id.as_str() {
            "int_entry" if j1 < T::zero() => CrossingKind::IntEntry,
            "int_exit" if j1 > T::zero() => CrossingKind::IntExit,
            "flip" => CrossingKind::Flip,
            _ => continue,
        };
        let face = rotate(&state).transverse_max().1;
        log.push(SectionCrossing { kind, s: c.tau, state, face });
    }
    let max_imag = tr.samples.iter().fold(T::zero(), |m, smp| {
        [1, 3, 7, 9, 11, 13].iter().fold(m, |m, &i| m.max(smp.state[i].abs()))
    });
    let last = tr.last();
    Ok(BlockPassage {
        max_imag,
        entry: *entry,
        exit: GlcState::from_slice(&last.state)?,
        log,
        span: last.tau,
        steps: tr.accepted,
    })
}

/// Hyperbolic transition into `Sigma_int`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct D1Data {
    /// `|J_1|` at the entry crossing.
    pub r1: f64,
    /// `(L_1, J_2, L_2) / |J_1|` at the entry crossing.
    pub ratios: [f64; 3],
    pub face: usize,
}

/// Passage along the collision manifold between the two `Sigma_int` crossings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TData {
    pub r2: f64,
    pub ratios: [f64; 3],
    pub face: usize,
    /// Fiber change `u_2 - u_1`, in the flat fiber layout.
    pub du: [f64; 10],
    /// Largest entry of `|du|`.
    pub du_max: f64,
}

/// Hyperbolic transition out to `Sigma_3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct D2Data {
    /// `(L_1, J_2, L_2) / J_1` on `Sigma_3`.
    pub ratios: [f64; 3],
    pub fiber: [f64; 10],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DulacData {
    pub d1: D1Data,
    pub t: TData,
    pub d2: D2Data,
}

/// Splits a passage into its two hyperbolic transitions and the transit
/// between them. Logs whose crossings are missing, out of order or duplicated
/// are reported rather than decomposed.
pub fn dulac_decompose<T: Scalar>(bp: &BlockPassage<T>) -> Result<DulacData> {
    if !bp.log_complete() {
        let kinds: Vec<String> = bp.log.iter().map(|c| format!("{:?}", c.kind)).collect();
        return Err(Error::IncompleteLog(kinds.join(",")));
    }
    let a = bp.crossing(CrossingKind::IntEntry).expect("complete log");
    let b = bp.crossing(CrossingKind::IntExit).expect("complete log");
    let (ra, rb) = (rotate(&a.state), rotate(&b.state));
    let abs_ratios = |r: &RotatedPoint<T>| {
        let j = r.j1.abs();
        [r.l1 / j, r.j2 / j, r.l2 / j].map(Scalar::f64)
    };
    let ua = a.state.fiber().to_array();
    let ub = b.state.fiber().to_array();
    let du: [f64; 10] = std::array::from_fn(|i| (ub[i] - ua[i]).f64());
    let exit = rotate(&bp.exit);
    Ok(DulacData {
        d1: D1Data { r1: ra.j1.abs().f64(), ratios: abs_ratios(&ra), face: a.face },
        t: TData {
            r2: rb.j1.abs().f64(),
            ratios: abs_ratios(&rb),
            face: b.face,
            du,
            du_max: du.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        },
        d2: D2Data { ratios: exit.ratios().map(Scalar::f64), fiber: bp.exit.fiber().to_array().map(Scalar::f64) },
    })
}
