use crate::blowup::Chart;

/// Every failure the model, integrator and analysis layers can report.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("mass m{index} must be positive, got {value}")]
    NonPositiveMass { index: usize, value: f64 },
    #[error("square-root branch undefined: binary {0} has zero separation")]
    BranchUndefined(usize),
    #[error("phase undefined: momentum u{0} vanishes")]
    PhaseUndefined(usize),
    #[error("binary {0} is at collision; its intrinsic energy must be supplied")]
    EnergyRequired(usize),
    #[error("outside the working neighbourhood: 1 + 4 h |zeta|^2 = {disc:e} is not positive")]
    OutsideNeighbourhood { disc: f64 },
    #[error("binary {binary} lies past the turning point: |u|^2 = {u2} is not above 1/2")]
    PastTurningPoint { binary: usize, u2: f64 },
    #[error("binary {0} is at collision and has no Cartesian preimage")]
    CollisionPoint(usize),
    #[error("coupling potential singular: a cross-binary distance vanishes")]
    CouplingSingular,
    #[error("unsupported series degree {0}; expected 4, 6 or 8")]
    UnsupportedDegree(u32),
    #[error("time-t vector field singular at zeta{0} = 0")]
    SingularField(usize),
    #[error("point has zero distinguished coordinate for the {0:?} chart")]
    WrongChart(Chart),
    #[error("projective value degenerate: both homogeneous entries vanish")]
    DegenerateProjective,
    #[error("step size underflow at tau = {tau:e} (h = {h:e}); the problem looks stiff")]
    StepUnderflow { tau: f64, h: f64 },
    #[error("no section crossing within the time budget (stopped at tau = {tau:e})")]
    Timeout { tau: f64 },
    #[error("tangential section crossing at tau = {tau:e} (rate {rate:e})")]
    Tangential { tau: f64, rate: f64 },
    #[error("trajectory left the domain: {0}")]
    DomainExit(String),
    #[error("non-finite value in vector field evaluation")]
    NonFinite,
    #[error("only {usable} usable rows, at least {required} needed")]
    InsufficientData { usable: usize, required: usize },
    #[error("crossing log incomplete: {0}")]
    IncompleteLog(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
