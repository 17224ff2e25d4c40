//! Block-map experiments, exponent fits, the normal-form integrals and the
//! randomised check suites.

mod blockmap;
mod checks;
mod fit;
mod normal_form;
mod rotated;
mod sweep;

pub use blockmap::{
    base_orbit, block_map, dulac_decompose, entry_point, BlockPassage, CrossingKind, D1Data, D2Data, DulacData,
    FiberAnchor, SectionCrossing, SectionGeometry, TData,
};
pub use checks::{
    c0_sequence, collision_manifold_suite, conservation_suite, exit_sequence, kappa_drift_orders, lemma_suite,
    random_masses, random_series_state, series_order, spectrum_suite, ConservationRecord, ConservationSuite,
    DriftField, ExitSequence, KappaDrift, KeplerRecord, LemmaSuite, ManifoldOrbit, ManifoldSuite, SeriesOrder,
    SpectrumRecord, SpectrumSuite, SPECTRUM_TARGET,
};
pub use fit::{
    apply_stencil, fit_exponent, fit_polynomial, geometric_stencil, stencil_gain, ExponentFit, PolyFit, MIN_FIT_ROWS,
};
pub use normal_form::{
    g5, g7, h_integral, kappa_full, kappa_lead, normal_form_field, r14, r16, r59_blocks, r59_leading,
    NormalFormSystem,
};
pub use rotated::{rotate, unrotate, RotatedPoint};
pub use sweep::{
    epsilon_sweep, geometric_grid, summarize_sweep, BlockExperiment, ChannelFit, SweepRow, SweepSettings, SweepSummary,
    SweepTable, H_EXPONENT,
};
