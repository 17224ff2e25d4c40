use sbc_core::analysis::{base_orbit, block_map, entry_point, rotate, CrossingKind, FiberAnchor, SectionGeometry};
use sbc_core::dynamics::Coupling;
use sbc_core::flow::IntegratorConfig;
use sbc_core::params::derive_params;

fn cfg() -> IntegratorConfig {
    IntegratorConfig::with_tol(1e-12, 1e-14)
}

#[test]
fn collinear_passage_stays_collinear() {
    let p = derive_params(1.0, 1.0, 1.0, 1.0).unwrap();
    let anchor = FiberAnchor { h: [-0.3, 0.2], phase: [0.0, 0.0], y: [0.1, 0.0] };
    assert!(anchor.is_collinear());
    let geom = SectionGeometry::default();
    let base = base_orbit::<f64>(&anchor, &p, &geom, Coupling::Full, &cfg()).unwrap();
    let entry = entry_point(&base, [0.0, 0.6, 0.0], 1e-2).unwrap();
    let bp = block_map(&entry, &p, &geom, Coupling::Full, &cfg()).unwrap();
    assert!(bp.log_complete(), "{:?}", bp.log.iter().map(|c| c.kind).collect::<Vec<_>>());
    assert_eq!(bp.max_imag, 0.0);
    let out = rotate(&bp.exit);
    assert_eq!((out.l1, out.l2), (0.0, 0.0));
    assert!((out.j1 - geom.rho0).abs() < 1e-12);
}

#[test]
fn generic_passage_logs_entry_flip_exit() {
    let p = derive_params(1.0, 2.0, 0.7, 1.6).unwrap();
    let anchor = FiberAnchor { h: [-0.2, 0.1], phase: [0.4, 1.1], y: [0.05, -0.1] };
    let geom = SectionGeometry::default();
    let base = base_orbit::<f64>(&anchor, &p, &geom, Coupling::Full, &cfg()).unwrap();
    assert!((rotate(&base).j1 + geom.rho0).abs() < 1e-12);
    let entry = entry_point(&base, [0.3, -0.5, 0.4], 5e-3).unwrap();
    let bp = block_map(&entry, &p, &geom, Coupling::Full, &cfg()).unwrap();
    assert!(bp.log_complete());
    assert_eq!(bp.sign_flips(), 1);
    let entry_s = bp.crossing(CrossingKind::IntEntry).unwrap().s;
    let exit_s = bp.crossing(CrossingKind::IntExit).unwrap().s;
    let flip_s = bp.crossing(CrossingKind::Flip).unwrap().s;
    assert!(entry_s < flip_s && flip_s < exit_s && exit_s < bp.span);
}

#[test]
fn uncoupled_passage_keeps_binary_energies() {
    let p = derive_params(1.0, 2.0, 0.7, 1.6).unwrap();
    let anchor = FiberAnchor { h: [-0.2, 0.1], phase: [0.4, 1.1], y: [0.05, -0.1] };
    let geom = SectionGeometry::default();
    let base = base_orbit::<f64>(&anchor, &p, &geom, Coupling::Kepler, &cfg()).unwrap();
    let entry = entry_point(&base, [0.3, -0.5, 0.4], 5e-3).unwrap();
    let bp = block_map(&entry, &p, &geom, Coupling::Kepler, &cfg()).unwrap();
    assert_eq!(bp.exit.h(), entry.h());
    assert_eq!(bp.exit.y(), entry.y());
}

#[test]
fn exits_approach_the_collision_orbit_continuously() {
    let p = derive_params(1.0, 1.0, 1.0, 1.0).unwrap();
    let anchor = FiberAnchor { h: [-0.3, -0.1], phase: [0.2, -0.5], y: [0.0, 0.1] };
    let geom = SectionGeometry::default();
    let base = base_orbit::<f64>(&anchor, &p, &geom, Coupling::Full, &cfg()).unwrap();
    let exits: Vec<[f64; 3]> = [4e-2, 2e-2, 1e-2, 5e-3]
        .iter()
        .map(|&e| {
            let bp = block_map(&entry_point(&base, [0.6, 0.2, -0.4], e).unwrap(), &p, &geom, Coupling::Full, &cfg())
                .unwrap();
            rotate(&bp.exit).ratios()
        })
        .collect();
    let gaps: Vec<f64> = exits
        .windows(2)
        .map(|w| (0..3).map(|i| (w[0][i] - w[1][i]).abs()).fold(0.0, f64::max))
        .collect();
    for g in gaps.windows(2) {
        assert!(g[1] < 0.9 * g[0], "{gaps:?}");
    }
}
