use sbc_core::coords::{cartesian_to_glc, glc_to_cartesian, CartesianState, Fiber, GlcState, GLC_DIM};
use sbc_core::dynamics::{eval_x, eval_x_kepler, hamiltonian, total_angular_momentum};
use sbc_core::flow::{integrate, GlcSystem, IntegratorConfig, Rescale, StopConditions, StopReason};
use sbc_core::params::{derive_params, MassParams};
use sbc_core::potential::k_hat;
use sbc_core::Cx;

fn cx(re: f64, im: f64) -> Cx<f64> {
    Cx::new(re, im)
}

/// Parabolic two-body orbit with pericentre distance `q` at `D = 0`, for
/// `Q'' = -g Q / |Q|^3`. Returns `(t, Q, dQ/dt)` at the anomaly `D`.
fn parabola(q: f64, g: f64, d: f64) -> (f64, Cx<f64>, Cx<f64>) {
    let scale = (2.0 * q * q * q / g).sqrt();
    let t = scale * (d + d * d * d / 3.0);
    let pos = cx(q * (1.0 - d * d), 2.0 * q * d);
    let vel = cx(-2.0 * q * d, 2.0 * q) / (scale * (1.0 + d * d));
    (t, pos, vel)
}

/// Inverse of Barker's equation `D + D^3 / 3 = w` by Cardano's formula.
fn barker_anomaly(w: f64) -> f64 {
    let a = 1.5 * w;
    let r = (a * a + 1.0).sqrt();
    (a + r).cbrt() + (a - r).cbrt()
}

fn kepler_state(p: &MassParams<f64>, q: [f64; 2], d: [f64; 2], x: Cx<f64>, y: Cx<f64>) -> CartesianState<f64> {
    let mut qs = [cx(0.0, 0.0); 2];
    let mut ps = qs;
    for j in 0..2 {
        let (_, pos, vel) = parabola(q[j], p.k[j] / p.reduced[j], d[j]);
        qs[j] = pos;
        ps[j] = vel * p.reduced[j];
    }
    CartesianState { q: qs, x, p: ps, y }
}

#[test]
fn parabolic_kepler_orbits_in_physical_time() {
    let p = derive_params(1.0, 2.0, 0.7, 1.6).unwrap();
    let (q, d0) = ([0.05, 0.08], [-0.6, -0.3]);
    let (x0, y0) = (cx(1.2, 0.3), cx(0.1, -0.2));
    let start = kepler_state(&p, q, d0, x0, y0);
    let g0 = cartesian_to_glc(&start, &p).unwrap();
    assert!(g0.h().iter().all(|h| h.abs() < 1e-12));

    let g1 = p.k[0] / p.reduced[0];
    let (t0, _, _) = parabola(q[0], g1, d0[0]);
    let (t1, _, _) = parabola(q[0], g1, 0.7);
    let span = t1 - t0;
    let sys = GlcSystem::new(&p, Rescale::Physical).kepler();
    let cfg = IntegratorConfig::with_tol(1e-13, 1e-15);
    let traj = integrate(&sys, 0.0, &g0.to_array(), span, &cfg, &StopConditions::new()).unwrap();
    assert_eq!(traj.stop, StopReason::SpanCompleted);
    let end = GlcState::from_slice(&traj.last().state[..GLC_DIM]).unwrap();
    let c = glc_to_cartesian(&end, &p).unwrap();

    let mut want_d = [0.0; 2];
    for j in 0..2 {
        let gj = p.k[j] / p.reduced[j];
        let scale = (2.0 * q[j].powi(3) / gj).sqrt();
        let (tj, _, _) = parabola(q[j], gj, d0[j]);
        want_d[j] = barker_anomaly((tj + span) / scale);
    }
    assert!((want_d[0] - 0.7).abs() < 1e-13);
    let want = kepler_state(&p, q, want_d, x0 + y0 * (p.mu * span), y0);
    for j in 0..2 {
        let dq = (c.q[j] - want.q[j]).norm() / want.q[j].norm();
        let dp = (c.p[j] - want.p[j]).norm() / want.p[j].norm();
        assert!(dq < 1e-9 && dp < 1e-9, "binary {}: {dq:e} {dp:e}", j + 1);
    }
    assert!((c.x - want.x).norm() < 1e-12);
    assert_eq!(c.y, y0);
}

#[test]
fn fictitious_time_reparametrises_physical_time() {
    let p = derive_params(1.0, 1.0, 1.0, 1.0).unwrap();
    let fiber = Fiber { h: [-0.2, 0.15], gamma: [cx(0.6, 0.8), cx(0.0, 1.0)], x: cx(1.4, 0.2), y: cx(0.05, 0.1) };
    let s0 = GlcState::new([cx(0.12, 0.05), cx(-0.08, 0.1)], fiber).unwrap();
    let cfg = IntegratorConfig::with_tol(1e-13, 1e-16);
    let mut y0 = s0.to_array().to_vec();
    y0.push(0.0);

    let tau_sys = GlcSystem::new(&p, Rescale::Tau).with_time();
    let a = integrate(&tau_sys, 0.0, &y0, 2.0, &cfg, &StopConditions::new()).unwrap();
    let t_end = a.last().state[GLC_DIM];
    assert!(t_end > 0.0);

    let phys = GlcSystem::new(&p, Rescale::Physical);
    let b = integrate(&phys, 0.0, &s0.to_array(), t_end, &cfg, &StopConditions::new()).unwrap();
    for i in 0..GLC_DIM {
        let (u, v) = (a.last().state[i], b.last().state[i]);
        assert!((u - v).abs() < 1e-9 * (1.0 + v.abs()), "component {i}: {u} vs {v}");
    }
}

#[test]
fn conserved_quantities_along_the_full_flow() {
    let p = derive_params(1.0, 2.0, 0.7, 1.6).unwrap();
    let fiber = Fiber { h: [-0.1, 0.2], gamma: [cx(0.0, 1.0), cx(0.8, -0.6)], x: cx(2.2, -0.4), y: cx(0.1, 0.05) };
    let s0 = GlcState::new([cx(0.05, 0.04), cx(-0.03, 0.06)], fiber).unwrap();
    let sys = GlcSystem::new(&p, Rescale::Tau);
    let cfg = IntegratorConfig::with_tol(1e-13, 1e-16);
    let traj = integrate(&sys, 0.0, &s0.to_array(), 8.0, &cfg, &StopConditions::new()).unwrap();
    let h0 = hamiltonian(&s0, &p).unwrap();
    let l0 = total_angular_momentum(&s0, &p);
    for sample in &traj.samples {
        let s = GlcState::from_slice(&sample.state).unwrap();
        assert!((hamiltonian(&s, &p).unwrap() - h0).abs() < 1e-10 * (1.0 + h0.abs()));
        assert!((total_angular_momentum(&s, &p) - l0).abs() < 1e-10);
    }
}

#[test]
fn kepler_field_keeps_binary_energies() {
    let p = derive_params(1.0, 2.0, 0.7, 1.6).unwrap();
    let fiber = Fiber { h: [-0.3, 0.4], gamma: [cx(0.6, 0.8), cx(1.0, 0.0)], x: cx(1.0, 1.0), y: cx(0.3, 0.0) };
    let s = GlcState::new([cx(0.2, -0.1), cx(0.1, 0.3)], fiber).unwrap();
    let v = eval_x_kepler(&s, &p).unwrap().to_array();
    // h_1, h_2 and y are the entries 4, 5, 12, 13 of the flat layout
    for i in [4, 5, 12, 13] {
        assert_eq!(v[i], 0.0, "component {i}");
    }
    let full = eval_x(&s, &p).unwrap().to_array();
    assert!(full[12] != 0.0 || full[13] != 0.0);
}

#[test]
fn momentum_equation_matches_potential_gradient() {
    // dy/dt = 2 dK/d conj(x) in physical time; compare with differences of K.
    let p = derive_params(1.0, 2.0, 0.7, 1.6).unwrap();
    let fiber = Fiber { h: [-0.3, 0.4], gamma: [cx(0.6, 0.8), cx(1.0, 0.0)], x: cx(1.0, 1.0), y: cx(0.3, 0.0) };
    let s = GlcState::new([cx(0.2, -0.1), cx(0.1, 0.3)], fiber).unwrap();
    let q = s.separations(&p);
    let e = 1e-5;
    let k = |dx: Cx<f64>| k_hat(q, s.x() + dx, &p).unwrap();
    let d_re = (k(cx(e, 0.0)) - k(cx(-e, 0.0))) / (2.0 * e);
    let d_im = (k(cx(0.0, e)) - k(cx(0.0, -e))) / (2.0 * e);
    let v = eval_x(&s, &p).unwrap().to_array();
    let w = s.zeta()[0].norm_sqr() * s.zeta()[1].norm_sqr();
    assert!((v[12] / w - d_re).abs() < 1e-8 * d_re.abs().max(1.0), "{} vs {d_re}", v[12] / w);
    assert!((v[13] / w - d_im).abs() < 1e-8 * d_im.abs().max(1.0), "{} vs {d_im}", v[13] / w);
}
