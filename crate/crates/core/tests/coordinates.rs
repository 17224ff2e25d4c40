use sbc_core::coords::{
    cartesian_to_glc, cartesian_to_lc, glc_to_cartesian, lc_to_cartesian, scale_cartesian, scale_glc, CartesianState,
    Fiber, GlcState,
};
use sbc_core::dynamics::{hamiltonian, hamiltonian_cartesian};
use sbc_core::params::{derive_params, MassParams};
use sbc_core::potential::{eval_w, k_exact, k_hat, k_series_hat, WKind};
use sbc_core::{Cx, DoubleDouble, Error};

fn cx(re: f64, im: f64) -> Cx<f64> {
    Cx::new(re, im)
}

fn unequal() -> MassParams<f64> {
    derive_params(1.0, 2.0, 0.7, 1.6).unwrap()
}

// Momenta are large enough that |u_j|^2 > 1/2 for both binaries.
fn sample_cartesian() -> CartesianState<f64> {
    CartesianState {
        q: [cx(0.04, -0.02), cx(-0.03, 0.05)],
        x: cx(1.3, 0.4),
        p: [cx(5.1, 6.4), cx(-5.8, 2.3)],
        y: cx(0.05, -0.02),
    }
}

/// Body positions with both binary centres placed explicitly.
fn bodies(q: [Cx<f64>; 2], x: Cx<f64>, m: [f64; 4]) -> [Cx<f64>; 4] {
    let (s1, s2) = (m[0] + m[1], m[2] + m[3]);
    let r1 = cx(0.0, 0.0);
    let r2 = r1 + x;
    [r1 - q[0] * (m[1] / s1), r1 + q[0] * (m[0] / s1), r2 - q[1] * (m[3] / s2), r2 + q[1] * (m[2] / s2)]
}

fn cross_potential(q: [Cx<f64>; 2], x: Cx<f64>, m: [f64; 4]) -> f64 {
    let r = bodies(q, x, m);
    let mut sum = 0.0;
    for i in 0..2 {
        for j in 2..4 {
            sum += m[i] * m[j] / (r[i] - r[j]).norm();
        }
    }
    sum
}

#[test]
fn cartesian_round_trip_through_glc() {
    let p = unequal();
    let c = sample_cartesian();
    let g = cartesian_to_glc(&c, &p).unwrap();
    let back = glc_to_cartesian(&g, &p).unwrap();
    for j in 0..2 {
        assert!((back.q[j] - c.q[j]).norm() < 1e-15);
        assert!((back.p[j] - c.p[j]).norm() < 1e-13 * c.p[j].norm());
    }
    assert_eq!(back.x, c.x);
    assert_eq!(back.y, c.y);
}

#[test]
fn state_past_turning_point_is_rejected() {
    let p = unequal();
    let slow = CartesianState { p: [cx(0.9, 1.7), cx(-5.8, 2.3)], ..sample_cartesian() };
    assert!(matches!(cartesian_to_glc(&slow, &p), Err(Error::PastTurningPoint { binary: 1, .. })));
}

#[test]
fn levi_civita_squares_the_separation() {
    let p = unequal();
    let c = sample_cartesian();
    let lc = cartesian_to_lc(&c, &p, None).unwrap();
    for j in 0..2 {
        let scale = 8.0 * p.k[j] * p.reduced[j];
        assert!((lc.z[j] * lc.z[j] - c.q[j] * scale).norm() < 1e-15);
    }
    let back = lc_to_cartesian(&lc, &p).unwrap();
    assert!((back.p[1] - c.p[1]).norm() < 1e-14);
}

#[test]
fn energy_agrees_across_coordinates() {
    let p = unequal();
    let c = sample_cartesian();
    let g = cartesian_to_glc(&c, &p).unwrap();
    let hc = hamiltonian_cartesian(&c, &p).unwrap();
    let hg = hamiltonian(&g, &p).unwrap();
    assert!((hc - hg).abs() < 1e-12 * hc.abs().max(1.0), "{hc} vs {hg}");
}

#[test]
fn scaling_commutes_with_the_chain() {
    let p = unequal();
    let c = sample_cartesian();
    let s = 0.37;
    let a = cartesian_to_glc(&scale_cartesian(&c, s), &p).unwrap().to_array();
    let b = scale_glc(&cartesian_to_glc(&c, &p).unwrap(), s).unwrap().to_array();
    for i in 0..a.len() {
        assert!((a[i] - b[i]).abs() < 1e-13 * (1.0 + b[i].abs()), "component {i}: {} vs {}", a[i], b[i]);
    }
    let h0 = hamiltonian_cartesian(&c, &p).unwrap();
    let h1 = hamiltonian_cartesian(&scale_cartesian(&c, s), &p).unwrap();
    assert!((h1 - h0 / s).abs() < 1e-12 * h1.abs());
}

#[test]
fn collinear_state_stays_on_the_real_line() {
    let p = unequal();
    let fiber = Fiber { h: [-0.2, 0.1], gamma: [cx(1.0, 0.0), cx(-1.0, 0.0)], x: cx(1.5, 0.0), y: cx(0.2, 0.0) };
    let g = GlcState::new([cx(0.0, 0.0), cx(0.0, 0.0)], fiber).unwrap();
    let mut g = g;
    g.set_zeta(0, cx(0.03, 0.0)).unwrap();
    g.set_zeta(1, cx(-0.05, 0.0)).unwrap();
    let c = glc_to_cartesian(&g, &p).unwrap();
    for v in [c.q[0], c.q[1], c.p[0], c.p[1], c.x, c.y] {
        assert_eq!(v.im, 0.0);
    }
}

#[test]
fn rectangular_configuration_has_matching_binaries() {
    let p = derive_params(1.0, 1.0, 1.0, 1.0).unwrap();
    // Q = q_scale (Gamma zeta / U)^2 is imaginary for Gamma = e^{i pi/4} and real zeta.
    let e = Cx::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let fiber = Fiber { h: [-0.3, -0.3], gamma: [e, e], x: cx(1.0, 0.0), y: cx(0.0, 0.0) };
    let g = GlcState::new([cx(0.04, 0.0), cx(0.04, 0.0)], fiber).unwrap();
    let c = glc_to_cartesian(&g, &p).unwrap();
    assert!(c.q[0].re.abs() < 1e-17 && c.q[1].re.abs() < 1e-17);
    assert_eq!(c.q[0], c.q[1]);
    let r = bodies(c.q, c.x, p.m);
    assert!(((r[0] - r[2]).norm() - (r[1] - r[3]).norm()).abs() < 1e-15);
    assert!(((r[0] - r[3]).norm() - (r[1] - r[2]).norm()).abs() < 1e-15);
}

#[test]
fn coupling_matches_body_sum() {
    let p = unequal();
    let c = sample_cartesian();
    let want = cross_potential(c.q, c.x, p.m);
    let got = k_hat(c.q, c.x, &p).unwrap();
    assert!((got - want).abs() < 1e-14 * want, "{got} vs {want}");
    let g = cartesian_to_glc(&c, &p).unwrap();
    assert!((k_exact(&g, &p).unwrap() - want).abs() < 1e-13 * want);
}

#[test]
fn coupling_is_rotation_invariant() {
    let p = unequal();
    let c = sample_cartesian();
    let base = k_hat(c.q, c.x, &p).unwrap();
    for theta in [0.3, 1.9, -2.4] {
        let e = Cx::from_polar(1.0, theta);
        let v = k_hat([c.q[0] * e, c.q[1] * e], c.x * e, &p).unwrap();
        assert!((v - base).abs() < 1e-14 * base);
    }
}

#[test]
fn cubic_series_terms_match_odd_parts() {
    // The odd part of K in one separation is the cubic multipole plus O(Q^5).
    let p = unequal();
    let x = cx(1.0, 0.3);
    let dirs = [cx(0.6, 0.8), cx(-0.2, 0.9)];
    for j in 0..2 {
        for &d in &dirs {
            let q = d * 1e-2;
            let place = |v: Cx<f64>| {
                let mut qs = [cx(0.0, 0.0); 2];
                qs[j] = v;
                qs
            };
            let odd = 0.5 * (cross_potential(place(q), x, p.m) - cross_potential(place(-q), x, p.m));
            let model = p.b3[j] * eval_w(WKind::W3, q / x, cx(0.0, 0.0)) / x.norm();
            assert!((odd - model).abs() < 1e-3 * model.abs(), "binary {}: {odd} vs {model}", j + 1);
        }
    }
}

#[test]
fn series_error_falls_with_fifth_power_of_separation() {
    let p = unequal();
    let x = cx(1.0, -0.2);
    let q0 = [cx(0.06, 0.03), cx(-0.04, 0.05)];
    let err = |s: f64| {
        let q = [q0[0] * s, q0[1] * s];
        (k_series_hat(q, x, &p, 8).unwrap() - cross_potential(q, x, p.m)).abs()
    };
    let ratio = err(1.0) / err(0.5);
    // 2^5 with a subleading O(Q^6) tail
    assert!((ratio.log2() - 5.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn extended_precision_chain_round_trips() {
    let p = derive_params::<DoubleDouble>(1.0.into(), 2.0.into(), 0.7.into(), 1.6.into()).unwrap();
    let c64 = sample_cartesian();
    let conv = |z: Cx<f64>| Cx::new(DoubleDouble::from(z.re), DoubleDouble::from(z.im));
    let c = CartesianState { q: c64.q.map(conv), x: conv(c64.x), p: c64.p.map(conv), y: conv(c64.y) };
    let back = glc_to_cartesian(&cartesian_to_glc(&c, &p).unwrap(), &p).unwrap();
    for j in 0..2 {
        let dq = (back.q[j] - c.q[j]).norm().to_f64();
        let dp = (back.p[j] - c.p[j]).norm().to_f64();
        assert!(dq < 1e-30 && dp < 1e-29, "{dq} {dp}");
    }
}
