//! Vector fields in generalised Levi-Civita coordinates and the conserved
//! quantities.
//!
//! From the canonical Levi-Civita equations one gets, with `U = |u|`,
//! `z = Gamma zeta / U` and `D = Gamma (dK/dz) / U`,
//!
//! ```text
//! zeta'  = U^2 / |zeta|^2 + 2 h + 2 a^{-1/3} zeta D
//! h'     = 4 a^{-1/3} U^4 Re(D) / |zeta|^2
//! Gamma' = i Gamma Im(h zeta - 2 a^{-1/3} |zeta|^2 D) / |zeta|^2
//! x'     = mu y,   y' = 2 dK/d conj(x)
//! ```
//!
//! Since `Q = q_scale z^2`, `D = zeta E` with `E = 2 q_scale Gamma^2 (dK/dQ) / U^2`,
//! and `E = O(|zeta|^2)` because the linear couplings cancel. The rescaled
//! field `X = |zeta_1|^2 |zeta_2|^2 X_H` is assembled from a factored form in
//! which `zeta = r rho`, so the blow-up charts can divide out powers of `r`
//! exactly rather than numerically.

use crate::coords::{CartesianState, Fiber, GlcState, GLC_DIM};
use crate::error::{Error, Result};
use crate::params::MassParams;
use crate::potential::{k_exact, k_hat, k_hat_grad};
use crate::scalar::{Cx, Scalar};

/// Which time a [`VectorFieldEval`] differentiates with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActiveTime {
    /// Physical time, for `X_H`.
    T,
    /// Fictitious time, for `X`.
    Tau,
}

/// Whether the coupling between the binaries is included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coupling {
    #[default]
    Full,
    /// Two uncoupled Kepler problems.
    Kepler,
}

/// Derivative of every [`GlcState`] field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorFieldEval<T> {
    pub zeta: [Cx<T>; 2],
    pub h: [T; 2],
    pub gamma: [Cx<T>; 2],
    pub x: Cx<T>,
    pub y: Cx<T>,
    pub time: ActiveTime,
}

impl<T: Scalar> VectorFieldEval<T> {
    /// Same layout as [`GlcState::to_array`].
    pub fn to_array(&self) -> [T; GLC_DIM] {
        let v = self;
        [
            v.zeta[0].re, v.zeta[0].im, v.zeta[1].re, v.zeta[1].im, v.h[0], v.h[1], v.gamma[0].re,
            v.gamma[0].im, v.gamma[1].re, v.gamma[1].im, v.x.re, v.x.im, v.y.re, v.y.im,
        ]
    }

    fn scaled(&self, s: T, time: ActiveTime) -> Self {
        VectorFieldEval {
            zeta: self.zeta.map(|z| z * s),
            h: self.h.map(|h| h * s),
            gamma: self.gamma.map(|g| g * s),
            x: self.x * s,
            y: self.y * s,
            time,
        }
    }
}

/// `X` with the blow-up powers of `r` removed: `zeta` holds `X_zeta / r^2` and
/// `fiber` holds `X_fiber / r`, in the [`Fiber::to_array`] layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factored<T> {
    pub zeta: [Cx<T>; 2],
    pub fiber: [T; 10],
}

/// Evaluates the factored field at `zeta = r rho`. `big_u` must be the `U_j`
/// of the actual point `r rho`.
pub fn factored_field<T: Scalar>(
    r: T,
    rho: [Cx<T>; 2],
    fiber: &Fiber<T>,
    big_u: [T; 2],
    coupling: Coupling,
    p: &MassParams<T>,
) -> Result<Factored<T>> {
    let zero = Cx::new(T::zero(), T::zero());
    let two = T::c(2.0);
    let n = [rho[0].norm_sqr(), rho[1].norm_sqr()];
    let r2 = r * r;
    let (e, dxbar) = match coupling {
        Coupling::Kepler => ([zero; 2], zero),
        Coupling::Full => {
            let q = [0, 1].map(|j| {
                let z = fiber.gamma[j] * rho[j] * r / big_u[j];
                z * z * p.q_scale[j]
            });
            let g = k_hat_grad(q, fiber.x, p)?;
            let e = [0, 1].map(|j| {
                fiber.gamma[j] * fiber.gamma[j] * g.dq[j] * (two * p.q_scale[j] / (big_u[j] * big_u[j]))
            });
            (e, g.dxbar)
        }
    };
    let mut zeta = [zero; 2];
    let mut hdot = [T::zero(); 2];
    let mut gdot = [zero; 2];
    for j in 0..2 {
        let o = 1 - j;
        let a3 = p.a_inv_third(j);
        let u2 = big_u[j] * big_u[j];
        let h = fiber.h[j];
        let re = rho[j] * e[j];
        let coupled = rho[j] * re * (two * a3 * r2 * r2 * n[j]);
        zeta[j] = (coupled + Cx::new(u2 + two * h * r2 * n[j], T::zero())) * n[o];
        hdot[j] = r2 * n[o] * T::c(4.0) * a3 * u2 * u2 * re.re;
        let im = h * rho[j].im - two * a3 * r2 * n[j] * re.im;
        gdot[j] = fiber.gamma[j] * Cx::new(T::zero(), r2 * n[o] * im);
    }
    let w = r2 * r * n[0] * n[1];
    let xdot = fiber.y * (w * p.mu);
    let ydot = dxbar * (w * two);
    Ok(Factored {
        zeta,
        fiber: [
            hdot[0], hdot[1], gdot[0].re, gdot[0].im, gdot[1].re, gdot[1].im, xdot.re, xdot.im,
            ydot.re, ydot.im,
        ],
    })
}

fn from_factored<T: Scalar>(f: &Factored<T>, time: ActiveTime) -> VectorFieldEval<T> {
    let v = &f.fiber;
    VectorFieldEval {
        zeta: f.zeta,
        h: [v[0], v[1]],
        gamma: [Cx::new(v[2], v[3]), Cx::new(v[4], v[5])],
        x: Cx::new(v[6], v[7]),
        y: Cx::new(v[8], v[9]),
        time,
    }
}

fn eval_x_with<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>, c: Coupling) -> Result<VectorFieldEval<T>> {
    let f = factored_field(T::one(), s.zeta(), s.fiber(), s.big_u(), c, p)?;
    let out = from_factored(&f, ActiveTime::Tau);
    if out.to_array().iter().all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(Error::NonFinite)
    }
}

/// The rescaled field `X = |zeta_1|^2 |zeta_2|^2 X_H`, regular everywhere.
pub fn eval_x<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<VectorFieldEval<T>> {
    eval_x_with(s, p, Coupling::Full)
}

/// `X` with the coupling potential switched off.
pub fn eval_x_kepler<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<VectorFieldEval<T>> {
    eval_x_with(s, p, Coupling::Kepler)
}

/// Either field selected by `coupling`.
pub fn eval_x_coupled<T: Scalar>(
    s: &GlcState<T>,
    p: &MassParams<T>,
    coupling: Coupling,
) -> Result<VectorFieldEval<T>> {
    eval_x_with(s, p, coupling)
}

/// The Hamiltonian vector field in physical time. Singular at `zeta_j = 0`.
pub fn eval_xh<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<VectorFieldEval<T>> {
    let z = s.zeta();
    for (j, zj) in z.iter().enumerate() {
        if zj.norm_sqr().is_zero() {
            return Err(Error::SingularField(j + 1));
        }
    }
    let w = z[0].norm_sqr() * z[1].norm_sqr();
    Ok(eval_x(s, p)?.scaled(w.recip(), ActiveTime::T))
}

/// `H = a_1^{1/3} h_1 / 2 + a_2^{1/3} h_2 / 2 + mu |y|^2 / 2 - K`.
pub fn hamiltonian<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<T> {
    let half = T::c(0.5);
    let h = s.h();
    let kin = half * (p.a_third[0] * h[0] + p.a_third[1] * h[1] + p.mu * s.y().norm_sqr());
    Ok(kin - k_exact(s, p)?)
}

/// `sum_j (|P_j|^2 / (2 M_j) - k_j / |Q_j|) + mu |y|^2 / 2 - K`.
pub fn hamiltonian_cartesian<T: Scalar>(c: &CartesianState<T>, p: &MassParams<T>) -> Result<T> {
    let half = T::c(0.5);
    let mut e = half * p.mu * c.y.norm_sqr();
    for j in 0..2 {
        let qn = c.q[j].norm_sqr().sqrt();
        if qn.is_zero() {
            return Err(Error::CollisionPoint(j + 1));
        }
        e = e + c.p[j].norm_sqr() / (T::c(2.0) * p.reduced[j]) - p.k[j] / qn;
    }
    Ok(e - k_hat(c.q, c.x, p)?)
}

/// Total angular momentum. `Im(conj(Q_j) P_j) = -a_j^{1/3} L_j / 2` in these coordinates.
pub fn total_angular_momentum<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> T {
    let z = s.zeta();
    let half = T::c(0.5);
    -half * (p.a_third[0] * z[0].im + p.a_third[1] * z[1].im) + (s.x().conj() * s.y()).im
}

pub fn total_angular_momentum_cartesian<T: Scalar>(c: &CartesianState<T>) -> T {
    (c.q[0].conj() * c.p[0]).im + (c.q[1].conj() * c.p[1]).im + (c.x.conj() * c.y).im
}

/// Right-hand side of Hamilton's equations in Cartesian variables, in the
/// same field order as [`CartesianState`]. Used as an independent reference.
pub fn cartesian_field<T: Scalar>(c: &CartesianState<T>, p: &MassParams<T>) -> Result<CartesianState<T>> {
    let g = k_hat_grad(c.q, c.x, p)?;
    let mut q = [Cx::new(T::zero(), T::zero()); 2];
    let mut mom = q;
    let two = T::c(2.0);
    for j in 0..2 {
        let qn = c.q[j].norm_sqr().sqrt();
        q[j] = c.p[j] / p.reduced[j];
        // -2 dH/d conj(Q) with H containing -k/|Q| - K
        mom[j] = -c.q[j] * (p.k[j] / (qn * qn * qn)) + g.dq[j].conj() * two;
    }
    Ok(CartesianState { q, x: c.y * p.mu, p: mom, y: g.dxbar * two })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::{cartesian_to_glc, glc_to_cartesian};
    use crate::params::derive_params;

    fn cx(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    fn sample(p: &MassParams<f64>) -> GlcState<f64> {
        let _ = p;
        GlcState::new(
            [cx(0.3, -0.1), cx(-0.2, 0.15)],
            Fiber {
                h: [0.4, -0.3],
                gamma: [cx(0.6, 0.8), cx(0.0, 1.0)],
                x: cx(1.1, 0.2),
                y: cx(0.05, -0.1),
            },
        )
        .unwrap()
    }

    #[test]
    fn kepler_unit_speed() {
        let p = derive_params::<f64>(1.0, 1.0, 1.0, 1.0).unwrap();
        let s = GlcState::new(
            [cx(1.0, 0.0), cx(0.6, 0.8)],
            Fiber { h: [0.0; 2], gamma: [cx(1.0, 0.0); 2], x: cx(1.0, 0.0), y: cx(0.0, 0.0) },
        )
        .unwrap();
        let v = eval_x_kepler(&s, &p).unwrap();
        // |zeta_1|^2 |zeta_2|^2 = 1, so X and X_H coincide here
        assert!((v.zeta[0] - cx(1.0, 0.0)).norm() < 1e-15);
        let kv = eval_x_kepler(&s, &p).unwrap();
        assert_eq!(kv.h, [0.0, 0.0]);
        assert_eq!(kv.gamma[0], cx(0.0, 0.0));
    }

    #[test]
    fn x_vanishes_at_collision() {
        let p = derive_params::<f64>(1.0, 2.0, 1.0, 3.0).unwrap();
        let mut s = sample(&p);
        s.set_zeta(0, cx(0.0, 0.0)).unwrap();
        s.set_zeta(1, cx(0.0, 0.0)).unwrap();
        assert!(eval_x(&s, &p).unwrap().to_array().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn single_collision_limit() {
        let p = derive_params::<f64>(1.0, 1.0, 1.0, 1.0).unwrap();
        let mut s = sample(&p);
        s.set_zeta(1, cx(0.0, 0.0)).unwrap();
        let v = eval_x(&s, &p).unwrap();
        assert_eq!(v.zeta[0], cx(0.0, 0.0));
        let u1 = s.big_u()[1];
        assert_eq!(u1, 1.0);
        assert!((v.zeta[1].re - s.zeta()[0].norm_sqr()).abs() < 1e-15);
    }

    #[test]
    fn glc_hamiltonian_matches_cartesian() {
        let p = derive_params::<f64>(1.0, 2.0, 0.5, 1.5).unwrap();
        let s = sample(&p);
        let c = glc_to_cartesian(&s, &p).unwrap();
        let hg = hamiltonian(&s, &p).unwrap();
        let hc = hamiltonian_cartesian(&c, &p).unwrap();
        assert!((hg - hc).abs() < 1e-12 * hc.abs().max(1.0), "{hg} vs {hc}");
        let lg = total_angular_momentum(&s, &p);
        let lc = total_angular_momentum_cartesian(&c);
        assert!((lg - lc).abs() < 1e-13, "{lg} vs {lc}");
    }

    #[test]
    fn xh_is_pushforward_of_cartesian_field() {
        let p = derive_params::<f64>(1.0, 2.0, 0.5, 1.5).unwrap();
        let s = sample(&p);
        let c = glc_to_cartesian(&s, &p).unwrap();
        let v = cartesian_field(&c, &p).unwrap();
        let dt = 1e-5;
        let shift = |k: f64| {
            let k = k * dt;
            let moved = CartesianState {
                q: [c.q[0] + v.q[0] * k, c.q[1] + v.q[1] * k],
                x: c.x + v.x * k,
                p: [c.p[0] + v.p[0] * k, c.p[1] + v.p[1] * k],
                y: c.y + v.y * k,
            };
            cartesian_to_glc(&moved, &p).unwrap().to_array()
        };
        let (p2, p1, m1, m2) = (shift(2.0), shift(1.0), shift(-1.0), shift(-2.0));
        let xh = eval_xh(&cartesian_to_glc(&c, &p).unwrap(), &p).unwrap().to_array();
        for i in 0..GLC_DIM {
            let fd = (m2[i] - p2[i] + 8.0 * (p1[i] - m1[i])) / (12.0 * dt);
            let want = xh[i];
            assert!((fd - want).abs() < 1e-7 * (1.0 + want.abs()), "component {i}: {fd} vs {want}");
        }
    }
}
