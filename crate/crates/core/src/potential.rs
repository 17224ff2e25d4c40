//! The coupling potential between the two binaries: exact evaluation, its
//! analytic gradient, and the truncated multipole series.
//!
//! `K = sum_i d_i / |x + alpha_i Q_1 + beta_i Q_2|` with the four cross-binary
//! pairs `(alpha, beta) = (c2, -c4), (c2, c3), (-c1, -c4), (-c1, c3)`.
//! Complex derivatives are Wirtinger derivatives, `d/dQ = (d/dRe Q - i d/dIm Q) / 2`.

use crate::coords::{Fiber, GlcState};
use crate::error::{Error, Result};
use crate::params::MassParams;
use crate::scalar::{Cx, Scalar};

/// The homogeneous polynomials of the multipole series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WKind {
    W2,
    W3,
    W4,
    /// The degree-(2,2) coupling polynomial in `(Q_1, Q_2)`.
    Wc,
}

/// Value of `K` with its Wirtinger derivatives `dK/dQ_j` and `dK/d conj(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGrad<T> {
    pub value: T,
    pub dq: [Cx<T>; 2],
    pub dxbar: Cx<T>,
}

fn pair_coefficients<T: Scalar>(p: &MassParams<T>) -> [(T, T, T); 4] {
    let c = p.c;
    [
        (p.d[0], c[1], -c[3]),
        (p.d[1], c[1], c[2]),
        (p.d[2], -c[0], -c[3]),
        (p.d[3], -c[0], c[2]),
    ]
}

/// Exact coupling potential from Cartesian separations.
pub fn k_hat<T: Scalar>(q: [Cx<T>; 2], x: Cx<T>, p: &MassParams<T>) -> Result<T> {
    let mut sum = T::zero();
    for (d, alpha, beta) in pair_coefficients(p) {
        let r2 = (x + q[0] * alpha + q[1] * beta).norm_sqr();
        if r2.is_zero() {
            return Err(Error::CouplingSingular);
        }
        sum = sum + d / r2.sqrt();
    }
    Ok(sum)
}

/// Exact coupling potential and its gradient.
pub fn k_hat_grad<T: Scalar>(q: [Cx<T>; 2], x: Cx<T>, p: &MassParams<T>) -> Result<KGrad<T>> {
    let zero = Cx::new(T::zero(), T::zero());
    let mut g = KGrad { value: T::zero(), dq: [zero; 2], dxbar: zero };
    let half = T::c(0.5);
    for (d, alpha, beta) in pair_coefficients(p) {
        let v = x + q[0] * alpha + q[1] * beta;
        let r2 = v.norm_sqr();
        if r2.is_zero() {
            return Err(Error::CouplingSingular);
        }
        let inv = r2.sqrt().recip();
        let term = d * inv;
        g.value = g.value + term;
        // d|v|^{-1}/dv = -conj(v) / (2 |v|^3)
        let w = v.conj() * (-half * term * inv * inv);
        g.dq[0] = g.dq[0] + w * alpha;
        g.dq[1] = g.dq[1] + w * beta;
        g.dxbar = g.dxbar + w.conj();
    }
    Ok(g)
}

/// `K` evaluated at a generalised Levi-Civita state.
pub fn k_exact<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<T> {
    k_hat(s.separations(p), s.x(), p)
}

/// Evaluates a homogeneous polynomial. `q2` is only read by [`WKind::Wc`].
pub fn eval_w<T: Scalar>(kind: WKind, q1: Cx<T>, q2: Cx<T>) -> T {
    let c = |v: f64| T::c(v);
    let b = q1.conj();
    let v = match kind {
        WKind::W2 => b * b * c(3.0) + b * q1 * c(2.0) + q1 * q1 * c(3.0),
        WKind::W3 => {
            let (b2, q2_) = (b * b, q1 * q1);
            b2 * b * c(5.0) + b2 * q1 * c(3.0) + b * q2_ * c(3.0) + q2_ * q1 * c(5.0)
        }
        WKind::W4 => {
            let (b2, a2) = (b * b, q1 * q1);
            b2 * b2 * c(35.0)
                + b2 * b * q1 * c(20.0)
                + b2 * a2 * c(18.0)
                + b * a2 * q1 * c(20.0)
                + a2 * a2 * c(35.0)
        }
        WKind::Wc => {
            let (b1, b2) = (q1.conj(), q2.conj());
            let (a1, a2) = (q1, q2);
            b1 * b1 * b2 * b2 * c(35.0)
                + b1 * b2 * b2 * a1 * c(10.0)
                + b2 * b2 * a1 * a1 * c(3.0)
                + b1 * b1 * b2 * a2 * c(10.0)
                + b1 * b2 * a1 * a2 * c(12.0)
                + b2 * a1 * a1 * a2 * c(10.0)
                + b1 * b1 * a2 * a2 * c(3.0)
                + b1 * a1 * a2 * a2 * c(10.0)
                + a1 * a1 * a2 * a2 * c(35.0)
        }
    };
    v.re
}

/// Multipole series of `K` from Cartesian separations, truncated at
/// `degree` in `zeta` (equivalently `degree / 2` in `Q`).
pub fn k_series_hat<T: Scalar>(q: [Cx<T>; 2], x: Cx<T>, p: &MassParams<T>, degree: u32) -> Result<T> {
    let top = match degree {
        4 => 2,
        6 => 3,
        8 => 4,
        d => return Err(Error::UnsupportedDegree(d)),
    };
    let xn = x.norm_sqr().sqrt();
    if xn.is_zero() {
        return Err(Error::CouplingSingular);
    }
    let r = [q[0] / x, q[1] / x];
    let zero = Cx::new(T::zero(), T::zero());
    let mut sum = p.b0;
    for j in 0..2 {
        sum = sum + p.b2[j] * eval_w(WKind::W2, r[j], zero);
        if top >= 3 {
            sum = sum + p.b3[j] * eval_w(WKind::W3, r[j], zero);
        }
        if top >= 4 {
            sum = sum + p.b4[j] * eval_w(WKind::W4, r[j], zero);
        }
    }
    if top >= 4 {
        sum = sum + p.bc * eval_w(WKind::Wc, r[0], r[1]);
    }
    Ok(sum / xn)
}

/// Multipole series of `K` at a generalised Levi-Civita state.
pub fn k_series<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>, degree: u32) -> Result<T> {
    k_series_hat(s.separations(p), s.x(), p, degree)
}

/// Fourth-order central difference of `f` at 0 with step `h`.
fn central<T: Scalar>(f: &dyn Fn(T) -> Result<T>, h: T) -> Result<T> {
    let two = T::c(2.0);
    let v = -f(two * h)? + T::c(8.0) * f(h)? - T::c(8.0) * f(-h)? + f(-two * h)?;
    Ok(v / (T::c(12.0) * h))
}

/// Wirtinger derivative `dF/dw` at `w0` by central differences of `F(w0 + dw)`.
fn wirtinger<T: Scalar>(f: &dyn Fn(Cx<T>) -> Result<T>, w0: Cx<T>, h: T) -> Result<Cx<T>> {
    let dre = central(&|t| f(w0 + Cx::new(t, T::zero())), h)?;
    let dim = central(&|t| f(w0 + Cx::new(T::zero(), t)), h)?;
    Ok(Cx::new(dre, -dim) * T::c(0.5))
}

/// Residuals of the three partial-derivative relations, each maximised over
/// the two binaries:
///
/// 1. `|Re(zeta_j dK/dzeta_j)|`
/// 2. `|Gamma_j dK/dz_j - U_j dK/dzeta_j|`
/// 3. `|Gamma_j dK/dGamma_j - 2 zeta_j dK/dzeta_j|`
///
/// `dK/dzeta_j` holds `h` and `Gamma` fixed, `dK/dz_j` treats `z_j = Gamma_j zeta_j / U_j`
/// as the independent variable, and `dK/dGamma_j` treats `Gamma_j` as a free
/// complex variable. All derivatives are fourth-order central differences of
/// the exact potential with step `eps^{1/5}` times the local scale.
pub fn check_partial_relations<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<[T; 3]> {
    let step_rel = T::epsilon().powf(T::c(0.2));
    let mut out = [T::zero(); 3];
    let zeta = s.zeta();
    let fiber = *s.fiber();
    let big_u = s.big_u();
    for j in 0..2 {
        if zeta[j].norm_sqr().is_zero() {
            continue;
        }
        let scale = zeta[j].norm_sqr().sqrt();
        let h = step_rel * scale;
        let k_of_zeta = |w: Cx<T>| {
            let mut z = zeta;
            z[j] = w;
            k_exact(&GlcState::new(z, fiber)?, p)
        };
        let d_zeta = wirtinger(&k_of_zeta, zeta[j], h)?;
        let zj = fiber.gamma[j] * zeta[j] / big_u[j];
        let q = s.separations(p);
        let k_of_z = |w: Cx<T>| {
            let mut qq = q;
            qq[j] = w * w * p.q_scale[j];
            k_hat(qq, fiber.x, p)
        };
        let d_z = wirtinger(&k_of_z, zj, step_rel * zj.norm_sqr().sqrt())?;
        let k_of_gamma = |g: Cx<T>| {
            let mut qq = q;
            let w = g * zeta[j] / big_u[j];
            qq[j] = w * w * p.q_scale[j];
            k_hat(qq, fiber.x, p)
        };
        let d_gamma = wirtinger(&k_of_gamma, fiber.gamma[j], step_rel)?;
        let zd = zeta[j] * d_zeta;
        let r1 = zd.re.abs();
        let r2 = (fiber.gamma[j] * d_z - d_zeta * big_u[j]).norm_sqr().sqrt();
        let r3 = (fiber.gamma[j] * d_gamma - zd * T::c(2.0)).norm_sqr().sqrt();
        out[0] = out[0].max(r1);
        out[1] = out[1].max(r2);
        out[2] = out[2].max(r3);
    }
    Ok(out)
}

/// Residual of the rotation identity `Im(zeta_j dK/dzeta_j) = Im(Gamma_j dK/dGamma_j)`,
/// which follows from `K` depending on `Gamma_j` and `zeta_j` only through their product.
pub fn check_rotation_identity<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<T> {
    let step_rel = T::epsilon().powf(T::c(0.2));
    let zeta = s.zeta();
    let fiber: Fiber<T> = *s.fiber();
    let big_u = s.big_u();
    let q = s.separations(p);
    let mut worst = T::zero();
    for j in 0..2 {
        if zeta[j].norm_sqr().is_zero() {
            continue;
        }
        let h = step_rel * zeta[j].norm_sqr().sqrt();
        let k_of_zeta = |w: Cx<T>| {
            let mut z = zeta;
            z[j] = w;
            k_exact(&GlcState::new(z, fiber)?, p)
        };
        let d_zeta = wirtinger(&k_of_zeta, zeta[j], h)?;
        let k_of_gamma = |g: Cx<T>| {
            let mut qq = q;
            let w = g * zeta[j] / big_u[j];
            qq[j] = w * w * p.q_scale[j];
            k_hat(qq, fiber.x, p)
        };
        let d_gamma = wirtinger(&k_of_gamma, fiber.gamma[j], step_rel)?;
        worst = worst.max(((zeta[j] * d_zeta).im - (fiber.gamma[j] * d_gamma).im).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;

    fn cx(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn w_polynomial_values() {
        let z = cx(0.0, 0.0);
        assert_eq!(eval_w(WKind::W2, cx(1.0, 0.0), z), 8.0);
        assert_eq!(eval_w(WKind::W2, cx(0.0, 1.0), z), -4.0);
        assert_eq!(eval_w(WKind::W3, z, z), 0.0);
        assert_eq!(eval_w(WKind::Wc, z, cx(0.3, 0.1)), 0.0);
    }

    #[test]
    fn collision_value_is_b0_over_x() {
        let p = derive_params::<f64>(1.0, 1.0, 1.0, 1.0).unwrap();
        let q = [cx(0.0, 0.0); 2];
        assert_eq!(k_hat(q, cx(1.0, 0.0), &p).unwrap(), 4.0);
        assert_eq!(k_series_hat(q, cx(1.0, 0.0), &p, 8).unwrap(), 4.0);
    }

    #[test]
    fn unsupported_degree_rejected() {
        let p = derive_params::<f64>(1.0, 1.0, 1.0, 1.0).unwrap();
        let q = [cx(0.0, 0.0); 2];
        assert_eq!(k_series_hat(q, cx(1.0, 0.0), &p, 5), Err(Error::UnsupportedDegree(5)));
    }

    #[test]
    fn gradient_matches_differences() {
        let p = derive_params::<f64>(1.0, 2.0, 0.7, 1.3).unwrap();
        let q = [cx(0.05, 0.02), cx(-0.03, 0.04)];
        let x = cx(0.9, 0.3);
        let g = k_hat_grad(q, x, &p).unwrap();
        let h = 1e-6;
        let f = |q0: Cx<f64>| k_hat([q0, q[1]], x, &p).unwrap();
        let dre = (f(q[0] + cx(h, 0.0)) - f(q[0] - cx(h, 0.0))) / (2.0 * h);
        let dim = (f(q[0] + cx(0.0, h)) - f(q[0] - cx(0.0, h))) / (2.0 * h);
        assert!((g.dq[0] - cx(dre, -dim) * 0.5).norm() < 1e-8);
        let fx = |xx: Cx<f64>| k_hat(q, xx, &p).unwrap();
        let dre = (fx(x + cx(h, 0.0)) - fx(x - cx(h, 0.0))) / (2.0 * h);
        let dim = (fx(x + cx(0.0, h)) - fx(x - cx(0.0, h))) / (2.0 * h);
        assert!((g.dxbar - cx(dre, dim) * 0.5).norm() < 1e-8);
    }
}
