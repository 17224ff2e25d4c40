//! Polynomials of the degree-9 normal form and its approximate integrals.
//!
//! Arguments `z = [I_1, L_1, I_2, L_2]` follow the homogeneous layout. The
//! energies `h` are the full values `h_j + h_j*`, so an experiment's anchor is
//! carried by the state itself.

use crate::coords::{GlcState, GLC_DIM};
use crate::error::Result;
use crate::flow::{Rescale, System};
use crate::params::MassParams;
use crate::scalar::Scalar;

fn swap<T: Copy>(z: &[T; 4]) -> [T; 4] {
    [z[2], z[3], z[0], z[1]]
}

fn r<T: Scalar>(p: i64, q: i64) -> T {
    T::ratio(p, q)
}

/// `(I_1^3 + 3 I_1 L_1^2) - (I_2^3 + 3 I_2 L_2^2)`, the integral of the leading-order dynamics.
pub fn kappa_lead<T: Scalar>(z: &[T; 4]) -> T {
    let [i1, l1, i2, l2] = *z;
    let three = T::c(3.0);
    (i1 * i1 * i1 + three * i1 * l1 * l1) - (i2 * i2 * i2 + three * i2 * l2 * l2)
}

pub fn g5<T: Scalar>(z: &[T; 4], h: [T; 2]) -> T {
    let [i1, l1, i2, l2] = *z;
    -r::<T>(4, 5) * (i1 * i1 * i1 + T::c(6.0) * i1 * l1 * l1 - i2 * i2 * i2) * (h[0] * l1 * l1 - h[1] * l2 * l2)
}

fn g7_1<T: Scalar>(z: &[T; 4]) -> T {
    let [i1, l1, i2, l2] = *z;
    let c = T::c;
    let (i1_2, i1_3, i1_4) = (i1 * i1, i1 * i1 * i1, i1 * i1 * i1 * i1);
    let (l1_2, l1_4) = (l1 * l1, l1 * l1 * l1 * l1);
    let (i2_2, i2_3, i2_4) = (i2 * i2, i2 * i2 * i2, i2 * i2 * i2 * i2);
    let (l2_2, l2_4) = (l2 * l2, l2 * l2 * l2 * l2);
    c(-2937060.0) * i1_4 * l1_2 * i2 - c(3947160.0) * i1_2 * l1_4 * i2 - c(1522920.0) * l1_4 * l1_2 * i2
        + c(1107225.0) * i1_3 * i2_4
        + c(3181815.0) * i1 * l1_2 * i2_4
        - c(807525.0) * i2_4 * i2_3
        + c(2447550.0) * i1_3 * i2_2 * l2_2
        + c(6394710.0) * i1 * l1_2 * i2_2 * l2_2
        - c(2692305.0) * i2_4 * i2 * l2_2
        - c(944468.0) * i1_3 * l2_4
        - c(899220.0) * i1 * l1_2 * l2_4
        - c(1503082.0) * i2_3 * l2_4
        - c(3800244.0) * i2 * l2_4 * l2_2
}

fn g7_2<T: Scalar>(z: &[T; 4]) -> T {
    let [i1, l1, i2, l2] = *z;
    let c = T::c;
    let i1_3 = i1 * i1 * i1;
    let l2_4 = l2 * l2 * l2 * l2;
    c(56.0)
        * (c(18315.0) * i1_3 * i1_3 * i2 - c(27973.0) * i1_3 * l2_4 - c(32115.0) * i1 * l1 * l1 * l2_4
            + c(27973.0) * i2 * i2 * i2 * l2_4
            + c(135723.0) * i2 * l2_4 * l2 * l2)
}

fn g7_3<T: Scalar>(z: &[T; 4]) -> T {
    let [i1, l1, i2, l2] = *z;
    -r::<T>(16, 25) * l1 * l1 * (i1 * i1 * i1 + T::c(12.0) * i1 * l1 * l1 - i2 * i2 * i2) * l2 * l2
}

pub fn g7<T: Scalar>(z: &[T; 4], h: [T; 2]) -> T {
    let half = T::c(0.5);
    let s = swap(z);
    h[0] * h[0] * (g7_1(z) + half * g7_2(z)) + h[0] * h[1] * g7_3(z) - h[1] * h[1] * (g7_1(&s) - half * g7_2(&s))
}

/// The extended integral `kappa_lead + G^5 + G^7`.
pub fn kappa_full<T: Scalar>(s: &GlcState<T>) -> T {
    let z = s.homogeneous();
    kappa_lead(&z) + g5(&z, s.h()) + g7(&z, s.h())
}

/// `a_2^{-1/3} h_1 + a_1^{-1/3} h_2`.
pub fn h_integral<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> T {
    p.a_inv_third(1) * s.h()[0] + p.a_inv_third(0) * s.h()[1]
}

pub fn r14<T: Scalar>(z: &[T; 4], h: [T; 2]) -> T {
    let [_, l1, _, l2] = *z;
    r::<T>(4, 5) * l2 * l2 * (h[0] * l1 * l1 - h[1] * l2 * l2)
}

fn r11<T: Scalar>(z: &[T; 4]) -> T {
    let [i1, l1, i2, l2] = *z;
    let c = T::c;
    let (i1_2, i1_4) = (i1 * i1, i1 * i1 * i1 * i1);
    let (i2_2, i2_3) = (i2 * i2, i2 * i2 * i2);
    let (l1_2, l2_2) = (l1 * l1, l2 * l2);
    c(33300.0) * i1_4 * i2_2 - c(21645.0) * i1 * i2_3 * i2_2 + c(34965.0) * i1_4 * l2_2
        + c(11285.0) * i1_2 * l1_2 * l2_2
        - c(23026.0) * l1_2 * l1_2 * l2_2
        - c(59385.0) * i1 * i2_3 * l2_2
        - c(46990.0) * i1 * i2 * l2_2 * l2_2
}

fn r12<T: Scalar>(z: &[T; 4]) -> T {
    let [i1, l1, i2, l2] = *z;
    let c = T::c;
    let (i1_2, i1_3) = (i1 * i1, i1 * i1 * i1);
    let (l1_2, l1_4) = (l1 * l1, l1 * l1 * l1 * l1);
    let i2_3 = i2 * i2 * i2;
    let l2_2 = l2 * l2;
    c(6105.0) * i1_3 * i1_3 + c(34965.0) * i1_2 * i1_2 * l1_2 + c(46990.0) * i1_2 * l1_4
        + c(18130.0) * l1_4 * l1_2
        + c(5550.0) * i1_3 * i2_3
        - c(10545.0) * i1 * l1_2 * i2_3
        - c(5550.0) * i2_3 * i2_3
        - c(11285.0) * i1 * l1_2 * i2 * l2_2
        + c(78972.0) * l2_2 * l2_2 * l2_2
}

/// Degree-6 resonant term of `I_1'`. The `R_12` term carries `h_2^2`, matching
/// the homogeneity in `h` of every other degree-6 contribution.
pub fn r16<T: Scalar>(z: &[T; 4], h: [T; 2]) -> T {
    let [_, l1, _, l2] = *z;
    let l2_2 = l2 * l2;
    -r::<T>(16, 25) * l1 * l1 * l2_2 * l2_2 * h[0] * h[1] - r::<T>(4, 107925) * h[0] * h[0] * r11(z)
        + r::<T>(4, 107925) * h[1] * h[1] * r12(z)
}

/// The three known blocks of `R_5^9`, with `alpha_j = 4 arg Gamma_j`:
/// the `L`-free block, the `L_1^2` block plus its index exchange, and the `L^3` block.
pub fn r59_blocks<T: Scalar>(i1: T, i2: T, l1: T, l2: T, alpha1: T, alpha2: T) -> [T; 3] {
    let c = T::c;
    let cube = |v: T| v * v * v;
    let (i1_3, i2_3) = (cube(i1), cube(i2));
    let ang = (c(6.0) + c(10.0) * alpha1.cos() + c(10.0) * alpha2.cos() + c(35.0) * (alpha1 + alpha2).cos()
        + c(3.0) * (alpha1 - alpha2).cos())
        * r::<T>(8, 19);
    let first = ang * (i1 - i2) * (i1 * i1 + i1 * i2 + i2 * i2) * (i1_3 * i1_3 - c(11.0) * i1_3 * i2_3 + i2_3 * i2_3);
    let second_one = |ia: T, ib: T, la: T, aa: T, ab: T| {
        let (ia3, ib3) = (cube(ia), cube(ib));
        let trig = c(109.0) * (c(10.0) * aa.cos() + c(35.0) * (aa + ab).cos() + c(3.0) * (aa - ab).cos())
            - c(86.0) * (c(3.0) + c(5.0) * ab.cos());
        -r::<T>(2, 209) * ia * la * la * (c(5.0) * ia3 * ia3 - c(35.0) * ia3 * ib3 + c(14.0) * ib3 * ib3) * trig
    };
    let second = second_one(i1, i2, l1, alpha1, alpha2) + second_one(i2, i1, l2, alpha2, alpha1);
    let sines = |aa: T, ab: T| c(10.0) * aa.sin() + c(35.0) * (aa + ab).sin() + c(3.0) * (aa - ab).sin();
    let third = r::<T>(256, 13) * cube(l1) * (i1_3 * i1_3 - c(5.0) * i1_3 * i2_3 + i2_3 * i2_3)
        * (sines(alpha1, alpha2) - sines(alpha2, alpha1));
    [first, second, third]
}

/// Sum of [`r59_blocks`].
pub fn r59_leading<T: Scalar>(i1: T, i2: T, l1: T, l2: T, alpha1: T, alpha2: T) -> T {
    let [a, b, c] = r59_blocks(i1, i2, l1, l2, alpha1, alpha2);
    a + b + c
}

/// The known part of the degree-9 normal form on the flat GLC layout:
/// `I_j' = |zeta_o|^2 + R^4 + R^6`, `L_j' = 0`, `h_j' = +- b_c a_j^{-1/3} R_5^9`
/// and a frozen fiber otherwise. The unknown degree-8 terms are absent.
pub fn normal_form_field<T: Scalar>(y: &[T], p: &MassParams<T>) -> [T; GLC_DIM] {
    let z = [y[0], y[1], y[2], y[3]];
    let h = [y[4], y[5]];
    let zs = swap(&z);
    let hs = [h[1], h[0]];
    let mut d = [T::zero(); GLC_DIM];
    d[0] = z[2] * z[2] + z[3] * z[3] + r14(&z, h) + r16(&z, h);
    d[2] = z[0] * z[0] + z[1] * z[1] + r14(&zs, hs) + r16(&zs, hs);
    let alpha = |re: T, im: T| T::c(4.0) * im.atan2(re);
    let r59 = r59_leading(z[0], z[2], z[1], z[3], alpha(y[6], y[7]), alpha(y[8], y[9]));
    d[4] = p.bc * p.a_inv_third(0) * r59;
    d[5] = -p.bc * p.a_inv_third(1) * r59;
    d
}

/// [`normal_form_field`] as an integrable system, optionally divided by `|zeta|`.
pub struct NormalFormSystem<'p, T> {
    pub params: &'p MassParams<T>,
    pub rescale: Rescale,
}

impl<T: Scalar> System<T> for NormalFormSystem<'_, T> {
    fn dim(&self) -> usize {
        GLC_DIM
    }

    fn rhs(&self, _tau: T, y: &[T], dy: &mut [T]) -> Result<()> {
        let d = normal_form_field(y, self.params);
        let factor = match self.rescale {
            Rescale::Desingularised => {
                let n = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]).sqrt();
                if n.is_zero() {
                    T::zero()
                } else {
                    n.recip()
                }
            }
            _ => T::one(),
        };
        for i in 0..GLC_DIM {
            dy[i] = d[i] * factor;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::Fiber;
    use crate::scalar::Cx;

    #[test]
    fn collision_values_vanish() {
        let f = Fiber { h: [0.3, -0.2], gamma: [Cx::new(1.0, 0.0); 2], x: Cx::new(1.0, 0.0), y: Cx::new(0.0, 0.0) };
        let s = GlcState::new([Cx::new(0.0, 0.0); 2], f).unwrap();
        assert_eq!(kappa_full(&s), 0.0);
    }

    #[test]
    fn collinear_kappa_is_cubic_difference() {
        let z = [0.3f64, 0.0, -0.2, 0.0];
        assert!((kappa_lead(&z) - (0.027 + 0.008)).abs() < 1e-16);
        assert_eq!(g5(&z, [0.4, 0.1]), 0.0);
    }

    #[test]
    fn r59_examples() {
        assert_eq!(r59_leading(0.7, 0.7, 0.0, 0.0, 0.3, 1.2), 0.0);
        let (i1, i2) = (0.6f64, -0.3f64);
        let want = 8.0 / 19.0 * (i1 - i2) * (i1 * i1 + i1 * i2 + i2 * i2)
            * (i1.powi(6) - 11.0 * i1.powi(3) * i2.powi(3) + i2.powi(6)) * 64.0;
        assert!((r59_leading(i1, i2, 0.0, 0.0, 0.0, 0.0) - want).abs() < 1e-14);
    }

    #[test]
    fn lead_block_is_antisymmetric() {
        let a = r59_blocks(0.4f64, -0.9, 0.2, 0.5, 0.7, -1.3);
        let b = r59_blocks(-0.9f64, 0.4, 0.5, 0.2, -1.3, 0.7);
        assert!((a[0] + b[0]).abs() < 1e-14);
        // the index exchange makes the second block symmetric
        assert!((a[1] - b[1]).abs() < 1e-14);
    }
}
