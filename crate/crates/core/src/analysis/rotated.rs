use crate::coords::{Fiber, GlcState};
use crate::error::Result;
use crate::scalar::{Cx, Scalar};

/// Coordinates adapted to the simultaneous collision: `J_1 = (I_1 + I_2)/2`
/// is the collision direction and `J_2 = (I_1 - I_2)/2` its complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedPoint<T> {
    pub j1: T,
    pub j2: T,
    pub l1: T,
    pub l2: T,
    pub fiber: Fiber<T>,
}

impl<T: Scalar> RotatedPoint<T> {
    /// Chart-style ratios `(L_1, J_2, L_2) / J_1`, ordered as `(beta, gamma, delta)`.
    pub fn ratios(&self) -> [T; 3] {
        [self.l1 / self.j1, self.j2 / self.j1, self.l2 / self.j1]
    }

    /// Largest of `|L_1|, |J_2|, |L_2|` and the index of the attaining entry.
    pub fn transverse_max(&self) -> (T, usize) {
        let v = [self.l1.abs(), self.j2.abs(), self.l2.abs()];
        let mut k = 0;
        for i in 1..3 {
            if v[i] > v[k] {
                k = i;
            }
        }
        (v[k], k)
    }
}

pub fn rotate<T: Scalar>(s: &GlcState<T>) -> RotatedPoint<T> {
    let [i1, l1, i2, l2] = s.homogeneous();
    let half = T::c(0.5);
    RotatedPoint { j1: (i1 + i2) * half, j2: (i1 - i2) * half, l1, l2, fiber: *s.fiber() }
}

/// Exact inverse of [`rotate`]: `I_1 = J_1 + J_2`, `I_2 = J_1 - J_2`.
pub fn unrotate<T: Scalar>(r: &RotatedPoint<T>) -> Result<GlcState<T>> {
    GlcState::new([Cx::new(r.j1 + r.j2, r.l1), Cx::new(r.j1 - r.j2, r.l2)], r.fiber)
}

/// `J_1` of a flat GLC layout.
pub(crate) fn j1_of<T: Scalar>(y: &[T]) -> T {
    (y[0] + y[2]) * T::c(0.5)
}

/// Transverse size `max(|L_1|, |J_2|, |L_2|)` of a flat GLC layout.
pub(crate) fn transverse_of<T: Scalar>(y: &[T]) -> T {
    let j2 = (y[0] - y[2]) * T::c(0.5);
    y[1].abs().max(j2.abs()).max(y[3].abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fiber() -> Fiber<f64> {
        Fiber { h: [0.1, -0.2], gamma: [Cx::new(1.0, 0.0); 2], x: Cx::new(1.0, 0.0), y: Cx::new(0.0, 0.0) }
    }

    #[test]
    fn unit_example() {
        let s = GlcState::new([Cx::new(1.0, 0.0), Cx::new(0.0, 0.0)], fiber()).unwrap();
        let r = rotate(&s);
        assert_eq!((r.j1, r.j2), (0.5, 0.5));
    }

    #[test]
    fn round_trip() {
        let s = GlcState::new([Cx::new(0.3, -0.1), Cx::new(-0.7, 0.25)], fiber()).unwrap();
        let back = unrotate(&rotate(&s)).unwrap().homogeneous();
        for (a, b) in back.iter().zip(s.homogeneous()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn collision_ray_has_zero_ratios() {
        let s = GlcState::new([Cx::new(0.2, 0.0), Cx::new(0.2, 0.0)], fiber()).unwrap();
        assert_eq!(rotate(&s).ratios(), [0.0, 0.0, 0.0]);
    }
}
