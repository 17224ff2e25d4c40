use crate::blowup::{eval_x_chart_oriented, Chart, ChartPoint};
use crate::coords::{Fiber, GlcState, GLC_DIM};
use crate::dynamics::{eval_x_coupled, Coupling};
use crate::error::{Error, Result};
use crate::params::MassParams;
use crate::scalar::Scalar;

use super::System;

/// Time parametrisation of a [`GlcSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rescale {
    /// `X`, fictitious time `tau`.
    Tau,
    /// `X_H`, physical time. Singular at single collisions.
    Physical,
    /// `X / |zeta|` with `|zeta|` the Euclidean norm of `(I_1, L_1, I_2, L_2)`,
    /// the analogue of the blow-up desingularisation without charts.
    Desingularised,
}

/// Generalised Levi-Civita flow on the flat 14-component layout. With
/// `accumulate_time` a 15th component integrates physical time.
#[derive(Debug, Clone, Copy)]
pub struct GlcSystem<'p, T> {
    pub params: &'p MassParams<T>,
    pub coupling: Coupling,
    pub rescale: Rescale,
    pub accumulate_time: bool,
}

impl<'p, T: Scalar> GlcSystem<'p, T> {
    pub fn new(params: &'p MassParams<T>, rescale: Rescale) -> Self {
        GlcSystem { params, coupling: Coupling::Full, rescale, accumulate_time: false }
    }

    pub fn kepler(mut self) -> Self {
        self.coupling = Coupling::Kepler;
        self
    }

    pub fn with_time(mut self) -> Self {
        self.accumulate_time = true;
        self
    }
}

impl<T: Scalar> System<T> for GlcSystem<'_, T> {
    fn dim(&self) -> usize {
        GLC_DIM + usize::from(self.accumulate_time)
    }

    fn rhs(&self, _tau: T, y: &[T], dy: &mut [T]) -> Result<()> {
        let s = GlcState::from_slice(y)?;
        let v = eval_x_coupled(&s, self.params, self.coupling)?.to_array();
        let z = s.zeta();
        let w = z[0].norm_sqr() * z[1].norm_sqr();
        let factor = match self.rescale {
            Rescale::Tau => T::one(),
            Rescale::Physical => {
                if w.is_zero() {
                    return Err(Error::SingularField(if z[0].norm_sqr().is_zero() { 1 } else { 2 }));
                }
                w.recip()
            }
            Rescale::Desingularised => {
                let n = (z[0].norm_sqr() + z[1].norm_sqr()).sqrt();
                if n.is_zero() {
                    T::zero()
                } else {
                    n.recip()
                }
            }
        };
        for i in 0..GLC_DIM {
            dy[i] = v[i] * factor;
        }
        if self.accumulate_time {
            dy[GLC_DIM] = match self.rescale {
                Rescale::Physical => T::one(),
                _ => w * factor,
            };
        }
        Ok(())
    }

    fn project(&self, y: &mut [T]) {
        let mut f = Fiber::from_slice(&y[4..14]);
        f.normalise_phases();
        let a = f.to_array();
        y[4..14].copy_from_slice(&a);
    }
}

/// Oriented desingularised flow in one blow-up chart, on the layout of
/// [`ChartPoint::to_array`]. With `accumulate_time` a 15th component
/// integrates physical time, `dt/ds = |r|^3 |rho_1|^2 |rho_2|^2`.
#[derive(Debug, Clone, Copy)]
pub struct ChartSystem<'p, T> {
    pub params: &'p MassParams<T>,
    pub chart: Chart,
    pub orientation: i8,
    pub coupling: Coupling,
    pub accumulate_time: bool,
}

impl<T: Scalar> System<T> for ChartSystem<'_, T> {
    fn dim(&self) -> usize {
        14 + usize::from(self.accumulate_time)
    }

    fn rhs(&self, _tau: T, y: &[T], dy: &mut [T]) -> Result<()> {
        let c = ChartPoint::from_slice(self.chart, self.orientation, y);
        let d = eval_x_chart_oriented(&c, self.params, self.coupling)?;
        dy[0] = d.r;
        dy[1..4].copy_from_slice(&d.ratios);
        dy[4..14].copy_from_slice(&d.fiber);
        if self.accumulate_time {
            let rho = c.rho();
            let r = c.r.abs();
            dy[14] = r * r * r * rho[0].norm_sqr() * rho[1].norm_sqr();
        }
        Ok(())
    }

    fn project(&self, y: &mut [T]) {
        let mut f = Fiber::from_slice(&y[4..14]);
        f.normalise_phases();
        y[4..14].copy_from_slice(&f.to_array());
    }
}

/// A system given by a closure, for tests and ad-hoc problems.
pub struct FnSystem<F> {
    pub dim: usize,
    pub f: F,
}

impl<T: Scalar, F: Fn(T, &[T], &mut [T]) -> Result<()>> System<T> for FnSystem<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn rhs(&self, tau: T, y: &[T], dy: &mut [T]) -> Result<()> {
        (self.f)(tau, y, dy)
    }
}
