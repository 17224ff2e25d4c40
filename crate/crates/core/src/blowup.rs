//! Projective blow-up of the simultaneous collision set `zeta_1 = zeta_2 = 0`.
//!
//! The homogeneous coordinates are `(I_1, L_1, I_2, L_2)` and the chart named
//! after one of them sets that coordinate to one: a point of the alpha chart
//! is `zeta = r (1, beta, gamma, delta)`. The chart fields are the pull-back of
//! `X` divided by `r`. Because that division reverses time where `r < 0`,
//! every [`ChartPoint`] carries an orientation flag that is multiplied by the
//! sign of the dividing ratio at each transition.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::coords::{solve_u, Fiber, GlcState};
use crate::dynamics::{factored_field, Coupling};
use crate::error::{Error, Result};
use crate::params::MassParams;
use crate::scalar::{Cx, Scalar};

/// One of the four directional charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::Alpha, Chart::Beta, Chart::Gamma, Chart::Delta];

    /// Position of the distinguished coordinate in `(I_1, L_1, I_2, L_2)`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Chart {
        Chart::ALL[i]
    }

    /// Homogeneous indices of the three ratio coordinates, in increasing order.
    pub fn others(self) -> [usize; 3] {
        let k = self.index();
        let mut out = [0; 3];
        let mut n = 0;
        for i in 0..4 {
            if i != k {
                out[n] = i;
                n += 1;
            }
        }
        out
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chart::Alpha => "alpha",
            Chart::Beta => "beta",
            Chart::Gamma => "gamma",
            Chart::Delta => "delta",
        };
        f.write_str(s)
    }
}

/// A point of the blown-up space in one chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint<T> {
    pub chart: Chart,
    /// Signed radial coordinate, equal to the distinguished homogeneous coordinate.
    pub r: T,
    /// The other three homogeneous coordinates divided by the distinguished one.
    pub ratios: [T; 3],
    pub fiber: Fiber<T>,
    /// `+1` or `-1`; the sign `r` would have on this side of the divisor.
    pub orientation: i8,
}

/// Derivative of a [`ChartPoint`] under the desingularised field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartDerivative<T> {
    pub r: T,
    pub ratios: [T; 3],
    /// Fiber derivative in the [`Fiber::to_array`] layout.
    pub fiber: [T; 10],
}

/// A point of the real projective line as a homogeneous pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projective<T>(pub [T; 2]);

impl<T: Scalar> Projective<T> {
    /// `b / a`, or `None` at the point at infinity.
    pub fn value(&self) -> Option<T> {
        let [a, b] = self.0;
        if a.is_zero() {
            None
        } else {
            Some(b / a)
        }
    }

    /// Sine of the angle between the two representatives; zero iff equal in `RP^1`.
    pub fn distance(&self, other: &Self) -> T {
        let [a0, a1] = self.0;
        let [b0, b1] = other.0;
        let n = (a0 * a0 + a1 * a1).sqrt() * (b0 * b0 + b1 * b1).sqrt();
        (a0 * b1 - a1 * b0).abs() / n
    }
}

/// Normal spectrum of the equilibrium manifold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// The four normal eigenvalues, sorted decreasing.
    pub eigenvalues: [f64; 4],
    /// Eigenvalues divided by the positive one.
    pub normalised: [f64; 4],
    /// Number of eigenvalues indistinguishable from zero.
    pub zero_block: usize,
    /// Largest modulus in the zero block.
    pub zero_block_max: f64,
    /// Largest relative deviation from the analytic `diag(1, -1, -3, -1)` Jacobian block.
    pub analytic_deviation: f64,
    /// Angle between each normal eigenvector and its coordinate axis, in radians.
    pub eigenvector_misalignment: f64,
}

impl<T: Scalar> ChartPoint<T> {
    /// Homogeneous vector with a one in the chart slot.
    pub fn homogeneous(&self) -> [T; 4] {
        let mut v = [T::one(); 4];
        for (slot, ratio) in self.chart.others().into_iter().zip(self.ratios) {
            v[slot] = ratio;
        }
        v
    }

    /// `rho` such that `zeta = r rho`.
    pub fn rho(&self) -> [Cx<T>; 2] {
        let v = self.homogeneous();
        [Cx::new(v[0], v[1]), Cx::new(v[2], v[3])]
    }

    pub fn zeta(&self) -> [Cx<T>; 2] {
        self.rho().map(|z| z * self.r)
    }

    /// Direction of physical time under the desingularised field.
    pub fn time_sign(&self) -> T {
        if self.r > T::zero() {
            T::one()
        } else if self.r < T::zero() {
            -T::one()
        } else {
            T::c(f64::from(self.orientation))
        }
    }

    pub fn max_ratio(&self) -> T {
        self.ratios.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Flat layout `[r, ratio_1, ratio_2, ratio_3, fiber...]`.
    pub fn to_array(&self) -> [T; 14] {
        let mut out = [T::zero(); 14];
        out[0] = self.r;
        out[1..4].copy_from_slice(&self.ratios);
        out[4..].copy_from_slice(&self.fiber.to_array());
        out
    }

    pub fn from_slice(chart: Chart, orientation: i8, v: &[T]) -> Self {
        ChartPoint {
            chart,
            r: v[0],
            ratios: [v[1], v[2], v[3]],
            fiber: Fiber::from_slice(&v[4..14]),
            orientation,
        }
    }
}

/// Lifts a state into a chart. Fails when the distinguished coordinate vanishes.
pub fn to_chart<T: Scalar>(s: &GlcState<T>, chart: Chart) -> Result<ChartPoint<T>> {
    let v = s.homogeneous();
    let r = v[chart.index()];
    if r.is_zero() {
        return Err(Error::WrongChart(chart));
    }
    let o = chart.others();
    Ok(ChartPoint {
        chart,
        r,
        ratios: [v[o[0]] / r, v[o[1]] / r, v[o[2]] / r],
        fiber: *s.fiber(),
        orientation: if r > T::zero() { 1 } else { -1 },
    })
}

/// A point over the collision set: `r = 0` with the given direction.
pub fn on_divisor<T: Scalar>(chart: Chart, ratios: [T; 3], fiber: Fiber<T>) -> ChartPoint<T> {
    ChartPoint { chart, r: T::zero(), ratios, fiber, orientation: 1 }
}

/// Projects a chart point down to generalised Levi-Civita coordinates.
pub fn from_chart<T: Scalar>(c: &ChartPoint<T>) -> Result<GlcState<T>> {
    GlcState::new(c.zeta(), c.fiber)
}

/// Moves a point to another chart: `r' = r v_target`, `ratios' = v / v_target`.
pub fn transition<T: Scalar>(c: &ChartPoint<T>, target: Chart) -> Result<ChartPoint<T>> {
    if target == c.chart {
        return Ok(*c);
    }
    let v = c.homogeneous();
    let d = v[target.index()];
    if d.is_zero() {
        return Err(Error::WrongChart(target));
    }
    let o = target.others();
    let flip = if d < T::zero() { -1 } else { 1 };
    Ok(ChartPoint {
        chart: target,
        r: c.r * d,
        ratios: [v[o[0]] / d, v[o[1]] / d, v[o[2]] / d],
        fiber: c.fiber,
        orientation: c.orientation * flip,
    })
}

/// Chart of the largest homogeneous coordinate.
pub fn preferred_chart<T: Scalar>(v: &[T; 4]) -> Chart {
    let mut best = 0;
    for i in 1..4 {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    Chart::from_index(best)
}

/// Ratio above which a point is moved to its preferred chart.
pub const SWITCH_ABOVE: f64 = 1.5;
/// Lower edge of the hysteresis band; after a switch every ratio is at most one.
pub const SWITCH_BAND_LOW: f64 = 1.2;

/// Applies the chart-switch rule. Returns the point unchanged when no ratio
/// exceeds [`SWITCH_ABOVE`].
pub fn maybe_switch<T: Scalar>(c: &ChartPoint<T>) -> Result<ChartPoint<T>> {
    if c.max_ratio() <= T::c(SWITCH_ABOVE) {
        return Ok(*c);
    }
    transition(c, preferred_chart(&c.homogeneous()))
}

/// Raw desingularised field `X / r` in the point's chart, without the
/// orientation factor.
pub fn eval_x_chart<T: Scalar>(c: &ChartPoint<T>, p: &MassParams<T>) -> Result<ChartDerivative<T>> {
    eval_x_chart_coupled(c, p, Coupling::Full)
}

pub fn eval_x_chart_coupled<T: Scalar>(
    c: &ChartPoint<T>,
    p: &MassParams<T>,
    coupling: Coupling,
) -> Result<ChartDerivative<T>> {
    let rho = c.rho();
    let big_u = [
        solve_u(rho[0] * c.r, c.fiber.h[0])?,
        solve_u(rho[1] * c.r, c.fiber.h[1])?,
    ];
    let f = factored_field(c.r, rho, &c.fiber, big_u, coupling, p)?;
    let w = [f.zeta[0].re, f.zeta[0].im, f.zeta[1].re, f.zeta[1].im];
    let k = c.chart.index();
    let o = c.chart.others();
    let out = ChartDerivative {
        r: c.r * w[k],
        ratios: [0, 1, 2].map(|i| w[o[i]] - c.ratios[i] * w[k]),
        fiber: f.fiber,
    };
    if out.r.is_finite() && out.ratios.iter().chain(out.fiber.iter()).all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(Error::NonFinite)
    }
}

/// The desingularised field with the time direction restored.
pub fn eval_x_chart_oriented<T: Scalar>(
    c: &ChartPoint<T>,
    p: &MassParams<T>,
    coupling: Coupling,
) -> Result<ChartDerivative<T>> {
    let d = eval_x_chart_coupled(c, p, coupling)?;
    let s = c.time_sign();
    Ok(ChartDerivative { r: d.r * s, ratios: d.ratios.map(|v| v * s), fiber: d.fiber.map(|v| v * s) })
}

fn check_projective<T: Scalar>(a: T, b: T, scale: T) -> Result<Projective<T>> {
    let tiny = T::epsilon() * T::c(16.0) * scale;
    if a.abs() <= tiny && b.abs() <= tiny {
        Err(Error::DegenerateProjective)
    } else {
        Ok(Projective([a, b]))
    }
}

/// `[L_1 : L_2]` from homogeneous coordinates.
pub fn kappa1_hom<T: Scalar>(v: &[T; 4]) -> Result<Projective<T>> {
    let scale = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    check_projective(v[1], v[3], scale)
}

/// `[L_1^3 : (I_1^3 + 3 I_1 L_1^2) - (I_2^3 + 3 I_2 L_2^2)]` from homogeneous coordinates.
pub fn kappa2_hom<T: Scalar>(v: &[T; 4]) -> Result<Projective<T>> {
    let [i1, l1, i2, l2] = *v;
    let three = T::c(3.0);
    let a = l1 * l1 * l1;
    let b = (i1 * i1 * i1 + three * i1 * l1 * l1) - (i2 * i2 * i2 + three * i2 * l2 * l2);
    let s = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    check_projective(a, b, s * s * s)
}

pub fn kappa1<T: Scalar>(c: &ChartPoint<T>) -> Result<Projective<T>> {
    kappa1_hom(&c.homogeneous())
}

pub fn kappa2<T: Scalar>(c: &ChartPoint<T>) -> Result<Projective<T>> {
    kappa2_hom(&c.homogeneous())
}

/// Angle (radians, folded into `[0, pi/2]`) between the gradients of the
/// level-set functions of the two integrals, computed in the chart of the
/// largest coordinate of `v`. The integrals are represented by the angles
/// `atan2` of their homogeneous pairs, which are smooth wherever the pair is
/// nondegenerate.
pub fn transversality_angle<T: Scalar>(v: &[T; 4]) -> Result<T> {
    let chart = preferred_chart(v);
    let k = chart.index();
    let o = chart.others();
    let base = [v[o[0]] / v[k], v[o[1]] / v[k], v[o[2]] / v[k]];
    let hom = |ratios: [T; 3]| {
        let mut w = [T::one(); 4];
        for i in 0..3 {
            w[o[i]] = ratios[i];
        }
        w
    };
    let angle = |pj: Projective<T>| pj.0[1].atan2(pj.0[0]);
    let h = T::c(1e-6);
    let mut g = [[T::zero(); 3]; 2];
    let f1 = kappa1_hom(&hom(base))?;
    let f2 = kappa2_hom(&hom(base))?;
    let (a1, a2) = (angle(f1), angle(f2));
    let wrap = |d: T| {
        let pi = T::c(std::f64::consts::PI);
        if d > pi {
            d - T::c(2.0) * pi
        } else if d < -pi {
            d + T::c(2.0) * pi
        } else {
            d
        }
    };
    for i in 0..3 {
        let mut up = base;
        up[i] = up[i] + h;
        let mut dn = base;
        dn[i] = dn[i] - h;
        let d1 = wrap(angle(kappa1_hom(&hom(up))?) - a1) - wrap(angle(kappa1_hom(&hom(dn))?) - a1);
        let d2 = wrap(angle(kappa2_hom(&hom(up))?) - a2) - wrap(angle(kappa2_hom(&hom(dn))?) - a2);
        g[0][i] = d1 / (T::c(2.0) * h);
        g[1][i] = d2 / (T::c(2.0) * h);
    }
    let dot = g[0][0] * g[1][0] + g[0][1] * g[1][1] + g[0][2] * g[1][2];
    let n0 = (g[0][0] * g[0][0] + g[0][1] * g[0][1] + g[0][2] * g[0][2]).sqrt();
    let n1 = (g[1][0] * g[1][0] + g[1][1] * g[1][1] + g[1][2] * g[1][2]).sqrt();
    if n0.is_zero() || n1.is_zero() {
        return Err(Error::DegenerateProjective);
    }
    let cos = (dot / (n0 * n1)).abs().min(T::one());
    Ok(cos.acos())
}

/// Field in the reduced coordinates `(r, ratios, h_1, h_2, theta_1, theta_2, x, y)`
/// used for linearisation, where `Gamma_j = exp(i theta_j)`.
fn reduced_field<T: Scalar>(chart: Chart, v: &[T; 12], p: &MassParams<T>) -> Result<[T; 12]> {
    let gamma = [Cx::new(v[6].cos(), v[6].sin()), Cx::new(v[7].cos(), v[7].sin())];
    let fiber = Fiber { h: [v[4], v[5]], gamma, x: Cx::new(v[8], v[9]), y: Cx::new(v[10], v[11]) };
    let c = ChartPoint { chart, r: v[0], ratios: [v[1], v[2], v[3]], fiber, orientation: 1 };
    let d = eval_x_chart(&c, p)?;
    let f = d.fiber;
    let theta = |j: usize| {
        let dg = Cx::new(f[2 + 2 * j], f[3 + 2 * j]);
        (gamma[j].conj() * dg).im
    };
    Ok([
        d.r, d.ratios[0], d.ratios[1], d.ratios[2], f[0], f[1], theta(0), theta(1), f[6], f[7], f[8], f[9],
    ])
}

/// Central-difference Jacobian of the raw alpha-chart field in the reduced
/// 12-dimensional coordinates, at `(r, beta, gamma, delta) = point` with the given fiber.
pub fn chart_jacobian<T: Scalar>(
    point: [T; 4],
    fiber: &Fiber<T>,
    p: &MassParams<T>,
    step: T,
) -> Result<DMatrix<f64>> {
    let theta = [fiber.gamma[0].im.atan2(fiber.gamma[0].re), fiber.gamma[1].im.atan2(fiber.gamma[1].re)];
    let base = [
        point[0], point[1], point[2], point[3], fiber.h[0], fiber.h[1], theta[0], theta[1], fiber.x.re,
        fiber.x.im, fiber.y.re, fiber.y.im,
    ];
    let mut m = DMatrix::zeros(12, 12);
    let two = T::c(2.0);
    for j in 0..12 {
        let mut up = base;
        up[j] = up[j] + step;
        let mut dn = base;
        dn[j] = dn[j] - step;
        let fu = reduced_field(Chart::Alpha, &up, p)?;
        let fd = reduced_field(Chart::Alpha, &dn, p)?;
        for i in 0..12 {
            m[(i, j)] = ((fu[i] - fd[i]) / (two * step)).f64();
        }
    }
    Ok(m)
}

/// Linearisation at the point `(0, 0, 1, 0)` of the alpha chart, which lies on
/// the equilibrium manifold. The differences are taken in `T`; eigenvalues in `f64`.
pub fn jacobian_at_n<T: Scalar>(fiber: &Fiber<T>, p: &MassParams<T>) -> Result<SpectrumResult> {
    let step = T::epsilon().powf(T::c(1.0 / 3.0));
    let point = [T::zero(), T::zero(), T::one(), T::zero()];
    let m = chart_jacobian(point, fiber, p, step)?;
    let analytic = [1.0, -1.0, -3.0, -1.0];
    let mut dev: f64 = 0.0;
    for i in 0..12 {
        for j in 0..12 {
            let want = if i == j && i < 4 { analytic[i] } else { 0.0 };
            dev = dev.max((m[(i, j)] - want).abs());
        }
    }
    let eig = m.clone().complex_eigenvalues();
    let mut vals: Vec<f64> = eig.iter().map(|z| z.re).collect();
    vals.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let zero_block_max = vals[4..].iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let zero_block = eig.iter().filter(|z| z.norm() < 1e-6).count();
    let mut normal = [vals[0], vals[1], vals[2], vals[3]];
    normal.sort_by(|a, b| b.total_cmp(a));
    let lead = normal[0];
    let normalised = normal.map(|v| v / lead);
    // eigenvectors of the leading block against the coordinate axes
    let mut misalign: f64 = 0.0;
    for (axis, lambda) in analytic.iter().enumerate() {
        let shifted = &m - DMatrix::identity(12, 12) * *lambda;
        let e = DMatrix::from_fn(12, 1, |i, _| if i == axis { 1.0 } else { 0.0 });
        let res = (&shifted * &e).norm();
        misalign = misalign.max(res.atan());
    }
    Ok(SpectrumResult {
        eigenvalues: normal,
        normalised,
        zero_block,
        zero_block_max,
        analytic_deviation: dev,
        eigenvector_misalignment: misalign,
    })
}

/// Carries a point over the divisor along a path of homogeneous directions,
/// switching charts by the standard rule, and returns it in the starting
/// chart. The radial coordinate is held fixed within each chart, so the
/// returned `r` and orientation record the orientation character of the loop.
pub fn transport<T: Scalar>(
    start: &ChartPoint<T>,
    path: &dyn Fn(T) -> [T; 4],
    t_end: T,
    steps: usize,
) -> Result<ChartPoint<T>> {
    let mut c = *start;
    for n in 1..=steps {
        let t = t_end * T::c(n as f64 / steps as f64);
        let v = path(t);
        let k = c.chart.index();
        if v[k].is_zero() {
            return Err(Error::WrongChart(c.chart));
        }
        let o = c.chart.others();
        c.ratios = [v[o[0]] / v[k], v[o[1]] / v[k], v[o[2]] / v[k]];
        c = maybe_switch(&c)?;
    }
    transition(&c, start.chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;

    fn cx(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    fn fiber() -> Fiber<f64> {
        Fiber { h: [0.2, -0.1], gamma: [cx(0.6, 0.8), cx(1.0, 0.0)], x: cx(1.0, 0.0), y: cx(0.1, 0.0) }
    }

    #[test]
    fn chart_examples() {
        let s = GlcState::new([cx(0.1, 0.02), cx(0.1, 0.05)], fiber()).unwrap();
        let a = to_chart(&s, Chart::Alpha).unwrap();
        assert!((a.r - 0.1).abs() < 1e-16);
        let want = [0.2, 1.0, 0.5];
        for i in 0..3 {
            assert!((a.ratios[i] - want[i]).abs() < 1e-15);
        }
        let g = transition(&a, Chart::Gamma).unwrap();
        assert!((g.r - 0.1).abs() < 1e-16);
        let want = [1.0, 0.2, 0.5];
        for i in 0..3 {
            assert!((g.ratios[i] - want[i]).abs() < 1e-15);
        }
        let back = from_chart(&g).unwrap();
        assert!((back.zeta()[0] - s.zeta()[0]).norm() < 1e-16);
    }

    #[test]
    fn divisor_point_maps_to_collision() {
        let c = on_divisor(Chart::Beta, [0.3, 0.1, -0.2], fiber());
        let s = from_chart(&c).unwrap();
        assert_eq!(s.zeta(), [cx(0.0, 0.0); 2]);
        assert_eq!(to_chart(&s, Chart::Alpha), Err(Error::WrongChart(Chart::Alpha)));
    }

    #[test]
    fn leading_order_fields() {
        let p = derive_params::<f64>(1.0, 1.0, 1.0, 1.0).unwrap();
        let on_n = on_divisor(Chart::Alpha, [0.0, 1.0, 0.0], fiber());
        let d = eval_x_chart(&on_n, &p).unwrap();
        assert_eq!([d.r, d.ratios[0], d.ratios[1], d.ratios[2]], [0.0; 4]);
        let c = on_divisor(Chart::Alpha, [0.0, 0.0, 0.0], fiber());
        let d = eval_x_chart(&c, &p).unwrap();
        assert_eq!(d.ratios, [0.0, 1.0, 0.0]);
        assert!(d.fiber.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn kappa_examples() {
        let k = kappa2_hom(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(k.value(), Some(0.0));
        let k = kappa2_hom(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(k.0, [1.0, 4.0]);
        assert_eq!(kappa2_hom(&[1.0, 0.0, 1.0, 0.0]), Err(Error::DegenerateProjective));
    }

    #[test]
    fn spectrum_on_n() {
        let p = derive_params::<f64>(1.0, 2.0, 1.0, 3.0).unwrap();
        let s = jacobian_at_n(&fiber(), &p).unwrap();
        assert_eq!(s.zero_block, 8);
        let want = [1.0, -1.0, -1.0, -3.0];
        for i in 0..4 {
            assert!((s.normalised[i] - want[i]).abs() < 1e-8, "{:?}", s);
        }
    }

    #[test]
    fn loop_reverses_orientation() {
        let start = ChartPoint { chart: Chart::Alpha, r: 0.01, ratios: [0.0; 3], fiber: fiber(), orientation: 1 };
        let path = |t: f64| [t.cos(), 0.0, t.sin(), 0.0];
        let end = transport(&start, &path, std::f64::consts::PI, 400).unwrap();
        assert_eq!(end.orientation, -1);
        assert!(end.r < 0.0);
    }
}
