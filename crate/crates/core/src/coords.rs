//! The coordinate chain: Cartesian separations, Levi-Civita variables and
//! generalised Levi-Civita variables, with exact inverses.
//!
//! Conventions. Binary `j` has separation `Q_j` and momentum `P_j`. The
//! rescaled pair is `Q~ = 4 k M Q`, `P~ = P / (4 k M)`, and Levi-Civita
//! variables satisfy `Q~ = z^2 / 2`, `P~ = u / conj(z)`. The generalised
//! variables are
//!
//! ```text
//! zeta = a^{-1/3} conj(u) z,   Gamma = u / |u|,   h = a^{2/3} (|u|^2 - 1) / |z|^2,
//! ```
//!
//! so that `U = |u|` solves `U^2 (U^2 - 1) = h |zeta|^2` on the branch `U > 1/sqrt 2`.
//! Because `conj(u) z = 2 Q conj(P)`, the imaginary part `L = Im zeta` equals
//! `-2 a^{-1/3}` times the binary angular momentum `Im(conj(Q) P)`.

use crate::error::{Error, Result};
use crate::params::MassParams;
use crate::scalar::{Cx, Scalar};

/// Separations and conjugate momenta in the centre-of-mass frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianState<T> {
    pub q: [Cx<T>; 2],
    pub x: Cx<T>,
    pub p: [Cx<T>; 2],
    pub y: Cx<T>,
}

/// Levi-Civita variables `(z~_j, u_j)` plus the untouched `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcState<T> {
    pub z: [Cx<T>; 2],
    pub u: [Cx<T>; 2],
    pub x: Cx<T>,
    pub y: Cx<T>,
}

/// The variables that stay constant on the collision manifold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fiber<T> {
    pub h: [T; 2],
    pub gamma: [Cx<T>; 2],
    pub x: Cx<T>,
    pub y: Cx<T>,
}

/// Generalised Levi-Civita state `(zeta_1, zeta_2, h_1, h_2, Gamma_1, Gamma_2, x, y)`.
///
/// `U_j` is cached and refreshed whenever `zeta_j` or `h_j` change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlcState<T> {
    zeta: [Cx<T>; 2],
    fiber: Fiber<T>,
    big_u: [T; 2],
}

/// Number of reals in the flat layout of a [`GlcState`].
pub const GLC_DIM: usize = 14;

impl<T: Scalar> Fiber<T> {
    pub fn to_array(&self) -> [T; 10] {
        let f = self;
        [
            f.h[0], f.h[1], f.gamma[0].re, f.gamma[0].im, f.gamma[1].re, f.gamma[1].im, f.x.re,
            f.x.im, f.y.re, f.y.im,
        ]
    }

    pub fn from_slice(v: &[T]) -> Self {
        Fiber {
            h: [v[0], v[1]],
            gamma: [Cx::new(v[2], v[3]), Cx::new(v[4], v[5])],
            x: Cx::new(v[6], v[7]),
            y: Cx::new(v[8], v[9]),
        }
    }

    /// Rescales both phases back onto the unit circle.
    pub fn normalise_phases(&mut self) {
        for g in &mut self.gamma {
            let n = g.norm_sqr().sqrt();
            if n > T::zero() {
                *g = *g / n;
            }
        }
    }
}

impl<T: Scalar> GlcState<T> {
    pub fn new(zeta: [Cx<T>; 2], fiber: Fiber<T>) -> Result<Self> {
        let big_u = [solve_u(zeta[0], fiber.h[0])?, solve_u(zeta[1], fiber.h[1])?];
        Ok(GlcState { zeta, fiber, big_u })
    }

    /// Flat layout `[I1, L1, I2, L2, h1, h2, Re G1, Im G1, Re G2, Im G2, Re x, Im x, Re y, Im y]`.
    pub fn from_slice(v: &[T]) -> Result<Self> {
        Self::new([Cx::new(v[0], v[1]), Cx::new(v[2], v[3])], Fiber::from_slice(&v[4..14]))
    }

    pub fn to_array(&self) -> [T; GLC_DIM] {
        let mut out = [T::zero(); GLC_DIM];
        out[0] = self.zeta[0].re;
        out[1] = self.zeta[0].im;
        out[2] = self.zeta[1].re;
        out[3] = self.zeta[1].im;
        out[4..].copy_from_slice(&self.fiber.to_array());
        out
    }

    pub fn zeta(&self) -> [Cx<T>; 2] {
        self.zeta
    }

    pub fn fiber(&self) -> &Fiber<T> {
        &self.fiber
    }

    pub fn h(&self) -> [T; 2] {
        self.fiber.h
    }

    pub fn gamma(&self) -> [Cx<T>; 2] {
        self.fiber.gamma
    }

    pub fn x(&self) -> Cx<T> {
        self.fiber.x
    }

    pub fn y(&self) -> Cx<T> {
        self.fiber.y
    }

    /// Cached `U_j = |u_j|`.
    pub fn big_u(&self) -> [T; 2] {
        self.big_u
    }

    /// `(I_1, L_1, I_2, L_2)`.
    pub fn homogeneous(&self) -> [T; 4] {
        [self.zeta[0].re, self.zeta[0].im, self.zeta[1].re, self.zeta[1].im]
    }

    pub fn set_zeta(&mut self, j: usize, zeta: Cx<T>) -> Result<()> {
        self.big_u[j] = solve_u(zeta, self.fiber.h[j])?;
        self.zeta[j] = zeta;
        Ok(())
    }

    pub fn set_h(&mut self, j: usize, h: T) -> Result<()> {
        self.big_u[j] = solve_u(self.zeta[j], h)?;
        self.fiber.h[j] = h;
        Ok(())
    }

    pub fn set_gamma(&mut self, j: usize, gamma: Cx<T>) {
        self.fiber.gamma[j] = gamma;
    }

    pub fn set_xy(&mut self, x: Cx<T>, y: Cx<T>) {
        self.fiber.x = x;
        self.fiber.y = y;
    }

    /// Binary separations `Q_j = q_scale_j (Gamma_j zeta_j / U_j)^2`, regular at collision.
    pub fn separations(&self, p: &MassParams<T>) -> [Cx<T>; 2] {
        [0, 1].map(|j| {
            let z = self.fiber.gamma[j] * self.zeta[j] / self.big_u[j];
            z * z * p.q_scale[j]
        })
    }
}

/// The positive root `U` of `U^2 (U^2 - 1) = h |zeta|^2` with `U(0, h) = 1`.
///
/// Fails when `1 + 4 h |zeta|^2 <= 0`, where the root leaves the branch `U > 1/sqrt 2`.
pub fn solve_u<T: Scalar>(zeta: Cx<T>, h: T) -> Result<T> {
    let s = T::c(4.0) * h * zeta.norm_sqr();
    let disc = T::one() + s;
    if !(disc > T::zero()) {
        return Err(Error::OutsideNeighbourhood { disc: disc.f64() });
    }
    // U^2 = (1 + sqrt(1+s)) / 2 = 1 + s / (2 (1 + sqrt(1+s))), cancellation free near s = 0
    let u2 = T::one() + s / (T::c(2.0) * (T::one() + disc.sqrt()));
    Ok(u2.sqrt())
}

/// Principal complex square root without trigonometric functions.
pub fn csqrt<T: Scalar>(w: Cx<T>) -> Cx<T> {
    let r = w.norm_sqr().sqrt();
    if r.is_zero() {
        return Cx::new(T::zero(), T::zero());
    }
    let two = T::c(2.0);
    if w.re >= T::zero() {
        let t = ((r + w.re) / two).sqrt();
        Cx::new(t, w.im / (two * t))
    } else {
        let t = ((r - w.re) / two).sqrt();
        let s = if w.im < T::zero() { -t } else { t };
        Cx::new(w.im.abs() / (two * t), s)
    }
}

fn four_km<T: Scalar>(p: &MassParams<T>, j: usize) -> T {
    T::c(4.0) * p.k[j] * p.reduced[j]
}

/// Cartesian to Levi-Civita. The square-root branch is principal unless a
/// previous state is supplied, in which case the root nearer to it is taken.
pub fn cartesian_to_lc<T: Scalar>(
    s: &CartesianState<T>,
    p: &MassParams<T>,
    prev: Option<&LcState<T>>,
) -> Result<LcState<T>> {
    let mut z = [Cx::new(T::zero(), T::zero()); 2];
    let mut u = z;
    for j in 0..2 {
        if s.q[j].norm_sqr().is_zero() {
            return Err(Error::BranchUndefined(j + 1));
        }
        let c = four_km(p, j);
        let qt = s.q[j] * c;
        let mut zj = csqrt(qt * T::c(2.0));
        if let Some(prev) = prev {
            if (zj - prev.z[j]).norm_sqr() > (zj + prev.z[j]).norm_sqr() {
                zj = -zj;
            }
        }
        let pt = s.p[j] / c;
        z[j] = zj;
        u[j] = pt * zj.conj();
    }
    Ok(LcState { z, u, x: s.x, y: s.y })
}

pub fn lc_to_cartesian<T: Scalar>(s: &LcState<T>, p: &MassParams<T>) -> Result<CartesianState<T>> {
    let mut q = [Cx::new(T::zero(), T::zero()); 2];
    let mut mom = q;
    for j in 0..2 {
        if s.z[j].norm_sqr().is_zero() {
            return Err(Error::CollisionPoint(j + 1));
        }
        let c = four_km(p, j);
        q[j] = s.z[j] * s.z[j] / (T::c(2.0) * c);
        mom[j] = s.u[j] / s.z[j].conj() * c;
    }
    Ok(CartesianState { q, x: s.x, p: mom, y: s.y })
}

/// Levi-Civita to generalised variables. A binary at collision (`z_j = 0`)
/// needs its intrinsic energy supplied through `energy_at_collision`. States
/// with `|u_j|^2 <= 1/2` lie past the turning point and are rejected.
pub fn lc_to_glc<T: Scalar>(
    s: &LcState<T>,
    p: &MassParams<T>,
    energy_at_collision: Option<[T; 2]>,
) -> Result<GlcState<T>> {
    let mut zeta = [Cx::new(T::zero(), T::zero()); 2];
    let mut gamma = zeta;
    let mut h = [T::zero(); 2];
    for j in 0..2 {
        let un = s.u[j].norm_sqr().sqrt();
        if un.is_zero() {
            return Err(Error::PhaseUndefined(j + 1));
        }
        // U = |u| must sit on the branch U > 1/sqrt 2 that solve_u selects
        if !(un * un > T::c(0.5)) {
            return Err(Error::PastTurningPoint { binary: j + 1, u2: (un * un).f64() });
        }
        gamma[j] = s.u[j] / un;
        zeta[j] = s.u[j].conj() * s.z[j] / p.a_third[j];
        let zn = s.z[j].norm_sqr();
        h[j] = if zn.is_zero() {
            energy_at_collision.ok_or(Error::EnergyRequired(j + 1))?[j]
        } else {
            p.a_third[j] * p.a_third[j] * (un * un - T::one()) / zn
        };
    }
    GlcState::new(zeta, Fiber { h, gamma, x: s.x, y: s.y })
}

pub fn glc_to_lc<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> LcState<T> {
    let big_u = s.big_u();
    let g = s.gamma();
    let zeta = s.zeta();
    let z = [0, 1].map(|j| g[j] * zeta[j] * p.a_third[j] / big_u[j]);
    let u = [0, 1].map(|j| g[j] * big_u[j]);
    LcState { z, u, x: s.x(), y: s.y() }
}

pub fn glc_to_cartesian<T: Scalar>(s: &GlcState<T>, p: &MassParams<T>) -> Result<CartesianState<T>> {
    for j in 0..2 {
        if s.zeta()[j].norm_sqr().is_zero() {
            return Err(Error::CollisionPoint(j + 1));
        }
    }
    lc_to_cartesian(&glc_to_lc(s, p), p)
}

pub fn cartesian_to_glc<T: Scalar>(s: &CartesianState<T>, p: &MassParams<T>) -> Result<GlcState<T>> {
    lc_to_glc(&cartesian_to_lc(s, p, None)?, p, None)
}

/// `Q, x -> s Q, s x` and `P, y -> s^{-1/2} P, s^{-1/2} y`, which maps `H` to `H / s`.
pub fn scale_cartesian<T: Scalar>(c: &CartesianState<T>, s: T) -> CartesianState<T> {
    let r = s.sqrt().recip();
    CartesianState {
        q: c.q.map(|q| q * s),
        x: c.x * s,
        p: c.p.map(|v| v * r),
        y: c.y * r,
    }
}

/// The same scaling in generalised variables: `zeta -> s^{1/2} zeta`, `h -> h / s`.
pub fn scale_glc<T: Scalar>(g: &GlcState<T>, s: T) -> Result<GlcState<T>> {
    let rs = s.sqrt();
    let f = g.fiber();
    GlcState::new(
        g.zeta().map(|z| z * rs),
        Fiber { h: f.h.map(|h| h / s), gamma: f.gamma, x: f.x * s, y: f.y / rs },
    )
}
