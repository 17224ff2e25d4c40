//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64` values
//! carrying roughly 106 bits of significand.
//!
//! Arithmetic is built on the error-free transformations TwoSum and an
//! FMA-based TwoProd. Transcendental functions are evaluated with argument
//! reduction plus Taylor series, or with one Newton correction of the `f64`
//! result, and are accurate to a few units of `2^-104` on moderate arguments.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

/// An extended-precision real number stored as `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    (s, (a - (s - v)) + (b - v))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const LN2: DoubleDouble = DoubleDouble::from_parts(6.931_471_805_599_453e-1, 2.319_046_813_846_299_6e-17);
const PI: DoubleDouble = DoubleDouble::from_parts(3.141_592_653_589_793, 1.224_646_799_147_353_2e-16);
const FRAC_PI_2: DoubleDouble = DoubleDouble::from_parts(1.570_796_326_794_896_6, 6.123_233_995_736_766e-17);

impl DoubleDouble {
    /// Builds a value from an already normalised pair.
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    /// Builds a value from an arbitrary pair, renormalising it.
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact quotient `p / q` of two integers, rounded once to double-double.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_i64_exact(p) / Self::from_i64_exact(q)
    }

    fn from_i64_exact(n: i64) -> Self {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        Self::from_sum(hi, lo)
    }

    #[inline]
    fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Self { hi, lo }
    }

    #[inline]
    fn sqr(self) -> Self {
        let (p1, p2) = two_prod(self.hi, self.hi);
        let (hi, lo) = quick_two_sum(p1, p2 + 2.0 * self.hi * self.lo);
        Self { hi, lo }
    }

    fn ldexp(self, e: i32) -> Self {
        let f = 2f64.powi(e);
        Self { hi: self.hi * f, lo: self.lo * f }
    }

    fn is_neg(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    /// Taylor series of `exp(r) - 1` for `|r|` well below one.
    fn expm1_series(r: Self) -> Self {
        let mut term = r;
        let mut sum = r;
        let mut k = 2.0;
        loop {
            term = term * r / Self::from_f64(k);
            sum += term;
            if term.hi.abs() <= 1e-34 * sum.hi.abs().max(1e-300) {
                break;
            }
            k += 1.0;
        }
        sum
    }

    /// Sine and cosine of `r` with `|r| <= pi/4` by Taylor series.
    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r.sqr();
        let mut s = r;
        let mut term = r;
        let mut k = 1.0;
        loop {
            term = -(term * r2) / Self::from_f64((k + 1.0) * (k + 2.0));
            s += term;
            k += 2.0;
            if term.hi.abs() <= 1e-34 * s.hi.abs().max(1e-300) {
                break;
            }
        }
        let mut c = Self::one();
        let mut term = Self::one();
        let mut k = 0.0;
        loop {
            term = -(term * r2) / Self::from_f64((k + 1.0) * (k + 2.0));
            c += term;
            k += 2.0;
            if term.hi.abs() <= 1e-34 {
                break;
            }
        }
        (s, c)
    }

    fn sin_cos_dd(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (Self::nan(), Self::nan());
        }
        let k = (self.hi / FRAC_PI_2.hi).round();
        let r = self - FRAC_PI_2.mul_f64(k);
        let (s, c) = Self::sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn exp_dd(self) -> Self {
        if self.hi > 709.0 {
            return Self::infinity();
        }
        if self.hi < -745.0 {
            return Self::zero();
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).ldexp(-10);
        let mut e = Self::expm1_series(r);
        // (1 + e)^2 - 1 = e (2 + e), applied ten times to undo the scaling
        for _ in 0..10 {
            e = e * (e + Self::from_f64(2.0));
        }
        (e + Self::one()).ldexp(k as i32)
    }

    fn ln_dd(self) -> Self {
        if self.is_neg() {
            return Self::nan();
        }
        if self.hi == 0.0 {
            return Self::neg_infinity();
        }
        let y = Self::from_f64(self.hi.ln());
        // one Newton step on exp(y) = x
        y + self * (-y).exp_dd() - Self::one()
    }

    fn atan2_dd(y: Self, x: Self) -> Self {
        if x.hi == 0.0 && y.hi == 0.0 {
            return Self::zero();
        }
        let mut t = Self::from_f64(y.hi.atan2(x.hi));
        for _ in 0..2 {
            let (s, c) = t.sin_cos_dd();
            let num = y * c - x * s;
            let den = x * c + y * s;
            t += num / den;
        }
        t
    }

    fn parse_decimal(src: &str) -> Option<Self> {
        let s = src.trim();
        let (neg, body) = match s.as_bytes().first()? {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let mut value = Self::zero();
        let mut scale = exp;
        let mut seen_dot = false;
        let mut digits = 0;
        for ch in mant.chars() {
            match ch {
                '.' if !seen_dot => seen_dot = true,
                '0'..='9' => {
                    value = value.mul_f64(10.0) + Self::from_f64((ch as u8 - b'0') as f64);
                    digits += 1;
                    if seen_dot {
                        scale -= 1;
                    }
                }
                _ => return None,
            }
        }
        if digits == 0 {
            return None;
        }
        let ten = Self::from_f64(10.0);
        value = if scale >= 0 { value * ten.powi(scale) } else { value / ten.powi(-scale) };
        Some(if neg { -value } else { value })
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    /// Scientific notation with 32 significant digits unless a precision is given.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hi.is_finite() {
            return write!(f, "{}", self.hi);
        }
        if self.hi == 0.0 {
            return write!(f, "0");
        }
        let digits = f.precision().map_or(32, |p| p + 1).clamp(1, 34);
        let mut x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        let ten = Self::from_f64(10.0);
        x = if e >= 0 { x / ten.powi(e) } else { x * ten.powi(-e) };
        if x.hi >= 10.0 {
            x = x / ten;
            e += 1;
        } else if x.hi < 1.0 {
            x = x * ten;
            e -= 1;
        }
        let mut out = Vec::with_capacity(digits);
        for _ in 0..digits {
            let d = x.hi.floor().clamp(0.0, 9.0);
            out.push(d as u8);
            x = (x - Self::from_f64(d)).mul_f64(10.0);
        }
        // round half up on the next digit, then propagate carries
        if x.hi >= 5.0 {
            let mut i = out.len();
            loop {
                if i == 0 {
                    out.insert(0, 1);
                    out.pop();
                    e += 1;
                    break;
                }
                i -= 1;
                if out[i] == 9 {
                    out[i] = 0;
                } else {
                    out[i] += 1;
                    break;
                }
            }
        }
        let sign = if self.is_neg() { "-" } else { "" };
        let mut s = String::with_capacity(digits + 8);
        s.push_str(sign);
        s.push((b'0' + out[0]) as char);
        if out.len() > 1 {
            s.push('.');
            s.extend(out[1..].iter().map(|d| (b'0' + d) as char));
        }
        write!(f, "{s}e{e}")
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    #[inline]
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for DoubleDouble {
            #[inline]
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl Product for DoubleDouble {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = ParseDoubleDoubleError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(ParseDoubleDoubleError);
        }
        Self::parse_decimal(s).ok_or(ParseDoubleDoubleError)
    }
}

impl std::str::FromStr for DoubleDouble {
    type Err = ParseDoubleDoubleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_str_radix(s, 10)
    }
}

/// Returned when a string is not a decimal floating-point literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid double-double literal")]
pub struct ParseDoubleDoubleError;

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        (t.hi as i64).checked_add(t.lo as i64)
    }
    fn to_u64(&self) -> Option<u64> {
        self.to_i64().and_then(|v| u64::try_from(v).ok())
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::from_i64_exact(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = n.wrapping_sub(hi as u64) as i64 as f64;
        Some(Self::from_sum(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self::from_f64(x))
    }
}

impl NumCast for DoubleDouble {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(Self::from_f64)
    }
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        Self::from_f64(f64::NAN)
    }
    fn infinity() -> Self {
        Self::from_f64(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Self::from_f64(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Self::from_f64(-0.0)
    }
    fn min_value() -> Self {
        Self::from_f64(f64::MIN)
    }
    fn min_positive_value() -> Self {
        Self::from_f64(f64::MIN_POSITIVE)
    }
    fn epsilon() -> Self {
        Self::from_f64(2f64.powi(-104))
    }
    fn max_value() -> Self {
        Self::from_f64(f64::MAX)
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan() || self.lo.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            Self::from_sum(hi, self.lo.floor())
        } else {
            Self::from_f64(hi)
        }
    }
    fn ceil(self) -> Self {
        let hi = self.hi.ceil();
        if hi == self.hi {
            Self::from_sum(hi, self.lo.ceil())
        } else {
            Self::from_f64(hi)
        }
    }
    fn round(self) -> Self {
        let f = self.floor();
        let d = self - f;
        if d.hi > 0.5 || (d.hi == 0.5 && !self.is_neg()) {
            f + Self::one()
        } else {
            f
        }
    }
    fn trunc(self) -> Self {
        if self.is_neg() {
            self.ceil()
        } else {
            self.floor()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.is_neg() {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        if self.is_nan() {
            Self::nan()
        } else if self.is_neg() {
            -Self::one()
        } else {
            Self::one()
        }
    }
    fn is_sign_positive(self) -> bool {
        !self.is_neg()
    }
    fn is_sign_negative(self) -> bool {
        self.is_neg()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }
    fn powf(self, n: Self) -> Self {
        if self.is_zero() {
            return if n.is_zero() { Self::one() } else { Self::zero() };
        }
        (n * self.ln_dd()).exp_dd()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::zero() } else { Self::nan() };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let r = (self - Self::from_f64(ax).sqr()).hi * (x * 0.5);
        Self::from_sum(ax, r)
    }
    fn exp(self) -> Self {
        self.exp_dd()
    }
    fn exp2(self) -> Self {
        (self * LN2).exp_dd()
    }
    fn ln(self) -> Self {
        self.ln_dd()
    }
    fn log(self, base: Self) -> Self {
        self.ln_dd() / base.ln_dd()
    }
    fn log2(self) -> Self {
        self.ln_dd() / LN2
    }
    fn log10(self) -> Self {
        self.ln_dd() / Self::from_f64(10.0).ln_dd()
    }
    fn max(self, other: Self) -> Self {
        if self >= other || other.is_nan() {
            self
        } else {
            other
        }
    }
    fn min(self, other: Self) -> Self {
        if self <= other || other.is_nan() {
            self
        } else {
            other
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Self::zero()
        }
    }
    fn cbrt(self) -> Self {
        if self.hi == 0.0 {
            return self;
        }
        let y = Self::from_f64(self.hi.cbrt());
        y - (y * y * y - self) / (y * y).mul_f64(3.0)
    }
    fn hypot(self, other: Self) -> Self {
        let a = self.abs();
        let b = other.abs();
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return big;
        }
        let t = small / big;
        big * (Self::one() + t * t).sqrt()
    }
    fn sin(self) -> Self {
        self.sin_cos_dd().0
    }
    fn cos(self) -> Self {
        self.sin_cos_dd().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos_dd();
        s / c
    }
    fn asin(self) -> Self {
        Self::atan2_dd(self, (Self::one() - self * self).sqrt())
    }
    fn acos(self) -> Self {
        Self::atan2_dd((Self::one() - self * self).sqrt(), self)
    }
    fn atan(self) -> Self {
        Self::atan2_dd(self, Self::one())
    }
    fn atan2(self, other: Self) -> Self {
        Self::atan2_dd(self, other)
    }
    fn sin_cos(self) -> (Self, Self) {
        self.sin_cos_dd()
    }
    fn exp_m1(self) -> Self {
        if self.hi.abs() < 0.5 {
            let r = self.ldexp(-10);
            let mut e = Self::expm1_series(r);
            for _ in 0..10 {
                e = e * (e + Self::from_f64(2.0));
            }
            e
        } else {
            self.exp_dd() - Self::one()
        }
    }
    fn ln_1p(self) -> Self {
        if self.hi.abs() < 0.5 {
            let y = Self::from_f64(self.hi.ln_1p());
            // Newton on exp(y) - 1 = x
            let em1 = y.exp_m1();
            y + (self - em1) / (em1 + Self::one())
        } else {
            (Self::one() + self).ln_dd()
        }
    }
    fn sinh(self) -> Self {
        let e = self.exp_m1();
        let ep = e + Self::one();
        (e * (ep + Self::one()) / ep).mul_f64(0.5)
    }
    fn cosh(self) -> Self {
        let e = self.exp_dd();
        (e + e.recip()).mul_f64(0.5)
    }
    fn tanh(self) -> Self {
        let e = (self.mul_f64(2.0)).exp_m1();
        e / (e + Self::from_f64(2.0))
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let r = (a + (a * a + Self::one()).sqrt()).ln_dd();
        if self.is_neg() {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        (self + (self * self - Self::one()).sqrt()).ln_dd()
    }
    fn atanh(self) -> Self {
        (((Self::one() + self) / (Self::one() - self)).ln_dd()).mul_f64(0.5)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
    fn to_degrees(self) -> Self {
        self * Self::from_f64(180.0) / PI
    }
    fn to_radians(self) -> Self {
        self * PI / Self::from_f64(180.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(s: &str) -> DoubleDouble {
        s.parse().unwrap()
    }

    fn close(a: DoubleDouble, b: DoubleDouble, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol * b.abs().to_f64().max(1e-300)
    }

    #[test]
    fn third_times_three_is_one() {
        let third = DoubleDouble::ratio(1, 3);
        let err = (third * DoubleDouble::from_f64(3.0) - DoubleDouble::one()).abs();
        assert!(err.to_f64() < 1e-31);
    }

    #[test]
    fn sqrt_two_matches_reference_digits() {
        let s = DoubleDouble::from_f64(2.0).sqrt();
        assert!(close(s, dd("1.4142135623730950488016887242096980785696"), 4e-32));
    }

    #[test]
    fn cbrt_inverts_cube() {
        let x = dd("0.37");
        let c = x.cbrt();
        assert!(close(c * c * c, x, 4e-32));
    }

    #[test]
    fn exp_and_ln_reference_values() {
        let e = DoubleDouble::one().exp();
        assert!(close(e, dd("2.7182818284590452353602874713526624977572"), 4e-32));
        let l = DoubleDouble::from_f64(10.0).ln();
        assert!(close(l, dd("2.3025850929940456840179914546843642076011"), 4e-32));
    }

    #[test]
    fn trig_reference_values() {
        let (s, c) = DoubleDouble::one().sin_cos();
        assert!(close(s, dd("0.84147098480789650665250232163029899962256"), 1e-31));
        assert!(close(c, dd("0.54030230586813971740093660744297660373231"), 1e-31));
        let a = DoubleDouble::one().atan();
        assert!(close(a.mul_f64(4.0), PI, 1e-31));
    }

    #[test]
    fn display_round_trips() {
        let x = DoubleDouble::ratio(-2, 7);
        let back: DoubleDouble = x.to_string().parse().unwrap();
        assert!(close(back, x, 1e-31));
    }

    #[test]
    fn ordering_uses_low_word() {
        let a = DoubleDouble::from_sum(1.0, 1e-20);
        assert!(a > DoubleDouble::one());
        assert!(-a < -DoubleDouble::one());
    }
}
