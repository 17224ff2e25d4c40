//! Mass-derived constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The four masses and every constant derived from them.
///
/// Binary one is bodies 1 and 2, binary two is bodies 3 and 4. Indices into
/// the two-element arrays are the binary index minus one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassParams<T> {
    pub m: [T; 4],
    /// Reduced masses `M_j`.
    pub reduced: [T; 2],
    /// Gravitational coefficients `k_j = m m'`.
    pub k: [T; 2],
    pub mu: T,
    pub d: [T; 4],
    pub c: [T; 4],
    /// `a_j = 16 k_j^2 M_j`.
    pub a: [T; 2],
    pub b0: T,
    /// Quadratic, cubic and quartic series coefficients per binary.
    pub b2: [T; 2],
    pub b3: [T; 2],
    pub b4: [T; 2],
    pub bc: T,
    /// Cached `a_j^{1/3}`.
    pub a_third: [T; 2],
    /// `Q_j = q_scale_j z_j^2` with `z_j = Gamma_j zeta_j / U_j`.
    pub q_scale: [T; 2],
}

/// Per-field outcome of [`validate_params`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamReport {
    pub max_rel_deviation: f64,
    pub worst_field: Option<String>,
    pub flagged: Vec<String>,
}

impl<T: Scalar> MassParams<T> {
    /// Named list of every derived field, in a fixed order.
    pub fn fields(&self) -> Vec<(&'static str, T)> {
        vec![
            ("M1", self.reduced[0]),
            ("M2", self.reduced[1]),
            ("k1", self.k[0]),
            ("k2", self.k[1]),
            ("mu", self.mu),
            ("d1", self.d[0]),
            ("d2", self.d[1]),
            ("d3", self.d[2]),
            ("d4", self.d[3]),
            ("c1", self.c[0]),
            ("c2", self.c[1]),
            ("c3", self.c[2]),
            ("c4", self.c[3]),
            ("a1", self.a[0]),
            ("a2", self.a[1]),
            ("b0", self.b0),
            ("b12", self.b2[0]),
            ("b22", self.b2[1]),
            ("b13", self.b3[0]),
            ("b23", self.b3[1]),
            ("b14", self.b4[0]),
            ("b24", self.b4[1]),
            ("bc", self.bc),
        ]
    }

    /// `a_j^{-1/3}`.
    pub fn a_inv_third(&self, j: usize) -> T {
        self.a_third[j].recip()
    }

    pub fn masses_f64(&self) -> [f64; 4] {
        self.m.map(Scalar::f64)
    }
}

/// Derives every constant from the four masses.
pub fn derive_params<T: Scalar>(m1: T, m2: T, m3: T, m4: T) -> Result<MassParams<T>> {
    for (index, m) in [m1, m2, m3, m4].into_iter().enumerate() {
        if !(m > T::zero()) || !m.is_finite() {
            return Err(Error::NonPositiveMass { index: index + 1, value: m.f64() });
        }
    }
    let s1 = m1 + m2;
    let s2 = m3 + m4;
    let reduced = [m1 * m2 / s1, m3 * m4 / s2];
    let k = [m1 * m2, m3 * m4];
    let mu = (s1 + s2) / (s1 * s2);
    let d = [m1 * m3, m1 * m4, m2 * m3, m2 * m4];
    let c = [reduced[0] / m2, reduced[0] / m1, reduced[1] / m4, reduced[1] / m3];
    let sixteen = T::c(16.0);
    let a = [sixteen * k[0] * k[0] * reduced[0], sixteen * k[1] * k[1] * reduced[1]];
    let b0 = s1 * s2;
    let pair = |p: T, q: T, s: T| {
        let pq = p * q;
        (
            b0 * pq / (T::c(8.0) * s * s),
            b0 * pq * (p - q) / (T::c(16.0) * s * s * s),
            b0 * pq * (p * p - pq + q * q) / (T::c(128.0) * s * s * s * s),
        )
    };
    let (b12, b13, b14) = pair(m1, m2, s1);
    // Binary 2 sits in the coupling with the opposite orientation to binary 1
    // (m3 at -c4 Q2), so its odd coefficient is taken as (m4 - m3).
    let (b22, b23, b24) = pair(m4, m3, s2);
    let bc = T::ratio(3, 64) * reduced[0] * reduced[1];
    let a_third = [a[0].cbrt(), a[1].cbrt()];
    let q_scale = [
        a_third[0] * a_third[0] / (T::c(8.0) * k[0] * reduced[0]),
        a_third[1] * a_third[1] / (T::c(8.0) * k[1] * reduced[1]),
    ];
    Ok(MassParams {
        m: [m1, m2, m3, m4],
        reduced,
        k,
        mu,
        d,
        c,
        a,
        b0,
        b2: [b12, b22],
        b3: [b13, b23],
        b4: [b14, b24],
        bc,
        a_third,
        q_scale,
    })
}

/// `f64` convenience wrapper around [`derive_params`].
pub fn derive_params_f64<T: Scalar>(m: [f64; 4]) -> Result<MassParams<T>> {
    derive_params(T::c(m[0]), T::c(m[1]), T::c(m[2]), T::c(m[3]))
}

/// Re-derives every field from the stored masses and reports the largest
/// relative deviation. Fields deviating by more than `1e-12` are flagged.
pub fn validate_params<T: Scalar>(p: &MassParams<T>) -> ParamReport {
    let fresh = match derive_params(p.m[0], p.m[1], p.m[2], p.m[3]) {
        Ok(f) => f,
        Err(e) => {
            return ParamReport {
                max_rel_deviation: f64::INFINITY,
                worst_field: Some(e.to_string()),
                flagged: vec!["masses".into()],
            }
        }
    };
    let mut report = ParamReport { max_rel_deviation: 0.0, worst_field: None, flagged: Vec::new() };
    for ((name, have), (_, want)) in p.fields().into_iter().zip(fresh.fields()) {
        let scale = want.abs().f64().max(f64::MIN_POSITIVE);
        let dev = (have - want).abs().f64() / scale;
        let dev = if want.is_zero() { (have - want).abs().f64() } else { dev };
        if dev > 1e-12 {
            report.flagged.push(name.to_string());
        }
        if dev > report.max_rel_deviation || (dev.is_nan() && !report.max_rel_deviation.is_nan()) {
            report.max_rel_deviation = dev;
            report.worst_field = Some(name.to_string());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;
    use num_traits::Float;

    #[test]
    fn equal_masses_constants() {
        let p = derive_params::<f64>(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.reduced, [0.5, 0.5]);
        assert_eq!(p.k, [1.0, 1.0]);
        assert_eq!(p.mu, 1.0);
        assert_eq!(p.a, [8.0, 8.0]);
        assert_eq!(p.b0, 4.0);
        assert_eq!(p.bc, 3.0 / 256.0);
        assert_eq!(p.b3, [0.0, 0.0]);
        assert!((p.q_scale[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unequal_masses_example() {
        let p = derive_params::<f64>(2.0, 1.0, 1.0, 2.0).unwrap();
        assert!((p.reduced[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p.reduced[1] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p.a[0] - 128.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_positive_mass() {
        assert_eq!(
            derive_params::<f64>(1.0, 0.0, 1.0, 1.0),
            Err(Error::NonPositiveMass { index: 2, value: 0.0 })
        );
        assert!(derive_params::<f64>(1.0, 1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn validation_flags_perturbed_field() {
        let p = derive_params::<f64>(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(validate_params(&p).max_rel_deviation, 0.0);
        let mut bad = p;
        bad.bc *= 1.0 + 1e-3;
        let r = validate_params(&bad);
        assert_eq!(r.worst_field.as_deref(), Some("bc"));
        assert_eq!(r.flagged, vec!["bc".to_string()]);
    }

    #[test]
    fn extended_precision_constants() {
        let p = derive_params_f64::<DoubleDouble>([2.0, 1.0, 1.0, 2.0]).unwrap();
        let err = p.a[0] - DoubleDouble::ratio(128, 3);
        assert!(err.abs().to_f64() < 1e-30);
        assert!((p.a_third[0].powi(3) - p.a[0]).abs().to_f64() < 1e-29);
    }
}
