use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Fewest usable rows a fit accepts.
pub const MIN_FIT_ROWS: usize = 4;

/// Least-squares power law `log|signal| = intercept + slope log eps`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub slope_stderr: f64,
    /// Root-mean-square residual in natural-log units.
    pub rms: f64,
    /// Smallest and largest abscissa actually used.
    pub window: [f64; 2],
    pub used: usize,
}

/// Fits a power law to the rows with `usable[i]` set and nonzero signal.
pub fn fit_exponent(x: &[f64], signal: &[f64], usable: &[bool]) -> Result<ExponentFit> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(signal)
        .zip(usable)
        .filter(|((xi, si), u)| **u && **xi > 0.0 && si.abs() > 0.0 && si.is_finite())
        .map(|((xi, si), _)| (xi.ln(), si.abs().ln()))
        .collect();
    if pts.len() < MIN_FIT_ROWS {
        return Err(Error::InsufficientData { usable: pts.len(), required: MIN_FIT_ROWS });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientData { usable: 1, required: MIN_FIT_ROWS });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let rms = (ss / n).sqrt();
    let slope_stderr = (ss / (n - 2.0) / sxx).sqrt();
    let lo = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min).exp();
    let hi = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max).exp();
    Ok(ExponentFit { slope, intercept, slope_stderr, rms, window: [lo, hi], used: pts.len() })
}

/// Polynomial least-squares fit with standard errors of the coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyFit {
    /// `c_0, c_1, ...` in powers of the raw abscissa.
    pub coeffs: Vec<f64>,
    pub stderr: Vec<f64>,
    pub rms: f64,
}

impl PolyFit {
    /// `|c_k| <= n_sigma * stderr_k`.
    pub fn consistent_with_zero(&self, k: usize, n_sigma: f64) -> bool {
        self.coeffs[k].abs() <= n_sigma * self.stderr[k]
    }
}

/// Fits `sum_k c_k x^k` for `k <= degree`. The abscissa is scaled by its
/// largest magnitude internally to keep the normal matrix well conditioned.
pub fn fit_polynomial(x: &[f64], y: &[f64], degree: usize) -> Result<PolyFit> {
    let n = x.len();
    let m = degree + 1;
    if n <= m {
        return Err(Error::InsufficientData { usable: n, required: m + 1 });
    }
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return Err(Error::InsufficientData { usable: 0, required: m + 1 });
    }
    let a = DMatrix::from_fn(n, m, |i, k| (x[i] / scale).powi(k as i32));
    let b = DVector::from_column_slice(y);
    let ata = a.transpose() * &a;
    let inv = ata.try_inverse().ok_or(Error::InsufficientData { usable: n, required: m + 1 })?;
    let c = &inv * a.transpose() * &b;
    let r = &b - &a * &c;
    let ss = r.norm_squared();
    let var = ss / (n - m) as f64;
    let coeffs = (0..m).map(|k| c[k] / scale.powi(k as i32)).collect();
    let stderr = (0..m).map(|k| (var * inv[(k, k)]).sqrt() / scale.powi(k as i32)).collect();
    Ok(PolyFit { coeffs, stderr, rms: (ss / n as f64).sqrt() })
}

/// Coefficients of the finite-difference stencil on the geometric grid
/// `eps, q eps, q^2 eps, ...` that annihilates `1, eps, ..., eps^{points-2}`:
/// the coefficients of `prod_{j < points-1} (E - q^j)` with `E` the shift.
pub fn geometric_stencil<T: Scalar>(q: T, points: usize) -> Vec<T> {
    let mut c = vec![T::one()];
    for j in 0..points.saturating_sub(1) {
        let root = q.powi(j as i32);
        let mut next = vec![T::zero(); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] = next[i + 1] + *v;
            next[i] = next[i] - root * *v;
        }
        c = next;
    }
    c
}

/// Gain of the stencil on `eps^p`: `prod_j (q^p - q^j)`.
pub fn stencil_gain(q: f64, points: usize, p: f64) -> f64 {
    (0..points.saturating_sub(1)).map(|j| q.powf(p) - q.powi(j as i32)).product()
}

/// Applies the stencil to every window of `values`; entry `k` uses
/// `values[k..k + points]`.
pub fn apply_stencil<T: Scalar>(values: &[T], stencil: &[T]) -> Vec<T> {
    if values.len() < stencil.len() {
        return Vec::new();
    }
    (0..=values.len() - stencil.len())
        .map(|k| stencil.iter().zip(&values[k..]).map(|(c, v)| *c * *v).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_square() {
        let x: Vec<f64> = (0..9).map(|k| 1e-2 * 10f64.powf(-0.25 * k as f64)).collect();
        let y: Vec<f64> = x.iter().map(|v| v * v).collect();
        let f = fit_exponent(&x, &y, &[true; 9]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-6 && f.rms < 1e-9);
    }

    #[test]
    fn too_few_rows() {
        let r = fit_exponent(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], &[true; 3]);
        assert_eq!(r, Err(Error::InsufficientData { usable: 3, required: 4 }));
    }

    #[test]
    fn stencil_kills_low_powers() {
        let q = 0.5f64;
        let st = geometric_stencil(q, 5);
        for p in 0..4 {
            let v: Vec<f64> = (0..5).map(|k| (0.1 * q.powi(k)).powi(p)).collect();
            let s = apply_stencil(&v, &st)[0];
            assert!(s.abs() < 1e-15, "power {p}: {s}");
        }
        let v: Vec<f64> = (0..5).map(|k| (0.1 * q.powi(k)).powf(8.0 / 3.0)).collect();
        let gain = stencil_gain(q, 5, 8.0 / 3.0);
        assert!((apply_stencil(&v, &st)[0] / 0.1f64.powf(8.0 / 3.0) - gain).abs() < 1e-13);
    }

    #[test]
    fn polynomial_recovers_coefficients() {
        let x: Vec<f64> = (1..12).map(|k| k as f64 * 1e-3).collect();
        let y: Vec<f64> = x.iter().map(|v| 0.5 - 2.0 * v + 3.0 * v * v).collect();
        let f = fit_polynomial(&x, &y, 2).unwrap();
        assert!((f.coeffs[2] - 3.0).abs() < 1e-6, "{:?}", f.coeffs);
    }
}
