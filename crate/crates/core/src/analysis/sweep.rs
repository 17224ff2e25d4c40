use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coords::GlcState;
use crate::dynamics::Coupling;
use crate::error::{Error, Result};
use crate::flow::IntegratorConfig;
use crate::params::{derive_params_f64, MassParams};
use crate::scalar::Scalar;

use super::blockmap::{base_orbit, block_map, dulac_decompose, entry_point, BlockPassage, FiberAnchor, SectionGeometry};
use super::fit::{apply_stencil, fit_exponent, fit_polynomial, geometric_stencil, stencil_gain, ExponentFit, PolyFit};
use super::normal_form::{h_integral, kappa_full, kappa_lead};
use super::rotated::rotate;

/// The exponent the h-channel is expected to show.
pub const H_EXPONENT: f64 = 8.0 / 3.0;

/// How a sweep turns exits into signals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSettings {
    /// Points of the geometric stencil applied to the h-channel; it removes
    /// the integer powers `1, eps, ..., eps^{points-2}`. Six points also
    /// remove the `eps^4` term, which dominates the correction to `eps^{8/3}`
    /// at the top of the usual window.
    pub stencil_points: usize,
    /// Tolerance factor of the re-run that estimates integration error.
    pub refine: f64,
    /// Rows whose error estimate exceeds this fraction of the signal are unusable.
    pub usable_fraction: f64,
    /// A direction whose fitted amplitude is below this multiple of the
    /// noise floor is an exceptional candidate.
    pub exceptional_factor: f64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings { stencil_points: 6, refine: 0.5, usable_fraction: 0.1, exceptional_factor: 10.0 }
    }
}

/// Everything needed to run the block map along one direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockExperiment {
    pub masses: [f64; 4],
    pub anchor: FiberAnchor,
    /// `(beta_0, gamma_0, delta_0)` in the unit box.
    pub direction: [f64; 3],
    /// Strictly decreasing.
    pub eps_grid: Vec<f64>,
    #[serde(default)]
    pub geometry: SectionGeometry,
    #[serde(default)]
    pub integrator: IntegratorConfig,
    #[serde(default)]
    pub sweep: SweepSettings,
    #[serde(default)]
    pub coupling: Coupling,
}

impl BlockExperiment {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.masses.iter().any(|m| !(*m > 0.0)) {
            return bad("masses must be positive".into());
        }
        if self.direction.iter().any(|d| !(d.abs() <= 1.0)) || self.direction.iter().all(|d| *d == 0.0) {
            return bad("direction must be nonzero and inside the unit box".into());
        }
        if self.eps_grid.is_empty() || self.eps_grid.iter().any(|e| !(*e > 0.0)) {
            return bad("eps_grid must hold positive values".into());
        }
        if self.eps_grid.windows(2).any(|w| w[1] >= w[0]) {
            return bad("eps_grid must be strictly decreasing".into());
        }
        if self.sweep.stencil_points < 2 {
            return bad("sweep.stencil_points must be at least 2".into());
        }
        if !(self.sweep.refine > 0.0 && self.sweep.refine < 1.0) {
            return bad("sweep.refine must lie in (0, 1)".into());
        }
        self.geometry.validate()?;
        self.integrator.validate()
    }

    /// Common ratio of the grid when it is geometric to 1e-9.
    pub fn grid_ratio(&self) -> Option<f64> {
        let g = &self.eps_grid;
        if g.len() < 2 {
            return None;
        }
        let q = g[1] / g[0];
        g.windows(2).all(|w| ((w[1] / w[0]) / q - 1.0).abs() < 1e-9).then_some(q)
    }
}

/// `n` log-spaced values from `hi` down to `lo`.
pub fn geometric_grid(hi: f64, lo: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![hi];
    }
    let q = (lo / hi).powf(1.0 / (n - 1) as f64);
    (0..n).map(|k| hi * q.powi(k as i32)).collect()
}

/// One row of an epsilon sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub eps: f64,
    /// Failure of either run; the other columns are NaN then.
    pub error: Option<String>,
    /// `(beta_3, gamma_3, delta_3)` on `Sigma_3`.
    pub exit_ratios: [f64; 3],
    pub exit_h: [f64; 2],
    /// `|h_fine - h_coarse|` from the refined re-run.
    pub exit_h_err: [f64; 2],
    /// Stencil signal of the window starting at this row, when one fits.
    pub h_signal: [f64; 2],
    pub h_signal_err: [f64; 2],
    pub usable: bool,
    pub r1: f64,
    pub ratios1: [f64; 3],
    pub entry_face: usize,
    pub r2: f64,
    pub exit_face: usize,
    /// Largest fiber change across the transit between the `Sigma_int` crossings.
    pub t_deviation: f64,
    pub t_deviation_h: [f64; 2],
    pub kappa_lead_drift: f64,
    pub kappa_full_drift: f64,
    pub h_integral_drift: f64,
    pub max_imag: f64,
    pub sign_flips: usize,
    pub log_complete: bool,
    pub steps: usize,
}

impl SweepRow {
    fn failed(k: usize, eps: f64, msg: String) -> Self {
        let nan = f64::NAN;
        SweepRow {
            k,
            eps,
            error: Some(msg),
            exit_ratios: [nan; 3],
            exit_h: [nan; 2],
            exit_h_err: [nan; 2],
            h_signal: [nan; 2],
            h_signal_err: [nan; 2],
            usable: false,
            r1: nan,
            ratios1: [nan; 3],
            entry_face: 0,
            r2: nan,
            exit_face: 0,
            t_deviation: nan,
            t_deviation_h: [nan; 2],
            kappa_lead_drift: nan,
            kappa_full_drift: nan,
            h_integral_drift: nan,
            max_imag: nan,
            sign_flips: 0,
            log_complete: false,
            steps: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub precision: String,
    pub rows: Vec<SweepRow>,
    /// `q` of the geometric grid, if the stencil could be applied.
    pub grid_ratio: Option<f64>,
}

fn row_from<T: Scalar>(
    k: usize,
    eps: f64,
    coarse: &BlockPassage<T>,
    fine: &BlockPassage<T>,
    p: &MassParams<T>,
) -> SweepRow {
    let exit = rotate(&fine.exit);
    let hf = fine.exit.h();
    let hc = coarse.exit.h();
    let mut row = SweepRow::failed(k, eps, String::new());
    row.error = None;
    row.exit_ratios = exit.ratios().map(Scalar::f64);
    row.exit_h = hf.map(Scalar::f64);
    row.exit_h_err = [0, 1].map(|j| (hf[j] - hc[j]).abs().f64());
    match dulac_decompose(fine) {
        Ok(d) => {
            row.r1 = d.d1.r1;
            row.ratios1 = d.d1.ratios;
            row.entry_face = d.d1.face;
            row.r2 = d.t.r2;
            row.exit_face = d.t.face;
            row.t_deviation = d.t.du_max;
            row.t_deviation_h = [d.t.du[0], d.t.du[1]];
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row.kappa_lead_drift = (kappa_lead(&fine.exit.homogeneous()) - kappa_lead(&fine.entry.homogeneous())).f64();
    row.kappa_full_drift = (kappa_full(&fine.exit) - kappa_full(&fine.entry)).f64();
    row.h_integral_drift = (h_integral(&fine.exit, p) - h_integral(&fine.entry, p)).f64();
    row.max_imag = fine.max_imag.f64();
    row.sign_flips = fine.sign_flips();
    row.log_complete = fine.log_complete();
    row.steps = fine.steps;
    row
}

/// Runs the block map for every `eps` of the experiment, twice per row (at
/// the configured tolerance and at `refine` times it), in parallel. Rows are
/// returned in grid order whatever the scheduling.
pub fn epsilon_sweep<T: Scalar>(exp: &BlockExperiment) -> Result<SweepTable> {
    exp.validate()?;
    let p: MassParams<T> = derive_params_f64(exp.masses)?;
    let cfg = exp.integrator;
    let fine_cfg = IntegratorConfig {
        rtol: cfg.rtol * exp.sweep.refine,
        atol: cfg.atol * exp.sweep.refine,
        event_tol: cfg.event_tol * exp.sweep.refine,
        ..cfg
    };
    let base = base_orbit(&exp.anchor, &p, &exp.geometry, exp.coupling, &fine_cfg)?;
    let run = |eps: f64, c: &IntegratorConfig| -> Result<(GlcState<T>, BlockPassage<T>)> {
        let e = entry_point(&base, exp.direction, T::c(eps))?;
        let bp = block_map(&e, &p, &exp.geometry, exp.coupling, c)?;
        Ok((e, bp))
    };
    let mut out: Vec<(SweepRow, Option<[T; 2]>, [T; 2])> = exp
        .eps_grid
        .par_iter()
        .enumerate()
        .map(|(k, &eps)| match (run(eps, &cfg), run(eps, &fine_cfg)) {
            (Ok((_, c)), Ok((_, f))) => {
                let hc = c.exit.h();
                let hf = f.exit.h();
                (row_from(k, eps, &c, &f, &p), Some(hf), [hf[0] - hc[0], hf[1] - hc[1]])
            }
            (Err(e), _) | (_, Err(e)) => (SweepRow::failed(k, eps, e.to_string()), None, [T::zero(); 2]),
        })
        .collect();
    out.sort_by_key(|r| r.0.k);
    let grid_ratio = exp.grid_ratio();
    if let Some(q) = grid_ratio {
        let st = geometric_stencil(T::c(q), exp.sweep.stencil_points);
        let m = st.len();
        for start in 0..out.len().saturating_sub(m - 1) {
            let window = &out[start..start + m];
            if window.iter().any(|r| r.1.is_none()) {
                continue;
            }
            let mut sig = [0.0; 2];
            let mut sig_err = [0.0; 2];
            for j in 0..2 {
                let vals: Vec<T> = window.iter().map(|r| r.1.expect("checked")[j]).collect();
                let s = apply_stencil(&vals, &st)[0];
                let err: T = st.iter().zip(window).map(|(c, r)| c.abs() * r.2[j].abs()).sum();
                sig[j] = s.f64();
                sig_err[j] = err.f64();
            }
            let r = &mut out[start].0;
            r.h_signal = sig;
            r.h_signal_err = sig_err;
            r.usable = r.error.is_none()
                && (0..2).all(|j| r.h_signal_err[j] <= exp.sweep.usable_fraction * r.h_signal[j].abs());
        }
    }
    Ok(SweepTable { precision: T::NAME.to_string(), rows: out.into_iter().map(|r| r.0).collect(), grid_ratio })
}

/// A named fit that may have failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelFit {
    pub channel: String,
    pub fit: Option<ExponentFit>,
    pub note: Option<String>,
}

impl ChannelFit {
    fn from(channel: &str, r: Result<ExponentFit>) -> Self {
        match r {
            Ok(f) => ChannelFit { channel: channel.into(), fit: Some(f), note: None },
            Err(e) => ChannelFit { channel: channel.into(), fit: None, note: Some(e.to_string()) },
        }
    }

    pub fn slope(&self) -> Option<f64> {
        self.fit.as_ref().map(|f| f.slope)
    }
}

/// Fits of every channel of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    /// Stencil signals of `h_1` and `h_2` against `eps`.
    pub h: [ChannelFit; 2],
    /// First differences of the exit ratios against `eps`.
    pub position: [ChannelFit; 3],
    /// Quadratic fits `c_0 + c_1 eps + c_2 eps^2` of the exit ratios.
    pub quadratic: Vec<Option<PolyFit>>,
    /// `r_1` and the two non-face ratios at the entry crossing against `eps`.
    pub d1: Vec<ChannelFit>,
    /// Slopes of the transverse D1 ratios predicted by the two readings of the
    /// directional Dulac lemma (`y_0` and `y_1` forms).
    pub d1_predicted: [f64; 2],
    /// Largest fiber change across the transit against `r_1`.
    pub t_deviation: ChannelFit,
    /// Amplitude `F` of the `eps^{8/3}` term of `h_1` and its noise floor.
    pub amplitude: f64,
    pub noise_floor: f64,
    pub exceptional: bool,
    pub usable_rows: usize,
    pub max_imag: f64,
    pub all_logs_complete: bool,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.retain(|x| x.is_finite());
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

/// Fits every channel of a completed table.
pub fn summarize_sweep(table: &SweepTable, settings: &SweepSettings) -> SweepSummary {
    let rows = &table.rows;
    let ok: Vec<&SweepRow> = rows.iter().filter(|r| r.error.is_none()).collect();
    let eps: Vec<f64> = rows.iter().map(|r| r.eps).collect();
    let usable: Vec<bool> = rows.iter().map(|r| r.usable).collect();
    let h = [0, 1].map(|j| {
        let sig: Vec<f64> = rows.iter().map(|r| r.h_signal[j]).collect();
        ChannelFit::from(&format!("h{}", j + 1), fit_exponent(&eps, &sig, &usable))
    });
    let names = ["beta3", "gamma3", "delta3"];
    let position = [0, 1, 2].map(|c| {
        let mut x = Vec::new();
        let mut s = Vec::new();
        for w in ok.windows(2) {
            if w[1].k == w[0].k + 1 {
                x.push(w[0].eps);
                s.push(w[0].exit_ratios[c] - w[1].exit_ratios[c]);
            }
        }
        ChannelFit::from(names[c], fit_exponent(&x, &s, &vec![true; x.len()]))
    });
    let quadratic = (0..3)
        .map(|c| {
            let x: Vec<f64> = ok.iter().map(|r| r.eps).collect();
            let y: Vec<f64> = ok.iter().map(|r| r.exit_ratios[c]).collect();
            fit_polynomial(&x, &y, 2).ok()
        })
        .collect();
    let complete: Vec<&&SweepRow> = ok.iter().filter(|r| r.log_complete).collect();
    let face = complete.first().map_or(1, |r| r.entry_face);
    let mut d1 = Vec::new();
    let ce: Vec<f64> = complete.iter().map(|r| r.eps).collect();
    let all = vec![true; ce.len()];
    d1.push(ChannelFit::from("r1", fit_exponent(&ce, &complete.iter().map(|r| r.r1).collect::<Vec<_>>(), &all)));
    for (c, name) in ["beta1", "gamma1", "delta1"].iter().enumerate() {
        if c != face {
            let v: Vec<f64> = complete.iter().map(|r| r.ratios1[c]).collect();
            d1.push(ChannelFit::from(name, fit_exponent(&ce, &v, &all)));
        }
    }
    let r1: Vec<f64> = complete.iter().map(|r| r.r1).collect();
    let tdev: Vec<f64> = complete.iter().map(|r| r.t_deviation).collect();
    let t_deviation = ChannelFit::from("t_deviation", fit_exponent(&r1, &tdev, &all));
    let (amplitude, noise_floor) = match table.grid_ratio {
        Some(q) => {
            let gain = stencil_gain(q, settings.stencil_points, H_EXPONENT);
            let norm = |r: &SweepRow, v: f64| v / (r.eps.powf(H_EXPONENT) * gain);
            let with_signal: Vec<&SweepRow> = rows.iter().filter(|r| r.h_signal[0].is_finite()).collect();
            (
                median(with_signal.iter().map(|r| norm(r, r.h_signal[0])).collect()),
                median(with_signal.iter().map(|r| norm(r, r.h_signal_err[0]).abs()).collect()),
            )
        }
        None => (f64::NAN, f64::NAN),
    };
    SweepSummary {
        h,
        position,
        quadratic,
        d1,
        d1_predicted: [2.0 / 3.0, 1.0],
        t_deviation,
        amplitude,
        noise_floor,
        exceptional: !(amplitude.abs() >= settings.exceptional_factor * noise_floor),
        usable_rows: rows.iter().filter(|r| r.usable).count(),
        max_imag: ok.iter().map(|r| r.max_imag).fold(0.0, f64::max),
        all_logs_complete: !ok.is_empty() && ok.len() == rows.len() && ok.iter().all(|r| r.log_complete),
    }
}
