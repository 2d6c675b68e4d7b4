//! Monte-Carlo comparison of the closed-form inverse against elimination,
//! and the sparse-pattern conformance suite.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::gfn::ReprKind;
use crate::inv::{self, Method};
use crate::mat::{fmt_f64, random_matrix, sparse_case, stream_seed, Complex64, Matrix};
use crate::oracle;

pub const BIN_WIDTH_DB: f64 = 2.0;
pub const CLAMP_FLOOR: f64 = 1e-100;
const MAX_REDRAWS: u64 = 64;

/// Mean squared entrywise deviation, normalized by `n²`.
pub fn mse(x: &Matrix, y: &Matrix) -> Result<f64> {
    oracle::same_size(x, y)?;
    let n = x.n() as f64;
    let total: f64 = x.data().iter().zip(y.data()).map(|(a, b)| (a - b).norm_sqr()).sum();
    Ok(total / (n * n))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialConfig {
    pub trials: usize,
    pub size: usize,
    pub seed: u64,
    pub method: Method,
    pub repr: ReprKind,
    pub complex: bool,
}

impl TrialConfig {
    /// Real 5×5 closed-form experiment.
    pub fn standard(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            size: 5,
            seed,
            method: Method::ClosedForm,
            repr: ReprKind::Direct,
            complex: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(domain("at least one trial is needed"));
        }
        if !(2..=8).contains(&self.size) {
            return Err(Error::Unsupported(format!("trial size {} outside 2..=8", self.size)));
        }
        if self.method == Method::ClosedForm && self.size > 5 {
            return Err(Error::Unsupported(format!("closed forms stop at side 5, not {}", self.size)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bin {
    pub lo_db: f64,
    pub hi_db: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramReport {
    pub trials: usize,
    pub bin_width_db: f64,
    pub bins: Vec<Bin>,
    pub min_db: f64,
    pub max_db: f64,
    pub median_db: f64,
    pub mode_db: f64,
    pub clamp_floor: f64,
    pub redraws: u64,
    /// Per-trial MSE in trial order, before clamping.
    pub mse: Vec<f64>,
}

fn to_db(mse: f64) -> f64 {
    10.0 * mse.max(CLAMP_FLOOR).log10()
}

impl HistogramReport {
    pub fn from_mse(mse: Vec<f64>, redraws: u64) -> Result<Self> {
        if mse.is_empty() {
            return Err(domain("no samples to bin"));
        }
        let mut db: Vec<f64> = mse.iter().map(|&m| to_db(m)).collect();
        db.sort_by(f64::total_cmp);
        let min_db = db[0];
        let max_db = db[db.len() - 1];
        let lo = min_db.floor();
        let hi = max_db.ceil();
        let nbins = (((hi - lo) / BIN_WIDTH_DB).ceil() as usize).max(1);
        let mut bins: Vec<Bin> = (0..nbins)
            .map(|k| Bin {
                lo_db: lo + BIN_WIDTH_DB * k as f64,
                hi_db: lo + BIN_WIDTH_DB * (k + 1) as f64,
                count: 0,
            })
            .collect();
        for &v in &db {
            let k = (((v - lo) / BIN_WIDTH_DB).floor() as usize).min(nbins - 1);
            bins[k].count += 1;
        }
        let mid = db.len() / 2;
        let median_db = if db.len() % 2 == 1 { db[mid] } else { 0.5 * (db[mid - 1] + db[mid]) };
        let top = bins.iter().map(|b| b.count).max().unwrap_or(0);
        let mode = bins.iter().find(|b| b.count == top).expect("at least one bin");
        Ok(Self {
            trials: mse.len(),
            bin_width_db: BIN_WIDTH_DB,
            min_db,
            max_db,
            median_db,
            mode_db: 0.5 * (mode.lo_db + mode.hi_db),
            clamp_floor: CLAMP_FLOOR,
            bins,
            redraws,
            mse,
        })
    }

    pub fn max_mse(&self) -> f64 {
        self.mse.iter().copied().fold(0.0, f64::max)
    }

    pub fn median_mse(&self) -> f64 {
        self.quantile_mse(0.5)
    }

    /// Nearest-rank quantile of the raw MSE values, `q ∈ (0, 1]`.
    pub fn quantile_mse(&self, q: f64) -> f64 {
        let mut v = self.mse.clone();
        v.sort_by(f64::total_cmp);
        let rank = ((q * v.len() as f64).ceil() as usize).clamp(1, v.len());
        v[rank - 1]
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("bin_lo_db,bin_hi_db,count\n");
        for b in &self.bins {
            s.push_str(&format!("{:.1},{:.1},{}\n", b.lo_db, b.hi_db, b.count));
        }
        s
    }

    pub fn summary_json(&self) -> String {
        format!(
            "{{\"trials\":{},\"min_db\":{},\"max_db\":{},\"median_db\":{},\"mode_db\":{},\"redraws\":{}}}",
            self.trials,
            fmt_f64(self.min_db),
            fmt_f64(self.max_db),
            fmt_f64(self.median_db),
            fmt_f64(self.mode_db),
            self.redraws
        )
    }
}

/// MSE of one trial and the number of singular draws it skipped.
fn run_one(cfg: &TrialConfig, trial: u64) -> Result<(f64, u64)> {
    let base = stream_seed(cfg.seed, trial);
    for attempt in 0..MAX_REDRAWS {
        let a = random_matrix(cfg.size, stream_seed(base, attempt), cfg.complex);
        let formula = match inv::inverse_by(&a, cfg.method, cfg.repr) {
            Ok(x) => x.matrix,
            Err(Error::Singular) => continue,
            Err(e) => return Err(e),
        };
        let reference = match oracle::gauss_inverse(&a) {
            Ok(x) => x,
            Err(Error::Singular) => continue,
            Err(e) => return Err(e),
        };
        return Ok((mse(&formula, &reference)?, attempt));
    }
    Err(Error::Singular)
}

/// Runs the experiment; the report is identical for any thread count.
pub fn run_trials(cfg: &TrialConfig) -> Result<HistogramReport> {
    cfg.validate()?;
    let per_trial: Vec<(f64, u64)> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| run_one(cfg, t))
        .collect::<Result<_>>()?;
    let redraws = per_trial.iter().map(|&(_, r)| r).sum();
    HistogramReport::from_mse(per_trial.into_iter().map(|(m, _)| m).collect(), redraws)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparseCheck {
    pub case: u8,
    #[serde(skip)]
    pub det: Complex64,
    #[serde(skip)]
    pub oracle_det: Complex64,
    pub det_error: f64,
    pub inverse_error: f64,
    pub pass: bool,
}

pub const SPARSE_TOL: f64 = 1e-12;

/// Closed-form determinant and inverse of each sparse pattern against the
/// Leibniz and cofactor oracles. Errors are relative to the oracle scale.
pub fn sparse_suite(values: &[Complex64; 5]) -> Result<Vec<SparseCheck>> {
    (1..=3u8)
        .map(|case| {
            let a = sparse_case(case, values)?;
            let det = inv::closed_form_det(&a, ReprKind::Direct)?;
            let oracle_det = oracle::leibniz_det(&a)?;
            let det_error = oracle::relative_error(det, oracle_det);
            let x = inv::closed_form_inverse(&a)?.matrix;
            let y = oracle::cofactor_inverse(&a)?;
            let scale = y.data().iter().map(|z| z.norm()).fold(1.0, f64::max);
            let inverse_error = x.max_abs_diff(&y) / scale;
            Ok(SparseCheck {
                case,
                det,
                oracle_det,
                det_error,
                inverse_error,
                pass: det_error <= SPARSE_TOL && inverse_error <= SPARSE_TOL,
            })
        })
        .collect()
}
