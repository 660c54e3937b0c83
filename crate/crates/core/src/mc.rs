//! Monte Carlo harness: MSE sweeps over block sizes, coverage studies,
//! and variance-estimator quality ratios.
//!
//! Replications are embarrassingly parallel. Each one draws its seed as
//! mix64(master_seed, r), results are collected in replication order and
//! merged sequentially, so a report is a pure function of its config: any
//! worker count, any schedule, same bytes.

use serde::{Deserialize, Serialize};

use crate::blocks::BlockMode;
use crate::error::{Error, Result};
use crate::estimate::EstimatorVariant;
use crate::inference::{bias_corrected, confidence_interval, variance_from_counts};
use crate::models::{simulate, theta_true_with_se, ModelKind, ModelSpec};
use crate::pseudo::{pseudo_from_counts, pseudo_lbo_from_counts, CdfTag, PseudoKind};
use crate::rng::mix64;
use crate::series::rank_counts;

/// Configuration of one Monte Carlo experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub model: ModelKind,
    pub n: usize,
    pub blocks: Vec<usize>,
    pub reps: usize,
    pub master_seed: u64,
    pub estimators: Vec<EstimatorVariant>,
    pub bias_correct: bool,
    pub level: f64,
}

impl SweepConfig {
    /// Paper-style defaults: n = 8192, b in {4, 8, ..., 512}, all four
    /// full-cdf estimators, bias correction on, 95% intervals.
    pub fn new(model: ModelKind, reps: usize, master_seed: u64) -> Self {
        Self {
            model,
            n: 8192,
            blocks: (2..=9).map(|e| 1usize << e).collect(),
            reps,
            master_seed,
            estimators: vec![
                EstimatorVariant::B_DJ,
                EstimatorVariant::B_SL,
                EstimatorVariant::N_DJ,
                EstimatorVariant::N_SL,
            ],
            bias_correct: true,
            level: 0.95,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps < 2 {
            return Err(Error::InvalidParameter("need at least 2 replications".into()));
        }
        if self.blocks.is_empty() || self.estimators.is_empty() {
            return Err(Error::InvalidParameter("blocks and estimators must be nonempty".into()));
        }
        for &b in &self.blocks {
            if b < 2 || b > self.n / 2 {
                return Err(Error::BadBlockLength { b, n: self.n, min: 2, max: self.n / 2 });
            }
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::InvalidParameter(format!("level {} outside (0,1)", self.level)));
        }
        if self.estimators.iter().any(|e| e.cdf == CdfTag::Oracle)
            && self.model.marginal_cdf().is_none()
        {
            return Err(Error::InvalidParameter(format!(
                "oracle estimators need a model with known marginal cdf, not {}",
                self.model
            )));
        }
        Ok(())
    }
}

/// Aggregates for one (estimator, block size) pair.
///
/// `mean`, `variance`, `mse`, `bias2` and `coverage` describe the reported
/// point value (constrained to [0,1], bias-corrected when configured);
/// `mean_raw`/`var_raw` describe the unconstrained uncorrected estimate,
/// which is what CLT-scale diagnostics need, since clamping halves the
/// upper tail once theta is near 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub estimator: String,
    pub b: usize,
    pub k: usize,
    pub reps: usize,
    pub mean: f64,
    pub mse: f64,
    pub bias2: f64,
    pub variance: f64,
    /// MC standard error of the mse entry.
    pub mse_se: f64,
    pub mean_raw: f64,
    pub var_raw: f64,
    pub min_mse: bool,
    pub coverage: Option<f64>,
    pub mean_tau2: Option<f64>,
    /// mean(tau2) / Var(sqrt(k) theta_raw) - 1, banks A/B.
    pub ratio_bias: Option<f64>,
    /// E[(tau2 / Var(sqrt(k) theta_raw) - 1)^2].
    pub ratio_mse: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub model: ModelKind,
    pub theta: f64,
    /// MC standard error of theta itself (Clayton only).
    pub theta_se: Option<f64>,
    pub n: usize,
    pub reps: usize,
    pub master_seed: u64,
    pub bias_correct: bool,
    pub level: f64,
    pub failures: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)
                .map_err(|e| Error::InvalidParameter(format!("csv serialization: {e}")))?;
        }
        let bytes =
            w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv flush: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn row(&self, estimator: &str, b: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.estimator == estimator && r.b == b)
    }

    /// Argmin-MSE block size per estimator: (name, b, mse).
    pub fn argmin_mse(&self) -> Vec<(String, usize, f64)> {
        self.rows
            .iter()
            .filter(|r| r.min_mse)
            .map(|r| (r.estimator.clone(), r.b, r.mse))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct CellValue {
    point: f64,
    raw: f64,
    tau2: Option<f64>,
    covered: Option<bool>,
}

#[derive(Debug, Clone, Default)]
struct Acc {
    n: u64,
    mean_point: f64,
    m2_point: f64,
    mean_sq_err: f64,
    m2_sq_err: f64,
    mean_raw: f64,
    m2_raw: f64,
    tau2_n: u64,
    mean_tau2: f64,
    m2_tau2: f64,
    cover_n: u64,
    cover_hits: u64,
}

fn welford(n: u64, mean: &mut f64, m2: &mut f64, x: f64) {
    let delta = x - *mean;
    *mean += delta / n as f64;
    *m2 += delta * (x - *mean);
}

impl Acc {
    fn push(&mut self, c: &CellValue, theta: f64) {
        self.n += 1;
        welford(self.n, &mut self.mean_point, &mut self.m2_point, c.point);
        let err = c.point - theta;
        welford(self.n, &mut self.mean_sq_err, &mut self.m2_sq_err, err * err);
        welford(self.n, &mut self.mean_raw, &mut self.m2_raw, c.raw);
        if let Some(t) = c.tau2 {
            self.tau2_n += 1;
            welford(self.tau2_n, &mut self.mean_tau2, &mut self.m2_tau2, t);
        }
        if let Some(cov) = c.covered {
            self.cover_n += 1;
            self.cover_hits += u64::from(cov);
        }
    }
}

/// Evaluates every (estimator, b) cell on one simulated path.
fn eval_rep(config: &SweepConfig, theta: f64, seed: u64) -> Result<Vec<CellValue>> {
    let spec = ModelSpec::new(config.model, config.n, seed)?;
    let series = simulate(&spec)?;
    let n = config.n;
    let counts = rank_counts(series.values());
    let needs_variance = config.estimators.iter().any(|e| e.cdf != CdfTag::Oracle);
    let oracle_f: Option<Vec<f64>> = if config.estimators.iter().any(|e| e.cdf == CdfTag::Oracle)
    {
        let cdf = config
            .model
            .marginal_cdf()
            .ok_or_else(|| Error::InvalidParameter("model has no known marginal".into()))?;
        Some(series.values().iter().map(|&x| cdf(x)).collect())
    } else {
        None
    };

    let mut cells = Vec::with_capacity(config.estimators.len() * config.blocks.len());
    for &b in &config.blocks {
        let k = n / b;
        let var_rep = if needs_variance { Some(variance_from_counts(&counts, b)?) } else { None };
        for est in &config.estimators {
            let t_hat = match est.cdf {
                CdfTag::Full => mean(&pseudo_from_counts(&counts, b, est.mode, est.kind)),
                CdfTag::LeaveBlockOut => {
                    if est.mode != BlockMode::Disjoint {
                        return Err(Error::InvalidParameter(
                            "leave-block-out estimators require disjoint blocks".into(),
                        ));
                    }
                    mean(&pseudo_lbo_from_counts(&counts, b, est.kind))
                }
                CdfTag::Oracle => {
                    let f = oracle_f.as_ref().expect("oracle values prepared above");
                    mean(&oracle_pseudo(f, b, est.mode, est.kind))
                }
            };
            if t_hat <= 0.0 {
                return Err(Error::DegenerateSeries(format!(
                    "pseudo-observation mean vanished for {} at b={b}",
                    est.name()
                )));
            }
            let raw = 1.0 / t_hat;
            let cell = match (&var_rep, est.cdf) {
                (Some(v), cdf) if cdf != CdfTag::Oracle => {
                    let point = if config.bias_correct {
                        bias_corrected(raw, v.sigma2(est.mode), k)
                    } else {
                        raw
                    }
                    .clamp(0.0, 1.0);
                    let tau2 = v.tau2(est.mode);
                    let ci =
                        confidence_interval(point, v.tau2_floored(est.mode), k, config.level)?;
                    CellValue {
                        point,
                        raw,
                        tau2: Some(tau2),
                        covered: Some(ci.contains(theta)),
                    }
                }
                _ => CellValue { point: raw.clamp(0.0, 1.0), raw, tau2: None, covered: None },
            };
            cells.push(cell);
        }
    }
    Ok(cells)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn oracle_pseudo(f_values: &[f64], b: usize, mode: BlockMode, kind: PseudoKind) -> Vec<f64> {
    use crate::blocks::{disjoint_maxima, sliding_maxima};
    let bf = b as f64;
    let maxima = match mode {
        BlockMode::Disjoint => disjoint_maxima(f_values, b),
        BlockMode::Sliding => sliding_maxima(f_values, b),
    };
    maxima
        .into_iter()
        .map(|fm| match kind {
            PseudoKind::Z => bf * (1.0 - fm),
            PseudoKind::Y => -bf * fm.ln() + 0.0,
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn eval_bank(config: &SweepConfig, theta: f64, offset: u64) -> Vec<Result<Vec<CellValue>>> {
    use rayon::prelude::*;
    (0..config.reps as u64)
        .into_par_iter()
        .map(|r| eval_rep(config, theta, mix64(config.master_seed, offset + r)))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn eval_bank(config: &SweepConfig, theta: f64, offset: u64) -> Vec<Result<Vec<CellValue>>> {
    (0..config.reps as u64)
        .map(|r| eval_rep(config, theta, mix64(config.master_seed, offset + r)))
        .collect()
}

/// Sequential merge of one bank; deterministic because slot order is
/// replication order.
fn merge_bank(
    bank: Vec<Result<Vec<CellValue>>>,
    cells: usize,
    theta: f64,
) -> (Vec<Acc>, usize, Option<String>) {
    let mut accs = vec![Acc::default(); cells];
    let mut failures = 0;
    let mut first_error = None;
    for rep in bank {
        match rep {
            Ok(values) => {
                for (acc, value) in accs.iter_mut().zip(&values) {
                    acc.push(value, theta);
                }
            }
            Err(e) => {
                failures += 1;
                first_error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    (accs, failures, first_error)
}

fn check_failures(failures: usize, total_reps: usize, first: Option<String>) -> Result<()> {
    // tolerate strictly less than 0.1% failed replications
    if (failures as f64) < 0.001 * total_reps as f64 {
        return Ok(());
    }
    Err(Error::TooManyFailures {
        failures,
        reps: total_reps,
        first: first.unwrap_or_else(|| "unknown".into()),
    })
}

fn build_rows(
    config: &SweepConfig,
    accs: &[Acc],
    theta: f64,
    denom: Option<&[Acc]>,
) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(accs.len());
    let mut cell = 0;
    for &b in &config.blocks {
        let k = config.n / b;
        for est in &config.estimators {
            let a = &accs[cell];
            let nf = a.n as f64;
            let variance = if a.n > 0 { a.m2_point / nf } else { f64::NAN };
            let bias2 = (a.mean_point - theta) * (a.mean_point - theta);
            let (ratio_bias, ratio_mse) = match denom {
                Some(d) if a.tau2_n > 0 && d[cell].n > 1 => {
                    let v = k as f64 * d[cell].m2_raw / d[cell].n as f64;
                    let var_tau2 = a.m2_tau2 / a.tau2_n as f64;
                    let bias = a.mean_tau2 / v - 1.0;
                    let mse =
                        (var_tau2 + (a.mean_tau2 - v) * (a.mean_tau2 - v)) / (v * v);
                    (Some(bias), Some(mse))
                }
                _ => (None, None),
            };
            rows.push(SweepRow {
                estimator: est.name(),
                b,
                k,
                reps: a.n as usize,
                mean: a.mean_point,
                mse: a.mean_sq_err,
                bias2,
                variance,
                mse_se: if a.n > 0 { (a.m2_sq_err / nf).sqrt() / nf.sqrt() } else { f64::NAN },
                mean_raw: a.mean_raw,
                var_raw: if a.n > 0 { a.m2_raw / nf } else { f64::NAN },
                min_mse: false,
                coverage: (a.cover_n > 0).then(|| a.cover_hits as f64 / a.cover_n as f64),
                mean_tau2: (a.tau2_n > 0).then_some(a.mean_tau2),
                ratio_bias,
                ratio_mse,
            });
            cell += 1;
        }
    }
    for est in &config.estimators {
        let name = est.name();
        if let Some(best) = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.estimator == name)
            .min_by(|(_, x), (_, y)| x.mse.partial_cmp(&y.mse).unwrap())
            .map(|(i, _)| i)
        {
            rows[best].min_mse = true;
        }
    }
    rows
}

/// Runs the MSE sweep: every estimator at every block size, aggregated
/// against the model's true theta. Coverage and mean tau2 come along for
/// free since the per-replication work already includes the variance
/// estimator.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let (theta, theta_se) = theta_true_with_se(&config.model)?;
    let cells = config.blocks.len() * config.estimators.len();
    let bank = eval_bank(config, theta, 0);
    let (accs, failures, first) = merge_bank(bank, cells, theta);
    check_failures(failures, config.reps, first)?;
    let rows = build_rows(config, &accs, theta, None);
    Ok(SweepReport {
        model: config.model,
        theta,
        theta_se,
        n: config.n,
        reps: config.reps,
        master_seed: config.master_seed,
        bias_correct: config.bias_correct,
        level: config.level,
        failures,
        rows,
    })
}

/// Coverage study; identical work to [`run_sweep`] with the guarantee that
/// interval-capable estimators are present.
pub fn run_coverage(config: &SweepConfig) -> Result<SweepReport> {
    if config.estimators.iter().all(|e| e.cdf == CdfTag::Oracle) {
        return Err(Error::InvalidParameter(
            "coverage needs at least one non-oracle estimator".into(),
        ));
    }
    run_sweep(config)
}

/// Variance-ratio study with two independent replication banks: bank A
/// (streams 0..reps) provides tau2 draws, bank B (streams reps..2 reps)
/// provides the Var(sqrt(k) theta_raw) denominator.
pub fn run_variance_ratio(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let (theta, theta_se) = theta_true_with_se(&config.model)?;
    let cells = config.blocks.len() * config.estimators.len();
    let bank_a = eval_bank(config, theta, 0);
    let (accs_a, fail_a, first_a) = merge_bank(bank_a, cells, theta);
    let bank_b = eval_bank(config, theta, config.reps as u64);
    let (accs_b, fail_b, first_b) = merge_bank(bank_b, cells, theta);
    check_failures(fail_a + fail_b, 2 * config.reps, first_a.or(first_b))?;
    let rows = build_rows(config, &accs_a, theta, Some(&accs_b));
    Ok(SweepReport {
        model: config.model,
        theta,
        theta_se,
        n: config.n,
        reps: config.reps,
        master_seed: config.master_seed,
        bias_correct: config.bias_correct,
        level: config.level,
        failures: fail_a + fail_b,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn smoke_config() -> SweepConfig {
        let mut c = SweepConfig::new(ModelKind::Armax { alpha: 0.5 }, 8, 42);
        c.n = 512;
        c.blocks = vec![8, 16];
        c
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let mut c = smoke_config();
        c.reps = 1;
        assert!(c.validate().is_err());
        let mut c = smoke_config();
        c.blocks = vec![300];
        assert!(c.validate().is_err());
        let mut c = smoke_config();
        c.level = 1.0;
        assert!(c.validate().is_err());
        let mut c = smoke_config();
        c.model = ModelKind::SqArch { lambda: 0.5 };
        c.estimators = vec![EstimatorVariant { cdf: CdfTag::Oracle, ..EstimatorVariant::B_DJ }];
        assert!(c.validate().is_err());
    }

    #[test]
    fn sweep_rows_are_complete_and_consistent() {
        let report = run_sweep(&smoke_config()).unwrap();
        assert_eq!(report.theta, 0.5);
        assert_eq!(report.rows.len(), 8);
        for row in &report.rows {
            assert!(row.mse.is_finite());
            // accumulator identity
            assert!((row.mse - (row.bias2 + row.variance)).abs() <= 1e-10 * row.mse.max(1e-30));
            let cov = row.coverage.unwrap();
            assert!((0.0..=1.0).contains(&cov));
            assert!(row.mean_tau2.is_some());
            assert_eq!(row.reps, 8);
        }
        assert_eq!(report.argmin_mse().len(), 4);
    }

    #[test]
    fn reports_are_bitwise_reproducible() {
        let a = run_sweep(&smoke_config()).unwrap().to_json_string();
        let b = run_sweep(&smoke_config()).unwrap().to_json_string();
        assert_eq!(a, b);
        let mut other = smoke_config();
        other.master_seed = 43;
        assert_ne!(run_sweep(&other).unwrap().to_json_string(), a);
    }

    #[test]
    fn ratio_smoke_run_reports_finite_values() {
        let mut c = smoke_config();
        c.reps = 2;
        let report = run_variance_ratio(&c).unwrap();
        for row in &report.rows {
            assert!(row.ratio_bias.unwrap().is_finite());
            assert!(row.ratio_mse.unwrap().is_finite());
        }
    }

    #[test]
    fn oracle_estimators_run_without_variance_rows() {
        let mut c = smoke_config();
        c.estimators = vec![
            EstimatorVariant::B_DJ,
            EstimatorVariant { cdf: CdfTag::Oracle, ..EstimatorVariant::B_DJ },
        ];
        let report = run_sweep(&c).unwrap();
        let oracle = report.row("b-dj-oracle", 8).unwrap();
        assert!(oracle.coverage.is_none() && oracle.mean_tau2.is_none());
        assert!(oracle.var_raw.is_finite());
        let plain = report.row("b-dj", 8).unwrap();
        assert!(plain.coverage.is_some());
    }

    #[test]
    fn csv_has_one_line_per_row_plus_header() {
        let report = run_sweep(&smoke_config()).unwrap();
        let csv = report.to_csv_string().unwrap();
        assert_eq!(csv.lines().count(), 1 + report.rows.len());
        assert!(csv.lines().next().unwrap().starts_with("estimator,b,k,reps,"));
    }
}
