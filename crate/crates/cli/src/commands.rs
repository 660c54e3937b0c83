//! Command logic, kept free of terminal and filesystem concerns so the
//! pieces are unit-testable; `main` does the plumbing.

use eix_core::{
    bias_corrected, bias_corrected_lbo, confidence_interval, estimate, run_coverage, run_sweep,
    run_variance_ratio, simulate, variance_estimate, CdfTag, EstimatorVariant, ModelSpec, Series,
    SweepConfig, SweepReport,
};
use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Serialize)]
pub struct EstimateOutput {
    pub theta: f64,
    pub theta_bc: f64,
    pub theta_raw: f64,
    pub sigma2_dj: f64,
    pub sigma2_sl: f64,
    pub tau2: f64,
    pub ci: [f64; 2],
    pub k: usize,
    pub b: usize,
    pub n: usize,
    pub warnings: Vec<String>,
}

/// Point estimate, bias correction, variance and interval in one pass.
///
/// The interval centers on `theta_bc` (or on the constrained raw estimate
/// under `bias_correct = false`), uses the block-mode-matched tau2, and is
/// intersected with [0, 1]; truncation is reported as a warning.
pub fn estimate_output(
    series: &Series,
    b: usize,
    variant: EstimatorVariant,
    level: f64,
    bias_correct: bool,
) -> Result<EstimateOutput> {
    let report = estimate(series, b, variant)?;
    let var = variance_estimate(series, b)?;
    let mut warnings = report.warnings.clone();

    let sigma2 = var.sigma2(variant.mode);
    let bc = if variant.cdf == CdfTag::LeaveBlockOut {
        bias_corrected_lbo(report.theta_raw, sigma2, report.k)
    } else {
        bias_corrected(report.theta_raw, sigma2, report.k)
    };
    let theta_bc = bc.clamp(0.0, 1.0);

    let center = if bias_correct { theta_bc } else { report.theta };
    let tau2 = var.tau2_floored(variant.mode);
    let ci = confidence_interval(center, tau2, report.k, level)?;
    if ci.lo < 0.0 || ci.hi > 1.0 {
        warnings.push("confidence interval truncated to [0, 1]".into());
    }
    let ci = ci.clip_to_unit();

    Ok(EstimateOutput {
        theta: report.theta,
        theta_bc,
        theta_raw: report.theta_raw,
        sigma2_dj: var.sigma2_dj,
        sigma2_sl: var.sigma2_sl,
        tau2,
        ci: [ci.lo, ci.hi],
        k: report.k,
        b,
        n: series.len(),
        warnings,
    })
}

/// One CSV row per valid block length in `lo..=hi`. Returns the CSV text,
/// the number of skipped block lengths, and any estimation warnings (the
/// same for every row, so reported once).
pub fn sweep_csv(
    series: &Series,
    lo: usize,
    hi: usize,
    variant: EstimatorVariant,
    level: f64,
) -> Result<(String, usize, Vec<String>)> {
    let max_b = series.len() / 2;
    let mut csv = String::from("b,theta_bc,ci_lo,ci_hi,theta_raw\n");
    let mut skipped = 0usize;
    let mut warnings = Vec::new();
    for b in lo..=hi {
        if b < 2 || b > max_b {
            skipped += 1;
            continue;
        }
        let out = estimate_output(series, b, variant, level, true)?;
        if warnings.is_empty() {
            warnings = out.warnings;
        }
        csv.push_str(&format!(
            "{b},{},{},{},{}\n",
            out.theta_bc, out.ci[0], out.ci[1], out.theta_raw
        ));
    }
    Ok((csv, skipped, warnings))
}

/// One value per line; `{}` on f64 prints the shortest digit string that
/// parses back to the same bits, so files round-trip exactly.
pub fn simulate_lines(spec: &ModelSpec) -> Result<String> {
    let series = simulate(spec)?;
    let mut out = String::new();
    for v in series.values() {
        out.push_str(&format!("{v}\n"));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyKind {
    Sweep,
    Coverage,
    Ratio,
}

pub fn mc_run(study: StudyKind, config: &SweepConfig) -> Result<SweepReport> {
    let report = match study {
        StudyKind::Sweep => run_sweep(config)?,
        StudyKind::Coverage => run_coverage(config)?,
        StudyKind::Ratio => run_variance_ratio(config)?,
    };
    Ok(report)
}

pub fn argmin_lines(report: &SweepReport) -> String {
    let mut out = String::new();
    for (estimator, b, mse) in report.argmin_mse() {
        out.push_str(&format!("argmin-mse {estimator}: b={b} mse*1e3={:.4}\n", mse * 1e3));
    }
    out
}
