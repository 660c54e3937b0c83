//! Variance estimation, bias correction, confidence intervals.
//!
//! The asymptotic variance sigma2_dj of the disjoint-blocks B estimator is
//! estimated from the empirical analogues of the influence terms:
//!
//! ```text
//! B_j  = Z_j + sum_{s in block j} k^{-1} sum_i 1(U_s > N_i)  -  2 T
//! sigma2_dj = k^{-1} sum_j B_j^2
//! ```
//!
//! where U_s is the empirical cdf at observation s, N_i the empirical cdf
//! at the i-th disjoint block maximum, and T the mean of the Z
//! pseudo-observations. The sliding-blocks variance follows from the shift
//! identity sigma2_sl = sigma2_dj - (3 - 4 log 2) / theta^2, which has no
//! direct empirical analogue of its own. tau^2 = theta^4 sigma^2 rescales
//! to the variance of theta_hat itself; the unconstrained estimates are
//! used throughout so the plug-ins stay smooth across theta near 1.

use crate::blocks::{disjoint_maxima, sliding_maxima, BlockMode};
use crate::error::{Error, Result};
use crate::estimate::check_block_length;
use crate::math::normal_quantile;
use crate::series::Series;

/// 3 - 4 log 2, the gap between the disjoint and sliding asymptotic
/// variances of sqrt(k) (theta_hat / theta - 1).
pub const SLIDING_SHIFT: f64 = 3.0 - 4.0 * std::f64::consts::LN_2;

#[derive(Debug, Clone)]
pub struct VarianceReport {
    pub n: usize,
    pub b: usize,
    pub k: usize,
    /// Unconstrained B/disjoint estimate used in the plug-ins.
    pub theta_dj_raw: f64,
    /// Unconstrained B/sliding estimate used in the shift.
    pub theta_sl_raw: f64,
    pub sigma2_dj: f64,
    /// Shifted estimate; may be negative in small samples.
    pub sigma2_sl: f64,
    /// tau2 = theta^4 sigma2 for the disjoint scheme.
    pub tau2_dj: f64,
    /// Sliding analogue, negative whenever sigma2_sl is.
    pub tau2_sl: f64,
    /// Per-block influence terms B_j; mean square equals sigma2_dj.
    pub b_hat: Vec<f64>,
}

impl VarianceReport {
    pub fn sigma2(&self, mode: BlockMode) -> f64 {
        match mode {
            BlockMode::Disjoint => self.sigma2_dj,
            BlockMode::Sliding => self.sigma2_sl,
        }
    }

    pub fn tau2(&self, mode: BlockMode) -> f64 {
        match mode {
            BlockMode::Disjoint => self.tau2_dj,
            BlockMode::Sliding => self.tau2_sl,
        }
    }

    /// tau2 floored at zero, the variant safe for CI construction.
    pub fn tau2_floored(&self, mode: BlockMode) -> f64 {
        self.tau2(mode).max(0.0)
    }
}

pub(crate) fn variance_from_counts(counts: &[u32], b: usize) -> Result<VarianceReport> {
    let n = counts.len();
    let k = n / b;
    let nf = n as f64;
    let bf = b as f64;
    let kf = k as f64;

    let dj_counts = disjoint_maxima(counts, b);
    let z: Vec<f64> = dj_counts.iter().map(|&c| bf * (nf - c as f64) / nf).collect();
    let t_dj = z.iter().sum::<f64>() / kf;
    if t_dj <= 0.0 {
        return Err(Error::DegenerateSeries(
            "all disjoint block maxima tie the sample maximum".into(),
        ));
    }

    let sl_counts = sliding_maxima(counts, b);
    let t_sl =
        sl_counts.iter().map(|&c| bf * (nf - c as f64) / nf).sum::<f64>() / sl_counts.len() as f64;
    if t_sl <= 0.0 {
        return Err(Error::DegenerateSeries(
            "all sliding block maxima tie the sample maximum".into(),
        ));
    }

    let mut sorted = dj_counts;
    sorted.sort_unstable();
    let mut b_hat = Vec::with_capacity(k);
    for (j, &zj) in z.iter().enumerate() {
        let mut below = 0usize;
        for &c in &counts[j * b..(j + 1) * b] {
            below += sorted.partition_point(|&m| m < c);
        }
        b_hat.push(zj + below as f64 / kf - 2.0 * t_dj);
    }
    let sigma2_dj = b_hat.iter().map(|x| x * x).sum::<f64>() / kf;

    let theta_dj_raw = 1.0 / t_dj;
    let theta_sl_raw = 1.0 / t_sl;
    let sigma2_sl = sigma2_dj - SLIDING_SHIFT * t_sl * t_sl;

    Ok(VarianceReport {
        n,
        b,
        k,
        theta_dj_raw,
        theta_sl_raw,
        sigma2_dj,
        sigma2_sl,
        tau2_dj: theta_dj_raw.powi(4) * sigma2_dj,
        tau2_sl: theta_sl_raw.powi(4) * sigma2_sl,
        b_hat,
    })
}

/// Estimates the asymptotic variances of sqrt(k) (theta_hat / theta - 1)
/// for both block placements, together with the tau^2 rescalings.
pub fn variance_estimate(series: &Series, b: usize) -> Result<VarianceReport> {
    check_block_length(b, series.len())?;
    variance_from_counts(&series.rank_counts(), b)
}

/// First-order bias correction: removes the Jensen term theta/k and the
/// plug-in term theta^3 sigma2 / k.
pub fn bias_corrected(theta: f64, sigma2: f64, k: usize) -> f64 {
    let kf = k as f64;
    theta - theta / kf - theta.powi(3) * sigma2 / kf
}

/// Bias correction for the leave-block-out variant, whose deflated cdf
/// already absorbs the Jensen term; only the plug-in term remains.
pub fn bias_corrected_lbo(theta: f64, sigma2: f64, k: usize) -> f64 {
    theta - theta.powi(3) * sigma2 / k as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceInterval {
    pub level: f64,
    pub lo: f64,
    pub hi: f64,
    /// True once the interval has been intersected with [0, 1].
    pub clipped: bool,
}

impl ConfidenceInterval {
    pub fn clip_to_unit(self) -> Self {
        Self {
            level: self.level,
            lo: self.lo.clamp(0.0, 1.0),
            hi: self.hi.clamp(0.0, 1.0),
            clipped: true,
        }
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.lo <= theta && theta <= self.hi
    }
}

/// Normal-approximation interval theta +- z_{(1+level)/2} sqrt(tau2 / k).
pub fn confidence_interval(
    theta: f64,
    tau2: f64,
    k: usize,
    level: f64,
) -> Result<ConfidenceInterval> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidParameter(format!("confidence level {level} outside (0,1)")));
    }
    if tau2.is_nan() || tau2 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tau2 = {tau2} is negative; floor it before building an interval"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let half = normal_quantile(0.5 * (1.0 + level)) * (tau2 / k as f64).sqrt();
    Ok(ConfidenceInterval { level, lo: theta - half, hi: theta + half, clipped: false })
}
