//! Point estimators of the extremal index.
//!
//! The B variant inverts the mean of the Z pseudo-observations, the N
//! variant the mean of the Y pseudo-observations. The raw value can exceed
//! 1; `theta` is the raw value constrained to (0, 1].

use serde::{Deserialize, Serialize};

use crate::blocks::{BlockMode, BlockScheme};
use crate::error::{Error, Result};
use crate::pseudo::{pseudo_sample, CdfMode, CdfTag, PseudoKind};
use crate::series::Series;

/// Estimator family: pseudo-observation kind, block placement, cdf mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EstimatorVariant {
    pub kind: PseudoKind,
    pub mode: BlockMode,
    pub cdf: CdfTag,
}

impl EstimatorVariant {
    pub const B_DJ: Self = Self::full(PseudoKind::Z, BlockMode::Disjoint);
    pub const B_SL: Self = Self::full(PseudoKind::Z, BlockMode::Sliding);
    pub const N_DJ: Self = Self::full(PseudoKind::Y, BlockMode::Disjoint);
    pub const N_SL: Self = Self::full(PseudoKind::Y, BlockMode::Sliding);

    pub const fn full(kind: PseudoKind, mode: BlockMode) -> Self {
        Self { kind, mode, cdf: CdfTag::Full }
    }

    /// Short name, e.g. "b-sl" or "b-dj-lbo"; used as the estimator key in
    /// reports and on the command line.
    pub fn name(&self) -> String {
        let kind = match self.kind {
            PseudoKind::Z => "b",
            PseudoKind::Y => "n",
        };
        let suffix = match self.cdf {
            CdfTag::Full => "",
            CdfTag::LeaveBlockOut => "-lbo",
            CdfTag::Oracle => "-oracle",
        };
        format!("{kind}-{}{suffix}", self.mode)
    }
}

impl std::fmt::Display for EstimatorVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

impl std::str::FromStr for EstimatorVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('-').collect();
        let bad = || Error::InvalidParameter(format!("unknown estimator variant '{s}'"));
        if parts.len() < 2 || parts.len() > 3 {
            return Err(bad());
        }
        let kind = match parts[0] {
            "b" => PseudoKind::Z,
            "n" => PseudoKind::Y,
            _ => return Err(bad()),
        };
        let mode = match parts[1] {
            "dj" => BlockMode::Disjoint,
            "sl" => BlockMode::Sliding,
            _ => return Err(bad()),
        };
        let cdf = match parts.get(2) {
            None => CdfTag::Full,
            Some(&"lbo") => CdfTag::LeaveBlockOut,
            Some(&"oracle") => CdfTag::Oracle,
            Some(_) => return Err(bad()),
        };
        Ok(Self { kind, mode, cdf })
    }
}

/// Result of a single estimation.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub variant: EstimatorVariant,
    pub n: usize,
    pub b: usize,
    /// k = floor(n/b), the effective number of blocks for rate purposes.
    pub k: usize,
    /// Mean of the pseudo-observations.
    pub t_hat: f64,
    /// 1 / t_hat, unconstrained.
    pub theta_raw: f64,
    /// theta_raw constrained to (0, 1].
    pub theta: f64,
    pub warnings: Vec<String>,
}

pub(crate) fn check_block_length(b: usize, n: usize) -> Result<()> {
    if b < 2 || b > n / 2 {
        return Err(Error::BadBlockLength { b, n, min: 2, max: n / 2 });
    }
    Ok(())
}

fn report_from_mean(
    variant: EstimatorVariant,
    n: usize,
    b: usize,
    t_hat: f64,
    warnings: Vec<String>,
) -> Result<EstimateReport> {
    if t_hat <= 0.0 {
        return Err(Error::DegenerateSeries(
            "every block maximum ties the sample maximum; pseudo-observations are all zero".into(),
        ));
    }
    let theta_raw = 1.0 / t_hat;
    Ok(EstimateReport {
        variant,
        n,
        b,
        k: n / b,
        t_hat,
        theta_raw,
        theta: theta_raw.min(1.0),
        warnings,
    })
}

/// Estimates the extremal index of `series` with block length `b`.
pub fn estimate(series: &Series, b: usize, variant: EstimatorVariant) -> Result<EstimateReport> {
    let n = series.len();
    check_block_length(b, n)?;
    let scheme = BlockScheme::new(b, variant.mode, n)?;
    let cdf = match variant.cdf {
        CdfTag::Full => CdfMode::Full,
        CdfTag::LeaveBlockOut => CdfMode::LeaveBlockOut,
        CdfTag::Oracle => {
            return Err(Error::InvalidParameter(
                "oracle cdf requires oracle_estimate with a known marginal".into(),
            ))
        }
    };
    let ps = pseudo_sample(series, scheme, variant.kind, cdf)?;
    let mut warnings = Vec::new();
    let ties = series.tie_fraction();
    if ties > 0.01 {
        warnings.push(format!(
            "{:.1}% of observations are tied; rank-based estimates may be distorted",
            100.0 * ties
        ));
    }
    report_from_mean(variant, n, b, ps.mean(), warnings)
}

/// Estimates theta from a series with known uniform margins, using the
/// identity as the true cdf. Infeasible on data; used in simulation studies
/// as the benchmark the rank-based estimators are compared against.
pub fn oracle_estimate(
    uniforms: &Series,
    b: usize,
    kind: PseudoKind,
    mode: BlockMode,
) -> Result<EstimateReport> {
    let n = uniforms.len();
    check_block_length(b, n)?;
    if let Some(bad) = uniforms.values().iter().find(|u| !(**u > 0.0 && **u < 1.0)) {
        return Err(Error::InvalidParameter(format!(
            "oracle_estimate expects values in (0,1), found {bad}"
        )));
    }
    let scheme = BlockScheme::new(b, mode, n)?;
    let id = |u: f64| u;
    let ps = pseudo_sample(uniforms, scheme, kind, CdfMode::Oracle(&id))?;
    let variant = EstimatorVariant { kind, mode, cdf: CdfTag::Oracle };
    report_from_mean(variant, n, b, ps.mean(), Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series1234() -> Series {
        Series::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap()
    }

    #[test]
    fn suite_on_one_to_four() {
        let s = series1234();
        let r = estimate(&s, 2, EstimatorVariant::B_DJ).unwrap();
        assert!((r.t_hat - 0.5).abs() < 1e-12);
        assert!((r.theta_raw - 2.0).abs() < 1e-12);
        assert_eq!(r.theta, 1.0);
        assert_eq!((r.n, r.b, r.k), (4, 2, 2));

        // theta_N = 1 / mean([2 ln 2, 0]) = 1 / ln 2
        let r = estimate(&s, 2, EstimatorVariant::N_DJ).unwrap();
        assert!((r.theta_raw - std::f64::consts::LOG2_E).abs() < 1e-12);

        let r = estimate(&s, 2, EstimatorVariant::B_SL).unwrap();
        assert!((r.theta_raw - 2.0).abs() < 1e-12);

        let r = estimate(&s, 2, EstimatorVariant::N_SL).unwrap();
        assert!((r.theta_raw - 1.5293181717348991).abs() < 1e-12);
    }

    #[test]
    fn leave_block_out_identity() {
        // Z~ = Z * n/(n-b) per observation, so theta_lbo = (1 - 1/k) theta
        // exactly when b divides n
        let s = series1234();
        let full = estimate(&s, 2, EstimatorVariant::B_DJ).unwrap();
        let lbo = estimate(
            &s,
            2,
            EstimatorVariant { cdf: CdfTag::LeaveBlockOut, ..EstimatorVariant::B_DJ },
        )
        .unwrap();
        let k = full.k as f64;
        assert!((lbo.theta_raw - (1.0 - 1.0 / k) * full.theta_raw).abs() < 1e-12);
        assert!((lbo.theta_raw - 1.0).abs() < 1e-12);
    }

    #[test]
    fn block_length_bounds() {
        let s = series1234();
        assert!(matches!(
            estimate(&s, 1, EstimatorVariant::B_DJ),
            Err(Error::BadBlockLength { .. })
        ));
        assert!(matches!(
            estimate(&s, 3, EstimatorVariant::B_DJ),
            Err(Error::BadBlockLength { .. })
        ));
    }

    #[test]
    fn constant_series_is_degenerate() {
        let s = Series::new(vec![1.0; 8]).unwrap();
        assert!(matches!(
            estimate(&s, 2, EstimatorVariant::B_DJ),
            Err(Error::DegenerateSeries(_))
        ));
    }

    #[test]
    fn tie_warning_over_one_percent() {
        let mut v: Vec<f64> = (0..200).map(|i| i as f64).collect();
        v[0] = 1.0;
        v[2] = 3.0;
        let s = Series::new(v).unwrap();
        let r = estimate(&s, 4, EstimatorVariant::B_SL).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert!(r.warnings[0].contains("tied"));
    }

    #[test]
    fn oracle_on_constant_uniforms() {
        // N = 0.5 in every block, so Z = b/2 and theta_raw = 2/b
        let s = Series::new(vec![0.5; 12]).unwrap();
        for b in [2, 3, 4] {
            let r = oracle_estimate(&s, b, PseudoKind::Z, BlockMode::Disjoint).unwrap();
            assert!((r.theta_raw - 2.0 / b as f64).abs() < 1e-12);
        }
        let bad = Series::new(vec![0.5, 1.5, 0.5, 0.5]).unwrap();
        assert!(oracle_estimate(&bad, 2, PseudoKind::Z, BlockMode::Disjoint).is_err());
    }

    #[test]
    fn variant_names_round_trip() {
        for v in [
            EstimatorVariant::B_DJ,
            EstimatorVariant::B_SL,
            EstimatorVariant::N_DJ,
            EstimatorVariant::N_SL,
            EstimatorVariant { cdf: CdfTag::LeaveBlockOut, ..EstimatorVariant::B_DJ },
            EstimatorVariant { cdf: CdfTag::Oracle, ..EstimatorVariant::N_SL },
        ] {
            let parsed: EstimatorVariant = v.name().parse().unwrap();
            assert_eq!(parsed, v);
        }
        assert!("q-dj".parse::<EstimatorVariant>().is_err());
        assert!("b".parse::<EstimatorVariant>().is_err());
    }
}
