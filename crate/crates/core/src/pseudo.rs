//! Pseudo-observations from block maxima.
//!
//! A block maximum M with marginal cdf value F(M) close to 1 carries the
//! extremal-index signal through either of two transforms:
//!
//! ```text
//! Z = b * (1 - F(M))       Y = -b * log F(M)
//! ```
//!
//! Both are approximately Exponential(theta) for large b, and theta is
//! estimated by the reciprocal sample mean. F is usually the empirical cdf
//! of the observed stretch (rank based, so the estimators are invariant
//! under strictly increasing transforms); the leave-block-out variant drops
//! the maximum's own block from the cdf, and the oracle variant plugs in a
//! known marginal for simulation studies.

use serde::{Deserialize, Serialize};

use crate::blocks::{disjoint_maxima, sliding_maxima, BlockMode, BlockScheme};
use crate::error::{Error, Result};
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PseudoKind {
    Z,
    Y,
}

impl std::fmt::Display for PseudoKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PseudoKind::Z => "z",
            PseudoKind::Y => "y",
        })
    }
}

/// How the marginal cdf is evaluated at the block maxima.
pub enum CdfMode<'a> {
    /// Empirical cdf of the full sample.
    Full,
    /// Empirical cdf of the n - b observations outside the block; disjoint
    /// blocks only.
    LeaveBlockOut,
    /// A known marginal cdf, for simulation oracles. Must map every block
    /// maximum into (0, 1].
    Oracle(&'a dyn Fn(f64) -> f64),
}

/// Closure-free tag of a [`CdfMode`], for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CdfTag {
    Full,
    LeaveBlockOut,
    Oracle,
}

impl CdfMode<'_> {
    pub fn tag(&self) -> CdfTag {
        match self {
            CdfMode::Full => CdfTag::Full,
            CdfMode::LeaveBlockOut => CdfTag::LeaveBlockOut,
            CdfMode::Oracle(_) => CdfTag::Oracle,
        }
    }
}

/// Pseudo-observations, one per block, with the maxima they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoSample {
    pub kind: PseudoKind,
    pub scheme: BlockScheme,
    pub cdf: CdfTag,
    pub values: Vec<f64>,
    pub maxima: Vec<f64>,
}

impl PseudoSample {
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

fn transform(kind: PseudoKind, b: f64, f: f64) -> f64 {
    match kind {
        // + 0.0 normalizes the -0.0 produced at f = 1
        PseudoKind::Z => b * (1.0 - f),
        PseudoKind::Y => -b * f.ln() + 0.0,
    }
}

/// Pseudo-observations from precomputed rank counts, full empirical cdf.
///
/// `counts` are the maximal-rank counts of the underlying series; block
/// maxima of counts equal counts of block maxima because ranking is
/// monotone. This is the shared fast path for the estimators, the variance
/// estimator and the Monte Carlo driver.
pub fn pseudo_from_counts(
    counts: &[u32],
    b: usize,
    mode: BlockMode,
    kind: PseudoKind,
) -> Vec<f64> {
    let n = counts.len() as f64;
    let bf = b as f64;
    let max_counts = match mode {
        BlockMode::Disjoint => disjoint_maxima(counts, b),
        BlockMode::Sliding => sliding_maxima(counts, b),
    };
    max_counts
        .into_iter()
        .map(|c| transform(kind, bf, c as f64 / n))
        .collect()
}

/// Leave-block-out pseudo-observations from precomputed rank counts.
///
/// For disjoint block i with maximum count C_i, the cdf outside the block is
/// (C_i - b) / (n - b): the block's own b observations all sit at or below
/// their maximum. For Y the cdf value is floored at 1/(2(n - b)) so the log
/// stays finite when the block maximum is the sample minimum of the rest.
pub fn pseudo_lbo_from_counts(counts: &[u32], b: usize, kind: PseudoKind) -> Vec<f64> {
    let n = counts.len();
    let denom = (n - b) as f64;
    let floor = 1.0 / (2.0 * denom);
    let bf = b as f64;
    disjoint_maxima(counts, b)
        .into_iter()
        .map(|c| {
            let f = (c as f64 - bf) / denom;
            match kind {
                PseudoKind::Z => bf * (1.0 - f),
                PseudoKind::Y => transform(kind, bf, f.max(floor)),
            }
        })
        .collect()
}

/// Pseudo-observations of a series under the given scheme, kind and cdf.
pub fn pseudo_sample(
    series: &Series,
    scheme: BlockScheme,
    kind: PseudoKind,
    cdf: CdfMode<'_>,
) -> Result<PseudoSample> {
    if scheme.n() != series.len() {
        return Err(Error::InvalidParameter(format!(
            "scheme is for length {}, series has length {}",
            scheme.n(),
            series.len()
        )));
    }
    let (b, mode) = (scheme.b(), scheme.mode());
    let maxima = match mode {
        BlockMode::Disjoint => disjoint_maxima(series.values(), b),
        BlockMode::Sliding => sliding_maxima(series.values(), b),
    };
    if maxima.is_empty() {
        return Err(Error::BadBlockLength { b, n: series.len(), min: 1, max: series.len() });
    }
    let values = match cdf {
        CdfMode::Full => pseudo_from_counts(&series.rank_counts(), b, mode, kind),
        CdfMode::LeaveBlockOut => {
            if mode != BlockMode::Disjoint {
                return Err(Error::InvalidParameter(
                    "leave-block-out cdf requires disjoint blocks".into(),
                ));
            }
            if b >= series.len() {
                return Err(Error::InvalidParameter(
                    "leave-block-out cdf requires b < n".into(),
                ));
            }
            pseudo_lbo_from_counts(&series.rank_counts(), b, kind)
        }
        CdfMode::Oracle(f) => {
            let bf = b as f64;
            let mut vals = Vec::with_capacity(maxima.len());
            for &m in &maxima {
                let fm = f(m);
                if !(fm > 0.0 && fm <= 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "oracle cdf returned {fm} at {m}, outside (0, 1]"
                    )));
                }
                vals.push(transform(kind, bf, fm));
            }
            vals
        }
    };
    let tag = cdf.tag();
    Ok(PseudoSample { kind, scheme, cdf: tag, values, maxima })
}
