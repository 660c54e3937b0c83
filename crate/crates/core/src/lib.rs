//! Extremal index estimation from block maxima.
//!
//! The extremal index theta in (0, 1] of a stationary time series measures
//! the clustering of its extremes: 1/theta is the mean cluster size, and
//! theta = 1 means extremes arrive as if independent. This crate estimates
//! theta from a single observed stretch by sending block maxima through the
//! empirical marginal cdf, which turns them into approximately
//! Exponential(theta) pseudo-observations:
//!
//! ```text
//! Z_i = b (1 - F_n(M_i))       theta_B = 1 / mean(Z)
//! Y_i = -b log F_n(M_i)        theta_N = 1 / mean(Y)
//! ```
//!
//! Blocks are disjoint (k = floor(n/b) of them) or sliding (n - b + 1
//! overlapping windows); sliding blocks have strictly smaller asymptotic
//! variance. On top of the point estimators the crate provides a variance
//! estimator, a first-order bias correction, normal confidence intervals,
//! four reference simulators with known theta, the asymptotic-variance
//! quadrature, and a deterministic, parallel Monte Carlo harness.
//!
//! ```
//! use eix_core::{estimate, simulate, EstimatorVariant, ModelKind, ModelSpec};
//!
//! let spec = ModelSpec::new(ModelKind::Armax { alpha: 0.5 }, 8192, 7).unwrap();
//! let series = simulate(&spec).unwrap();
//! let report = estimate(&series, 64, EstimatorVariant::B_SL).unwrap();
//! assert!((report.theta - 0.5).abs() < 0.15);
//! ```

pub mod blocks;
pub mod error;
pub mod estimate;
pub mod inference;
pub mod math;
pub mod mc;
pub mod models;
pub mod pseudo;
pub mod quadrature;
pub mod rng;
pub mod series;
pub mod stats;

pub use blocks::{block_maxima, BlockMode, BlockScheme};
pub use error::{Error, Result};
pub use estimate::{estimate, oracle_estimate, EstimateReport, EstimatorVariant};
pub use inference::{
    bias_corrected, bias_corrected_lbo, confidence_interval, variance_estimate,
    ConfidenceInterval, VarianceReport,
};
pub use mc::{run_coverage, run_sweep, run_variance_ratio, SweepConfig, SweepReport, SweepRow};
pub use models::{
    armax_moments, armax_variance_closed, asymptotic_variance, clayton_theta_mc, simulate,
    theta_true, theta_true_with_se, ModelKind, ModelSpec, MomentFunctions,
};
pub use pseudo::{pseudo_sample, CdfMode, CdfTag, PseudoKind, PseudoSample};
pub use series::Series;
