//! Observed series and rank transforms.

use crate::error::{Error, Result};

/// A nonempty stretch of a stationary time series with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    values: Vec<f64>,
}

impl Series {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue(i));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Rank counts c[s] = #{t : x_t <= x_s}, the maximal rank under ties.
    ///
    /// The empirical cdf at x_s is c[s] / n. Counts are computed in
    /// O(n log n) by sorting once and assigning each tie run the count of
    /// its last member.
    pub fn rank_counts(&self) -> Vec<u32> {
        rank_counts(&self.values)
    }

    /// Empirical cdf values c[s] / n in (0, 1].
    pub fn ranks(&self) -> Vec<f64> {
        let n = self.len() as f64;
        self.rank_counts().iter().map(|&c| c as f64 / n).collect()
    }

    /// Fraction of observations that share their value with another one.
    pub fn tie_fraction(&self) -> f64 {
        let mut sorted = self.values.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut tied = 0usize;
        let mut run = 1usize;
        for i in 1..=sorted.len() {
            if i < sorted.len() && sorted[i] == sorted[i - 1] {
                run += 1;
            } else {
                if run > 1 {
                    tied += run;
                }
                run = 1;
            }
        }
        tied as f64 / self.len() as f64
    }
}

pub(crate) fn rank_counts(values: &[f64]) -> Vec<u32> {
    let n = values.len();
    assert!(n <= u32::MAX as usize, "series too long for 32-bit rank counts");
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| values[a as usize].partial_cmp(&values[b as usize]).unwrap());
    let mut counts = vec![0u32; n];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[order[j] as usize] == values[order[i] as usize] {
            j += 1;
        }
        for &s in &order[i..j] {
            counts[s as usize] = j as u32;
        }
        i = j;
    }
    counts
}
