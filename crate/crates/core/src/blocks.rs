//! Block maxima over disjoint and sliding windows.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Series;

/// Window placement for block maxima.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockMode {
    Disjoint,
    Sliding,
}

impl std::fmt::Display for BlockMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BlockMode::Disjoint => "dj",
            BlockMode::Sliding => "sl",
        })
    }
}

/// Block length and placement for a series of length `n`.
///
/// Disjoint blocks cover indices [ib, (i+1)b) for i < k = floor(n/b); a
/// remainder shorter than b is discarded. Sliding windows cover every
/// stretch of b consecutive observations, n - b + 1 in total. Rate
/// bookkeeping (variance scaling, bias correction) uses k for both modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockScheme {
    b: usize,
    mode: BlockMode,
    n: usize,
}

impl BlockScheme {
    pub fn new(b: usize, mode: BlockMode, n: usize) -> Result<Self> {
        if b < 1 || b > n {
            return Err(Error::BadBlockLength { b, n, min: 1, max: n });
        }
        Ok(Self { b, mode, n })
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn mode(&self) -> BlockMode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks produced by this scheme.
    pub fn num_blocks(&self) -> usize {
        match self.mode {
            BlockMode::Disjoint => self.n / self.b,
            BlockMode::Sliding => self.n - self.b + 1,
        }
    }

    /// k = floor(n/b), the normalizing block count for both modes.
    pub fn k(&self) -> usize {
        self.n / self.b
    }
}

/// Maxima of disjoint blocks of length `b`; the remainder is discarded.
pub fn disjoint_maxima<T: Copy + PartialOrd>(values: &[T], b: usize) -> Vec<T> {
    assert!(b >= 1);
    values
        .chunks_exact(b)
        .map(|chunk| {
            let mut m = chunk[0];
            for &x in &chunk[1..] {
                if x > m {
                    m = x;
                }
            }
            m
        })
        .collect()
}

/// Maxima of all sliding windows of length `b`, in O(n) via a monotone deque.
pub fn sliding_maxima<T: Copy + PartialOrd>(values: &[T], b: usize) -> Vec<T> {
    assert!(b >= 1 && b <= values.len());
    let mut out = Vec::with_capacity(values.len() - b + 1);
    let mut deque: VecDeque<usize> = VecDeque::new();
    for (i, x) in values.iter().enumerate() {
        while deque.back().is_some_and(|&j| values[j] <= *x) {
            deque.pop_back();
        }
        deque.push_back(i);
        if i + 1 >= b {
            if *deque.front().unwrap() + b <= i {
                deque.pop_front();
            }
            out.push(values[*deque.front().unwrap()]);
        }
    }
    out
}

/// Block maxima of a series under the given scheme.
pub fn block_maxima(series: &Series, scheme: &BlockScheme) -> Result<Vec<f64>> {
    if scheme.n() != series.len() {
        return Err(Error::InvalidParameter(format!(
            "scheme is for length {}, series has length {}",
            scheme.n(),
            series.len()
        )));
    }
    Ok(match scheme.mode() {
        BlockMode::Disjoint => disjoint_maxima(series.values(), scheme.b()),
        BlockMode::Sliding => sliding_maxima(series.values(), scheme.b()),
    })
}
