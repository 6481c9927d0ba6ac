//! Grid-center enumeration for degeneracy escape.
//!
//! When a center `c` makes the critical system degenerate (a
//! positive-dimensional zero set, or a singular Hessian at some routing
//! point), the pipeline retries with the next center. Centers are the
//! nonnegative integer tuples enumerated in ascending graded
//! lexicographic order — all tuples of coordinate sum 0, then sum 1, and
//! so on, each block in ascending lexicographic order:
//!
//! ```text
//!     n = 2:  (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), (0,3), ...
//! ```
//!
//! Degenerate centers form a measure-zero (indeed, algebraic) subset of
//! all choices, so the walk terminates quickly in practice; a step limit
//! turns a would-be infinite loop into a reportable error.

use crate::{Error, Result};

/// Default maximum number of centers tried before giving up.
pub const DEFAULT_STEP_LIMIT: usize = 10_000;

/// Enumerates candidate centers in ascending graded-lex order.
#[derive(Clone, Debug)]
pub struct GridCursor {
    dim: usize,
    limit: usize,
    emitted: usize,
    /// Next tuple to hand out; `None` before the first call.
    state: Option<Vec<i64>>,
}

impl GridCursor {
    pub fn new(dim: usize) -> Self {
        Self::with_limit(dim, DEFAULT_STEP_LIMIT)
    }

    pub fn with_limit(dim: usize, limit: usize) -> Self {
        assert!(dim >= 1, "cursor needs at least one dimension");
        GridCursor {
            dim,
            limit,
            emitted: 0,
            state: None,
        }
    }

    /// Number of centers handed out so far.
    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Produce the next center, or fail once the step limit is reached.
    pub fn next_center(&mut self) -> Result<Vec<i64>> {
        if self.emitted >= self.limit {
            return Err(Error::StepLimitExhausted { limit: self.limit });
        }
        let next = match &self.state {
            None => vec![0i64; self.dim],
            Some(current) => Self::successor(current),
        };
        self.state = Some(next.clone());
        self.emitted += 1;
        Ok(next)
    }

    /// Graded-lex successor on nonnegative tuples: within a coordinate-sum
    /// block, bump the rightmost position that still has weight to its
    /// right and push the remainder to the tail; when a block is
    /// exhausted, open the next one at `(0, ..., 0, d+1)`.
    fn successor(t: &[i64]) -> Vec<i64> {
        let n = t.len();
        let mut out = t.to_vec();
        if n == 1 {
            out[0] += 1;
            return out;
        }
        // Rightmost i <= n-2 with positive suffix sum.
        let mut suffix = 0i64;
        for i in (0..n - 1).rev() {
            suffix += t[i + 1];
            if suffix > 0 {
                out[i] += 1;
                for v in out.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                out[n - 1] = suffix - 1;
                return out;
            }
        }
        // Block exhausted: next degree.
        let d: i64 = t.iter().sum();
        let mut fresh = vec![0i64; n];
        fresh[n - 1] = d + 1;
        fresh
    }
}
