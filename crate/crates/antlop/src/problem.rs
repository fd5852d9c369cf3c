//! Problem representation and exact move algebra.
//!
//! An instance is a dense square matrix of finite weights; a solution is a
//! permutation of the row/column indices. The objective of a permutation is
//! the sum of the weights above the diagonal after reordering, i.e. the total
//! weight of all ordered pairs the permutation places in forward position.
//!
//! Both neighborhood moves used by the solvers (insert and 2-exchange) have
//! exact incremental delta evaluation here: only the pairs whose relative
//! order flips contribute, so the deltas match full recomputation exactly on
//! integer weights.

use crate::error::{LopError, Result};

/// Objective units. Finite, may be negative for pathological instances.
pub type Weight = f64;

/// An ordering of the `n` objects, stored 0-based. CLI and file formats
/// present orderings 1-based; see [`Permutation::to_one_based`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    /// The identity ordering `0, 1, .., n-1`.
    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
        }
    }

    /// Builds a permutation from an explicit order, rejecting anything that
    /// is not a bijection over `0..len`.
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        if order.is_empty() {
            return Err(LopError::InvalidArgument(
                "permutation must not be empty".into(),
            ));
        }
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(LopError::InvalidArgument(format!(
                    "index {v} out of range for permutation of length {n}"
                )));
            }
            if seen[v] {
                return Err(LopError::InvalidArgument(format!(
                    "index {v} appears more than once"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { order })
    }

    fn from_order_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(Self::from_order(order.clone()).is_ok());
        Self { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.order.iter()
    }

    /// The same ordering read back to front.
    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self::from_order_unchecked(order)
    }

    /// Removes the element at `from` and reinserts it at `to`, shifting the
    /// elements in between. Relative order of everything else is preserved.
    pub fn apply_insert(&self, from: usize, to: usize) -> Result<Self> {
        let n = self.len();
        if from >= n || to >= n {
            return Err(LopError::InvalidArgument(format!(
                "insert positions ({from}, {to}) out of range for length {n}"
            )));
        }
        let mut order = self.order.clone();
        let x = order.remove(from);
        order.insert(to, x);
        Ok(Self::from_order_unchecked(order))
    }

    /// Exchanges the elements at two positions in place.
    pub fn swap_positions(&mut self, a: usize, b: usize) -> Result<()> {
        let n = self.len();
        if a >= n || b >= n {
            return Err(LopError::InvalidArgument(format!(
                "swap positions ({a}, {b}) out of range for length {n}"
            )));
        }
        self.order.swap(a, b);
        Ok(())
    }

    /// 1-based copy of the ordering, for display and file output.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.order.iter().map(|&v| v + 1).collect()
    }
}

impl std::ops::Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, pos: usize) -> &usize {
        &self.order[pos]
    }
}

/// A dense LOP instance: `weights[i][j]` is the payoff for ordering `i`
/// before `j`. The diagonal is forced to zero on construction so that
/// [`Instance::total_offdiagonal`] is a plain full-matrix sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    weights: Vec<Weight>,
    name: Option<String>,
    max_abs_weight: Weight,
}

impl Instance {
    /// Builds an instance from matrix rows. Rejects empty or non-square
    /// input and non-finite entries; zeroes the diagonal.
    pub fn new(rows: Vec<Vec<Weight>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(LopError::InvalidArgument(
                "instance must have at least one object".into(),
            ));
        }
        let mut weights = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LopError::InvalidArgument(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            weights.extend_from_slice(row);
        }
        Self::from_flat(n, weights)
    }

    /// Builds an instance from an `n * n` row-major buffer.
    pub fn from_flat(n: usize, mut weights: Vec<Weight>) -> Result<Self> {
        if n == 0 {
            return Err(LopError::InvalidArgument(
                "instance must have at least one object".into(),
            ));
        }
        if weights.len() != n * n {
            return Err(LopError::InvalidArgument(format!(
                "weight buffer has {} entries, expected {}",
                weights.len(),
                n * n
            )));
        }
        if let Some(bad) = weights.iter().find(|w| !w.is_finite()) {
            return Err(LopError::InvalidArgument(format!(
                "weights must be finite, found {bad}"
            )));
        }
        for i in 0..n {
            weights[i * n + i] = 0.0;
        }
        let max_abs_weight = weights.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
        Ok(Self {
            n,
            weights,
            name: None,
            max_abs_weight,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Largest absolute weight in the matrix, cached at construction.
    pub fn max_abs_weight(&self) -> Weight {
        self.max_abs_weight
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> Weight {
        self.weights[i * self.n + j]
    }

    fn check_perm(&self, perm: &Permutation) -> Result<()> {
        if perm.len() != self.n {
            return Err(LopError::InvalidArgument(format!(
                "permutation of length {} does not match instance of size {}",
                perm.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Total weight of all pairs placed in forward order: the sum of the
    /// upper triangle of the reordered matrix. O(n^2).
    pub fn objective(&self, perm: &Permutation) -> Result<Weight> {
        self.check_perm(perm)?;
        let ord = perm.as_slice();
        let mut total = 0.0;
        for i in 0..self.n {
            let row = ord[i] * self.n;
            for &v in &ord[i + 1..] {
                total += self.weights[row + v];
            }
        }
        Ok(total)
    }

    /// Sum of every off-diagonal entry. Equals `objective(p) +
    /// objective(p.reversed())` for any permutation `p`.
    pub fn total_offdiagonal(&self) -> Weight {
        let mut total = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    total += self.weights[i * self.n + j];
                }
            }
        }
        total
    }

    /// Objective change from moving the element at `from` to position `to`,
    /// in O(|from - to|): only pairs between the moved element and the
    /// elements it jumps over flip orientation.
    pub fn insert_move_delta(&self, perm: &Permutation, from: usize, to: usize) -> Result<Weight> {
        self.check_perm(perm)?;
        if from >= self.n || to >= self.n {
            return Err(LopError::InvalidArgument(format!(
                "insert positions ({from}, {to}) out of range for size {}",
                self.n
            )));
        }
        let ord = perm.as_slice();
        let x = ord[from];
        let mut delta = 0.0;
        if from < to {
            for &y in &ord[from + 1..=to] {
                delta += self.weight(y, x) - self.weight(x, y);
            }
        } else {
            for &y in &ord[to..from] {
                delta += self.weight(x, y) - self.weight(y, x);
            }
        }
        Ok(delta)
    }

    /// Objective change from exchanging the elements at two positions, in
    /// O(|a - b|). Exact against full recomputation on integer weights.
    pub fn swap_delta(&self, perm: &Permutation, pos_a: usize, pos_b: usize) -> Result<Weight> {
        self.check_perm(perm)?;
        if pos_a >= self.n || pos_b >= self.n {
            return Err(LopError::InvalidArgument(format!(
                "swap positions ({pos_a}, {pos_b}) out of range for size {}",
                self.n
            )));
        }
        if pos_a == pos_b {
            return Ok(0.0);
        }
        let (a, b) = if pos_a < pos_b {
            (pos_a, pos_b)
        } else {
            (pos_b, pos_a)
        };
        let ord = perm.as_slice();
        let x = ord[a];
        let y = ord[b];
        let mut delta = self.weight(y, x) - self.weight(x, y);
        for &z in &ord[a + 1..b] {
            // x moves behind z, y moves in front of z
            delta += self.weight(z, x) - self.weight(x, z);
            delta += self.weight(y, z) - self.weight(z, y);
        }
        Ok(delta)
    }
}
