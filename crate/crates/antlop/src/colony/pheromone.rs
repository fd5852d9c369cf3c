//! Directed pheromone matrix and its three update rules.
//!
//! Every entry stays at or above the configured floor `tau_min` at all
//! times: the reinforcing updates cannot fall below it (the floor is below
//! the local-update fixed point `tau0`), and the step-back penalty, which
//! subtracts rather than deposits, is clamped explicitly.

use crate::colony::ColonyParams;
use crate::problem::{Permutation, Weight};

/// Per-directed-edge desirability. `get(i, j)` and `get(j, i)` are
/// independent values.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneMatrix {
    n: usize,
    tau: Vec<f64>,
}

impl PheromoneMatrix {
    /// A fresh matrix with every entry at `params.tau0`.
    pub fn new(n: usize, params: &ColonyParams) -> Self {
        Self {
            n,
            tau: vec![params.tau0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.tau[i * self.n + j]
    }

    /// Smallest entry, for invariant checks.
    pub fn min_entry(&self) -> f64 {
        self.tau.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Evaporate-and-refresh applied to each edge as an ant traverses it:
    /// `tau <- (1 - rho) * tau + rho * tau0`. Pulls the edge toward `tau0`,
    /// which is the rule's fixed point.
    pub fn local_update(&mut self, i: usize, j: usize, params: &ColonyParams) {
        let idx = i * self.n + j;
        let v = (1.0 - params.rho) * self.tau[idx] + params.rho * params.tau0;
        self.tau[idx] = v.max(params.tau_min);
    }

    /// Penalty on the edge a stepping-back ant retracts:
    /// `tau <- max(tau_min, (1 - rho) * tau - rho * tau0)`. The subtraction
    /// can go negative, hence the clamp.
    pub fn step_back_update(&mut self, prev: usize, cur: usize, params: &ColonyParams) {
        let idx = prev * self.n + cur;
        let v = (1.0 - params.rho) * self.tau[idx] - params.rho * params.tau0;
        self.tau[idx] = v.max(params.tau_min);
    }

    /// Reinforces the incumbent's n-1 consecutive edges with
    /// `tau <- (1 - rho) * tau + rho / best_value`; every other edge is left
    /// untouched. A non-positive incumbent value cannot supply a deposit, so
    /// those edges only evaporate and a warning is logged.
    pub fn global_update(&mut self, best: &Permutation, best_value: Weight, params: &ColonyParams) {
        let deposit = if best_value > 0.0 {
            params.rho / best_value
        } else {
            log::warn!(
                "best value {best_value} is not positive; skipping pheromone deposit, \
                 evaporating best-tour edges only"
            );
            0.0
        };
        for pair in best.as_slice().windows(2) {
            let idx = pair[0] * self.n + pair[1];
            let v = (1.0 - params.rho) * self.tau[idx] + deposit;
            self.tau[idx] = v.max(params.tau_min);
        }
    }

    #[cfg(test)]
    pub(crate) fn set_entry(&mut self, i: usize, j: usize, value: f64) {
        self.tau[i * self.n + j] = value;
    }
}
