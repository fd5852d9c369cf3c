//! Colony drivers for the two algorithms.
//!
//! Both algorithms share one engine. Each iteration every ant builds a tour
//! from a random start node, the tour is polished with insert moves, and the
//! run-best ordering deposits pheromone on its consecutive pairs. They
//! differ only in ant sensitivity: ACS-IM ants are fully sensitive, so the
//! step-back machinery never engages; SB-SAM ants draw an individual
//! sensitivity once per run (or share a fixed one) and may retract steps.
//!
//! Runs are deterministic functions of `(instance, params, seed)`. Every
//! stochastic choice flows through one ChaCha8 generator in a fixed order,
//! and an SB-SAM run with all sensitivities fixed at 1 consumes draws
//! identically to an ACS-IM run, producing bit-identical results.

mod pheromone;
mod tour;

pub use pheromone::PheromoneMatrix;
pub use tour::{
    acs_select, construct_tour, heuristic_value, sam_gate, transition_probabilities, Ant,
    GateOutcome,
};

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construction::greedy_initial;
use crate::error::{LopError, Result};
use crate::local_search::insert_move_search;
use crate::problem::{Instance, Permutation};

/// Which of the two ant colony variants to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Ant colony system with insert-move local search.
    AcsIm,
    /// Step-back sensitive ant model, same local search.
    SbSam,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::AcsIm => "acs-im",
            Algorithm::SbSam => "sb-sam",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = LopError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acs-im" => Ok(Algorithm::AcsIm),
            "sb-sam" => Ok(Algorithm::SbSam),
            other => Err(LopError::InvalidArgument(format!(
                "unknown algorithm {other:?}, expected \"acs-im\" or \"sb-sam\""
            ))),
        }
    }
}

/// Tunable knobs for a colony run.
#[derive(Debug, Clone, PartialEq)]
pub struct ColonyParams {
    /// Pheromone exponent in the transition rule.
    pub alpha: f64,
    /// Heuristic exponent in the transition rule.
    pub beta: f64,
    /// Initial pheromone level on every pair.
    pub tau0: f64,
    /// Evaporation rate shared by local, global and step-back updates.
    pub rho: f64,
    /// Exploitation probability of the pseudo-random proportional rule.
    pub q0: f64,
    /// Number of ants per iteration.
    pub m: usize,
    /// Number of iterations per run.
    pub iterations: usize,
    /// Hard floor for every pheromone entry.
    pub tau_min: f64,
    pub algorithm: Algorithm,
    /// Overrides the per-ant sensitivity draw with a shared constant.
    /// Ignored by ACS-IM, whose ants are always fully sensitive.
    pub fixed_psl: Option<f64>,
}

impl ColonyParams {
    /// Benchmark defaults: alpha 1, beta 2, tau0 0.1, rho 0.1, q0 0.5,
    /// 10 ants, 200 iterations, floor 0.001.
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            alpha: 1.0,
            beta: 2.0,
            tau0: 0.1,
            rho: 0.1,
            q0: 0.5,
            m: 10,
            iterations: 200,
            tau_min: 0.001,
            algorithm,
            fixed_psl: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(LopError::InvalidArgument(msg));
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return err(format!("alpha must be finite and non-negative, got {}", self.alpha));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return err(format!("beta must be finite and non-negative, got {}", self.beta));
        }
        if !self.tau0.is_finite() || self.tau0 <= 0.0 {
            return err(format!("tau0 must be positive, got {}", self.tau0));
        }
        if !self.rho.is_finite() || self.rho <= 0.0 || self.rho >= 1.0 {
            return err(format!("rho must lie strictly between 0 and 1, got {}", self.rho));
        }
        if !self.q0.is_finite() || !(0.0..=1.0).contains(&self.q0) {
            return err(format!("q0 must lie in [0, 1], got {}", self.q0));
        }
        if self.m == 0 {
            return err("at least one ant is required".to_string());
        }
        if self.iterations == 0 {
            return err("at least one iteration is required".to_string());
        }
        if !self.tau_min.is_finite() || self.tau_min <= 0.0 || self.tau_min > self.tau0 {
            return err(format!(
                "tau_min must be positive and at most tau0, got {} with tau0 {}",
                self.tau_min, self.tau0
            ));
        }
        if let Some(p) = self.fixed_psl {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return err(format!("fixed sensitivity must lie in [0, 1], got {p}"));
            }
        }
        Ok(())
    }
}

/// Outcome of one colony run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// Objective value of the best ordering found.
    pub best_value: f64,
    /// The best ordering itself.
    pub best_perm: Permutation,
    /// Run-best objective after each iteration; never decreases.
    pub iteration_best_trace: Vec<f64>,
    /// Seed the run was started with.
    pub seed: u64,
}

/// Runs one colony on `instance` and returns the best ordering found.
///
/// The incumbent starts at the deterministic greedy swap-descent ordering.
/// Sensitivities are fixed before the first iteration: ACS-IM ants get 1
/// without touching the generator, a fixed SB-SAM sensitivity is likewise
/// free, and otherwise each SB-SAM ant draws its own. Per ant the draw
/// order is: start node, then for each construction step the gate draw
/// (when it applies) followed by the selection draws. Ties and iteration
/// order are deterministic, so equal seeds give bit-identical results.
pub fn run(instance: &Instance, params: &ColonyParams, seed: u64) -> Result<RunResult> {
    params.validate()?;
    let n = instance.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sensitivities: Vec<f64> = match (params.algorithm, params.fixed_psl) {
        (Algorithm::AcsIm, _) => vec![1.0; params.m],
        (Algorithm::SbSam, Some(p)) => vec![p; params.m],
        (Algorithm::SbSam, None) => (0..params.m).map(|_| rng.gen()).collect(),
    };
    let mut tau = PheromoneMatrix::new(n, params);
    let mut best_perm = greedy_initial(instance);
    let mut best_value = instance.objective(&best_perm)?;
    let mut trace = Vec::with_capacity(params.iterations);
    for _ in 0..params.iterations {
        for &psl in &sensitivities {
            let start = rng.gen_range(0..n);
            let mut ant = Ant::new(n, start, psl);
            let tour = construct_tour(instance, &mut tau, &mut ant, params, &mut rng);
            let polished = insert_move_search(instance, &tour, n * n);
            let value = instance.objective(&polished)?;
            if value > best_value {
                best_value = value;
                best_perm = polished;
            }
        }
        tau.global_update(&best_perm, best_value, params);
        trace.push(best_value);
    }
    Ok(RunResult {
        best_value,
        best_perm,
        iteration_best_trace: trace,
        seed,
    })
}
