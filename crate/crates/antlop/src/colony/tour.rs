//! Ant state and tour construction for both algorithms.
//!
//! A tour is built one node at a time. At each step the ant first passes a
//! sensitivity gate, then picks the next node with the pseudo-random
//! proportional rule. The gate draws one value from the generator whenever
//! it applies, in both algorithms: ACS-IM ants carry a sensitivity of 1, so
//! their gate never fires but consumes the same draw, which makes an ACS-IM
//! run bit-identical to an SB-SAM run whose ants are forced to full
//! sensitivity.
//!
//! Draw order per constructed step: gate draw (when the gate applies), then
//! the selection draw, then a roulette draw only when the selection falls
//! into the biased-exploration branch.
//!
//! An SB-SAM ant whose gate selects the virtual state retracts its latest
//! step: the current node is removed and blocked at the restored decision
//! point, and the retracted edge is penalized. Retraction is one level deep.
//! If every remaining node becomes blocked at some decision point, blocking
//! is cleared and the ant finishes the tour with normal steps only; a
//! one-shot forced step cannot guarantee termination for a zero-sensitivity
//! ant, which would bounce on the same decision point forever.

use rand::Rng;

use crate::colony::{Algorithm, ColonyParams, PheromoneMatrix};
use crate::error::{LopError, Result};
use crate::problem::{Instance, Permutation};

/// Outcome of the sensitivity gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateOutcome {
    /// Proceed with the ordinary transition rule.
    Normal,
    /// Lost probability mass: the ant ignores the transition rule this step.
    Virtual,
}

/// One ant's construction state.
#[derive(Debug, Clone)]
pub struct Ant {
    psl: f64,
    tour: Vec<usize>,
    visited: Vec<bool>,
    /// One entry per tour position: nodes blocked for the decision made from
    /// that position, populated by step-backs.
    blocked: Vec<Vec<usize>>,
    gate_enabled: bool,
}

impl Ant {
    /// A fresh ant standing on `start` with sensitivity `psl`.
    pub fn new(n: usize, start: usize, psl: f64) -> Self {
        assert!(start < n, "start node {start} out of range for {n} nodes");
        assert!((0.0..=1.0).contains(&psl), "psl {psl} outside [0, 1]");
        let mut visited = vec![false; n];
        visited[start] = true;
        Self {
            psl,
            tour: vec![start],
            visited,
            blocked: vec![Vec::new()],
            gate_enabled: true,
        }
    }

    pub fn psl(&self) -> f64 {
        self.psl
    }

    pub fn n(&self) -> usize {
        self.visited.len()
    }

    /// The node the ant stands on: the last tour entry.
    pub fn current(&self) -> usize {
        *self.tour.last().expect("tour always holds the start node")
    }

    /// The second-to-last tour entry, if the ant has advanced at least once.
    pub fn previous(&self) -> Option<usize> {
        self.tour.len().checked_sub(2).map(|i| self.tour[i])
    }

    pub fn tour(&self) -> &[usize] {
        &self.tour
    }

    pub fn is_complete(&self) -> bool {
        self.tour.len() == self.visited.len()
    }

    /// Unvisited nodes not blocked at the current decision point, ascending.
    pub fn candidates(&self) -> Vec<usize> {
        let blocked = self.blocked.last().expect("one blocked set per position");
        (0..self.visited.len())
            .filter(|v| !self.visited[*v] && !blocked.contains(v))
            .collect()
    }

    fn advance(&mut self, node: usize) {
        debug_assert!(!self.visited[node]);
        self.visited[node] = true;
        self.tour.push(node);
        self.blocked.push(Vec::new());
    }

    /// Retracts the latest step and blocks the retracted node at the
    /// restored decision point.
    fn step_back(&mut self) {
        debug_assert!(self.tour.len() >= 2, "cannot step back from the start node");
        let cur = self.tour.pop().expect("tour is non-empty");
        self.visited[cur] = false;
        self.blocked.pop();
        self.blocked
            .last_mut()
            .expect("restored decision point exists")
            .push(cur);
    }

    fn clear_blocked(&mut self) {
        self.blocked
            .last_mut()
            .expect("one blocked set per position")
            .clear();
    }
}

/// Static attractiveness of appending `candidate` after the ant's current
/// node: 1 plus the positive part of `w(current, candidate) -
/// w(candidate, current)`, rescaled by one more than the largest absolute
/// weight. Always at least 1, so no exponent can zero a candidate out.
pub fn heuristic_value(instance: &Instance, ant: &Ant, candidate: usize) -> f64 {
    eta(instance, ant.current(), candidate)
}

#[inline]
fn eta(instance: &Instance, cur: usize, cand: usize) -> f64 {
    let advantage = (instance.weight(cur, cand) - instance.weight(cand, cur)).max(0.0);
    1.0 + advantage / (1.0 + instance.max_abs_weight())
}

#[inline]
fn pow(base: f64, exp: f64) -> f64 {
    if exp == 1.0 {
        base
    } else if exp == 2.0 {
        base * base
    } else {
        base.powf(exp)
    }
}

fn selection_scores(
    instance: &Instance,
    tau: &PheromoneMatrix,
    cur: usize,
    cands: &[usize],
    params: &ColonyParams,
) -> Vec<f64> {
    cands
        .iter()
        .map(|&u| pow(tau.get(cur, u), params.alpha) * pow(eta(instance, cur, u), params.beta))
        .collect()
}

/// Normalized transition probabilities over the ant's candidate set, as
/// `(node, probability)` pairs in ascending node order. The probabilities
/// sum to 1 up to float rounding.
pub fn transition_probabilities(
    instance: &Instance,
    tau: &PheromoneMatrix,
    ant: &Ant,
    params: &ColonyParams,
) -> Result<Vec<(usize, f64)>> {
    let cands = ant.candidates();
    if cands.is_empty() {
        return Err(LopError::NoCandidates);
    }
    let scores = selection_scores(instance, tau, ant.current(), &cands, params);
    let sum: f64 = scores.iter().sum();
    Ok(cands
        .into_iter()
        .zip(scores)
        .map(|(u, s)| (u, s / sum))
        .collect())
}

/// Pseudo-random proportional choice over `cands`: with probability `q0`
/// the highest-scoring candidate (ties to the smallest node index), else a
/// roulette draw over the normalized scores.
fn select_from<R: Rng>(
    instance: &Instance,
    tau: &PheromoneMatrix,
    cur: usize,
    cands: &[usize],
    params: &ColonyParams,
    rng: &mut R,
) -> usize {
    debug_assert!(!cands.is_empty());
    let scores = selection_scores(instance, tau, cur, cands, params);
    let q: f64 = rng.gen();
    if q < params.q0 {
        let mut best = 0;
        for (k, &s) in scores.iter().enumerate().skip(1) {
            if s > scores[best] {
                best = k;
            }
        }
        return cands[best];
    }
    let sum: f64 = scores.iter().sum();
    let r: f64 = rng.gen::<f64>() * sum;
    let mut cum = 0.0;
    for (k, &s) in scores.iter().enumerate() {
        cum += s;
        if r < cum {
            return cands[k];
        }
    }
    *cands.last().expect("candidate set is non-empty")
}

/// Public entry for the transition rule; candidate set taken from the ant.
pub fn acs_select<R: Rng>(
    instance: &Instance,
    tau: &PheromoneMatrix,
    ant: &Ant,
    params: &ColonyParams,
    rng: &mut R,
) -> Result<usize> {
    let cands = ant.candidates();
    if cands.is_empty() {
        return Err(LopError::NoCandidates);
    }
    Ok(select_from(
        instance,
        tau,
        ant.current(),
        &cands,
        params,
        rng,
    ))
}

/// Sensitivity gate: `Normal` with probability `psl`, `Virtual` otherwise.
/// Always consumes exactly one draw. Gating before selection leaves each
/// candidate an unconditional selection probability of `psl * p(candidate)`,
/// with the residual `1 - psl` mass on the virtual state.
pub fn sam_gate<R: Rng>(psl: f64, rng: &mut R) -> GateOutcome {
    if rng.gen::<f64>() < psl {
        GateOutcome::Normal
    } else {
        GateOutcome::Virtual
    }
}

/// Builds a complete tour. The gate applies only when the ant has a
/// previous node and more than one candidate; a lone candidate is taken
/// without gating. Virtual outcomes matter only under SB-SAM, where the ant
/// retracts its latest step, penalizes the retracted edge and blocks the
/// node at the restored decision point. Once blocking exhausts a decision
/// point's candidates the ant stops gating for the rest of the tour, which
/// bounds the construction for any sensitivity, including 0.
pub fn construct_tour<R: Rng>(
    instance: &Instance,
    tau: &mut PheromoneMatrix,
    ant: &mut Ant,
    params: &ColonyParams,
    rng: &mut R,
) -> Permutation {
    let n = instance.n();
    assert_eq!(ant.n(), n, "ant and instance disagree on the node count");
    while !ant.is_complete() {
        let mut cands = ant.candidates();
        if cands.is_empty() {
            ant.clear_blocked();
            ant.gate_enabled = false;
            cands = ant.candidates();
        }
        if cands.len() > 1 && ant.previous().is_some() && ant.gate_enabled {
            let outcome = sam_gate(ant.psl(), rng);
            if params.algorithm == Algorithm::SbSam && outcome == GateOutcome::Virtual {
                let prev = ant.previous().expect("checked above");
                tau.step_back_update(prev, ant.current(), params);
                ant.step_back();
                continue;
            }
        }
        let next = select_from(instance, tau, ant.current(), &cands, params, rng);
        tau.local_update(ant.current(), next, params);
        ant.advance(next);
    }
    Permutation::from_order(ant.tour().to_vec()).expect("complete tour visits every node once")
}
