//! Ant colony metaheuristics for the linear ordering problem.
//!
//! The linear ordering problem asks for a simultaneous row/column permutation
//! of a square weight matrix that maximizes the sum of the entries above the
//! diagonal. This crate provides:
//!
//! - exact incremental evaluation of insert and exchange moves ([`problem`]),
//! - instance parsing, writing and random generation ([`io`]),
//! - a greedy 2-exchange starting heuristic ([`construction`]),
//! - best-improvement insert-move descent ([`local_search`]),
//! - two ant colony solvers ([`colony`]): ACS-IM, a pseudo-random-proportional
//!   colony with insert-move polishing, and SB-SAM, a variant whose ants carry
//!   a personal sensitivity level and may step back and block their latest
//!   choice,
//! - a benchmark harness with an exhaustive small-instance oracle and
//!   deviation-from-optimum reporting ([`harness`]).
//!
//! All randomized components draw from a single seeded generator per run, so
//! every result is reproducible from `(instance, params, seed)`.

pub mod colony;
pub mod construction;
pub mod error;
pub mod harness;
pub mod io;
pub mod local_search;
pub mod problem;

pub use colony::{run, Algorithm, ColonyParams, RunResult};
pub use error::{LopError, Result};
pub use problem::{Instance, Permutation, Weight};
