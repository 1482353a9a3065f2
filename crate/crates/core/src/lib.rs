//! Weak backdoor set detection for CNF formulas.
//!
//! A weak backdoor set of a formula `F` into a base class is a set of
//! variables `S` together with an assignment `tau` of `S` such that the
//! reduct `F[tau]` belongs to the class and is satisfiable. This crate
//! provides:
//!
//! * [`cnf`]: formulas, literals, assignments, the reduct, and [`dimacs`] I/O;
//! * [`classes`]: membership tests and polynomial-time solvers for the
//!   base classes (Horn, anti-Horn, Krom, 0-valid, 1-valid, forest,
//!   matched, implication chains);
//! * [`hitting_set`]: an exact bounded search tree for 3-Hitting Set;
//! * [`search`]: the backdoor detectors (Horn branching, Krom via hitting
//!   set, the generic clause-branching baseline, and a brute-force oracle);
//! * [`reductions`]: instance generators for the lower-bound constructions;
//! * [`generate`]: seeded random formula generation.
//!
//! Data-parallel work (root-level sibling branches, brute-force
//! enumeration, batch detection) runs on rayon when the `parallel`
//! feature is enabled and falls back to sequential loops otherwise. Either
//! way results and node counts are identical.

pub mod classes;
pub mod cnf;
pub mod dimacs;
pub mod error;
pub mod exec;
pub mod generate;
pub mod hitting_set;
pub mod incidence;
pub mod reductions;
pub mod search;

pub use classes::BaseClassId;
pub use cnf::{Assignment, Clause, CnfFormula, Evaluation, Literal, Variable};
pub use error::{Error, Result};
pub use exec::Execution;
pub use search::{Algorithm, BackdoorResult, SearchOptions, SearchStats};
