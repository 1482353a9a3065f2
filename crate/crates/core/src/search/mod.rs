//! Weak backdoor detection.
//!
//! Every detector answers the same decision question: is there an
//! assignment `tau` of at most `k` variables of `F` such that `F[tau]` lies
//! in the base class and is satisfiable? A positive answer carries the
//! witness `tau` and a total model of `F` extending it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::classes::{is_member, solve_member, BaseClassId};
use crate::cnf::{Assignment, CnfFormula, Variable};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

pub mod brute;
mod engine;
pub mod generic;
pub mod horn;
pub mod krom;
pub mod recurrence;

pub use brute::{detect_bruteforce, detect_bruteforce_with};
pub use engine::Branch;
pub use generic::{detect_generic, detect_generic_with};
pub use horn::{detect_horn, detect_horn_with, HornClauseKind, R2Case};
pub use krom::{detect_krom, detect_krom_with};
pub use recurrence::{branching_factor, RecurrencePair};

/// Which detector to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// `Branch` for Horn, `Hs` for Krom, `Generic` for the other
    /// clause-defined classes, `Brute` otherwise.
    #[default]
    Auto,
    /// The Horn branching rules.
    Branch,
    /// Hitting set followed by Krom leaf checks.
    Hs,
    /// One clause at a time, all minimal fixing assignments.
    Generic,
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Auto,
        Algorithm::Branch,
        Algorithm::Hs,
        Algorithm::Generic,
        Algorithm::Brute,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Branch => "branch",
            Algorithm::Hs => "hs",
            Algorithm::Generic => "generic",
            Algorithm::Brute => "brute",
        }
    }

    /// The concrete algorithm for `class`, or an error if the pairing is
    /// not supported.
    pub fn resolve(self, class: BaseClassId) -> Result<Algorithm> {
        let resolved = match self {
            Algorithm::Auto => match class {
                BaseClassId::Horn => Algorithm::Branch,
                BaseClassId::Krom => Algorithm::Hs,
                c if c.is_clause_defined() => Algorithm::Generic,
                _ => Algorithm::Brute,
            },
            other => other,
        };
        let ok = match resolved {
            Algorithm::Branch => class == BaseClassId::Horn,
            Algorithm::Hs => class == BaseClassId::Krom,
            Algorithm::Generic => class.is_clause_defined(),
            _ => true,
        };
        if ok {
            Ok(resolved)
        } else {
            Err(Error::InvalidArgument(format!(
                "algorithm `{}` does not support class `{class}`",
                resolved.token()
            )))
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.token() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm `{s}`")))
    }
}

/// Execution knobs shared by all detectors.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    pub execution: Execution,
    /// Searches stop with [`Error::Timeout`] soon after this instant.
    pub deadline: Option<Instant>,
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            execution: Execution::Sequential,
            deadline: None,
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }
}

/// Counters of one detection run.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub max_depth: usize,
    pub elapsed_s: f64,
    /// Hitting-set searches started (Krom detector only).
    #[serde(skip)]
    pub hs_calls: u64,
    /// Nodes of those hitting-set searches, included in `nodes`.
    #[serde(skip)]
    pub hs_nodes: u64,
}

/// Outcome of a detection run. Serializes as
/// `{"found", "backdoor", "witness", "model", "stats"}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BackdoorResult {
    pub found: bool,
    /// Sorted variables of the witness.
    pub backdoor: Vec<Variable>,
    pub witness: Assignment,
    /// A satisfying assignment of the whole formula, present iff found.
    pub model: Option<Assignment>,
    pub stats: SearchStats,
}

impl BackdoorResult {
    pub fn found(witness: Assignment, model: Assignment, stats: SearchStats) -> Self {
        BackdoorResult {
            found: true,
            backdoor: witness.domain().into_iter().collect(),
            witness,
            model: Some(model),
            stats,
        }
    }

    pub fn not_found(stats: SearchStats) -> Self {
        BackdoorResult {
            found: false,
            backdoor: Vec::new(),
            witness: Assignment::new(),
            model: None,
            stats,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

/// One detection problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackdoorQuery {
    pub formula: CnfFormula,
    pub k: usize,
    pub class: BaseClassId,
}

/// Checks that `witness` assigns exactly `backdoor`, which is a set of at
/// most `k` variables of `formula`, and that the reduct is a satisfiable
/// member of `class`.
pub fn verify_witness(
    formula: &CnfFormula,
    backdoor: &[Variable],
    witness: &Assignment,
    class: BaseClassId,
    k: usize,
) -> bool {
    let set: BTreeSet<Variable> = backdoor.iter().copied().collect();
    if set.len() != backdoor.len() || set.len() > k || witness.domain() != set {
        return false;
    }
    let vars = formula.variables();
    if !set.is_subset(&vars) {
        return false;
    }
    let reduct = formula.reduct(witness);
    is_member(&reduct, class) && solve_member(&reduct, class).is_some()
}

/// Runs the detector chosen by `algo` for `class`.
pub fn detect(
    formula: &CnfFormula,
    k: usize,
    class: BaseClassId,
    algo: Algorithm,
    opts: &SearchOptions,
) -> Result<BackdoorResult> {
    match algo.resolve(class)? {
        Algorithm::Branch => detect_horn_with(formula, k, opts),
        Algorithm::Hs => detect_krom_with(formula, k, opts),
        Algorithm::Generic => detect_generic_with(formula, k, class, opts),
        Algorithm::Brute => detect_bruteforce_with(formula, k, class, opts),
        Algorithm::Auto => unreachable!("resolved above"),
    }
}

/// Runs many independent queries, in parallel across queries when
/// `execution` allows. Each query itself runs sequentially.
pub fn detect_batch(
    queries: &[BackdoorQuery],
    algo: Algorithm,
    execution: Execution,
) -> Vec<Result<BackdoorResult>> {
    let opts = SearchOptions::sequential();
    exec::map(execution, queries, |q| detect(&q.formula, q.k, q.class, algo, &opts))
}

fn check_width(formula: &CnfFormula) -> Result<()> {
    match formula.width() {
        w if w > 3 => Err(Error::WidthExceeded { width: w, max: 3 }),
        _ => Ok(()),
    }
}

fn timed_out(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs(clauses)
    }

    fn tau(pairs: &[(u32, bool)]) -> Assignment {
        Assignment::from_pairs(pairs.iter().map(|&(v, b)| (Variable::new(v), b))).unwrap()
    }

    #[test]
    fn algorithm_resolution() {
        use BaseClassId::*;
        assert_eq!(Algorithm::Auto.resolve(Horn).unwrap(), Algorithm::Branch);
        assert_eq!(Algorithm::Auto.resolve(Krom).unwrap(), Algorithm::Hs);
        assert_eq!(Algorithm::Auto.resolve(ZeroVal).unwrap(), Algorithm::Generic);
        assert_eq!(Algorithm::Auto.resolve(Match).unwrap(), Algorithm::Brute);
        assert!(Algorithm::Hs.resolve(Horn).is_err());
        assert!(Algorithm::Branch.resolve(Krom).is_err());
        assert!(Algorithm::Generic.resolve(Forest).is_err());
        assert!(Algorithm::Brute.resolve(Chains).is_ok());
    }

    #[test]
    fn witness_verification() {
        let x = Variable::new(1);
        let g = f(&[&[1, 2, 3]]);
        assert!(verify_witness(&g, &[x], &tau(&[(1, true)]), BaseClassId::Horn, 1));
        assert!(!verify_witness(&g, &[x], &tau(&[(1, false)]), BaseClassId::Horn, 1));
        assert!(!verify_witness(&g, &[x], &tau(&[(1, true)]), BaseClassId::Horn, 0));
        let y = Variable::new(9);
        assert!(!verify_witness(&g, &[y], &tau(&[(9, true)]), BaseClassId::Horn, 1));
        assert!(!verify_witness(&g, &[], &tau(&[(1, true)]), BaseClassId::Horn, 1));
    }

    #[test]
    fn json_schema() {
        let r = detect(&f(&[&[1, 2, 3]]), 1, BaseClassId::Horn, Algorithm::Auto, &SearchOptions::default())
            .unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let obj = v.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 5);
        for key in ["found", "backdoor", "witness", "model", "stats"] {
            assert!(obj.contains_key(key), "{key}");
        }
        let stats = obj["stats"].as_object().unwrap();
        assert_eq!(stats.len(), 4);
        assert!(stats["elapsed_s"].is_f64());
        assert_eq!(v["backdoor"], serde_json::json!([1]));
        assert_eq!(v["witness"], serde_json::json!({"1": 1}));

        let none = BackdoorResult::not_found(SearchStats::default());
        let v: serde_json::Value = serde_json::from_str(&none.to_json()).unwrap();
        assert!(v["model"].is_null());
        assert_eq!(v["witness"], serde_json::json!({}));
    }

    #[test]
    fn batch_matches_single_runs() {
        let queries: Vec<BackdoorQuery> = [(&[&[1i64, 2, 3][..]][..], 1), (&[&[1, 2][..], &[-1][..], &[-2][..]][..], 2)]
            .iter()
            .flat_map(|(cl, k)| {
                BaseClassId::CLAUSE_DEFINED.into_iter().map(move |class| BackdoorQuery {
                    formula: CnfFormula::from_dimacs(cl),
                    k: *k,
                    class,
                })
            })
            .collect();
        for execution in [Execution::Sequential, Execution::Parallel] {
            let out = detect_batch(&queries, Algorithm::Auto, execution);
            for (q, r) in queries.iter().zip(out) {
                let single = detect(&q.formula, q.k, q.class, Algorithm::Auto, &SearchOptions::sequential()).unwrap();
                let r = r.unwrap();
                assert_eq!(r.found, single.found);
                assert_eq!(r.witness, single.witness);
                assert_eq!(r.stats.nodes, single.stats.nodes);
            }
        }
    }
}
