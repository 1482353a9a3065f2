//! Bounded search tree over partial assignments, shared by the Horn and
//! generic detectors.
//!
//! A node holds an assignment `tau` and the remaining budget. It computes
//! `F[tau]` from scratch; if the reduct is in the target class the node is a
//! leaf and the class solver decides it. Otherwise the branch rule proposes
//! extensions of `tau`, each costing the number of variables it assigns.
//!
//! With parallel execution the children of the root run concurrently.
//! Children to the right of the leftmost success are cancelled and their
//! counts discarded, so the reported witness and node counts equal those of
//! the sequential left-to-right traversal.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use crate::classes::{is_member, solve_member, BaseClassId};
use crate::cnf::{Assignment, CnfFormula, Variable};
use crate::error::{Error, Result};
use crate::exec;

use super::{BackdoorResult, SearchOptions, SearchStats};

/// A set of `(variable, value)` bindings added by one branch.
pub type Branch = Vec<(Variable, bool)>;

/// Proposes the branches at a node whose reduct lies outside the class.
pub(crate) trait BranchRule: Sync {
    fn branches(&self, reduct: &CnfFormula) -> Vec<Branch>;
}

/// Sorts bindings inside each branch by variable, then orders branches by
/// size, then lexicographically by `(variable, value)` with 0 before 1.
pub(crate) fn canonical(mut branches: Vec<Branch>) -> Vec<Branch> {
    for b in &mut branches {
        b.sort_unstable();
    }
    branches.sort_unstable_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    branches.dedup();
    branches
}

/// Deadline checks happen once per this many nodes.
const DEADLINE_STRIDE: u64 = 1024;

#[derive(Clone, Copy, Debug, Default)]
struct Counters {
    nodes: u64,
    leaves: u64,
    max_depth: usize,
}

impl Counters {
    fn absorb(&mut self, other: Counters) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

enum Stop {
    Timeout,
    Cancelled,
}

struct Found {
    witness: Assignment,
    model: Assignment,
}

struct Walker<'a, R> {
    formula: &'a CnfFormula,
    class: BaseClassId,
    rule: &'a R,
    deadline: Option<Instant>,
    /// (leftmost successful root child so far, this walker's child index)
    cancel: Option<(&'a AtomicUsize, usize)>,
    counters: Counters,
}

impl<R: BranchRule> Walker<'_, R> {
    fn node(&mut self, tau: &mut Assignment, budget: usize, depth: usize) -> Result<Option<Found>, Stop> {
        self.counters.nodes += 1;
        self.counters.max_depth = self.counters.max_depth.max(depth);
        if let Some((best, me)) = self.cancel {
            if best.load(Ordering::Relaxed) < me {
                return Err(Stop::Cancelled);
            }
        }
        if self.counters.nodes.is_multiple_of(DEADLINE_STRIDE) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Stop::Timeout);
                }
            }
        }

        let reduct = self.formula.reduct(tau);
        if is_member(&reduct, self.class) {
            self.counters.leaves += 1;
            return Ok(solve_member(&reduct, self.class).map(|sol| self.found(tau, &sol)));
        }
        if budget == 0 {
            return Ok(None);
        }
        for branch in self.rule.branches(&reduct) {
            if branch.len() > budget {
                continue;
            }
            if let Some(found) = self.descend(tau, &branch, budget, depth)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn descend(
        &mut self,
        tau: &mut Assignment,
        branch: &Branch,
        budget: usize,
        depth: usize,
    ) -> Result<Option<Found>, Stop> {
        for &(var, value) in branch {
            debug_assert!(!tau.contains(var), "branch reassigns {var}");
            tau.assign(var, value).expect("unassigned variable");
        }
        let result = self.node(tau, budget - branch.len(), depth + 1);
        for &(var, _) in branch {
            tau.unassign(var);
        }
        result
    }

    fn found(&self, tau: &Assignment, solution: &Assignment) -> Found {
        Found {
            witness: tau.clone(),
            model: complete_model(self.formula, tau, solution),
        }
    }
}

/// `tau` joined with a model of the reduct; remaining variables of the
/// formula (those in clauses `tau` already satisfies) default to 0.
pub(crate) fn complete_model(
    formula: &CnfFormula,
    tau: &Assignment,
    solution: &Assignment,
) -> Assignment {
    let mut model = tau.clone();
    model.extend(solution).expect("reduct model avoids var(tau)");
    for var in formula.variables() {
        if !model.contains(var) {
            model.assign(var, false).expect("unbound");
        }
    }
    model
}

/// Runs the bounded search from the empty assignment.
pub(crate) fn run<R: BranchRule>(
    formula: &CnfFormula,
    k: usize,
    class: BaseClassId,
    rule: &R,
    opts: &SearchOptions,
) -> Result<BackdoorResult> {
    let start = Instant::now();
    let k = k.min(formula.num_variables());
    let (outcome, counters) = if opts.execution.is_parallel() && k > 0 {
        root_parallel(formula, k, class, rule, opts)
    } else {
        let mut w = Walker {
            formula,
            class,
            rule,
            deadline: opts.deadline,
            cancel: None,
            counters: Counters::default(),
        };
        let outcome = w.node(&mut Assignment::new(), k, 0);
        (outcome, w.counters)
    };

    let mut stats = SearchStats {
        nodes: counters.nodes,
        leaves: counters.leaves,
        max_depth: counters.max_depth,
        elapsed_s: start.elapsed().as_secs_f64(),
        ..SearchStats::default()
    };
    match outcome {
        Ok(Some(found)) => Ok(BackdoorResult::found(found.witness, found.model, stats)),
        Ok(None) => Ok(BackdoorResult::not_found(stats)),
        Err(_) => {
            stats.elapsed_s = start.elapsed().as_secs_f64();
            Err(Error::Timeout(stats))
        }
    }
}

fn root_parallel<R: BranchRule>(
    formula: &CnfFormula,
    k: usize,
    class: BaseClassId,
    rule: &R,
    opts: &SearchOptions,
) -> (Result<Option<Found>, Stop>, Counters) {
    let mut root = Counters {
        nodes: 1,
        ..Counters::default()
    };
    let reduct = formula.reduct(&Assignment::new());
    if is_member(&reduct, class) {
        root.leaves = 1;
        let outcome = solve_member(&reduct, class).map(|sol| Found {
            witness: Assignment::new(),
            model: complete_model(formula, &Assignment::new(), &sol),
        });
        return (Ok(outcome), root);
    }
    let children: Vec<Branch> = rule
        .branches(&reduct)
        .into_iter()
        .filter(|b| b.len() <= k)
        .collect();

    let best = AtomicUsize::new(usize::MAX);
    let indexed: Vec<(usize, &Branch)> = children.iter().enumerate().collect();
    let results = exec::map(opts.execution, &indexed, |&(i, branch)| {
        let mut w = Walker {
            formula,
            class,
            rule,
            deadline: opts.deadline,
            cancel: Some((&best, i)),
            counters: Counters::default(),
        };
        let mut tau = Assignment::new();
        let outcome = w.descend(&mut tau, branch, k, 0);
        if matches!(outcome, Ok(Some(_))) {
            best.fetch_min(i, Ordering::Relaxed);
        }
        (outcome, w.counters)
    });

    let mut timed_out = false;
    for (outcome, counters) in results {
        match outcome {
            Ok(Some(found)) if !timed_out => {
                root.absorb(counters);
                return (Ok(Some(found)), root);
            }
            Ok(_) => root.absorb(counters),
            Err(Stop::Timeout) => {
                timed_out = true;
                root.absorb(counters);
            }
            // only children right of a success get cancelled
            Err(Stop::Cancelled) => {}
        }
    }
    let outcome = if timed_out { Err(Stop::Timeout) } else { Ok(None) };
    (outcome, root)
}
