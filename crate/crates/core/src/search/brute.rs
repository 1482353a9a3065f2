//! Exhaustive weak-backdoor search, the reference every other detector is
//! tested against. Works for every class and any clause width.
//!
//! Subsets of `var(F)` are tried by nondecreasing size, each size in
//! lexicographic order, and for each subset all of its assignments in
//! binary counting order. The first candidate whose reduct is a satisfiable
//! member of the class is returned. `nodes` counts the candidates examined
//! and `leaves` those whose reduct passed the membership test.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use crate::classes::{is_member, solve_member, BaseClassId};
use crate::cnf::{Assignment, CnfFormula, Variable};
use crate::error::{Error, Result};
use crate::exec;

use super::engine::complete_model;
use super::{timed_out, BackdoorResult, SearchOptions, SearchStats};

/// All `size`-element subsets of `vars`, lexicographically.
fn combinations(vars: &[Variable], size: usize) -> Vec<Vec<Variable>> {
    let n = vars.len();
    if size > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| vars[i]).collect());
        let Some(pos) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct SubsetOutcome {
    nodes: u64,
    leaves: u64,
    found: Option<(Assignment, Assignment)>,
}

fn try_subset(formula: &CnfFormula, subset: &[Variable], class: BaseClassId) -> SubsetOutcome {
    let s = subset.len();
    let mut out = SubsetOutcome {
        nodes: 0,
        leaves: 0,
        found: None,
    };
    for code in 0..1u64 << s {
        out.nodes += 1;
        let tau = Assignment::from_pairs(
            subset
                .iter()
                .enumerate()
                .map(|(j, &v)| (v, (code >> (s - 1 - j)) & 1 == 1)),
        )
        .expect("distinct variables");
        let reduct = formula.reduct(&tau);
        if !is_member(&reduct, class) {
            continue;
        }
        out.leaves += 1;
        if let Some(sol) = solve_member(&reduct, class) {
            out.found = Some((tau, sol));
            return out;
        }
    }
    out
}

/// Decides by exhaustive enumeration whether `formula` has a weak
/// backdoor set of size at most `k` into `class`.
pub fn detect_bruteforce(formula: &CnfFormula, k: usize, class: BaseClassId) -> Result<BackdoorResult> {
    detect_bruteforce_with(formula, k, class, &SearchOptions::default())
}

pub fn detect_bruteforce_with(
    formula: &CnfFormula,
    k: usize,
    class: BaseClassId,
    opts: &SearchOptions,
) -> Result<BackdoorResult> {
    let start = Instant::now();
    let vars: Vec<Variable> = formula.variables().into_iter().collect();
    let k = k.min(vars.len());
    let mut stats = SearchStats::default();

    for size in 0..=k {
        stats.max_depth = size;
        let subsets = combinations(&vars, size);
        let best = AtomicUsize::new(usize::MAX);
        let stop = AtomicBool::new(false);
        let indexed: Vec<(usize, &Vec<Variable>)> = subsets.iter().enumerate().collect();
        let outcomes = exec::map(opts.execution, &indexed, |&(i, subset)| {
            // past the leftmost success, or out of time
            if best.load(Ordering::Relaxed) < i || stop.load(Ordering::Relaxed) {
                return None;
            }
            if timed_out(opts.deadline) {
                stop.store(true, Ordering::Relaxed);
                return None;
            }
            let out = try_subset(formula, subset, class);
            if out.found.is_some() {
                best.fetch_min(i, Ordering::Relaxed);
            }
            Some(out)
        });

        let timed_out_here = stop.load(Ordering::Relaxed);
        for out in outcomes.into_iter().flatten() {
            stats.nodes += out.nodes;
            stats.leaves += out.leaves;
            if let Some((tau, sol)) = out.found {
                if timed_out_here {
                    break;
                }
                let model = complete_model(formula, &tau, &sol);
                stats.elapsed_s = start.elapsed().as_secs_f64();
                return Ok(BackdoorResult::found(tau, model, stats));
            }
        }
        if timed_out_here {
            stats.elapsed_s = start.elapsed().as_secs_f64();
            return Err(Error::Timeout(stats));
        }
    }
    stats.elapsed_s = start.elapsed().as_secs_f64();
    Ok(BackdoorResult::not_found(stats))
}
