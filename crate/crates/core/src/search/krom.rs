//! Weak Krom-backdoor detection through 3-Hitting Set.
//!
//! Every ternary clause must lose a literal or be satisfied, so any weak
//! Krom-backdoor set hits the variable sets of all ternary clauses.
//! Conversely, once a hitting set `H` is assigned the reduct is Krom, and
//! if no assignment of `H` leaves a satisfiable reduct then `F` itself is
//! unsatisfiable. One hitting-set search and at most `2^|H|` leaf checks
//! therefore decide the question.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use crate::classes::{solve_member, BaseClassId};
use crate::cnf::{Assignment, CnfFormula, Variable};
use crate::error::{Error, Result};
use crate::exec;
use crate::hitting_set::{hs3_solve, HsInstance};

use super::engine::complete_model;
use super::{check_width, timed_out, BackdoorResult, SearchOptions, SearchStats};

/// Decides whether `formula` has a weak Krom-backdoor set of size at most `k`.
pub fn detect_krom(formula: &CnfFormula, k: usize) -> Result<BackdoorResult> {
    detect_krom_with(formula, k, &SearchOptions::default())
}

pub fn detect_krom_with(
    formula: &CnfFormula,
    k: usize,
    opts: &SearchOptions,
) -> Result<BackdoorResult> {
    check_width(formula)?;
    let start = Instant::now();
    let k = k.min(formula.num_variables());

    let sets = formula
        .clauses()
        .iter()
        .filter(|c| c.len() == 3)
        .map(|c| c.variables().map(Variable::id).collect::<Vec<u32>>());
    let inst = HsInstance::from_sets(sets)?;
    let hs = hs3_solve(&inst, k)?;
    let mut stats = SearchStats {
        nodes: hs.nodes,
        hs_calls: 1,
        hs_nodes: hs.nodes,
        ..SearchStats::default()
    };
    if !hs.found {
        stats.elapsed_s = start.elapsed().as_secs_f64();
        return Ok(BackdoorResult::not_found(stats));
    }

    let hitting: Vec<Variable> = hs.hitting_set.iter().map(|&e| Variable::new(e)).collect();
    stats.max_depth = hitting.len();
    // candidate i gives hitting[j] the j-th most significant bit of i
    let candidates: Vec<u64> = (0..1u64 << hitting.len()).collect();
    let stop = AtomicBool::new(false);
    let tau_of = |code: u64| {
        let h = hitting.len();
        Assignment::from_pairs(
            hitting
                .iter()
                .enumerate()
                .map(|(j, &v)| (v, (code >> (h - 1 - j)) & 1 == 1)),
        )
        .expect("distinct variables")
    };
    let first = exec::find_first(opts.execution, &candidates, |&code| {
        if stop.load(Ordering::Relaxed) {
            return None;
        }
        if timed_out(opts.deadline) {
            stop.store(true, Ordering::Relaxed);
            return None;
        }
        let tau = tau_of(code);
        let reduct = formula.reduct(&tau);
        debug_assert!(reduct.width() <= 2);
        solve_member(&reduct, BaseClassId::Krom).map(|sol| (tau, sol))
    });

    if stop.load(Ordering::Relaxed) {
        stats.elapsed_s = start.elapsed().as_secs_f64();
        return Err(Error::Timeout(stats));
    }
    let checks = first.as_ref().map_or(candidates.len(), |(i, _)| i + 1) as u64;
    stats.leaves = checks;
    stats.nodes += checks;
    stats.elapsed_s = start.elapsed().as_secs_f64();
    Ok(match first {
        Some((_, (tau, sol))) => {
            let model = complete_model(formula, &tau, &sol);
            BackdoorResult::found(tau, model, stats)
        }
        None => BackdoorResult::not_found(stats),
    })
}
