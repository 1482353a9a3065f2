use std::collections::{BTreeMap, VecDeque};

use crate::cnf::{Assignment, CnfFormula, Variable};

/// Minimal model of a Horn formula by forward chaining; variables never
/// forced to 1 stay 0. Returns `None` if some all-negative clause fires.
///
/// Each clause keeps a counter of negative literals whose variable is not
/// yet true; when it reaches zero the clause's positive literal is forced.
pub(crate) fn minimal_model(formula: &CnfFormula) -> Option<Assignment> {
    let vars: Vec<Variable> = formula.variables().into_iter().collect();
    let index: BTreeMap<Variable, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let clauses = formula.clauses();
    let mut pending = vec![0usize; clauses.len()];
    let mut head: Vec<Option<usize>> = vec![None; clauses.len()];
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); vars.len()];
    let mut value = vec![false; vars.len()];
    let mut queue = VecDeque::new();

    for (ci, clause) in clauses.iter().enumerate() {
        for lit in clause.literals() {
            let vi = index[&lit.var()];
            if lit.is_positive() {
                debug_assert!(head[ci].is_none(), "clause {clause} is not Horn");
                head[ci] = Some(vi);
            } else {
                pending[ci] += 1;
                watch[vi].push(ci);
            }
        }
        if pending[ci] == 0 {
            queue.push_back(ci);
        }
    }

    while let Some(ci) = queue.pop_front() {
        let vi = head[ci]?;
        if value[vi] {
            continue;
        }
        value[vi] = true;
        for &cj in &watch[vi] {
            pending[cj] -= 1;
            if pending[cj] == 0 {
                queue.push_back(cj);
            }
        }
    }

    Some(Assignment::from_pairs(vars.into_iter().zip(value)).expect("fresh map"))
}
