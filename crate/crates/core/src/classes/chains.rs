use std::collections::{BTreeMap, BTreeSet};

use crate::cnf::{Clause, CnfFormula, Variable};

/// One implication chain: `{x0}?, {-x0, x1}, ..., {-x(n-1), xn}, {-xn}?`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    /// `x0 .. xn` in implication order.
    pub variables: Vec<Variable>,
    /// Clauses in chain order, optional end units included.
    pub clauses: Vec<Clause>,
}

/// Partition of a formula into variable-disjoint implication chains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub chains: Vec<Chain>,
}

/// Decomposes `formula` into implication chains, or `None` if it is not a
/// variable-disjoint union of them.
///
/// A component may also consist of a single unit clause, or of a single
/// variable with both unit clauses; reducts of chains produce these.
pub fn chain_decomposition(formula: &CnfFormula) -> Option<ChainDecomposition> {
    let mut succ: BTreeMap<Variable, Variable> = BTreeMap::new();
    let mut pred: BTreeMap<Variable, Variable> = BTreeMap::new();
    let mut head_unit: BTreeSet<Variable> = BTreeSet::new();
    let mut tail_unit: BTreeSet<Variable> = BTreeSet::new();

    for clause in formula.clauses() {
        match *clause.literals() {
            [l] if l.is_positive() => {
                head_unit.insert(l.var());
            }
            [l] => {
                tail_unit.insert(l.var());
            }
            [a, b] if a.is_positive() != b.is_positive() => {
                let (from, to) = if a.is_negative() {
                    (a.var(), b.var())
                } else {
                    (b.var(), a.var())
                };
                if succ.insert(from, to).is_some() || pred.insert(to, from).is_some() {
                    return None;
                }
            }
            _ => return None,
        }
    }

    let mut visited: BTreeSet<Variable> = BTreeSet::new();
    let mut chains = Vec::new();
    for start in formula.variables() {
        if visited.contains(&start) || pred.contains_key(&start) {
            continue;
        }
        let mut variables = vec![start];
        visited.insert(start);
        let mut cur = start;
        while let Some(&next) = succ.get(&cur) {
            variables.push(next);
            visited.insert(next);
            cur = next;
        }
        let first = variables[0];
        let last = *variables.last().expect("non-empty");
        // units may only sit at the ends of the path
        if variables[1..].iter().any(|v| head_unit.contains(v))
            || variables[..variables.len() - 1].iter().any(|v| tail_unit.contains(v))
        {
            return None;
        }
        let mut clauses = Vec::with_capacity(variables.len() + 1);
        if head_unit.contains(&first) {
            clauses.push(Clause::new([first.positive()]).expect("unit"));
        }
        for w in variables.windows(2) {
            clauses.push(Clause::new([w[0].negative(), w[1].positive()]).expect("binary"));
        }
        if tail_unit.contains(&last) {
            clauses.push(Clause::new([last.negative()]).expect("unit"));
        }
        chains.push(Chain { variables, clauses });
    }

    // anything left over lies on a directed cycle
    if visited.len() != formula.num_variables() {
        return None;
    }
    Some(ChainDecomposition { chains })
}
