//! The clause-branching baseline: take the first clause of the reduct that
//! violates the class predicate and branch over every minimal assignment
//! of its variables that satisfies it or shrinks it into the class. For a
//! 3-clause there are at most six such assignments, hence `6^k`.

use crate::classes::BaseClassId;
use crate::cnf::{Assignment, Clause, CnfFormula};
use crate::error::{Error, Result};

use super::engine::{self, canonical, Branch, BranchRule};
use super::{check_width, BackdoorResult, SearchOptions};

/// Minimal partial assignments over `var(clause)` after which the clause is
/// satisfied or admitted by `class`. Assignments that falsify the clause
/// are never useful for a weak backdoor and are left out.
pub fn fixing_assignments(clause: &Clause, class: BaseClassId) -> Vec<Branch> {
    let vars: Vec<_> = clause.variables().collect();
    let mut fixing: Vec<Branch> = Vec::new();
    // each variable is unassigned, 0 or 1
    let total = 3usize.pow(vars.len() as u32);
    for code in 1..total {
        let mut branch = Branch::new();
        let mut c = code;
        for &v in &vars {
            match c % 3 {
                1 => branch.push((v, false)),
                2 => branch.push((v, true)),
                _ => {}
            }
            c /= 3;
        }
        let tau = Assignment::from_pairs(branch.iter().copied()).expect("distinct variables");
        let fixes = match clause.reduce(&tau) {
            None => true,
            Some(rest) => !rest.is_empty() && class.admits_clause(&rest) == Some(true),
        };
        if fixes {
            fixing.push(branch);
        }
    }
    let minimal: Vec<Branch> = fixing
        .iter()
        .filter(|b| {
            !fixing
                .iter()
                .any(|s| s.len() < b.len() && s.iter().all(|p| b.contains(p)))
        })
        .cloned()
        .collect();
    canonical(minimal)
}

struct ClauseRule {
    class: BaseClassId,
}

impl BranchRule for ClauseRule {
    fn branches(&self, reduct: &CnfFormula) -> Vec<Branch> {
        reduct
            .clauses()
            .iter()
            .find(|c| self.class.admits_clause(c) == Some(false))
            .map(|c| fixing_assignments(c, self.class))
            .unwrap_or_default()
    }
}

/// Decides whether `formula` has a weak backdoor of size at most `k` into
/// a clause-defined class.
pub fn detect_generic(formula: &CnfFormula, k: usize, class: BaseClassId) -> Result<BackdoorResult> {
    detect_generic_with(formula, k, class, &SearchOptions::default())
}

pub fn detect_generic_with(
    formula: &CnfFormula,
    k: usize,
    class: BaseClassId,
    opts: &SearchOptions,
) -> Result<BackdoorResult> {
    if !class.is_clause_defined() {
        return Err(Error::NotClauseDefined { class });
    }
    check_width(formula)?;
    engine::run(formula, k, class, &ClauseRule { class }, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Variable;

    fn v(i: u32) -> Variable {
        Variable::new(i)
    }

    #[test]
    fn horn_fixes_of_a_positive_triple() {
        let b = fixing_assignments(&Clause::from_dimacs(&[1, 2, 3]), BaseClassId::Horn);
        assert_eq!(b.len(), 6);
        assert_eq!(b[0], vec![(v(1), true)]);
        assert_eq!(b[3], vec![(v(1), false), (v(2), false)]);
    }

    #[test]
    fn krom_fixes_any_single_variable() {
        let b = fixing_assignments(&Clause::from_dimacs(&[1, -2, 3]), BaseClassId::Krom);
        assert_eq!(b.len(), 6);
        assert!(b.iter().all(|x| x.len() == 1));
    }

    #[test]
    fn zeroval_fixes() {
        let b = fixing_assignments(&Clause::from_dimacs(&[1, 2]), BaseClassId::ZeroVal);
        assert_eq!(b, vec![vec![(v(1), true)], vec![(v(2), true)]]);
    }

    #[test]
    fn examples() {
        let g = CnfFormula::from_dimacs(&[&[1, 2]]);
        assert!(detect_generic(&g, 1, BaseClassId::ZeroVal).unwrap().found);
        let g = CnfFormula::from_dimacs(&[&[1, 2, 3]]);
        assert!(detect_generic(&g, 1, BaseClassId::Krom).unwrap().found);
        assert!(!detect_generic(&g, 0, BaseClassId::Krom).unwrap().found);
        let g = CnfFormula::from_dimacs(&[&[1], &[-1]]);
        for k in 0..3 {
            assert!(!detect_generic(&g, k, BaseClassId::Horn).unwrap().found);
        }
        assert!(matches!(
            detect_generic(&g, 1, BaseClassId::Match),
            Err(Error::NotClauseDefined { .. })
        ));
    }
}
