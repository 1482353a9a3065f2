//! Weak Horn-backdoor detection for 3CNF formulas.
//!
//! A non-Horn 3CNF clause is either all-positive with at least two
//! literals (C1) or has exactly two positive and one negative literal (C2).
//! At each node the search applies the first applicable rule:
//!
//! * R1: a C1 clause exists. Branch over every minimal assignment that makes
//!   it Horn: six for a ternary clause (`3T(k-1) + 3T(k-2)`), four for a
//!   binary one (`4T(k-1)`).
//! * R2: two C2 clauses share a variable. Branch over every minimal
//!   assignment that makes both Horn; there are eight sign patterns, listed
//!   in [`R2Case`], the worst being `T(k-1) + 16T(k-2)`.
//! * R3: the non-Horn part is a set of pairwise variable-disjoint C2
//!   clauses. Set one positive variable of the first such clause to 0 or 1.
//!   Not exhaustive, but sufficient: once the rest is Horn, any assignment to
//!   one positive variable per disjoint C2 clause makes the reduct Horn, so
//!   a backdoor of that size exists iff the formula is satisfiable.
//!
//! Overall growth is bounded by `((1 + sqrt 65) / 2)^k < 4.54^k`.

use crate::classes::BaseClassId;
use crate::cnf::{Clause, CnfFormula, Literal, Variable};
use crate::error::{Error, Result};

use super::engine::{self, canonical, Branch, BranchRule};
use super::recurrence::RecurrencePair;
use super::{BackdoorResult, SearchOptions};

/// Shape of a 3CNF clause with respect to Horn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HornClauseKind {
    /// Only positive literals, at least two.
    C1,
    /// Exactly two positive literals and one negative.
    C2,
    HornOk,
}

impl HornClauseKind {
    /// `None` for non-Horn clauses wider than 3CNF allows.
    pub fn of(clause: &Clause) -> Option<Self> {
        let pos = clause.positive_count();
        let neg = clause.negative_count();
        match (pos, neg) {
            (0 | 1, _) => Some(HornClauseKind::HornOk),
            (2 | 3, 0) => Some(HornClauseKind::C1),
            (2, 1) => Some(HornClauseKind::C2),
            _ => None,
        }
    }
}

/// Sign patterns of two C2 clauses that share variables. The names give
/// the number of shared variables and their signs in the two clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum R2Case {
    /// `{x, y, -z}`, `{x, y', -z'}`
    OneSharedPositive,
    /// `{-x, y, z}`, `{-x, y', z'}`
    OneSharedNegative,
    /// `{-x, y, z}`, `{x, y', -z'}`
    OneSharedMixed,
    /// `{x, y, -z}`, `{x, y, -z'}`
    TwoSharedPositive,
    /// `{x, -y, z}`, `{x, -y, z'}`
    TwoSharedSameSigns,
    /// `{x, -y, z}`, `{-x, y, z'}`
    TwoSharedSwapped,
    /// `{x, y, -z}`, `{x, -y, z'}`
    TwoSharedOneFlipped,
    /// `{x, y, -z}`, `{x, -y, z}`
    ThreeShared,
}

impl R2Case {
    pub const ALL: [R2Case; 8] = [
        R2Case::OneSharedPositive,
        R2Case::OneSharedNegative,
        R2Case::OneSharedMixed,
        R2Case::TwoSharedPositive,
        R2Case::TwoSharedSameSigns,
        R2Case::TwoSharedSwapped,
        R2Case::TwoSharedOneFlipped,
        R2Case::ThreeShared,
    ];

    pub fn recurrence(self) -> RecurrencePair {
        match self {
            R2Case::OneSharedPositive => RecurrencePair::new(2, 9),
            R2Case::OneSharedNegative => RecurrencePair::new(1, 16),
            R2Case::OneSharedMixed => RecurrencePair::new(1, 16),
            R2Case::TwoSharedPositive => RecurrencePair::new(4, 1),
            R2Case::TwoSharedSameSigns => RecurrencePair::new(3, 4),
            R2Case::TwoSharedSwapped => RecurrencePair::new(2, 9),
            R2Case::TwoSharedOneFlipped => RecurrencePair::new(3, 4),
            R2Case::ThreeShared => RecurrencePair::new(4, 1),
        }
    }

    /// A representative clause pair over variables `1..=6`.
    pub fn example(self) -> (Clause, Clause) {
        let (c, d): (&[i64], &[i64]) = match self {
            R2Case::OneSharedPositive => (&[1, 2, -3], &[1, 4, -5]),
            R2Case::OneSharedNegative => (&[-1, 2, 3], &[-1, 4, 5]),
            R2Case::OneSharedMixed => (&[-1, 2, 3], &[1, 4, -5]),
            R2Case::TwoSharedPositive => (&[1, 2, -3], &[1, 2, -4]),
            R2Case::TwoSharedSameSigns => (&[1, -2, 3], &[1, -2, 4]),
            R2Case::TwoSharedSwapped => (&[1, -2, 3], &[-1, 2, 4]),
            R2Case::TwoSharedOneFlipped => (&[1, 2, -3], &[1, -2, 4]),
            R2Case::ThreeShared => (&[1, 2, -3], &[1, -2, 3]),
        };
        (Clause::from_dimacs(c), Clause::from_dimacs(d))
    }
}

/// Recurrences of every rule the Horn search can apply.
pub fn rule_recurrences() -> Vec<RecurrencePair> {
    let mut all = vec![RecurrencePair::new(3, 3), RecurrencePair::new(4, 0)];
    all.extend(R2Case::ALL.iter().map(|c| c.recurrence()));
    all.push(RecurrencePair::new(2, 0));
    all
}

fn set(var: Variable, value: bool) -> Branch {
    vec![(var, value)]
}

/// Ways to make a C2 clause Horn through one of its own literals: a
/// positive literal by either value, a negative one only by satisfying it.
fn fixes(lit: Literal) -> Vec<(Variable, bool)> {
    if lit.is_positive() {
        vec![(lit.var(), false), (lit.var(), true)]
    } else {
        vec![(lit.var(), false)]
    }
}

fn fixes_of(lits: &[Literal]) -> Vec<(Variable, bool)> {
    lits.iter().flat_map(|&l| fixes(l)).collect()
}

fn product(left: &[(Variable, bool)], right: &[(Variable, bool)]) -> Vec<Branch> {
    left.iter()
        .flat_map(|&a| right.iter().map(move |&b| vec![a, b]))
        .collect()
}

fn with(first: (Variable, bool), rest: &[(Variable, bool)]) -> Vec<Branch> {
    rest.iter().map(|&b| vec![first, b]).collect()
}

/// Minimal Horn-making assignments for a C1 clause.
pub fn r1_branches(clause: &Clause) -> Vec<Branch> {
    let vars: Vec<Variable> = clause.variables().collect();
    let branches = match *vars.as_slice() {
        [x, y, z] => vec![
            set(x, true),
            set(y, true),
            set(z, true),
            vec![(x, false), (y, false)],
            vec![(x, false), (z, false)],
            vec![(y, false), (z, false)],
        ],
        [x, y] => vec![set(x, false), set(x, true), set(y, false), set(y, true)],
        _ => panic!("{clause} is not a C1 clause of a 3CNF formula"),
    };
    canonical(branches)
}

/// Minimal assignments making two intersecting C2 clauses Horn, together
/// with the sign pattern they fall under. `None` if the clauses are not
/// both C2 or are variable-disjoint.
pub fn r2_branches(c: &Clause, d: &Clause) -> Option<(R2Case, Vec<Branch>)> {
    if HornClauseKind::of(c) != Some(HornClauseKind::C2)
        || HornClauseKind::of(d) != Some(HornClauseKind::C2)
        || c == d
    {
        return None;
    }
    let shared: Vec<Variable> = c.variables().filter(|&v| d.literal_of(v).is_some()).collect();
    let sign = |cl: &Clause, v: Variable| cl.literal_of(v).expect("shared").is_positive();
    let rest = |cl: &Clause| -> Vec<Literal> {
        cl.literals()
            .iter()
            .copied()
            .filter(|l| !shared.contains(&l.var()))
            .collect()
    };

    let (case, branches) = match *shared.as_slice() {
        [x] => {
            match (sign(c, x), sign(d, x)) {
                (true, true) => {
                    // {x, y, -z}, {x, y', -z'}
                    let mut b = vec![set(x, false), set(x, true)];
                    b.extend(product(&fixes_of(&rest(c)), &fixes_of(&rest(d))));
                    (R2Case::OneSharedPositive, b)
                }
                (false, false) => {
                    // {-x, y, z}, {-x, y', z'}
                    let mut b = vec![set(x, false)];
                    b.extend(product(&fixes_of(&rest(c)), &fixes_of(&rest(d))));
                    (R2Case::OneSharedNegative, b)
                }
                (cs, _) => {
                    // neg = {-x, y, z}, pos = {x, y', -z'}
                    let (neg, pos) = if cs { (d, c) } else { (c, d) };
                    let neg_fixes = fixes_of(&rest(neg));
                    let mut b = vec![set(x, false)];
                    b.extend(with((x, true), &neg_fixes));
                    b.extend(product(&neg_fixes, &fixes_of(&rest(pos))));
                    (R2Case::OneSharedMixed, b)
                }
            }
        }
        [a, b] => {
            let (ca, cb, da, db) = (sign(c, a), sign(c, b), sign(d, a), sign(d, b));
            let z = fixes_of(&rest(c));
            let z2 = fixes_of(&rest(d));
            if ca && cb && da && db {
                // {x, y, -z}, {x, y, -z'}
                let mut br = vec![set(a, false), set(a, true), set(b, false), set(b, true)];
                br.extend(product(&z, &z2));
                (R2Case::TwoSharedPositive, br)
            } else if ca == da && cb == db {
                // {x, -y, z}, {x, -y, z'}
                let (x, y) = if ca { (a, b) } else { (b, a) };
                let mut br = vec![set(x, false), set(x, true), set(y, false)];
                br.extend(product(&z, &z2));
                (R2Case::TwoSharedSameSigns, br)
            } else if ca != da && cb != db {
                // {x, -y, z}, {-x, y, z'}: x is the shared variable positive in c
                let (x, y) = if ca { (a, b) } else { (b, a) };
                let mut br = vec![set(x, false), set(y, false), vec![(x, true), (y, true)]];
                br.extend(with((x, true), &z2));
                br.extend(with((y, true), &z));
                br.extend(product(&z, &z2));
                (R2Case::TwoSharedSwapped, br)
            } else {
                // {x, y, -z}, {x, -y, z'}: x positive in both, y flips
                let (x, y) = if ca == da { (a, b) } else { (b, a) };
                let (yp, yn) = if sign(c, y) { (c, d) } else { (d, c) };
                let z_neg = fixes_of(&rest(yp));
                let z_pos = fixes_of(&rest(yn));
                let mut br = vec![set(x, false), set(x, true), set(y, false)];
                br.extend(with((y, true), &z_pos));
                br.extend(product(&z_neg, &z_pos));
                (R2Case::TwoSharedOneFlipped, br)
            }
        }
        [_, _, _] => {
            // {x, y, -z}, {x, -y, z}
            let x = shared
                .iter()
                .copied()
                .find(|&v| sign(c, v) && sign(d, v))
                .expect("one variable is positive in both");
            let others: Vec<Variable> = shared.iter().copied().filter(|&v| v != x).collect();
            let (y, z) = (others[0], others[1]);
            let br = vec![
                set(x, false),
                set(x, true),
                set(y, false),
                set(z, false),
                vec![(y, true), (z, true)],
            ];
            (R2Case::ThreeShared, br)
        }
        _ => return None,
    };
    Some((case, canonical(branches)))
}

/// The R3 branch pair for a C2 clause: its lowest positive variable to 0 or 1.
pub fn r3_branches(clause: &Clause) -> Vec<Branch> {
    let x = clause
        .literals()
        .iter()
        .find(|l| l.is_positive())
        .expect("C2 clause has a positive literal")
        .var();
    vec![set(x, false), set(x, true)]
}

/// Which rule fires at a node, with its branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HornRule {
    R1(Clause),
    R2(Clause, Clause, R2Case),
    R3(Clause),
}

/// Selects the rule for a non-Horn 3CNF reduct: the first C1 clause for R1,
/// the lexicographically first intersecting C2 pair for R2, otherwise the
/// first C2 clause for R3. `None` if the formula is Horn.
pub fn select_rule(formula: &CnfFormula) -> Option<(HornRule, Vec<Branch>)> {
    let mut c2 = Vec::new();
    for clause in formula.clauses() {
        match HornClauseKind::of(clause) {
            Some(HornClauseKind::C1) => {
                return Some((HornRule::R1(clause.clone()), r1_branches(clause)))
            }
            Some(HornClauseKind::C2) => c2.push(clause),
            _ => {}
        }
    }
    for (i, c) in c2.iter().enumerate() {
        for d in &c2[i + 1..] {
            if c.shares_variable(d) {
                let (case, branches) = r2_branches(c, d).expect("intersecting C2 pair");
                return Some((HornRule::R2((*c).clone(), (*d).clone(), case), branches));
            }
        }
    }
    let first = c2.first()?;
    Some((HornRule::R3((*first).clone()), r3_branches(first)))
}

struct HornRules;

impl BranchRule for HornRules {
    fn branches(&self, reduct: &CnfFormula) -> Vec<Branch> {
        select_rule(reduct).map(|(_, b)| b).unwrap_or_default()
    }
}

/// Decides whether `formula` has a weak Horn-backdoor set of size at most `k`.
pub fn detect_horn(formula: &CnfFormula, k: usize) -> Result<BackdoorResult> {
    detect_horn_with(formula, k, &SearchOptions::default())
}

pub fn detect_horn_with(
    formula: &CnfFormula,
    k: usize,
    opts: &SearchOptions,
) -> Result<BackdoorResult> {
    let width = formula.width();
    if width > 3 {
        return Err(Error::WidthExceeded { width, max: 3 });
    }
    engine::run(formula, k, BaseClassId::Horn, &HornRules, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Variable {
        Variable::new(i)
    }

    #[test]
    fn clause_kinds() {
        let kind = |c: &[i64]| HornClauseKind::of(&Clause::from_dimacs(c));
        assert_eq!(kind(&[1, 2, 3]), Some(HornClauseKind::C1));
        assert_eq!(kind(&[1, 2]), Some(HornClauseKind::C1));
        assert_eq!(kind(&[1, 2, -3]), Some(HornClauseKind::C2));
        assert_eq!(kind(&[1, -2, -3]), Some(HornClauseKind::HornOk));
        assert_eq!(kind(&[]), Some(HornClauseKind::HornOk));
        assert_eq!(kind(&[1, 2, -3, -4]), None);
    }

    #[test]
    fn r1_ternary_order() {
        let b = r1_branches(&Clause::from_dimacs(&[1, 2, 3]));
        assert_eq!(
            b,
            vec![
                vec![(v(1), true)],
                vec![(v(2), true)],
                vec![(v(3), true)],
                vec![(v(1), false), (v(2), false)],
                vec![(v(1), false), (v(3), false)],
                vec![(v(2), false), (v(3), false)],
            ]
        );
    }

    #[test]
    fn branch_counts_match_recurrences() {
        for case in R2Case::ALL {
            let (c, d) = case.example();
            let (got_case, branches) = r2_branches(&c, &d).unwrap();
            assert_eq!(got_case, case);
            let singles = branches.iter().filter(|b| b.len() == 1).count() as u32;
            let pairs = branches.iter().filter(|b| b.len() == 2).count() as u32;
            assert_eq!(singles + pairs, branches.len() as u32);
            assert_eq!(RecurrencePair::new(singles, pairs), case.recurrence(), "{case:?}");
            // clause order must not matter
            let (swapped, mut again) = r2_branches(&d, &c).unwrap();
            assert_eq!(swapped, case);
            again.sort();
            let mut sorted = branches.clone();
            sorted.sort();
            assert_eq!(again, sorted);
        }
    }

    #[test]
    fn rule_priority() {
        let f = CnfFormula::from_dimacs(&[&[1, 2, -3], &[1, 4, -5], &[6, 7]]);
        assert!(matches!(select_rule(&f), Some((HornRule::R1(_), _))));
        let f = CnfFormula::from_dimacs(&[&[1, 2, -3], &[1, 4, -5], &[6, 7, -8]]);
        assert!(matches!(
            select_rule(&f),
            Some((HornRule::R2(_, _, R2Case::OneSharedPositive), _))
        ));
        let f = CnfFormula::from_dimacs(&[&[4, 2, -3], &[1, 5, -6]]);
        match select_rule(&f) {
            Some((HornRule::R3(c), b)) => {
                assert_eq!(c, Clause::from_dimacs(&[1, 5, -6]));
                assert_eq!(b, vec![vec![(v(1), false)], vec![(v(1), true)]]);
            }
            other => panic!("{other:?}"),
        }
        assert!(select_rule(&CnfFormula::from_dimacs(&[&[-1, 2]])).is_none());
    }

    #[test]
    fn single_c1_clause() {
        let f = CnfFormula::from_dimacs(&[&[1, 2, 3]]);
        let r = detect_horn(&f, 1).unwrap();
        assert!(r.found);
        assert_eq!(r.backdoor.len(), 1);
        assert!(!detect_horn(&f, 0).unwrap().found);
    }

    #[test]
    fn failed_leaf_then_success() {
        // {x, y, -z}, {z}: z = 0 falsifies {z}; x = 1 or y = 1 works
        let f = CnfFormula::from_dimacs(&[&[1, 2, -3], &[3]]);
        let r = detect_horn(&f, 1).unwrap();
        assert!(r.found);
        assert!(r.model.unwrap().satisfies(&f));
    }

    #[test]
    fn wide_formula_rejected() {
        let f = CnfFormula::from_dimacs(&[&[1, 2, 3, 4]]);
        assert!(matches!(detect_horn(&f, 2), Err(Error::WidthExceeded { width: 4, .. })));
    }
}
