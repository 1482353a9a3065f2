//! Formulas, clauses, literals and partial assignments.
//!
//! Everything is stored in a canonical order: literals by variable id with
//! the negative literal first, clauses lexicographically by their literal
//! lists. Two formulas with the same clause set therefore compare equal and
//! iterate identically, which keeps every search below deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A propositional variable, identified by a 1-based id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Variable(u32);

impl Variable {
    /// # Panics
    ///
    /// Panics if `id` is zero.
    pub fn new(id: u32) -> Self {
        assert!(id >= 1, "variable ids are 1-based");
        Variable(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A variable or its negation. Ordered by variable, negative before positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: Variable,
    positive: bool,
}

impl Literal {
    pub fn new(var: Variable, positive: bool) -> Self {
        Literal { var, positive }
    }

    /// Builds a literal from a signed DIMACS integer. Returns `None` for 0.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 || value.unsigned_abs() > u64::from(u32::MAX) {
            return None;
        }
        Some(Literal::new(
            Variable::new(value.unsigned_abs() as u32),
            value > 0,
        ))
    }

    pub fn to_dimacs(self) -> i64 {
        let id = i64::from(self.var.id());
        if self.positive {
            id
        } else {
            -id
        }
    }

    pub fn var(self) -> Variable {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn is_negative(self) -> bool {
        !self.positive
    }

    pub fn complement(self) -> Self {
        Literal::new(self.var, !self.positive)
    }

    /// Whether setting the variable to `value` makes this literal true.
    pub fn satisfied_by(self, value: bool) -> bool {
        self.positive == value
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

/// A set of literals without complementary pairs. May be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Deduplicates the literals and rejects complementary pairs.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort_unstable();
        literals.dedup();
        if literals.windows(2).any(|w| w[0].var == w[1].var) {
            let clause = Clause { literals };
            return Err(Error::Tautology {
                clause: clause.to_string(),
            });
        }
        Ok(Clause { literals })
    }

    /// Builds a clause from signed DIMACS integers.
    ///
    /// # Panics
    ///
    /// Panics on a zero entry or a complementary pair; meant for literals
    /// written out in code and tests.
    pub fn from_dimacs(values: &[i64]) -> Self {
        let lits = values
            .iter()
            .map(|&v| Literal::from_dimacs(v).expect("non-zero literal"));
        Clause::new(lits).expect("clause without complementary literals")
    }

    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.literals.iter().map(|l| l.var)
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    /// The literal over `var`, if the clause mentions it.
    pub fn literal_of(&self, var: Variable) -> Option<Literal> {
        self.literals.iter().copied().find(|l| l.var == var)
    }

    pub fn positive_count(&self) -> usize {
        self.literals.iter().filter(|l| l.positive).count()
    }

    pub fn negative_count(&self) -> usize {
        self.literals.len() - self.positive_count()
    }

    pub fn satisfied_by(&self, tau: &Assignment) -> bool {
        self.literals
            .iter()
            .any(|l| tau.get(l.var).is_some_and(|v| l.satisfied_by(v)))
    }

    /// The clause under `tau`: `None` if satisfied, otherwise the clause with
    /// every literal over an assigned variable removed.
    pub fn reduce(&self, tau: &Assignment) -> Option<Clause> {
        let mut kept = Vec::with_capacity(self.literals.len());
        for &lit in &self.literals {
            match tau.get(lit.var) {
                Some(v) if lit.satisfied_by(v) => return None,
                Some(_) => {}
                None => kept.push(lit),
            }
        }
        Some(Clause { literals: kept })
    }

    pub fn shares_variable(&self, other: &Clause) -> bool {
        self.variables().any(|v| other.literal_of(v).is_some())
    }

    /// Signed DIMACS integers in canonical order.
    pub fn to_dimacs(&self) -> Vec<i64> {
        self.literals.iter().map(|l| l.to_dimacs()).collect()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, "}}")
    }
}

/// Outcome of evaluating a formula under a partial assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Satisfied,
    Falsified,
    Undetermined,
}

/// A CNF formula: a set of clauses, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Self {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        clauses.sort_unstable();
        clauses.dedup();
        CnfFormula { clauses }
    }

    /// Convenience constructor from signed DIMACS clause lists.
    ///
    /// # Panics
    ///
    /// Panics on zero entries or complementary pairs.
    pub fn from_dimacs(clauses: &[&[i64]]) -> Self {
        CnfFormula::new(clauses.iter().map(|c| Clause::from_dimacs(c)))
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains_empty_clause(&self) -> bool {
        // the empty clause sorts first
        self.clauses.first().is_some_and(Clause::is_empty)
    }

    /// `var(F)` in ascending order.
    pub fn variables(&self) -> BTreeSet<Variable> {
        self.clauses.iter().flat_map(Clause::variables).collect()
    }

    pub fn num_variables(&self) -> usize {
        self.variables().len()
    }

    pub fn max_variable(&self) -> Option<Variable> {
        self.clauses
            .iter()
            .flat_map(Clause::variables)
            .max()
    }

    /// Maximum clause size (0 for the empty formula).
    pub fn width(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    pub fn is_3cnf(&self) -> bool {
        self.width() <= 3
    }

    pub fn reduct(&self, tau: &Assignment) -> CnfFormula {
        if tau.is_empty() {
            return self.clone();
        }
        CnfFormula::new(self.clauses.iter().filter_map(|c| c.reduce(tau)))
    }

    pub fn evaluate(&self, tau: &Assignment) -> Evaluation {
        let mut undetermined = false;
        for clause in &self.clauses {
            match clause.reduce(tau) {
                None => {}
                Some(c) if c.is_empty() => return Evaluation::Falsified,
                Some(_) => undetermined = true,
            }
        }
        if undetermined {
            Evaluation::Undetermined
        } else {
            Evaluation::Satisfied
        }
    }

    /// Returns a copy with every literal complemented.
    pub fn flip_polarity(&self) -> CnfFormula {
        CnfFormula::new(self.clauses.iter().map(|c| Clause {
            literals: {
                let mut lits: Vec<Literal> = c.literals.iter().map(|l| l.complement()).collect();
                lits.sort_unstable();
                lits
            },
        }))
    }
}

impl FromIterator<Clause> for CnfFormula {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        CnfFormula::new(iter)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{clause}")?;
        }
        write!(f, "}}")
    }
}

/// A partial truth assignment. Rebinding a variable to a different value is
/// an error rather than an overwrite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    bindings: BTreeMap<Variable, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    /// Builds an assignment from `(variable, value)` pairs, failing on a
    /// conflicting repeat.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, bool)>) -> Result<Self> {
        let mut tau = Assignment::new();
        for (var, value) in pairs {
            tau.assign(var, value)?;
        }
        Ok(tau)
    }

    pub fn get(&self, var: Variable) -> Option<bool> {
        self.bindings.get(&var).copied()
    }

    pub fn contains(&self, var: Variable) -> bool {
        self.bindings.contains_key(&var)
    }

    /// Binds `var`. Binding it again to the same value is a no-op.
    pub fn assign(&mut self, var: Variable, value: bool) -> Result<()> {
        match self.bindings.get(&var) {
            Some(&existing) if existing != value => Err(Error::ConflictingBinding {
                var: var.id(),
                existing: u8::from(existing),
            }),
            Some(_) => Ok(()),
            None => {
                self.bindings.insert(var, value);
                Ok(())
            }
        }
    }

    pub fn extend(&mut self, other: &Assignment) -> Result<()> {
        for (&var, &value) in &other.bindings {
            self.assign(var, value)?;
        }
        Ok(())
    }

    pub(crate) fn unassign(&mut self, var: Variable) {
        self.bindings.remove(&var);
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// `var(tau)` in ascending order.
    pub fn domain(&self) -> BTreeSet<Variable> {
        self.bindings.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, bool)> + '_ {
        self.bindings.iter().map(|(&v, &b)| (v, b))
    }

    /// The assignment restricted to `vars`.
    pub fn restrict(&self, vars: &BTreeSet<Variable>) -> Assignment {
        Assignment {
            bindings: self
                .bindings
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(&v, &b)| (v, b))
                .collect(),
        }
    }

    pub fn satisfies(&self, formula: &CnfFormula) -> bool {
        formula.evaluate(self) == Evaluation::Satisfied
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (var, value)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{var}={}", u8::from(value))?;
        }
        write!(f, "}}")
    }
}

/// Serializes as `{"<var id>": 0|1, ...}`.
impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.bindings.len()))?;
        for (var, value) in self.iter() {
            map.serialize_entry(&var.id().to_string(), &u8::from(value))?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(id: u32) -> Variable {
        Variable::new(id)
    }

    fn tau(pairs: &[(u32, bool)]) -> Assignment {
        Assignment::from_pairs(pairs.iter().map(|&(id, b)| (v(id), b))).unwrap()
    }

    #[test]
    fn complement_is_an_involution() {
        let lit = Literal::from_dimacs(-4).unwrap();
        assert_eq!(lit.complement().complement(), lit);
        assert_eq!(lit.complement().to_dimacs(), 4);
    }

    #[test]
    fn literal_order_puts_negative_first() {
        let mut lits = [v(2).positive(), v(1).positive(), v(2).negative()];
        lits.sort();
        assert_eq!(
            lits.iter().map(|l| l.to_dimacs()).collect::<Vec<_>>(),
            vec![1, -2, 2]
        );
    }

    #[test]
    fn clause_rejects_complementary_pair() {
        let err = Clause::new([v(1).positive(), v(1).negative()]).unwrap_err();
        assert!(matches!(err, Error::Tautology { .. }));
    }

    #[test]
    fn clause_dedups_literals() {
        let c = Clause::new([v(3).positive(), v(3).positive(), v(1).negative()]).unwrap();
        assert_eq!(c.to_dimacs(), vec![-1, 3]);
    }

    #[test]
    fn formula_merges_duplicate_clauses() {
        let f = CnfFormula::from_dimacs(&[&[1, 2], &[2, 1], &[-3]]);
        assert_eq!(f.len(), 2);
        assert_eq!(f.width(), 2);
        assert_eq!(f.num_variables(), 3);
    }

    #[test]
    fn reduct_removes_false_literal() {
        // F = {{x, y, -z}}, z = 1
        let f = CnfFormula::from_dimacs(&[&[1, 2, -3]]);
        assert_eq!(f.reduct(&tau(&[(3, true)])), CnfFormula::from_dimacs(&[&[1, 2]]));
    }

    #[test]
    fn reduct_drops_satisfied_clause() {
        let f = CnfFormula::from_dimacs(&[&[1, 2, -3]]);
        assert!(f.reduct(&tau(&[(1, true)])).is_empty());
    }

    #[test]
    fn reduct_can_produce_empty_clause() {
        let f = CnfFormula::from_dimacs(&[&[1]]);
        let r = f.reduct(&tau(&[(1, false)]));
        assert_eq!(r.len(), 1);
        assert!(r.contains_empty_clause());
    }

    #[test]
    fn reduct_ignores_foreign_bindings() {
        let f = CnfFormula::from_dimacs(&[&[1, 2]]);
        assert_eq!(f.reduct(&tau(&[(9, true)])), f);
    }

    #[test]
    fn evaluate_three_ways() {
        let f = CnfFormula::from_dimacs(&[&[1, -2]]);
        assert_eq!(f.evaluate(&tau(&[(1, true)])), Evaluation::Satisfied);
        let g = CnfFormula::from_dimacs(&[&[1], &[-1]]);
        assert_eq!(g.evaluate(&tau(&[(1, false)])), Evaluation::Falsified);
        let h = CnfFormula::from_dimacs(&[&[1, 2]]);
        assert_eq!(h.evaluate(&Assignment::new()), Evaluation::Undetermined);
    }

    #[test]
    fn assignment_conflict_is_an_error() {
        let mut t = tau(&[(1, true)]);
        assert!(t.assign(v(1), true).is_ok());
        assert!(matches!(
            t.assign(v(1), false),
            Err(Error::ConflictingBinding { var: 1, existing: 1 })
        ));
        assert_eq!(t.get(v(1)), Some(true));
    }

    #[test]
    fn assignment_serializes_as_map() {
        let t = tau(&[(2, false), (10, true)]);
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"2":0,"10":1}"#);
    }

    #[test]
    fn flip_polarity_round_trips() {
        let f = CnfFormula::from_dimacs(&[&[1, -2, 3], &[-1]]);
        assert_eq!(f.flip_polarity().flip_polarity(), f);
        assert!(f.flip_polarity().clauses().contains(&Clause::from_dimacs(&[1])));
    }
}
