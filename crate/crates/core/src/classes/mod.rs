//! Base classes: membership recognizers and polynomial-time solvers.

mod chains;
mod forest;
mod horn;
mod krom;
mod matching;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cnf::{Assignment, Clause, CnfFormula};
use crate::error::{Error, Result};
use crate::incidence::IncidenceGraph;

pub use chains::{chain_decomposition, Chain, ChainDecomposition};
pub use matching::{matching_certificate, maximum_matching, MatchingCertificate};

/// The supported base classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseClassId {
    Horn,
    AntiHorn,
    Krom,
    ZeroVal,
    OneVal,
    Forest,
    Match,
    Chains,
}

impl BaseClassId {
    pub const ALL: [BaseClassId; 8] = [
        BaseClassId::Horn,
        BaseClassId::AntiHorn,
        BaseClassId::Krom,
        BaseClassId::ZeroVal,
        BaseClassId::OneVal,
        BaseClassId::Forest,
        BaseClassId::Match,
        BaseClassId::Chains,
    ];

    /// Classes whose membership is a per-clause predicate.
    pub const CLAUSE_DEFINED: [BaseClassId; 5] = [
        BaseClassId::Horn,
        BaseClassId::AntiHorn,
        BaseClassId::Krom,
        BaseClassId::ZeroVal,
        BaseClassId::OneVal,
    ];

    /// Lowercase token used on the command line and in reports.
    pub fn token(self) -> &'static str {
        match self {
            BaseClassId::Horn => "horn",
            BaseClassId::AntiHorn => "antihorn",
            BaseClassId::Krom => "krom",
            BaseClassId::ZeroVal => "0val",
            BaseClassId::OneVal => "1val",
            BaseClassId::Forest => "forest",
            BaseClassId::Match => "match",
            BaseClassId::Chains => "chains",
        }
    }

    pub fn is_clause_defined(self) -> bool {
        Self::CLAUSE_DEFINED.contains(&self)
    }

    /// The clause predicate of a clause-defined class, `None` otherwise.
    pub fn admits_clause(self, clause: &Clause) -> Option<bool> {
        let ok = match self {
            BaseClassId::Horn => clause.positive_count() <= 1,
            BaseClassId::AntiHorn => clause.negative_count() <= 1,
            BaseClassId::Krom => clause.len() <= 2,
            BaseClassId::ZeroVal => clause.negative_count() >= 1,
            BaseClassId::OneVal => clause.positive_count() >= 1,
            _ => return None,
        };
        Some(ok)
    }
}

impl fmt::Display for BaseClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for BaseClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaseClassId::ALL
            .into_iter()
            .find(|c| c.token() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class `{s}`")))
    }
}

impl Serialize for BaseClassId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// Membership outcome, with a certificate for the classes that have one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    No,
    Yes,
    Matched(MatchingCertificate),
    Chained(ChainDecomposition),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        !matches!(self, Membership::No)
    }
}

pub fn is_member(formula: &CnfFormula, class: BaseClassId) -> bool {
    if class.is_clause_defined() {
        return formula
            .clauses()
            .iter()
            .all(|c| class.admits_clause(c) == Some(true));
    }
    match class {
        BaseClassId::Forest => IncidenceGraph::new(formula).is_acyclic(),
        BaseClassId::Match => maximum_matching(formula).len() == formula.len(),
        BaseClassId::Chains => chain_decomposition(formula).is_some(),
        _ => unreachable!("clause-defined classes handled above"),
    }
}

/// Like [`is_member`], returning the matching or chain decomposition that
/// proves membership in `Match` or `Chains`.
pub fn membership(formula: &CnfFormula, class: BaseClassId) -> Membership {
    match class {
        BaseClassId::Match => {
            matching_certificate(formula).map_or(Membership::No, Membership::Matched)
        }
        BaseClassId::Chains => {
            chain_decomposition(formula).map_or(Membership::No, Membership::Chained)
        }
        _ if is_member(formula, class) => Membership::Yes,
        _ => Membership::No,
    }
}

/// Solves a formula known to lie in `class`. Returns a total assignment
/// over `var(F)` or `None` when the formula is unsatisfiable.
///
/// Fails with [`Error::NotInClass`] if the formula is not a member.
pub fn solve_in_class(formula: &CnfFormula, class: BaseClassId) -> Result<Option<Assignment>> {
    if !is_member(formula, class) {
        return Err(Error::NotInClass { class });
    }
    Ok(solve_member(formula, class))
}

/// Solver dispatch without the membership check.
pub(crate) fn solve_member(formula: &CnfFormula, class: BaseClassId) -> Option<Assignment> {
    match class {
        BaseClassId::Horn | BaseClassId::Chains => horn::minimal_model(formula),
        BaseClassId::AntiHorn => {
            let flipped = horn::minimal_model(&formula.flip_polarity())?;
            Some(Assignment::from_pairs(flipped.iter().map(|(v, b)| (v, !b))).expect("fresh map"))
        }
        BaseClassId::Krom => krom::solve(formula),
        BaseClassId::ZeroVal => Some(constant(formula, false)),
        BaseClassId::OneVal => Some(constant(formula, true)),
        BaseClassId::Match => {
            let cert = matching_certificate(formula).expect("member of Match");
            Some(matching::orient(formula, &cert))
        }
        BaseClassId::Forest => forest::solve(formula),
    }
}

fn constant(formula: &CnfFormula, value: bool) -> Assignment {
    Assignment::from_pairs(formula.variables().into_iter().map(|v| (v, value)))
        .expect("fresh map")
}

/// Clauses of `formula` violating the clause predicate of `class`.
pub fn nonmember_clauses(formula: &CnfFormula, class: BaseClassId) -> Result<Vec<Clause>> {
    if !class.is_clause_defined() {
        return Err(Error::NotClauseDefined { class });
    }
    Ok(formula
        .clauses()
        .iter()
        .filter(|c| class.admits_clause(c) == Some(false))
        .cloned()
        .collect())
}
