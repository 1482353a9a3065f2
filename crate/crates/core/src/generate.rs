//! Seeded instance generators: uniform random k-CNF and a few structured
//! families that drive the Horn search into its expensive rules.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Clause, CnfFormula, Literal, Variable};
use crate::error::{Error, Result};

/// Parameters of a uniform random formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub n_vars: u32,
    pub n_clauses: usize,
    /// Exact clause width, 1 to 3.
    pub width: usize,
    pub seed: u64,
}

/// Number of distinct non-tautological clauses of width `w` over `n`
/// variables: `C(n, w) * 2^w`, saturating.
pub fn distinct_clauses(n: u32, w: usize) -> u128 {
    if w as u64 > u64::from(n) {
        return 0;
    }
    let mut binom: u128 = 1;
    for i in 0..w as u128 {
        binom = binom * (u128::from(n) - i) / (i + 1);
    }
    binom.saturating_mul(1 << w)
}

/// Samples `n_clauses` distinct clauses of exactly `width` literals,
/// uniformly without replacement. The same spec always yields the same
/// formula.
pub fn random_formula(spec: &GenSpec) -> Result<CnfFormula> {
    if !(1..=3).contains(&spec.width) {
        return Err(Error::InvalidArgument(format!(
            "clause width must be between 1 and 3, got {}",
            spec.width
        )));
    }
    let available = distinct_clauses(spec.n_vars, spec.width);
    if spec.n_clauses as u128 > available {
        return Err(Error::InvalidArgument(format!(
            "{} distinct clauses of width {} requested but only {available} exist over {} variables",
            spec.n_clauses, spec.width, spec.n_vars
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // dense requests: enumerate and pick, otherwise rejection sampling
    if spec.n_clauses as u128 * 2 > available {
        let all = all_clauses(spec.n_vars, spec.width);
        let picked = all.choose_multiple(&mut rng, spec.n_clauses).cloned();
        return Ok(CnfFormula::new(picked));
    }
    let vars: Vec<u32> = (1..=spec.n_vars).collect();
    let mut chosen = BTreeSet::new();
    while chosen.len() < spec.n_clauses {
        let lits = vars
            .choose_multiple(&mut rng, spec.width)
            .map(|&v| Literal::new(Variable::new(v), rng.gen_bool(0.5)));
        chosen.insert(Clause::new(lits).expect("distinct variables"));
    }
    Ok(CnfFormula::new(chosen))
}

fn all_clauses(n: u32, w: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    let mut stack: Vec<Literal> = Vec::new();
    fn rec(next: u32, n: u32, w: usize, stack: &mut Vec<Literal>, out: &mut Vec<Clause>) {
        if stack.len() == w {
            out.push(Clause::new(stack.iter().copied()).expect("distinct variables"));
            return;
        }
        for v in next..=n {
            for positive in [false, true] {
                stack.push(Literal::new(Variable::new(v), positive));
                rec(v + 1, n, w, stack, out);
                stack.pop();
            }
        }
    }
    rec(1, n, w, &mut stack, &mut out);
    out
}

/// `p` variable-disjoint clauses `{x, y, -z}`. The smallest weak
/// Horn-backdoor set has exactly `p` variables.
pub fn disjoint_c2(p: u32) -> CnfFormula {
    (0..p)
        .map(|i| Clause::from_dimacs(&[i64::from(3 * i + 1), i64::from(3 * i + 2), -i64::from(3 * i + 3)]))
        .collect()
}

/// `p` variable-disjoint pairs `{-x, y, z}`, `{-x, y', z'}`, the pattern
/// with the largest branching factor. Needs exactly `p` backdoor variables.
pub fn negative_pairs(p: u32) -> CnfFormula {
    (0..p)
        .flat_map(|i| {
            let b = i64::from(5 * i);
            [
                Clause::from_dimacs(&[-(b + 1), b + 2, b + 3]),
                Clause::from_dimacs(&[-(b + 1), b + 4, b + 5]),
            ]
        })
        .collect()
}

/// A mix of the non-Horn patterns (C1 triples, disjoint C2 clauses,
/// intersecting C2 pairs) on `blocks` disjoint variable blocks, tied
/// together by random Horn clauses. Each block needs one backdoor variable.
pub fn mixed_horn(blocks: u32, seed: u64) -> CnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses = Vec::new();
    let mut next = 1i64;
    let mut fresh = |count: i64| {
        let start = next;
        next += count;
        (start..start + count).collect::<Vec<i64>>()
    };
    for _ in 0..blocks {
        match rng.gen_range(0..4) {
            0 => {
                let v = fresh(3);
                clauses.push(Clause::from_dimacs(&[v[0], v[1], v[2]]));
            }
            1 => {
                let v = fresh(3);
                clauses.push(Clause::from_dimacs(&[v[0], v[1], -v[2]]));
            }
            2 => {
                let v = fresh(5);
                clauses.push(Clause::from_dimacs(&[-v[0], v[1], v[2]]));
                clauses.push(Clause::from_dimacs(&[-v[0], v[3], v[4]]));
            }
            _ => {
                let v = fresh(4);
                clauses.push(Clause::from_dimacs(&[v[0], v[1], -v[2]]));
                clauses.push(Clause::from_dimacs(&[v[0], -v[1], v[3]]));
            }
        }
    }
    let n = next - 1;
    for _ in 0..blocks {
        if n < 3 {
            break;
        }
        let mut vars: Vec<i64> = (1..=n).collect();
        vars.shuffle(&mut rng);
        // a goal clause or a definite implication, both Horn
        let head = if rng.gen_bool(0.5) { vars[2] } else { -vars[2] };
        clauses.push(Clause::from_dimacs(&[-vars[0], -vars[1], head]));
    }
    CnfFormula::new(clauses)
}
