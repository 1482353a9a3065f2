//! Exhaustive reference implementations used to cross-check the library.
//! Deliberately naive: nothing here shares code with the solvers.

#![allow(dead_code)]

use std::collections::BTreeSet;

use backdoor_core::{Assignment, BaseClassId, Clause, CnfFormula, Literal, Variable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn vars_of(f: &CnfFormula) -> Vec<Variable> {
    f.variables().into_iter().collect()
}

pub fn assignment(vars: &[Variable], bits: u64) -> Assignment {
    Assignment::from_pairs(vars.iter().enumerate().map(|(i, &v)| (v, bits >> i & 1 == 1))).unwrap()
}

pub fn satisfies(f: &CnfFormula, tau: &Assignment) -> bool {
    f.clauses().iter().all(|c| {
        c.literals()
            .iter()
            .any(|l| tau.get(l.var()) == Some(l.is_positive()))
    })
}

pub fn brute_sat(f: &CnfFormula) -> bool {
    let vars = vars_of(f);
    (0..1u64 << vars.len()).any(|bits| satisfies(f, &assignment(&vars, bits)))
}

pub fn clause_ok(class: BaseClassId, c: &Clause) -> bool {
    let pos = c.literals().iter().filter(|l| l.is_positive()).count();
    let neg = c.len() - pos;
    match class {
        BaseClassId::Horn => pos <= 1,
        BaseClassId::AntiHorn => neg <= 1,
        BaseClassId::Krom => c.len() <= 2,
        BaseClassId::ZeroVal => neg >= 1,
        BaseClassId::OneVal => pos >= 1,
        _ => panic!("{class} is not clause-defined"),
    }
}

/// Cycle check on the incidence graph by repeatedly deleting leaves.
pub fn forest_oracle(f: &CnfFormula) -> bool {
    let mut edges: Vec<(usize, u32)> = f
        .clauses()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.variables().map(move |v| (i, v.id())).collect::<Vec<_>>())
        .collect();
    loop {
        let deg_c = |i: usize, e: &[(usize, u32)]| e.iter().filter(|x| x.0 == i).count();
        let deg_v = |v: u32, e: &[(usize, u32)]| e.iter().filter(|x| x.1 == v).count();
        let before = edges.len();
        let snapshot = edges.clone();
        edges.retain(|&(i, v)| deg_c(i, &snapshot) > 1 && deg_v(v, &snapshot) > 1);
        if edges.is_empty() {
            return true;
        }
        if edges.len() == before {
            return false;
        }
    }
}

/// Tries every injective choice of one variable per clause.
pub fn match_oracle(f: &CnfFormula) -> bool {
    fn go(clauses: &[Clause], used: &mut Vec<Variable>) -> bool {
        let Some((first, rest)) = clauses.split_first() else {
            return true;
        };
        for v in first.variables() {
            if !used.contains(&v) {
                used.push(v);
                if go(rest, used) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }
    go(f.clauses(), &mut Vec::new())
}

/// Unions of implication chains: every clause is a unit or `{-a, b}`,
/// every variable occurs at most once positively and at most once
/// negatively, and following `a -> b` never revisits a variable.
pub fn chains_oracle(f: &CnfFormula) -> bool {
    let mut pos = std::collections::BTreeMap::<Variable, usize>::new();
    let mut neg = std::collections::BTreeMap::<Variable, usize>::new();
    let mut next = std::collections::BTreeMap::<Variable, Variable>::new();
    for c in f.clauses() {
        let lits = c.literals();
        match lits {
            [_] => {}
            [a, b] if a.is_negative() && b.is_positive() => {
                next.insert(a.var(), b.var());
            }
            [a, b] if b.is_negative() && a.is_positive() => {
                next.insert(b.var(), a.var());
            }
            _ => return false,
        }
        for l in lits {
            let map = if l.is_positive() { &mut pos } else { &mut neg };
            *map.entry(l.var()).or_default() += 1;
        }
    }
    if pos.values().chain(neg.values()).any(|&n| n > 1) {
        return false;
    }
    for &start in next.keys() {
        let mut seen = BTreeSet::from([start]);
        let mut at = start;
        while let Some(&n) = next.get(&at) {
            if !seen.insert(n) {
                return false;
            }
            at = n;
        }
    }
    true
}

pub fn member_oracle(f: &CnfFormula, class: BaseClassId) -> bool {
    match class {
        BaseClassId::Forest => forest_oracle(f),
        BaseClassId::Match => match_oracle(f),
        BaseClassId::Chains => chains_oracle(f),
        c => f.clauses().iter().all(|cl| clause_ok(c, cl)),
    }
}

/// All subsets of `vars` with at most `k` elements.
pub fn subsets_up_to(vars: &[Variable], k: usize) -> Vec<Vec<Variable>> {
    let mut out = Vec::new();
    for mask in 0..1u64 << vars.len() {
        if (mask.count_ones() as usize) <= k {
            out.push(
                vars.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect(),
            );
        }
    }
    out
}

/// Whether some assignment of at most `k` variables of `f` leaves a
/// satisfiable member of `class`.
pub fn backdoor_oracle(f: &CnfFormula, k: usize, class: BaseClassId) -> bool {
    let vars = vars_of(f);
    subsets_up_to(&vars, k).iter().any(|s| {
        (0..1u64 << s.len()).any(|bits| {
            let r = f.reduct(&assignment(s, bits));
            member_oracle(&r, class) && brute_sat(&r)
        })
    })
}

pub fn hitting_set_oracle(sets: &[Vec<u32>], k: usize) -> bool {
    let elements: Vec<u32> = sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    (0..1u64 << elements.len()).any(|mask| {
        mask.count_ones() as usize <= k
            && sets.iter().all(|s| {
                s.iter()
                    .any(|e| mask >> elements.iter().position(|x| x == e).unwrap() & 1 == 1)
            })
    })
}

pub fn vertex_cover_oracle(n: u32, edges: &[(u32, u32)], k: usize) -> bool {
    (0..1u64 << n).any(|mask| {
        mask.count_ones() as usize <= k
            && edges
                .iter()
                .all(|&(u, v)| mask >> (u - 1) & 1 == 1 || mask >> (v - 1) & 1 == 1)
    })
}

/// Random formula with clauses of width `1..=max_width` over `n` variables.
pub fn random_cnf(rng: &mut ChaCha8Rng, n: u32, m: usize, max_width: usize) -> CnfFormula {
    let mut clauses = Vec::new();
    for _ in 0..m {
        let w = rng.gen_range(1..=max_width.min(n as usize));
        let mut vars: Vec<u32> = Vec::new();
        while vars.len() < w {
            let v = rng.gen_range(1..=n);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let lits = vars
            .into_iter()
            .map(|v| Literal::new(Variable::new(v), rng.gen_bool(0.5)));
        clauses.push(Clause::new(lits).unwrap());
    }
    CnfFormula::new(clauses)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
