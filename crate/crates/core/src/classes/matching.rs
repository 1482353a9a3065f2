use std::collections::{BTreeMap, VecDeque};

use crate::cnf::{Assignment, Clause, CnfFormula, Variable};
use crate::incidence::IncidenceGraph;

/// Injective map from clauses to one of their own variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchingCertificate {
    pairs: BTreeMap<Clause, Variable>,
}

impl MatchingCertificate {
    pub fn get(&self, clause: &Clause) -> Option<Variable> {
        self.pairs.get(clause).copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Clause, Variable)> {
        self.pairs.iter().map(|(c, &v)| (c, v))
    }
}

/// Maximum clause-variable matching (Hopcroft-Karp). Returns pairs
/// `(clause index, variable)` in clause order.
pub fn maximum_matching(formula: &CnfFormula) -> Vec<(usize, Variable)> {
    let graph = IncidenceGraph::new(formula);
    let n_left = graph.clauses().len();
    let n_right = graph.variables().len();
    const FREE: usize = usize::MAX;
    let mut match_left = vec![FREE; n_left];
    let mut match_right = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // BFS layering from free clauses
        let mut queue = VecDeque::new();
        for c in 0..n_left {
            if match_left[c] == FREE {
                dist[c] = 0;
                queue.push_back(c);
            } else {
                dist[c] = usize::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(c) = queue.pop_front() {
            for &v in graph.variables_of(c) {
                match match_right[v] {
                    FREE => reachable_free = true,
                    c2 if dist[c2] == usize::MAX => {
                        dist[c2] = dist[c] + 1;
                        queue.push_back(c2);
                    }
                    _ => {}
                }
            }
        }
        if !reachable_free {
            break;
        }
        for c in 0..n_left {
            if match_left[c] == FREE {
                augment(c, &graph, &mut match_left, &mut match_right, &mut dist);
            }
        }
    }

    match_left
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v != FREE)
        .map(|(c, &v)| (c, graph.variables()[v]))
        .collect()
}

/// Layered DFS for one augmenting path, iterative to bound stack depth.
fn augment(
    start: usize,
    graph: &IncidenceGraph,
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    const FREE: usize = usize::MAX;
    // (clause, next neighbour position)
    let mut path: Vec<(usize, usize)> = vec![(start, 0)];
    while let Some(&(c, pos)) = path.last() {
        let neighbours = graph.variables_of(c);
        if pos == neighbours.len() {
            dist[c] = usize::MAX;
            path.pop();
            continue;
        }
        path.last_mut().expect("non-empty").1 += 1;
        let v = neighbours[pos];
        let next = match_right[v];
        if next == FREE {
            // flip the path: each clause on it takes the variable it just tried
            for &(c, p) in path.iter().rev() {
                let v = graph.variables_of(c)[p - 1];
                match_left[c] = v;
                match_right[v] = c;
            }
            return true;
        }
        if dist[next] == dist[c] + 1 {
            path.push((next, 0));
        }
    }
    false
}

/// A certificate if every clause can be matched.
pub fn matching_certificate(formula: &CnfFormula) -> Option<MatchingCertificate> {
    let matching = maximum_matching(formula);
    if matching.len() != formula.len() {
        return None;
    }
    let clauses = formula.clauses();
    Some(MatchingCertificate {
        pairs: matching
            .into_iter()
            .map(|(c, v)| (clauses[c].clone(), v))
            .collect(),
    })
}

/// Sets each matched variable so that it satisfies its clause; other
/// variables are 0.
pub(crate) fn orient(formula: &CnfFormula, cert: &MatchingCertificate) -> Assignment {
    let mut tau = Assignment::new();
    for (clause, var) in cert.iter() {
        let lit = clause.literal_of(var).expect("matched variable occurs in clause");
        tau.assign(var, lit.is_positive()).expect("matching is injective");
    }
    for var in formula.variables() {
        if !tau.contains(var) {
            tau.assign(var, false).expect("unbound");
        }
    }
    tau
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matching_on_cycle() {
        let f = CnfFormula::from_dimacs(&[&[-1, 2], &[-2, 3], &[-3, 1]]);
        let cert = matching_certificate(&f).unwrap();
        assert_eq!(cert.len(), 3);
        let mut used: Vec<_> = cert.iter().map(|(_, v)| v).collect();
        used.sort();
        used.dedup();
        assert_eq!(used.len(), 3);
        let model = orient(&f, &cert);
        assert!(model.satisfies(&f));
    }

    #[test]
    fn needs_augmenting_path() {
        // greedy would match {1,2}->1 and then fail on {1}
        let f = CnfFormula::from_dimacs(&[&[1, 2], &[1], &[2, 3]]);
        let m = maximum_matching(&f);
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn deficient_formula() {
        let f = CnfFormula::from_dimacs(&[&[1], &[-1], &[1, 2], &[-1, -2]]);
        assert_eq!(maximum_matching(&f).len(), 2);
        assert!(matching_certificate(&f).is_none());
    }

    #[test]
    fn empty_clause_cannot_be_matched() {
        let f = CnfFormula::new([Clause::empty()]);
        assert!(matching_certificate(&f).is_none());
    }
}
