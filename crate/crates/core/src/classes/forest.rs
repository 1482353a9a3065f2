use std::collections::VecDeque;

use crate::cnf::{Assignment, CnfFormula};
use crate::incidence::{IncidenceGraph, Vertex};

/// Satisfiability of an acyclic formula by dynamic programming over each
/// incidence tree.
///
/// Bottom-up, every variable vertex records for both of its values whether
/// its subtree can be satisfied, and every clause vertex records, per value
/// of its parent variable, whether it can be satisfied together with its
/// subtree. A top-down pass then picks concrete values.
pub(crate) fn solve(formula: &CnfFormula) -> Option<Assignment> {
    let g = IncidenceGraph::new(formula);
    let nv = g.variables().len();
    let nc = g.clauses().len();
    let id = |v: Vertex| match v {
        Vertex::Var(i) => i,
        Vertex::Clause(j) => nv + j,
    };

    let mut parent: Vec<Option<Vertex>> = vec![None; nv + nc];
    let mut seen = vec![false; nv + nc];
    let mut order = Vec::with_capacity(nv + nc);
    let mut roots = Vec::new();

    let all = (0..nv).map(Vertex::Var).chain((0..nc).map(Vertex::Clause));
    for root in all {
        if seen[id(root)] {
            continue;
        }
        seen[id(root)] = true;
        roots.push(root);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let next: Vec<Vertex> = match u {
                Vertex::Var(i) => g.clauses_of(i).iter().map(|&j| Vertex::Clause(j)).collect(),
                Vertex::Clause(j) => g.variables_of(j).iter().map(|&i| Vertex::Var(i)).collect(),
            };
            for w in next {
                if !seen[id(w)] {
                    seen[id(w)] = true;
                    parent[id(w)] = Some(u);
                    queue.push_back(w);
                }
            }
        }
    }

    let children = |u: Vertex| -> Vec<Vertex> {
        let p = parent[id(u)];
        match u {
            Vertex::Var(i) => g
                .clauses_of(i)
                .iter()
                .map(|&j| Vertex::Clause(j))
                .filter(|&w| Some(w) != p)
                .collect(),
            Vertex::Clause(j) => g
                .variables_of(j)
                .iter()
                .map(|&i| Vertex::Var(i))
                .filter(|&w| Some(w) != p)
                .collect(),
        }
    };
    // the value of child variable `i` that satisfies its literal in clause `j`
    let sat_value = |j: usize, i: usize| {
        g.clauses()[j]
            .literal_of(g.variables()[i])
            .expect("incident")
            .is_positive()
    };

    // var: feasible[value]; clause: ok[parent value] (both entries equal for roots)
    let mut table = vec![[false; 2]; nv + nc];
    for &u in order.iter().rev() {
        match u {
            Vertex::Var(i) => {
                let mut feasible = [true, true];
                for c in children(u) {
                    let ok = table[id(c)];
                    feasible[0] &= ok[0];
                    feasible[1] &= ok[1];
                }
                table[i] = feasible;
            }
            Vertex::Clause(j) => {
                let kids = children(u);
                let all_feasible = kids.iter().all(|&w| {
                    let t = table[id(w)];
                    t[0] || t[1]
                });
                let some_child_satisfies = kids.iter().any(|&w| {
                    let Vertex::Var(i) = w else { unreachable!() };
                    table[i][usize::from(sat_value(j, i))]
                });
                let mut ok = [false; 2];
                for b in [false, true] {
                    let by_parent = match parent[id(u)] {
                        Some(Vertex::Var(p)) => sat_value(j, p) == b,
                        _ => false,
                    };
                    ok[usize::from(b)] = all_feasible && (by_parent || some_child_satisfies);
                }
                table[nv + j] = ok;
            }
        }
    }

    for &root in &roots {
        let t = table[id(root)];
        let satisfiable = match root {
            Vertex::Var(_) => t[0] || t[1],
            Vertex::Clause(_) => t[0],
        };
        if !satisfiable {
            return None;
        }
    }

    let mut value: Vec<Option<bool>> = vec![None; nv];
    let pick = |t: [bool; 2]| !t[0];
    for &u in &order {
        match u {
            Vertex::Var(i) => {
                if value[i].is_none() {
                    value[i] = Some(pick(table[i]));
                }
            }
            Vertex::Clause(j) => {
                let by_parent = match parent[id(u)] {
                    Some(Vertex::Var(p)) => {
                        value[p].expect("parent assigned first") == sat_value(j, p)
                    }
                    _ => false,
                };
                let kids = children(u);
                let mut satisfied = by_parent;
                if !satisfied {
                    for &w in &kids {
                        let Vertex::Var(i) = w else { unreachable!() };
                        let s = sat_value(j, i);
                        if table[i][usize::from(s)] {
                            value[i] = Some(s);
                            satisfied = true;
                            break;
                        }
                    }
                }
                debug_assert!(satisfied);
                for w in kids {
                    let Vertex::Var(i) = w else { unreachable!() };
                    if value[i].is_none() {
                        value[i] = Some(pick(table[i]));
                    }
                }
            }
        }
    }

    Some(
        Assignment::from_pairs(
            g.variables()
                .iter()
                .zip(value)
                .map(|(&v, b)| (v, b.expect("every variable visited"))),
        )
        .expect("fresh map"),
    )
}
