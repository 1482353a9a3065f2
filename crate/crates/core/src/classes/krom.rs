use std::collections::BTreeMap;

use crate::cnf::{Assignment, CnfFormula, Literal, Variable};

/// 2-SAT via strongly connected components of the implication graph.
///
/// Node `2i` is "variable i true", `2i + 1` is "variable i false". A clause
/// `{a, b}` contributes `!a -> b` and `!b -> a`; a unit `{a}` contributes
/// `!a -> a`. Unsatisfiable iff a variable shares a component with its
/// complement.
pub(crate) fn solve(formula: &CnfFormula) -> Option<Assignment> {
    if formula.contains_empty_clause() {
        return None;
    }
    let vars: Vec<Variable> = formula.variables().into_iter().collect();
    let index: BTreeMap<Variable, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let node = |lit: Literal| 2 * index[&lit.var()] + usize::from(lit.is_negative());

    let mut adj = vec![Vec::new(); 2 * vars.len()];
    for clause in formula.clauses() {
        match *clause.literals() {
            [a] => adj[node(a.complement())].push(node(a)),
            [a, b] => {
                adj[node(a.complement())].push(node(b));
                adj[node(b.complement())].push(node(a));
            }
            _ => unreachable!("clause {clause} is not Krom"),
        }
    }

    let comp = tarjan(&adj);
    let mut values = Vec::with_capacity(vars.len());
    for (i, &var) in vars.iter().enumerate() {
        let (t, f) = (comp[2 * i], comp[2 * i + 1]);
        if t == f {
            return None;
        }
        // Tarjan numbers components in reverse topological order, so the
        // literal whose component comes later topologically gets a smaller id.
        values.push((var, t < f));
    }
    Some(Assignment::from_pairs(values).expect("fresh map"))
}

/// Iterative Tarjan; returns the component id of every node.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (node, next edge position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("non-empty stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}
