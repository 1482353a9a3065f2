//! Lower-bound constructions as instance generators.
//!
//! * [`sat_to_chains`]: SAT to weak Chains-backdoor detection, by splitting
//!   long clauses into 3-clauses along a chain of fresh variables.
//! * [`hs_to_match`]: Hitting Set to weak Match-backdoor detection.
//! * [`vc_to_zeroval`]: Vertex Cover to weak 0-valid-backdoor detection.
//!
//! Fresh variables are numbered after the largest original id, one
//! contiguous block per split clause or per set, and recorded in the
//! output's [`VariableMap`].

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cnf::{Clause, CnfFormula, Literal, Variable};
use crate::error::{Error, Result};
use crate::hitting_set::HsInstance;

/// A simple undirected graph on positive vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<u32>,
    /// Stored as `(u, v)` with `u < v`.
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = u32>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<u32> = vertices.into_iter().collect();
        if vertices.contains(&0) {
            return Err(Error::InvalidGraph("vertex ids must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
            }
            for w in [u, v] {
                if !vertices.contains(&w) {
                    return Err(Error::InvalidGraph(format!("edge uses unknown vertex {w}")));
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertices,
            edges: set,
        })
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Whether `cover` touches every edge.
    pub fn is_vertex_cover(&self, cover: &BTreeSet<u32>) -> bool {
        self.edges
            .iter()
            .all(|(u, v)| cover.contains(u) || cover.contains(v))
    }
}

/// Parses the DIMACS edge format: `p edge <n> <m>` then `e <u> <v>` lines.
/// Vertices are `1..=n`.
pub fn parse_edge_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: idx + 1,
            message,
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["p", "edge" | "col", n, m] => {
                let n = n
                    .parse()
                    .map_err(|_| err(format!("invalid vertex count `{n}`")))?;
                let m = m
                    .parse()
                    .map_err(|_| err(format!("invalid edge count `{m}`")))?;
                if header.replace((n, m)).is_some() {
                    return Err(err("duplicate problem line".into()));
                }
            }
            ["e", u, v] => {
                let Some((n, _)) = header else {
                    return Err(err("edge before `p edge` header".into()));
                };
                let parse = |s: &str| -> Result<u32> {
                    match s.parse::<u32>() {
                        Ok(x) if (1..=n).contains(&x) => Ok(x),
                        _ => Err(err(format!("vertex `{s}` outside 1..={n}"))),
                    }
                };
                let (u, v) = (parse(u)?, parse(v)?);
                if u == v {
                    return Err(err(format!("self-loop on vertex {u}")));
                }
                edges.push((u, v));
            }
            _ => return Err(err(format!("unrecognized line `{line}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: 0,
            message: "missing `p edge` header".into(),
        });
    };
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header declares {m} edges but {} were read", edges.len()),
        });
    }
    Graph::new(1..=n, edges)
}

/// Writes the DIMACS edge format.
pub fn write_edge_graph(graph: &Graph) -> String {
    let n = graph.vertices.last().copied().unwrap_or(0);
    let mut out = format!("p edge {n} {}\n", graph.edges.len());
    for (u, v) in graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// Fresh variables introduced for one clause or set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreshBlock {
    /// 1-based position of the clause or set that produced the block.
    pub source: usize,
    pub variables: Vec<Variable>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VariableMap {
    pub original: Vec<Variable>,
    pub fresh: Vec<FreshBlock>,
}

impl VariableMap {
    pub fn num_variables(&self) -> usize {
        self.original.len() + self.fresh.iter().map(|b| b.variables.len()).sum::<usize>()
    }
}

/// A generated formula with the budget that makes the reduction exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionOutput {
    #[serde(skip)]
    pub formula: CnfFormula,
    pub k: usize,
    pub variable_map: VariableMap,
}

impl ReductionOutput {
    /// The JSON sidecar: `{"k": .., "variable_map": {"original": [..], "fresh": [..]}}`.
    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes")
    }
}

struct Fresh(u32);

impl Fresh {
    fn take(&mut self, count: usize) -> Vec<Variable> {
        (0..count)
            .map(|_| {
                self.0 += 1;
                Variable::new(self.0)
            })
            .collect()
    }
}

/// Replaces every clause `{x1, .., xl}` with `l > 3` by
/// `{x1, x2, y1}, {-y1, x3, y2}, .., {-y(l-3), x(l-1), xl}` over fresh
/// `y`s. `F` is satisfiable iff the result has a weak Chains-backdoor set
/// of size at most `|var(F)|`.
pub fn sat_to_chains(formula: &CnfFormula) -> ReductionOutput {
    let original: Vec<Variable> = formula.variables().into_iter().collect();
    let mut fresh = Fresh(formula.max_variable().map_or(0, Variable::id));
    let mut blocks = Vec::new();
    let mut clauses = Vec::new();
    for (i, clause) in formula.clauses().iter().enumerate() {
        let x = clause.literals();
        let l = x.len();
        if l <= 3 {
            clauses.push(clause.clone());
            continue;
        }
        let y = fresh.take(l - 3);
        let make = |lits: Vec<Literal>| Clause::new(lits).expect("fresh variables");
        clauses.push(make(vec![x[0], x[1], y[0].positive()]));
        for j in 0..l - 4 {
            clauses.push(make(vec![y[j].negative(), x[j + 2], y[j + 1].positive()]));
        }
        clauses.push(make(vec![y[l - 4].negative(), x[l - 2], x[l - 1]]));
        blocks.push(FreshBlock {
            source: i + 1,
            variables: y,
        });
    }
    ReductionOutput {
        formula: CnfFormula::new(clauses),
        k: original.len(),
        variable_map: VariableMap {
            original,
            fresh: blocks,
        },
    }
}

/// Builds `F0` (the implication cycle over all elements) plus, per set
/// `{x1, .., xq}`, the chain `{y1, x1}, {-y1, y2, x2}, .., {-y(q-1), xq}`.
/// The instance has a hitting set of size at most `k` iff the formula has
/// a weak Match-backdoor set of size at most `k`.
///
/// Needs at least two elements and sets of size at least two; singleton
/// sets must be forced beforehand (see [`HsInstance::force_singletons`]).
pub fn hs_to_match(inst: &HsInstance, k: usize) -> Result<ReductionOutput> {
    let elements: Vec<u32> = inst.elements().iter().copied().collect();
    if elements.len() < 2 {
        return Err(Error::InvalidInstance(
            "the element cycle needs at least two elements".into(),
        ));
    }
    if let Some(i) = inst.sets().iter().position(|s| s.len() < 2) {
        return Err(Error::InvalidInstance(format!(
            "set {} has fewer than two elements; force singletons first",
            i + 1
        )));
    }
    let x = |e: u32| Variable::new(e);
    let mut clauses = Vec::new();
    for (i, &e) in elements.iter().enumerate() {
        let next = elements[(i + 1) % elements.len()];
        clauses.push(Clause::new([x(e).negative(), x(next).positive()]).expect("distinct"));
    }
    let mut fresh = Fresh(*elements.last().expect("non-empty"));
    let mut blocks = Vec::new();
    for (i, set) in inst.sets().iter().enumerate() {
        let q = set.len();
        let y = fresh.take(q - 1);
        let make = |lits: Vec<Literal>| Clause::new(lits).expect("fresh variables");
        clauses.push(make(vec![y[0].positive(), x(set[0]).positive()]));
        for j in 1..q - 1 {
            clauses.push(make(vec![y[j - 1].negative(), y[j].positive(), x(set[j]).positive()]));
        }
        clauses.push(make(vec![y[q - 2].negative(), x(set[q - 1]).positive()]));
        blocks.push(FreshBlock {
            source: i + 1,
            variables: y,
        });
    }
    Ok(ReductionOutput {
        formula: CnfFormula::new(clauses),
        k,
        variable_map: VariableMap {
            original: elements.into_iter().map(x).collect(),
            fresh: blocks,
        },
    })
}

/// One clause `{u, v}` per edge. `G` has a vertex cover of size at most
/// `k` iff the formula has a weak 0-valid-backdoor set of size at most `k`.
pub fn vc_to_zeroval(graph: &Graph, k: usize) -> ReductionOutput {
    let clauses = graph.edges().map(|(u, v)| Clause::from_dimacs(&[i64::from(u), i64::from(v)]));
    ReductionOutput {
        formula: CnfFormula::new(clauses),
        k,
        variable_map: VariableMap {
            original: graph.vertices().iter().map(|&v| Variable::new(v)).collect(),
            fresh: Vec::new(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{is_member, BaseClassId};

    fn f(clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs(clauses)
    }

    #[test]
    fn split_of_a_four_clause() {
        let out = sat_to_chains(&f(&[&[1, 2, 3, 4]]));
        assert_eq!(out.formula, f(&[&[1, 2, 5], &[-5, 3, 4]]));
        assert_eq!(out.k, 4);
        assert_eq!(out.variable_map.fresh[0].variables, vec![Variable::new(5)]);
    }

    #[test]
    fn split_of_a_six_clause() {
        let out = sat_to_chains(&f(&[&[1, -2, 3, 4, -5, 6]]));
        assert_eq!(
            out.formula,
            f(&[&[1, -2, 7], &[-7, 3, 8], &[-8, 4, 9], &[-9, -5, 6]])
        );
    }

    #[test]
    fn short_clauses_kept() {
        let g = f(&[&[1, 2, 3]]);
        let out = sat_to_chains(&g);
        assert_eq!(out.formula, g);
        assert_eq!(out.k, 3);
        let g = f(&[&[1], &[-1]]);
        assert_eq!(sat_to_chains(&g).formula, g);
    }

    #[test]
    fn match_example() {
        let inst = HsInstance::new([1, 2, 3], [vec![1, 2, 3]]).unwrap();
        let out = hs_to_match(&inst, 1).unwrap();
        assert_eq!(
            out.formula,
            f(&[&[-1, 2], &[-2, 3], &[-3, 1], &[4, 1], &[-4, 5, 2], &[-5, 3]])
        );
        assert_eq!(out.formula.num_variables(), 5);
        assert_eq!(out.variable_map.num_variables(), 5);
        assert!(!is_member(&out.formula, BaseClassId::Match));
    }

    #[test]
    fn match_contract_errors() {
        let one = HsInstance::new([1], [vec![1]]).unwrap();
        assert!(hs_to_match(&one, 1).is_err());
        let single = HsInstance::new([1, 2], [vec![1]]).unwrap();
        assert!(hs_to_match(&single, 1).is_err());
    }

    #[test]
    fn vertex_cover_formula() {
        let tri = Graph::new(1..=3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let out = vc_to_zeroval(&tri, 2);
        assert_eq!(out.formula.len(), 3);
        assert!(is_member(&out.formula, BaseClassId::Krom));
        assert_eq!(out.k, 2);
        assert!(Graph::new(1..=2, [(1, 1)]).is_err());
    }

    #[test]
    fn edge_format() {
        let g = parse_edge_graph("c tri\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(write_edge_graph(&g), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
        assert!(parse_edge_graph("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_edge_graph("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_edge_graph("e 1 2\n").is_err());
        assert!(parse_edge_graph("p edge 2 1\ne 2 2\n").is_err());
    }

    #[test]
    fn sidecar_shape() {
        let out = sat_to_chains(&f(&[&[1, 2, 3, 4]]));
        let v: serde_json::Value = serde_json::from_str(&out.sidecar_json()).unwrap();
        assert_eq!(v["k"], 4);
        assert_eq!(v["variable_map"]["original"], serde_json::json!([1, 2, 3, 4]));
        assert_eq!(v["variable_map"]["fresh"][0]["variables"], serde_json::json!([5]));
    }
}
