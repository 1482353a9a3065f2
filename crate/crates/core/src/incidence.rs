//! The clause-variable incidence graph.

use std::collections::BTreeMap;

use crate::cnf::{Clause, CnfFormula, Variable};

/// A vertex of the incidence graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Var(usize),
    Clause(usize),
}

/// Bipartite graph with variable vertices (ascending id) and clause vertices
/// (formula order). Edges join a variable to each clause mentioning it.
#[derive(Clone, Debug, Default)]
pub struct IncidenceGraph {
    variables: Vec<Variable>,
    clauses: Vec<Clause>,
    /// `(variable index, clause index)`, sorted by clause then variable.
    edges: Vec<(usize, usize)>,
    var_adj: Vec<Vec<usize>>,
    clause_adj: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn new(formula: &CnfFormula) -> Self {
        let variables: Vec<Variable> = formula.variables().into_iter().collect();
        let index: BTreeMap<Variable, usize> =
            variables.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let clauses = formula.clauses().to_vec();
        let mut edges = Vec::new();
        let mut var_adj = vec![Vec::new(); variables.len()];
        let mut clause_adj = vec![Vec::new(); clauses.len()];
        for (ci, clause) in clauses.iter().enumerate() {
            for var in clause.variables() {
                let vi = index[&var];
                edges.push((vi, ci));
                var_adj[vi].push(ci);
                clause_adj[ci].push(vi);
            }
        }
        IncidenceGraph {
            variables,
            clauses,
            edges,
            var_adj,
            clause_adj,
        }
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.variables.len() + self.clauses.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Clause indices adjacent to the variable at `var_index`.
    pub fn clauses_of(&self, var_index: usize) -> &[usize] {
        &self.var_adj[var_index]
    }

    /// Variable indices adjacent to the clause at `clause_index`.
    pub fn variables_of(&self, clause_index: usize) -> &[usize] {
        &self.clause_adj[clause_index]
    }

    /// Whether the graph is a forest. A simple graph is acyclic iff no edge
    /// closes a cycle in a union-find pass.
    pub fn is_acyclic(&self) -> bool {
        let n_vars = self.variables.len();
        let mut parent: Vec<usize> = (0..self.num_vertices()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(vi, ci) in &self.edges {
            let a = find(&mut parent, vi);
            let b = find(&mut parent, n_vars + ci);
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}
