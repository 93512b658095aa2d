use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::program::Program;
use crate::lattice::Scope;

/// Dependency graph: an edge `(p, q)` whenever `p` occurs in the body of a
/// rule with head `q`. Truth constants contribute nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepGraph {
    atoms: usize,
    edges: BTreeSet<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl DepGraph {
    pub fn of(program: &Program) -> Self {
        let n = program.atom_count();
        let edges: BTreeSet<(usize, usize)> = program
            .rules()
            .iter()
            .flat_map(|r| r.body_atoms().map(move |b| (b, r.head)))
            .collect();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(p, q) in &edges {
            succ[p].push(q);
            pred[q].push(p);
        }
        DepGraph {
            atoms: n,
            edges,
            succ,
            pred,
        }
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// Atoms whose rules use `atom` directly.
    pub fn dependents(&self, atom: usize) -> &[usize] {
        &self.succ[atom]
    }

    /// Atoms used directly by the rules for `atom`.
    pub fn dependencies(&self, atom: usize) -> &[usize] {
        &self.pred[atom]
    }

    /// Everything `atoms` depend on, transitively, including `atoms` themselves.
    pub fn down_closure(&self, atoms: &Scope) -> Scope {
        self.closure(atoms, &self.pred)
    }

    /// Everything depending on `atoms`, transitively, including `atoms` themselves.
    pub fn up_closure(&self, atoms: &Scope) -> Scope {
        self.closure(atoms, &self.succ)
    }

    fn closure(&self, start: &Scope, adj: &[Vec<usize>]) -> Scope {
        let mut seen = vec![false; self.atoms];
        let mut stack: Vec<usize> = start.positions().to_vec();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.atoms).filter(|&v| seen[v]).collect()
    }

    /// Strongly connected components, each sorted, listed in a dependency
    /// respecting order (a component comes after everything it depends on).
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.atoms, self.edges.len());
        let nodes: Vec<NodeIndex> = (0..self.atoms).map(|_| g.add_node(())).collect();
        for &(p, q) in &self.edges {
            g.add_edge(nodes[p], nodes[q], ());
        }
        // tarjan_scc yields components in reverse topological order of the
        // edge direction; edges run from dependency to dependent.
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        comps.reverse();
        comps
    }

    /// Connected components of the undirected graph induced on `atoms`,
    /// ordered by smallest member.
    pub fn components_within(&self, atoms: &Scope) -> Vec<Scope> {
        let mut comp = vec![usize::MAX; self.atoms];
        let mut out = Vec::new();
        for &start in atoms.positions() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in self.succ[v].iter().chain(&self.pred[v]) {
                    if comp[w] == usize::MAX && atoms.contains(w) {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            out.push(Scope::new(members));
        }
        out
    }

    /// Some atom of `to` depends (transitively) on some atom of `from`.
    pub fn reaches(&self, from: &Scope, to: &Scope) -> bool {
        self.up_closure(from)
            .positions()
            .iter()
            .any(|&v| to.contains(v))
    }

    /// An edge runs between `a` and `b` in either direction.
    pub fn connects(&self, a: &Scope, b: &Scope) -> bool {
        a.positions()
            .iter()
            .any(|&p| self.succ[p].iter().chain(&self.pred[p]).any(|&q| b.contains(q)))
    }
}
