use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use super::partition::Partition3;
use crate::lattice::Scope;
use crate::syntax::{DepGraph, Program};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectConfig {
    /// How many downward-closed pivot candidates to examine.
    pub max_candidates: usize,
}

impl Default for DetectConfig {
    fn default() -> Self {
        DetectConfig { max_candidates: 256 }
    }
}

pub fn detect_partitions(program: &Program) -> Vec<Partition3> {
    detect_partitions_with(program, &DetectConfig::default())
}

/// Downward-closed pivot candidates: ∅, the closure of each strongly
/// connected component, then further unions in order of (size, atoms).
fn pivot_candidates(g: &DepGraph, max: usize) -> Vec<Scope> {
    let closures: Vec<Scope> = g
        .sccs()
        .into_iter()
        .map(|c| g.down_closure(&Scope::new(c)))
        .collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let push = |s: Scope, out: &mut Vec<Scope>, seen: &mut HashSet<Scope>| {
        if out.len() < max && seen.insert(s.clone()) {
            out.push(s);
        }
    };
    push(Scope::empty(), &mut out, &mut seen);
    let mut principal = closures.clone();
    principal.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    for c in principal {
        push(c, &mut out, &mut seen);
    }
    // best-first growth from every principal closure
    let mut heap: BinaryHeap<Reverse<(usize, Scope)>> =
        out.iter().map(|s| Reverse((s.len(), s.clone()))).collect();
    let mut expanded = HashSet::new();
    while out.len() < max {
        let Some(Reverse((_, s))) = heap.pop() else { break };
        if !expanded.insert(s.clone()) {
            continue;
        }
        for c in &closures {
            if c.is_subset(&s) {
                continue;
            }
            let next = s.union(c);
            if !seen.contains(&next) {
                push(next.clone(), &mut out, &mut seen);
                heap.push(Reverse((next.len(), next)));
            }
        }
    }
    out
}

/// Two groupings of the components: the first one against the rest, and a
/// greedy size-balanced split.
fn groupings(comps: &[Scope]) -> Vec<(Scope, Scope)> {
    let rest: Scope = comps[1..].iter().flat_map(|c| c.positions().iter().copied()).collect();
    let mut out = vec![(comps[0].clone(), rest)];
    let mut order: Vec<&Scope> = comps.iter().collect();
    order.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let (mut g1, mut g2) = (Vec::new(), Vec::new());
    let (mut n1, mut n2) = (0, 0);
    for c in order {
        if n1 <= n2 {
            n1 += c.len();
            g1.extend_from_slice(c.positions());
        } else {
            n2 += c.len();
            g2.extend_from_slice(c.positions());
        }
    }
    out.push((Scope::new(g1), Scope::new(g2)));
    out
}

/// Partitions passing the syntactic criterion, found by a bounded search over
/// lower strata. Sorted, duplicate-free, and all with two non-empty sides.
pub fn detect_partitions_with(program: &Program, config: &DetectConfig) -> Vec<Partition3> {
    let g = DepGraph::of(program);
    let all = program.universe().full_scope();
    let mut found = BTreeSet::new();
    for pivot in pivot_candidates(&g, config.max_candidates) {
        let remainder = all.difference(&pivot);
        let comps = g.components_within(&remainder);
        if comps.len() < 2 {
            continue;
        }
        for (x, y) in groupings(&comps) {
            if x.is_empty() || y.is_empty() {
                continue;
            }
            let (a1, a2) = if x.positions()[0] < y.positions()[0] { (x, y) } else { (y, x) };
            found.insert(Partition3 {
                a1,
                a2,
                a3: pivot.clone(),
            });
        }
    }
    found.into_iter().collect()
}
