use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::independence::{
    certify, detect_partitions_with, syntactic_witness, CiCertificate, CiMethod, DetectConfig,
    Partition3,
};
use crate::lattice::{Scope, Universe};
use crate::limits::Limits;
use crate::syntax::Program;

/// Schema version written into exported trees.
pub const CIT_SCHEMA: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitNode {
    pub certificate: CiCertificate,
    /// Either empty (a leaf) or the two sides, in order.
    pub children: Vec<CitNode>,
}

impl CitNode {
    pub fn label(&self) -> &Partition3 {
        &self.certificate.partition
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn scope(&self) -> Scope {
        self.label().scope()
    }

    fn leaves<'a>(&'a self, out: &mut Vec<&'a CitNode>) {
        if self.is_leaf() {
            out.push(self);
        }
        for c in &self.children {
            c.leaves(out);
        }
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(CitNode::count).sum::<usize>()
    }
}

/// A conditional-independence tree over a program's atoms.
#[derive(Clone, Debug)]
pub struct Cit {
    universe: Universe,
    root: CitNode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitSizes {
    /// Largest leaf-side lattice, `2^cps_exponent` (saturating).
    pub cps: u128,
    pub cps_exponent: usize,
    pub leaf_count: usize,
    pub cs: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitConfig {
    /// Nodes at this depth are not split further.
    pub max_depth: usize,
    /// Scopes with fewer atoms are not split.
    pub min_split_atoms: usize,
    pub detect: DetectConfig,
    /// Use this partition at the root instead of searching for one.
    pub root_partition: Option<Partition3>,
    pub limits: Limits,
}

impl Default for CitConfig {
    fn default() -> Self {
        CitConfig {
            max_depth: 64,
            min_split_atoms: 2,
            detect: DetectConfig::default(),
            root_partition: None,
            limits: Limits::default(),
        }
    }
}

impl Cit {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn root(&self) -> &CitNode {
        &self.root
    }

    pub fn leaves(&self) -> Vec<&CitNode> {
        let mut out = Vec::new();
        self.root.leaves(&mut out);
        out
    }

    pub fn node_count(&self) -> usize {
        self.root.count()
    }

    /// The scopes solved independently: both sides of every leaf, skipping an
    /// empty side when the other one is not, without repeats.
    pub fn leaf_scopes(&self) -> Vec<Scope> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for leaf in self.leaves() {
            for s in leaf_sides(leaf.label()) {
                if seen.insert(s.clone()) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// The single-node tree `(A, ∅ | ∅)`.
    pub fn trivial(program: &Program) -> Cit {
        let part = Partition3::trivial(program.universe().full_scope());
        Cit {
            universe: program.universe().clone(),
            root: leaf(part),
        }
    }
}

pub(crate) fn leaf_sides(label: &Partition3) -> Vec<Scope> {
    match (label.a1.is_empty(), label.a2.is_empty()) {
        (false, false) => vec![label.side(1), label.side(2)],
        (false, true) => vec![label.side(1)],
        (true, false) => vec![label.side(2)],
        (true, true) => vec![label.a3.clone()],
    }
}

fn leaf(part: Partition3) -> CitNode {
    CitNode {
        certificate: CiCertificate {
            partition: part,
            method: CiMethod::Trivial,
            witness: None,
        },
        children: Vec::new(),
    }
}

pub fn cit_sizes(cit: &Cit) -> CitSizes {
    let leaves = cit.leaves();
    let cps_exponent = leaves
        .iter()
        .flat_map(|l| [l.label().side(1).len(), l.label().side(2).len()])
        .max()
        .unwrap_or(0);
    let cps = if cps_exponent < 128 { 1u128 << cps_exponent } else { u128::MAX };
    let leaf_count = leaves.len();
    CitSizes {
        cps,
        cps_exponent,
        leaf_count,
        cs: cps.max(leaf_count as u128),
    }
}

struct Builder<'a> {
    program: &'a Program,
    config: &'a CitConfig,
}

impl Builder<'_> {
    /// The preferred certified split of `scope`: smallest pivot, then the
    /// smallest larger side, then lexicographic. Splits whose side lies
    /// entirely inside an ancestor pivot are refused, so leaf scopes stay distinct.
    fn best_split(&self, scope: &Scope, ancestors: &Scope, depth: usize) -> Result<Option<CitNode>> {
        if depth >= self.config.max_depth || scope.len() < self.config.min_split_atoms {
            return Ok(None);
        }
        let r = self.program.restrict(scope)?;
        let best = detect_partitions_with(&r.program, &self.config.detect)
            .into_iter()
            .map(|local| (local.map(|s| r.global_scope(s)), local))
            .filter(|(g, _)| !g.a1.is_subset(ancestors) && !g.a2.is_subset(ancestors))
            .min_by(|(x, _), (y, _)| {
                let key = |p: &Partition3| (p.a3.len(), p.a1.len().max(p.a2.len()));
                key(x).cmp(&key(y)).then_with(|| x.cmp(y))
            });
        let Some((global, local)) = best else {
            return Ok(None);
        };
        let witness = syntactic_witness(&r.program, &local)?;
        let cert = CiCertificate {
            partition: global,
            method: CiMethod::Syntactic,
            witness: Some(witness),
        };
        Ok(Some(self.expand(cert, ancestors, depth)?))
    }

    fn expand(&self, certificate: CiCertificate, ancestors: &Scope, depth: usize) -> Result<CitNode> {
        let label = certificate.partition.clone();
        let inner = ancestors.union(&label.a3);
        let mut children = Vec::with_capacity(2);
        for (side, own) in [(label.side(1), &label.a1), (label.side(2), &label.a2)] {
            let child = match self.best_split(&side, &inner, depth + 1)? {
                Some(node) => node,
                None => leaf(Partition3 {
                    a1: own.clone(),
                    a2: Scope::empty(),
                    a3: label.a3.clone(),
                }),
            };
            children.push(child);
        }
        Ok(CitNode {
            certificate,
            children,
        })
    }
}

/// Builds a tree by recursively splitting scopes along detected independencies.
pub fn build_cit(program: &Program, config: &CitConfig) -> Result<Cit> {
    let b = Builder { program, config };
    let all = program.universe().full_scope();
    let root = match &config.root_partition {
        Some(part) => {
            part.check_covers(&all)?;
            let cert = certify(program, part, &config.limits)?;
            if part.is_split() {
                b.expand(cert, &Scope::empty(), 0)?
            } else {
                CitNode {
                    certificate: cert,
                    children: Vec::new(),
                }
            }
        }
        None => match b.best_split(&all, &Scope::empty(), 0)? {
            Some(node) => node,
            None => leaf(Partition3::trivial(all)),
        },
    };
    let cit = Cit {
        universe: program.universe().clone(),
        root,
    };
    let scopes: Vec<Scope> = cit.leaves().iter().map(|l| l.scope()).collect();
    let distinct: HashSet<&Scope> = scopes.iter().collect();
    if distinct.len() != scopes.len() {
        return Err(Error::Internal("tree construction produced two leaves with the same scope".into()));
    }
    Ok(cit)
}

/// On-disk form of a tree node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CitFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub a1: Vec<String>,
    pub a2: Vec<String>,
    pub a3: Vec<String>,
    /// Informational on export; re-derived on import.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<CiMethod>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CitFile>,
}

fn node_to_file(node: &CitNode, universe: &Universe) -> CitFile {
    let f = node.label().to_file(universe);
    CitFile {
        schema: None,
        a1: f.a1,
        a2: f.a2,
        a3: f.a3,
        method: Some(node.certificate.method),
        children: node.children.iter().map(|c| node_to_file(c, universe)).collect(),
    }
}

fn invalid(e: Error) -> Error {
    match e {
        Error::InvalidCit(_) => e,
        other => Error::InvalidCit(other.to_string()),
    }
}

fn node_from_file(program: &Program, file: &CitFile, scope: &Scope, limits: &Limits) -> Result<CitNode> {
    let u = program.universe();
    let part = Partition3::from_names(
        u,
        file.a1.iter().map(String::as_str),
        file.a2.iter().map(String::as_str),
        file.a3.iter().map(String::as_str),
    )
    .map_err(invalid)?;
    part.check_covers(scope).map_err(invalid)?;
    let r = program.restrict(scope)?;
    let local = part.map(|s| r.localise(s).expect("covered scope localises"));
    let mut cert = certify(&r.program, &local, limits).map_err(invalid)?;
    cert.partition = part.clone();
    let children = match file.children.len() {
        0 => Vec::new(),
        2 => vec![
            node_from_file(program, &file.children[0], &part.side(1), limits)?,
            node_from_file(program, &file.children[1], &part.side(2), limits)?,
        ],
        n => return Err(Error::InvalidCit(format!("a node must have 0 or 2 children, found {n}"))),
    };
    if !children.is_empty() && !part.is_split() {
        return Err(Error::InvalidCit("a node with an empty side cannot have children".into()));
    }
    Ok(CitNode {
        certificate: cert,
        children,
    })
}

impl Cit {
    pub fn to_file(&self) -> CitFile {
        let mut f = node_to_file(&self.root, &self.universe);
        f.schema = Some(CIT_SCHEMA.to_owned());
        f
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("tree serialises")
    }

    /// Loads a tree and re-certifies every node against `program`.
    pub fn from_file(program: &Program, file: &CitFile, limits: &Limits) -> Result<Cit> {
        if let Some(v) = &file.schema {
            if v != CIT_SCHEMA {
                return Err(Error::InvalidCit(format!("unsupported schema version `{v}`")));
            }
        }
        let root = node_from_file(program, file, &program.universe().full_scope(), limits)?;
        Ok(Cit {
            universe: program.universe().clone(),
            root,
        })
    }

    pub fn from_json(program: &Program, text: &str, limits: &Limits) -> Result<Cit> {
        let file: CitFile = serde_json::from_str(text).map_err(|e| Error::InvalidCit(e.to_string()))?;
        Cit::from_file(program, &file, limits)
    }

    /// Renders the tree as an indented outline of labels.
    pub fn outline(&self) -> String {
        fn walk(node: &CitNode, u: &Universe, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            out.push_str(&node.label().display(u).to_string());
            out.push('\n');
            for c in &node.children {
                walk(c, u, depth + 1, out);
            }
        }
        let mut out = String::new();
        walk(&self.root, &self.universe, 0, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn trivial_tree() {
        let p = parse_program("p :- not p.").unwrap();
        let t = build_cit(&p, &CitConfig::default()).unwrap();
        assert_eq!(t.node_count(), 1);
        assert_eq!(t.root().label(), &Partition3::trivial(p.universe().full_scope()));
        let s = cit_sizes(&t);
        assert_eq!((s.cps, s.leaf_count, s.cs), (2, 1, 2));
        assert_eq!(t.leaf_scopes(), vec![p.universe().full_scope()]);
    }

    #[test]
    fn independent_facts_get_distinct_leaves() {
        let p = parse_program("p1. p2. p3.").unwrap();
        let t = build_cit(&p, &CitConfig::default()).unwrap();
        let scopes: Vec<Scope> = t.leaves().iter().map(|l| l.scope()).collect();
        assert_eq!(scopes.len(), 3);
        let s = cit_sizes(&t);
        assert_eq!(s.cps, 2);
        assert_eq!(s.cs, 3);
    }

    #[test]
    fn json_round_trip_and_revalidation() {
        let p = parse_program("a. b :- a. c :- a.").unwrap();
        let t = build_cit(&p, &CitConfig::default()).unwrap();
        let json = t.to_json();
        let back = Cit::from_json(&p, &json, &Limits::default()).unwrap();
        assert_eq!(back.root(), t.root());

        let bogus = r#"{"a1":["b"],"a2":["a"],"a3":["c"]}"#;
        assert!(matches!(
            Cit::from_json(&p, bogus, &Limits::default()),
            Err(Error::InvalidCit(_))
        ));
        let partial = r#"{"a1":["b"],"a2":["c"],"a3":[]}"#;
        assert!(Cit::from_json(&p, partial, &Limits::default()).is_err());
    }

    #[test]
    fn user_root_partition() {
        let p = parse_program("a. b :- a. c :- a.").unwrap();
        let good = Partition3::from_names(p.universe(), ["b"], ["c"], ["a"]).unwrap();
        let cfg = CitConfig {
            root_partition: Some(good.clone()),
            ..CitConfig::default()
        };
        assert_eq!(build_cit(&p, &cfg).unwrap().root().label(), &good);
        let bad = Partition3::from_names(p.universe(), ["a"], ["c"], ["b"]).unwrap();
        let cfg = CitConfig {
            root_partition: Some(bad),
            ..CitConfig::default()
        };
        assert!(matches!(build_cit(&p, &cfg), Err(Error::InvalidPartition(_))));
    }
}
