use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{AtomUniverse, Bits, Interp, Scope, Universe};

/// A normal rule `head :- pos, not neg, constants`.
///
/// Truth constants are kept as a sorted list (`false` before `true`), so two
/// bodies with the same constants compare equal regardless of source order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: usize,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
    pub consts: Vec<bool>,
}

impl Rule {
    pub fn new(head: usize, pos: Vec<usize>, neg: Vec<usize>, mut consts: Vec<bool>) -> Self {
        consts.sort_unstable();
        Rule {
            head,
            pos,
            neg,
            consts,
        }
    }

    pub fn fact(head: usize) -> Self {
        Rule::new(head, vec![], vec![], vec![])
    }

    /// A body containing ⊥ can never fire.
    pub fn is_inert(&self) -> bool {
        self.consts.first() == Some(&false)
    }

    pub fn is_fact(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty() && !self.is_inert()
    }

    pub fn body_atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.pos.iter().chain(&self.neg).copied()
    }

    /// Body is true in the two-valued interpretation `x`.
    #[inline]
    pub(crate) fn fires(&self, x: &Bits) -> bool {
        !self.is_inert()
            && self.pos.iter().all(|&p| x.contains(p))
            && self.neg.iter().all(|&q| !x.contains(q))
    }

    /// Body evaluates to T or C under `(x, y)`.
    #[inline]
    pub(crate) fn fires_lower(&self, x: &Bits, y: &Bits) -> bool {
        !self.is_inert()
            && self.pos.iter().all(|&p| x.contains(p))
            && self.neg.iter().all(|&q| !y.contains(q))
    }

    /// Body evaluates to U or T under `(x, y)`.
    #[inline]
    pub(crate) fn fires_upper(&self, x: &Bits, y: &Bits) -> bool {
        !self.is_inert()
            && self.pos.iter().all(|&p| y.contains(p))
            && self.neg.iter().all(|&q| !x.contains(q))
    }

    fn check(&self, n: usize) -> Result<()> {
        let bad = std::iter::once(self.head)
            .chain(self.body_atoms())
            .find(|&p| p >= n);
        match bad {
            Some(p) => Err(Error::usage(format!(
                "rule mentions position {p} outside a universe of {n} atoms"
            ))),
            None => Ok(()),
        }
    }
}

/// A finite set of normal rules over an atom universe.
#[derive(Clone, Debug)]
pub struct Program {
    universe: Universe,
    rules: Vec<Rule>,
    by_head: Vec<Vec<usize>>,
}

impl Program {
    pub fn new(universe: Universe, rules: Vec<Rule>) -> Result<Self> {
        let n = universe.len();
        let mut by_head = vec![Vec::new(); n];
        for (i, r) in rules.iter().enumerate() {
            r.check(n)?;
            by_head[r.head].push(i);
        }
        Ok(Program {
            universe,
            rules,
            by_head,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn atom_count(&self) -> usize {
        self.universe.len()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn rules_for(&self, head: usize) -> impl Iterator<Item = &Rule> {
        self.by_head[head].iter().map(|&i| &self.rules[i])
    }

    pub fn atom(&self, name: &str) -> Result<usize> {
        self.universe.require(name)
    }

    pub fn scope<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Scope> {
        self.universe.scope_of(names)
    }

    pub fn interp<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Interp> {
        Interp::from_names(&self.universe, names)
    }

    /// Replaces every atom of `atoms` by ⊥: positive occurrences become ⊥,
    /// negated ones become ¬⊥ = ⊤. The universe and rule count are unchanged.
    pub fn marginalise(&self, atoms: &Scope) -> Program {
        let rules = self
            .rules
            .iter()
            .map(|r| marginalise_rule(r, |p| atoms.contains(p)))
            .collect();
        Program {
            universe: self.universe.clone(),
            rules,
            by_head: self.by_head.clone(),
        }
    }

    /// The marginalisation of everything outside `scope`, keeping only rules
    /// whose head lies inside it, re-indexed over a universe of just those atoms.
    pub fn restrict(&self, scope: &Scope) -> Result<Restriction> {
        scope.to_bits(self.atom_count())?;
        let to_global: Vec<usize> = scope.positions().to_vec();
        let mut to_local = vec![usize::MAX; self.atom_count()];
        for (l, &g) in to_global.iter().enumerate() {
            to_local[g] = l;
        }
        let local_universe =
            AtomUniverse::shared(to_global.iter().map(|&g| self.universe.name(g).to_owned()))?;
        let mut rule_ids: Vec<usize> = to_global
            .iter()
            .flat_map(|&g| self.by_head[g].iter().copied())
            .collect();
        rule_ids.sort_unstable();
        let outside = |p: usize| to_local[p] == usize::MAX;
        let rules = rule_ids
            .into_iter()
            .map(|i| {
                let r = marginalise_rule(&self.rules[i], outside);
                Rule {
                    head: to_local[r.head],
                    pos: r.pos.iter().map(|&p| to_local[p]).collect(),
                    neg: r.neg.iter().map(|&p| to_local[p]).collect(),
                    consts: r.consts,
                }
            })
            .collect();
        Ok(Restriction {
            program: Program::new(local_universe, rules)?,
            global: self.universe.clone(),
            to_global,
        })
    }

    /// Same rules (compared by atom name) in the same order.
    pub fn same_structure(&self, other: &Program) -> bool {
        let name = |p: &Program, i: usize| p.universe.name(i).to_owned();
        let names = |p: &Program, v: &[usize]| v.iter().map(|&i| name(p, i)).collect::<Vec<_>>();
        self.rules.len() == other.rules.len()
            && self.rules.iter().zip(&other.rules).all(|(a, b)| {
                name(self, a.head) == name(other, b.head)
                    && names(self, &a.pos) == names(other, &b.pos)
                    && names(self, &a.neg) == names(other, &b.neg)
                    && a.consts == b.consts
            })
    }
}

fn marginalise_rule(r: &Rule, drop: impl Fn(usize) -> bool) -> Rule {
    let mut consts = r.consts.clone();
    let pos = r
        .pos
        .iter()
        .copied()
        .filter(|&p| {
            let d = drop(p);
            if d {
                consts.push(false);
            }
            !d
        })
        .collect();
    let neg = r
        .neg
        .iter()
        .copied()
        .filter(|&q| {
            let d = drop(q);
            if d {
                consts.push(true);
            }
            !d
        })
        .collect();
    Rule::new(r.head, pos, neg, consts)
}

/// A program cut down to a scope, with the map back to the original positions.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub program: Program,
    global: Universe,
    to_global: Vec<usize>,
}

impl Restriction {
    pub fn to_global(&self) -> &[usize] {
        &self.to_global
    }

    pub fn scope(&self) -> Scope {
        Scope::new(self.to_global.clone())
    }

    pub fn lift(&self, local: &Interp) -> Interp {
        let bits = Bits::from_positions(
            self.global.len(),
            local.members().map(|l| self.to_global[l]),
        );
        Interp::from_bits(&self.global, bits)
    }

    /// Maps a global scope (which must lie inside the restriction) to local positions.
    pub fn localise(&self, scope: &Scope) -> Result<Scope> {
        scope
            .positions()
            .iter()
            .map(|g| {
                self.to_global.binary_search(g).map_err(|_| {
                    Error::usage(format!(
                        "atom `{}` is outside the restricted scope",
                        self.global.name(*g)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Scope::new)
    }

    pub fn global_scope(&self, local: &Scope) -> Scope {
        local.positions().iter().map(|&l| self.to_global[l]).collect()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            f.write_str(self.universe.name(r.head))?;
            let lits: Vec<String> = r
                .pos
                .iter()
                .map(|&p| self.universe.name(p).to_owned())
                .chain(r.neg.iter().map(|&q| format!("not {}", self.universe.name(q))))
                .chain(r.consts.iter().map(|&c| if c { "true" } else { "false" }.to_owned()))
                .collect();
            if lits.is_empty() {
                writeln!(f, ".")?;
            } else {
                writeln!(f, " :- {}.", lits.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Universe built while parsing; frozen into a [`Program`] at the end.
pub(crate) struct ProgramBuilder {
    universe: AtomUniverse,
    rules: Vec<Rule>,
}

impl ProgramBuilder {
    pub(crate) fn new() -> Self {
        ProgramBuilder {
            universe: AtomUniverse::default(),
            rules: Vec::new(),
        }
    }

    pub(crate) fn intern(&mut self, name: &str) -> usize {
        self.universe.intern(name)
    }

    pub(crate) fn push(&mut self, rule: Rule) {
        self.rules.push(rule);
    }

    pub(crate) fn finish(self) -> Result<Program> {
        Program::new(Arc::new(self.universe), self.rules)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn marginalise_replaces_by_constants() {
        let p = parse_program("p :- q, r, not s.").unwrap();
        let m = p.marginalise(&p.scope(["r", "s"]).unwrap());
        let r = &m.rules()[0];
        assert_eq!(r.pos, vec![p.atom("q").unwrap()]);
        assert!(r.neg.is_empty());
        assert_eq!(r.consts, vec![false, true]);
        assert!(r.is_inert());
        assert_eq!(m.to_string(), "p :- q, false, true.\n");
        assert_eq!(m.atom_count(), p.atom_count());
    }

    #[test]
    fn marginalise_nothing_is_identity() {
        let p = parse_program("a :- b, not c. b.").unwrap();
        assert!(p.marginalise(&Scope::empty()).same_structure(&p));
    }

    #[test]
    fn restriction_reindexes() {
        let p = parse_program("a :- b, not c. c :- a. b.").unwrap();
        let scope = p.scope(["a", "b"]).unwrap();
        let r = p.restrict(&scope).unwrap();
        assert_eq!(r.program.universe().names(), &["a", "b"]);
        assert_eq!(r.program.to_string(), "a :- b, true.\nb.\n");
        let local = r.program.interp(["b"]).unwrap();
        assert_eq!(r.lift(&local).names(), vec!["b"]);
        assert_eq!(r.localise(&p.scope(["b"]).unwrap()).unwrap(), Scope::new(vec![1]));
        assert!(r.localise(&p.scope(["c"]).unwrap()).is_err());
    }

    #[test]
    fn positions_are_validated() {
        let u = AtomUniverse::shared(["a"]).unwrap();
        assert!(Program::new(u, vec![Rule::fact(3)]).is_err());
    }
}
