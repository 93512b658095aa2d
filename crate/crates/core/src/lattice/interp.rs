use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::bits::{Bits, Subsets};
use super::truth::TruthValue;
use crate::error::{Error, Result};

/// Interned atom names with stable positions `0..n`.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct AtomUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub type Universe = Arc<AtomUniverse>;

impl AtomUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut u = AtomUniverse::default();
        for name in names {
            let name = name.into();
            if u.index.contains_key(&name) {
                return Err(Error::usage(format!("duplicate atom `{name}`")));
            }
            u.index.insert(name.clone(), u.names.len());
            u.names.push(name);
        }
        Ok(u)
    }

    pub fn shared<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Universe> {
        Self::new(names).map(Arc::new)
    }

    /// Returns the position of `name`, interning it if it is new.
    pub(crate) fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        self.index.insert(name.to_owned(), self.names.len());
        self.names.push(name.to_owned());
        self.names.len() - 1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, pos: usize) -> &str {
        &self.names[pos]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.position(name)
            .ok_or_else(|| Error::usage(format!("unknown atom `{name}`")))
    }

    pub fn scope_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Scope> {
        names
            .into_iter()
            .map(|n| self.require(n))
            .collect::<Result<Vec<_>>>()
            .map(Scope::new)
    }

    pub fn full_scope(&self) -> Scope {
        Scope((0..self.len()).collect())
    }
}

fn same_universe(a: &Universe, b: &Universe) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A set of universe positions, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scope(Vec<usize>);

impl Scope {
    pub fn new(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        Scope(positions)
    }

    pub fn empty() -> Self {
        Scope(Vec::new())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.0.binary_search(&pos).is_ok()
    }

    pub fn union(&self, other: &Scope) -> Scope {
        Scope::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &Scope) -> Scope {
        Scope(self.0.iter().copied().filter(|p| other.contains(*p)).collect())
    }

    pub fn difference(&self, other: &Scope) -> Scope {
        Scope(self.0.iter().copied().filter(|p| !other.contains(*p)).collect())
    }

    pub fn is_subset(&self, other: &Scope) -> bool {
        self.0.iter().all(|p| other.contains(*p))
    }

    pub fn is_disjoint(&self, other: &Scope) -> bool {
        self.0.iter().all(|p| !other.contains(*p))
    }

    /// Bit mask of width `width`; fails if the scope mentions a position past it.
    pub fn to_bits(&self, width: usize) -> Result<Bits> {
        if let Some(&bad) = self.0.iter().find(|&&p| p >= width) {
            return Err(Error::usage(format!(
                "scope position {bad} is outside a universe of {width} atoms"
            )));
        }
        Ok(Bits::from_positions(width, self.0.iter().copied()))
    }

    pub fn names<'u>(&self, universe: &'u AtomUniverse) -> Vec<&'u str> {
        self.0.iter().map(|&p| universe.name(p)).collect()
    }
}

impl FromIterator<usize> for Scope {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Scope::new(iter.into_iter().collect())
    }
}

/// A subset of the universe: one element of the powerset lattice.
#[derive(Clone, Debug)]
pub struct Interp {
    universe: Universe,
    bits: Bits,
}

impl Interp {
    pub fn empty(universe: &Universe) -> Self {
        Interp {
            universe: universe.clone(),
            bits: Bits::empty(universe.len()),
        }
    }

    pub fn full(universe: &Universe) -> Self {
        Interp {
            universe: universe.clone(),
            bits: Bits::full(universe.len()),
        }
    }

    pub fn from_bits(universe: &Universe, bits: Bits) -> Self {
        assert_eq!(bits.len(), universe.len(), "bit width must match the universe");
        Interp {
            universe: universe.clone(),
            bits,
        }
    }

    pub fn from_positions(universe: &Universe, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = universe.len();
        let mut bits = Bits::empty(n);
        for p in positions {
            if p >= n {
                return Err(Error::usage(format!("position {p} is outside a universe of {n} atoms")));
            }
            bits.insert(p);
        }
        Ok(Interp::from_bits(universe, bits))
    }

    pub fn from_names<'a>(universe: &Universe, names: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let scope = universe.scope_of(names)?;
        Interp::from_positions(universe, scope.positions().iter().copied())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.bits.contains(pos)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn names(&self) -> Vec<&str> {
        self.members().map(|p| self.universe.name(p)).collect()
    }

    pub fn to_scope(&self) -> Scope {
        Scope(self.members().collect())
    }

    fn check_universe(&self, other: &Interp) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::usage("interpretations over different universes"))
        }
    }

    pub fn is_subset(&self, other: &Interp) -> Result<bool> {
        self.check_universe(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn union(&self, other: &Interp) -> Result<Interp> {
        self.check_universe(other)?;
        Ok(self.with_bits(self.bits.union(&other.bits)))
    }

    pub fn intersection(&self, other: &Interp) -> Result<Interp> {
        self.check_universe(other)?;
        Ok(self.with_bits(self.bits.intersection(&other.bits)))
    }

    pub(crate) fn with_bits(&self, bits: Bits) -> Interp {
        Interp::from_bits(&self.universe, bits)
    }

    /// The members of `self` that lie inside `scope`.
    pub fn project(&self, scope: &Scope) -> Result<Interp> {
        let mask = scope.to_bits(self.universe.len())?;
        Ok(self.with_bits(self.bits.intersection(&mask)))
    }

    /// Reassembles an element from parts, each given with the scope it speaks
    /// for. Overlapping scopes are accepted as long as the parts agree on
    /// the overlap.
    pub fn combine(parts: &[(Interp, Scope)]) -> Result<Interp> {
        let (first, _) = parts
            .first()
            .ok_or_else(|| Error::usage("combine needs at least one part"))?;
        let universe = first.universe.clone();
        let n = universe.len();
        let mut out = Bits::empty(n);
        let mut covered = Bits::empty(n);
        for (part, scope) in parts {
            first.check_universe(part)?;
            let mask = scope.to_bits(n)?;
            if !part.bits.is_subset(&mask) {
                return Err(Error::usage(format!(
                    "part {} has members outside its scope",
                    part
                )));
            }
            let overlap = covered.intersection(&mask);
            if out.intersection(&overlap) != part.bits.intersection(&overlap) {
                let clash = out.intersection(&overlap);
                return Err(Error::usage(format!(
                    "parts disagree on shared atoms: {} vs {}",
                    Interp::from_bits(&universe, clash),
                    Interp::from_bits(&universe, part.bits.intersection(&overlap)),
                )));
            }
            out.union_with(&part.bits);
            covered.union_with(&mask);
        }
        Ok(Interp::from_bits(&universe, out))
    }

    /// Every subset of `scope`, as interpretations over this universe.
    pub fn subsets<'a>(universe: &'a Universe, scope: &'a Scope) -> impl Iterator<Item = Interp> + 'a {
        Subsets::new(universe.len(), scope.positions()).map(move |b| Interp::from_bits(universe, b))
    }
}

impl PartialEq for Interp {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && same_universe(&self.universe, &other.universe)
    }
}

impl Eq for Interp {}

impl std::hash::Hash for Interp {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

/// Models sort by their member lists, lexicographically.
impl Ord for Interp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl PartialOrd for Interp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

/// An element `(lower, upper)` of the bilattice. Inconsistent pairs are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApproxPair {
    pub lower: Interp,
    pub upper: Interp,
}

impl ApproxPair {
    pub fn new(lower: Interp, upper: Interp) -> Result<Self> {
        lower.check_universe(&upper)?;
        Ok(ApproxPair { lower, upper })
    }

    pub fn exact(x: Interp) -> Self {
        ApproxPair {
            lower: x.clone(),
            upper: x,
        }
    }

    /// `(∅, A)`: the least element under the information order.
    pub fn bottom(universe: &Universe) -> Self {
        ApproxPair {
            lower: Interp::empty(universe),
            upper: Interp::full(universe),
        }
    }

    pub fn universe(&self) -> &Universe {
        self.lower.universe()
    }

    pub fn is_consistent(&self) -> bool {
        self.lower.bits.is_subset(&self.upper.bits)
    }

    pub fn is_exact(&self) -> bool {
        self.lower.bits == self.upper.bits
    }

    pub fn value(&self, pos: usize) -> TruthValue {
        TruthValue::from_bounds(self.lower.contains(pos), self.upper.contains(pos))
    }

    pub fn leq_i(&self, other: &ApproxPair) -> Result<bool> {
        Ok(self.lower.is_subset(&other.lower)? && other.upper.is_subset(&self.upper)?)
    }

    pub fn leq_t(&self, other: &ApproxPair) -> Result<bool> {
        Ok(self.lower.is_subset(&other.lower)? && self.upper.is_subset(&other.upper)?)
    }

    pub fn project(&self, scope: &Scope) -> Result<ApproxPair> {
        Ok(ApproxPair {
            lower: self.lower.project(scope)?,
            upper: self.upper.project(scope)?,
        })
    }

    pub fn atoms_with(&self, value: TruthValue) -> Vec<usize> {
        (0..self.universe().len())
            .filter(|&p| self.value(p) == value)
            .collect()
    }
}

impl fmt::Display for ApproxPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(names: &[&str]) -> Universe {
        AtomUniverse::shared(names.iter().copied()).unwrap()
    }

    #[test]
    fn universe_positions_are_stable() {
        let un = u(&["a", "b", "c"]);
        for (k, n) in un.names().iter().enumerate() {
            assert_eq!(un.position(n), Some(k));
        }
        assert!(AtomUniverse::new(["a", "a"]).is_err());
    }

    #[test]
    fn project_examples() {
        let un = u(&["a", "b"]);
        let a = Interp::from_names(&un, ["a"]).unwrap();
        let only_b = un.scope_of(["b"]).unwrap();
        assert!(a.project(&only_b).unwrap().is_empty());
        assert_eq!(a.project(&un.full_scope()).unwrap(), a);
        assert!(a.project(&Scope::new(vec![7])).is_err());
    }

    #[test]
    fn product_projection_onto_first_factor() {
        // p lives in the first factor, q in the second: (∅ × {q}) restricted to factor 1.
        let un = u(&["p", "q"]);
        let x = Interp::from_names(&un, ["q"]).unwrap();
        let first = un.scope_of(["p"]).unwrap();
        assert!(x.project(&first).unwrap().is_empty());
    }

    #[test]
    fn combine_disjoint_and_overlapping() {
        let un = u(&["a", "b", "c"]);
        let a = Interp::from_names(&un, ["a"]).unwrap();
        let c = Interp::from_names(&un, ["c"]).unwrap();
        let joined = Interp::combine(&[
            (a.clone(), un.scope_of(["a"]).unwrap()),
            (c.clone(), un.scope_of(["c"]).unwrap()),
        ])
        .unwrap();
        assert_eq!(joined.names(), vec!["a", "c"]);

        // overlapping scopes that agree on b
        let ab = Interp::from_names(&un, ["a", "b"]).unwrap();
        let bc = Interp::from_names(&un, ["b", "c"]).unwrap();
        let s_ab = un.scope_of(["a", "b"]).unwrap();
        let s_bc = un.scope_of(["b", "c"]).unwrap();
        let whole = Interp::combine(&[(ab.clone(), s_ab.clone()), (bc, s_bc.clone())]).unwrap();
        assert_eq!(whole, Interp::full(&un));

        // disagreement on b is rejected
        let err = Interp::combine(&[(ab, s_ab), (c, s_bc)]);
        assert!(matches!(err, Err(Error::Usage(_))));

        // support outside the scope is rejected
        assert!(Interp::combine(&[(a, un.scope_of(["b"]).unwrap())]).is_err());
    }

    #[test]
    fn bilattice_orders() {
        let un = u(&["a", "b"]);
        let i = |n: &[&str]| Interp::from_names(&un, n.iter().copied()).unwrap();
        let bottom = ApproxPair::bottom(&un);
        for lo in Interp::subsets(&un, &un.full_scope()) {
            for hi in Interp::subsets(&un, &un.full_scope()) {
                let p = ApproxPair::new(lo.clone(), hi).unwrap();
                assert!(bottom.leq_i(&p).unwrap());
            }
        }
        let p = ApproxPair::new(i(&["a"]), i(&["a", "b"])).unwrap();
        let q = ApproxPair::new(i(&["a", "b"]), i(&["a", "b"])).unwrap();
        assert!(p.leq_t(&q).unwrap());
        let e = ApproxPair::exact(i(&["a"]));
        assert!(e.leq_i(&e).unwrap());
        let other = u(&["a", "b"]);
        let foreign = ApproxPair::bottom(&AtomUniverse::shared(["z"]).unwrap());
        assert!(p.leq_i(&foreign).is_err());
        // structurally equal universes compare fine
        assert!(ApproxPair::bottom(&other).leq_i(&p).unwrap());
    }

    #[test]
    fn pair_values() {
        let un = u(&["p"]);
        let pair = ApproxPair::new(Interp::full(&un), Interp::empty(&un)).unwrap();
        assert_eq!(pair.value(0), TruthValue::C);
        assert!(!pair.is_consistent());
    }
}
