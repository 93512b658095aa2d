use crate::lattice::{ApproxPair, TruthValue};

/// Propositional formulas built from atoms, constants, negation and conjunction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(usize),
    Const(bool),
    Not(Box<Formula>),
    And(Vec<Formula>),
}

impl Formula {
    pub fn atom(p: usize) -> Self {
        Formula::Atom(p)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(parts: impl IntoIterator<Item = Formula>) -> Self {
        Formula::And(parts.into_iter().collect())
    }

    pub fn or(parts: impl IntoIterator<Item = Formula>) -> Self {
        Formula::not(Formula::and(parts.into_iter().map(Formula::not)))
    }

    /// Conjunction of literals: `positive` atoms true, `negative` atoms false.
    pub fn literals(positive: impl IntoIterator<Item = usize>, negative: impl IntoIterator<Item = usize>) -> Self {
        Formula::and(
            positive
                .into_iter()
                .map(Formula::Atom)
                .chain(negative.into_iter().map(|q| Formula::not(Formula::Atom(q)))),
        )
    }

    pub fn atoms(&self, out: &mut Vec<usize>) {
        match self {
            Formula::Atom(p) => out.push(*p),
            Formula::Const(_) => {}
            Formula::Not(f) => f.atoms(out),
            Formula::And(fs) => fs.iter().for_each(|f| f.atoms(out)),
        }
    }

    /// Four-valued value under `pair`; conjunction is the truth-order meet.
    pub fn eval(&self, pair: &ApproxPair) -> TruthValue {
        match self {
            Formula::Atom(p) => pair.value(*p),
            Formula::Const(true) => TruthValue::T,
            Formula::Const(false) => TruthValue::F,
            Formula::Not(f) => !f.eval(pair),
            Formula::And(fs) => fs
                .iter()
                .fold(TruthValue::T, |acc, f| acc.meet_t(f.eval(pair))),
        }
    }
}
