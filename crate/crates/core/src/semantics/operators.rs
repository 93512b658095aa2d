use crate::error::{Error, Result};
use crate::lattice::{ApproxPair, Bits, Interp, Subsets, TruthValue, Universe};
use crate::limits::Limits;
use crate::syntax::{Program, Rule};

/// Four-valued value of a rule body. Conjunction is the truth-order meet;
/// the empty body is T.
pub fn eval_body(pair: &ApproxPair, rule: &Rule) -> TruthValue {
    let consts = rule
        .consts
        .iter()
        .map(|&c| if c { TruthValue::T } else { TruthValue::F });
    rule.pos
        .iter()
        .map(|&p| pair.value(p))
        .chain(rule.neg.iter().map(|&q| !pair.value(q)))
        .chain(consts)
        .fold(TruthValue::T, TruthValue::meet_t)
}

/// Two-valued immediate consequence: heads of rules whose body is true in `x`.
pub fn ic2(program: &Program, x: &Interp) -> Interp {
    x.with_bits(ic2_bits(program, x.bits()))
}

pub(crate) fn ic2_bits(program: &Program, x: &Bits) -> Bits {
    let mut out = Bits::empty(x.len());
    for r in program.rules() {
        if !out.contains(r.head) && r.fires(x) {
            out.insert(r.head);
        }
    }
    out
}

/// How the stable operator computes its two least fixpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Revision {
    /// Both components iterate over the whole lattice from ∅.
    FullLattice,
    /// The lower component iterates in `[∅, y]`, the upper one in `[x, A]`.
    /// Needed by approximators that are only defined on consistent pairs.
    Interval,
}

/// An operator on the bilattice approximating a two-valued operator.
pub trait Approximator: Send + Sync {
    fn universe(&self) -> &Universe;

    fn lower(&self, x: &Interp, y: &Interp) -> Result<Interp>;

    fn upper(&self, x: &Interp, y: &Interp) -> Result<Interp>;

    fn apply(&self, pair: &ApproxPair) -> Result<ApproxPair> {
        Ok(ApproxPair {
            lower: self.lower(&pair.lower, &pair.upper)?,
            upper: self.upper(&pair.lower, &pair.upper)?,
        })
    }

    fn revision(&self) -> Revision {
        Revision::FullLattice
    }
}

/// The four-valued immediate consequence operator.
#[derive(Clone, Copy, Debug)]
pub struct FourValued<'p> {
    program: &'p Program,
}

pub fn ic4(program: &Program) -> FourValued<'_> {
    FourValued { program }
}

impl FourValued<'_> {
    pub fn program(&self) -> &Program {
        self.program
    }
}

impl Approximator for FourValued<'_> {
    fn universe(&self) -> &Universe {
        self.program.universe()
    }

    fn lower(&self, x: &Interp, y: &Interp) -> Result<Interp> {
        let (xb, yb) = (x.bits(), y.bits());
        let mut out = Bits::empty(xb.len());
        for r in self.program.rules() {
            if r.fires_lower(xb, yb) {
                out.insert(r.head);
            }
        }
        Ok(x.with_bits(out))
    }

    fn upper(&self, x: &Interp, y: &Interp) -> Result<Interp> {
        let (xb, yb) = (x.bits(), y.bits());
        let mut out = Bits::empty(xb.len());
        for r in self.program.rules() {
            if r.fires_upper(xb, yb) {
                out.insert(r.head);
            }
        }
        Ok(x.with_bits(out))
    }
}

/// The ultimate approximator: the meet and join of the two-valued images of
/// every interpretation between the bounds, computed by enumerating the interval.
#[derive(Clone, Copy, Debug)]
pub struct Ultimate<'p> {
    program: &'p Program,
    interval_limit: u128,
}

pub fn ultimate(program: &Program) -> Ultimate<'_> {
    ultimate_with(program, &Limits::default())
}

pub fn ultimate_with<'p>(program: &'p Program, limits: &Limits) -> Ultimate<'p> {
    Ultimate {
        program,
        interval_limit: limits.ultimate_interval,
    }
}

impl Ultimate<'_> {
    fn image(&self, x: &Interp, y: &Interp) -> Result<(Bits, Bits)> {
        let (xb, yb) = (x.bits(), y.bits());
        if !xb.is_subset(yb) {
            return Err(Error::Domain(format!(
                "the ultimate operator needs a consistent pair, got ({x}, {y})"
            )));
        }
        let free: Vec<usize> = yb.difference(xb).ones().collect();
        let size = if free.len() < 128 { 1u128 << free.len() } else { u128::MAX };
        if size > self.interval_limit {
            return Err(Error::Resource {
                what: format!("ultimate operator interval of {} free atoms", free.len()),
                needed: size,
                limit: self.interval_limit,
                key: "ultimate",
            });
        }
        let n = xb.len();
        let mut meet = Bits::full(n);
        let mut join = Bits::empty(n);
        for extra in Subsets::new(n, &free) {
            let mut z = extra;
            z.union_with(xb);
            let img = ic2_bits(self.program, &z);
            meet.intersect_with(&img);
            join.union_with(&img);
        }
        Ok((meet, join))
    }
}

impl Approximator for Ultimate<'_> {
    fn universe(&self) -> &Universe {
        self.program.universe()
    }

    fn lower(&self, x: &Interp, y: &Interp) -> Result<Interp> {
        Ok(x.with_bits(self.image(x, y)?.0))
    }

    fn upper(&self, x: &Interp, y: &Interp) -> Result<Interp> {
        Ok(x.with_bits(self.image(x, y)?.1))
    }

    fn apply(&self, pair: &ApproxPair) -> Result<ApproxPair> {
        let (lo, hi) = self.image(&pair.lower, &pair.upper)?;
        Ok(ApproxPair {
            lower: pair.lower.with_bits(lo),
            upper: pair.lower.with_bits(hi),
        })
    }

    fn revision(&self) -> Revision {
        Revision::Interval
    }
}
