use super::operators::{Approximator, Revision};
use crate::error::{Error, Result};
use crate::lattice::{kleene_lfp, kleene_lfp_from, ApproxPair, Interp};

/// Lower half of the stable revision: `lfp(z ↦ A_l(z, y))`.
pub fn lower_revision(op: &dyn Approximator, y: &Interp) -> Result<Interp> {
    let lfp = kleene_lfp(op.universe(), |z| op.lower(z, y))?;
    if op.revision() == Revision::Interval && !lfp.bits().is_subset(y.bits()) {
        return Err(Error::Domain(format!(
            "lower revision {lfp} leaves the interval below {y}"
        )));
    }
    Ok(lfp)
}

/// Upper half of the stable revision: `lfp(z ↦ A_u(x, z))`, iterated from ∅
/// or, for interval approximators, from `x`.
pub fn upper_revision(op: &dyn Approximator, x: &Interp) -> Result<Interp> {
    match op.revision() {
        Revision::FullLattice => kleene_lfp(op.universe(), |z| op.upper(x, z)),
        Revision::Interval => {
            let first = op.upper(x, x)?;
            if !x.bits().is_subset(first.bits()) {
                return Err(Error::Domain(format!(
                    "upper revision from {x} is not ascending (first image {first})"
                )));
            }
            kleene_lfp_from(first, |z| op.upper(x, z))
        }
    }
}

/// The stable revision operator `(lfp A_l(·, y), lfp A_u(x, ·))`.
pub fn stable_op(op: &dyn Approximator, pair: &ApproxPair) -> Result<ApproxPair> {
    Ok(ApproxPair {
        lower: lower_revision(op, &pair.upper)?,
        upper: upper_revision(op, &pair.lower)?,
    })
}

/// Iterates `step` from `(∅, A)` to its ≤_i-least fixpoint. Each iterate
/// must dominate the previous one in the information order.
fn iterate_from_bottom(
    op: &dyn Approximator,
    mut step: impl FnMut(&ApproxPair) -> Result<ApproxPair>,
) -> Result<ApproxPair> {
    let mut current = ApproxPair::bottom(op.universe());
    // each strict ≤_i step moves at least one atom in one of the bounds
    let bound = 2 * op.universe().len() + 2;
    for _ in 0..bound {
        let next = step(&current)?;
        if next == current {
            return Ok(current);
        }
        if !current.leq_i(&next)? {
            return Err(Error::NonMonotone(format!(
                "iterate {current} is not below its image {next} in the information order"
            )));
        }
        current = next;
    }
    Err(Error::NonMonotone(format!(
        "no fixpoint after {bound} applications"
    )))
}

/// The Kripke-Kleene fixpoint: the ≤_i-least fixpoint of `op`.
pub fn kripke_kleene(op: &dyn Approximator) -> Result<ApproxPair> {
    iterate_from_bottom(op, |p| op.apply(p))
}

/// The well-founded fixpoint: the ≤_i-least fixpoint of the stable revision.
pub fn well_founded(op: &dyn Approximator) -> Result<ApproxPair> {
    iterate_from_bottom(op, |p| stable_op(op, p))
}
