use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fixpoints::{lower_revision, upper_revision};
use super::operators::Approximator;
use crate::error::{Error, Result};
use crate::lattice::{ApproxPair, Bits, Interp, Universe};
use crate::limits::Limits;

/// Which fixpoints of an approximator to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixpointMode {
    /// Consistent fixpoints of the approximator itself.
    Operator,
    /// Consistent fixpoints of the stable revision.
    Stable,
    /// Exact fixpoints of the stable revision.
    TwoValuedStable,
    /// Exact fixpoints of the approximator (fixpoints of the two-valued operator).
    Supported,
}

/// What a [`SemanticsResult`] lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResultKind {
    Fixpoints,
    Supported,
    KripkeKleene,
    PartialStable,
    Stable,
    WellFounded,
    UltimateWellFounded,
}

/// A set of models, sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticsResult {
    pub kind: ResultKind,
    pub models: Vec<ApproxPair>,
}

impl SemanticsResult {
    pub fn new(kind: ResultKind, mut models: Vec<ApproxPair>) -> Self {
        models.sort();
        models.dedup();
        SemanticsResult { kind, models }
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// The lower bounds of the models, for semantics whose models are exact.
    pub fn interpretations(&self) -> Vec<Interp> {
        self.models.iter().map(|m| m.lower.clone()).collect()
    }
}

/// Enumeration visits at most 2^63 candidates per dimension.
const MAX_ENUMERATED_ATOMS: usize = 63;

pub(crate) fn check_enumerable(what: &str, n: usize, limits: &Limits) -> Result<()> {
    limits.check_enumerate(what, n)?;
    Limits::check_atoms(what, n, MAX_ENUMERATED_ATOMS, "enumerate")
}

pub(crate) fn mask_interp(universe: &Universe, mask: u64) -> Interp {
    let n = universe.len();
    let bits = Bits::from_positions(n, (0..n).filter(|&i| mask >> i & 1 == 1));
    Interp::from_bits(universe, bits)
}

/// Skips candidates the approximator is not defined on.
fn defined<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Domain(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn search<F>(universe: &Universe, f: F) -> Result<Vec<ApproxPair>>
where
    F: Fn(Interp) -> Result<Vec<ApproxPair>> + Sync + Send,
{
    let n = universe.len();
    let found: Vec<Vec<ApproxPair>> = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| f(mask_interp(universe, mask)))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Enumerates the fixpoints selected by `mode` by exhaustive search. Cost is
/// `3^n` applications in operator mode and `2^n` revisions otherwise.
pub fn enumerate_fixpoints(
    op: &dyn Approximator,
    mode: FixpointMode,
    limits: &Limits,
) -> Result<SemanticsResult> {
    let universe = op.universe().clone();
    check_enumerable("fixpoint enumeration", universe.len(), limits)?;
    let models = match mode {
        FixpointMode::Operator => search(&universe, |y| {
            let free: Vec<usize> = y.members().collect();
            let mut out = Vec::new();
            for x in crate::lattice::Subsets::new(universe.len(), &free) {
                let pair = ApproxPair {
                    lower: y.with_bits(x),
                    upper: y.clone(),
                };
                if defined(op.apply(&pair))?.as_ref() == Some(&pair) {
                    out.push(pair);
                }
            }
            Ok(out)
        })?,
        FixpointMode::Supported => search(&universe, |x| {
            let pair = ApproxPair::exact(x);
            Ok(match defined(op.apply(&pair))? {
                Some(img) if img == pair => vec![pair],
                _ => vec![],
            })
        })?,
        FixpointMode::Stable | FixpointMode::TwoValuedStable => search(&universe, |y| {
            let Some(x) = defined(lower_revision(op, &y))? else {
                return Ok(vec![]);
            };
            if !x.bits().is_subset(y.bits()) {
                return Ok(vec![]);
            }
            if mode == FixpointMode::TwoValuedStable && x != y {
                return Ok(vec![]);
            }
            Ok(match defined(upper_revision(op, &x))? {
                Some(up) if up == y => vec![ApproxPair { lower: x, upper: y }],
                _ => vec![],
            })
        })?,
    };
    let kind = match mode {
        FixpointMode::Operator => ResultKind::Fixpoints,
        FixpointMode::Supported => ResultKind::Supported,
        FixpointMode::Stable => ResultKind::PartialStable,
        FixpointMode::TwoValuedStable => ResultKind::Stable,
    };
    Ok(SemanticsResult::new(kind, models))
}
