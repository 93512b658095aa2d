use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mask::{scope_mask, submasks, MaskProgram};
use super::partition::Partition3;
use crate::error::{Error, Result};
use crate::lattice::{ApproxPair, Scope, TruthValue};
use crate::limits::Limits;
use crate::semantics::{ic2, mask_interp};
use crate::syntax::{DepGraph, Formula, Program};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CiMode {
    /// Independence for the two-valued operator on interpretations.
    TwoValued,
    /// Independence for the four-valued operator on pairs.
    FourValued,
}

/// How a partition was shown to be an independence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CiMethod {
    Syntactic,
    SemanticBruteforce,
    /// One side is empty, so there is nothing to be independent of.
    Trivial,
}

/// Outcome of the two conditions of the syntactic criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntacticWitness {
    /// No dependency edge joins the two sides.
    pub separated: bool,
    /// No pivot atom depends on either side.
    pub lower_stratum: bool,
}

impl SyntacticWitness {
    pub fn holds(&self) -> bool {
        self.separated && self.lower_stratum
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiCertificate {
    pub partition: Partition3,
    pub method: CiMethod,
    pub witness: Option<SyntacticWitness>,
}

fn covering(program: &Program, part: &Partition3) -> Result<()> {
    part.check_covers(&program.universe().full_scope())
}

/// `keep`-part of the image depends only on the `keep`-part of the input,
/// for inputs ranging over `keep ∪ vary`.
fn invariant2(m: &MaskProgram, keep: u64, vary: u64) -> bool {
    let outer: Vec<u64> = submasks(keep).collect();
    outer.par_iter().all(|&k| {
        let want = m.ic2(k) & keep;
        submasks(vary).all(|v| m.ic2(k | v) & keep == want)
    })
}

/// Which components of the four-valued image to compare.
#[derive(Clone, Copy)]
struct Components {
    lower: bool,
    upper: bool,
}

fn invariant4(m: &MaskProgram, keep: u64, vary: u64, which: Components) -> bool {
    let outer: Vec<(u64, u64)> = submasks(keep)
        .flat_map(|x| submasks(keep).map(move |y| (x, y)))
        .collect();
    outer.par_iter().all(|&(kx, ky)| {
        let (wl, wu) = m.ic4(kx, ky);
        submasks(vary).all(|vx| {
            submasks(vary).all(|vy| {
                let (l, u) = m.ic4(kx | vx, ky | vy);
                (!which.lower || l & keep == wl & keep) && (!which.upper || u & keep == wu & keep)
            })
        })
    })
}

fn check_size(part: &Partition3, mode: CiMode, limits: &Limits) -> Result<()> {
    let n = part.scope().len();
    match mode {
        CiMode::TwoValued => {
            Limits::check_atoms("two-valued independence check", n, limits.ci_two_valued_atoms, "ci2")
        }
        CiMode::FourValued => {
            Limits::check_atoms("four-valued independence check", n, limits.ci_four_valued_atoms, "ci4")
        }
    }
}

/// Brute-force independence check: the image on each side plus the pivot is
/// invariant under changes to the other side. A partition with an empty side
/// is an independence by definition (the other side's operator is the whole one).
pub fn ci_semantic(program: &Program, part: &Partition3, mode: CiMode, limits: &Limits) -> Result<bool> {
    covering(program, part)?;
    if !part.is_split() {
        return Ok(true);
    }
    check_size(part, mode, limits)?;
    let m = MaskProgram::new(program, "independence check")?;
    let (s1, s2, s3) = (
        scope_mask(part.a1.positions()),
        scope_mask(part.a2.positions()),
        scope_mask(part.a3.positions()),
    );
    Ok(match mode {
        CiMode::TwoValued => invariant2(&m, s1 | s3, s2) && invariant2(&m, s2 | s3, s1),
        CiMode::FourValued => {
            let both = Components { lower: true, upper: true };
            invariant4(&m, s1 | s3, s2, both) && invariant4(&m, s2 | s3, s1, both)
        }
    })
}

/// The four-valued invariance condition checked separately for the lower and
/// the upper component of the operator.
pub fn ci_semantic_components(program: &Program, part: &Partition3, limits: &Limits) -> Result<(bool, bool)> {
    covering(program, part)?;
    if !part.is_split() {
        return Ok((true, true));
    }
    check_size(part, CiMode::FourValued, limits)?;
    let m = MaskProgram::new(program, "independence check")?;
    let (s1, s2, s3) = (
        scope_mask(part.a1.positions()),
        scope_mask(part.a2.positions()),
        scope_mask(part.a3.positions()),
    );
    let run = |which| invariant4(&m, s1 | s3, s2, which) && invariant4(&m, s2 | s3, s1, which);
    Ok((
        run(Components { lower: true, upper: false }),
        run(Components { lower: false, upper: true }),
    ))
}

pub fn syntactic_witness(program: &Program, part: &Partition3) -> Result<SyntacticWitness> {
    covering(program, part)?;
    let g = DepGraph::of(program);
    let sides = part.a1.union(&part.a2);
    Ok(SyntacticWitness {
        separated: !g.connects(&part.a1, &part.a2),
        lower_stratum: !g.reaches(&sides, &part.a3),
    })
}

/// Sufficient syntactic condition: the sides are not adjacent in the
/// dependency graph and the pivot lies in a lower stratum than both.
pub fn ci_syntactic(program: &Program, part: &Partition3) -> Result<bool> {
    Ok(syntactic_witness(program, part)?.holds())
}

/// Certifies `part` for `program`: trivially, syntactically, or (within the
/// brute-force cutoffs) semantically for both the two- and four-valued operator.
pub fn certify(program: &Program, part: &Partition3, limits: &Limits) -> Result<CiCertificate> {
    covering(program, part)?;
    let cert = |method, witness| CiCertificate {
        partition: part.clone(),
        method,
        witness,
    };
    if !part.is_split() {
        return Ok(cert(CiMethod::Trivial, None));
    }
    let w = syntactic_witness(program, part)?;
    if w.holds() {
        return Ok(cert(CiMethod::Syntactic, Some(w)));
    }
    let fits = check_size(part, CiMode::FourValued, limits).is_ok();
    if fits
        && ci_semantic(program, part, CiMode::TwoValued, limits)?
        && ci_semantic(program, part, CiMode::FourValued, limits)?
    {
        return Ok(cert(CiMethod::SemanticBruteforce, Some(w)));
    }
    let u = program.universe();
    Err(Error::InvalidPartition(format!(
        "{} is not a certified independence (separated: {}, lower stratum: {}, semantic check {})",
        part.display(u),
        w.separated,
        w.lower_stratum,
        if fits { "failed" } else { "skipped: scope too large" }
    )))
}

fn require_ci(program: &Program, part: &Partition3, limits: &Limits) -> Result<()> {
    if ci_semantic(program, part, CiMode::TwoValued, limits)? {
        Ok(())
    } else {
        Err(Error::usage(format!(
            "{} is not an independence",
            part.display(program.universe())
        )))
    }
}

/// Re-checks an independence with the sides exchanged.
pub fn check_symmetry(program: &Program, part: &Partition3, limits: &Limits) -> Result<bool> {
    require_ci(program, part, limits)?;
    ci_semantic(program, &part.swapped(), CiMode::TwoValued, limits)
}

/// Moves `moved ⊆ a2` into the pivot and re-checks.
pub fn check_weak_union(program: &Program, part: &Partition3, moved: &Scope, limits: &Limits) -> Result<bool> {
    if !moved.is_subset(&part.a2) {
        return Err(Error::usage("the moved atoms must come from the second side"));
    }
    require_ci(program, part, limits)?;
    let next = Partition3::new(
        part.a1.clone(),
        part.a2.difference(moved),
        part.a3.union(moved),
    )?;
    ci_semantic(program, &next, CiMode::TwoValued, limits)
}

/// Checks that every prefix of `layers` determines the two-valued operator
/// on that prefix.
pub fn stratifiable(program: &Program, layers: &[Scope], limits: &Limits) -> Result<bool> {
    let all = program.universe().full_scope();
    let mut seen = Scope::empty();
    for l in layers {
        if !l.is_disjoint(&seen) {
            return Err(Error::usage("layers overlap"));
        }
        seen = seen.union(l);
    }
    if seen != all {
        return Err(Error::usage("layers must cover every atom"));
    }
    limits.check_enumerate("stratification check", all.len())?;
    let m = MaskProgram::new(program, "stratification check")?;
    let full = scope_mask(all.positions());
    let mut prefix = 0u64;
    for l in layers {
        prefix |= scope_mask(l.positions());
        if !invariant2(&m, prefix, full & !prefix) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `premise ⊨_P conclusion`: every two-valued interpretation satisfying the
/// premise is mapped by the two-valued operator to one satisfying the conclusion.
pub fn darwiche_entails(program: &Program, premise: &Formula, conclusion: &Formula, limits: &Limits) -> Result<bool> {
    let u = program.universe();
    let n = u.len();
    limits.check_enumerate("entailment check", n)?;
    Limits::check_atoms("entailment check", n, 63, "enumerate")?;
    let ok = (0..1u64 << n).into_par_iter().all(|mask| {
        let x = mask_interp(u, mask);
        if premise.eval(&ApproxPair::exact(x.clone())) != TruthValue::T {
            return true;
        }
        conclusion.eval(&ApproxPair::exact(ic2(program, &x))) == TruthValue::T
    });
    Ok(ok)
}
