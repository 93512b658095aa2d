//! Exhaustive checks of the independence laws, shared by the property tests
//! and the acceptance run. Each returns `Err` with a description on failure.

use citsolve_core::independence::{ci_semantic_components, ci_syntactic, darwiche_entails, stratifiable};
use citsolve_core::semantics::ic2;
use citsolve_core::syntax::Formula;
use citsolve_core::{ci_semantic, ApproxPair, CiMode, Interp, Limits, Partition3, Program, Scope, TruthValue};
use rand::seq::SliceRandom;
use rand::Rng;

use super::least_model;

pub type Check = Result<(), String>;

fn ci2(p: &Program, part: &Partition3) -> bool {
    ci_semantic(p, part, CiMode::TwoValued, &Limits::default()).expect("small program")
}

fn fail(p: &Program, part: &Partition3, what: impl std::fmt::Display) -> Check {
    Err(format!("{what} for {} in\n{p}", part.display(p.universe())))
}

pub fn symmetry(p: &Program, part: &Partition3) -> Check {
    let l = Limits::default();
    for mode in [CiMode::TwoValued, CiMode::FourValued] {
        let a = ci_semantic(p, part, mode, &l).map_err(|e| e.to_string())?;
        let b = ci_semantic(p, &part.swapped(), mode, &l).map_err(|e| e.to_string())?;
        if a != b {
            return fail(p, part, format!("{mode:?} independence is not symmetric"));
        }
    }
    Ok(())
}

pub fn syntactic_soundness(p: &Program, part: &Partition3) -> Check {
    if !ci_syntactic(p, part).map_err(|e| e.to_string())? {
        return Ok(());
    }
    let l = Limits::default();
    for mode in [CiMode::TwoValued, CiMode::FourValued] {
        if !ci_semantic(p, part, mode, &l).map_err(|e| e.to_string())? {
            return fail(p, part, format!("syntactic independence without {mode:?} independence"));
        }
    }
    Ok(())
}

fn is_fixpoint_on(p: &Program, x: &Interp, scope: &Scope) -> bool {
    ic2(p, x).project(scope).unwrap() == *x
}

/// Fixpoints of the whole operator are exactly the interpretations whose
/// projections are fixpoints of both marginalised side operators.
pub fn fixpoint_splitting(p: &Program, part: &Partition3) -> Check {
    if !part.is_split() || !ci2(p, part) {
        return Ok(());
    }
    let u = p.universe();
    let (s1, s2) = (part.side(1), part.side(2));
    let (m1, m2) = (p.marginalise(&part.a2), p.marginalise(&part.a1));
    for x in Interp::subsets(u, &u.full_scope()) {
        let whole = ic2(p, &x) == x;
        let x1 = x.project(&s1).unwrap();
        let x2 = x.project(&s2).unwrap();
        let split = is_fixpoint_on(&m1, &x1, &s1) && is_fixpoint_on(&m2, &x2, &s2);
        if whole != split {
            return fail(p, part, format!("fixpoint status of {x} differs: whole {whole}, sides {split}"));
        }
    }
    Ok(())
}

/// The pivot part of the image only depends on the pivot part of the input.
pub fn pivot_agreement(p: &Program, part: &Partition3) -> Check {
    if !part.is_split() || !ci2(p, part) {
        return Ok(());
    }
    let u = p.universe();
    let sides = part.a1.union(&part.a2);
    for x3 in Interp::subsets(u, &part.a3) {
        let want = ic2(p, &x3).project(&part.a3).unwrap();
        for x12 in Interp::subsets(u, &sides) {
            let x = x3.union(&x12).unwrap();
            if ic2(p, &x).project(&part.a3).unwrap() != want {
                return fail(p, part, format!("pivot image of {x} differs from that of {x3}"));
            }
        }
    }
    Ok(())
}

/// For positive programs, each restricted side operator is ⊆-monotone.
pub fn monotonicity_transfer(p: &Program, part: &Partition3) -> Check {
    if !super::is_positive(p) {
        return Ok(());
    }
    for j in [1, 2] {
        let r = p.restrict(&part.side(j)).map_err(|e| e.to_string())?;
        let q = &r.program;
        let u = q.universe();
        let all = u.full_scope();
        for y in Interp::subsets(u, &all) {
            let fy = ic2(q, &y);
            let below = y.to_scope();
            for x in Interp::subsets(u, &below) {
                if !ic2(q, &x).is_subset(&fy).unwrap() {
                    return fail(p, part, format!("side {j} operator is not monotone at {x} ⊆ {y}"));
                }
            }
        }
    }
    Ok(())
}

/// For positive programs with an independence, the least model is the
/// combination of the least models of the two restricted sides.
pub fn lfp_combination(p: &Program, part: &Partition3) -> Check {
    if !super::is_positive(p) || !part.is_split() || !ci2(p, part) {
        return Ok(());
    }
    let mut parts = Vec::new();
    for j in [1, 2] {
        let r = p.restrict(&part.side(j)).map_err(|e| e.to_string())?;
        parts.push((r.lift(&least_model(&r.program)), part.side(j)));
    }
    let combined = Interp::combine(&parts).map_err(|e| e.to_string())?;
    let whole = least_model(p);
    if combined != whole {
        return fail(p, part, format!("combined least model {combined} differs from {whole}"));
    }
    Ok(())
}

/// Independence holds exactly when both side-plus-pivot prefixes stratify.
pub fn stratification_bridge(p: &Program, part: &Partition3) -> Check {
    if !part.is_split() {
        return Ok(());
    }
    let l = Limits::default();
    let strat = |lower: Scope, upper: Scope| stratifiable(p, &[lower, upper], &l).map_err(|e| e.to_string());
    let both = strat(part.side(2), part.a1.clone())? && strat(part.side(1), part.a2.clone())?;
    if both != ci2(p, part) {
        return fail(p, part, format!("stratifiable both ways is {both}, independence is {}", !both));
    }
    Ok(())
}

/// The four-valued check is the conjunction of the per-component checks.
pub fn component_independence(p: &Program, part: &Partition3) -> Check {
    let l = Limits::default();
    let four = ci_semantic(p, part, CiMode::FourValued, &l).map_err(|e| e.to_string())?;
    let (lo, up) = ci_semantic_components(p, part, &l).map_err(|e| e.to_string())?;
    if four != (lo && up) {
        return fail(p, part, format!("four-valued {four}, lower {lo}, upper {up}"));
    }
    Ok(())
}

/// A random formula over `atoms` built from atoms, negation and conjunction.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[usize], depth: usize) -> Formula {
    if atoms.is_empty() {
        return Formula::Const(rng.gen_bool(0.5));
    }
    if depth == 0 || rng.gen_bool(0.35) {
        return Formula::atom(*atoms.choose(rng).unwrap());
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, atoms, depth - 1)),
        1 => Formula::and((0..rng.gen_range(2..=3)).map(|_| random_formula(rng, atoms, depth - 1))),
        _ => Formula::or((0..rng.gen_range(2..=3)).map(|_| random_formula(rng, atoms, depth - 1))),
    }
}

fn satisfiable(p: &Program, f: &Formula, over: &Scope) -> bool {
    Interp::subsets(p.universe(), over).any(|x| f.eval(&ApproxPair::exact(x)) == TruthValue::T)
}

/// Conditioning on a side-2 formula does not change what a complete pivot
/// assignment entails about side 1. Returns the number of triples checked.
pub fn darwiche_bridge<R: Rng>(rng: &mut R, p: &Program, part: &Partition3, samples: usize) -> Result<usize, String> {
    if !part.is_split() || !ci2(p, part) {
        return Ok(0);
    }
    let l = Limits::default();
    let u = p.universe();
    let mut checked = 0;
    for _ in 0..samples {
        let phi1 = random_formula(rng, part.a1.positions(), 3);
        let phi2 = random_formula(rng, part.a2.positions(), 3);
        if !satisfiable(p, &phi2, &part.a2) {
            continue;
        }
        for x3 in Interp::subsets(u, &part.a3) {
            let neg: Vec<usize> = part.a3.positions().iter().copied().filter(|&a| !x3.contains(a)).collect();
            let phi3 = Formula::literals(x3.members(), neg);
            let plain = darwiche_entails(p, &phi3, &phi1, &l).map_err(|e| e.to_string())?;
            let both = Formula::and([phi3.clone(), phi2.clone()]);
            let conditioned = darwiche_entails(p, &both, &phi1, &l).map_err(|e| e.to_string())?;
            if plain != conditioned {
                return fail(p, part, format!("{phi3:?} entails {phi1:?}: {plain}, with {phi2:?}: {conditioned}"))
                    .map(|_| 0);
            }
            checked += 1;
        }
    }
    Ok(checked)
}
