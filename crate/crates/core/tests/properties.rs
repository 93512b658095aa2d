mod common;

use citsolve_core::corpus::{random_layered_program, random_program};
use citsolve_core::semantics::{
    enumerate_fixpoints, gl_reduct_stable, ic2, ic4, kripke_kleene, ultimate, well_founded, Approximator, FixpointMode,
};
use citsolve_core::{
    build_cit, cit_sizes, solve, solve_decomposed, ApproxPair, Cit, CitConfig, Interp, Limits, Partition3, Program,
    Semantics, SolveOptions,
};
use common::checks::{self, Check};
use common::{layered_partition, random_partition};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn program(seed: u64, atoms: usize, rules: usize) -> Program {
    random_program(&mut ChaCha8Rng::seed_from_u64(seed), atoms, rules, 3)
}

fn layered(seed: u64) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pivot = rng.gen_range(0..=3);
    let groups = [rng.gen_range(1..=3), rng.gen_range(1..=3)];
    random_layered_program(&mut rng, pivot, &groups, 2, 3)
}

fn positive(seed: u64, atoms: usize, rules: usize) -> Program {
    common::without_negation(&program(seed, atoms, rules))
}

fn random_pair(rng: &mut ChaCha8Rng, p: &Program, consistent: bool) -> ApproxPair {
    let u = p.universe();
    let pick = |rng: &mut ChaCha8Rng| {
        Interp::from_positions(u, (0..p.atom_count()).filter(|_| rng.gen_bool(0.5))).unwrap()
    };
    let (x, y) = (pick(rng), pick(rng));
    if consistent {
        ApproxPair::new(x.intersection(&y).unwrap(), y).unwrap()
    } else {
        ApproxPair { lower: x, upper: y }
    }
}

/// Moves `pair` up the information order at random.
fn refine(rng: &mut ChaCha8Rng, pair: &ApproxPair) -> ApproxPair {
    let mut lower: Vec<usize> = pair.lower.members().collect();
    let mut upper: Vec<usize> = Vec::new();
    for a in 0..pair.universe().len() {
        if pair.upper.contains(a) && !rng.gen_bool(0.3) {
            upper.push(a);
        }
        if !pair.lower.contains(a) && rng.gen_bool(0.3) {
            lower.push(a);
        }
    }
    let u = pair.universe();
    ApproxPair {
        lower: Interp::from_positions(u, lower).unwrap(),
        upper: Interp::from_positions(u, upper).unwrap(),
    }
}

fn check(r: Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

fn partitions(p: &Program, seed: u64) -> Vec<Partition3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Partition3> = (0..4).map(|_| random_partition(&mut rng, p)).collect();
    out.extend(citsolve_core::detect_partitions(p).into_iter().take(4));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn four_valued_operator_is_information_monotone(seed in any::<u64>(), n in 1usize..8, r in 0usize..14) {
        let p = program(seed, n, r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let op = ic4(&p);
        for _ in 0..16 {
            let a = random_pair(&mut rng, &p, false);
            let b = refine(&mut rng, &a);
            prop_assert!(a.leq_i(&b).unwrap());
            prop_assert!(op.apply(&a).unwrap().leq_i(&op.apply(&b).unwrap()).unwrap());
        }
    }

    #[test]
    fn four_valued_operator_extends_the_two_valued_one(seed in any::<u64>(), n in 1usize..9, r in 0usize..16) {
        let p = program(seed, n, r);
        let op = ic4(&p);
        for x in Interp::subsets(p.universe(), &p.universe().full_scope()) {
            let img = ic2(&p, &x);
            prop_assert_eq!(op.apply(&ApproxPair::exact(x)).unwrap(), ApproxPair::exact(img));
        }
    }

    #[test]
    fn ultimate_is_at_least_as_precise(seed in any::<u64>(), n in 1usize..7, r in 0usize..12) {
        let p = program(seed, n, r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let (std, ult) = (ic4(&p), ultimate(&p));
        for _ in 0..24 {
            let a = random_pair(&mut rng, &p, true);
            prop_assert!(std.apply(&a).unwrap().leq_i(&ult.apply(&a).unwrap()).unwrap());
        }
        let (w, uw) = (well_founded(&std).unwrap(), well_founded(&ult).unwrap());
        prop_assert!(w.leq_i(&uw).unwrap());
    }

    #[test]
    fn stable_models_match_the_reduct(seed in any::<u64>(), n in 1usize..9, r in 0usize..16) {
        let p = program(seed, n, r);
        let l = Limits::default();
        let by_op = enumerate_fixpoints(&ic4(&p), FixpointMode::TwoValuedStable, &l).unwrap();
        prop_assert_eq!(by_op.interpretations(), gl_reduct_stable(&p, &l).unwrap());
    }

    #[test]
    fn no_supported_model_lies_below_a_stable_one(seed in any::<u64>(), n in 1usize..9, r in 0usize..16) {
        let p = program(seed, n, r);
        let l = Limits::default();
        let stable = solve(&p, Semantics::Stable, &l).unwrap().interpretations();
        let supported = solve(&p, Semantics::Supported, &l).unwrap().interpretations();
        for m in &stable {
            prop_assert!(supported.contains(m));
            for s in &supported {
                prop_assert!(!(s != m && s.is_subset(m).unwrap()), "{} below stable {}", s, m);
            }
        }
    }

    #[test]
    fn well_founded_is_least_partial_stable(seed in any::<u64>(), n in 1usize..9, r in 0usize..16) {
        let p = program(seed, n, r);
        let l = Limits::default();
        let wf = well_founded(&ic4(&p)).unwrap();
        let partial = solve(&p, Semantics::PartialStable, &l).unwrap();
        prop_assert!(partial.models.contains(&wf));
        for m in &partial.models {
            prop_assert!(wf.leq_i(m).unwrap());
        }
    }

    #[test]
    fn kripke_kleene_is_least_fixpoint(seed in any::<u64>(), n in 1usize..6, r in 0usize..10) {
        let p = program(seed, n, r);
        let op = ic4(&p);
        let kk = kripke_kleene(&op).unwrap();
        let all = enumerate_fixpoints(&op, FixpointMode::Operator, &Limits::default()).unwrap();
        prop_assert!(all.models.contains(&kk));
        for m in &all.models {
            prop_assert!(kk.leq_i(m).unwrap());
        }
        prop_assert!(kk.leq_i(&well_founded(&op).unwrap()).unwrap());
    }

    #[test]
    fn independence_is_symmetric(seed in any::<u64>(), n in 1usize..7, r in 0usize..10) {
        let p = program(seed, n, r);
        for part in partitions(&p, seed) {
            check(checks::symmetry(&p, &part))?;
        }
        let q = layered(seed);
        check(checks::symmetry(&q, &layered_partition(&q)))?;
    }

    #[test]
    fn syntactic_independence_is_sound(seed in any::<u64>(), n in 1usize..8, r in 0usize..12) {
        for p in [program(seed, n, r), layered(seed)] {
            for part in partitions(&p, seed) {
                check(checks::syntactic_soundness(&p, &part))?;
            }
        }
        let q = layered(seed);
        check(checks::syntactic_soundness(&q, &layered_partition(&q)))?;
    }

    #[test]
    fn fixpoints_split_along_independences(seed in any::<u64>(), n in 1usize..8, r in 0usize..12) {
        for p in [program(seed, n, r), layered(seed)] {
            for part in partitions(&p, seed) {
                check(checks::fixpoint_splitting(&p, &part))?;
                check(checks::pivot_agreement(&p, &part))?;
            }
        }
        let q = layered(seed);
        check(checks::fixpoint_splitting(&q, &layered_partition(&q)))?;
        check(checks::pivot_agreement(&q, &layered_partition(&q)))?;
    }

    #[test]
    fn positive_programs_combine_least_models(seed in any::<u64>(), n in 1usize..8, r in 0usize..12) {
        let p = positive(seed, n, r);
        for part in partitions(&p, seed) {
            check(checks::monotonicity_transfer(&p, &part))?;
            check(checks::lfp_combination(&p, &part))?;
        }
    }

    #[test]
    fn independence_is_two_way_stratification(seed in any::<u64>(), n in 1usize..8, r in 0usize..12) {
        for p in [program(seed, n, r), layered(seed)] {
            for part in partitions(&p, seed) {
                check(checks::stratification_bridge(&p, &part))?;
            }
        }
    }

    #[test]
    fn four_valued_independence_splits_by_component(seed in any::<u64>(), n in 1usize..6, r in 0usize..10) {
        for p in [program(seed, n, r), layered(seed)] {
            for part in partitions(&p, seed) {
                check(checks::component_independence(&p, &part))?;
            }
        }
    }

    #[test]
    fn conditioning_on_the_other_side_changes_nothing(seed in any::<u64>()) {
        let p = layered(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        checks::darwiche_bridge(&mut rng, &p, &layered_partition(&p), 3).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn decomposed_solving_matches_monolithic(seed in any::<u64>()) {
        let p = layered(seed);
        let t = build_cit(&p, &CitConfig::default()).unwrap();
        let l = Limits::default();
        for s in Semantics::ALL {
            let d = solve_decomposed(&p, &t, s, &SolveOptions::default()).unwrap();
            prop_assert_eq!(d.result, solve(&p, s, &l).unwrap(), "{}", s);
        }
    }

    #[test]
    fn worker_count_does_not_change_results(seed in any::<u64>(), jobs in 1usize..5) {
        let p = layered(seed);
        let t = build_cit(&p, &CitConfig::default()).unwrap();
        for s in [Semantics::Stable, Semantics::WellFounded, Semantics::PartialStable] {
            let one = solve_decomposed(&p, &t, s, &SolveOptions { jobs: 1, ..SolveOptions::default() }).unwrap();
            let many = solve_decomposed(&p, &t, s, &SolveOptions { jobs, ..SolveOptions::default() }).unwrap();
            prop_assert_eq!(one.result, many.result);
        }
    }

    #[test]
    fn deeper_trees_never_grow_partition_size(seed in any::<u64>()) {
        let p = layered(seed);
        let mut last = cit_sizes(&Cit::trivial(&p)).cps;
        for depth in 0..4 {
            let t = build_cit(&p, &CitConfig { max_depth: depth, ..CitConfig::default() }).unwrap();
            let cps = cit_sizes(&t).cps;
            prop_assert!(cps <= last, "depth {}: {} > {}", depth, cps, last);
            last = cps;
        }
    }

    #[test]
    fn built_trees_have_distinct_leaf_scopes(seed in any::<u64>(), n in 1usize..10, r in 0usize..14) {
        for p in [program(seed, n, r), layered(seed)] {
            let t = build_cit(&p, &CitConfig::default()).unwrap();
            let mut scopes: Vec<_> = t.leaves().iter().map(|l| l.scope()).collect();
            let total = scopes.len();
            scopes.sort();
            scopes.dedup();
            prop_assert_eq!(scopes.len(), total);
        }
    }
}
