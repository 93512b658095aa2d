#![allow(dead_code)]

use std::path::PathBuf;

use citsolve_core::corpus::{random_layered_program, random_program};
use citsolve_core::lattice::kleene_lfp;
use citsolve_core::semantics::ic2;
use citsolve_core::{parse_program, Interp, Partition3, Program, Rule, Scope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> Program {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    parse_program(&text).expect("fixture parses")
}

pub fn part(p: &Program, a1: &[&str], a2: &[&str], a3: &[&str]) -> Partition3 {
    Partition3::from_names(p.universe(), a1.iter().copied(), a2.iter().copied(), a3.iter().copied())
        .expect("valid partition")
}

pub fn interp(p: &Program, names: &[&str]) -> Interp {
    p.interp(names.iter().copied()).expect("known atoms")
}

/// Atoms of the infection blocks: `A_x = {inf(x), cnct(.,x), vac(x)}`.
pub fn block(x: &str, parent: &str) -> Vec<String> {
    vec![format!("inf({x})"), format!("cnct({parent},{x})"), format!("vac({x})")]
}

pub fn names(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// A uniformly random three-way split of every atom.
pub fn random_partition<R: Rng>(rng: &mut R, p: &Program) -> Partition3 {
    let mut sides = [Vec::new(), Vec::new(), Vec::new()];
    for a in 0..p.atom_count() {
        sides[rng.gen_range(0..3)].push(a);
    }
    let [a1, a2, a3] = sides.map(Scope::new);
    Partition3::new(a1, a2, a3).expect("disjoint")
}

/// Partitions of a layered program along its construction: first group
/// against the other groups, given the pivot atoms.
pub fn layered_partition(p: &Program) -> Partition3 {
    let (mut a1, mut a2, mut a3) = (Vec::new(), Vec::new(), Vec::new());
    for (i, n) in p.universe().names().iter().enumerate() {
        if n.starts_with('s') {
            a3.push(i);
        } else if n.starts_with("g0_") {
            a1.push(i);
        } else {
            a2.push(i);
        }
    }
    Partition3::new(Scope::new(a1), Scope::new(a2), Scope::new(a3)).expect("disjoint")
}

/// The fixed small-program corpus: named fixtures plus seeded random and
/// layered programs, all with at most 10 atoms.
pub fn small_corpus() -> Vec<(String, Program)> {
    let mut out: Vec<(String, Program)> = [
        "p1.lp",
        "weak_union.lp",
        "naive.lp",
        "two_way.lp",
        "layers.lp",
        "self_support.lp",
        "not_p.lp",
        "facts.lp",
        "empty.lp",
    ]
    .iter()
    .map(|f| (f.to_string(), fixture(f)))
    .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..24 {
        let atoms = rng.gen_range(3..=8);
        let rules = rng.gen_range(2..=12);
        out.push((format!("random-{i}"), random_program(&mut rng, atoms, rules, 3)));
    }
    for i in 0..12 {
        let atoms = rng.gen_range(3..=8);
        let rules = rng.gen_range(2..=12);
        out.push((format!("positive-{i}"), without_negation(&random_program(&mut rng, atoms, rules, 3))));
    }
    for i in 0..24 {
        let pivot = rng.gen_range(0..=3);
        let g1 = rng.gen_range(1..=3);
        let g2 = rng.gen_range(1..=4);
        out.push((
            format!("layered-{i}"),
            random_layered_program(&mut rng, pivot, &[g1, g2], 2, 3),
        ));
    }
    out
}

/// Partitions to test on a corpus program: every detected one, the
/// construction partition for layered programs, and some random ones.
pub fn partitions_for(name: &str, p: &Program, seed: u64) -> Vec<Partition3> {
    let mut out = citsolve_core::detect_partitions(p);
    if name.starts_with("layered") {
        out.push(layered_partition(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..12 {
        out.push(random_partition(&mut rng, p));
    }
    out.sort();
    out.dedup();
    out
}

/// Least model of a positive program.
pub fn least_model(p: &Program) -> Interp {
    kleene_lfp(p.universe(), |x| Ok(ic2(p, x))).expect("positive program")
}

/// The same program with every negative body literal dropped.
pub fn without_negation(p: &Program) -> Program {
    let rules = p
        .rules()
        .iter()
        .map(|r| Rule::new(r.head, r.pos.clone(), vec![], r.consts.clone()))
        .collect();
    Program::new(p.universe().clone(), rules).expect("same universe")
}

pub fn is_positive(p: &Program) -> bool {
    p.rules().iter().all(|r| r.neg.is_empty())
}

pub mod checks;
