//! Program generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::lattice::AtomUniverse;
use crate::syntax::{parse_program, Program, Rule};

/// `k` infection blocks hanging off one shared fact:
///
/// ```text
/// inf(a).
/// inf(b1) :- inf(a), cnct(a,b1), not vac(b1).   cnct(a,b1).
/// ...
/// ```
///
/// `3k + 1` atoms; the blocks are independent given `inf(a)`.
pub fn chain_program(k: usize) -> Program {
    parse_program(&chain_source(k)).expect("generated program parses")
}

pub fn chain_source(k: usize) -> String {
    let mut s = String::from("inf(a).\n");
    for i in 1..=k {
        s.push_str(&format!(
            "inf(b{i}) :- inf(a), cnct(a,b{i}), not vac(b{i}).\ncnct(a,b{i}).\n"
        ));
    }
    s
}

fn random_rule<R: Rng>(rng: &mut R, head: usize, pool: &[usize], max_body: usize, neg_prob: f64) -> Rule {
    let len = rng.gen_range(0..=max_body.min(pool.len()));
    let body: Vec<usize> = pool.choose_multiple(rng, len).copied().collect();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for b in body {
        if rng.gen_bool(neg_prob) {
            neg.push(b);
        } else {
            pos.push(b);
        }
    }
    Rule::new(head, pos, neg, vec![])
}

/// A program over `atoms` atoms `x0, x1, ...` with `rules` rules, each with a
/// uniformly chosen head and up to `max_body` distinct body atoms.
pub fn random_program<R: Rng>(rng: &mut R, atoms: usize, rules: usize, max_body: usize) -> Program {
    let universe = AtomUniverse::shared((0..atoms).map(|i| format!("x{i}"))).expect("distinct names");
    let all: Vec<usize> = (0..atoms).collect();
    let rules = if atoms == 0 {
        Vec::new()
    } else {
        (0..rules)
            .map(|_| {
                let head = rng.gen_range(0..atoms);
                random_rule(rng, head, &all, max_body, 0.4)
            })
            .collect()
    };
    Program::new(universe, rules).expect("positions in range")
}

/// A layered program: pivot atoms `s*` whose rules only use pivot atoms,
/// and groups `g<j>_*` whose rules use their own group and the pivot.
/// Groups are therefore independent given the pivot.
pub fn random_layered_program<R: Rng>(
    rng: &mut R,
    pivot: usize,
    groups: &[usize],
    rules_per_atom: usize,
    max_body: usize,
) -> Program {
    let mut names: Vec<String> = (0..pivot).map(|i| format!("s{i}")).collect();
    let mut group_atoms = Vec::new();
    for (g, &n) in groups.iter().enumerate() {
        let start = names.len();
        names.extend((0..n).map(|i| format!("g{g}_{i}")));
        group_atoms.push((start..start + n).collect::<Vec<_>>());
    }
    let universe = AtomUniverse::shared(names).expect("distinct names");
    let pivot_atoms: Vec<usize> = (0..pivot).collect();
    let mut rules = Vec::new();
    for &h in &pivot_atoms {
        for _ in 0..rng.gen_range(0..=rules_per_atom) {
            rules.push(random_rule(rng, h, &pivot_atoms, max_body, 0.4));
        }
    }
    for atoms in &group_atoms {
        let pool: Vec<usize> = atoms.iter().chain(&pivot_atoms).copied().collect();
        for &h in atoms {
            for _ in 0..rng.gen_range(0..=rules_per_atom) {
                rules.push(random_rule(rng, h, &pool, max_body, 0.4));
            }
        }
    }
    rules.shuffle(rng);
    Program::new(universe, rules).expect("positions in range")
}
