use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{leaf_sides, Cit, CitNode};
use crate::error::{Error, Result};
use crate::lattice::{ApproxPair, Interp, Scope};
use crate::limits::Limits;
use crate::semantics::{solve, Semantics, SemanticsResult};
use crate::syntax::Program;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Worker threads for leaf tasks; `0` uses the available parallelism.
    pub jobs: usize,
    pub limits: Limits,
}

/// One independently solved leaf side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafRun {
    pub scope: Vec<String>,
    pub models: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct Decomposed {
    pub result: SemanticsResult,
    pub leaves: Vec<LeafRun>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryMode {
    /// Some model contains the atom.
    Credulous,
    /// Every model contains the atom.
    Skeptical,
}

#[derive(Clone, Debug)]
pub struct QueryAnswer {
    pub answer: bool,
    pub leaves: Vec<LeafRun>,
}

struct LeafModels {
    by_scope: HashMap<Scope, Vec<ApproxPair>>,
    runs: Vec<LeafRun>,
}

fn lift(r: &crate::syntax::Restriction, m: &ApproxPair) -> ApproxPair {
    ApproxPair {
        lower: r.lift(&m.lower),
        upper: r.lift(&m.upper),
    }
}

fn solve_leaf(program: &Program, scope: &Scope, semantics: Semantics, limits: &Limits) -> Result<(Vec<ApproxPair>, Duration)> {
    let start = Instant::now();
    let r = program.restrict(scope)?;
    let res = solve(&r.program, semantics, limits)?;
    let models = res.models.iter().map(|m| lift(&r, m)).collect();
    Ok((models, start.elapsed()))
}

fn run_leaves(program: &Program, cit: &Cit, semantics: Semantics, opts: &SolveOptions) -> Result<LeafModels> {
    let scopes = cit.leaf_scopes();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if opts.jobs > 0 {
        pool = pool.num_threads(opts.jobs);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
    let u = program.universe();
    let solved: Vec<(Vec<ApproxPair>, Duration)> = pool.install(|| {
        scopes
            .par_iter()
            .map(|s| {
                solve_leaf(program, s, semantics, &opts.limits).map_err(|e| Error::Leaf {
                    scope: s.names(u).into_iter().map(str::to_owned).collect(),
                    source: Box::new(e),
                })
            })
            .collect::<Result<_>>()
    })?;
    let mut by_scope = HashMap::new();
    let mut runs = Vec::new();
    for (s, (models, elapsed)) in scopes.into_iter().zip(solved) {
        runs.push(LeafRun {
            scope: s.names(u).into_iter().map(str::to_owned).collect(),
            models: models.len(),
            elapsed,
        });
        by_scope.insert(s, models);
    }
    Ok(LeafModels { by_scope, runs })
}

type Summary = BTreeSet<(ApproxPair, bool)>;

fn project(p: &ApproxPair, scope: &Scope) -> ApproxPair {
    p.project(scope).expect("scope inside the universe")
}

/// Models of the node's scope, projected onto `interface`, each flagged with
/// whether `alpha` is true in it. Sides are joined on the pivot.
fn summarize(node: &CitNode, interface: &Scope, alpha: Option<usize>, leaves: &LeafModels) -> Result<Summary> {
    let label = node.label();
    let pivot = &label.a3;
    let side_summary = |j: usize, side: &Scope| -> Result<Summary> {
        let keep = interface.intersection(side).union(pivot);
        if node.is_leaf() {
            let models = leaves
                .by_scope
                .get(side)
                .ok_or_else(|| Error::Internal("missing leaf result".into()))?;
            Ok(models
                .iter()
                .map(|m| {
                    let flag = alpha.is_some_and(|a| m.lower.contains(a));
                    (project(m, &keep), flag)
                })
                .collect())
        } else {
            summarize(&node.children[j], &keep, alpha, leaves)
        }
    };
    let sides: Vec<(usize, Scope)> = if node.is_leaf() {
        leaf_sides(label)
            .into_iter()
            .map(|s| (if s == label.side(1) { 0 } else { 1 }, s))
            .collect()
    } else {
        vec![(0, label.side(1)), (1, label.side(2))]
    };
    if sides.len() == 1 {
        let (j, s) = &sides[0];
        return Ok(side_summary(*j, s)?
            .into_iter()
            .map(|(p, f)| (project(&p, interface), f))
            .collect());
    }
    let left = side_summary(sides[0].0, &sides[0].1)?;
    let right = side_summary(sides[1].0, &sides[1].1)?;
    let mut by_pivot: HashMap<ApproxPair, Vec<&(ApproxPair, bool)>> = HashMap::new();
    for entry in &right {
        by_pivot.entry(project(&entry.0, pivot)).or_default().push(entry);
    }
    let mut out = Summary::new();
    for (p1, f1) in &left {
        let Some(matches) = by_pivot.get(&project(p1, pivot)) else {
            continue;
        };
        for (p2, f2) in matches {
            let joined = ApproxPair {
                lower: p1.lower.union(&p2.lower)?,
                upper: p1.upper.union(&p2.upper)?,
            };
            out.insert((project(&joined, interface), *f1 || *f2));
        }
    }
    Ok(out)
}

/// Combines single-model leaf results by scope. Leaves must agree on shared atoms.
fn combine_unique(program: &Program, leaves: &LeafModels) -> Result<ApproxPair> {
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for (scope, models) in &leaves.by_scope {
        let [m] = models.as_slice() else {
            return Err(Error::Internal(format!(
                "leaf returned {} models for a single-model semantics",
                models.len()
            )));
        };
        lowers.push((m.lower.clone(), scope.clone()));
        uppers.push((m.upper.clone(), scope.clone()));
    }
    if lowers.is_empty() {
        return Ok(ApproxPair::bottom(program.universe()));
    }
    let join = |parts: &[(Interp, Scope)]| {
        Interp::combine(parts).map_err(|e| Error::Internal(format!("leaf results disagree on a pivot: {e}")))
    };
    Ok(ApproxPair {
        lower: join(&lowers)?,
        upper: join(&uppers)?,
    })
}

/// Solves every leaf side of `cit` concurrently and recombines the results.
pub fn solve_decomposed(program: &Program, cit: &Cit, semantics: Semantics, opts: &SolveOptions) -> Result<Decomposed> {
    check_tree(program, cit)?;
    let leaves = run_leaves(program, cit, semantics, opts)?;
    let kind = semantics.result_kind();
    let result = if semantics.is_unique() {
        SemanticsResult::new(kind, vec![combine_unique(program, &leaves)?])
    } else {
        let all = program.universe().full_scope();
        let models = summarize(cit.root(), &all, None, &leaves)?
            .into_iter()
            .map(|(m, _)| m)
            .collect();
        SemanticsResult::new(kind, models)
    };
    Ok(Decomposed {
        result,
        leaves: leaves.runs,
    })
}

/// Credulous or skeptical truth of `alpha`, decided on the joined leaf models
/// without materialising whole models.
pub fn query_decomposed(
    program: &Program,
    cit: &Cit,
    mode: QueryMode,
    alpha: usize,
    semantics: Semantics,
    opts: &SolveOptions,
) -> Result<QueryAnswer> {
    check_tree(program, cit)?;
    if alpha >= program.atom_count() {
        return Err(Error::usage(format!("atom position {alpha} is outside the program")));
    }
    let leaves = run_leaves(program, cit, semantics, opts)?;
    let flags = summarize(cit.root(), &Scope::empty(), Some(alpha), &leaves)?;
    let answer = match mode {
        QueryMode::Credulous => flags.iter().any(|(_, f)| *f),
        QueryMode::Skeptical => flags.iter().all(|(_, f)| *f),
    };
    Ok(QueryAnswer {
        answer,
        leaves: leaves.runs,
    })
}

fn check_tree(program: &Program, cit: &Cit) -> Result<()> {
    if cit.universe().names() != program.universe().names() {
        return Err(Error::InvalidCit("tree was built for a different program".into()));
    }
    Ok(())
}
