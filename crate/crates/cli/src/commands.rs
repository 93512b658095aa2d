use std::path::Path;
use std::time::Instant;

use citsolve_core::independence::{syntactic_witness, DetectConfig};
use citsolve_core::{
    build_cit, ci_semantic, cit_sizes, parse_program, query_decomposed, solve, solve_decomposed, Cit, CitConfig,
    CiMode, Error, Limits, Partition3, Program, Result, SolveOptions,
};

use crate::args::{CitCommand, IndependenceCommand, SolveArgs, TreeArgs};
use crate::exit;
use crate::report::{LeafTiming, ModelView, ProgramStats, RunReport, Section, SizesView, Timing};

/// A finished command: its report and the exit status it asks for.
pub struct Outcome {
    pub report: RunReport,
    pub code: i32,
}

pub struct Ctx {
    pub argv: Vec<String>,
    pub limits: Limits,
}

impl Ctx {
    pub(crate) fn report(&self, result: Section) -> RunReport {
        RunReport::new(self.argv.clone(), result)
    }
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Reads and parses a program, returning it with its parse time.
pub(crate) fn load_program(path: &Path) -> Result<(Program, Timing)> {
    let text = read(path)?;
    let start = Instant::now();
    let p = parse_program(&text)?;
    Ok((p, timing("parse", start)))
}

fn timing(phase: &str, start: Instant) -> Timing {
    Timing {
        phase: phase.to_owned(),
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub(crate) fn workers(jobs: Option<usize>) -> usize {
    match jobs {
        Some(n) if n > 0 => n,
        _ => std::thread::available_parallelism().map_or(1, |n| n.get()),
    }
}

fn models_code(models: &[ModelView]) -> i32 {
    if models.is_empty() {
        exit::NO_MODEL
    } else {
        exit::OK
    }
}

pub fn solve_cmd(ctx: &Ctx, args: &SolveArgs) -> Result<Outcome> {
    let (p, parse) = load_program(&args.file)?;
    let start = Instant::now();
    let r = solve(&p, args.semantics, &ctx.limits)?;
    let solved = timing("solve", start);
    let models = ModelView::all(&p, &r);
    let code = models_code(&models);
    let mut report = ctx.report(Section::Models {
        semantics: args.semantics,
        models,
        sizes: None,
    });
    report.program = Some(ProgramStats::of(&args.file.display().to_string(), &p));
    report.timings = vec![parse, solved];
    Ok(Outcome { report, code })
}

pub fn independence_cmd(ctx: &Ctx, cmd: &IndependenceCommand) -> Result<Outcome> {
    match cmd {
        IndependenceCommand::Check { file, partition, .. } => {
            let (p, parse) = load_program(file)?;
            let part = Partition3::from_json(p.universe(), &read(partition)?)?;
            let start = Instant::now();
            let two = ci_semantic(&p, &part, CiMode::TwoValued, &ctx.limits)?;
            let four = match ci_semantic(&p, &part, CiMode::FourValued, &ctx.limits) {
                Ok(b) => Some(b),
                Err(e) if e.is_resource() => None,
                Err(e) => return Err(e),
            };
            let w = syntactic_witness(&p, &part)?;
            let mut report = ctx.report(Section::Check {
                partition: part.to_file(p.universe()),
                semantic_two_valued: two,
                semantic_four_valued: four,
                syntactic: w.holds(),
                separated: w.separated,
                lower_stratum: w.lower_stratum,
            });
            report.program = Some(ProgramStats::of(&file.display().to_string(), &p));
            report.timings = vec![parse, timing("check", start)];
            Ok(Outcome { report, code: exit::OK })
        }
        IndependenceCommand::Detect {
            file, max_candidates, ..
        } => {
            let (p, parse) = load_program(file)?;
            let start = Instant::now();
            let cfg = DetectConfig {
                max_candidates: *max_candidates,
            };
            let found = citsolve_core::independence::detect_partitions_with(&p, &cfg);
            let mut report = ctx.report(Section::Detect {
                partitions: found.iter().map(|pt| pt.to_file(p.universe())).collect(),
            });
            report.program = Some(ProgramStats::of(&file.display().to_string(), &p));
            report.timings = vec![parse, timing("detect", start)];
            Ok(Outcome { report, code: exit::OK })
        }
    }
}

/// Loads the tree named by `--cit`, or builds one.
fn tree(ctx: &Ctx, p: &Program, args: &TreeArgs) -> Result<(Cit, Timing)> {
    let start = Instant::now();
    match &args.cit {
        Some(path) => {
            let text = read(path)?;
            let t = Cit::from_json(p, &text, &ctx.limits)?;
            Ok((t, timing("load tree", start)))
        }
        None => {
            let cfg = CitConfig {
                limits: ctx.limits,
                ..CitConfig::default()
            };
            let t = build_cit(p, &cfg)?;
            Ok((t, timing("build tree", start)))
        }
    }
}

fn leaf_timings(runs: &[citsolve_core::cit::LeafRun]) -> Vec<LeafTiming> {
    runs.iter()
        .map(|r| LeafTiming {
            scope: r.scope.clone(),
            models: r.models,
            seconds: r.elapsed.as_secs_f64(),
        })
        .collect()
}

pub fn cit_cmd(ctx: &Ctx, cmd: &CitCommand) -> Result<Outcome> {
    match cmd {
        CitCommand::Build {
            file,
            partition,
            out,
            max_depth,
            ..
        } => {
            let (p, parse) = load_program(file)?;
            let root_partition = match partition {
                Some(path) => Some(Partition3::from_json(p.universe(), &read(path)?)?),
                None => None,
            };
            let cfg = CitConfig {
                max_depth: *max_depth,
                root_partition,
                limits: ctx.limits,
                ..CitConfig::default()
            };
            let start = Instant::now();
            let t = build_cit(&p, &cfg)?;
            let built = timing("build tree", start);
            if let Some(path) = out {
                std::fs::write(path, t.to_json() + "\n")
                    .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut report = ctx.report(Section::Tree {
                tree: t.to_file(),
                sizes: SizesView::from(cit_sizes(&t)),
                written_to: out.as_ref().map(|p| p.display().to_string()),
            });
            report.program = Some(ProgramStats::of(&file.display().to_string(), &p));
            report.timings = vec![parse, built];
            Ok(Outcome { report, code: exit::OK })
        }
        CitCommand::Solve { tree: args, semantics } => {
            let (p, parse) = load_program(&args.file)?;
            let (t, built) = tree(ctx, &p, args)?;
            let opts = SolveOptions {
                jobs: workers(args.jobs),
                limits: ctx.limits,
            };
            let start = Instant::now();
            let d = solve_decomposed(&p, &t, *semantics, &opts)?;
            let solved = timing("solve", start);
            let models = ModelView::all(&p, &d.result);
            let code = models_code(&models);
            let mut report = ctx.report(Section::Models {
                semantics: *semantics,
                models,
                sizes: Some(cit_sizes(&t).into()),
            });
            report.program = Some(ProgramStats::of(&args.file.display().to_string(), &p));
            report.workers = Some(opts.jobs);
            report.timings = vec![parse, built, solved];
            report.leaves = leaf_timings(&d.leaves);
            Ok(Outcome { report, code })
        }
        CitCommand::Query {
            tree: args,
            mode,
            atom,
            semantics,
        } => {
            let (p, parse) = load_program(&args.file)?;
            let alpha = p.atom(atom)?;
            let (t, built) = tree(ctx, &p, args)?;
            let opts = SolveOptions {
                jobs: workers(args.jobs),
                limits: ctx.limits,
            };
            let start = Instant::now();
            let q = query_decomposed(&p, &t, (*mode).into(), alpha, *semantics, &opts)?;
            let solved = timing("query", start);
            let mut report = ctx.report(Section::Query {
                semantics: *semantics,
                mode: (*mode).into(),
                atom: atom.clone(),
                answer: q.answer,
                sizes: cit_sizes(&t).into(),
            });
            report.program = Some(ProgramStats::of(&args.file.display().to_string(), &p));
            report.workers = Some(opts.jobs);
            report.timings = vec![parse, built, solved];
            report.leaves = leaf_timings(&q.leaves);
            Ok(Outcome { report, code: exit::OK })
        }
    }
}
