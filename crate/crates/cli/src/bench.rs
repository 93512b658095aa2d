use std::path::PathBuf;
use std::time::{Duration, Instant};

use citsolve_core::{build_cit, cit_sizes, solve, solve_decomposed, CitConfig, Error, Result, SolveOptions};

use crate::args::BenchArgs;
use crate::commands::{load_program, workers, Ctx, Outcome};
use crate::exit;
use crate::report::{BenchRow, Section};

pub const CSV_HEADER: [&str; 9] = [
    "file",
    "atoms",
    "rules",
    "cs",
    "monolithic_time",
    "decomposed_time",
    "speedup",
    "answers_equal",
    "note",
];

/// Fastest of `repeat` runs, with the last result.
fn timed<T>(repeat: usize, mut f: impl FnMut() -> Result<T>) -> Result<(T, Duration)> {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        let v = f()?;
        best = best.min(start.elapsed());
        last = Some(v);
    }
    Ok((last.expect("at least one run"), best))
}

fn corpus(args: &BenchArgs) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(&args.dir)
        .map_err(|e| Error::Usage(format!("cannot read directory {}: {e}", args.dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "lp"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::Usage(format!("no .lp files in {}", args.dir.display())));
    }
    Ok(files)
}

pub fn bench_cmd(ctx: &Ctx, args: &BenchArgs) -> Result<Outcome> {
    let opts = SolveOptions {
        jobs: workers(args.jobs),
        limits: ctx.limits,
    };
    let mut rows = Vec::new();
    for path in corpus(args)? {
        let (p, _) = load_program(&path)?;
        let cfg = CitConfig {
            limits: ctx.limits,
            ..CitConfig::default()
        };
        let t = build_cit(&p, &cfg)?;
        let mut notes = Vec::new();
        let mono = match timed(args.repeat, || solve(&p, args.semantics, &ctx.limits)) {
            Ok(v) => Some(v),
            Err(e) if e.is_resource() => {
                notes.push("monolithic: resource cutoff");
                None
            }
            Err(e) => return Err(e),
        };
        let dec = match timed(args.repeat, || solve_decomposed(&p, &t, args.semantics, &opts)) {
            Ok(v) => Some(v),
            Err(e) if e.is_resource() => {
                notes.push("decomposed: resource cutoff");
                None
            }
            Err(e) => return Err(e),
        };
        let secs = |d: &Duration| d.as_secs_f64();
        let (mt, dt) = (mono.as_ref().map(|m| secs(&m.1)), dec.as_ref().map(|d| secs(&d.1)));
        rows.push(BenchRow {
            file: path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned()),
            atoms: p.atom_count(),
            rules: p.rule_count(),
            cs: cit_sizes(&t).cs,
            monolithic_time: mt,
            decomposed_time: dt,
            speedup: mt.zip(dt).map(|(m, d)| m / d.max(1e-9)),
            answers_equal: mono.as_ref().zip(dec.as_ref()).map(|(m, d)| m.0 == d.0.result),
            note: notes.join("; "),
        });
    }
    let code = if rows.iter().any(|r| r.answers_equal == Some(false)) {
        exit::MISMATCH
    } else {
        exit::OK
    };
    let mut report = ctx.report(Section::Bench {
        semantics: args.semantics,
        rows,
    });
    report.workers = Some(opts.jobs);
    Ok(Outcome { report, code })
}

/// The bench rows as CSV with a header row.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    let opt = |v: Option<f64>| v.map_or_else(String::new, |x| format!("{x:.6}"));
    for r in rows {
        w.write_record([
            r.file.clone(),
            r.atoms.to_string(),
            r.rules.to_string(),
            r.cs.to_string(),
            opt(r.monolithic_time),
            opt(r.decomposed_time),
            r.speedup.map_or_else(String::new, |x| format!("{x:.3}")),
            r.answers_equal.map_or_else(String::new, |b| b.to_string()),
            r.note.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
}
