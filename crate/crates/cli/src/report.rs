//! The run report: everything a command prints, in a form that serialises
//! to JSON and renders to text. The text form is computed from the report
//! alone, so a parsed JSON report renders to the same text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use citsolve_core::cit::{CitFile, CitSizes};
use citsolve_core::independence::PartitionFile;
use citsolve_core::{ApproxPair, Program, QueryMode, Semantics, SemanticsResult, TruthValue};

pub const REPORT_SCHEMA: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    /// The command line, without the program name.
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub program: Option<ProgramStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub result: Section,
    #[serde(default)]
    pub timings: Vec<Timing>,
    #[serde(default)]
    pub leaves: Vec<LeafTiming>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgramStats {
    pub file: String,
    pub atoms: usize,
    pub rules: usize,
}

impl ProgramStats {
    pub fn of(file: &str, p: &Program) -> Self {
        ProgramStats {
            file: file.to_owned(),
            atoms: p.atom_count(),
            rules: p.rule_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub phase: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeafTiming {
    pub scope: Vec<String>,
    pub models: usize,
    pub seconds: f64,
}

/// A model as three (or four) sorted lists of atom names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModelView {
    #[serde(rename = "true")]
    pub true_atoms: Vec<String>,
    #[serde(rename = "false")]
    pub false_atoms: Vec<String>,
    pub undefined: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inconsistent: Vec<String>,
}

impl ModelView {
    pub fn of(p: &Program, m: &ApproxPair) -> Self {
        let names = |v: TruthValue| {
            let mut out: Vec<String> = m
                .atoms_with(v)
                .into_iter()
                .map(|a| p.universe().name(a).to_owned())
                .collect();
            out.sort();
            out
        };
        ModelView {
            true_atoms: names(TruthValue::T),
            false_atoms: names(TruthValue::F),
            undefined: names(TruthValue::U),
            inconsistent: names(TruthValue::C),
        }
    }

    /// Views of every model, sorted by their atom lists.
    pub fn all(p: &Program, r: &SemanticsResult) -> Vec<Self> {
        let mut out: Vec<Self> = r.models.iter().map(|m| ModelView::of(p, m)).collect();
        out.sort();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizesView {
    #[serde(with = "big")]
    pub cps: u128,
    pub cps_exponent: usize,
    pub leaf_count: usize,
    #[serde(with = "big")]
    pub cs: u128,
}

/// Counts that may exceed `u64`: a JSON number when they fit, a decimal
/// string otherwise.
mod big {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(*v) {
            Ok(n) => s.serialize_u64(n),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    struct Big;

    impl Visitor<'_> for Big {
        type Value = u128;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a non-negative integer or a decimal string")
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<u128, E> {
            Ok(v.into())
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<u128, E> {
            v.parse().map_err(E::custom)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        d.deserialize_any(Big)
    }
}

impl From<CitSizes> for SizesView {
    fn from(s: CitSizes) -> Self {
        SizesView {
            cps: s.cps,
            cps_exponent: s.cps_exponent,
            leaf_count: s.leaf_count,
            cs: s.cs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub file: String,
    pub atoms: usize,
    pub rules: usize,
    #[serde(with = "big")]
    pub cs: u128,
    /// Seconds; absent when the monolithic run hit a cutoff.
    pub monolithic_time: Option<f64>,
    pub decomposed_time: Option<f64>,
    pub speedup: Option<f64>,
    /// Absent when one side did not produce an answer.
    pub answers_equal: Option<bool>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "section", rename_all = "kebab-case")]
pub enum Section {
    Models {
        semantics: Semantics,
        models: Vec<ModelView>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sizes: Option<SizesView>,
    },
    Check {
        partition: PartitionFile,
        semantic_two_valued: bool,
        /// Absent when the four-valued check exceeds its cutoff.
        semantic_four_valued: Option<bool>,
        syntactic: bool,
        separated: bool,
        lower_stratum: bool,
    },
    Detect {
        partitions: Vec<PartitionFile>,
    },
    Tree {
        tree: CitFile,
        sizes: SizesView,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        written_to: Option<String>,
    },
    Query {
        semantics: Semantics,
        mode: QueryMode,
        atom: String,
        answer: bool,
        sizes: SizesView,
    },
    Bench {
        semantics: Semantics,
        rows: Vec<BenchRow>,
    },
}

impl RunReport {
    pub fn new(command: Vec<String>, result: Section) -> Self {
        RunReport {
            schema: REPORT_SCHEMA.to_owned(),
            command,
            program: None,
            workers: None,
            result,
            timings: Vec::new(),
            leaves: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Human-readable rendering. Lines carrying wall-clock measurements
    /// start with `time `.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.command.is_empty() {
            let _ = writeln!(s, "command: citsolve {}", self.command.join(" "));
        }
        if let Some(p) = &self.program {
            let _ = writeln!(s, "program: {} ({} atoms, {} rules)", p.file, p.atoms, p.rules);
        }
        if let Some(w) = self.workers {
            let _ = writeln!(s, "workers: {w}");
        }
        render_section(&mut s, &self.result);
        for t in &self.timings {
            let _ = writeln!(s, "time {}: {:.6} s", t.phase, t.seconds);
        }
        for l in &self.leaves {
            let _ = writeln!(
                s,
                "time leaf {{{}}}: {} model(s), {:.6} s",
                l.scope.join(", "),
                l.models,
                l.seconds
            );
        }
        s
    }
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "-".to_owned()
    } else {
        v.join(", ")
    }
}

fn block(v: &[String]) -> String {
    format!("{{{}}}", v.join(", "))
}

fn partition(p: &PartitionFile) -> String {
    format!("<{}, {}, {}>", block(&p.a1), block(&p.a2), block(&p.a3))
}

fn sizes(s: &mut String, z: &SizesView) {
    let _ = writeln!(
        s,
        "cit: cps = 2^{} = {}, leaves = {}, cs = {}",
        z.cps_exponent, z.cps, z.leaf_count, z.cs
    );
}

fn outline(s: &mut String, node: &CitFile, depth: usize) {
    let _ = writeln!(
        s,
        "  {}<{}, {}, {}>",
        "  ".repeat(depth),
        block(&node.a1),
        block(&node.a2),
        block(&node.a3)
    );
    for c in &node.children {
        outline(s, c, depth + 1);
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_owned(), |x| format!("{x:.6}"))
}

fn render_section(s: &mut String, section: &Section) {
    match section {
        Section::Models {
            semantics,
            models,
            sizes: z,
        } => {
            if let Some(z) = z {
                sizes(s, z);
            }
            let _ = writeln!(s, "semantics: {semantics}");
            let _ = writeln!(s, "models: {}", models.len());
            for (i, m) in models.iter().enumerate() {
                let _ = writeln!(s, "model {}", i + 1);
                let _ = writeln!(s, "  true: {}", list(&m.true_atoms));
                let _ = writeln!(s, "  false: {}", list(&m.false_atoms));
                let _ = writeln!(s, "  undefined: {}", list(&m.undefined));
                if !m.inconsistent.is_empty() {
                    let _ = writeln!(s, "  inconsistent: {}", list(&m.inconsistent));
                }
            }
        }
        Section::Check {
            partition: p,
            semantic_two_valued,
            semantic_four_valued,
            syntactic,
            separated,
            lower_stratum,
        } => {
            let _ = writeln!(s, "partition: {}", partition(p));
            let _ = writeln!(s, "semantic: {semantic_two_valued}");
            let four = semantic_four_valued.map_or_else(|| "skipped (cutoff)".to_owned(), |b| b.to_string());
            let _ = writeln!(s, "semantic (four-valued): {four}");
            let _ = writeln!(s, "syntactic: {syntactic}");
            let _ = writeln!(s, "  sides not connected: {separated}");
            let _ = writeln!(s, "  pivot in a lower stratum: {lower_stratum}");
        }
        Section::Detect { partitions } => {
            if partitions.is_empty() {
                let _ = writeln!(s, "no non-trivial partition");
            } else {
                let _ = writeln!(s, "partitions: {}", partitions.len());
                for p in partitions {
                    let _ = writeln!(s, "  {}", partition(p));
                }
            }
        }
        Section::Tree {
            tree,
            sizes: z,
            written_to,
        } => {
            sizes(s, z);
            let _ = writeln!(s, "tree:");
            outline(s, tree, 0);
            if let Some(path) = written_to {
                let _ = writeln!(s, "written to {path}");
            }
        }
        Section::Query {
            semantics,
            mode,
            atom,
            answer,
            sizes: z,
        } => {
            sizes(s, z);
            let mode = match mode {
                QueryMode::Credulous => "credulous",
                QueryMode::Skeptical => "skeptical",
            };
            let _ = writeln!(s, "semantics: {semantics}");
            let _ = writeln!(s, "query: {mode} {atom}");
            let _ = writeln!(s, "answer: {answer}");
        }
        Section::Bench { semantics, rows } => {
            let _ = writeln!(s, "semantics: {semantics}");
            for r in rows {
                let eq = r.answers_equal.map_or_else(|| "-".to_owned(), |b| b.to_string());
                let _ = writeln!(
                    s,
                    "{}: {} atoms, {} rules, cs {}, equal {eq}{}",
                    r.file,
                    r.atoms,
                    r.rules,
                    r.cs,
                    if r.note.is_empty() { String::new() } else { format!(" ({})", r.note) }
                );
                let _ = writeln!(
                    s,
                    "time {}: monolithic {} s, decomposed {} s, speedup {}",
                    r.file,
                    opt(r.monolithic_time),
                    opt(r.decomposed_time),
                    r.speedup.map_or_else(|| "-".to_owned(), |x| format!("{x:.2}"))
                );
            }
        }
    }
}
