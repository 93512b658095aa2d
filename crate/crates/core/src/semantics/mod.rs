//! Operators on the bilattice and the semantics they induce.

mod enumerate;
mod fixpoints;
mod operators;
mod reduct;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use enumerate::{enumerate_fixpoints, FixpointMode, ResultKind, SemanticsResult};
pub(crate) use enumerate::mask_interp;
pub use fixpoints::{kripke_kleene, lower_revision, stable_op, upper_revision, well_founded};
pub use operators::{
    eval_body, ic2, ic4, ultimate, ultimate_with, Approximator, FourValued, Revision, Ultimate,
};
pub use reduct::gl_reduct_stable;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::syntax::Program;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    Supported,
    #[serde(rename = "kk")]
    KripkeKleene,
    PartialStable,
    Stable,
    #[serde(rename = "wf")]
    WellFounded,
    #[serde(rename = "ultimate-wf")]
    UltimateWellFounded,
}

impl Semantics {
    pub const ALL: [Semantics; 6] = [
        Semantics::Supported,
        Semantics::KripkeKleene,
        Semantics::PartialStable,
        Semantics::Stable,
        Semantics::WellFounded,
        Semantics::UltimateWellFounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Supported => "supported",
            Semantics::KripkeKleene => "kk",
            Semantics::PartialStable => "partial-stable",
            Semantics::Stable => "stable",
            Semantics::WellFounded => "wf",
            Semantics::UltimateWellFounded => "ultimate-wf",
        }
    }

    /// Kripke-Kleene and the well-founded variants denote exactly one model.
    pub fn is_unique(self) -> bool {
        matches!(
            self,
            Semantics::KripkeKleene | Semantics::WellFounded | Semantics::UltimateWellFounded
        )
    }

    /// Every model is two-valued.
    pub fn is_two_valued(self) -> bool {
        matches!(self, Semantics::Supported | Semantics::Stable)
    }

    pub fn result_kind(self) -> ResultKind {
        match self {
            Semantics::Supported => ResultKind::Supported,
            Semantics::KripkeKleene => ResultKind::KripkeKleene,
            Semantics::PartialStable => ResultKind::PartialStable,
            Semantics::Stable => ResultKind::Stable,
            Semantics::WellFounded => ResultKind::WellFounded,
            Semantics::UltimateWellFounded => ResultKind::UltimateWellFounded,
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "supported" => Semantics::Supported,
            "kk" | "kripke-kleene" => Semantics::KripkeKleene,
            "partial-stable" => Semantics::PartialStable,
            "stable" => Semantics::Stable,
            "wf" | "well-founded" => Semantics::WellFounded,
            "ultimate-wf" | "ultimate-well-founded" => Semantics::UltimateWellFounded,
            other => {
                return Err(Error::usage(format!(
                    "unknown semantics `{other}` (expected supported, kk, partial-stable, stable, wf, ultimate-wf)"
                )))
            }
        })
    }
}

/// Solves `program` monolithically.
pub fn solve(program: &Program, semantics: Semantics, limits: &Limits) -> Result<SemanticsResult> {
    let op = ic4(program);
    let kind = semantics.result_kind();
    match semantics {
        Semantics::Supported => enumerate_fixpoints(&op, FixpointMode::Supported, limits),
        Semantics::PartialStable => enumerate_fixpoints(&op, FixpointMode::Stable, limits),
        Semantics::Stable => enumerate_fixpoints(&op, FixpointMode::TwoValuedStable, limits),
        Semantics::KripkeKleene => Ok(SemanticsResult::new(kind, vec![kripke_kleene(&op)?])),
        Semantics::WellFounded => Ok(SemanticsResult::new(kind, vec![well_founded(&op)?])),
        Semantics::UltimateWellFounded => {
            let u = ultimate_with(program, limits);
            Ok(SemanticsResult::new(kind, vec![well_founded(&u)?]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn names_round_trip() {
        for s in Semantics::ALL {
            assert_eq!(s.name().parse::<Semantics>().unwrap(), s);
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(json, format!("\"{}\"", s.name()));
        }
        assert!("nope".parse::<Semantics>().is_err());
    }

    #[test]
    fn empty_program_under_every_semantics() {
        let p = parse_program("").unwrap();
        for s in Semantics::ALL {
            let r = solve(&p, s, &Limits::default()).unwrap();
            assert_eq!(r.models.len(), 1, "{s}");
            assert!(r.models[0].lower.is_empty());
        }
    }

    #[test]
    fn not_p() {
        let p = parse_program("p :- not p.").unwrap();
        let l = Limits::default();
        assert!(solve(&p, Semantics::Stable, &l).unwrap().is_empty());
        assert!(solve(&p, Semantics::Supported, &l).unwrap().is_empty());
        let wf = solve(&p, Semantics::WellFounded, &l).unwrap();
        assert!(wf.models[0].lower.is_empty() && wf.models[0].upper.len() == 1);
    }
}
