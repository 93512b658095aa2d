//! Approximation-fixpoint semantics for propositional normal logic programs,
//! with conditional-independence detection and decomposed solving.
//!
//! ```
//! use citsolve_core::{parse_program, solve, Limits, Semantics};
//!
//! let p = parse_program("a. b :- not c. c :- not b.").unwrap();
//! let stable = solve(&p, Semantics::Stable, &Limits::default()).unwrap();
//! assert_eq!(stable.models.len(), 2);
//! ```

pub mod cit;
pub mod corpus;
pub mod error;
pub mod independence;
pub mod lattice;
pub mod limits;
pub mod semantics;
pub mod syntax;

pub use cit::{build_cit, cit_sizes, query_decomposed, solve_decomposed, Cit, CitConfig, QueryMode, SolveOptions};
pub use error::{Error, Result};
pub use independence::{ci_semantic, ci_syntactic, detect_partitions, CiMode, Partition3};
pub use lattice::{ApproxPair, AtomUniverse, Interp, Scope, TruthValue, Universe};
pub use limits::Limits;
pub use semantics::{solve, Semantics, SemanticsResult};
pub use syntax::{parse_program, Program, Rule};
