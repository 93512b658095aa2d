//! Normal logic programs: parsing, printing, dependency graphs and marginalisation.

mod depgraph;
mod formula;
mod parse;
mod program;

pub use depgraph::DepGraph;
pub use formula::Formula;
pub use parse::parse_program;
pub use program::{Program, Restriction, Rule};
