//! Conditional-independence trees and decomposed solving.

mod solve;
mod tree;

pub use solve::{query_decomposed, solve_decomposed, Decomposed, LeafRun, QueryAnswer, QueryMode, SolveOptions};
pub use tree::{build_cit, cit_sizes, Cit, CitConfig, CitFile, CitNode, CitSizes, CIT_SCHEMA};
