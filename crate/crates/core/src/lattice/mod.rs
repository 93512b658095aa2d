//! Powerset and bilattice algebra over a fixed atom universe.
//!
//! Product lattices of powersets are represented by a single powerset over
//! the union of their atoms; a factor is then just a [`Scope`].

mod bits;
mod fixpoint;
mod interp;
mod truth;

pub use bits::{Bits, Subsets};
pub use fixpoint::{kleene_lfp, kleene_lfp_from};
pub use interp::{ApproxPair, AtomUniverse, Interp, Scope, Universe};
pub use truth::TruthValue;
