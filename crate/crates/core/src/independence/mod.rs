//! Conditional independence between parts of a program's atom lattice.

mod check;
mod detect;
mod mask;
mod partition;

pub use check::{
    certify, check_symmetry, check_weak_union, ci_semantic, ci_semantic_components, ci_syntactic,
    darwiche_entails, stratifiable, syntactic_witness, CiCertificate, CiMethod, CiMode,
    SyntacticWitness,
};
pub use detect::{detect_partitions, detect_partitions_with, DetectConfig};
pub use partition::{Partition3, PartitionFile};
