//! Natural-vector calculus: interchanges and compressions, homogenization,
//! majorization, stacking of irreducible factors, homogeneous partitioning.

mod partition;
mod stacking;
mod vecops;

pub use partition::{homogeneous_partition, Partitioning};
pub use stacking::{stack_factors, StackingLayout};
pub use vecops::{
    homogenize_vector, majorizes, majorizes_signed, realize_majorization, replay, solve_dio, NatVec, VecOp,
};
