use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("gcd table bound {m} needs {cells} cells, over the budget of {budget}")]
    Capacity { m: usize, cells: u128, budget: usize },

    #[error("gcd lookup ({i}, {j}) outside table bound {m}")]
    OutOfTable { i: u64, j: u64, m: usize },

    #[error("the zero vector has no direction")]
    ZeroVector,

    #[error("vectors {0} and {1} point in the same direction")]
    DuplicateDirection(LatticeVector, LatticeVector),

    /// Two inputs of the radial bucket sort fell into the same bucket,
    /// which only happens for duplicated or non-visible vectors.
    #[error("bucket {bucket} received both {first} and {second}")]
    BucketCollision {
        bucket: u64,
        first: LatticeVector,
        second: LatticeVector,
    },

    #[error("all points are collinear")]
    Degenerate,
}
