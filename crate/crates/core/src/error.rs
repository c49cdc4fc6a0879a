use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point set is not invariant under the group")]
    NotInvariant,
    #[error("generator does not permute the block family")]
    NotABlockAction,
    #[error("group is not solvable")]
    NotSolvable,

    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),
    #[error("not a tournament: {0}")]
    NotATournament(String),
    #[error("invalid color index {0}")]
    InvalidColor(usize),
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("k must be at least 1")]
    InvalidK,

    #[error("instance size {n} exceeds brute-force cap {cap}")]
    OverOracleCap { n: usize, cap: usize },

    #[error("invalid auxiliary input: {0}")]
    InvalidAuxInput(String),
    #[error("isomorphism classes are not all equal (|pi| = {0})")]
    PartitionNotTrivial(usize),

    #[error("input is not {k}-spanning")]
    NotSpanning { k: usize },
    #[error("restart budget {0} exceeded")]
    RestartBudget(usize),
    #[error("incompatible inputs: {0}")]
    Incompatible(String),

    #[error("invalid Cayley input: {0}")]
    InvalidCayley(String),
    #[error("sampling budget exhausted after {0} attempts")]
    SamplingBudget(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
