use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} outside ground set [1, {n}]")]
    ElementOutOfRange { element: i64, n: usize },
    #[error("duplicate element {0}")]
    DuplicateElement(usize),
    #[error("ground set size {0} not in 1..=64")]
    GroundSetSize(usize),
    #[error("set {0:#x} is not a subset of the ground set")]
    NotSubset(u64),
    #[error("member of size {found} in a {expected}-uniform family")]
    Uniformity { expected: usize, found: usize },
    #[error("link set and avoid set overlap")]
    Overlap,
    #[error("covering number undefined: family contains the empty set")]
    EmptyMember,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("families are not cross-intersecting")]
    NotCrossIntersecting,
    #[error("instance too large: {0} (use force to override)")]
    TooLarge(String),
    #[error("contradictory constraints: {0}")]
    Contradictory(String),
    #[error("closed forms disagree for {what}: {first} vs {second}")]
    FormMismatch {
        what: String,
        first: String,
        second: String,
    },
    #[error("bad grid file: {0}")]
    Grid(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
