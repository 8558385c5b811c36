use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has {edges} edges; at most {max} are supported")]
    CapacityExceeded { edges: usize, max: usize },

    #[error("cycle {cycle} has length {length}; cycle lengths must be at least 3")]
    InvalidLength { cycle: usize, length: usize },

    #[error("cycle count must be at least 1 and match the length list (r = {r}, {lengths} lengths given)")]
    InvalidCycleCount { r: usize, lengths: usize },

    #[error("forest edge {edge} attaches to unknown vertex {vertex}")]
    BadAttachment { edge: usize, vertex: usize },

    #[error("composite cycle index out of range: start {start}, span {span}, r = {r}")]
    IndexOutOfRange { start: usize, span: usize, r: usize },

    #[error("{what}: search space of {size} exceeds the cap of {cap}")]
    SearchSpaceTooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("ideal has no generators")]
    EmptyIdeal,

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("ordering fails to exhibit quasi-linear quotients at step {step} (minimum colon degree {mindeg})")]
    CertificateFails { step: usize, mindeg: usize },
}
