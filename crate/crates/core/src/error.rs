use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("subgroups belong to different ambient groups")]
    AmbientMismatch,
    #[error("subgroup is not in the lattice")]
    NotInLattice,
    #[error("isomorphism search is only guaranteed up to order {bound}, got order {order}")]
    IsoBound { order: usize, bound: usize },
    #[error("oracle enumeration is limited to order {bound}, got order {order}")]
    OracleBound { order: usize, bound: usize },
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid ZM parameters: {0}")]
    Zm(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("{0}")]
    Selector(String),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
