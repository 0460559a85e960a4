use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid torus: periodicity vectors ({ux},{uy}) and ({vx},{vy}) are collinear")]
    InvalidTorus { ux: i64, uy: i64, vx: i64, vy: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("defect plaquette ({i},{j}) outside the {m}x{l} grid")]
    DefectOutOfBounds { i: usize, j: usize, m: usize, l: usize },

    #[error("plaquette ({i},{j}) carries more than one defect")]
    DuplicateDefect { i: usize, j: usize },

    #[error("capacity exceeded: {what} is {actual}, limit {limit}")]
    Capacity {
        what: &'static str,
        actual: u64,
        limit: u64,
    },

    #[error("fermion sector {f} out of range (max {f_max})")]
    SectorOutOfRange { f: usize, f_max: usize },

    #[error("lattice spec: {0}")]
    Spec(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn capacity(what: &'static str, actual: impl TryInto<u64>, limit: impl TryInto<u64>) -> Self {
        Error::Capacity {
            what,
            actual: actual.try_into().unwrap_or(u64::MAX),
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
