use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which configurable size limit an operation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    Subgroup,
    NormalLattice,
    Oracle,
    TowerOrder,
    Enumeration,
    Complement,
}

impl CapKind {
    pub fn env_var(self) -> &'static str {
        match self {
            CapKind::Subgroup => "FITKIT_CAP_SUBGROUP",
            CapKind::NormalLattice => "FITKIT_CAP_LATTICE",
            CapKind::Oracle => "FITKIT_CAP_ORACLE",
            CapKind::TowerOrder => "FITKIT_CAP_TOWER",
            CapKind::Enumeration => "FITKIT_CAP_ENUMERATION",
            CapKind::Complement => "FITKIT_CAP_COMPLEMENT",
        }
    }
}

impl fmt::Display for CapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CapKind::Subgroup => "subgroup",
            CapKind::NormalLattice => "lattice",
            CapKind::Oracle => "oracle",
            CapKind::TowerOrder => "tower",
            CapKind::Enumeration => "enumeration",
            CapKind::Complement => "complement",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{}", match line { Some(l) => format!("parse error at line {l}: {msg}"), None => format!("parse error: {msg}") })]
    Parse { line: Option<usize>, msg: String },

    #[error("{0}")]
    NotSubgroup(String),

    #[error("{0}")]
    NotNormal(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("exponent must be positive")]
    ZeroExponent,

    #[error("{kind} cap exceeded: {value} > {limit} (override with --cap-{kind} or {})", kind.env_var())]
    CapExceeded { kind: CapKind, limit: u128, value: u128 },

    #[error("group order overflows 128 bits")]
    OrderOverflow,

    #[error("generator images do not define a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("projection at level {level} is not surjective")]
    NotSurjective { level: usize },

    #[error("supernatural arithmetic: {0}")]
    Arithmetic(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("internal verification failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn cap(kind: CapKind, limit: u128, value: u128) -> Error {
        Error::CapExceeded { kind, limit, value }
    }
}
