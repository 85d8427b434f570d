use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptyPointSet,

    #[error("dual is unbounded: the origin is not an interior point")]
    UnboundedDual,

    #[error("unsupported rank {0}: duality is implemented for ranks 1 to 3")]
    UnsupportedRank(usize),

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("the zero element has no Newton polytope")]
    ZeroElement,

    #[error("commutative image insufficient: {0}")]
    CommutativeImageInsufficient(String),

    #[error("degenerate relator: {0}")]
    DegenerateRelator(String),

    #[error("not a chain complex: {0}")]
    NotAChainComplex(String),

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("complex is not L2-acyclic: {0}")]
    NotAcyclic(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid json: {0}")]
    Json(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::EmptyPointSet => "empty_point_set",
            Error::UnboundedDual => "unbounded_dual",
            Error::UnsupportedRank(_) => "unsupported_rank",
            Error::GeneratorOutOfRange { .. } => "generator_out_of_range",
            Error::ZeroElement => "zero_element",
            Error::CommutativeImageInsufficient(_) => "commutative_image_insufficient",
            Error::DegenerateRelator(_) => "degenerate_relator",
            Error::NotAChainComplex(_) => "not_a_chain_complex",
            Error::NotAChainMap(_) => "not_a_chain_map",
            Error::NotAcyclic(_) => "not_acyclic",
            Error::Shape(_) => "shape_mismatch",
            Error::Parse { .. } => "parse_error",
            Error::Json(_) => "invalid_json",
            Error::Unsupported(_) => "unsupported",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected, found })
    }
}
