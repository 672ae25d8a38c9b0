use thiserror::Error;

use crate::classifier::Witness;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty composition")]
    EmptyComposition,

    #[error("composition {0} has weight zero")]
    ZeroWeight(String),

    #[error("composition {0} is not symmetric")]
    Asymmetric(String),

    #[error("weights differ across components: {0}")]
    WeightMismatch(String),

    #[error("odd total dimension {0}; a symplectic space has even dimension")]
    OddWeight(u32),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("zero-dimensional objects are not allowed")]
    ZeroDimensional,

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("object is not symplectic with respect to the standard form")]
    NotSymplectic,

    #[error("dimension vector is of infinite type (witness {0})")]
    InfiniteType(Witness),

    #[error("no catalog entry for {0}")]
    UnknownLabel(String),

    #[error("indecomposability undecided for an object of dimension {0}: End/rad has dimension {1} and no idempotent was found")]
    Undecided(String, usize),

    #[error("piece of dimension {0} does not match any catalog indecomposable")]
    UnmatchedPiece(String),

    #[error("no F-indecomposable representative found for {0}")]
    SearchExhausted(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::EmptyComposition => "empty_composition",
            Error::ZeroWeight(_) => "zero_weight",
            Error::Asymmetric(_) => "asymmetric",
            Error::WeightMismatch(_) => "weight_mismatch",
            Error::OddWeight(_) => "odd_weight",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::ZeroDimensional => "zero_dimensional",
            Error::InvalidFlag(_) => "invalid_flag",
            Error::NotSymplectic => "not_symplectic",
            Error::InfiniteType(_) => "infinite_type",
            Error::UnknownLabel(_) => "unknown_label",
            Error::Undecided(..) => "undecided",
            Error::UnmatchedPiece(_) => "unmatched_piece",
            Error::SearchExhausted(_) => "search_exhausted",
            Error::SizeGuard(_) => "size_guard",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
