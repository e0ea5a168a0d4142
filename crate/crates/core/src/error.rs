use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("operation needs a field, got the truncated ring of order {0}")]
    UnsupportedRing(usize),

    #[error("mixed truncated rings: {0}")]
    MixedRings(String),

    #[error("invalid window: z_min {0} > z_max {1}")]
    InvalidWindow(i64, i64),

    #[error("unparseable token {token:?} at position {position}")]
    BadToken { token: String, position: usize },

    #[error("letters {left} and {right} do not compose into a walk (position {position})")]
    NotComposable {
        left: String,
        right: String,
        position: usize,
    },

    #[error("word contains the forbidden subword {subword} ({reason})")]
    ForbiddenSubword { subword: String, reason: String },

    #[error("module violates relations: {0}")]
    RelationViolation(String),

    #[error("module is projective: {0}")]
    Projective(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("lift does not satisfy the relations at order {0}")]
    InconsistentLift(usize),

    #[error("invariant breach: {0}")]
    InvariantBreach(String),

    #[error("invariance check failed:\n{0}")]
    InvarianceMismatch(String),
}

impl Error {
    /// Short machine-readable tag used in error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::Parse(_) => "parse",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::FieldMismatch(..) => "field_mismatch",
            Error::UnsupportedRing(_) => "unsupported_ring",
            Error::MixedRings(_) => "mixed_rings",
            Error::InvalidWindow(..) => "invalid_window",
            Error::BadToken { .. } => "bad_token",
            Error::NotComposable { .. } => "not_composable",
            Error::ForbiddenSubword { .. } => "forbidden_subword",
            Error::RelationViolation(_) => "relation_violation",
            Error::Projective(_) => "projective",
            Error::Precondition(_) => "precondition",
            Error::InconsistentLift(_) => "inconsistent_lift",
            Error::InvariantBreach(_) => "invariant_breach",
            Error::InvarianceMismatch(_) => "invariance_mismatch",
        }
    }
}
