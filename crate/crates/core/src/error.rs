use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("angle {t}/{n} of a full turn has cosine or sine outside Q(sqrt2)")]
    UnsupportedAngle { t: i64, n: i64 },
    #[error("closure exceeds cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },
    #[error("element order does not divide 8")]
    ExponentTooLarge,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a sphere: {0}")]
    NotASphere(String),
    #[error("no Weyl representative: {0}")]
    NoRepresentative(String),
    #[error("(w-w+)^n not in H for n <= {cap}")]
    OrderExceedsCap { cap: usize },
    #[error("non-integral matrix entry: {0}")]
    NonIntegralEntry(String),
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("not canonicalizable: {0}")]
    NonCanonicalizable(String),
    #[error("unrecognized slopes: {0}")]
    Unrecognized(String),
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
