use thiserror::Error;

use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate point identifier `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("nearness input is not symmetric between `{0}` and `{1}`")]
    NonSymmetricInput(String, String),
    #[error("subset table is not point-determined: {reason} (E = {e:?}, F = {f:?}, G = {g:?})")]
    TableNotPointDetermined { reason: String, e: Subset, f: Subset, g: Subset },
    #[error("subset has {got} bits but the space has {expected} points")]
    SubsetDimensionMismatch { expected: usize, got: usize },
    #[error("ground set of {size} points exceeds the exhaustive cap of {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("theorem violated (internal inconsistency): {0}")]
    TheoremViolation(String),
    #[error("carrier of a subspace must be nonempty")]
    EmptyCarrier,
    #[error("point `{0}` has no feature vector")]
    MissingVector(String),
    #[error("feature vector arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("maps disagree on shared point `{0}`")]
    DisagreeOnIntersection(String),
    #[error("codomains differ")]
    CodomainMismatch,
    #[error("domains differ")]
    DomainMismatch,
    #[error("carrier is not a subset of the map's domain")]
    CarrierNotInDomain,
    #[error("enumeration of {needed} candidates exceeds the cap of {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u128 },
    #[error("search exceeded its cap of {0} steps")]
    SearchCapExceeded(u64),
    #[error("slice at `{0}` is not proximally continuous")]
    SliceNotPc(String),
    #[error("domain is not a digital interval")]
    DomainNotInterval,
    #[error("input map is not proximally continuous")]
    NotPcInput,
    #[error("map is not surjective (missing `{0}`)")]
    NotSurjective(String),
    #[error("map is not proximally continuous")]
    NotPc,
    #[error("point `{0}` is not in the codomain")]
    PointNotInCodomain(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("{0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
