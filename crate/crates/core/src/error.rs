//! Crate-wide error type.

use thiserror::Error;

use crate::ring::CoefficientRing;

/// Errors raised by construction and arithmetic across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime modulus {0} out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),

    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),

    #[error("row bound mismatch: {0} vs {1}")]
    RowBoundMismatch(u16, u16),

    #[error("row bound {0} out of range (need 1 <= n <= 12)")]
    RowBoundOutOfRange(u16),

    #[error("row index {row} exceeds row bound {bound}")]
    RowOutOfBounds { row: u16, bound: u16 },

    #[error("variable index must be positive")]
    ZeroIndex,

    #[error("x- and t-variables cannot be mixed")]
    MixedKinds,

    #[error("expected an x-kind polynomial")]
    ExpectedXKind,

    #[error("expected a t-kind polynomial")]
    ExpectedTKind,

    #[error("expected coefficient ring {expected}, found {found}")]
    WrongRing {
        expected: &'static str,
        found: CoefficientRing,
    },

    #[error("operation requires field coefficients, found {0}")]
    NotAField(CoefficientRing),

    #[error("characteristic obstruction: p <= n (p = {p}, n = {n})")]
    CharacteristicObstruction { p: u32, n: u16 },

    #[error("column map is not injective: columns {0} and {1} collide on {2}")]
    NonInjectiveColumnMap(u32, u32, u32),

    #[error("permutation images {0:?} are not a bijection on 1..={1}")]
    NotAPermutation(Vec<u16>, u16),

    #[error("permutation length {perm} does not match row bound {bound}")]
    PermutationSizeMismatch { perm: usize, bound: u16 },

    #[error("target row count {target} exceeds row bound {bound}")]
    TruncationOutOfRange { target: u16, bound: u16 },

    #[error("column substitution requires k != l (got {0})")]
    EqualColumns(u32),

    #[error("expected {expected} column indices, got {got}")]
    WrongColumnCount { expected: u16, got: usize },

    #[error("cycle length {0} must be at least 3")]
    CycleTooShort(u32),

    #[error("cycle length {0} out of supported range {1}..={2}")]
    CycleLengthOutOfRange(u32, u32, u32),

    #[error("truncation width {width} is below the column support size {support}")]
    WidthTooSmall { width: u32, support: u32 },

    #[error("polynomial has columns outside 1..={width}")]
    ColumnsExceedWidth { width: u32 },

    #[error("polynomial is not multihomogeneous: {0}")]
    NotMultihomogeneous(String),

    #[error("ambient {0} is not supported by this oracle")]
    UnsupportedAmbient(&'static str),

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("generator index {index} out of range ({count} generators)")]
    GeneratorIndexOutOfRange { index: usize, count: usize },

    #[error("generator is not symmetric: {0}")]
    AsymmetricGenerator(String),

    #[error("prime {p} exceeds row bound {n}: no obstruction in this regime")]
    ObstructionNotApplicable { p: u32, n: u16 },

    #[error("audit parameters out of range: p = {p} (allowed 2, 3, 5), width = {width} (allowed <= 5)")]
    AuditParamsOutOfRange { p: u32, width: u32 },

    #[error("malformed certificate candidate: {0}")]
    MalformedCandidate(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("certificate document is malformed: {0}")]
    CertificateFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
