use thiserror::Error;

/// Errors raised by the arithmetic kernels and the verification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("step {step}: constant term is not a uniformizer times a unit, or a coefficient is not divisible by the uniformizer")]
    NonEisenstein { step: usize },
    #[error("unsupported residue field: residue degree {0} (only F_2 and F_4 are supported)")]
    UnsupportedResidueField(u32),
    #[error("unsupported tower: {0}")]
    UnsupportedTower(String),
    #[error("invalid precision context: {0}")]
    InvalidPrecision(String),
    #[error("division by an element indistinguishable from zero at working precision")]
    DivisionByZeroAtPrecision,
    #[error("precision exhausted: need {needed} digits, have {available}")]
    PrecisionExhausted { needed: u32, available: u32 },
    #[error("valuation of an element indistinguishable from zero")]
    ZeroValuation,
    #[error("element has negative valuation")]
    NegativeValuation,
    #[error("no non-trivial 3-torsion: residue field is F_2")]
    NoThreeTorsion,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("bad filtration range {i}..{j}")]
    BadRange { i: u32, j: u32 },
    #[error("operation requires absolute ramification index {expected}, field has {actual}")]
    RamificationMismatch { expected: u32, actual: u32 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("multiset size or trivial-conductor count is not a power of two")]
    NotPowerOfTwo,
    #[error("invalid filtration signature: {0}")]
    InvalidSignature(String),
    #[error("unsupported lemma base: {0}")]
    UnsupportedBase(String),
    #[error("action is not an automorphism of the character group")]
    ActionNotAutomorphism,
    #[error("action does not preserve the conductor filtration")]
    ActionNotFiltered,
    #[error("unsupported field Q(sqrt({0}))")]
    UnsupportedField(i64),
    #[error("Selmer reduction failed: {0}")]
    ReductionFailure(String),
    #[error("recomputed extension list disagrees with the embedded table for d = {d}: {detail}")]
    ListMismatch { d: i64, detail: String },
    #[error("witness is not a unit of the quartic field")]
    WitnessNotUnit,
    #[error("witness is not totally positive")]
    WitnessNotTotallyPositive,
    #[error("degree {0} is below the range of the discriminant-bound table")]
    BelowTableRange(u64),
    #[error("data table: line {line}: {msg}")]
    DataFormat { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
