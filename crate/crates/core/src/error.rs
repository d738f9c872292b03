use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts must be positive integers, got {0}")]
    NonPositivePart(i64),

    #[error("cannot parse partition {input:?}: {reason}")]
    PartitionSyntax { input: String, reason: String },

    #[error("cannot parse bound rule {input:?}: {reason}")]
    BoundSyntax { input: String, reason: String },

    #[error("cannot parse congruence filter {input:?}: {reason}")]
    FilterSyntax { input: String, reason: String },

    #[error("residue {residue} is not below modulus {modulus}")]
    BadResidue { residue: u32, modulus: u32 },

    #[error("part {part} is repeated; distinct parts required")]
    RepeatedPart { part: u32 },

    #[error("part {part} has odd multiplicity {multiplicity}; even multiplicities required")]
    OddMultiplicity { part: u32, multiplicity: u32 },

    #[error("part {part} is even; only odd parts allowed")]
    EvenPart { part: u32 },

    #[error("part {part} is odd; only even parts allowed")]
    OddPart { part: u32 },

    #[error("part {part} appears {multiplicity} times, above the bound {bound}")]
    BoundViolation {
        part: u32,
        multiplicity: u32,
        bound: u32,
    },

    #[error("strict bound {bound} for part {part} must be even")]
    OddStrictBound { part: u32, bound: u32 },

    #[error("series truncations differ ({left} vs {right})")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("series gradings differ")]
    GradingMismatch,

    #[error("denominator factor {label} at index {index} has no positive-degree term")]
    NonUnitDenominator { label: String, index: u64 },

    #[error("factor {label}: degree does not increase at index {index}")]
    NonIncreasingDegree { label: String, index: u64 },

    #[error("substitution lowers the degree of variable {var}")]
    DegreeLoweringSubstitution { var: usize },

    #[error("integer overflow")]
    Overflow,
}
