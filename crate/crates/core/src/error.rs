use thiserror::Error;

/// Errors raised by the series engine, map constructors and verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must hold at least one coefficient")]
    EmptySeries,

    #[error("non-finite coefficient at degree {degree}")]
    NonFinite { degree: usize },

    #[error("cannot differentiate constant-only truncation")]
    ConstantDerivative,

    #[error("composition requires ω(0)=0")]
    CompositionConstant,

    #[error("division by series with zero constant term")]
    DivisionByZeroConstant,

    #[error("truncation order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("order mismatch: h has order {h}, g has order {g}")]
    OrderMismatch { h: usize, g: usize },

    #[error("normalization violated: {coefficient} = {value} (expected {expected})")]
    Normalization {
        coefficient: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("ε outside closed disk (|ε| = {0})")]
    EpsilonOutsideDisk(f64),

    #[error("h' vanishes at origin")]
    DegenerateDerivative,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("critical point at φ(0)")]
    CriticalPoint,

    #[error("vanishing denominator in {0}")]
    VanishingDenominator(&'static str),

    #[error("empty family")]
    EmptyFamily,

    #[error("profile {0} has no majorant closed form")]
    NoClosedForm(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("Schwarz function leaves the unit disk: sup |ω| = {0}")]
    NotSchwarz(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
