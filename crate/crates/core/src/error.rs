use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("divisor has a vanishing constant term")]
    ZeroConstantTerm,
    #[error("exponent series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("invalid chart parameters: {0}")]
    InvalidParams(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("need coefficients through index {needed}, have {available}")]
    InsufficientCoefficients { needed: usize, available: usize },
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("model {model} cannot generate coefficient c_{needed}")]
    ModelInsufficient { model: String, needed: usize },
    #[error("coefficient sequence is not normalized: {0}")]
    NotNormalized(String),
    #[error("rotation angle {0} has no exact rational form")]
    IrrationalRotation(f64),
    #[error("coefficient cap violated: |a_{index}| = {modulus} > {cap}")]
    CapViolated { index: usize, modulus: f64, cap: f64 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
