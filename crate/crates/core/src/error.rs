use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QecError {
    #[error("unknown operator label `{0}`")]
    UnknownOperator(String),
    #[error("qutrit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{n} qutrits exceeds the supported maximum of {max}")]
    TooManyQutrits { n: usize, max: usize },
    #[error("at least {min} qutrits required, got {n}")]
    TooFewQutrits { n: usize, min: usize },
    #[error("qutrit index {index} out of range for {n} qutrits")]
    QutritIndex { index: usize, n: usize },
    #[error("control and target must differ (both {0})")]
    SameQutrit(usize),
    #[error("invalid basis string `{0}`")]
    InvalidBasis(String),
    #[error("state is not an eigenstate of stabilizer {stabilizer} (residual {residual:.3e})")]
    NotAnEigenstate { stabilizer: usize, residual: f64 },
    #[error("syndrome {0:?} is not in the decode tables")]
    UnrecognizedSyndrome(Vec<u8>),
    #[error("stabilizer {0} mixes X-type and Z-type factors")]
    NonCss(usize),
    #[error(
        "ancilla {ancilla} is not in a definite basis state (max probability {max_probability:.6})"
    )]
    AncillaNotDefinite {
        ancilla: usize,
        max_probability: f64,
    },
    #[error("invalid qutrit pair ({0}, {1})")]
    InvalidPair(usize, usize),
    #[error(
        "pair ({0}, {1}) lies entirely in g2; simultaneous bit errors there cannot be identified"
    )]
    PairUnsupported(usize, usize),
    #[error("greedy generation failed for pair ({i}, {j}): {reason}")]
    GenerationFailed { i: usize, j: usize, reason: String },
    #[error("no stabilizer set passes every predicate for pair ({0}, {1})")]
    NotFound(usize, usize),
    #[error("weight bound {wmax} exceeds the supported maximum of {max}")]
    WeightBound { wmax: usize, max: usize },
    #[error("no witness found for pair ({0}, {1})")]
    NoWitness(usize, usize),
}

pub type Result<T> = std::result::Result<T, QecError>;
