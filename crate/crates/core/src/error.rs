use thiserror::Error;

/// Errors produced by the toolkit.
///
/// The variants fall into three families that the CLI maps to distinct exit
/// codes: operational/usage errors, cap violations, and verification failures
/// (`TheoremViolated`, `OrthogonalityBroken`, `ParametrizationViolated`).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group too large: order {order} exceeds cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("lattice too large: {classes} conjugacy classes exceed cap {cap}")]
    LatticeTooLarge { classes: usize, cap: usize },

    #[error("combinatorial cap exceeded: {0}")]
    CapExceeded(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("not normal: {0}")]
    NotNormal(String),

    #[error("cyclotomic order must be positive")]
    ZeroOrder,

    #[error("exponent {j} is not coprime to {order}")]
    NotCoprime { j: i64, order: u32 },

    #[error("value is not rational")]
    NotRational,

    #[error("unstable character: {0}")]
    UnstableCharacter(String),

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("orthogonality broken: {0}")]
    OrthogonalityBroken(String),

    #[error("parametrization violated: {0}")]
    ParametrizationViolated(String),

    #[error("theorem violated [{check}]: {detail}")]
    TheoremViolated { check: String, detail: String },
}

impl Error {
    pub fn violated(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::TheoremViolated {
            check: check.into(),
            detail: detail.into(),
        }
    }

    /// True for failures that falsify a verified statement rather than
    /// signal bad input or an exceeded cap.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::TheoremViolated { .. }
                | Error::OrthogonalityBroken(_)
                | Error::ParametrizationViolated(_)
        )
    }

    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. } | Error::LatticeTooLarge { .. } | Error::CapExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
