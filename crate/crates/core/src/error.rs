use thiserror::Error;

/// Broad classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: malformed data, unknown names, violated preconditions.
    Input,
    /// A verification step produced a mathematically wrong result.
    Check,
    /// A search or computation ran out of its budget.
    Resource,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a supported prime")]
    NonPrimeModulus(u64),
    #[error("the zero ideal is not accepted here")]
    ZeroIdeal,
    #[error("the zero polynomial is not accepted here")]
    ZeroPolynomial,
    #[error("ambient dimension {0} is not supported (need N >= 2)")]
    BadDimension(usize),
    #[error("center constrains {0} coordinate(s); at least 2 are needed for an exceptional divisor")]
    Codim1Center(usize),
    #[error("unknown chart {0}")]
    UnknownChart(usize),
    #[error("constant {0} is not in the coefficient field")]
    ConstantNotInField(String),
    #[error("center in chart {chart} meets the center blown up at step {step}")]
    StaleChart { chart: usize, step: usize },
    #[error("unknown divisor E{0}")]
    UnknownDivisor(usize),
    #[error("no point on E{divisor} passes the avoidance predicates ({tried} candidates tried)")]
    GeneralPointNotFound { divisor: usize, tried: usize },
    #[error("Gröbner step budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("ideal is not monomial")]
    NonMonomialIdeal,
    #[error("ideal does not vanish at the origin")]
    IdealNotAtOrigin,
    #[error("divisor E{0} has valuation 0 on the ideal")]
    DivisorMissesIdeal(usize),
    #[error("lifted tower breaks containment at step {0}")]
    ContainmentBroken(usize),
    #[error("first blow-up of the tower is not the origin")]
    FirstStepNotOrigin,
    #[error("divisor E{0} is not centered at the origin")]
    DivisorNotOverOrigin(usize),
    #[error("bridge identity failed: {0}")]
    BridgeIdentityFailed(String),
    #[error("independent computations disagree: {0}")]
    OracleMismatch(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("coefficient {0} is not p-integral")]
    NotPIntegral(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BridgeIdentityFailed(_) | Error::ContainmentBroken(_) | Error::OracleMismatch(_) => {
                ErrorKind::Check
            }
            Error::GeneralPointNotFound { .. } | Error::BudgetExceeded(_) => ErrorKind::Resource,
            _ => ErrorKind::Input,
        }
    }

    /// Stable identifier printed in diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrimeModulus(_) => "NonPrimeModulus",
            Error::ZeroIdeal => "ZeroIdeal",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::BadDimension(_) => "BadDimension",
            Error::Codim1Center(_) => "Codim1Center",
            Error::UnknownChart(_) => "UnknownChart",
            Error::ConstantNotInField(_) => "ConstantNotInField",
            Error::StaleChart { .. } => "StaleChart",
            Error::UnknownDivisor(_) => "UnknownDivisor",
            Error::GeneralPointNotFound { .. } => "GeneralPointNotFound",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::UnitIdeal => "UnitIdeal",
            Error::NonMonomialIdeal => "NonMonomialIdeal",
            Error::IdealNotAtOrigin => "IdealNotAtOrigin",
            Error::DivisorMissesIdeal(_) => "DivisorMissesIdeal",
            Error::ContainmentBroken(_) => "ContainmentBroken",
            Error::FirstStepNotOrigin => "FirstStepNotOrigin",
            Error::DivisorNotOverOrigin(_) => "DivisorNotOverOrigin",
            Error::BridgeIdentityFailed(_) => "BridgeIdentityFailed",
            Error::OracleMismatch(_) => "OracleMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::RingMismatch(_) => "RingMismatch",
            Error::NotPIntegral(_) => "NotPIntegral",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
