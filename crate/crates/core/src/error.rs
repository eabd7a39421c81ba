use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("NotOnCircle: c² + s² ≠ 1")]
    NotOnCircle,
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("BackendMismatch: {0}")]
    BackendMismatch(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("NotSymmetric")]
    NotSymmetric,
    #[error("EmptyRelation")]
    EmptyRelation,
    #[error("NotAState: relation has {0} input modes")]
    NotAState(usize),
    #[error("NotLagrangian")]
    NotLagrangian,
    #[error("InternalDisagreement: {0}")]
    InternalDisagreement(String),
    #[error("NotSymplectic")]
    NotSymplectic,
    #[error("NotPositive")]
    NotPositive,
    #[error("NotQuasiReal")]
    NotQuasiReal,
    #[error("NotAQuantumCovariance: {0}")]
    NotAQuantumCovariance(String),
    #[error("NotPositiveDefinite")]
    NotPositiveDefinite,
    #[error("UnknownKind: {0}")]
    UnknownKind(String),
    #[error("IllFormedDiagram: {0}")]
    IllFormedDiagram(String),
    #[error("SideConditionViolated: {0}")]
    SideConditionViolated(String),
    #[error("NotInFragment: {0}")]
    NotInFragment(String),
    #[error("UnknownGenerator: {0}")]
    UnknownGenerator(String),
    #[error("NegativeEpsilon")]
    NegativeEpsilon,
    #[error("ZeroSqueeze")]
    ZeroSqueeze,
}

pub type Result<T> = std::result::Result<T, Error>;
