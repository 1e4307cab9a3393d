use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("defining polynomial {0:?} is reducible over the prime field")]
    ReduciblePolynomial(Vec<u32>),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not a subspace polynomial (coefficient of X is zero)")]
    NotSubspacePolynomial,
    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what}: cap {cap} exceeded ({partial})")]
    CapExceeded {
        what: String,
        cap: u64,
        partial: String,
    },
    #[error("splitting field of degree {splitting_degree} is not contained in the ambient field of degree {ambient_degree}")]
    SplittingFieldNotContained {
        splitting_degree: u64,
        ambient_degree: u64,
    },
    #[error("cyclic shift by zero")]
    ZeroShift,
    #[error("zero coefficient where a nonzero field element is required")]
    ZeroCoefficient,
    #[error("union condition fails for generator pair ({i}, {j})")]
    ConditionViolated { i: usize, j: usize },
    #[error("gcd(l, k) = gcd({l}, {k}) != 1")]
    GcdViolation { l: u32, k: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
