use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {left} vs {right} points")]
    CarrierMismatch { left: usize, right: usize },

    #[error("carrier must have at least one point")]
    EmptyCarrier,

    #[error("value {value} out of range for carrier of {size} points")]
    OutOfRange { value: usize, size: usize },

    #[error("non-functional pair list: element {element} maps to both {first} and {second}")]
    NonFunctional {
        element: usize,
        first: usize,
        second: usize,
    },

    #[error("no seed maps given")]
    NoSeeds,

    #[error("cap exceeded: closure grew past {cap} elements")]
    CapExceeded { cap: usize },

    #[error("malformed system: {0}")]
    MalformedSystem(String),

    #[error("closure of empty set undefined")]
    EmptyClosure,

    #[error("oracle budget exceeded: {size} elements > budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },

    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),

    #[error("internal consistency error: {0}")]
    Inconsistent(String),

    #[error("{0}")]
    Instance(String),
}
