use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("group order exceeds the enumeration cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("span is not contained in the ambient span")]
    NotContained,

    #[error("group is not cyclic")]
    NotCyclic,

    #[error("group is not transitive")]
    NotTransitive,

    #[error("subgroup is not a point stabilizer")]
    NotStabilizer,

    #[error("no automorphism lift found for {0}")]
    NoLiftFound(String),

    #[error("extension is not verified as a generalized representation group")]
    UnverifiedExtension,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unknown construction: {0}")]
    UnknownConstruction(String),

    #[error("classifier and cohomology disagree: classifier {classifier:?}, cohomology {cohomology:?}")]
    MethodDisagreement {
        classifier: Vec<u64>,
        cohomology: Vec<u64>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, KnotError>;
