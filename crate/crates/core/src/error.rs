use thiserror::Error;

/// Errors raised by the aggregation algebra, the explanation logic and the learners.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty aggregation input")]
    EmptyAggregation,
    #[error("percentile rank {0} outside [0, 100]")]
    PercentileRange(f64),
    #[error("deviation sequence contains a non-finite value")]
    NonFiniteDeviation,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("training instance {0} is not tagged as an observation")]
    NotObservation(usize),
    #[error("vacuous badness: the alignment selects no pairs")]
    VacuousBadness,
    #[error("regularization undefined for form {0}")]
    RegularizationUndefined(&'static str),
    #[error("invalid explanation criterion: {0}")]
    InvalidCriterion(String),
    #[error("enumeration produced no hypotheses")]
    EmptyEnumeration,
    #[error("wrapper loop exceeded its iteration cap of {0}")]
    IterationCap(usize),
    #[error("empty dataset")]
    EmptyDataset,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unseen feature value {value} for feature {feature}")]
    UnseenFeatureValue { feature: usize, value: f64 },
    #[error("hypothesis is not in the normalized class: {0}")]
    NotNormalized(String),
    #[error("singular linear system")]
    Singular,
    #[error("label kind mismatch: {0}")]
    LabelKind(String),
}

pub type Result<T> = std::result::Result<T, Error>;
