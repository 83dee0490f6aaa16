//! Data explanation logic: instances, the conglomerate `M(h, S)`, alignment
//! predicates, deviations, badness rules and explanation criteria.

mod alignment;
mod criterion;
mod deviation;
mod instance;

pub use alignment::{aligned_pairs, check_alignment_downward_closure, Alignment, AlignmentPredicate};
pub use criterion::{
    badness, criterion_value, regularization_value, BadnessRule, Combining, ExplanationCriterion, Regularization,
};
pub use deviation::{deviation_sequence, epsilon_insensitive, y_distance, DeviationFunction, LOG_CLAMP};
pub use instance::{build_conglomerate, euclidean, Basis, Conglomerate, Form, Hypothesis, Instance, Tag};
