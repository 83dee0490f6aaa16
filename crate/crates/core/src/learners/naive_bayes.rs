//! Naive Bayes as one feature-equality rule per feature, combined by
//! `ψ(a) = 1 − Π(1 − aⱼ)`.

use crate::agg::AggregationSpec;
use crate::del::{
    AlignmentPredicate, BadnessRule, Combining, DeviationFunction, ExplanationCriterion, Hypothesis, Instance,
    Regularization,
};
use crate::error::{Error, Result};
use crate::train::{basic_train, BasicTrainingConfig};

use super::dataset::{LabelKind, LabeledDataset};

/// The criterion for a query: rule `j` aligns the hypothesis at `z` with the
/// observations sharing `z`'s value of feature `j`.
pub fn naive_bayes_criterion(n: usize) -> Result<ExplanationCriterion> {
    let rules: Vec<BadnessRule> = (0..n)
        .map(|j| {
            BadnessRule::new(AlignmentPredicate::FeatureEquality(j), DeviationFunction::YDist, AggregationSpec::l1())
        })
        .collect();
    let combining = if n == 1 { Combining::Single } else { Combining::OneMinusProductOfComplements };
    ExplanationCriterion::new(rules, Regularization::None, combining)
}

/// The class `c` maximizing `Π(1 − e(c, Sⱼ))`, where `e(c, Sⱼ)` is the error
/// rate of `c` among observations with `xⱼ = zⱼ`. Ties go to 0.
pub fn naive_bayes_classify(s: &LabeledDataset, z: &[f64]) -> Result<u8> {
    s.require(LabelKind::Binary01)?;
    if z.len() != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: z.len() });
    }
    for (j, &value) in z.iter().enumerate() {
        if !s.rows().iter().any(|r| r.x[j] == value) {
            return Err(Error::UnseenFeatureValue { feature: j, value });
        }
    }
    let cfg = BasicTrainingConfig::new(
        |_: &[Instance], _: &()| {
            vec![Hypothesis::constant(0.0, vec![z.to_vec()]), Hypothesis::constant(1.0, vec![z.to_vec()])]
        },
        |_: &[Instance], _: &()| naive_bayes_criterion(z.len()),
    );
    Ok(basic_train(&cfg, s.rows(), &())?.hypothesis.params[0] as u8)
}
