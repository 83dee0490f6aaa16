use crate::agg::{aggregate, AggregationSpec};
use crate::error::{Error, Result};

use super::alignment::{aligned_pairs, AlignmentPredicate};
use super::deviation::{deviation_sequence, DeviationFunction};
use super::instance::{build_conglomerate, Hypothesis, Instance};

/// A badness rule: alignment, deviation and aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct BadnessRule {
    pub alignment: AlignmentPredicate,
    pub deviation: DeviationFunction,
    pub aggregation: AggregationSpec,
}

impl BadnessRule {
    pub fn new(alignment: AlignmentPredicate, deviation: DeviationFunction, aggregation: AggregationSpec) -> Self {
        Self { alignment, deviation, aggregation }
    }

    /// The point-wise rule: pointwise alignment, `ρy`, averaging. On a
    /// hypothesis supported at the observed points this is the empirical risk
    /// with absolute loss.
    pub fn pointwise() -> Self {
        Self::new(AlignmentPredicate::Pointwise, DeviationFunction::YDist, AggregationSpec::l1())
    }

    fn feature(&self) -> Option<usize> {
        match self.alignment {
            AlignmentPredicate::FeatureEquality(i) => Some(i),
            _ => None,
        }
    }
}

/// Evaluates `rule` for `h` against the observations `s`.
pub fn badness(rule: &BadnessRule, h: &Hypothesis, s: &[Instance]) -> Result<f64> {
    let m = build_conglomerate(h, s)?;
    let pairs = aligned_pairs(&rule.alignment, &m);
    if pairs.is_empty() {
        return Err(Error::VacuousBadness);
    }
    let deviations = deviation_sequence(&pairs, &rule.deviation, rule.feature())?;
    aggregate(&rule.aggregation, deviations.values())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Regularization {
    #[default]
    None,
    /// `weight · ‖w‖²`, bias excluded.
    SquaredGradientNorm { weight: f64 },
}

/// Value of the regularization term for `h`.
pub fn regularization_value(h: &Hypothesis, kind: Regularization) -> Result<f64> {
    match kind {
        Regularization::None => Ok(0.0),
        Regularization::SquaredGradientNorm { weight } => {
            let w = h.weights().ok_or(Error::RegularizationUndefined(h.form.name()))?;
            Ok(weight * w.iter().map(|v| v * v).sum::<f64>())
        }
    }
}

/// How per-rule values (and the regularization value, appended last) are
/// folded into the criterion value. Every variant is monotone in each
/// component on its domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Combining {
    Single,
    /// `Σ wᵢ vᵢ` with nonnegative weights.
    WeightedSum(Vec<f64>),
    /// `1 − Π(1 − vᵢ)` on values in `[0, 1]`.
    OneMinusProductOfComplements,
}

impl Combining {
    pub fn combine(&self, values: &[f64]) -> f64 {
        match self {
            Combining::Single => values[0],
            Combining::WeightedSum(w) => w.iter().zip(values).map(|(a, b)| a * b).sum(),
            Combining::OneMinusProductOfComplements => 1.0 - values.iter().map(|v| 1.0 - v).product::<f64>(),
        }
    }
}

/// Badness rules, optional regularization and the combining operation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplanationCriterion {
    rules: Vec<BadnessRule>,
    regularization: Regularization,
    combining: Combining,
}

impl ExplanationCriterion {
    pub fn new(rules: Vec<BadnessRule>, regularization: Regularization, combining: Combining) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::InvalidCriterion("no badness rules".into()));
        }
        let arity = rules.len() + usize::from(regularization != Regularization::None);
        match &combining {
            Combining::Single if arity != 1 => {
                return Err(Error::InvalidCriterion(format!("single combining needs exactly one value, got {arity}")))
            }
            Combining::WeightedSum(_) | Combining::OneMinusProductOfComplements if arity == 1 => {
                return Err(Error::InvalidCriterion("one rule without regularization takes single combining".into()))
            }
            Combining::WeightedSum(w) if w.len() != arity || w.iter().any(|v| !(*v >= 0.0)) => {
                return Err(Error::InvalidCriterion(format!("weighted sum needs {arity} nonnegative weights")))
            }
            _ => {}
        }
        if let Regularization::SquaredGradientNorm { weight } = regularization {
            if !(weight >= 0.0) {
                return Err(Error::InvalidCriterion("negative regularization weight".into()));
            }
        }
        Ok(Self { rules, regularization, combining })
    }

    /// A criterion consisting of `rule` alone.
    pub fn single(rule: BadnessRule) -> Self {
        Self { rules: vec![rule], regularization: Regularization::None, combining: Combining::Single }
    }

    /// `α‖w‖² + badness`, the regularized form shared by the linear learners.
    pub fn regularized(rule: BadnessRule, alpha: f64) -> Result<Self> {
        Self::new(
            vec![rule],
            Regularization::SquaredGradientNorm { weight: 1.0 },
            Combining::WeightedSum(vec![1.0, alpha]),
        )
    }

    pub fn rules(&self) -> &[BadnessRule] {
        &self.rules
    }

    pub fn regularization(&self) -> Regularization {
        self.regularization
    }

    pub fn combining(&self) -> &Combining {
        &self.combining
    }

    /// Per-rule badness values, followed by the regularization value when present.
    pub fn components(&self, h: &Hypothesis, s: &[Instance]) -> Result<Vec<f64>> {
        let mut values = self.rules.iter().map(|r| badness(r, h, s)).collect::<Result<Vec<_>>>()?;
        if self.regularization != Regularization::None {
            values.push(regularization_value(h, self.regularization)?);
        }
        Ok(values)
    }
}

/// `C(L₁(h, S), …, L_k(h, S), Z(h))`.
pub fn criterion_value(c: &ExplanationCriterion, h: &Hypothesis, s: &[Instance]) -> Result<f64> {
    Ok(c.combining.combine(&c.components(h, s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn obs(x: f64, y: f64) -> Instance {
        Instance::observed(vec![x], y)
    }

    fn support(s: &[Instance]) -> Vec<Vec<f64>> {
        s.iter().map(|i| i.x.clone()).collect()
    }

    #[test]
    fn pointwise_badness_is_mean_absolute_error() {
        let s = vec![obs(1.0, 1.0), obs(2.0, 3.0)];
        let h = Hypothesis::linear(&[1.0], 0.0, support(&s));
        assert_eq!(badness(&BadnessRule::pointwise(), &h, &s).unwrap(), 0.5);

        let exact = Hypothesis::linear(&[1.0], 0.0, vec![vec![1.0]]);
        assert_eq!(badness(&BadnessRule::pointwise(), &exact, &s[..1]).unwrap(), 0.0);

        let worst = BadnessRule { aggregation: AggregationSpec::Max, ..BadnessRule::pointwise() };
        assert_eq!(badness(&worst, &h, &s).unwrap(), 1.0);
    }

    #[test]
    fn vacuous_alignment_is_an_error() {
        let s = vec![obs(1.0, 1.0)];
        let h = Hypothesis::constant(0.0, vec![vec![5.0]]);
        assert_eq!(badness(&BadnessRule::pointwise(), &h, &s), Err(Error::VacuousBadness));
    }

    #[test]
    fn regularization_examples() {
        let reg = Regularization::SquaredGradientNorm { weight: 1.0 };
        let h = Hypothesis::linear(&[3.0, 4.0], 7.0, vec![]);
        assert_eq!(regularization_value(&h, reg).unwrap(), 25.0);
        let zero = Hypothesis::linear(&[0.0, 0.0], 7.0, vec![]);
        assert_eq!(regularization_value(&zero, reg).unwrap(), 0.0);
        let basis = Hypothesis::basis_linear(vec![crate::del::Basis::Feature(0); 3], &[1.0, 1.0, 1.0], 0.0, vec![]);
        assert_eq!(regularization_value(&basis, reg).unwrap(), 3.0);
        assert_eq!(
            regularization_value(&Hypothesis::constant(1.0, vec![]), reg),
            Err(Error::RegularizationUndefined("constant"))
        );
    }

    #[test]
    fn combining_examples() {
        assert_eq!(Combining::OneMinusProductOfComplements.combine(&[0.0, 0.5]), 0.5);
        // values are (badness, regularization)
        assert_eq!(Combining::WeightedSum(vec![1.0, 2.0]).combine(&[0.5, 25.0]), 50.5);
    }

    #[test]
    fn regularized_criterion_value() {
        let s = vec![obs(1.0, 1.0), obs(2.0, 3.0)];
        let h = Hypothesis::linear(&[1.0], 0.0, support(&s));
        let c = ExplanationCriterion::regularized(BadnessRule::pointwise(), 2.0).unwrap();
        assert_eq!(criterion_value(&c, &h, &s).unwrap(), 2.5);
    }

    #[test]
    fn single_rule_criterion_equals_badness() {
        let s = vec![obs(1.0, 1.0), obs(2.0, 3.0), obs(3.0, -1.0)];
        let h = Hypothesis::linear(&[0.5], 0.25, support(&s));
        let c = ExplanationCriterion::single(BadnessRule::pointwise());
        assert_eq!(criterion_value(&c, &h, &s).unwrap(), badness(&BadnessRule::pointwise(), &h, &s).unwrap());
    }

    #[test]
    fn criterion_validation() {
        let r = BadnessRule::pointwise;
        assert!(ExplanationCriterion::new(vec![], Regularization::None, Combining::Single).is_err());
        assert!(ExplanationCriterion::new(vec![r(), r()], Regularization::None, Combining::Single).is_err());
        assert!(ExplanationCriterion::new(vec![r()], Regularization::None, Combining::OneMinusProductOfComplements)
            .is_err());
        assert!(
            ExplanationCriterion::new(vec![r(), r()], Regularization::None, Combining::WeightedSum(vec![1.0])).is_err()
        );
        assert!(ExplanationCriterion::new(
            vec![r(), r()],
            Regularization::None,
            Combining::OneMinusProductOfComplements
        )
        .is_ok());
    }

    proptest! {
        #[test]
        fn combining_is_monotone(
            v in prop::collection::vec(0.0f64..=1.0, 1..6),
            idx in 0usize..6,
            bump in 0.0f64..=1.0,
        ) {
            let i = idx % v.len();
            let mut u = v.clone();
            u[i] = (u[i] + bump).min(1.0);
            let p = Combining::OneMinusProductOfComplements;
            prop_assert!(p.combine(&v) <= p.combine(&u));

            let w = Combining::WeightedSum(vec![0.5; v.len()]);
            let mut u = v.clone();
            u[i] += bump;
            prop_assert!(w.combine(&v) <= w.combine(&u));
        }
    }
}
