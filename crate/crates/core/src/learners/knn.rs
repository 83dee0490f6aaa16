//! k-NN and its two adaptive variants.
//!
//! All three fit a constant hypothesis at the query point `x0` against a
//! neighborhood of observations using the averaged `ρy` deviation, i.e. the
//! error rate of the constant on the neighborhood.

use crate::agg::AggregationSpec;
use crate::del::{
    euclidean, AlignmentPredicate, BadnessRule, DeviationFunction, ExplanationCriterion, Hypothesis, Instance,
};
use crate::error::{Error, Result};
use crate::train::{basic_train, wrapper_run, BasicTrainingConfig, Focusing, TrainingTrace, WrapperConfig};

use super::dataset::{LabelKind, LabeledDataset};

fn class_of(h: &Hypothesis) -> u8 {
    h.params[0] as u8
}

fn constant_pair(x0: &[f64]) -> Vec<Hypothesis> {
    vec![Hypothesis::constant(0.0, vec![x0.to_vec()]), Hypothesis::constant(1.0, vec![x0.to_vec()])]
}

fn ball_criterion(x0: &[f64], radius: f64) -> ExplanationCriterion {
    ExplanationCriterion::single(BadnessRule::new(
        AlignmentPredicate::Ball { x0: x0.to_vec(), radius },
        DeviationFunction::YDist,
        AggregationSpec::l1(),
    ))
}

/// Distance from `x0` to its `k`-th closest observation.
fn kth_distance(rows: &[Instance], x0: &[f64], k: usize) -> f64 {
    let mut d: Vec<f64> = rows.iter().map(|r| euclidean(&r.x, x0)).collect();
    d.sort_by(f64::total_cmp);
    d[k - 1]
}

/// Majority class among the observations within `d_k` of `x0`; every point
/// tied with the `k`-th distance is included, and an even split yields 0.
pub fn knn_classify(s: &LabeledDataset, x0: &[f64], k: usize) -> Result<u8> {
    s.require(LabelKind::Binary01)?;
    if k == 0 || k > s.len() {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={}", s.len())));
    }
    let d_k = kth_distance(s.rows(), x0, k);
    let cfg = BasicTrainingConfig::new(
        |_: &[Instance], _: &()| constant_pair(x0),
        |_: &[Instance], _: &()| Ok(ball_criterion(x0, d_k)),
    );
    Ok(class_of(&basic_train(&cfg, s.rows(), &())?.hypothesis))
}

/// `Δ(n, k, δ, c₁) = c₁ √((ln n + ln(1/δ)) / k)`.
pub fn ada_threshold(n: usize, k: usize, delta: f64, c1: f64) -> f64 {
    c1 * (((n as f64).ln() + (1.0 / delta).ln()) / k as f64).sqrt()
}

/// `W = 2 exp(−2k (p − 1/2)²)`.
pub fn hoeffding_weight(k: usize, p: f64) -> f64 {
    2.0 * (-2.0 * k as f64 * (p - 0.5) * (p - 0.5)).exp()
}

/// Result of an adaptive k-NN query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveDecision {
    /// `None` when the learner refuses to decide.
    pub class: Option<u8>,
    /// Neighborhood size at which the search ended.
    pub k: usize,
}

/// Neighbors of `x0` ordered by distance, equal distances in row order.
fn neighbor_labels(s: &LabeledDataset, x0: &[f64]) -> Vec<f64> {
    let mut order: Vec<(f64, usize)> = (0..s.len()).map(|i| (euclidean(s.x(i), x0), i)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    order.into_iter().map(|(_, i)| s.y(i)).collect()
}

fn validate_ada(delta: f64, c1: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} outside (0, 1)")));
    }
    if !(c1 > 0.0) {
        return Err(Error::InvalidParameter(format!("c1 = {c1} must be positive")));
    }
    Ok(())
}

/// Grows `k` from 1 and outputs the prevalent class of the `k` nearest
/// observations as soon as its bias `p_k − 1/2` exceeds `Δ(n, k, δ, c₁)`;
/// refuses when `k` reaches `n`.
pub fn ada_knn_classify(s: &LabeledDataset, x0: &[f64], delta: f64, c1: f64) -> Result<AdaptiveDecision> {
    s.require(LabelKind::Binary01)?;
    validate_ada(delta, c1)?;
    let n = s.len();
    let labels = neighbor_labels(s, x0);
    let mut ones = 0usize;
    for k in 1..n {
        ones += usize::from(labels[k - 1] == 1.0);
        let zeros = k - ones;
        let class = u8::from(ones > zeros);
        let p = ones.max(zeros) as f64 / k as f64;
        if p - 0.5 > ada_threshold(n, k, delta, c1) {
            return Ok(AdaptiveDecision { class: Some(class), k });
        }
    }
    Ok(AdaptiveDecision { class: None, k: n })
}

/// Result of a Hoeffding k-NN query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoeffdingDecision {
    pub class: u8,
    pub k: usize,
    pub weight: f64,
}

/// Scans `k = 1..n−1`, weighs the prevalent class of the `k` nearest
/// observations by the Hoeffding bound and returns the class at the `k` with
/// the smallest weight, preferring larger `k` on ties.
pub fn hoeffding_knn_classify(s: &LabeledDataset, x0: &[f64]) -> Result<HoeffdingDecision> {
    s.require(LabelKind::Binary01)?;
    let n = s.len();
    if n < 2 {
        return Err(Error::InvalidParameter("Hoeffding k-NN needs at least two observations".into()));
    }
    let labels = neighbor_labels(s, x0);
    let mut ones = 0usize;
    let mut best: Option<HoeffdingDecision> = None;
    for k in 1..n {
        ones += usize::from(labels[k - 1] == 1.0);
        let zeros = k - ones;
        let p = ones.max(zeros) as f64 / k as f64;
        let weight = hoeffding_weight(k, p);
        if best.is_none_or(|b| weight <= b.weight) {
            best = Some(HoeffdingDecision { class: u8::from(ones > zeros), k, weight });
        }
    }
    Ok(best.expect("n >= 2"))
}

/// Basic training shared by the adaptive variants: focus on the `k` nearest
/// observations, fit the two constants at `x0` by the neighborhood error rate.
fn neighborhood_training(x0: &[f64]) -> BasicTrainingConfig<'_, usize> {
    BasicTrainingConfig::new(
        |_: &[Instance], _: &usize| constant_pair(x0),
        |focused: &[Instance], _: &usize| {
            let radius = focused.iter().map(|r| euclidean(&r.x, x0)).fold(0.0, f64::max);
            Ok(ball_criterion(x0, radius))
        },
    )
    .with_focusing(|k: &usize| Focusing::KNearest { x0: x0.to_vec(), k: *k })
}

/// Frequency of the selected class in the focused set.
fn prevalence(h: &Hypothesis, focused: &[Instance]) -> f64 {
    let c = h.params[0];
    focused.iter().filter(|r| r.y_scalar() == c).count() as f64 / focused.len() as f64
}

/// Ada k-NN expressed as a wrapper over basic training.
pub fn ada_knn_wrapper(
    s: &LabeledDataset,
    x0: &[f64],
    delta: f64,
    c1: f64,
) -> Result<(AdaptiveDecision, TrainingTrace<usize>)> {
    s.require(LabelKind::Binary01)?;
    validate_ada(delta, c1)?;
    let n = s.len();
    let exceeds =
        move |t: &TrainingTrace<usize>| t.last().is_some_and(|r| r.weight - 0.5 > ada_threshold(n, r.q, delta, c1));
    let mut wcfg = WrapperConfig::new(
        move |t: &TrainingTrace<usize>| Some(t.len() + 1).filter(|&k| k < n),
        |h: &Hypothesis, focused: &[Instance], _: &usize| prevalence(h, focused),
        exceeds,
        move |t: &TrainingTrace<usize>| match t.last() {
            Some(r) if exceeds(t) => AdaptiveDecision { class: Some(class_of(&r.hypothesis)), k: r.q },
            _ => AdaptiveDecision { class: None, k: n },
        },
    );
    wrapper_run(&mut wcfg, &neighborhood_training(x0), s.rows())
}

/// Hoeffding k-NN expressed as a wrapper over basic training.
pub fn hoeffding_knn_wrapper(s: &LabeledDataset, x0: &[f64]) -> Result<(HoeffdingDecision, TrainingTrace<usize>)> {
    s.require(LabelKind::Binary01)?;
    let n = s.len();
    if n < 2 {
        return Err(Error::InvalidParameter("Hoeffding k-NN needs at least two observations".into()));
    }
    let mut wcfg = WrapperConfig::new(
        |t: &TrainingTrace<usize>| Some(t.len() + 1),
        |h: &Hypothesis, focused: &[Instance], k: &usize| hoeffding_weight(*k, prevalence(h, focused)),
        move |t: &TrainingTrace<usize>| t.len() == n - 1,
        |t: &TrainingTrace<usize>| {
            let mut best = &t.records[0];
            for r in &t.records[1..] {
                if r.weight <= best.weight {
                    best = r;
                }
            }
            HoeffdingDecision { class: class_of(&best.hypothesis), k: best.q, weight: best.weight }
        },
    );
    wrapper_run(&mut wcfg, &neighborhood_training(x0), s.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(labels: &[f64]) -> LabeledDataset {
        let xs = (0..labels.len()).map(|i| vec![i as f64]).collect();
        LabeledDataset::new(xs, labels.to_vec()).unwrap()
    }

    #[test]
    fn majority_of_three() {
        assert_eq!(knn_classify(&line(&[0.0, 0.0, 1.0, 1.0, 1.0]), &[0.0], 3).unwrap(), 0);
        assert_eq!(knn_classify(&line(&[1.0, 1.0, 1.0]), &[0.0], 3).unwrap(), 1);
    }

    #[test]
    fn distance_ties_at_kth_neighbor_are_included() {
        // x0 = 1: distances 1, 0, 1 → k = 2 includes both ends.
        let s = line(&[1.0, 0.0, 1.0]);
        assert_eq!(knn_classify(&s, &[1.0], 2).unwrap(), 1);
    }

    #[test]
    fn even_split_goes_to_zero() {
        assert_eq!(knn_classify(&line(&[1.0, 0.0]), &[0.5], 2).unwrap(), 0);
    }

    #[test]
    fn knn_rejects_bad_k() {
        assert!(knn_classify(&line(&[1.0]), &[0.0], 0).is_err());
        assert!(knn_classify(&line(&[1.0]), &[0.0], 2).is_err());
    }

    #[test]
    fn ada_refuses_with_huge_c1() {
        let d = ada_knn_classify(&line(&[1.0; 20]), &[0.0], 0.1, 100.0).unwrap();
        assert_eq!(d, AdaptiveDecision { class: None, k: 20 });
    }

    #[test]
    fn ada_stops_where_threshold_drops_below_half() {
        let s = line(&[1.0; 30]);
        let expected = (1..30).find(|&k| 0.5 > ada_threshold(30, k, 0.1, 0.1)).unwrap();
        let d = ada_knn_classify(&s, &[0.0], 0.1, 0.1).unwrap();
        assert_eq!(d, AdaptiveDecision { class: Some(1), k: expected });
    }

    #[test]
    fn hoeffding_weight_values() {
        assert_eq!(hoeffding_weight(7, 0.5), 2.0);
        // 2·exp(−2·10·0.09) = 2·exp(−1.8)
        assert!((hoeffding_weight(10, 0.8) - 0.330_597_776_443_173_5).abs() < 1e-12);
        assert!(hoeffding_weight(20, 0.8) < hoeffding_weight(10, 0.8));
    }

    #[test]
    fn hoeffding_prefers_largest_pure_neighborhood() {
        let s = line(&[0.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
        let d = hoeffding_knn_classify(&s, &[0.0]).unwrap();
        assert_eq!((d.class, d.k), (0, 4));
    }

    #[test]
    fn wrappers_match_dedicated() {
        let s = line(&[0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        for x0 in [0.0, 2.5, 9.0] {
            let (w, trace) = hoeffding_knn_wrapper(&s, &[x0]).unwrap();
            assert_eq!(w, hoeffding_knn_classify(&s, &[x0]).unwrap());
            assert_eq!(trace.len(), s.len() - 1);
            for c1 in [0.05, 0.2, 1.0] {
                let (a, _) = ada_knn_wrapper(&s, &[x0], 0.1, c1).unwrap();
                assert_eq!(a, ada_knn_classify(&s, &[x0], 0.1, c1).unwrap());
            }
        }
    }
}
