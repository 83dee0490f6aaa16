//! Basic training and the wrapper strategy.
//!
//! Basic training focuses the training set with parameters `q`, enumerates a
//! finite family of hypotheses and returns the one with the smallest
//! criterion value on the focused set. The wrapper strategy repeats basic
//! training for generated parameters, weighs each result and combines the
//! collected `{h_q, W_q}` into one decision.

use crate::del::{criterion_value, euclidean, Basis, ExplanationCriterion, Hypothesis, Instance};
use crate::error::{Error, Result};

/// One side of an axis-aligned split: `x_feature ≤ threshold` or `> threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCondition {
    pub feature: usize,
    pub threshold: f64,
    pub le: bool,
}

impl SplitCondition {
    pub fn holds(&self, x: &[f64]) -> bool {
        if self.le {
            x[self.feature] <= self.threshold
        } else {
            x[self.feature] > self.threshold
        }
    }
}

/// The focusing transforms `U: S → S_q`.
#[derive(Debug, Clone, PartialEq)]
pub enum Focusing {
    /// The `k` observations closest to `x0`; equal distances keep row order.
    KNearest { x0: Vec<f64>, k: usize },
    /// Observations whose feature `feature` equals `value`.
    FeatureValue { feature: usize, value: f64 },
    /// Observations inside the conjunction of split conditions.
    Subdomain(Vec<SplitCondition>),
    /// Replaces every `x` with its basis expansion.
    BasisExpansion(Vec<Basis>),
}

impl Focusing {
    pub fn apply(&self, s: &[Instance]) -> Vec<Instance> {
        match self {
            Focusing::KNearest { x0, k } => {
                let mut order: Vec<(f64, usize)> =
                    s.iter().enumerate().map(|(i, r)| (euclidean(&r.x, x0), i)).collect();
                order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                order.iter().take(*k).map(|&(_, i)| s[i].clone()).collect()
            }
            Focusing::FeatureValue { feature, value } => {
                s.iter().filter(|r| r.x[*feature] == *value).cloned().collect()
            }
            Focusing::Subdomain(conds) => s.iter().filter(|r| conds.iter().all(|c| c.holds(&r.x))).cloned().collect(),
            Focusing::BasisExpansion(basis) => {
                s.iter().map(|r| Instance::with_feedback(Basis::expand(basis, &r.x), r.y.clone(), r.tag)).collect()
            }
        }
    }
}

type FocusFn<'a, P> = Box<dyn Fn(&P) -> Focusing + 'a>;
type EnumerateFn<'a, P> = Box<dyn Fn(&[Instance], &P) -> Vec<Hypothesis> + 'a>;
type CriterionFn<'a, P> = Box<dyn Fn(&[Instance], &P) -> Result<ExplanationCriterion> + 'a>;

/// Focusing, fitting and optimal selection for parameters of type `P`.
pub struct BasicTrainingConfig<'a, P> {
    pub focusing: Option<FocusFn<'a, P>>,
    /// Generates the finite class `F′` on the focused set.
    pub enumerator: EnumerateFn<'a, P>,
    /// The criterion may depend on the focused set and on `q`.
    pub criterion: CriterionFn<'a, P>,
}

impl<'a, P> BasicTrainingConfig<'a, P> {
    pub fn new(
        enumerator: impl Fn(&[Instance], &P) -> Vec<Hypothesis> + 'a,
        criterion: impl Fn(&[Instance], &P) -> Result<ExplanationCriterion> + 'a,
    ) -> Self {
        Self { focusing: None, enumerator: Box::new(enumerator), criterion: Box::new(criterion) }
    }

    pub fn with_focusing(mut self, focusing: impl Fn(&P) -> Focusing + 'a) -> Self {
        self.focusing = Some(Box::new(focusing));
        self
    }
}

/// Output of basic training.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub hypothesis: Hypothesis,
    pub value: f64,
    pub focused: Vec<Instance>,
}

/// Returns the enumerated hypothesis with the smallest criterion value on the
/// focused set; the first minimum in enumeration order wins ties.
pub fn basic_train<P>(cfg: &BasicTrainingConfig<'_, P>, s: &[Instance], q: &P) -> Result<Selection> {
    if s.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let focused = match &cfg.focusing {
        Some(f) => f(q).apply(s),
        None => s.to_vec(),
    };
    let criterion = (cfg.criterion)(&focused, q)?;
    let mut best: Option<(Hypothesis, f64)> = None;
    for h in (cfg.enumerator)(&focused, q) {
        let v = criterion_value(&criterion, &h, &focused)?;
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((h, v));
        }
    }
    let (hypothesis, value) = best.ok_or(Error::EmptyEnumeration)?;
    Ok(Selection { hypothesis, value, focused })
}

/// One pass of the wrapper loop.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<P> {
    pub q: P,
    pub hypothesis: Hypothesis,
    pub value: f64,
    pub weight: f64,
    pub focused_len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingTrace<P> {
    pub records: Vec<IterationRecord<P>>,
}

impl<P> Default for TrainingTrace<P> {
    fn default() -> Self {
        Self { records: Vec::new() }
    }
}

impl<P> TrainingTrace<P> {
    pub fn last(&self) -> Option<&IterationRecord<P>> {
        self.records.last()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

type GenerateFn<'a, P> = Box<dyn FnMut(&TrainingTrace<P>) -> Option<P> + 'a>;
type WeightFn<'a, P> = Box<dyn Fn(&Hypothesis, &[Instance], &P) -> f64 + 'a>;
type StopFn<'a, P> = Box<dyn Fn(&TrainingTrace<P>) -> bool + 'a>;
type CombineFn<'a, P, D> = Box<dyn Fn(&TrainingTrace<P>) -> D + 'a>;

/// Parameter generation, weighting, stopping check and output combiner `Δ`.
pub struct WrapperConfig<'a, P, D> {
    /// Next parameters given the trace so far; `None` ends the loop.
    pub param_generator: GenerateFn<'a, P>,
    pub weight_fn: WeightFn<'a, P>,
    pub stop_fn: StopFn<'a, P>,
    pub combiner: CombineFn<'a, P, D>,
}

impl<'a, P, D> WrapperConfig<'a, P, D> {
    pub fn new(
        param_generator: impl FnMut(&TrainingTrace<P>) -> Option<P> + 'a,
        weight_fn: impl Fn(&Hypothesis, &[Instance], &P) -> f64 + 'a,
        stop_fn: impl Fn(&TrainingTrace<P>) -> bool + 'a,
        combiner: impl Fn(&TrainingTrace<P>) -> D + 'a,
    ) -> Self {
        Self {
            param_generator: Box::new(param_generator),
            weight_fn: Box::new(weight_fn),
            stop_fn: Box::new(stop_fn),
            combiner: Box::new(combiner),
        }
    }
}

/// Hard cap on wrapper iterations for a training set of `m` rows. A binary
/// partition of `m` rows into nonempty parts visits at most `2m − 1` nodes.
pub fn iteration_cap(m: usize) -> usize {
    2 * m.max(1)
}

/// Runs the wrapper loop and applies the combiner to the collected trace.
pub fn wrapper_run<P: Clone, D>(
    wcfg: &mut WrapperConfig<'_, P, D>,
    bcfg: &BasicTrainingConfig<'_, P>,
    s: &[Instance],
) -> Result<(D, TrainingTrace<P>)> {
    let cap = iteration_cap(s.len());
    let mut trace = TrainingTrace::default();
    while let Some(q) = (wcfg.param_generator)(&trace) {
        if trace.len() == cap {
            return Err(Error::IterationCap(cap));
        }
        let sel = basic_train(bcfg, s, &q)?;
        let weight = (wcfg.weight_fn)(&sel.hypothesis, &sel.focused, &q);
        trace.records.push(IterationRecord {
            q,
            hypothesis: sel.hypothesis,
            value: sel.value,
            weight,
            focused_len: sel.focused.len(),
        });
        if (wcfg.stop_fn)(&trace) {
            break;
        }
    }
    let decision = (wcfg.combiner)(&trace);
    Ok((decision, trace))
}
