//! Aggregation of deviation sequences.
//!
//! An aggregation maps a finite sequence of deviations to one real number and
//! must be order insensitive and monotone with respect to [`seq_less`]. It is
//! *stable* when constant sequences map to the constant. Recursive
//! aggregations are assembled from three pieces: a strictly increasing scale
//! `[x]`, a symmetric associative strictly monotone compounding operation `⊕`,
//! and a normalization `η(x, m)` that is isotone in `x` and antitone in the
//! length `m`:
//!
//! ```text
//! Σ(A, 1)     = [a₁]
//! Σ(A, i + 1) = Σ(A, i) ⊕ [a_{i+1}]
//! Ω(A)        = η(Σ(A, m), m)
//! ```

use crate::error::{Error, Result};

/// A finite sequence of deviations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DeviationSequence(Vec<f64>);

impl DeviationSequence {
    /// Wraps `values`, rejecting NaN and infinities.
    ///
    /// Deviations are nonnegative for every shipped deviation function except
    /// the logarithmic one, so the sign is not checked here.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteDeviation);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Copy ordered from smallest to largest.
    pub fn sorted(&self) -> Vec<f64> {
        sorted(&self.0)
    }

    /// Appends `b` at the end of the sequence.
    pub fn push(&mut self, b: f64) -> Result<()> {
        if !b.is_finite() {
            return Err(Error::NonFiniteDeviation);
        }
        self.0.push(b);
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for DeviationSequence {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// `A ∼ B`: the two sequences are permutations of each other.
pub fn seq_sim(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && sorted(a) == sorted(b)
}

/// `A < B` (strict) or `A ≤ B` (non-strict).
///
/// Defined through a bijection pairing every element of `b` with a smaller
/// element of `a`; such a bijection exists exactly when the sorted copy of `b`
/// dominates the sorted copy of `a` elementwise.
pub fn seq_less(a: &[f64], b: &[f64], strict: bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (sa, sb) = (sorted(a), sorted(b));
    sa.iter().zip(&sb).all(|(x, y)| if strict { y > x } else { y >= x })
}

/// Scale function `[x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleFn {
    Identity,
    Square,
}

impl ScaleFn {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            ScaleFn::Identity => x,
            ScaleFn::Square => x * x,
        }
    }
}

/// Compounding operation `x ⊕ y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompoundFn {
    Sum,
    Product,
}

impl CompoundFn {
    pub fn apply(self, x: f64, y: f64) -> f64 {
        match self {
            CompoundFn::Sum => x + y,
            CompoundFn::Product => x * y,
        }
    }
}

/// Normalization `η(x, m)` where `m` is the sequence length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeFn {
    /// `x / m`
    DivideByN,
    /// `x^(1/m)`
    NthRoot,
    /// `x`
    Identity,
    /// `sqrt(x / m)`
    SqrtOfQuotient,
    /// `sqrt(x) / m`
    SqrtDividedByN,
}

impl NormalizeFn {
    pub fn apply(self, x: f64, m: usize) -> f64 {
        let mf = m as f64;
        match self {
            NormalizeFn::DivideByN => x / mf,
            NormalizeFn::NthRoot => x.powf(1.0 / mf),
            NormalizeFn::Identity => x,
            NormalizeFn::SqrtOfQuotient => (x / mf).sqrt(),
            NormalizeFn::SqrtDividedByN => x.sqrt() / mf,
        }
    }
}

/// Declarative description of an aggregation operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AggregationSpec {
    Recursive {
        scale: ScaleFn,
        compound: CompoundFn,
        normalize: NormalizeFn,
    },
    /// `r`-th percentile, `r ∈ [0, 100]`.
    Percentile(f64),
    Min,
    Max,
}

impl AggregationSpec {
    /// Arithmetic mean.
    pub const fn l1() -> Self {
        Self::Recursive { scale: ScaleFn::Identity, compound: CompoundFn::Sum, normalize: NormalizeFn::DivideByN }
    }

    /// Root mean square, `sqrt(Σa²/m)`.
    pub const fn l2() -> Self {
        Self::Recursive { scale: ScaleFn::Square, compound: CompoundFn::Sum, normalize: NormalizeFn::SqrtOfQuotient }
    }

    /// `(1/m)·sqrt(Σa²)`. Not stable on constant sequences longer than one;
    /// kept alongside [`AggregationSpec::l2`] for comparison.
    pub const fn l2_literal() -> Self {
        Self::Recursive { scale: ScaleFn::Square, compound: CompoundFn::Sum, normalize: NormalizeFn::SqrtDividedByN }
    }

    /// Geometric mean.
    pub const fn l3() -> Self {
        Self::Recursive { scale: ScaleFn::Identity, compound: CompoundFn::Product, normalize: NormalizeFn::NthRoot }
    }

    /// Plain sum. An aggregation, but not a stable one.
    pub const fn sum() -> Self {
        Self::Recursive { scale: ScaleFn::Identity, compound: CompoundFn::Sum, normalize: NormalizeFn::Identity }
    }

    pub fn percentile(r: f64) -> Result<Self> {
        if !(0.0..=100.0).contains(&r) {
            return Err(Error::PercentileRange(r));
        }
        Ok(Self::Percentile(r))
    }

    /// Whether constant sequences map to the constant.
    pub fn is_stable(&self) -> bool {
        match self {
            AggregationSpec::Recursive { scale, compound, normalize } => matches!(
                (scale, compound, normalize),
                (ScaleFn::Identity, CompoundFn::Sum, NormalizeFn::DivideByN)
                    | (ScaleFn::Square, CompoundFn::Sum, NormalizeFn::SqrtOfQuotient)
                    | (ScaleFn::Identity, CompoundFn::Product, NormalizeFn::NthRoot)
            ),
            _ => true,
        }
    }

    pub fn aggregate(&self, a: &DeviationSequence) -> Result<f64> {
        aggregate(self, a.values())
    }
}

/// The recursive accumulator `Σ(A, m)` before normalization.
pub fn fold(scale: ScaleFn, compound: CompoundFn, values: &[f64]) -> Result<f64> {
    let (first, rest) = values.split_first().ok_or(Error::EmptyAggregation)?;
    Ok(rest.iter().fold(scale.apply(*first), |acc, &a| compound.apply(acc, scale.apply(a))))
}

/// Evaluates `spec` on `values`.
pub fn aggregate(spec: &AggregationSpec, values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyAggregation);
    }
    match *spec {
        AggregationSpec::Recursive { scale, compound, normalize } => {
            Ok(normalize.apply(fold(scale, compound, values)?, values.len()))
        }
        AggregationSpec::Percentile(r) => percentile(values, r),
        AggregationSpec::Min => Ok(values.iter().copied().fold(f64::INFINITY, f64::min)),
        AggregationSpec::Max => Ok(values.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
    }
}

/// Percentile by the order-statistic rule: with `p = r·m/100`, an integral `p`
/// selects `a'_{p+1}` and a fractional `p` averages `a'_q` and `a'_{q+1}` for
/// `q = ⌊p⌋` (1-based, sorted ascending). Indices are clamped into `1..=m`.
fn percentile(values: &[f64], r: f64) -> Result<f64> {
    if !(0.0..=100.0).contains(&r) {
        return Err(Error::PercentileRange(r));
    }
    let s = sorted(values);
    let m = s.len();
    let at = |i: usize| s[i.clamp(1, m) - 1];
    let p = r * m as f64 / 100.0;
    if p.fract() == 0.0 {
        Ok(at(p as usize + 1))
    } else {
        let q = p.floor() as usize;
        Ok((at(q) + at(q + 1)) / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn agg(spec: AggregationSpec, v: &[f64]) -> f64 {
        aggregate(&spec, v).unwrap()
    }

    #[test]
    fn seq_sim_examples() {
        assert!(seq_sim(&[3.0, 1.0, 2.0], &[1.0, 2.0, 3.0]));
        assert!(!seq_sim(&[1.0, 1.0], &[1.0, 2.0]));
        assert!(seq_sim(&[], &[]));
    }

    #[test]
    fn seq_less_examples() {
        assert!(seq_less(&[1.0, 2.0], &[2.0, 3.0], true));
        assert!(!seq_less(&[1.0, 3.0], &[2.0, 2.0], true));
        assert!(!seq_less(&[1.0, 2.0], &[1.0, 2.0, 3.0], true));
        assert!(seq_less(&[1.0, 2.0], &[1.0, 2.0], false));
        assert!(!seq_less(&[1.0, 2.0], &[1.0, 2.0], true));
    }

    #[test]
    fn operator_examples() {
        assert_eq!(agg(AggregationSpec::l1(), &[1.0, 2.0, 3.0]), 2.0);
        assert_eq!(agg(AggregationSpec::l3(), &[1.0, 4.0]), 2.0);
        assert_eq!(agg(AggregationSpec::Percentile(50.0), &[1.0, 2.0, 3.0, 4.0]), 3.0);
        assert_eq!(agg(AggregationSpec::Percentile(50.0), &[1.0, 2.0, 3.0]), 1.5);
        assert_eq!(agg(AggregationSpec::l2_literal(), &[3.0, 4.0]), 2.5);
        assert_eq!(agg(AggregationSpec::l2(), &[0.0]), 0.0);
    }

    #[test]
    fn presets_are_stable_on_constants() {
        assert_eq!(agg(AggregationSpec::l1(), &[7.0; 3]), 7.0);
        assert_eq!(agg(AggregationSpec::l3(), &[2.0; 4]), 2.0);
        assert_eq!(agg(AggregationSpec::l2(), &[5.0; 4]), 5.0);
        let literal = agg(AggregationSpec::l2_literal(), &[5.0, 5.0]);
        assert!((literal - 5.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn percentile_extremes_are_min_and_max() {
        let v = [4.0, 1.0, 9.0, 2.0, 2.0];
        assert_eq!(agg(AggregationSpec::Percentile(0.0), &v), 1.0);
        assert_eq!(agg(AggregationSpec::Percentile(100.0), &v), 9.0);
        assert_eq!(agg(AggregationSpec::Min, &v), 1.0);
        assert_eq!(agg(AggregationSpec::Max, &v), 9.0);
        // p = 0.25·5 = 1.25 → (a'_1 + a'_2) / 2
        assert_eq!(agg(AggregationSpec::Percentile(25.0), &v), 1.5);
        // fractional p below one clamps to the minimum
        assert_eq!(agg(AggregationSpec::Percentile(10.0), &v), 1.0);
    }

    #[test]
    fn errors() {
        assert_eq!(aggregate(&AggregationSpec::l1(), &[]), Err(Error::EmptyAggregation));
        assert_eq!(aggregate(&AggregationSpec::Percentile(101.0), &[1.0]), Err(Error::PercentileRange(101.0)));
        assert!(AggregationSpec::percentile(-1.0).is_err());
        assert!(DeviationSequence::new(vec![1.0, f64::NAN]).is_err());
    }

    fn dyadic_seq(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec((0u32..=256).prop_map(|k| k as f64 / 64.0), 1..=max_len)
    }

    fn shipped() -> Vec<AggregationSpec> {
        vec![
            AggregationSpec::l1(),
            AggregationSpec::l2(),
            AggregationSpec::l3(),
            AggregationSpec::Percentile(25.0),
            AggregationSpec::Percentile(50.0),
            AggregationSpec::Percentile(75.0),
            AggregationSpec::Min,
            AggregationSpec::Max,
        ]
    }

    proptest! {
        #[test]
        fn fold_is_permutation_invariant(v in dyadic_seq(8), rot in 0usize..8) {
            let mut w = v.clone();
            w.rotate_left(rot % v.len());
            w.reverse();
            prop_assert_eq!(
                fold(ScaleFn::Identity, CompoundFn::Sum, &v).unwrap(),
                fold(ScaleFn::Identity, CompoundFn::Sum, &w).unwrap()
            );
            prop_assert_eq!(
                fold(ScaleFn::Square, CompoundFn::Sum, &v).unwrap(),
                fold(ScaleFn::Square, CompoundFn::Sum, &w).unwrap()
            );
        }

        #[test]
        fn stable_specs_stay_within_bounds(v in dyadic_seq(8)) {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for spec in shipped() {
                let x = agg(spec, &v);
                let slack = 1e-12 * hi.max(1.0);
                prop_assert!(lo - slack <= x && x <= hi + slack, "{:?} {:?} {}", spec, v, x);
            }
        }

        #[test]
        fn strict_dominance_is_monotone(v in dyadic_seq(8), bumps in prop::collection::vec(1u32..64, 8)) {
            let mut w: Vec<f64> = v.iter().zip(&bumps).map(|(a, b)| a + *b as f64 / 64.0).collect();
            w.reverse();
            prop_assert!(seq_less(&v, &w, true));
            for spec in shipped() {
                prop_assert!(agg(spec, &v) < agg(spec, &w), "{:?}", spec);
            }
        }
    }
}
