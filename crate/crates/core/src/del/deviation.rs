use crate::agg::DeviationSequence;
use crate::error::Result;

use super::instance::{euclidean, Instance};

/// Default clamp for [`DeviationFunction::LogYDist`].
pub const LOG_CLAMP: f64 = 1e-12;

/// Deviation `t(ρx, ρy)` of an aligned pair. None of the shipped functions
/// depend on `ρx`, which makes each of them trivially antitone in it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeviationFunction {
    /// `ρy`
    YDist,
    /// `ln(max(ρy, eps))`
    LogYDist { eps: f64 },
    /// `ρy² / 2`
    HalfSquareYDist,
    /// `max(ρy − ε, 0)`, zero when `ρy < ε`
    EpsilonInsensitive { eps: f64 },
    /// `ρy²`
    SquareYDist,
    /// Zero when the two feedbacks share a sign (`y₁·y₂ ≥ 0`), else `|y₁ − y₂|`.
    SignClassYDist,
}

impl DeviationFunction {
    pub fn log() -> Self {
        DeviationFunction::LogYDist { eps: LOG_CLAMP }
    }

    /// `t(ρx, ρy)` for the functions defined through `ρy`. The sign-class
    /// deviation needs the feedbacks themselves; see [`DeviationFunction::deviation`].
    pub fn t(&self, _rho_x: f64, rho_y: f64) -> f64 {
        match *self {
            DeviationFunction::YDist => rho_y,
            DeviationFunction::LogYDist { eps } => rho_y.max(eps).ln(),
            DeviationFunction::HalfSquareYDist => 0.5 * rho_y * rho_y,
            DeviationFunction::EpsilonInsensitive { eps } => epsilon_insensitive(rho_y, eps),
            DeviationFunction::SquareYDist => rho_y * rho_y,
            DeviationFunction::SignClassYDist => rho_y,
        }
    }

    /// `δ(α₁, α₂)` given the pair and its `ρx`.
    pub fn deviation(&self, a: &Instance, b: &Instance, rho_x: f64) -> f64 {
        match self {
            DeviationFunction::SignClassYDist => {
                let (ya, yb) = (a.y_scalar(), b.y_scalar());
                if ya * yb >= 0.0 {
                    0.0
                } else {
                    (ya - yb).abs()
                }
            }
            _ => self.t(rho_x, y_distance(a, b)),
        }
    }
}

/// `V_ε(r)`: zero inside the tube `|r| < ε`, `|r| − ε` outside.
pub fn epsilon_insensitive(r: f64, eps: f64) -> f64 {
    let a = r.abs();
    if a < eps {
        0.0
    } else {
        a - eps
    }
}

/// `ρy`, the Euclidean distance between feedback vectors.
pub fn y_distance(a: &Instance, b: &Instance) -> f64 {
    if a.y.len() == 1 && b.y.len() == 1 {
        (a.y[0] - b.y[0]).abs()
    } else {
        euclidean(&a.y, &b.y)
    }
}

/// One deviation per pair, in the pairs' order. `feature` selects the
/// coordinate used for `ρx`; `None` takes the Euclidean distance over all.
pub fn deviation_sequence(
    pairs: &[(&Instance, &Instance)],
    t: &DeviationFunction,
    feature: Option<usize>,
) -> Result<DeviationSequence> {
    let values = pairs
        .iter()
        .map(|(a, b)| {
            let rho_x = match feature {
                Some(i) => (a.x[i] - b.x[i]).abs(),
                None => euclidean(&a.x, &b.x),
            };
            t.deviation(a, b, rho_x)
        })
        .collect();
    DeviationSequence::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(y1: f64, y2: f64) -> (Instance, Instance) {
        (Instance::hypothetical(vec![0.0], y1), Instance::observed(vec![0.0], y2))
    }

    fn dev(t: DeviationFunction, y1: f64, y2: f64) -> f64 {
        let (a, b) = pair(y1, y2);
        deviation_sequence(&[(&a, &b)], &t, None).unwrap().values()[0]
    }

    #[test]
    fn examples() {
        assert_eq!(dev(DeviationFunction::YDist, 1.0, 3.0), 2.0);
        assert_eq!(dev(DeviationFunction::HalfSquareYDist, 0.0, 2.0), 2.0);
        assert_eq!(dev(DeviationFunction::EpsilonInsensitive { eps: 0.5 }, 1.0, 1.2), 0.0);
        assert_eq!(dev(DeviationFunction::EpsilonInsensitive { eps: 0.5 }, 0.0, 1.5), 1.0);
        assert_eq!(dev(DeviationFunction::SquareYDist, 1.0, 4.0), 9.0);
        assert_eq!(dev(DeviationFunction::SignClassYDist, 1.0, 0.5), 0.0);
        assert_eq!(dev(DeviationFunction::SignClassYDist, -0.5, 1.0), 1.5);
        assert_eq!(dev(DeviationFunction::log(), 0.5, 1.0), 0.5f64.ln());
        assert_eq!(dev(DeviationFunction::log(), 1.0, 1.0), LOG_CLAMP.ln());
    }

    #[test]
    fn vector_feedback_uses_euclidean_distance() {
        let a = Instance::with_feedback(vec![0.0], vec![0.0, 0.0], super::super::Tag::Observed);
        let b = Instance::with_feedback(vec![0.0], vec![3.0, 4.0], super::super::Tag::Observed);
        assert_eq!(y_distance(&a, &b), 5.0);
    }

    fn rho_functions() -> Vec<DeviationFunction> {
        vec![
            DeviationFunction::YDist,
            DeviationFunction::log(),
            DeviationFunction::HalfSquareYDist,
            DeviationFunction::EpsilonInsensitive { eps: 0.3 },
            DeviationFunction::SquareYDist,
        ]
    }

    proptest! {
        #[test]
        fn isotone_in_rho_y_antitone_in_rho_x(
            r1 in 0.0f64..10.0, r1b in 0.0f64..10.0, r2 in 0.0f64..10.0, bump in 0.0f64..5.0
        ) {
            for t in rho_functions() {
                prop_assert!(t.t(r1, r2) <= t.t(r1, r2 + bump));
                prop_assert_eq!(t.t(r1, r2), t.t(r1b, r2));
            }
        }

        #[test]
        fn sign_class_is_isotone_among_misclassified(
            y1 in prop::sample::select(vec![-1.0, 1.0]),
            f1 in 0.0f64..3.0,
            f2 in 0.0f64..3.0,
        ) {
            let (near, far) = (-y1 * f1.min(f2), -y1 * f1.max(f2));
            prop_assert!(
                dev(DeviationFunction::SignClassYDist, near, y1)
                    <= dev(DeviationFunction::SignClassYDist, far, y1)
            );
        }
    }
}
