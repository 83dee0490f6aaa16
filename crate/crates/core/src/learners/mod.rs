//! The learners, each as basic training or a wrapper over an explanation
//! criterion.

pub mod clustering;
pub mod dataset;
pub mod knn;
pub mod linear;
pub mod naive_bayes;
pub mod nn;
pub mod tree;

pub use dataset::{LabelKind, LabeledDataset};

use crate::del::Instance;

/// Distinct feature vectors of `rows`, in first-occurrence order. Pointwise
/// alignment pairs each support point with every observation at that `x`, so
/// supports must not repeat points.
pub(crate) fn distinct_points(rows: &[Instance]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        if !out.contains(&r.x) {
            out.push(r.x.clone());
        }
    }
    out
}
