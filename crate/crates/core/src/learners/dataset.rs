use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::del::Instance;
use crate::error::{Error, Result};

/// Kind of feedback carried by a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelKind {
    Binary01,
    Pm1,
    Real,
}

impl LabelKind {
    /// `{0, 1}` → binary, `{−1, 1}` → ±1, anything else → real.
    pub fn infer(ys: &[f64]) -> Self {
        if ys.iter().all(|&y| y == 0.0 || y == 1.0) {
            LabelKind::Binary01
        } else if ys.iter().all(|&y| y == -1.0 || y == 1.0) {
            LabelKind::Pm1
        } else {
            LabelKind::Real
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LabelKind::Binary01 => "binary01",
            LabelKind::Pm1 => "pm1",
            LabelKind::Real => "real",
        }
    }
}

/// Observations `{⟨x, y⟩}` sharing one feature count.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    rows: Vec<Instance>,
    n: usize,
    label_kind: LabelKind,
}

impl LabeledDataset {
    /// Builds a dataset and infers the label kind.
    pub fn new(xs: Vec<Vec<f64>>, ys: Vec<f64>) -> Result<Self> {
        let kind = LabelKind::infer(&ys);
        Self::with_kind(xs, ys, kind)
    }

    pub fn with_kind(xs: Vec<Vec<f64>>, ys: Vec<f64>, label_kind: LabelKind) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch { expected: xs.len(), found: ys.len() });
        }
        let n = xs.first().map_or(0, Vec::len);
        if let Some(bad) = xs.iter().find(|x| x.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        let ok = match label_kind {
            LabelKind::Binary01 => ys.iter().all(|&y| y == 0.0 || y == 1.0),
            LabelKind::Pm1 => ys.iter().all(|&y| y == -1.0 || y == 1.0),
            LabelKind::Real => ys.iter().all(|y| y.is_finite()),
        };
        if !ok {
            return Err(Error::LabelKind(format!("labels do not fit {}", label_kind.name())));
        }
        let rows = xs.into_iter().zip(ys).map(|(x, y)| Instance::observed(x, y)).collect();
        Ok(Self { rows, n, label_kind })
    }

    pub fn rows(&self) -> &[Instance] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn label_kind(&self) -> LabelKind {
        self.label_kind
    }

    pub fn x(&self, i: usize) -> &[f64] {
        &self.rows[i].x
    }

    pub fn y(&self, i: usize) -> f64 {
        self.rows[i].y_scalar()
    }

    pub fn xs(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.x.clone()).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        self.rows.iter().map(Instance::y_scalar).collect()
    }

    pub(crate) fn require(&self, kind: LabelKind) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if self.label_kind != kind {
            return Err(Error::LabelKind(format!("expected {} labels, found {}", kind.name(), self.label_kind.name())));
        }
        Ok(())
    }

    /// Rows selected by `idx`, in that order.
    pub fn subset(&self, idx: &[usize]) -> Self {
        Self { rows: idx.iter().map(|&i| self.rows[i].clone()).collect(), n: self.n, label_kind: self.label_kind }
    }

    /// Seeded shuffle split; the first part holds `round(fraction · m)` rows.
    pub fn split(&self, fraction: f64, seed: u64) -> (Self, Self) {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let cut = ((fraction.clamp(0.0, 1.0) * self.len() as f64).round() as usize).min(self.len());
        (self.subset(&idx[..cut]), self.subset(&idx[cut..]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infers_label_kinds() {
        assert_eq!(LabelKind::infer(&[0.0, 1.0, 1.0]), LabelKind::Binary01);
        assert_eq!(LabelKind::infer(&[-1.0, 1.0]), LabelKind::Pm1);
        assert_eq!(LabelKind::infer(&[0.5, 1.0]), LabelKind::Real);
    }

    #[test]
    fn rejects_ragged_rows_and_wrong_labels() {
        assert!(LabeledDataset::new(vec![vec![1.0], vec![1.0, 2.0]], vec![0.0, 1.0]).is_err());
        assert!(LabeledDataset::with_kind(vec![vec![1.0]], vec![0.5], LabelKind::Binary01).is_err());
    }

    #[test]
    fn split_is_deterministic_partition() {
        let d = LabeledDataset::new((0..10).map(|i| vec![i as f64]).collect(), vec![0.0; 10]).unwrap();
        let (a, b) = d.split(0.7, 3);
        assert_eq!((a.len(), b.len()), (7, 3));
        assert_eq!(d.split(0.7, 3), (a.clone(), b.clone()));
        let mut all: Vec<f64> = a.rows().iter().chain(b.rows()).map(|r| r.x[0]).collect();
        all.sort_by(f64::total_cmp);
        assert_eq!(all, (0..10).map(|i| i as f64).collect::<Vec<_>>());
    }
}
