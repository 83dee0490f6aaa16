//! Greedy decision trees as a wrapper over constant fits on subdomains.

use std::cell::RefCell;

use crate::del::{BadnessRule, ExplanationCriterion, Hypothesis, Instance};
use crate::error::{Error, Result};
use crate::train::{wrapper_run, BasicTrainingConfig, Focusing, SplitCondition, TrainingTrace, WrapperConfig};

use super::dataset::{LabelKind, LabeledDataset};
use super::distinct_points;

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Leaf {
        class: u8,
        /// Fraction of the subdomain's observations carrying `class`.
        weight: f64,
        count: usize,
        /// Set when the subdomain met no leaf rule but admits no split.
        forced: bool,
    },
    Split {
        feature: usize,
        threshold: f64,
        /// Observations with `x[feature] ≤ threshold`.
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

impl TreeNode {
    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    pub fn split_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.split_count() + right.split_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTreeModel {
    pub root: TreeNode,
    /// Minimum subdomain size for splitting.
    pub cap_n: usize,
    /// Prevalent-class fraction at which a subdomain becomes a leaf.
    pub q: f64,
    /// Observed values of each feature, sorted.
    pub feature_values: Vec<Vec<f64>>,
}

fn class_counts(rows: &[Instance]) -> (usize, usize) {
    let ones = rows.iter().filter(|r| r.y_scalar() == 1.0).count();
    (rows.len() - ones, ones)
}

fn purity(rows: &[Instance]) -> f64 {
    let (zeros, ones) = class_counts(rows);
    zeros.max(ones) as f64 / rows.len() as f64
}

fn is_leaf(rows: &[Instance], cap_n: usize, q: f64) -> bool {
    rows.len() < cap_n || purity(rows) >= q
}

/// The split `x_j ≤ v` minimizing the misclassification count of the two
/// children's best constants; ties go to the lowest feature, then value.
fn best_split(rows: &[Instance]) -> Option<(usize, f64)> {
    let n = rows.first().map_or(0, |r| r.x.len());
    let mut best: Option<(usize, usize, f64)> = None;
    for j in 0..n {
        let mut values: Vec<f64> = rows.iter().map(|r| r.x[j]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for &v in &values[..values.len().saturating_sub(1)] {
            let (left, right): (Vec<Instance>, Vec<Instance>) = rows.iter().cloned().partition(|r| r.x[j] <= v);
            let (l0, l1) = class_counts(&left);
            let (r0, r1) = class_counts(&right);
            let errors = l0.min(l1) + r0.min(r1);
            if best.is_none_or(|(e, _, _)| errors < e) {
                best = Some((errors, j, v));
            }
        }
    }
    best.map(|(_, j, v)| (j, v))
}

fn child(path: &[SplitCondition], feature: usize, threshold: f64, le: bool) -> Vec<SplitCondition> {
    let mut p = path.to_vec();
    p.push(SplitCondition { feature, threshold, le });
    p
}

fn subtree(records: &[(Vec<SplitCondition>, u8, f64, usize)], path: &[SplitCondition]) -> TreeNode {
    let children: Vec<&SplitCondition> = records
        .iter()
        .filter(|(p, ..)| p.len() == path.len() + 1 && p.starts_with(path))
        .map(|(p, ..)| &p[path.len()])
        .collect();
    match children.iter().find(|c| c.le) {
        Some(c) => TreeNode::Split {
            feature: c.feature,
            threshold: c.threshold,
            left: Box::new(subtree(records, &child(path, c.feature, c.threshold, true))),
            right: Box::new(subtree(records, &child(path, c.feature, c.threshold, false))),
        },
        None => {
            let (_, class, weight, count) = records.iter().find(|(p, ..)| p == path).expect("visited node");
            TreeNode::Leaf { class: *class, weight: *weight, count: *count, forced: false }
        }
    }
}

/// Grows the tree depth-first. Each visited subdomain gets the better of the
/// two constants under the point-wise criterion; a subdomain with fewer than
/// `cap_n` observations or a prevalent-class fraction of at least `q` becomes
/// a leaf, any other is split.
pub fn decision_tree_fit(s: &LabeledDataset, cap_n: usize, q: f64) -> Result<DecisionTreeModel> {
    s.require(LabelKind::Binary01)?;
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidParameter(format!("q = {q} outside (0, 1]")));
    }
    let rows = s.rows();
    let forced: RefCell<Vec<Vec<SplitCondition>>> = RefCell::new(Vec::new());
    let mut stack: Vec<Vec<SplitCondition>> = vec![Vec::new()];
    let generator = |t: &TrainingTrace<Vec<SplitCondition>>| {
        if let Some(last) = t.last() {
            let sub = Focusing::Subdomain(last.q.clone()).apply(rows);
            if !is_leaf(&sub, cap_n, q) {
                match best_split(&sub) {
                    Some((j, v)) => {
                        stack.push(child(&last.q, j, v, false));
                        stack.push(child(&last.q, j, v, true));
                    }
                    None => forced.borrow_mut().push(last.q.clone()),
                }
            }
        }
        stack.pop()
    };
    let bcfg = BasicTrainingConfig::new(
        |focused: &[Instance], _: &Vec<SplitCondition>| {
            let support = distinct_points(focused);
            vec![Hypothesis::constant(0.0, support.clone()), Hypothesis::constant(1.0, support)]
        },
        |_: &[Instance], _: &Vec<SplitCondition>| Ok(ExplanationCriterion::single(BadnessRule::pointwise())),
    )
    .with_focusing(|path: &Vec<SplitCondition>| Focusing::Subdomain(path.clone()));
    let mut wcfg = WrapperConfig::new(
        generator,
        |_: &Hypothesis, _: &[Instance], _: &Vec<SplitCondition>| 0.0,
        |_: &TrainingTrace<Vec<SplitCondition>>| false,
        |t: &TrainingTrace<Vec<SplitCondition>>| {
            let records: Vec<_> = t
                .records
                .iter()
                .map(|r| (r.q.clone(), r.hypothesis.params[0] as u8, 1.0 - r.value, r.focused_len))
                .collect();
            subtree(&records, &[])
        },
    );
    let (mut root, _) = wrapper_run(&mut wcfg, &bcfg, rows)?;
    mark_forced(&mut root, &mut Vec::new(), &forced.borrow());
    let feature_values = (0..s.n())
        .map(|j| {
            let mut v: Vec<f64> = rows.iter().map(|r| r.x[j]).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        })
        .collect();
    Ok(DecisionTreeModel { root, cap_n, q, feature_values })
}

fn mark_forced(node: &mut TreeNode, path: &mut Vec<SplitCondition>, forced: &[Vec<SplitCondition>]) {
    match node {
        TreeNode::Leaf { forced: f, .. } => *f = forced.contains(path),
        TreeNode::Split { feature, threshold, left, right } => {
            let (feature, threshold) = (*feature, *threshold);
            path.push(SplitCondition { feature, threshold, le: true });
            mark_forced(left, path, forced);
            path.pop();
            path.push(SplitCondition { feature, threshold, le: false });
            mark_forced(right, path, forced);
            path.pop();
        }
    }
}

/// Class of the leaf `x` falls into; `None` when some feature takes a value
/// never observed in training, which lies outside every modeled subdomain.
pub fn decision_tree_predict(model: &DecisionTreeModel, x: &[f64]) -> Option<u8> {
    if x.len() != model.feature_values.len() || x.iter().zip(&model.feature_values).any(|(v, seen)| !seen.contains(v)) {
        return None;
    }
    let mut node = &model.root;
    loop {
        match node {
            TreeNode::Leaf { class, .. } => return Some(*class),
            TreeNode::Split { feature, threshold, left, right } => {
                node = if x[*feature] <= *threshold { left } else { right };
            }
        }
    }
}

/// Checks on `s` that every unforced leaf meets a leaf rule and every split
/// node meets neither.
pub fn check_tree_invariants(model: &DecisionTreeModel, s: &LabeledDataset) -> bool {
    fn walk(node: &TreeNode, rows: Vec<Instance>, cap_n: usize, q: f64) -> bool {
        match node {
            TreeNode::Leaf { forced, .. } => rows.is_empty() || *forced || is_leaf(&rows, cap_n, q),
            TreeNode::Split { feature, threshold, left, right } => {
                let leaf = is_leaf(&rows, cap_n, q);
                let (l, r): (Vec<Instance>, Vec<Instance>) =
                    rows.into_iter().partition(|i| i.x[*feature] <= *threshold);
                !leaf && walk(left, l, cap_n, q) && walk(right, r, cap_n, q)
            }
        }
    }
    walk(&model.root, s.rows().to_vec(), model.cap_n, model.q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> LabeledDataset {
        LabeledDataset::new(
            vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]],
            vec![0.0, 1.0, 1.0, 0.0],
        )
        .unwrap()
    }

    #[test]
    fn pure_dataset_is_one_leaf() {
        let s = LabeledDataset::new(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1.0; 3]).unwrap();
        let t = decision_tree_fit(&s, 1, 1.0).unwrap();
        assert_eq!(t.root, TreeNode::Leaf { class: 1, weight: 1.0, count: 3, forced: false });
        assert_eq!(decision_tree_predict(&t, &[2.0]), Some(1));
    }

    #[test]
    fn small_dataset_is_majority_leaf() {
        let s = LabeledDataset::new(vec![vec![0.0], vec![1.0], vec![2.0]], vec![0.0, 1.0, 1.0]).unwrap();
        let t = decision_tree_fit(&s, 5, 1.0).unwrap();
        assert!(matches!(t.root, TreeNode::Leaf { class: 1, count: 3, .. }));
    }

    #[test]
    fn xor_is_fit_exactly() {
        let s = xor();
        let t = decision_tree_fit(&s, 1, 1.0).unwrap();
        assert!(t.root.split_count() >= 2);
        for i in 0..s.len() {
            assert_eq!(decision_tree_predict(&t, s.x(i)), Some(s.y(i) as u8));
        }
        assert!(check_tree_invariants(&t, &s));
        assert_eq!(decision_tree_predict(&t, &[0.5, 0.0]), None);
    }

    #[test]
    fn identical_points_with_mixed_labels_force_a_leaf() {
        let s = LabeledDataset::new(vec![vec![1.0]; 3], vec![0.0, 1.0, 1.0]).unwrap();
        let t = decision_tree_fit(&s, 1, 1.0).unwrap();
        assert!(matches!(t.root, TreeNode::Leaf { class: 1, forced: true, .. }));
        assert!(check_tree_invariants(&t, &s));
    }

    #[test]
    fn split_prefers_lowest_error_then_feature() {
        // feature 1 separates perfectly, feature 0 does not
        let s = LabeledDataset::new(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0], vec![2.0, 1.0]],
            vec![0.0, 0.0, 1.0, 1.0, 1.0],
        )
        .unwrap();
        let t = decision_tree_fit(&s, 1, 1.0).unwrap();
        assert!(matches!(t.root, TreeNode::Split { feature: 1, threshold, .. } if threshold == 0.0));
        assert_eq!(t.root.leaf_count(), 2);
    }
}
