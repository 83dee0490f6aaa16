//! The acceptance criteria as runnable checks with fixed seeds.
//!
//! Every check returns a [`CriterionResult`] whose detail line is a pure
//! function of the code, so repeated runs render byte-identical reports.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agg::{aggregate, seq_less, AggregationSpec};
use crate::del::{badness, BadnessRule, Hypothesis};
use crate::learners::clustering::{
    kmeans_assign_point, kmeans_objective_centroid, kmeans_objective_pairwise, linkage_merge_round, ClusterState,
    Linkage,
};
use crate::learners::knn::{
    ada_knn_classify, ada_knn_wrapper, hoeffding_knn_classify, hoeffding_knn_wrapper, knn_classify,
};
use crate::learners::linear::{
    logistic_criterion, logistic_gradient, ridge_fit, svm_explanation_criterion, svm_slack_minimum, LinearForm,
    LinearModel,
};
use crate::learners::naive_bayes::naive_bayes_classify;
use crate::learners::nn::{nn_surrogate, nn_surrogate_gradient, param_count};
use crate::learners::tree::{check_tree_invariants, decision_tree_fit, decision_tree_predict};
use crate::learners::{distinct_points, LabeledDataset};
use crate::oracle;
use crate::synth::{grid_value, grid_vector, Generator};

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: u8, name: &'static str, passed: bool, detail: String) -> Self {
        Self { id, name, passed, detail }
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {verdict} {}: {}", self.id, self.name, self.detail)
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A multiple of 1/8 in `[0, 4]`.
fn nonneg_grid(r: &mut ChaCha8Rng) -> f64 {
    f64::from(r.random_range(0i32..=32)) / 8.0
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

fn labels01(r: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    let bias: f64 = r.random_range(0.2..0.8);
    (0..m).map(|_| f64::from(u8::from(r.random_bool(bias)))).collect()
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

pub fn aggregation_axioms() -> CriterionResult {
    let specs: Vec<(&str, AggregationSpec)> = vec![
        ("L1", AggregationSpec::l1()),
        ("L2", AggregationSpec::l2()),
        ("L3", AggregationSpec::l3()),
        ("p0", AggregationSpec::Percentile(0.0)),
        ("p25", AggregationSpec::Percentile(25.0)),
        ("p50", AggregationSpec::Percentile(50.0)),
        ("p75", AggregationSpec::Percentile(75.0)),
        ("p100", AggregationSpec::Percentile(100.0)),
        ("min", AggregationSpec::Min),
        ("max", AggregationSpec::Max),
    ];
    let mut r = rng(1);
    let mut failures: Vec<String> = Vec::new();
    for (name, spec) in &specs {
        let mut failed = [0usize; 4];
        let agg = |v: &[f64]| aggregate(spec, v).expect("nonempty");
        for _ in 0..1000 {
            let m = r.random_range(1..=8);
            let a: Vec<f64> = (0..m).map(|_| nonneg_grid(&mut r)).collect();
            let mut shuffled = a.clone();
            shuffled.shuffle(&mut r);
            failed[0] += usize::from(agg(&a) != agg(&shuffled));

            let mut b: Vec<f64> = a.iter().map(|v| v + nonneg_grid(&mut r)).collect();
            b.shuffle(&mut r);
            debug_assert!(seq_less(&a, &b, false));
            failed[1] += usize::from(agg(&a) > agg(&b) * (1.0 + 1e-12));

            let c = nonneg_grid(&mut r) + 0.125;
            failed[2] += usize::from(!close(agg(&vec![c; m]), c, 1e-12));

            let (lo, hi) = a.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
            let v = agg(&a);
            failed[3] += usize::from(v < lo * (1.0 - 1e-12) || v > hi * (1.0 + 1e-12));
        }
        if failed.iter().any(|&f| f > 0) {
            failures.push(format!("{name} order/monotony/stability/bounds = {failed:?}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("{} aggregations x 1000 trials x 4 axioms, 0 failures", specs.len())
    } else {
        failures.join("; ")
    };
    CriterionResult::new(1, "aggregation axioms", failures.is_empty(), detail)
}

pub fn seq_less_agreement() -> CriterionResult {
    let mut r = rng(2);
    let mut disagreements = 0;
    let mut positives = 0;
    for _ in 0..2000 {
        let m = r.random_range(1..=6);
        let a: Vec<f64> = (0..m).map(|_| f64::from(r.random_range(0u8..4))).collect();
        let b: Vec<f64> = if r.random_bool(0.5) {
            let mut b: Vec<f64> = a.iter().map(|v| (v + f64::from(r.random_range(0u8..2))).min(3.0)).collect();
            b.shuffle(&mut r);
            b
        } else {
            (0..m).map(|_| f64::from(r.random_range(0u8..4))).collect()
        };
        for strict in [false, true] {
            let fast = seq_less(&a, &b, strict);
            positives += usize::from(fast);
            disagreements += usize::from(fast != oracle::seq_less_exhaustive(&a, &b, strict));
        }
    }
    CriterionResult::new(
        2,
        "sorted dominance equals bijection search",
        disagreements == 0,
        format!("2000 pairs x 2 orders, {positives} related, {disagreements} disagreements"),
    )
}

pub fn erm_equivalence() -> CriterionResult {
    let mut r = rng(3);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = r.random_range(1..=4);
        let m = r.random_range(1..=50);
        let xs: Vec<Vec<f64>> = (0..m).map(|_| grid_vector(&mut r, n)).collect();
        let ys: Vec<f64> = (0..m).map(|_| grid_value(&mut r)).collect();
        let w = grid_vector(&mut r, n);
        let b = grid_value(&mut r);
        let s = LabeledDataset::new(xs.clone(), ys.clone()).expect("consistent rows");
        let h = Hypothesis::linear(&w, b, distinct_points(s.rows()));
        let framework = badness(&BadnessRule::pointwise(), &h, s.rows()).expect("aligned");
        let direct = oracle::empirical_risk(|x| x.iter().zip(&w).map(|(a, c)| a * c).sum::<f64>() + b, &xs, &ys);
        let dev = if direct == 0.0 { framework.abs() } else { (framework - direct).abs() / direct.abs() };
        worst = worst.max(dev);
    }
    CriterionResult::new(
        3,
        "point-wise badness equals empirical risk",
        worst <= 1e-12,
        format!("100 cases, max relative deviation {worst:.3e}"),
    )
}

fn random_normalized_svm(r: &mut ChaCha8Rng) -> (LabeledDataset, LinearModel) {
    loop {
        let n = r.random_range(1..=4);
        let m = r.random_range(2..=50);
        let xs: Vec<Vec<f64>> = (0..m).map(|_| grid_vector(r, n)).collect();
        let ys: Vec<f64> = (0..m).map(|_| if r.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
        if ys.iter().all(|&y| y == ys[0]) {
            continue;
        }
        let w = grid_vector(r, n);
        let b = grid_value(r);
        let f = LinearModel::linear(w, b);
        let s = LabeledDataset::new(xs, ys).expect("consistent rows");
        let margins: Vec<(f64, f64)> = (0..m).map(|i| (s.y(i), f.eval(s.x(i)))).collect();
        if margins.iter().any(|&(_, v)| v == 0.0) {
            continue;
        }
        let Some(q) = margins.iter().filter(|(y, v)| y * v > 0.0).map(|(_, v)| v.abs()).min_by(f64::total_cmp) else {
            continue;
        };
        let scaled = LinearModel::linear(f.w.iter().map(|v| v / q).collect(), f.b / q);
        return (s, scaled);
    }
}

pub fn svm_theorem() -> CriterionResult {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    let mut worst_grid: f64 = 0.0;
    let mut errors = 0;
    for case in 0..100 {
        let (s, f) = random_normalized_svm(&mut r);
        let alpha = if case % 2 == 0 { 0.1 } else { 1.0 };
        let slack = svm_slack_minimum(&f, &s, alpha);
        match svm_explanation_criterion(&f, &s, alpha) {
            Ok(c) => worst = worst.max((c - slack).abs()),
            Err(_) => errors += 1,
        }
        if case < 20 {
            let grid = oracle::slack_grid_minimum(&f.w, f.b, &s.xs(), &s.ys(), alpha, 10);
            worst_grid = worst_grid.max((grid - slack).abs());
        }
    }
    CriterionResult::new(
        4,
        "SVM criterion equals slack-eliminated objective",
        errors == 0 && worst <= 1e-9 && worst_grid <= 1e-6,
        format!("100 cases, max |diff| {worst:.3e}, rejected {errors}; grid oracle on 20, max |diff| {worst_grid:.3e}"),
    )
}

fn random_state(r: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, ClusterState) {
    let k = r.random_range(1..=4);
    let m = r.random_range(k..=30);
    let n = r.random_range(1..=3);
    let points: Vec<Vec<f64>> = (0..m).map(|_| grid_vector(r, n)).collect();
    let mut assignment: Vec<usize> = (0..m).map(|i| if i < k { i } else { r.random_range(0..k) }).collect();
    assignment.shuffle(r);
    let state = ClusterState::new(&points, assignment, k).expect("valid assignment");
    (points, state)
}

pub fn kmeans_identity() -> CriterionResult {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (points, state) = random_state(&mut r);
        let a = kmeans_objective_pairwise(&points, &state.assignment).expect("well formed");
        let b = kmeans_objective_centroid(&points, &state);
        let rel = if a == b { 0.0 } else { (a - b).abs() / a.abs().max(b.abs()) };
        worst = worst.max(rel);
    }
    let mut mismatches = 0;
    for _ in 0..100 {
        let (points, state) = random_state(&mut r);
        let idx = r.random_range(0..points.len());
        let framework = kmeans_assign_point(&state, &points, idx).expect("well formed");
        let direct = oracle::exhaustive_kmeans_assignment(&points, &state.assignment, state.k(), idx);
        mismatches += usize::from(framework != direct);
    }
    CriterionResult::new(
        5,
        "K-means objective forms and assignment",
        worst <= 1e-9 && mismatches == 0,
        format!("100 states, max relative difference {worst:.3e}; 100 assignments, {mismatches} mismatches"),
    )
}

pub fn oracle_equality() -> CriterionResult {
    let mut r = rng(6);
    let mut knn_bad = 0;
    for _ in 0..200 {
        let n = r.random_range(1..=3);
        let m = r.random_range(1..=40);
        let xs: Vec<Vec<f64>> = (0..m).map(|_| grid_vector(&mut r, n)).collect();
        let ys = labels01(&mut r, m);
        let x0 = grid_vector(&mut r, n);
        let k = r.random_range(1..=m);
        let s = LabeledDataset::new(xs.clone(), ys.clone()).expect("consistent rows");
        knn_bad += usize::from(knn_classify(&s, &x0, k).ok() != Some(oracle::brute_knn(&xs, &ys, &x0, k)));
    }
    let mut nb_bad = 0;
    for _ in 0..100 {
        let n = r.random_range(1..=6);
        let m = r.random_range(1..=40);
        let xs: Vec<Vec<f64>> = (0..m).map(|_| (0..n).map(|_| f64::from(r.random_range(0u8..3))).collect()).collect();
        let ys = labels01(&mut r, m);
        let z: Vec<f64> = (0..n).map(|j| xs[r.random_range(0..m)][j]).collect();
        let s = LabeledDataset::new(xs.clone(), ys.clone()).expect("consistent rows");
        nb_bad += usize::from(naive_bayes_classify(&s, &z).ok() != oracle::direct_nb(&xs, &ys, &z));
    }
    let mut link_bad = 0;
    for case in 0..100 {
        let n = r.random_range(1..=3);
        let count = r.random_range(2..=4);
        let clusters: Vec<Vec<Vec<f64>>> =
            (0..count).map(|_| (0..r.random_range(1..=4)).map(|_| grid_vector(&mut r, n)).collect()).collect();
        let linkage = [Linkage::Min, Linkage::Avg, Linkage::Max][case % 3];
        let framework = linkage_merge_round(&clusters, linkage).ok();
        link_bad += usize::from(framework != Some(oracle::linkage_pairwise_scan(&clusters, linkage.name())));
    }
    CriterionResult::new(
        6,
        "learners agree with independent oracles",
        knn_bad + nb_bad + link_bad == 0,
        format!("k-NN {knn_bad}/200, Naive Bayes {nb_bad}/100, linkage {link_bad}/100 mismatches"),
    )
}

pub fn wrapper_reductions() -> CriterionResult {
    let mut r = rng(7);
    let (mut ada_bad, mut refusals, mut hoeff_bad) = (0, 0, 0);
    for case in 0..100 {
        let n = r.random_range(1..=3);
        let m = r.random_range(2..=40);
        let s = LabeledDataset::new((0..m).map(|_| grid_vector(&mut r, n)).collect(), labels01(&mut r, m))
            .expect("consistent rows");
        let x0 = grid_vector(&mut r, n);
        let c1 = [0.05, 0.1, 0.2, 0.5][case % 4];
        let direct = ada_knn_classify(&s, &x0, 0.1, c1).expect("valid");
        refusals += usize::from(direct.class.is_none());
        ada_bad += usize::from(ada_knn_wrapper(&s, &x0, 0.1, c1).map(|w| w.0).ok() != Some(direct));
    }
    for _ in 0..100 {
        let n = r.random_range(1..=3);
        let m = r.random_range(2..=40);
        let s = LabeledDataset::new((0..m).map(|_| grid_vector(&mut r, n)).collect(), labels01(&mut r, m))
            .expect("consistent rows");
        let x0 = grid_vector(&mut r, n);
        let direct = hoeffding_knn_classify(&s, &x0).ok();
        hoeff_bad += usize::from(hoeffding_knn_wrapper(&s, &x0).map(|w| w.0).ok() != direct);
    }
    CriterionResult::new(
        7,
        "wrapper runs reproduce adaptive k-NN",
        ada_bad + hoeff_bad == 0,
        format!("Ada k-NN {ada_bad}/100 mismatches ({refusals} refusals), Hoeffding k-NN {hoeff_bad}/100 mismatches"),
    )
}

pub fn gradient_checks() -> CriterionResult {
    let mut r = rng(8);
    let s = LabeledDataset::new((0..20).map(|_| grid_vector(&mut r, 2)).collect(), labels01(&mut r, 20))
        .expect("consistent rows");
    let mut worst_logistic = 0.0f64;
    for _ in 0..20 {
        let p: Vec<f64> = (0..3).map(|_| grid_value(&mut r) / 4.0).collect();
        let eval = |q: &[f64]| {
            logistic_criterion(&LinearModel::new(q[..2].to_vec(), q[2], LinearForm::Logistic), &s).expect("aligned")
        };
        let fd = oracle::fd_gradient(eval, &p, 1e-6);
        worst_logistic = worst_logistic.max(oracle::gradient_check(&logistic_gradient(&p, &s), &fd, &p).max_rel_error);
    }
    let (n, k) = (2, 3);
    let mut worst_nn = 0.0f64;
    for _ in 0..20 {
        let p: Vec<f64> = (0..param_count(n, k)).map(|_| grid_value(&mut r) / 2.0).collect();
        let fd = oracle::fd_gradient(|q| nn_surrogate(q, n, k, &s), &p, 1e-6);
        worst_nn = worst_nn.max(oracle::gradient_check(&nn_surrogate_gradient(&p, n, k, &s), &fd, &p).max_rel_error);
    }
    CriterionResult::new(
        8,
        "analytic gradients match finite differences",
        worst_logistic <= 1e-4 && worst_nn <= 1e-4,
        format!("logistic max rel err {worst_logistic:.3e}, NN surrogate max rel err {worst_nn:.3e} (20 points each)"),
    )
}

/// Median chosen `k` of Hoeffding k-NN on held-out queries, per seed.
fn hoeffding_k_medians(m: usize) -> (Vec<f64>, usize, usize) {
    let mut medians = Vec::new();
    let (mut queries, mut refused) = (0, 0);
    for seed in 0..20 {
        let data = Generator::NoisyThreshold.generate(m, 100 + seed).expect("m > 0");
        let (train, test) = data.split(0.75, seed);
        let mut ks: Vec<f64> = Vec::new();
        for i in 0..test.len() {
            ks.push(hoeffding_knn_classify(&train, test.x(i)).expect("m >= 2").k as f64);
            queries += 1;
            refused += usize::from(ada_knn_classify(&train, test.x(i), 0.1, 10.0).expect("valid").class.is_none());
        }
        medians.push(median(&mut ks));
    }
    (medians, queries, refused)
}

pub fn hoeffding_behavior() -> CriterionResult {
    let (mut wrong, mut total) = (0, 0);
    for seed in 0..10 {
        let data = Generator::TwoBlobs1d.generate(200, seed).expect("m > 0");
        let (train, test) = data.split(0.5, seed);
        for i in 0..test.len() {
            let d = hoeffding_knn_classify(&train, test.x(i)).expect("m >= 2");
            wrong += usize::from(f64::from(d.class) != test.y(i));
            total += 1;
        }
    }
    let error = wrong as f64 / total as f64;
    let (mut small, q_small, r_small) = hoeffding_k_medians(100);
    let (mut large, q_large, r_large) = hoeffding_k_medians(400);
    let (med_small, med_large) = (median(&mut small), median(&mut large));
    let all_refused = r_small == q_small && r_large == q_large;
    CriterionResult::new(
        9,
        "Hoeffding k-NN behavior",
        error <= 0.05 && med_large >= med_small && all_refused,
        format!(
            "(a) two_blobs_1d held-out error {:.2}% over 10 seeds; (b) median k {med_small} at m=100, {med_large} at m=400; (c) Ada c1=10 refused {}/{} queries",
            100.0 * error,
            r_small + r_large,
            q_small + q_large
        ),
    )
}

pub fn ridge_checks() -> CriterionResult {
    let mut r = rng(10);
    let mut worst = 0.0f64;
    let mut shrink_violations = 0;
    for case in 0..50 {
        let n = r.random_range(1..=3);
        let m = r.random_range(n + 2..=30);
        let xs: Vec<Vec<f64>> = (0..m).map(|_| grid_vector(&mut r, n)).collect();
        let w = grid_vector(&mut r, n);
        let ys: Vec<f64> =
            xs.iter().map(|x| x.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() + grid_value(&mut r) / 4.0).collect();
        let s = LabeledDataset::with_kind(xs.clone(), ys.clone(), crate::learners::LabelKind::Real)
            .expect("consistent rows");
        let alpha = if case % 2 == 0 { 0.1 } else { 1.0 };
        let closed = ridge_fit(&s, alpha).expect("alpha > 0");
        let descent = oracle::ridge_descent(&xs, &ys, alpha, 1e-11, 1_000_000);
        let diff = closed.w.iter().chain(std::iter::once(&closed.b)).zip(&descent).map(|(a, b)| (a - b).abs());
        worst = worst.max(diff.fold(0.0, f64::max));
        let norms: Vec<f64> =
            [0.1, 1.0, 10.0].iter().map(|&a| ridge_fit(&s, a).expect("alpha > 0").norm_sq()).collect();
        shrink_violations += usize::from(norms.windows(2).any(|p| p[1] > p[0]));
    }
    CriterionResult::new(
        10,
        "ridge closed form",
        worst <= 1e-6 && shrink_violations == 0,
        format!("50 problems, max |closed - descent| {worst:.3e}; ||w|| grows with alpha on {shrink_violations}/50"),
    )
}

pub fn decision_tree_xor() -> CriterionResult {
    let s = Generator::Xor2d.generate(4, 0).expect("m > 0");
    let model = decision_tree_fit(&s, 1, 1.0).expect("binary labels");
    let errors = (0..s.len()).filter(|&i| decision_tree_predict(&model, s.x(i)) != Some(s.y(i) as u8)).count();
    let invariants = check_tree_invariants(&model, &s);
    let grid = [0.0, 0.5, 1.0];
    let mut misplaced = 0;
    for a in grid {
        for b in grid {
            let modeled = [a, b].iter().all(|v| *v == 0.0 || *v == 1.0);
            misplaced += usize::from(decision_tree_predict(&model, &[a, b]).is_some() != modeled);
        }
    }
    CriterionResult::new(
        11,
        "decision tree on xor2d",
        errors == 0 && invariants && misplaced == 0,
        format!(
            "{} splits, training errors {errors}, leaf rules hold: {invariants}, misplaced undefined predictions {misplaced}/9",
            model.root.split_count()
        ),
    )
}

pub fn l2_discrepancy() -> CriterionResult {
    let mut r = rng(12);
    let (mut canonical_unstable, mut literal_stable) = (0, 0);
    for _ in 0..1000 {
        let c = nonneg_grid(&mut r) + 0.125;
        let m = r.random_range(2..=8);
        let v = vec![c; m];
        canonical_unstable += usize::from(!close(aggregate(&AggregationSpec::l2(), &v).expect("nonempty"), c, 1e-12));
        literal_stable +=
            usize::from(close(aggregate(&AggregationSpec::l2_literal(), &v).expect("nonempty"), c, 1e-12));
    }
    let pair = aggregate(&AggregationSpec::l2_literal(), &[1.0, 1.0]).expect("nonempty");
    CriterionResult::new(
        12,
        "L2 normalization forms",
        canonical_unstable == 0 && literal_stable == 0,
        format!(
            "sqrt(sum/m) stable on 1000 constant sequences ({canonical_unstable} failures); sqrt(sum)/m unstable on all ({literal_stable} stable), {{1,1}} -> {pair:.6}; see README, L2 normalization"
        ),
    )
}

/// Criteria 1 through 12.
pub fn core_criteria() -> Vec<CriterionResult> {
    vec![
        aggregation_axioms(),
        seq_less_agreement(),
        erm_equivalence(),
        svm_theorem(),
        kmeans_identity(),
        oracle_equality(),
        wrapper_reductions(),
        gradient_checks(),
        hoeffding_behavior(),
        ridge_checks(),
        decision_tree_xor(),
        l2_discrepancy(),
    ]
}

/// Criterion 13: two renderings of the same seeded work must match byte for
/// byte.
pub fn determinism(first: &[String], second: &[String]) -> CriterionResult {
    let differing = first.iter().zip(second).filter(|(a, b)| a != b).count() + first.len().abs_diff(second.len());
    CriterionResult::new(
        13,
        "determinism",
        differing == 0 && !first.is_empty(),
        format!("{} report lines compared twice, {differing} differ", first.len()),
    )
}

/// All thirteen criteria, rerunning 1 through 12 for the determinism check.
pub fn run_all() -> Vec<CriterionResult> {
    let mut results = core_criteria();
    let first: Vec<String> = results.iter().map(CriterionResult::line).collect();
    let second: Vec<String> = core_criteria().iter().map(CriterionResult::line).collect();
    results.push(determinism(&first, &second));
    results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism_detects_differences() {
        let a = vec!["x".to_string(), "y".to_string()];
        assert!(determinism(&a, &a).passed);
        assert!(!determinism(&a, &a[..1]).passed);
        assert!(!determinism(&a, &["x".to_string(), "z".to_string()]).passed);
        assert!(!determinism(&[], &[]).passed);
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
