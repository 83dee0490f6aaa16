use std::collections::BTreeMap;

use abduction::learners::clustering::{kmeans_objective_centroid, kmeans_run, linkage_cluster, ClusterState};
use abduction::learners::knn::{ada_knn_classify, hoeffding_knn_classify, knn_classify};
use abduction::learners::linear::{
    kernel_svr_fit, logistic_criterion, logistic_fit, ridge_criterion, ridge_fit, svm_explanation_criterion, svm_fit,
    svr_criterion, svr_fit, LinearModel,
};
use abduction::learners::naive_bayes::naive_bayes_classify;
use abduction::learners::nn::{nn_fit, nn_misclassification, NeuralNetModel};
use abduction::learners::tree::{decision_tree_fit, decision_tree_predict, TreeNode};
use abduction::learners::{LabelKind, LabeledDataset};
use abduction::selftest;
use abduction::Error;

use crate::config::{ExperimentConfig, LearnerKind, Params};
use crate::data::load_data;
use crate::error::{CliError, CliResult};
use crate::report::{emit_report, Cell, Format, Report, Row};

/// Data and split shared by every learner.
struct Prepared {
    train: LabeledDataset,
    eval: LabeledDataset,
    eval_set: &'static str,
}

fn prepare(data: &LabeledDataset, fraction: f64, seed: u64) -> CliResult<Prepared> {
    if fraction >= 1.0 {
        return Ok(Prepared { train: data.clone(), eval: data.clone(), eval_set: "train" });
    }
    let (train, test) = data.split(fraction, seed);
    if train.is_empty() || test.is_empty() {
        return Err(CliError::Data(format!("train fraction {fraction} leaves an empty part of {} rows", data.len())));
    }
    Ok(Prepared { train, eval: test, eval_set: "test" })
}

fn check_queries(queries: &[Vec<f64>], n: usize) -> CliResult<()> {
    match queries.iter().find(|q| q.len() != n) {
        Some(q) => Err(CliError::Usage(format!("query has {} values but the data has {n} features", q.len()))),
        None => Ok(()),
    }
}

fn header(title: &str, cfg: &ExperimentConfig, data: &LabeledDataset) -> Report {
    let mut r = Report::new(title);
    r.meta("learner", cfg.learner().name());
    r.meta("data", &cfg.data);
    r.meta("rows", data.len());
    r.meta("features", data.n());
    r.meta("labels", data.label_kind().name());
    let params: Vec<String> = cfg.params.pairs().iter().map(|(k, v)| format!("{k}={v}")).collect();
    r.meta("params", if params.is_empty() { "none".to_string() } else { params.join(" ") });
    r.meta("seed", cfg.seed);
    r.meta("train_fraction", cfg.train_fraction);
    r
}

fn class_cell(class: Option<u8>) -> String {
    class.map_or_else(|| "undecided".to_string(), |c| c.to_string())
}

/// Runs one configured learner and reports its decisions and errors.
pub fn run_experiment(cfg: &ExperimentConfig) -> CliResult<Report> {
    let data = load_data(&cfg.data)?;
    check_queries(&cfg.queries, data.n())?;
    let mut report = header("run", cfg, &data);
    match cfg.learner() {
        LearnerKind::Linkage | LearnerKind::Kmeans => run_clustering(cfg, &data, &mut report)?,
        kind => {
            let data = if kind == LearnerKind::Svm { to_pm1(&data)? } else { data };
            let prep = prepare(&data, cfg.train_fraction, cfg.seed)?;
            report.meta("train_rows", prep.train.len());
            report.meta("eval_rows", format!("{} ({})", prep.eval.len(), prep.eval_set));
            if kind.per_point() {
                run_per_point(cfg, &prep, &mut report)?;
            } else {
                run_model(cfg, &prep, &mut report)?;
            }
        }
    }
    Ok(report)
}

/// Relabels 0/1 data as ±1.
fn to_pm1(data: &LabeledDataset) -> CliResult<LabeledDataset> {
    if data.label_kind() != LabelKind::Binary01 {
        return Ok(data.clone());
    }
    let ys = data.ys().iter().map(|&y| 2.0 * y - 1.0).collect();
    Ok(LabeledDataset::with_kind(data.xs(), ys, LabelKind::Pm1)?)
}

/// A per-point decision: class (None when refused), chosen k and weight.
type Decision = (Option<u8>, Option<usize>, Option<f64>);

fn decide(p: &Params, train: &LabeledDataset, x: &[f64]) -> CliResult<Decision> {
    Ok(match p.learner() {
        LearnerKind::Knn => (Some(knn_classify(train, x, p.usize("k")?)?), None, None),
        LearnerKind::AdaKnn => {
            let d = ada_knn_classify(train, x, p.f64("delta")?, p.f64("c1")?)?;
            (d.class, Some(d.k), None)
        }
        LearnerKind::HoeffdingKnn => {
            let d = hoeffding_knn_classify(train, x)?;
            (Some(d.class), Some(d.k), Some(d.weight))
        }
        LearnerKind::NaiveBayes => match naive_bayes_classify(train, x) {
            Ok(c) => (Some(c), None, None),
            Err(Error::UnseenFeatureValue { .. }) => (None, None, None),
            Err(e) => return Err(e.into()),
        },
        other => unreachable!("{} is not a per-point learner", other.name()),
    })
}

fn decision_row(section: &str, x: &[f64], d: Decision) -> Row {
    let mut row = Row::new(section).cell("x", x.to_vec()).cell("class", class_cell(d.0));
    if let Some(k) = d.1 {
        row = row.cell("k", k);
    }
    if let Some(w) = d.2 {
        row = row.cell("weight", w);
    }
    row
}

fn run_per_point(cfg: &ExperimentConfig, prep: &Prepared, report: &mut Report) -> CliResult<()> {
    for q in &cfg.queries {
        report.push(decision_row("query", q, decide(&cfg.params, &prep.train, q)?));
    }
    let (mut errors, mut refused) = (0usize, 0usize);
    for i in 0..prep.eval.len() {
        match decide(&cfg.params, &prep.train, prep.eval.x(i)) {
            Ok((Some(c), _, _)) => errors += usize::from(f64::from(c) != prep.eval.y(i)),
            Ok((None, _, _)) => refused += 1,
            Err(e) => return Err(e),
        }
    }
    report.push(classification_row(prep, errors, refused));
    Ok(())
}

fn classification_row(prep: &Prepared, errors: usize, undecided: usize) -> Row {
    let rate = error_rate(errors, prep.eval.len() - undecided);
    Row::new("evaluation")
        .cell("set", prep.eval_set)
        .cell("rows", prep.eval.len())
        .cell("undecided", undecided)
        .cell("errors", errors)
        .cell("error_rate", rate)
}

/// Errors per decided row, or `n/a` when nothing was decided.
fn error_rate(errors: usize, decided: usize) -> Cell {
    if decided == 0 {
        Cell::from("n/a")
    } else {
        Cell::from(errors as f64 / decided as f64)
    }
}

fn regression_row(prep: &Prepared, model: &LinearModel) -> Row {
    let m = prep.eval.len() as f64;
    let mse = (0..prep.eval.len()).map(|i| (model.eval(prep.eval.x(i)) - prep.eval.y(i)).powi(2)).sum::<f64>() / m;
    Row::new("evaluation").cell("set", prep.eval_set).cell("rows", prep.eval.len()).cell("mse", mse)
}

fn model_row(model: &LinearModel) -> Row {
    Row::new("model").cell("w", model.w.clone()).cell("b", model.b)
}

fn fit_row(history: &[f64]) -> Row {
    Row::new("fit")
        .cell("steps", history.len() - 1)
        .cell("initial", history[0])
        .cell("final", history[history.len() - 1])
}

fn run_model(cfg: &ExperimentConfig, prep: &Prepared, report: &mut Report) -> CliResult<()> {
    let p = &cfg.params;
    let train = &prep.train;
    match cfg.learner() {
        LearnerKind::DecisionTree => {
            let model = decision_tree_fit(train, p.usize("cap_n")?, p.f64("q")?)?;
            report.push(
                Row::new("tree")
                    .cell("splits", model.root.split_count())
                    .cell("leaves", model.root.leaf_count())
                    .cell("forced_leaves", forced_leaves(&model.root)),
            );
            let predict = |x: &[f64]| decision_tree_predict(&model, x);
            classify_all(cfg, prep, report, predict);
        }
        LearnerKind::Logistic => {
            let fit = logistic_fit(train, p.f64("step")?, p.usize("iters")?)?;
            report.push(model_row(&fit.model));
            report.push(fit_row(&fit.history));
            report.push(Row::new("criterion").cell("explanation", logistic_criterion(&fit.model, train)?));
            for q in &cfg.queries {
                let prob = fit.model.eval(q);
                report.push(
                    Row::new("query")
                        .cell("x", q.clone())
                        .cell("p1", prob)
                        .cell("class", u8::from(prob > 0.5) as usize),
                );
            }
            evaluate_classes(prep, report, |x| Some(u8::from(fit.model.eval(x) > 0.5)));
        }
        LearnerKind::Svm => {
            let alpha = p.f64("alpha")?;
            let fit = svm_fit(train, alpha, p.f64("step")?, p.usize("iters")?)?;
            report.push(model_row(&fit.model));
            report.push(fit_row(&fit.history));
            let criterion = if fit.normalized {
                Row::new("criterion").cell("explanation", svm_explanation_criterion(&fit.model, train, alpha)?)
            } else {
                Row::new("criterion").cell("explanation", "not normalized")
            };
            report.push(criterion);
            let sign = |x: &[f64]| if fit.model.eval(x) > 0.0 { 1.0 } else { -1.0 };
            for q in &cfg.queries {
                report.push(Row::new("query").cell("x", q.clone()).cell("f", fit.model.eval(q)).cell("class", sign(q)));
            }
            let errors = (0..prep.eval.len()).filter(|&i| sign(prep.eval.x(i)) != prep.eval.y(i)).count();
            report.push(classification_row(prep, errors, 0));
        }
        LearnerKind::Svr | LearnerKind::KernelSvr => {
            let (eps, lambda) = (p.f64("eps")?, p.f64("lambda")?);
            let (step, iters) = (p.f64("step")?, p.usize("iters")?);
            let fit = if cfg.learner() == LearnerKind::Svr {
                svr_fit(train, eps, lambda, step, iters)?
            } else {
                kernel_svr_fit(train, &p.basis()?, eps, lambda, step, iters)?
            };
            report.push(model_row(&fit.model));
            report.push(fit_row(&fit.history));
            report.push(Row::new("criterion").cell("explanation", svr_criterion(&fit.model, train, eps, lambda)?));
            regression_queries(cfg, &fit.model, report);
            report.push(regression_row(prep, &fit.model));
        }
        LearnerKind::Ridge => {
            let alpha = p.f64("alpha")?;
            let model = ridge_fit(train, alpha)?;
            report.push(model_row(&model));
            report.push(Row::new("criterion").cell("explanation", ridge_criterion(&model, train, alpha)?));
            regression_queries(cfg, &model, report);
            report.push(regression_row(prep, &model));
        }
        LearnerKind::Nn => {
            let fit = nn_fit(train, p.usize("hidden")?, p.f64("step")?, p.usize("iters")?, cfg.seed)?;
            let (first, last) = (fit.history[0], fit.history[fit.history.len() - 1]);
            report.push(Row::new("model").cell("hidden", fit.model.k).cell("params", fit.model.params.clone()));
            report.push(
                Row::new("fit")
                    .cell("steps", fit.history.len() - 1)
                    .cell("initial_errors", first.0)
                    .cell("initial_surrogate", first.1)
                    .cell("final_errors", last.0)
                    .cell("final_surrogate", last.1),
            );
            report.push(Row::new("criterion").cell("train_errors", nn_misclassification(&fit.model, train)));
            let model: &NeuralNetModel = &fit.model;
            classify_all(cfg, prep, report, |x| Some(model.predict(x)));
        }
        other => unreachable!("{} is not a model learner", other.name()),
    }
    Ok(())
}

fn forced_leaves(node: &TreeNode) -> usize {
    match node {
        TreeNode::Leaf { forced, .. } => usize::from(*forced),
        TreeNode::Split { left, right, .. } => forced_leaves(left) + forced_leaves(right),
    }
}

fn classify_all(cfg: &ExperimentConfig, prep: &Prepared, report: &mut Report, predict: impl Fn(&[f64]) -> Option<u8>) {
    for q in &cfg.queries {
        report.push(Row::new("query").cell("x", q.clone()).cell("class", class_cell(predict(q))));
    }
    evaluate_classes(prep, report, predict);
}

fn evaluate_classes(prep: &Prepared, report: &mut Report, predict: impl Fn(&[f64]) -> Option<u8>) {
    let (mut errors, mut undecided) = (0, 0);
    for i in 0..prep.eval.len() {
        match predict(prep.eval.x(i)) {
            Some(c) => errors += usize::from(f64::from(c) != prep.eval.y(i)),
            None => undecided += 1,
        }
    }
    report.push(classification_row(prep, errors, undecided));
}

fn regression_queries(cfg: &ExperimentConfig, model: &LinearModel, report: &mut Report) {
    for q in &cfg.queries {
        report.push(Row::new("query").cell("x", q.clone()).cell("f", model.eval(q)));
    }
}

fn nearest_center(state: &ClusterState, x: &[f64]) -> usize {
    let dist = |c: &Vec<f64>| c.iter().zip(x).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
    (0..state.k()).fold(0, |best, c| if dist(&state.centers[c]) < dist(&state.centers[best]) { c } else { best })
}

fn run_clustering(cfg: &ExperimentConfig, data: &LabeledDataset, report: &mut Report) -> CliResult<()> {
    let p = &cfg.params;
    let points = data.xs();
    let state = if cfg.learner() == LearnerKind::Kmeans {
        kmeans_run(&points, p.usize("k")?, cfg.seed, p.usize("max_rounds")?)?
    } else {
        linkage_cluster(&points, p.linkage()?, p.usize("k")?)?
    };
    for c in 0..state.k() {
        report.push(
            Row::new("cluster").cell("id", c).cell("size", state.sizes[c]).cell("center", state.centers[c].clone()),
        );
    }
    report.push(Row::new("objective").cell("w", kmeans_objective_centroid(&points, &state)));
    for (i, &c) in state.assignment.iter().enumerate() {
        report.push(Row::new("assignment").cell("point", i).cell("cluster", c));
    }
    for q in &cfg.queries {
        report.push(Row::new("query").cell("x", q.clone()).cell("cluster", nearest_center(&state, q)));
    }
    Ok(())
}

/// Ada k-NN against Hoeffding k-NN on the same held-out rows.
pub fn compare_experiment(cfg: &ExperimentConfig) -> CliResult<Report> {
    let data = load_data(&cfg.data)?;
    let prep = prepare(&data, cfg.train_fraction, cfg.seed)?;
    let (delta, c1) = (cfg.params.f64("delta")?, cfg.params.f64("c1")?);
    let mut report = Report::new("compare adaknn-vs-hoeffding");
    report.meta("data", &cfg.data);
    report.meta("rows", data.len());
    report.meta("features", data.n());
    report.meta("params", format!("c1={c1} delta={delta}"));
    report.meta("seed", cfg.seed);
    report.meta("train_fraction", cfg.train_fraction);
    report.meta("train_rows", prep.train.len());
    report.meta("eval_rows", format!("{} ({})", prep.eval.len(), prep.eval_set));

    let mut ks: [BTreeMap<usize, usize>; 2] = Default::default();
    let mut errors = [0usize; 2];
    let mut refused = 0usize;
    for i in 0..prep.eval.len() {
        let (x, y) = (prep.eval.x(i), prep.eval.y(i));
        let ada = ada_knn_classify(&prep.train, x, delta, c1)?;
        match ada.class {
            Some(c) => errors[0] += usize::from(f64::from(c) != y),
            None => refused += 1,
        }
        *ks[0].entry(ada.k).or_default() += 1;
        let hoeff = hoeffding_knn_classify(&prep.train, x)?;
        errors[1] += usize::from(f64::from(hoeff.class) != y);
        *ks[1].entry(hoeff.k).or_default() += 1;
    }
    let names = ["ada_knn", "hoeffding_knn"];
    let undecided = [refused, 0];
    for j in 0..2 {
        let decided = prep.eval.len() - undecided[j];
        let rate = error_rate(errors[j], decided);
        report.push(
            Row::new("error")
                .cell("learner", names[j])
                .cell("decided", decided)
                .cell("refused", undecided[j])
                .cell("errors", errors[j])
                .cell("error_rate", rate),
        );
    }
    for j in 0..2 {
        let all: Vec<usize> = ks[j].iter().flat_map(|(&k, &c)| std::iter::repeat_n(k, c)).collect();
        let median = if all.len() % 2 == 1 {
            all[all.len() / 2] as f64
        } else {
            (all[all.len() / 2 - 1] + all[all.len() / 2]) as f64 / 2.0
        };
        report.push(
            Row::new("k_summary")
                .cell("learner", names[j])
                .cell("min", all[0])
                .cell("median", median)
                .cell("mean", all.iter().sum::<usize>() as f64 / all.len() as f64)
                .cell("max", all[all.len() - 1]),
        );
    }
    for j in 0..2 {
        for (&k, &count) in &ks[j] {
            report.push(Row::new("chosen_k").cell("learner", names[j]).cell("k", k).cell("count", count));
        }
    }
    Ok(report)
}

/// A seeded experiment whose rendering the selftest runs twice.
fn determinism_probe() -> CliResult<Vec<String>> {
    let mut lines = Vec::new();
    for (learner, params) in [("ada_knn", vec![]), ("kmeans", vec![("k".to_string(), "3".to_string())])] {
        let cfg = ExperimentConfig::new(
            learner,
            &params,
            "synth:two_blobs_1d:120:4",
            vec![vec![0.25]],
            0.5,
            11,
            Format::Text,
        )?;
        lines.extend(emit_report(&run_experiment(&cfg)?, Format::Lines).lines().map(str::to_string));
    }
    let cmp = ExperimentConfig::new("ada_knn", &[], "synth:noisy_threshold:200:2", Vec::new(), 0.5, 3, Format::Text)?;
    lines.extend(emit_report(&compare_experiment(&cmp)?, Format::Lines).lines().map(str::to_string));
    Ok(lines)
}

/// Every criterion, with determinism checked on full command-line reports.
pub fn selftest_results() -> CliResult<Vec<selftest::CriterionResult>> {
    let mut results = selftest::core_criteria();
    let mut first: Vec<String> = results.iter().map(selftest::CriterionResult::line).collect();
    let mut second: Vec<String> = selftest::core_criteria().iter().map(selftest::CriterionResult::line).collect();
    first.extend(determinism_probe()?);
    second.extend(determinism_probe()?);
    results.push(selftest::determinism(&first, &second));
    Ok(results)
}

pub fn selftest_report(results: &[selftest::CriterionResult]) -> Report {
    let mut r = Report::new("selftest");
    let passed = results.iter().filter(|c| c.passed).count();
    r.meta("passed", format!("{passed}/{}", results.len()));
    for c in results {
        r.push(
            Row::new("criterion")
                .cell("id", usize::from(c.id))
                .cell("verdict", if c.passed { "PASS" } else { "FAIL" })
                .cell("name", c.name)
                .cell("detail", c.detail.clone()),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(learner: &str, params: &[(&str, &str)], data: &str, fraction: f64) -> ExperimentConfig {
        let params: Vec<(String, String)> = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        ExperimentConfig::new(learner, &params, data, vec![vec![0.0, 1.0]], fraction, 5, Format::Text).unwrap()
    }

    #[test]
    fn tree_solves_xor() {
        let r = run_experiment(&cfg("decision_tree", &[], "synth:xor2d:40:1", 1.0)).unwrap();
        let eval = r.section("evaluation").next().unwrap();
        assert_eq!(eval.get("errors"), Some(&Cell::Int(0)));
        assert_eq!(r.section("query").next().unwrap().get("class"), Some(&Cell::Text("1".into())));
    }

    #[test]
    fn svm_relabels_binary_data() {
        let r = run_experiment(&cfg("svm", &[("iters", "200")], "synth:xor2d:8:1", 1.0)).unwrap();
        assert!(r.section("model").next().is_some());
    }

    #[test]
    fn query_dimension_is_checked() {
        let err = run_experiment(&cfg("knn", &[("k", "3")], "synth:two_blobs_1d:20:1", 1.0)).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn compare_reports_both_learners() {
        let mut c = cfg("ada_knn", &[], "synth:two_blobs_1d:80:2", 0.5);
        c.queries.clear();
        let r = compare_experiment(&c).unwrap();
        assert_eq!(r.section("error").count(), 2);
        let total: i64 = r
            .section("chosen_k")
            .filter_map(|row| match row.get("count") {
                Some(Cell::Int(n)) if row.get("learner") == Some(&Cell::Text("ada_knn".into())) => Some(*n),
                _ => None,
            })
            .sum();
        assert_eq!(total, 40);
    }
}
