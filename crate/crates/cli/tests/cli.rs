use std::io::Write;
use std::process::{Command, Output};

use abduction_cli::report::parse_lines;
use tempfile::NamedTempFile;

fn abduction(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abduction")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn knn_on_csv() {
    let f = csv("a,y\n0,0\n1,0\n2,0\n10,1\n11,1\n");
    let path = f.path().to_str().unwrap();
    let o =
        abduction(&["run", "--learner", "knn", "--param", "k=3", "--data", path, "--query", "0.5", "--query", "12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("[query]\nx      class\n(0.5)  0\n(12)   1\n"), "{text}");
}

#[test]
fn exit_codes() {
    let bad_learner = abduction(&["run", "--learner", "forest", "--data", "synth:xor2d:8:1"]);
    assert_eq!(bad_learner.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_learner.stderr).contains("naive_bayes"));

    let bad_param = abduction(&["run", "--learner", "ridge", "--param", "beta=1", "--data", "synth:xor2d:8:1"]);
    assert_eq!(bad_param.status.code(), Some(1));

    let missing_flag = abduction(&["run", "--learner", "ridge"]);
    assert_eq!(missing_flag.status.code(), Some(1));

    let no_y = csv("a,b\n1,2\n");
    let o = abduction(&["run", "--learner", "ridge", "--data", no_y.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let not_number = csv("a,y\n1,0\nfoo,1\n");
    let o = abduction(&["run", "--learner", "ridge", "--data", not_number.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 3"));

    let o = abduction(&["run", "--learner", "ridge", "--data", "/nonexistent/data.csv"]);
    assert_eq!(o.status.code(), Some(2));

    let o = abduction(&["run", "--learner", "svm", "--data", "synth:two_blobs_1d:20:1", "--query", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn wrong_label_kind_is_a_data_error() {
    let f = csv("a,y\n0,0.5\n1,2\n");
    let o = abduction(&["run", "--learner", "naive_bayes", "--data", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["run", "--learner", "hoeffding_knn", "--data", "synth:noisy_threshold:120:5", "--train-fraction", "0.7"][..],
        &["run", "--learner", "linkage", "--param", "k=2", "--param", "linkage=max", "--data", "synth:xor2d:12:3"],
        &["compare", "--data", "synth:two_blobs_1d:100:2", "--seed", "3"],
    ] {
        let (a, b) = (abduction(args), abduction(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn lines_format_round_trips() {
    for learner in ["svr", "logistic", "decision_tree", "kmeans"] {
        let mut args = vec!["run", "--learner", learner, "--data", "synth:xor2d:16:4", "--format", "lines"];
        if learner == "kmeans" {
            args.extend(["--param", "k=2"]);
        }
        let o = abduction(&args);
        assert!(o.status.success(), "{learner}");
        let text = stdout(&o);
        let report = parse_lines(&text).unwrap();
        assert_eq!(abduction_cli::report::emit_report(&report, abduction_cli::report::Format::Lines), text);
    }
}

#[test]
fn every_learner_runs() {
    for (learner, params) in [
        ("knn", vec!["k=5"]),
        ("ada_knn", vec![]),
        ("hoeffding_knn", vec![]),
        ("decision_tree", vec![]),
        ("naive_bayes", vec![]),
        ("logistic", vec![]),
        ("svm", vec![]),
        ("svr", vec![]),
        ("kernel_svr", vec!["basis=x0+x1+x0*x1"]),
        ("ridge", vec![]),
        ("nn", vec!["hidden=3"]),
        ("linkage", vec!["k=4"]),
        ("kmeans", vec!["k=4"]),
    ] {
        let mut args = vec!["run", "--learner", learner, "--data", "synth:xor2d:24:1", "--query", "1,0"];
        for p in &params {
            args.extend(["--param", p]);
        }
        let o = abduction(&args);
        assert!(o.status.success(), "{learner}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
