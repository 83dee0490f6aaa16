use std::process::Command;

use abduction::selftest::{core_criteria, determinism, CriterionResult};

fn invoke(args: &[&str]) -> Vec<String> {
    let out = Command::new(env!("CARGO_BIN_EXE_abduction")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output").lines().map(str::to_string).collect()
}

fn transcript() -> Vec<String> {
    let mut lines = Vec::new();
    for args in [
        &["selftest"][..],
        &[
            "run",
            "--learner",
            "ada_knn",
            "--data",
            "synth:two_blobs_1d:300:8",
            "--train-fraction",
            "0.5",
            "--seed",
            "4",
        ],
        &["run", "--learner", "nn", "--data", "synth:xor2d:40:2", "--seed", "9", "--format", "lines"],
        &["run", "--learner", "kmeans", "--param", "k=3", "--data", "synth:two_blobs_1d:60:1", "--seed", "5"],
        &["compare", "--data", "synth:noisy_threshold:300:3", "--seed", "6", "--format", "lines"],
    ] {
        lines.extend(invoke(args));
    }
    lines
}

fn main() {
    let mut results: Vec<CriterionResult> = core_criteria();
    results.push(determinism(&transcript(), &transcript()));
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("acceptance: {}/{} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
