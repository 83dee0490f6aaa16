use std::collections::BTreeMap;

use abduction::del::Basis;
use abduction::learners::clustering::Linkage;

use crate::error::{CliError, CliResult};
use crate::report::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LearnerKind {
    Knn,
    AdaKnn,
    HoeffdingKnn,
    DecisionTree,
    NaiveBayes,
    Logistic,
    Svm,
    Svr,
    KernelSvr,
    Ridge,
    Nn,
    Linkage,
    Kmeans,
}

/// A learner parameter; `default: None` marks it required.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

const fn p(key: &'static str, default: Option<&'static str>, doc: &'static str) -> ParamSpec {
    ParamSpec { key, default, doc }
}

impl LearnerKind {
    pub const ALL: [LearnerKind; 13] = [
        LearnerKind::Knn,
        LearnerKind::AdaKnn,
        LearnerKind::HoeffdingKnn,
        LearnerKind::DecisionTree,
        LearnerKind::NaiveBayes,
        LearnerKind::Logistic,
        LearnerKind::Svm,
        LearnerKind::Svr,
        LearnerKind::KernelSvr,
        LearnerKind::Ridge,
        LearnerKind::Nn,
        LearnerKind::Linkage,
        LearnerKind::Kmeans,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LearnerKind::Knn => "knn",
            LearnerKind::AdaKnn => "ada_knn",
            LearnerKind::HoeffdingKnn => "hoeffding_knn",
            LearnerKind::DecisionTree => "decision_tree",
            LearnerKind::NaiveBayes => "naive_bayes",
            LearnerKind::Logistic => "logistic",
            LearnerKind::Svm => "svm",
            LearnerKind::Svr => "svr",
            LearnerKind::KernelSvr => "kernel_svr",
            LearnerKind::Ridge => "ridge",
            LearnerKind::Nn => "nn",
            LearnerKind::Linkage => "linkage",
            LearnerKind::Kmeans => "kmeans",
        }
    }

    pub fn parse(s: &str) -> CliResult<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|k| k.name()).collect();
            CliError::Usage(format!("unknown learner {s:?}; valid learners: {}", names.join(", ")))
        })
    }

    /// Learners that answer one query point at a time.
    pub fn per_point(self) -> bool {
        matches!(self, LearnerKind::Knn | LearnerKind::AdaKnn | LearnerKind::HoeffdingKnn | LearnerKind::NaiveBayes)
    }

    pub fn params(self) -> &'static [ParamSpec] {
        const STEP: &str = "gradient step size";
        const ITERS: &str = "number of descent steps";
        match self {
            LearnerKind::Knn => const { &[p("k", None, "neighborhood size")] },
            LearnerKind::AdaKnn => {
                const {
                    &[
                        p("delta", Some("0.1"), "confidence parameter in (0, 1)"),
                        p("c1", Some("1"), "threshold scale, positive"),
                    ]
                }
            }
            LearnerKind::HoeffdingKnn | LearnerKind::NaiveBayes => const { &[] },
            LearnerKind::DecisionTree => {
                const {
                    &[
                        p("cap_n", Some("1"), "subdomains with fewer observations become leaves"),
                        p("q", Some("1"), "prevalent-class fraction that makes a leaf"),
                    ]
                }
            }
            LearnerKind::Logistic => const { &[p("step", Some("0.1"), STEP), p("iters", Some("1000"), ITERS)] },
            LearnerKind::Svm => {
                const {
                    &[
                        p("alpha", Some("0.01"), "weight of the squared norm"),
                        p("step", Some("0.01"), STEP),
                        p("iters", Some("1000"), ITERS),
                    ]
                }
            }
            LearnerKind::Svr => {
                const {
                    &[
                        p("eps", Some("0.1"), "tube half-width"),
                        p("lambda", Some("0.01"), "weight of the squared norm"),
                        p("step", Some("0.001"), STEP),
                        p("iters", Some("1000"), ITERS),
                    ]
                }
            }
            LearnerKind::KernelSvr => {
                const {
                    &[
                        p("basis", None, "terms joined by '+': xJ, xJ^P, xI*xJ, rbf(GAMMA;C1;C2;...)"),
                        p("eps", Some("0.1"), "tube half-width"),
                        p("lambda", Some("0.01"), "weight of the squared norm"),
                        p("step", Some("0.001"), STEP),
                        p("iters", Some("1000"), ITERS),
                    ]
                }
            }
            LearnerKind::Ridge => const { &[p("alpha", Some("1"), "weight of the squared norm")] },
            LearnerKind::Nn => {
                const {
                    &[
                        p("hidden", Some("2"), "number of hidden units"),
                        p("step", Some("0.5"), STEP),
                        p("iters", Some("500"), ITERS),
                    ]
                }
            }
            LearnerKind::Linkage => {
                const {
                    &[
                        p("k", None, "number of clusters to stop at"),
                        p("linkage", Some("avg"), "cluster distance: min, avg or max"),
                    ]
                }
            }
            LearnerKind::Kmeans => {
                const {
                    &[
                        p("k", None, "number of clusters"),
                        p("max_rounds", Some("100"), "reassignment rounds before stopping"),
                    ]
                }
            }
        }
    }
}

/// Validated learner parameters with defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    learner: LearnerKind,
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn new(learner: LearnerKind, given: &[(String, String)]) -> CliResult<Self> {
        let specs = learner.params();
        let mut values = BTreeMap::new();
        for (k, v) in given {
            if !specs.iter().any(|s| s.key == k) {
                let keys: Vec<&str> = specs.iter().map(|s| s.key).collect();
                return Err(CliError::Usage(format!(
                    "unknown parameter {k:?} for {}; accepted: {}",
                    learner.name(),
                    if keys.is_empty() { "none".to_string() } else { keys.join(", ") }
                )));
            }
            values.insert(k.clone(), v.clone());
        }
        for s in specs {
            match (values.contains_key(s.key), s.default) {
                (true, _) => {}
                (false, Some(d)) => {
                    values.insert(s.key.to_string(), d.to_string());
                }
                (false, None) => {
                    return Err(CliError::Usage(format!("{} requires --param {}=<{}>", learner.name(), s.key, s.doc)))
                }
            }
        }
        let params = Self { learner, values };
        params.check_types()?;
        Ok(params)
    }

    fn check_types(&self) -> CliResult<()> {
        for key in self.values.keys() {
            match key.as_str() {
                "k" | "cap_n" | "iters" | "hidden" | "max_rounds" => {
                    self.usize(key)?;
                }
                "basis" => {
                    self.basis()?;
                }
                "linkage" => {
                    self.linkage()?;
                }
                _ => {
                    self.f64(key)?;
                }
            }
        }
        Ok(())
    }

    fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).expect("validated parameter")
    }

    pub fn usize(&self, key: &str) -> CliResult<usize> {
        self.raw(key).parse().map_err(|_| {
            CliError::Usage(format!("parameter {key} must be a nonnegative integer, got {:?}", self.raw(key)))
        })
    }

    pub fn f64(&self, key: &str) -> CliResult<f64> {
        self.raw(key)
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| CliError::Usage(format!("parameter {key} must be a finite number, got {:?}", self.raw(key))))
    }

    pub fn linkage(&self) -> CliResult<Linkage> {
        Linkage::parse(self.raw("linkage"))
            .ok_or_else(|| CliError::Usage(format!("linkage must be min, avg or max, got {:?}", self.raw("linkage"))))
    }

    pub fn basis(&self) -> CliResult<Vec<Basis>> {
        parse_basis(self.raw("basis"))
    }

    /// `key=value` pairs in key order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.values.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn learner(&self) -> LearnerKind {
        self.learner
    }
}

fn feature_index(s: &str) -> Option<usize> {
    s.strip_prefix('x')?.parse().ok()
}

/// Parses `x0+x0^2+x0*x1+rbf(0.5;1;2)`.
pub fn parse_basis(spec: &str) -> CliResult<Vec<Basis>> {
    let bad = |t: &str| CliError::Usage(format!("bad basis term {t:?}; use xJ, xJ^P, xI*xJ or rbf(GAMMA;C1;...)"));
    let mut out = Vec::new();
    for term in spec.split('+').map(str::trim) {
        let basis = if let Some(inner) = term.strip_prefix("rbf(").and_then(|t| t.strip_suffix(')')) {
            let nums: Vec<f64> =
                inner.split(';').map(|v| v.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad(term))?;
            match nums.split_first() {
                Some((&gamma, center)) if !center.is_empty() && gamma > 0.0 => {
                    Basis::Gaussian { center: center.to_vec(), gamma }
                }
                _ => return Err(bad(term)),
            }
        } else if let Some((a, b)) = term.split_once('*') {
            Basis::Product(feature_index(a).ok_or_else(|| bad(term))?, feature_index(b).ok_or_else(|| bad(term))?)
        } else if let Some((a, p)) = term.split_once('^') {
            Basis::Power(feature_index(a).ok_or_else(|| bad(term))?, p.parse().map_err(|_| bad(term))?)
        } else {
            Basis::Feature(feature_index(term).ok_or_else(|| bad(term))?)
        };
        out.push(basis);
    }
    Ok(out)
}

/// Splits `key=value`.
pub fn parse_param(s: &str) -> CliResult<(String, String)> {
    s.split_once('=')
        .filter(|(k, _)| !k.is_empty())
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| CliError::Usage(format!("parameter {s:?} is not key=value")))
}

/// Parses a comma-separated query vector.
pub fn parse_query(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
        .collect::<Option<Vec<f64>>>()
        .ok_or_else(|| CliError::Usage(format!("query {s:?} is not a comma-separated list of numbers")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub params: Params,
    pub data: String,
    pub queries: Vec<Vec<f64>>,
    /// Fraction of rows used for training; the rest are held out.
    pub train_fraction: f64,
    pub seed: u64,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(
        learner: &str,
        params: &[(String, String)],
        data: &str,
        queries: Vec<Vec<f64>>,
        train_fraction: f64,
        seed: u64,
        format: Format,
    ) -> CliResult<Self> {
        let params = Params::new(LearnerKind::parse(learner)?, params)?;
        if !(train_fraction > 0.0 && train_fraction <= 1.0) {
            return Err(CliError::Usage(format!("train fraction {train_fraction} outside (0, 1]")));
        }
        Ok(Self { params, data: data.to_string(), queries, train_fraction, seed, format })
    }

    pub fn learner(&self) -> LearnerKind {
        self.params.learner()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kv(k: &str, v: &str) -> (String, String) {
        (k.to_string(), v.to_string())
    }

    #[test]
    fn learner_names_round_trip() {
        for k in LearnerKind::ALL {
            assert_eq!(LearnerKind::parse(k.name()).unwrap(), k);
        }
        let err = LearnerKind::parse("forest").unwrap_err();
        assert!(matches!(&err, CliError::Usage(m) if m.contains("hoeffding_knn")));
    }

    #[test]
    fn params_validate() {
        let p = Params::new(LearnerKind::Svm, &[kv("alpha", "0.5")]).unwrap();
        assert_eq!(p.f64("alpha").unwrap(), 0.5);
        assert_eq!(p.usize("iters").unwrap(), 1000);
        assert!(Params::new(LearnerKind::Knn, &[]).is_err());
        assert!(Params::new(LearnerKind::Knn, &[kv("k", "3"), kv("gamma", "1")]).is_err());
        assert!(Params::new(LearnerKind::Knn, &[kv("k", "three")]).is_err());
        assert!(Params::new(LearnerKind::Linkage, &[kv("k", "2"), kv("linkage", "ward")]).is_err());
    }

    #[test]
    fn basis_syntax() {
        assert_eq!(
            parse_basis("x0 + x1^2 + x0*x1 + rbf(0.5;1;2)").unwrap(),
            vec![
                Basis::Feature(0),
                Basis::Power(1, 2),
                Basis::Product(0, 1),
                Basis::Gaussian { center: vec![1.0, 2.0], gamma: 0.5 }
            ]
        );
        assert!(parse_basis("y0").is_err());
        assert!(parse_basis("rbf(0.5)").is_err());
    }

    #[test]
    fn query_and_param_syntax() {
        assert_eq!(parse_query("1, -2.5").unwrap(), vec![1.0, -2.5]);
        assert!(parse_query("1,,2").is_err());
        assert_eq!(parse_param("k=3").unwrap(), kv("k", "3"));
        assert!(parse_param("k").is_err());
    }
}
