//! Linear-form learners: logistic regression, SVM, SVR, kernel SVR and ridge.
//!
//! Criteria are evaluated through badness rules over the pointwise alignment.
//! The descent-based fits run fixed-step (sub)gradient descent from zero and
//! keep the best iterate seen.

use nalgebra::{DMatrix, DVector};

use crate::agg::AggregationSpec;
use crate::del::{
    criterion_value, AlignmentPredicate, BadnessRule, Basis, DeviationFunction, ExplanationCriterion, Hypothesis,
    Instance, LOG_CLAMP,
};
use crate::error::{Error, Result};
use crate::train::Focusing;

use super::dataset::{LabelKind, LabeledDataset};
use super::distinct_points;

#[derive(Debug, Clone, PartialEq)]
pub enum LinearForm {
    Linear,
    Logistic,
    BasisLinear(Vec<Basis>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub w: Vec<f64>,
    pub b: f64,
    pub form: LinearForm,
}

impl LinearModel {
    pub fn new(w: Vec<f64>, b: f64, form: LinearForm) -> Self {
        Self { w, b, form }
    }

    pub fn linear(w: Vec<f64>, b: f64) -> Self {
        Self::new(w, b, LinearForm::Linear)
    }

    fn from_params(p: &[f64], form: LinearForm) -> Self {
        let (w, b) = p.split_at(p.len() - 1);
        Self::new(w.to_vec(), b[0], form)
    }

    /// The model as a hypothesis supported at `support`.
    pub fn hypothesis(&self, support: Vec<Vec<f64>>) -> Hypothesis {
        match &self.form {
            LinearForm::Linear => Hypothesis::linear(&self.w, self.b, support),
            LinearForm::Logistic => Hypothesis::logistic(&self.w, self.b, support),
            LinearForm::BasisLinear(basis) => Hypothesis::basis_linear(basis.clone(), &self.w, self.b, support),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.hypothesis(Vec::new()).eval(x)
    }

    pub fn norm_sq(&self) -> f64 {
        self.w.iter().map(|v| v * v).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.b.is_finite() && self.w.iter().all(|v| v.is_finite())
    }
}

/// A fitted model and the best-so-far criterion value before the first step
/// and after each step.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: LinearModel,
    pub history: Vec<f64>,
}

fn pointwise_value(model: &LinearModel, s: &[Instance], c: &ExplanationCriterion) -> Result<f64> {
    criterion_value(c, &model.hypothesis(distinct_points(s)), s)
}

fn affine(p: &[f64], x: &[f64]) -> f64 {
    let (w, b) = p.split_at(p.len() - 1);
    w.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + b[0]
}

fn descend(
    dim: usize,
    step: f64,
    iters: usize,
    mut objective: impl FnMut(&[f64]) -> Result<f64>,
    gradient: impl Fn(&[f64]) -> Vec<f64>,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if iters == 0 {
        return Err(Error::InvalidParameter("iters must be at least 1".into()));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(format!("step = {step} must be positive")));
    }
    let mut p = vec![0.0; dim];
    let mut best = (p.clone(), objective(&p)?);
    let mut history = vec![best.1];
    for _ in 0..iters {
        let g = gradient(&p);
        for (pi, gi) in p.iter_mut().zip(&g) {
            *pi -= step * gi;
        }
        let v = objective(&p)?;
        if v < best.1 {
            best = (p.clone(), v);
        }
        history.push(best.1);
    }
    Ok((best.0, history))
}

/// `(1/m) Σ ln(max(|y − f(x)|, 10⁻¹²))` for a logistic `f`.
pub fn logistic_criterion_rule() -> BadnessRule {
    BadnessRule::new(AlignmentPredicate::Pointwise, DeviationFunction::log(), AggregationSpec::l1())
}

pub fn logistic_criterion(model: &LinearModel, s: &LabeledDataset) -> Result<f64> {
    let c = ExplanationCriterion::single(logistic_criterion_rule());
    pointwise_value(model, s.rows(), &c)
}

/// Analytic gradient of the logistic criterion in `[w…, b]`.
pub fn logistic_gradient(params: &[f64], s: &LabeledDataset) -> Vec<f64> {
    let mut g = vec![0.0; params.len()];
    let m = s.len() as f64;
    for r in s.rows() {
        let f = 1.0 / (1.0 + (-affine(params, &r.x)).exp());
        let resid = r.y_scalar() - f;
        if resid.abs() <= LOG_CLAMP {
            continue;
        }
        let dz = -resid.signum() * f * (1.0 - f) / resid.abs();
        for (gj, xj) in g.iter_mut().zip(r.x.iter().chain(std::iter::once(&1.0))) {
            *gj += dz * xj / m;
        }
    }
    g
}

pub fn logistic_fit(s: &LabeledDataset, step: f64, iters: usize) -> Result<FitResult> {
    s.require(LabelKind::Binary01)?;
    let form = || LinearForm::Logistic;
    let (p, history) = descend(
        s.n() + 1,
        step,
        iters,
        |p| logistic_criterion(&LinearModel::from_params(p, form()), s),
        |p| logistic_gradient(p, s),
    )?;
    Ok(FitResult { model: LinearModel::from_params(&p, form()), history })
}

/// `α‖w‖² + (1/m) Σ max(1 − y f(x), 0)`: the SVM objective with every slack
/// at its smallest feasible value.
pub fn svm_slack_minimum(f: &LinearModel, s: &LabeledDataset, alpha: f64) -> f64 {
    let hinge: f64 = s.rows().iter().map(|r| (1.0 - r.y_scalar() * f.eval(&r.x)).max(0.0)).sum();
    alpha * f.norm_sq() + hinge / s.len() as f64
}

/// Smallest `|f(x)|` over correctly classified observations (`y f(x) > 0`).
pub fn min_correct_margin(f: &LinearModel, s: &LabeledDataset) -> Option<f64> {
    s.rows()
        .iter()
        .map(|r| (r.y_scalar(), f.eval(&r.x)))
        .filter(|(y, v)| y * v > 0.0)
        .map(|(_, v)| v.abs())
        .min_by(f64::total_cmp)
}

/// Whether `f` lies in the normalized class: some observation is classified
/// correctly, none sits on the boundary, and the smallest correct margin is 1.
pub fn in_normalized_class(f: &LinearModel, s: &LabeledDataset, tol: f64) -> bool {
    let on_boundary = s.rows().iter().any(|r| f.eval(&r.x) == 0.0);
    !on_boundary && min_correct_margin(f, s).is_some_and(|q| (q - 1.0).abs() <= tol)
}

/// `α‖w‖² + (1/m) Σ_{misclassified} |y − f(x)|`, evaluated as a sign-class
/// badness rule plus the squared-gradient regularization.
pub fn svm_explanation_criterion(f: &LinearModel, s: &LabeledDataset, alpha: f64) -> Result<f64> {
    s.require(LabelKind::Pm1)?;
    if !in_normalized_class(f, s, 1e-9) {
        return Err(Error::NotNormalized("smallest correct margin must be 1".into()));
    }
    let rule =
        BadnessRule::new(AlignmentPredicate::Pointwise, DeviationFunction::SignClassYDist, AggregationSpec::l1());
    pointwise_value(f, s.rows(), &ExplanationCriterion::regularized(rule, alpha)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvmFit {
    pub model: LinearModel,
    pub history: Vec<f64>,
    /// False when no observation is classified correctly, in which case the
    /// model is returned unscaled.
    pub normalized: bool,
}

/// Subgradient descent on [`svm_slack_minimum`], then rescaling by the
/// smallest correct margin.
pub fn svm_fit(s: &LabeledDataset, alpha: f64, step: f64, iters: usize) -> Result<SvmFit> {
    s.require(LabelKind::Pm1)?;
    let m = s.len() as f64;
    let (p, history) = descend(
        s.n() + 1,
        step,
        iters,
        |p| Ok(svm_slack_minimum(&LinearModel::from_params(p, LinearForm::Linear), s, alpha)),
        |p| {
            let mut g: Vec<f64> = p.iter().map(|v| 2.0 * alpha * v).collect();
            *g.last_mut().unwrap() = 0.0;
            for r in s.rows() {
                let y = r.y_scalar();
                if 1.0 - y * affine(p, &r.x) > 0.0 {
                    for (gj, xj) in g.iter_mut().zip(r.x.iter().chain(std::iter::once(&1.0))) {
                        *gj -= y * xj / m;
                    }
                }
            }
            g
        },
    )?;
    let model = LinearModel::from_params(&p, LinearForm::Linear);
    Ok(match min_correct_margin(&model, s) {
        Some(q) => {
            let scaled = LinearModel::linear(model.w.iter().map(|v| v / q).collect(), model.b / q);
            SvmFit { model: scaled, history, normalized: true }
        }
        None => SvmFit { model, history, normalized: false },
    })
}

fn svr_criterion_on(model: &LinearModel, rows: &[Instance], eps: f64, lambda: f64) -> Result<f64> {
    let rule = BadnessRule::new(
        AlignmentPredicate::Pointwise,
        DeviationFunction::EpsilonInsensitive { eps },
        AggregationSpec::sum(),
    );
    pointwise_value(model, rows, &ExplanationCriterion::regularized(rule, lambda)?)
}

/// `Σ V_ε(y − f(x)) + λ‖w‖²`.
pub fn svr_criterion(model: &LinearModel, s: &LabeledDataset, eps: f64, lambda: f64) -> Result<f64> {
    svr_criterion_on(model, s.rows(), eps, lambda)
}

fn check_svr(s: &LabeledDataset, eps: f64, lambda: f64) -> Result<()> {
    if s.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if !(eps >= 0.0) || !(lambda >= 0.0) {
        return Err(Error::InvalidParameter("eps and lambda must be nonnegative".into()));
    }
    Ok(())
}

pub fn svr_fit(s: &LabeledDataset, eps: f64, lambda: f64, step: f64, iters: usize) -> Result<FitResult> {
    check_svr(s, eps, lambda)?;
    let (p, history) = descend(
        s.n() + 1,
        step,
        iters,
        |p| svr_criterion(&LinearModel::from_params(p, LinearForm::Linear), s, eps, lambda),
        |p| {
            let mut g: Vec<f64> = p.iter().map(|v| 2.0 * lambda * v).collect();
            *g.last_mut().unwrap() = 0.0;
            for r in s.rows() {
                let resid = r.y_scalar() - affine(p, &r.x);
                if resid.abs() > eps {
                    for (gj, xj) in g.iter_mut().zip(r.x.iter().chain(std::iter::once(&1.0))) {
                        *gj -= resid.signum() * xj;
                    }
                }
            }
            g
        },
    )?;
    Ok(FitResult { model: LinearModel::from_params(&p, LinearForm::Linear), history })
}

/// Linear SVR in the space spanned by `basis`.
pub fn kernel_svr_fit(
    s: &LabeledDataset,
    basis: &[Basis],
    eps: f64,
    lambda: f64,
    step: f64,
    iters: usize,
) -> Result<FitResult> {
    if basis.is_empty() {
        return Err(Error::InvalidParameter("basis must be nonempty".into()));
    }
    if let Some(b) = basis.iter().find(|b| b.required_dim() > s.n()) {
        return Err(Error::DimensionMismatch { expected: s.n(), found: b.required_dim() });
    }
    let expanded = Focusing::BasisExpansion(basis.to_vec()).apply(s.rows());
    let t = LabeledDataset::with_kind(
        expanded.iter().map(|r| r.x.clone()).collect(),
        expanded.iter().map(Instance::y_scalar).collect(),
        s.label_kind(),
    )?;
    let fit = svr_fit(&t, eps, lambda, step, iters)?;
    let model = LinearModel::new(fit.model.w, fit.model.b, LinearForm::BasisLinear(basis.to_vec()));
    Ok(FitResult { model, history: fit.history })
}

/// `α‖w‖² + (1/m) Σ (f(x) − y)²`.
pub fn ridge_criterion(model: &LinearModel, s: &LabeledDataset, alpha: f64) -> Result<f64> {
    let rule = BadnessRule::new(AlignmentPredicate::Pointwise, DeviationFunction::SquareYDist, AggregationSpec::l1());
    pointwise_value(model, s.rows(), &ExplanationCriterion::regularized(rule, alpha)?)
}

/// Closed-form minimizer of [`ridge_criterion`] with an unpenalized bias.
pub fn ridge_fit(s: &LabeledDataset, alpha: f64) -> Result<LinearModel> {
    if s.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must be nonnegative")));
    }
    let (m, n) = (s.len(), s.n());
    let mf = m as f64;
    let x = DMatrix::from_fn(m, n, |i, j| s.x(i)[j]);
    let y = DVector::from_fn(m, |i, _| s.y(i));
    let mut a = DMatrix::zeros(n + 1, n + 1);
    let xtx = x.transpose() * &x / mf;
    let col_means = DVector::from_fn(n, |j, _| x.column(j).sum() / mf);
    a.view_mut((0, 0), (n, n)).copy_from(&(xtx + DMatrix::identity(n, n) * alpha));
    a.view_mut((0, n), (n, 1)).copy_from(&col_means);
    a.view_mut((n, 0), (1, n)).copy_from(&col_means.transpose());
    a[(n, n)] = 1.0;
    let mut rhs = DVector::zeros(n + 1);
    rhs.rows_mut(0, n).copy_from(&(x.transpose() * &y / mf));
    rhs[n] = y.sum() / mf;

    let svd = a.clone().svd(false, false);
    let (lo, hi) = (svd.singular_values.min(), svd.singular_values.max());
    if !(lo > hi * 1e-12) {
        return Err(Error::Singular);
    }
    let p = a.lu().solve(&rhs).ok_or(Error::Singular)?;
    Ok(LinearModel::from_params(p.as_slice(), LinearForm::Linear))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(xs: &[f64], ys: &[f64]) -> LabeledDataset {
        LabeledDataset::new(xs.iter().map(|&x| vec![x]).collect(), ys.to_vec()).unwrap()
    }

    #[test]
    fn logistic_at_half_is_log_half() {
        let s = ds(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.0]);
        let f = LinearModel::new(vec![0.0], 0.0, LinearForm::Logistic);
        assert!((logistic_criterion(&f, &s).unwrap() - 0.5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn logistic_best_so_far_strictly_decreases_early() {
        let s = ds(&[-2.0, -1.0, 1.0, 2.0], &[0.0, 0.0, 1.0, 1.0]);
        let fit = logistic_fit(&s, 0.01, 10).unwrap();
        assert!(fit.history.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn svm_slack_examples() {
        let s = LabeledDataset::new(vec![vec![2.0], vec![-3.0]], vec![1.0, -1.0]).unwrap();
        let f = LinearModel::linear(vec![1.0], 0.0);
        assert_eq!(svm_slack_minimum(&f, &s, 0.5), 0.5);
        let one = LabeledDataset::new(vec![vec![-0.5]], vec![1.0]).unwrap();
        assert_eq!(svm_slack_minimum(&f, &one, 0.0), 1.5);
    }

    #[test]
    fn svm_criterion_matches_slack_form_on_normalized_model() {
        let s =
            LabeledDataset::new(vec![vec![1.0], vec![3.0], vec![-2.0], vec![-0.5]], vec![1.0, 1.0, -1.0, 1.0]).unwrap();
        let f = LinearModel::linear(vec![1.0], 0.0);
        let c = svm_explanation_criterion(&f, &s, 0.1).unwrap();
        assert!((c - (0.1 + 1.5 / 4.0)).abs() < 1e-12);
        assert!((c - svm_slack_minimum(&f, &s, 0.1)).abs() < 1e-12);
        let g = LinearModel::linear(vec![2.0], 0.0);
        assert!(matches!(svm_explanation_criterion(&g, &s, 0.1), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn svm_fit_separates_two_points() {
        let s = LabeledDataset::new(vec![vec![1.0], vec![-1.0]], vec![1.0, -1.0]).unwrap();
        let fit = svm_fit(&s, 0.01, 0.1, 200).unwrap();
        assert!(fit.normalized);
        assert!(in_normalized_class(&fit.model, &s, 1e-9));
        assert!(s.rows().iter().all(|r| r.y_scalar() * fit.model.eval(&r.x) > 0.0));
        assert!(fit.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn svr_zero_on_exact_line() {
        let s = ds(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.5]);
        let line = LinearModel::linear(vec![2.0], 1.0);
        assert_eq!(svr_criterion(&line, &s, 0.6, 0.0).unwrap(), 0.0);
        assert_eq!(svr_criterion(&line, &s, 0.25, 0.0).unwrap(), 0.25);
    }

    #[test]
    fn kernel_svr_with_identity_basis_matches_svr() {
        let s = ds(&[0.0, 1.0, 2.0, 3.0], &[0.5, 1.0, 2.5, 2.75]);
        let a = svr_fit(&s, 0.1, 0.01, 0.01, 300).unwrap();
        let b = kernel_svr_fit(&s, &[Basis::Feature(0)], 0.1, 0.01, 0.01, 300).unwrap();
        assert_eq!(a.history, b.history);
        assert_eq!((a.model.w, a.model.b), (b.model.w, b.model.b));
    }

    #[test]
    fn kernel_svr_fits_parabola() {
        let xs = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let s = ds(&xs, &xs.map(|x| x * x));
        let basis = [Basis::Feature(0), Basis::Power(0, 2)];
        let fit = kernel_svr_fit(&s, &basis, 0.05, 0.0, 0.01, 3000).unwrap();
        assert_eq!(fit.model.w.len(), 2);
        assert!(fit.history.last().unwrap() < &0.5);
    }

    #[test]
    fn ridge_interpolates_and_shrinks() {
        let s = ds(&[0.0, 1.0, 2.0, 3.0], &[0.0, 2.0, 4.0, 6.0]);
        let f = ridge_fit(&s, 0.0).unwrap();
        assert!((f.w[0] - 2.0).abs() < 1e-12 && f.b.abs() < 1e-12);
        let norms: Vec<f64> = [1.0, 10.0, 100.0].iter().map(|&a| ridge_fit(&s, a).unwrap().norm_sq()).collect();
        assert!(norms[0] > norms[1] && norms[1] > norms[2]);
    }

    #[test]
    fn ridge_singular_without_penalty() {
        let s = LabeledDataset::new(vec![vec![1.0, 1.0], vec![2.0, 2.0]], vec![0.5, 1.5]).unwrap();
        assert_eq!(ridge_fit(&s, 0.0), Err(Error::Singular));
        assert!(ridge_fit(&s, 0.1).is_ok());
    }
}
