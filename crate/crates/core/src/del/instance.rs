use crate::error::{Error, Result};

/// Type symbol of an instance: an observation or a hypothetical instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    Observed,
    Hypothetical,
}

/// One tuple `⟨x, y, s⟩` of the explanation logic.
///
/// The feedback `y` is a vector: scalar for classification and regression,
/// the data point itself for clustering (where `x` is the cluster index).
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub tag: Tag,
}

impl Instance {
    pub fn observed(x: Vec<f64>, y: f64) -> Self {
        Self { x, y: vec![y], tag: Tag::Observed }
    }

    pub fn hypothetical(x: Vec<f64>, y: f64) -> Self {
        Self { x, y: vec![y], tag: Tag::Hypothetical }
    }

    pub fn with_feedback(x: Vec<f64>, y: Vec<f64>, tag: Tag) -> Self {
        Self { x, y, tag }
    }

    /// First feedback component.
    pub fn y_scalar(&self) -> f64 {
        self.y[0]
    }

    pub fn is_observed(&self) -> bool {
        self.tag == Tag::Observed
    }

    pub fn is_hypothetical(&self) -> bool {
        self.tag == Tag::Hypothetical
    }
}

/// Euclidean distance between two equal-length vectors.
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Named basis function for basis expansions.
#[derive(Debug, Clone, PartialEq)]
pub enum Basis {
    /// `x_j`
    Feature(usize),
    /// `x_j^p`
    Power(usize, i32),
    /// `x_i · x_j`
    Product(usize, usize),
    /// `exp(−γ‖x − c‖²)`
    Gaussian { center: Vec<f64>, gamma: f64 },
}

impl Basis {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Basis::Feature(j) => x[*j],
            Basis::Power(j, p) => x[*j].powi(*p),
            Basis::Product(i, j) => x[*i] * x[*j],
            Basis::Gaussian { center, gamma } => {
                let d = euclidean(x, center);
                (-gamma * d * d).exp()
            }
        }
    }

    /// Largest feature index the basis reads, or the center dimension.
    pub fn required_dim(&self) -> usize {
        match self {
            Basis::Feature(j) | Basis::Power(j, _) => j + 1,
            Basis::Product(i, j) => i.max(j) + 1,
            Basis::Gaussian { center, .. } => center.len(),
        }
    }

    /// Applies every basis function to `x`.
    pub fn expand(basis: &[Basis], x: &[f64]) -> Vec<f64> {
        basis.iter().map(|b| b.eval(x)).collect()
    }
}

/// Functional form of a hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub enum Form {
    /// `params = [c]`
    Constant,
    /// `params = [w…, b]`, `f(x) = ⟨w, x⟩ + b`
    Linear,
    /// `params = [w…, b]`, `f(x) = 1 / (1 + exp(−⟨w, x⟩ − b))`
    Logistic,
    /// `params = [w…, b]`, `f(x) = Σ wᵢ hᵢ(x) + b`
    BasisLinear(Vec<Basis>),
    /// `params = [cluster index]`; the support holds data points that the
    /// hypothesis places in that cluster.
    ClusterAssignment,
}

impl Form {
    pub fn name(&self) -> &'static str {
        match self {
            Form::Constant => "constant",
            Form::Linear => "linear",
            Form::Logistic => "logistic",
            Form::BasisLinear(_) => "basis_linear",
            Form::ClusterAssignment => "cluster_assignment",
        }
    }
}

/// An explanation hypothesis together with the finite set of points at which
/// it generates hypothetical instances.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub params: Vec<f64>,
    pub form: Form,
    pub support: Vec<Vec<f64>>,
}

impl Hypothesis {
    pub fn constant(c: f64, support: Vec<Vec<f64>>) -> Self {
        Self { params: vec![c], form: Form::Constant, support }
    }

    pub fn linear(w: &[f64], b: f64, support: Vec<Vec<f64>>) -> Self {
        Self { params: with_bias(w, b), form: Form::Linear, support }
    }

    pub fn logistic(w: &[f64], b: f64, support: Vec<Vec<f64>>) -> Self {
        Self { params: with_bias(w, b), form: Form::Logistic, support }
    }

    pub fn basis_linear(basis: Vec<Basis>, w: &[f64], b: f64, support: Vec<Vec<f64>>) -> Self {
        Self { params: with_bias(w, b), form: Form::BasisLinear(basis), support }
    }

    pub fn cluster(index: usize, points: Vec<Vec<f64>>) -> Self {
        Self { params: vec![index as f64], form: Form::ClusterAssignment, support: points }
    }

    /// Weight part of the parameters, for forms with a gradient.
    pub fn weights(&self) -> Option<&[f64]> {
        match self.form {
            Form::Linear | Form::Logistic | Form::BasisLinear(_) => Some(&self.params[..self.params.len() - 1]),
            _ => None,
        }
    }

    fn bias(&self) -> f64 {
        self.params[self.params.len() - 1]
    }

    /// Scalar value of a function-form hypothesis at `x`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match &self.form {
            Form::Constant => self.params[0],
            Form::Linear => dot(self.weights().unwrap(), x) + self.bias(),
            Form::Logistic => {
                let z = dot(self.weights().unwrap(), x) + self.bias();
                1.0 / (1.0 + (-z).exp())
            }
            Form::BasisLinear(basis) => {
                let w = self.weights().unwrap();
                basis.iter().zip(w).map(|(h, wi)| wi * h.eval(x)).sum::<f64>() + self.bias()
            }
            Form::ClusterAssignment => self.params[0],
        }
    }

    /// Number of input features the form expects, if it constrains one.
    fn input_dim(&self) -> Option<usize> {
        match &self.form {
            Form::Linear | Form::Logistic => Some(self.params.len() - 1),
            _ => None,
        }
    }

    fn check_params(&self) -> Result<()> {
        let expected = match &self.form {
            Form::Constant | Form::ClusterAssignment => 1,
            Form::Linear | Form::Logistic => self.params.len().max(1),
            Form::BasisLinear(basis) => basis.len() + 1,
        };
        if self.params.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: self.params.len() });
        }
        Ok(())
    }

    /// The hypothetical instances `H(h)`.
    pub fn hypothetical_instances(&self) -> Vec<Instance> {
        match self.form {
            Form::ClusterAssignment => self
                .support
                .iter()
                .map(|p| Instance::with_feedback(vec![self.params[0]], p.clone(), Tag::Hypothetical))
                .collect(),
            _ => self.support.iter().map(|x| Instance::hypothetical(x.clone(), self.eval(x))).collect(),
        }
    }
}

fn with_bias(w: &[f64], b: f64) -> Vec<f64> {
    let mut p = w.to_vec();
    p.push(b);
    p
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// The conglomerate `M(h, S) = S ∪ H(h)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Conglomerate {
    pub instances: Vec<Instance>,
}

impl Conglomerate {
    pub fn new(instances: Vec<Instance>) -> Self {
        Self { instances }
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn observations(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| i.is_observed())
    }
}

/// Builds `M(h, S)`: the observations followed by one hypothetical instance
/// per support point of `h`.
pub fn build_conglomerate(h: &Hypothesis, s: &[Instance]) -> Result<Conglomerate> {
    h.check_params()?;
    let x_dim = s.first().map(|i| i.x.len());
    let y_dim = s.first().map(|i| i.y.len());
    for (k, inst) in s.iter().enumerate() {
        if !inst.is_observed() {
            return Err(Error::NotObservation(k));
        }
        check_dim(x_dim, inst.x.len())?;
        check_dim(y_dim, inst.y.len())?;
    }
    let hyp = h.hypothetical_instances();
    match &h.form {
        Form::ClusterAssignment => {
            check_dim(x_dim, 1)?;
            for p in &h.support {
                check_dim(y_dim, p.len())?;
            }
        }
        form => {
            let dim = x_dim.or(h.input_dim());
            for x in &h.support {
                check_dim(dim, x.len())?;
            }
            if let Some(d) = h.input_dim() {
                check_dim(x_dim, d)?;
            }
            if let Form::BasisLinear(basis) = form {
                let needed = basis.iter().map(Basis::required_dim).max().unwrap_or(0);
                if let Some(d) = dim {
                    if needed > d {
                        return Err(Error::DimensionMismatch { expected: d, found: needed });
                    }
                }
            }
        }
    }
    let mut instances = s.to_vec();
    instances.extend(hyp);
    Ok(Conglomerate { instances })
}

fn check_dim(expected: Option<usize>, found: usize) -> Result<()> {
    match expected {
        Some(e) if e != found => Err(Error::DimensionMismatch { expected: e, found }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_hypothesis_adds_one_instance() {
        let h = Hypothesis::constant(1.0, vec![vec![0.0]]);
        let m = build_conglomerate(&h, &[Instance::observed(vec![0.0], 0.0)]).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.instances[1], Instance::hypothetical(vec![0.0], 1.0));
    }

    #[test]
    fn exact_linear_fit() {
        let s = vec![Instance::observed(vec![1.0], 2.0), Instance::observed(vec![2.0], 4.0)];
        let h = Hypothesis::linear(&[2.0], 0.0, vec![vec![1.0], vec![2.0]]);
        let m = build_conglomerate(&h, &s).unwrap();
        assert_eq!(
            &m.instances[2..],
            &[Instance::hypothetical(vec![1.0], 2.0), Instance::hypothetical(vec![2.0], 4.0)]
        );
    }

    #[test]
    fn empty_support_returns_observations() {
        let s = vec![Instance::observed(vec![1.0], 2.0)];
        let h = Hypothesis::constant(0.0, vec![]);
        assert_eq!(build_conglomerate(&h, &s).unwrap().instances, s);
    }

    #[test]
    fn dimension_mismatch() {
        let s = vec![Instance::observed(vec![1.0, 2.0], 2.0), Instance::observed(vec![2.0], 4.0)];
        let h = Hypothesis::constant(0.0, vec![]);
        assert!(matches!(build_conglomerate(&h, &s), Err(Error::DimensionMismatch { .. })));

        let s = vec![Instance::observed(vec![1.0], 2.0)];
        let h = Hypothesis::linear(&[1.0, 1.0], 0.0, vec![vec![1.0]]);
        assert!(matches!(build_conglomerate(&h, &s), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_hypothetical_training_rows() {
        let s = vec![Instance::hypothetical(vec![1.0], 2.0)];
        let h = Hypothesis::constant(0.0, vec![]);
        assert_eq!(build_conglomerate(&h, &s), Err(Error::NotObservation(0)));
    }

    #[test]
    fn cluster_hypothesis_places_points_at_index() {
        let h = Hypothesis::cluster(2, vec![vec![1.0, 1.0]]);
        let hyp = h.hypothetical_instances();
        assert_eq!(hyp[0].x, vec![2.0]);
        assert_eq!(hyp[0].y, vec![1.0, 1.0]);
    }
}
