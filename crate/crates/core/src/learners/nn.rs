//! Single-hidden-layer network with two linear voting outputs.
//!
//! Hidden units are `zᵢ = σ(gᵢ(x))`, the class is `argmax_c f_c(z)`. Training
//! runs backpropagation on the softmax cross-entropy of the two votes and
//! keeps the iterate with the fewest misclassifications, breaking ties by the
//! smaller surrogate value.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Uniform};

use crate::error::{Error, Result};

use super::dataset::{LabelKind, LabeledDataset};

/// Parameters are laid out as hidden weights (`k × n`, row-major), hidden
/// biases (`k`), output weights (`2 × k`) and output biases (`2`).
#[derive(Debug, Clone, PartialEq)]
pub struct NeuralNetModel {
    pub n: usize,
    pub k: usize,
    pub params: Vec<f64>,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

pub fn param_count(n: usize, k: usize) -> usize {
    k * n + k + 2 * k + 2
}

struct Layout {
    n: usize,
    k: usize,
}

impl Layout {
    fn v(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }
    fn c(&self, i: usize) -> usize {
        self.k * self.n + i
    }
    fn u(&self, class: usize, i: usize) -> usize {
        self.k * self.n + self.k + class * self.k + i
    }
    fn d(&self, class: usize) -> usize {
        self.k * self.n + 3 * self.k + class
    }
}

fn forward(params: &[f64], l: &Layout, x: &[f64]) -> (Vec<f64>, [f64; 2]) {
    let z: Vec<f64> =
        (0..l.k).map(|i| sigmoid((0..l.n).map(|j| params[l.v(i, j)] * x[j]).sum::<f64>() + params[l.c(i)])).collect();
    let votes = [0, 1].map(|c| (0..l.k).map(|i| params[l.u(c, i)] * z[i]).sum::<f64>() + params[l.d(c)]);
    (z, votes)
}

/// `−ln softmax(votes)[y]`, computed stably.
fn cross_entropy(votes: [f64; 2], y: usize) -> f64 {
    let hi = votes[0].max(votes[1]);
    let lse = hi + ((votes[0] - hi).exp() + (votes[1] - hi).exp()).ln();
    lse - votes[y]
}

impl NeuralNetModel {
    /// Random parameters uniform in `[−1, 1]` from a seeded generator.
    pub fn init(n: usize, k: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k_hidden must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dist = Uniform::new_inclusive(-1.0, 1.0).expect("valid range");
        let params = (0..param_count(n, k)).map(|_| dist.sample(&mut rng)).collect();
        Ok(Self { n, k, params })
    }

    fn layout(&self) -> Layout {
        Layout { n: self.n, k: self.k }
    }

    pub fn hidden(&self, x: &[f64]) -> Vec<f64> {
        forward(&self.params, &self.layout(), x).0
    }

    pub fn votes(&self, x: &[f64]) -> [f64; 2] {
        forward(&self.params, &self.layout(), x).1
    }

    /// `argmax_c f_c(z(x))`, ties to 0.
    pub fn predict(&self, x: &[f64]) -> u8 {
        let v = self.votes(x);
        u8::from(v[1] > v[0])
    }
}

/// `Σ |y − C(x)|`.
pub fn nn_misclassification(model: &NeuralNetModel, s: &LabeledDataset) -> usize {
    (0..s.len()).filter(|&i| f64::from(model.predict(s.x(i))) != s.y(i)).count()
}

/// Mean softmax cross-entropy of the votes.
pub fn nn_surrogate(params: &[f64], n: usize, k: usize, s: &LabeledDataset) -> f64 {
    let l = Layout { n, k };
    (0..s.len()).map(|i| cross_entropy(forward(params, &l, s.x(i)).1, s.y(i) as usize)).sum::<f64>() / s.len() as f64
}

/// Backpropagated gradient of [`nn_surrogate`].
pub fn nn_surrogate_gradient(params: &[f64], n: usize, k: usize, s: &LabeledDataset) -> Vec<f64> {
    let l = Layout { n, k };
    let mut g = vec![0.0; params.len()];
    let m = s.len() as f64;
    for r in 0..s.len() {
        let x = s.x(r);
        let (z, votes) = forward(params, &l, x);
        let hi = votes[0].max(votes[1]);
        let e = votes.map(|v| (v - hi).exp());
        let y = s.y(r) as usize;
        let dv = [0, 1].map(|c| (e[c] / (e[0] + e[1]) - f64::from(u8::from(c == y))) / m);
        for c in 0..2 {
            g[l.d(c)] += dv[c];
            for i in 0..k {
                g[l.u(c, i)] += dv[c] * z[i];
            }
        }
        for i in 0..k {
            let dz = (dv[0] * params[l.u(0, i)] + dv[1] * params[l.u(1, i)]) * z[i] * (1.0 - z[i]);
            g[l.c(i)] += dz;
            for j in 0..n {
                g[l.v(i, j)] += dz * x[j];
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq)]
pub struct NnFit {
    pub model: NeuralNetModel,
    /// Best-so-far `(misclassifications, surrogate)` before the first step and
    /// after each step.
    pub history: Vec<(usize, f64)>,
}

pub fn nn_fit(s: &LabeledDataset, k_hidden: usize, step: f64, iters: usize, seed: u64) -> Result<NnFit> {
    s.require(LabelKind::Binary01)?;
    if iters == 0 || !(step > 0.0) {
        return Err(Error::InvalidParameter("iters ≥ 1 and step > 0 required".into()));
    }
    let mut model = NeuralNetModel::init(s.n(), k_hidden, seed)?;
    let score = |m: &NeuralNetModel| (nn_misclassification(m, s), nn_surrogate(&m.params, m.n, m.k, s));
    let mut best = (model.clone(), score(&model));
    let mut history = vec![best.1];
    for _ in 0..iters {
        let g = nn_surrogate_gradient(&model.params, model.n, model.k, s);
        for (p, gi) in model.params.iter_mut().zip(&g) {
            *p -= step * gi;
        }
        let sc = score(&model);
        if sc.0 < best.1 .0 || (sc.0 == best.1 .0 && sc.1 < best.1 .1) {
            best = (model.clone(), sc);
        }
        history.push(best.1);
    }
    Ok(NnFit { model: best.0, history })
}
