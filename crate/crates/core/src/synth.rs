//! Seeded synthetic datasets and random test-case helpers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::learners::LabeledDataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Class 0 from `N(−2, 1)`, class 1 from `N(2, 1)`, classes by fair coin.
    TwoBlobs1d,
    /// `x ~ U[0, 1]`, label `[x > 1/2]` kept with probability 0.8.
    NoisyThreshold,
    /// The four corners of the unit square labeled by XOR, cycled to `m` rows
    /// in shuffled order.
    Xor2d,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::TwoBlobs1d, Generator::NoisyThreshold, Generator::Xor2d];

    pub fn name(self) -> &'static str {
        match self {
            Generator::TwoBlobs1d => "two_blobs_1d",
            Generator::NoisyThreshold => "noisy_threshold",
            Generator::Xor2d => "xor2d",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == s)
    }

    pub fn generate(self, m: usize, seed: u64) -> Result<LabeledDataset> {
        if m == 0 {
            return Err(Error::EmptyDataset);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (xs, ys): (Vec<Vec<f64>>, Vec<f64>) = match self {
            Generator::TwoBlobs1d => {
                let noise = Normal::new(0.0, 1.0).expect("valid sigma");
                (0..m)
                    .map(|_| {
                        let y = f64::from(u8::from(rng.random_bool(0.5)));
                        (vec![4.0 * y - 2.0 + noise.sample(&mut rng)], y)
                    })
                    .unzip()
            }
            Generator::NoisyThreshold => (0..m)
                .map(|_| {
                    let x: f64 = rng.random();
                    let clean = x > 0.5;
                    let y = if rng.random_bool(0.8) { clean } else { !clean };
                    (vec![x], f64::from(u8::from(y)))
                })
                .unzip(),
            Generator::Xor2d => {
                let mut idx: Vec<usize> = (0..m).collect();
                idx.shuffle(&mut rng);
                idx.into_iter()
                    .map(|i| {
                        let (a, b) = ((i % 4) / 2, i % 2);
                        (vec![a as f64, b as f64], (a ^ b) as f64)
                    })
                    .unzip()
            }
        };
        LabeledDataset::new(xs, ys)
    }
}

/// Parses `synth:<generator>:<m>:<seed>`.
pub fn parse_spec(spec: &str) -> Option<(Generator, usize, u64)> {
    let mut parts = spec.strip_prefix("synth:")?.split(':');
    let g = Generator::parse(parts.next()?)?;
    let m = parts.next()?.parse().ok()?;
    let seed = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some((g, m, seed))
}

/// A multiple of 1/8 in `[−4, 4]`.
pub fn grid_value(rng: &mut impl Rng) -> f64 {
    f64::from(rng.random_range(-32i32..=32)) / 8.0
}

pub fn grid_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| grid_value(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded() {
        for g in Generator::ALL {
            assert_eq!(g.generate(30, 5).unwrap(), g.generate(30, 5).unwrap());
            assert_eq!(g.generate(30, 5).unwrap().len(), 30);
        }
        assert_ne!(Generator::TwoBlobs1d.generate(30, 5).unwrap(), Generator::TwoBlobs1d.generate(30, 6).unwrap());
    }

    #[test]
    fn xor_has_the_four_corners() {
        let s = Generator::Xor2d.generate(4, 9).unwrap();
        let mut rows: Vec<(Vec<f64>, f64)> = (0..4).map(|i| (s.x(i).to_vec(), s.y(i))).collect();
        rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert_eq!(
            rows,
            vec![(vec![0.0, 0.0], 0.0), (vec![0.0, 1.0], 1.0), (vec![1.0, 0.0], 1.0), (vec![1.0, 1.0], 0.0)]
        );
    }

    #[test]
    fn noisy_threshold_keeps_most_labels() {
        let s = Generator::NoisyThreshold.generate(2000, 1).unwrap();
        let kept = (0..s.len()).filter(|&i| (s.x(i)[0] > 0.5) == (s.y(i) == 1.0)).count();
        assert!((1500..1700).contains(&kept));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_spec("synth:xor2d:4:7"), Some((Generator::Xor2d, 4, 7)));
        assert_eq!(parse_spec("synth:xor2d:4"), None);
        assert_eq!(parse_spec("synth:circles:4:1"), None);
        assert_eq!(parse_spec("data.csv"), None);
    }

    #[test]
    fn grid_values_are_dyadic_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..500 {
            let v = grid_value(&mut rng);
            assert!((-4.0..=4.0).contains(&v) && (v * 8.0).fract() == 0.0);
        }
    }
}
