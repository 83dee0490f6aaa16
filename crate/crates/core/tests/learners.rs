use abduction::learners::clustering::{kmeans_objective_centroid, kmeans_objective_pairwise, kmeans_run};
use abduction::learners::knn::{ada_knn_classify, knn_classify};
use abduction::learners::linear::{ridge_criterion, ridge_fit, LinearModel};
use abduction::learners::naive_bayes::naive_bayes_classify;
use abduction::learners::LabeledDataset;
use abduction::synth::{grid_vector, Generator};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shuffled(s: &LabeledDataset, seed: u64) -> LabeledDataset {
    let mut idx: Vec<usize> = (0..s.len()).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    s.subset(&idx)
}

proptest! {
    #[test]
    fn knn_ignores_row_order(seed in 0u64..500, k in 1usize..9) {
        let s = Generator::TwoBlobs1d.generate(20, seed).unwrap();
        let t = shuffled(&s, seed + 1);
        for x0 in [-3.0, -0.5, 0.0, 0.75, 2.5] {
            prop_assert_eq!(knn_classify(&s, &[x0], k).unwrap(), knn_classify(&t, &[x0], k).unwrap());
        }
    }

    #[test]
    fn naive_bayes_ignores_row_order(seed in 0u64..500) {
        let s = Generator::Xor2d.generate(12, seed).unwrap();
        let t = shuffled(&s, seed + 7);
        for z in [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]] {
            prop_assert_eq!(naive_bayes_classify(&s, &z).unwrap(), naive_bayes_classify(&t, &z).unwrap());
        }
    }

    #[test]
    fn ridge_minimizes_its_criterion(seed in 0u64..200, alpha in prop::sample::select(vec![0.1, 1.0, 10.0])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<Vec<f64>> = (0..12).map(|_| grid_vector(&mut rng, 2)).collect();
        let ys: Vec<f64> = grid_vector(&mut rng, 12);
        let s = LabeledDataset::new(xs, ys).unwrap();
        let fit = ridge_fit(&s, alpha).unwrap();
        let best = ridge_criterion(&fit, &s, alpha).unwrap();
        for (dw, db) in [(0.01, 0.0), (-0.01, 0.0), (0.0, 0.01), (0.0, -0.01)] {
            let nudged = LinearModel::linear(vec![fit.w[0] + dw, fit.w[1]], fit.b + db);
            prop_assert!(ridge_criterion(&nudged, &s, alpha).unwrap() >= best - 1e-12);
        }
    }
}

#[test]
fn ada_knn_decides_well_separated_blobs() {
    let s = Generator::TwoBlobs1d.generate(400, 3).unwrap();
    let far_left = ada_knn_classify(&s, &[-4.0], 0.1, 1.0).unwrap();
    let far_right = ada_knn_classify(&s, &[4.0], 0.1, 1.0).unwrap();
    assert_eq!((far_left.class, far_right.class), (Some(0), Some(1)));
}

#[test]
fn kmeans_objective_forms_agree_after_a_run() {
    let s = Generator::TwoBlobs1d.generate(60, 2).unwrap();
    let points = s.xs();
    let state = kmeans_run(&points, 2, 9, 100).unwrap();
    let pairwise = kmeans_objective_pairwise(&points, &state.assignment).unwrap();
    let centroid = kmeans_objective_centroid(&points, &state);
    assert!((pairwise - centroid).abs() <= 1e-9 * pairwise.abs());
}
