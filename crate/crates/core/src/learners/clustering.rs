//! Linkage clustering and K-means.
//!
//! Both encode a clustering as observations `⟨x = cluster index, y = point⟩`.
//! A cluster hypothesis `h` places its support points under one index, so the
//! conglomerate `M(h, S)` is the clustering with those points added.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agg::AggregationSpec;
use crate::del::{
    badness, euclidean, AlignmentPredicate, BadnessRule, DeviationFunction, ExplanationCriterion, Hypothesis, Instance,
    Tag,
};
use crate::error::{Error, Result};
use crate::train::{basic_train, BasicTrainingConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linkage {
    Min,
    Avg,
    Max,
}

impl Linkage {
    pub fn aggregation(self) -> AggregationSpec {
        match self {
            Linkage::Min => AggregationSpec::Percentile(0.0),
            Linkage::Avg => AggregationSpec::l1(),
            Linkage::Max => AggregationSpec::Percentile(100.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Linkage::Min => "min",
            Linkage::Avg => "avg",
            Linkage::Max => "max",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "min" => Some(Linkage::Min),
            "avg" => Some(Linkage::Avg),
            "max" => Some(Linkage::Max),
            _ => None,
        }
    }
}

/// A partition of points into clusters `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    /// Cluster of each point.
    pub assignment: Vec<usize>,
    /// Mean of each cluster's points.
    pub centers: Vec<Vec<f64>>,
    pub sizes: Vec<usize>,
}

impl ClusterState {
    pub fn new(points: &[Vec<f64>], assignment: Vec<usize>, k: usize) -> Result<Self> {
        if assignment.len() != points.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), found: assignment.len() });
        }
        if let Some(&c) = assignment.iter().find(|&&c| c >= k) {
            return Err(Error::InvalidParameter(format!("cluster {c} outside 0..{k}")));
        }
        let mut state = Self { assignment, centers: Vec::new(), sizes: Vec::new() };
        state.update_centers(points, k);
        Ok(state)
    }

    pub fn k(&self) -> usize {
        self.centers.len()
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] == c).collect()
    }

    fn update_centers(&mut self, points: &[Vec<f64>], k: usize) {
        let dim = points.first().map_or(0, Vec::len);
        self.sizes = vec![0; k];
        self.centers = vec![vec![0.0; dim]; k];
        for (p, &c) in points.iter().zip(&self.assignment) {
            self.sizes[c] += 1;
            for (a, v) in self.centers[c].iter_mut().zip(p) {
                *a += v;
            }
        }
        for (center, &l) in self.centers.iter_mut().zip(&self.sizes) {
            if l > 0 {
                center.iter_mut().for_each(|a| *a /= l as f64);
            }
        }
    }
}

fn encode(points: &[Vec<f64>], assignment: &[usize], skip: Option<usize>) -> Vec<Instance> {
    points
        .iter()
        .zip(assignment)
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, (p, &c))| Instance::with_feedback(vec![c as f64], p.clone(), Tag::Observed))
        .collect()
}

/// The hypotheses `h^{ij}` for `i < j` in lexicographic order: cluster `j`'s
/// points placed under index `i`.
fn merge_hypotheses(clusters: &[Vec<Vec<f64>>]) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    for i in 0..clusters.len() {
        for cj in &clusters[i + 1..] {
            out.push(Hypothesis::cluster(i, cj.clone()));
        }
    }
    out
}

/// The pair of clusters to merge: the smallest linkage distance, where point
/// distances between the two clusters are aggregated by min, mean or max.
/// Ties go to the lexicographically smallest pair.
pub fn linkage_merge_round(clusters: &[Vec<Vec<f64>>], linkage: Linkage) -> Result<(usize, usize)> {
    if clusters.len() < 2 {
        return Err(Error::InvalidParameter("merging needs at least two clusters".into()));
    }
    if clusters.iter().any(Vec::is_empty) {
        return Err(Error::InvalidParameter("clusters must be nonempty".into()));
    }
    let assignment: Vec<usize> =
        clusters.iter().enumerate().flat_map(|(i, c)| std::iter::repeat_n(i, c.len())).collect();
    let points: Vec<Vec<f64>> = clusters.iter().flatten().cloned().collect();
    let s = encode(&points, &assignment, None);
    let candidates = merge_hypotheses(clusters);
    let rule = BadnessRule::new(AlignmentPredicate::Pointwise, DeviationFunction::YDist, linkage.aggregation());
    let cfg = BasicTrainingConfig::new(
        |_: &[Instance], _: &()| merge_hypotheses(clusters),
        |_: &[Instance], _: &()| Ok(ExplanationCriterion::single(rule.clone())),
    );
    let chosen = basic_train(&cfg, &s, &())?.hypothesis;
    let pos = candidates.iter().position(|h| *h == chosen).expect("selected from candidates");
    let mut pairs = (0..clusters.len()).flat_map(|i| (i + 1..clusters.len()).map(move |j| (i, j)));
    Ok(pairs.nth(pos).expect("pair index"))
}

/// Agglomerates from singletons until `k_target` clusters remain. Clusters
/// are numbered by their first point.
pub fn linkage_cluster(points: &[Vec<f64>], linkage: Linkage, k_target: usize) -> Result<ClusterState> {
    if k_target == 0 || k_target > points.len() {
        return Err(Error::InvalidParameter(format!("k_target = {k_target} outside 1..={}", points.len())));
    }
    let mut groups: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
    while groups.len() > k_target {
        let clusters: Vec<Vec<Vec<f64>>> =
            groups.iter().map(|g| g.iter().map(|&i| points[i].clone()).collect()).collect();
        let (i, j) = linkage_merge_round(&clusters, linkage)?;
        let moved = groups.remove(j);
        groups[i].extend(moved);
    }
    groups.sort_by_key(|g| *g.iter().min().expect("nonempty"));
    let mut assignment = vec![0; points.len()];
    for (c, g) in groups.iter().enumerate() {
        for &i in g {
            assignment[i] = c;
        }
    }
    ClusterState::new(points, assignment, k_target)
}

fn within_cluster_rule() -> BadnessRule {
    BadnessRule::new(AlignmentPredicate::SameXSymmetric, DeviationFunction::HalfSquareYDist, AggregationSpec::sum())
}

fn scatter(h: &Hypothesis, s: &[Instance]) -> Result<f64> {
    match badness(&within_cluster_rule(), h, s) {
        Err(Error::VacuousBadness) => Ok(0.0),
        other => other,
    }
}

/// `W = Σ_k Σ_{i ≠ j ∈ C_k} ½‖ξᵢ − ξⱼ‖²`, as a badness rule over the encoded
/// clustering. A clustering of singletons has no aligned pairs and `W = 0`.
pub fn kmeans_objective_pairwise(points: &[Vec<f64>], assignment: &[usize]) -> Result<f64> {
    scatter(&Hypothesis::cluster(0, Vec::new()), &encode(points, assignment, None))
}

/// `W = Σ_k l_k Σ_{i ∈ C_k} ‖ξᵢ − x̄_k‖²`.
pub fn kmeans_objective_centroid(points: &[Vec<f64>], state: &ClusterState) -> f64 {
    points
        .iter()
        .zip(&state.assignment)
        .map(|(p, &c)| {
            let d = euclidean(p, &state.centers[c]);
            state.sizes[c] as f64 * d * d
        })
        .sum()
}

/// The cluster for point `idx` minimizing `W` with every other point fixed;
/// ties go to the lowest cluster id.
pub fn kmeans_assign_point(state: &ClusterState, points: &[Vec<f64>], idx: usize) -> Result<usize> {
    let s = encode(points, &state.assignment, Some(idx));
    let mut best: Option<(usize, f64)> = None;
    for c in 0..state.k() {
        let w = scatter(&Hypothesis::cluster(c, vec![points[idx].clone()]), &s)?;
        if best.is_none_or(|(_, b)| w < b) {
            best = Some((c, w));
        }
    }
    best.map(|(c, _)| c).ok_or(Error::EmptyEnumeration)
}

/// First center drawn with the seed, the rest by farthest-point traversal;
/// every point then joins its nearest center.
fn seed_assignment(points: &[Vec<f64>], k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = vec![rng.random_range(0..points.len())];
    while centers.len() < k {
        let far = (0..points.len())
            .max_by(|&a, &b| {
                let da = centers.iter().map(|&c| euclidean(&points[a], &points[c])).fold(f64::INFINITY, f64::min);
                let db = centers.iter().map(|&c| euclidean(&points[b], &points[c])).fold(f64::INFINITY, f64::min);
                da.total_cmp(&db).then(b.cmp(&a))
            })
            .expect("nonempty");
        centers.push(far);
    }
    points
        .iter()
        .map(|p| {
            (0..k)
                .min_by(|&a, &b| {
                    euclidean(p, &points[centers[a]]).total_cmp(&euclidean(p, &points[centers[b]])).then(a.cmp(&b))
                })
                .expect("k >= 1")
        })
        .collect()
}

/// Moves the point farthest from its center into each empty cluster.
fn repair_empty(state: &mut ClusterState, points: &[Vec<f64>]) {
    let k = state.k();
    while let Some(empty) = state.sizes.iter().position(|&l| l == 0) {
        let far = (0..points.len())
            .filter(|&i| state.sizes[state.assignment[i]] > 1)
            .max_by(|&a, &b| {
                let da = euclidean(&points[a], &state.centers[state.assignment[a]]);
                let db = euclidean(&points[b], &state.centers[state.assignment[b]]);
                da.total_cmp(&db).then(b.cmp(&a))
            })
            .expect("k <= point count");
        state.assignment[far] = empty;
        state.update_centers(points, k);
    }
}

/// Rounds of single-point reassignment, each move accepted only when it
/// lowers `W`, until a round changes nothing or `max_rounds` is reached.
pub fn kmeans_run(points: &[Vec<f64>], k: usize, seed: u64, max_rounds: usize) -> Result<ClusterState> {
    if k == 0 || k > points.len() {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={}", points.len())));
    }
    let mut state = ClusterState::new(points, seed_assignment(points, k, seed), k)?;
    repair_empty(&mut state, points);
    for _ in 0..max_rounds {
        let mut changed = false;
        for idx in 0..points.len() {
            let current = state.assignment[idx];
            let c = kmeans_assign_point(&state, points, idx)?;
            if c == current {
                continue;
            }
            let mut moved = state.assignment.clone();
            moved[idx] = c;
            if kmeans_objective_pairwise(points, &moved)? < kmeans_objective_pairwise(points, &state.assignment)? {
                state.assignment = moved;
                state.update_centers(points, k);
                changed = true;
            }
        }
        repair_empty(&mut state, points);
        if !changed {
            break;
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[f64]) -> Vec<Vec<f64>> {
        v.iter().map(|&x| vec![x]).collect()
    }

    #[test]
    fn dominant_gap_merges_first_pair() {
        let clusters: Vec<Vec<Vec<f64>>> = [0.0, 1.0, 10.0].iter().map(|&x| vec![vec![x]]).collect();
        for l in [Linkage::Min, Linkage::Avg, Linkage::Max] {
            assert_eq!(linkage_merge_round(&clusters, l).unwrap(), (0, 1));
        }
    }

    #[test]
    fn linkage_distances() {
        // {0, 2} vs {1}: min 1, avg 1.5, max 2
        let clusters = vec![pts(&[0.0, 2.0]), pts(&[1.0]), pts(&[3.5])];
        assert_eq!(linkage_merge_round(&clusters, Linkage::Min).unwrap(), (0, 1));
        assert_eq!(linkage_merge_round(&clusters, Linkage::Avg).unwrap(), (0, 1));
        // max: d(0,1) = 2, d(0,2) = 3.5, d(1,2) = 2.5
        assert_eq!(linkage_merge_round(&clusters, Linkage::Max).unwrap(), (0, 1));
        let tied = vec![pts(&[0.0]), pts(&[1.0]), pts(&[2.0])];
        assert_eq!(linkage_merge_round(&tied, Linkage::Min).unwrap(), (0, 1));
        assert!(linkage_merge_round(&tied[..1], Linkage::Min).is_err());
    }

    #[test]
    fn linkage_cluster_extremes_and_blobs() {
        let p = pts(&[0.0, 0.5, 1.0, 20.0, 20.5, 21.0]);
        assert_eq!(linkage_cluster(&p, Linkage::Avg, 6).unwrap().assignment, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(linkage_cluster(&p, Linkage::Max, 1).unwrap().assignment, vec![0; 6]);
        for l in [Linkage::Min, Linkage::Avg, Linkage::Max] {
            assert_eq!(linkage_cluster(&p, l, 2).unwrap().assignment, vec![0, 0, 0, 1, 1, 1]);
        }
    }

    #[test]
    fn objective_forms_agree() {
        let p = vec![vec![0.0, 1.0], vec![2.0, -1.0], vec![0.5, 0.5], vec![3.0, 3.0], vec![-1.0, 0.0]];
        let st = ClusterState::new(&p, vec![0, 1, 0, 1, 0], 3).unwrap();
        let a = kmeans_objective_pairwise(&p, &st.assignment).unwrap();
        let b = kmeans_objective_centroid(&p, &st);
        assert!((a - b).abs() <= 1e-12 * b.abs());
        assert_eq!(kmeans_objective_pairwise(&p, &[0, 1, 2, 3, 4]).unwrap(), 0.0);
    }

    #[test]
    fn assign_to_clearly_nearest() {
        let p = pts(&[0.0, 0.2, 10.0, 10.3, 9.0]);
        let st = ClusterState::new(&p, vec![0, 0, 1, 1, 0], 2).unwrap();
        assert_eq!(kmeans_assign_point(&st, &p, 4).unwrap(), 1);
        assert_eq!(kmeans_assign_point(&st, &p, 0).unwrap(), 0);
    }

    #[test]
    fn kmeans_distinct_locations_and_blobs() {
        let p = pts(&[3.0, -1.0, 7.0]);
        let st = kmeans_run(&p, 3, 1, 10).unwrap();
        assert_eq!(st.sizes, vec![1, 1, 1]);
        assert_eq!(kmeans_objective_pairwise(&p, &st.assignment).unwrap(), 0.0);

        let blobs = pts(&[0.0, 0.3, 0.1, 0.4, 9.0, 9.2, 9.5, 8.8]);
        for seed in 0..10 {
            let st = kmeans_run(&blobs, 2, seed, 20).unwrap();
            let a = &st.assignment;
            assert!(a[..4].iter().all(|&c| c == a[0]) && a[4..].iter().all(|&c| c == a[4]) && a[0] != a[4]);
        }
    }

    #[test]
    fn empty_cluster_is_repaired() {
        let p = pts(&[1.0, 1.0, 1.0, 5.0]);
        let mut st = ClusterState::new(&p, vec![0, 0, 0, 0], 2).unwrap();
        repair_empty(&mut st, &p);
        assert_eq!(st.assignment, vec![0, 0, 0, 1]);
        assert_eq!(kmeans_run(&pts(&[2.0; 3]), 2, 0, 5).unwrap().sizes.iter().filter(|&&l| l == 0).count(), 0);
    }
}
