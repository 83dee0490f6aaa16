use std::collections::HashMap;

use super::instance::{euclidean, Conglomerate, Instance, Tag};

/// A predicate selecting which ordered pairs of the conglomerate are compared.
pub trait Alignment {
    fn aligned(&self, a: &Instance, b: &Instance) -> bool;

    /// `ρx` as seen by this predicate.
    fn x_distance(&self, a: &Instance, b: &Instance) -> f64 {
        euclidean(&a.x, &b.x)
    }

    /// Structural condition on the first element beyond its tag, such as
    /// sitting at a query point. Downward closure is checked among anchored
    /// pairs only.
    fn anchored(&self, _a: &Instance) -> bool {
        true
    }

    /// Indices of all aligned ordered pairs, in row-major order.
    fn pair_indices(&self, m: &Conglomerate) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in m.instances.iter().enumerate() {
            for (j, b) in m.instances.iter().enumerate() {
                if self.aligned(a, b) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// The shipped alignment predicates.
#[derive(Debug, Clone, PartialEq)]
pub enum AlignmentPredicate {
    /// Hypothetical and observed instance at the same `x`.
    Pointwise,
    /// Hypothetical instance at `x0` and an observation within `radius` of it.
    Ball { x0: Vec<f64>, radius: f64 },
    /// Any two distinct instances with equal `x`, both orders.
    SameXSymmetric,
    /// Hypothetical and observed instance agreeing on feature `i`.
    FeatureEquality(usize),
}

impl Alignment for AlignmentPredicate {
    fn aligned(&self, a: &Instance, b: &Instance) -> bool {
        match self {
            AlignmentPredicate::Pointwise => a.is_hypothetical() && b.is_observed() && a.x == b.x,
            AlignmentPredicate::Ball { x0, radius } => {
                a.is_hypothetical() && b.is_observed() && &a.x == x0 && euclidean(&a.x, &b.x) <= *radius
            }
            AlignmentPredicate::SameXSymmetric => !std::ptr::eq(a, b) && a.x == b.x,
            AlignmentPredicate::FeatureEquality(i) => a.is_hypothetical() && b.is_observed() && a.x[*i] == b.x[*i],
        }
    }

    fn x_distance(&self, a: &Instance, b: &Instance) -> f64 {
        match self {
            AlignmentPredicate::FeatureEquality(i) => (a.x[*i] - b.x[*i]).abs(),
            _ => euclidean(&a.x, &b.x),
        }
    }

    fn anchored(&self, a: &Instance) -> bool {
        match self {
            AlignmentPredicate::Ball { x0, .. } => &a.x == x0,
            _ => true,
        }
    }

    fn pair_indices(&self, m: &Conglomerate) -> Vec<(usize, usize)> {
        let hyp: Vec<usize> = (0..m.len()).filter(|&i| m.instances[i].is_hypothetical()).collect();
        let obs: Vec<usize> = (0..m.len()).filter(|&i| m.instances[i].is_observed()).collect();
        let inst = &m.instances;
        match self {
            AlignmentPredicate::Pointwise => {
                let mut by_x: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
                for &j in &obs {
                    by_x.entry(x_key(&inst[j].x)).or_default().push(j);
                }
                let mut out = Vec::new();
                for &i in &hyp {
                    if let Some(js) = by_x.get(&x_key(&inst[i].x)) {
                        out.extend(js.iter().map(|&j| (i, j)));
                    }
                }
                out
            }
            AlignmentPredicate::Ball { .. } | AlignmentPredicate::FeatureEquality(_) => {
                let mut out = Vec::new();
                for &i in &hyp {
                    for &j in &obs {
                        if self.aligned(&inst[i], &inst[j]) {
                            out.push((i, j));
                        }
                    }
                }
                out
            }
            AlignmentPredicate::SameXSymmetric => {
                let mut out = Vec::new();
                for i in 0..inst.len() {
                    for j in 0..inst.len() {
                        if i != j && inst[i].x == inst[j].x {
                            out.push((i, j));
                        }
                    }
                }
                out
            }
        }
    }
}

// -0.0 and 0.0 compare equal as floats, so normalize before hashing bits.
fn x_key(x: &[f64]) -> Vec<u64> {
    x.iter().map(|v| if *v == 0.0 { 0 } else { v.to_bits() }).collect()
}

/// All ordered pairs of `m` selected by `pi`.
pub fn aligned_pairs<'m, A: Alignment + ?Sized>(pi: &A, m: &'m Conglomerate) -> Vec<(&'m Instance, &'m Instance)> {
    pi.pair_indices(m).into_iter().map(|(i, j)| (&m.instances[i], &m.instances[j])).collect()
}

/// Whether `pi` is downward closed in `ρx` on `m`: whenever an anchored pair
/// is aligned, every anchored pair with the same tags and no larger
/// `x`-distance is aligned too. Pairs are of two distinct instances.
pub fn check_alignment_downward_closure<A: Alignment + ?Sized>(pi: &A, m: &Conglomerate) -> bool {
    let inst = &m.instances;
    let n = inst.len();
    // Largest aligned distance per (tag, tag) class.
    let mut reach: HashMap<(Tag, Tag), f64> = HashMap::new();
    for (i, a) in inst.iter().enumerate().filter(|(_, a)| pi.anchored(a)) {
        for (j, b) in inst.iter().enumerate() {
            if i != j && pi.aligned(a, b) {
                let d = pi.x_distance(a, b);
                let e = reach.entry((a.tag, b.tag)).or_insert(d);
                *e = e.max(d);
            }
        }
    }
    for i in 0..n {
        let a = &inst[i];
        if !pi.anchored(a) {
            continue;
        }
        for (j, b) in inst.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(&r) = reach.get(&(a.tag, b.tag)) {
                if pi.x_distance(a, b) <= r && !pi.aligned(a, b) {
                    return false;
                }
            }
        }
    }
    true
}
