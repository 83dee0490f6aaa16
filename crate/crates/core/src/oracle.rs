//! Independent reference implementations used to cross-check the learners
//! and the framework. They work on plain slices, use only direct loops and
//! may be exponential in the input size.

/// Result of comparing an analytic gradient against finite differences.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientCheckReport {
    /// `max_j |g_analytic − g_fd| / max(1, |g_fd|)`.
    pub max_rel_error: f64,
    pub point: Vec<f64>,
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    s.sqrt()
}

/// Majority vote among all rows within the `k`-th smallest distance of `x0`;
/// an even vote gives 0.
pub fn brute_knn(xs: &[Vec<f64>], ys: &[f64], x0: &[f64], k: usize) -> u8 {
    let mut d: Vec<f64> = xs.iter().map(|x| dist(x, x0)).collect();
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let dk = d[k - 1];
    let (mut zeros, mut ones) = (0, 0);
    for (x, &y) in xs.iter().zip(ys) {
        if dist(x, x0) <= dk {
            if y == 1.0 {
                ones += 1;
            } else {
                zeros += 1;
            }
        }
    }
    if ones > zeros {
        1
    } else {
        0
    }
}

/// Naive Bayes by direct counting: the class maximizing
/// `Π_j (1 − e(c, S_j))`, ties to 0. `None` when some `S_j` is empty.
pub fn direct_nb(xs: &[Vec<f64>], ys: &[f64], z: &[f64]) -> Option<u8> {
    let mut score = [1.0f64; 2];
    for j in 0..z.len() {
        let mut total = 0usize;
        let mut wrong = [0usize; 2];
        for (x, &y) in xs.iter().zip(ys) {
            if x[j] == z[j] {
                total += 1;
                if y != 0.0 {
                    wrong[0] += 1;
                }
                if y != 1.0 {
                    wrong[1] += 1;
                }
            }
        }
        if total == 0 {
            return None;
        }
        for c in 0..2 {
            score[c] *= 1.0 - wrong[c] as f64 / total as f64;
        }
    }
    Some(if score[1] > score[0] { 1 } else { 0 })
}

/// `(1/m) Σ |h(xᵢ) − yᵢ|`.
pub fn empirical_risk(h: impl Fn(&[f64]) -> f64, xs: &[Vec<f64>], ys: &[f64]) -> f64 {
    let mut total = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        total += (h(x) - y).abs();
    }
    total / xs.len() as f64
}

/// Central differences with step `h_step · (1 + |pⱼ|)` per coordinate.
pub fn fd_gradient(f: impl Fn(&[f64]) -> f64, params: &[f64], h_step: f64) -> Vec<f64> {
    let mut g = Vec::with_capacity(params.len());
    let mut p = params.to_vec();
    for j in 0..params.len() {
        let h = h_step * (1.0 + params[j].abs());
        p[j] = params[j] + h;
        let up = f(&p);
        p[j] = params[j] - h;
        let down = f(&p);
        p[j] = params[j];
        g.push((up - down) / (2.0 * h));
    }
    g
}

pub fn gradient_check(analytic: &[f64], fd: &[f64], point: &[f64]) -> GradientCheckReport {
    let mut worst = 0.0f64;
    for (a, f) in analytic.iter().zip(fd) {
        worst = worst.max((a - f).abs() / f.abs().max(1.0));
    }
    GradientCheckReport { max_rel_error: worst, point: point.to_vec() }
}

/// `Σ_k Σ_{i ≠ j ∈ C_k} ½‖ξᵢ − ξⱼ‖²` by a double loop over all points.
pub fn pairwise_w(points: &[Vec<f64>], assignment: &[usize]) -> f64 {
    let mut w = 0.0;
    for i in 0..points.len() {
        for j in 0..points.len() {
            if i != j && assignment[i] == assignment[j] {
                let d = dist(&points[i], &points[j]);
                w += 0.5 * d * d;
            }
        }
    }
    w
}

/// Tries every cluster for point `idx` and keeps the first with the
/// smallest [`pairwise_w`].
pub fn exhaustive_kmeans_assignment(points: &[Vec<f64>], assignment: &[usize], k: usize, idx: usize) -> usize {
    let mut trial = assignment.to_vec();
    let mut best = (0, f64::INFINITY);
    for c in 0..k {
        trial[idx] = c;
        let w = pairwise_w(points, &trial);
        if w < best.1 {
            best = (c, w);
        }
    }
    best.0
}

/// Smallest feasible slack `ξ ≥ max(0, 1 − margin)` found by repeatedly
/// refining a grid of `resolution` points.
fn grid_slack(margin: f64, resolution: usize) -> f64 {
    let feasible = |xi: f64| xi >= 0.0 && xi >= 1.0 - margin;
    let (mut lo, mut hi) = (0.0f64, (1.0 - margin).max(0.0) + 1.0);
    while hi - lo > 1e-12 {
        let step = (hi - lo) / resolution as f64;
        let mut first = hi;
        for i in 0..=resolution {
            let xi = lo + step * i as f64;
            if feasible(xi) {
                first = xi;
                break;
            }
        }
        lo = (first - step).max(0.0);
        hi = first;
    }
    hi
}

/// `α‖w‖² + (1/m) Σ ξᵢ` with each slack minimized by grid search subject to
/// `y f(x) ≥ 1 − ξ`, `ξ ≥ 0`.
pub fn slack_grid_minimum(w: &[f64], b: f64, xs: &[Vec<f64>], ys: &[f64], alpha: f64, resolution: usize) -> f64 {
    let mut reg = 0.0;
    for v in w {
        reg += v * v;
    }
    let mut slack = 0.0;
    for (x, &y) in xs.iter().zip(ys) {
        let mut f = b;
        for j in 0..w.len() {
            f += w[j] * x[j];
        }
        slack += grid_slack(y * f, resolution.max(2));
    }
    alpha * reg + slack / xs.len() as f64
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `A ≤ B` (or `<`) by searching every bijection for one with
/// `aᵢ ≤ b_π(i)` (or `<`) at every position.
pub fn seq_less_exhaustive(a: &[f64], b: &[f64], strict: bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    permutations(a.len()).iter().any(|pi| (0..a.len()).all(|i| if strict { a[i] < b[pi[i]] } else { a[i] <= b[pi[i]] }))
}

/// Linkage merge by scanning every cluster pair; `rule` is `"min"`, `"avg"`
/// or `"max"`. Ties keep the first pair in lexicographic order.
pub fn linkage_pairwise_scan(clusters: &[Vec<Vec<f64>>], rule: &str) -> (usize, usize) {
    let mut best = ((0, 1), f64::INFINITY);
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            let mut sum = 0.0;
            let mut count = 0;
            for q in &clusters[j] {
                for p in &clusters[i] {
                    let d = dist(p, q);
                    lo = lo.min(d);
                    hi = hi.max(d);
                    sum += d;
                    count += 1;
                }
            }
            let value = match rule {
                "min" => lo,
                "max" => hi,
                _ => sum / count as f64,
            };
            if value < best.1 {
                best = ((i, j), value);
            }
        }
    }
    best.0
}

/// Ridge parameters `[w…, b]` by Nesterov-accelerated gradient descent on
/// `α‖w‖² + (1/m) Σ (⟨w, x⟩ + b − y)²`, run until the gradient norm drops
/// below `tol` or `max_iters` is reached.
pub fn ridge_descent(xs: &[Vec<f64>], ys: &[f64], alpha: f64, tol: f64, max_iters: usize) -> Vec<f64> {
    let (m, n) = (xs.len(), xs[0].len());
    let grad = |p: &[f64]| {
        let mut g = vec![0.0; n + 1];
        for (x, &y) in xs.iter().zip(ys) {
            let mut r = p[n] - y;
            for j in 0..n {
                r += p[j] * x[j];
            }
            for j in 0..n {
                g[j] += 2.0 * r * x[j] / m as f64;
            }
            g[n] += 2.0 * r / m as f64;
        }
        for j in 0..n {
            g[j] += 2.0 * alpha * p[j];
        }
        g
    };
    // Lipschitz bound from the trace of the Hessian.
    let mut lip = 2.0 * alpha * n as f64 + 2.0;
    for x in xs {
        for v in x {
            lip += 2.0 * v * v / m as f64;
        }
    }
    let step = 1.0 / lip;
    let mut p = vec![0.0; n + 1];
    let mut prev = p.clone();
    for t in 0..max_iters {
        let beta = t as f64 / (t as f64 + 3.0);
        let look: Vec<f64> = (0..=n).map(|j| p[j] + beta * (p[j] - prev[j])).collect();
        let g = grad(&look);
        prev = p;
        p = (0..=n).map(|j| look[j] - step * g[j]).collect();
        if grad(&p).iter().map(|v| v * v).sum::<f64>().sqrt() < tol {
            break;
        }
    }
    p
}
