//! Seeded random graphs, fixed fixtures, and local-sparsity scans.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rng;
use crate::vertex_set::VertexSet;

/// Resample cap of the configuration model.
pub const REGULAR_MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenKind {
    Gnp { n: usize, p: f64 },
    RandomRegular { n: usize, d: usize },
    CompleteBipartite { a: usize, b: usize },
    CliqueUnion { size: usize, count: usize },
    Path { n: usize },
    Cycle { n: usize },
}

/// A reproducible generator request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub kind: GenKind,
    #[serde(default)]
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, seed: u64) -> Self {
        GenSpec { kind, seed }
    }

    pub fn gnp(n: usize, p: f64, seed: u64) -> Self {
        Self::new(GenKind::Gnp { n, p }, seed)
    }

    pub fn random_regular(n: usize, d: usize, seed: u64) -> Self {
        Self::new(GenKind::RandomRegular { n, d }, seed)
    }
}

/// Generates the graph described by `spec` (stream 0 of its seed).
pub fn gen(spec: &GenSpec) -> Result<Graph> {
    gen_stream(spec, 0)
}

/// Generates from sub-stream `stream` of the spec's seed.
pub fn gen_stream(spec: &GenSpec, stream: u64) -> Result<Graph> {
    let mut r = rng::stream(spec.seed, stream);
    match spec.kind {
        GenKind::Gnp { n, p } => gnp(n, p, &mut r),
        GenKind::RandomRegular { n, d } => random_regular(n, d, &mut r),
        GenKind::CompleteBipartite { a, b } => Ok(fixtures::complete_bipartite(a, b)),
        GenKind::CliqueUnion { size, count } => Ok(fixtures::clique_union(size, count)),
        GenKind::Path { n } => Ok(fixtures::path(n)),
        GenKind::Cycle { n } => {
            if n < 3 {
                return invalid("cycle needs at least 3 vertices");
            }
            Ok(fixtures::cycle(n))
        }
    }
}

/// G(n, p) by geometric skipping over the pairs `(w, v)`, `w < v`, in
/// lexicographic order of `(v, w)`.
pub fn gnp(n: usize, p: f64, r: &mut rng::Rng) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return invalid(format!("gnp: p = {p} outside [0, 1]"));
    }
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(fixtures::complete(n));
    }
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let u: f64 = r.gen();
        let skip = ((1.0 - u).ln() / log_q).floor() as i64;
        w += 1 + skip;
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::from_edges(n, edges)
}

/// Uniform simple d-regular graph via the configuration model with full
/// resampling on any loop or multi-edge.
pub fn random_regular(n: usize, d: usize, r: &mut rng::Rng) -> Result<Graph> {
    if d >= n && !(n == 0 && d == 0) {
        return invalid(format!("random_regular: d = {d} must be below n = {n}"));
    }
    if (n * d) % 2 == 1 {
        return invalid(format!("random_regular: n*d = {} is odd", n * d));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    'attempt: for _ in 0..REGULAR_MAX_ATTEMPTS {
        stubs.shuffle(r);
        let mut seen = HashSet::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !seen.insert((a, b)) {
                continue 'attempt;
            }
        }
        return Graph::from_edges(n, seen);
    }
    Err(Error::GenerationFailed {
        attempts: REGULAR_MAX_ATTEMPTS,
    })
}

/// Deterministic fixture graphs.
pub mod fixtures {
    use crate::graph::Graph;

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    /// Cycle `0-1-...-(n-1)-0`; `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    /// K_{a,b}; side A is `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let n = parts.iter().map(Graph::n).sum();
        let mut edges = Vec::new();
        let mut off = 0;
        for g in parts {
            edges.extend(g.edges().map(|(u, v)| (u + off, v + off)));
            off += g.n();
        }
        Graph::from_edges(n, edges).unwrap()
    }

    pub fn clique_union(size: usize, count: usize) -> Graph {
        disjoint_union(&vec![complete(size); count])
    }

    /// Two copies of K_k joined by the edge `(k-1, k)`.
    pub fn barbell(k: usize) -> Graph {
        let g = disjoint_union(&[complete(k), complete(k)]);
        Graph::from_edges(2 * k, g.edges().chain([(k - 1, k)])).unwrap()
    }

    /// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`,
    /// spokes `(i, i+5)`.
    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::from_edges(10, e).unwrap()
    }
}

/// Outcome of a local-sparsity scan.
#[derive(Clone, Debug, Serialize)]
pub struct SparsityReport {
    pub c1_observed: f64,
    pub c2: f64,
    pub beta_used: f64,
    /// Largest admissible set size, `floor(beta * n)`.
    pub max_size: usize,
    /// Largest `e(W)/|W|` seen over admissible sets (0 when none).
    pub worst_ratio: f64,
    pub worst_witness: VertexSet,
    pub exhaustive: bool,
    pub sets_examined: u64,
    /// Whether every examined admissible set spans fewer than `c2 |W|` edges.
    pub locally_sparse: bool,
}

fn binomial_prefix_sum(n: usize, k: usize, cap: u64) -> u64 {
    // sum_{i=1..k} C(n, i), saturating at cap + 1
    let mut total: u64 = 0;
    let mut c: u128 = 1;
    for i in 1..=k.min(n) {
        c = c * (n - i + 1) as u128 / i as u128;
        total = total.saturating_add(c.min(u64::MAX as u128) as u64);
        if total > cap {
            return cap.saturating_add(1);
        }
    }
    total
}

struct Worst {
    num: usize,
    den: usize,
    set: Option<VertexSet>,
}

impl Worst {
    fn new() -> Self {
        Worst { num: 0, den: 1, set: None }
    }

    fn offer(&mut self, internal: usize, set: &VertexSet) {
        let size = set.len();
        let ord = (internal * self.den).cmp(&(self.num * size));
        let better = match (&self.set, ord) {
            (None, _) => true,
            (_, Ordering::Greater) => true,
            (Some(cur), Ordering::Equal) => set.witness_cmp(cur) == Ordering::Less,
            _ => false,
        };
        if better {
            self.num = internal;
            self.den = size;
            self.set = Some(set.clone());
        }
    }
}

/// Scans all vertex sets of size at most `floor(beta * n)` for the largest
/// edge density when the number of such sets is within `budget`; otherwise
/// falls back to BFS-grown connected sets from every vertex plus the
/// min-degree peeling prefixes, and marks the report non-exhaustive.
pub fn check_locally_sparse(g: &Graph, c2: f64, beta: f64, budget: u64) -> SparsityReport {
    let n = g.n();
    let max_size = ((beta * n as f64) + 1e-9).floor().max(0.0) as usize;
    let max_size = max_size.min(n);
    let total = binomial_prefix_sum(n, max_size, budget);
    let mut worst = Worst::new();
    let exhaustive = total <= budget;
    let mut examined: u64 = 0;
    if exhaustive {
        let mut idx = Vec::with_capacity(max_size);
        for size in 1..=max_size {
            // combinations of `size` out of n in lexicographic order
            idx.clear();
            idx.extend(0..size);
            loop {
                let set = VertexSet::from_iter(n, idx.iter().copied());
                worst.offer(g.internal_edges(&set), &set);
                examined += 1;
                let mut i = size;
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if idx[i] < n - size + i {
                        idx[i] += 1;
                        for j in i + 1..size {
                            idx[j] = idx[j - 1] + 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
    } else if max_size > 0 {
        // BFS-grown connected prefixes
        'starts: for s in 0..n {
            let mut set = VertexSet::empty(n);
            let mut internal = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            let mut queued = VertexSet::singleton(n, s);
            while let Some(v) = queue.pop_front() {
                internal += g.neighbors(v).iter().filter(|&&w| set.contains(w)).count();
                set.insert(v);
                worst.offer(internal, &set);
                examined += 1;
                if examined >= budget {
                    break 'starts;
                }
                if set.len() == max_size {
                    break;
                }
                for &w in g.neighbors(v) {
                    if queued.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        // min-degree peeling prefixes
        for (set, internal) in peeling_sets(g, max_size) {
            worst.offer(internal, &set);
            examined += 1;
        }
    }
    let worst_ratio = if worst.set.is_some() {
        worst.num as f64 / worst.den as f64
    } else {
        0.0
    };
    SparsityReport {
        c1_observed: if n == 0 { 0.0 } else { g.m() as f64 / n as f64 },
        c2,
        beta_used: beta,
        max_size,
        worst_ratio,
        worst_witness: worst.set.unwrap_or_else(|| VertexSet::empty(n)),
        exhaustive,
        sets_examined: examined,
        locally_sparse: worst_ratio < c2,
    }
}

/// Repeatedly deletes a minimum-degree vertex; yields every remaining set of
/// size at most `max_size` together with its internal edge count.
fn peeling_sets(g: &Graph, max_size: usize) -> Vec<(VertexSet, usize)> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = VertexSet::full(n);
    let mut edges = g.m();
    let mut heap: BinaryHeap<std::cmp::Reverse<(usize, usize)>> =
        (0..n).map(|v| std::cmp::Reverse((deg[v], v))).collect();
    let mut out = Vec::new();
    let mut remaining = n;
    while let Some(std::cmp::Reverse((d, v))) = heap.pop() {
        if !alive.contains(v) || d != deg[v] {
            continue;
        }
        if remaining <= max_size && remaining > 0 {
            out.push((alive.clone(), edges));
        }
        alive.remove(v);
        remaining -= 1;
        edges -= deg[v];
        for &w in g.neighbors(v) {
            if alive.contains(w) {
                deg[w] -= 1;
                heap.push(std::cmp::Reverse((deg[w], w)));
            }
        }
    }
    out
}

/// Which local-sparsity property a frequency experiment tests.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "test", rename_all = "snake_case")]
pub enum SparsityTest {
    /// Every set of at most `beta n` vertices spans fewer than `c2 |W|` edges.
    /// `beta = None` selects `(c2/(5 c1))^(c2/(c2-1))` with `c1 = p n`.
    Spans { c2: f64, beta: Option<f64> },
    /// Every set of `delta/ln(1/delta) n` vertices touches fewer than `delta n` edges.
    Touches { delta: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct FrequencyReport {
    pub spec: GenSpec,
    pub test: SparsityTest,
    pub beta: Option<f64>,
    pub trials: usize,
    pub violations: usize,
    pub frequency: f64,
    /// True only when every trial was decided by exhaustive enumeration.
    pub exhaustive: bool,
}

/// `(c2 / (5 c1))^(c2 / (c2 - 1))`.
pub fn default_sparse_beta(c1: f64, c2: f64) -> f64 {
    (c2 / (5.0 * c1)).powf(c2 / (c2 - 1.0))
}

/// Heaviest `size`-set by edges touched: exhaustive within budget, else the
/// top-degree set. Returns (touching edge count, exhaustive).
fn max_touching(g: &Graph, size: usize, budget: u64) -> (usize, bool) {
    let n = g.n();
    if size == 0 {
        return (0, true);
    }
    let touching = |set: &VertexSet| g.volume(set) - g.internal_edges(set);
    let count = binomial_prefix_sum(n, size, budget) - binomial_prefix_sum(n, size - 1, budget);
    if binomial_prefix_sum(n, size, budget) <= budget {
        let _ = count;
        let mut best = 0;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let set = VertexSet::from_iter(n, idx.iter().copied());
            best = best.max(touching(&set));
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < n - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        (best, true)
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let set = VertexSet::from_iter(n, order.into_iter().take(size));
        (touching(&set), false)
    }
}

/// Fraction of sampled G(n, p) graphs that violate the chosen sparsity test.
/// Trial `t` uses sub-stream `t` of the spec's seed.
pub fn sparse_violation_frequency(
    spec: &GenSpec,
    test: SparsityTest,
    trials: usize,
    budget: u64,
) -> Result<FrequencyReport> {
    let GenKind::Gnp { n, p } = spec.kind else {
        return invalid("sparse_violation_frequency expects a gnp spec");
    };
    if trials == 0 {
        return invalid("trials must be at least 1");
    }
    let beta = match test {
        SparsityTest::Spans { c2, beta } => Some(beta.unwrap_or_else(|| default_sparse_beta(p * n as f64, c2))),
        SparsityTest::Touches { .. } => None,
    };
    let outcomes: Vec<Result<(bool, bool)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = gen_stream(spec, t as u64)?;
            Ok(match test {
                SparsityTest::Spans { c2, .. } => {
                    let rep = check_locally_sparse(&g, c2, beta.unwrap(), budget);
                    (!rep.locally_sparse, rep.exhaustive)
                }
                SparsityTest::Touches { delta } => {
                    let size = (delta / (1.0 / delta).ln() * n as f64).floor() as usize;
                    let (touch, exact) = max_touching(&g, size.min(n), budget);
                    (touch as f64 >= delta * n as f64, exact)
                }
            })
        })
        .collect();
    let mut violations = 0;
    let mut exhaustive = true;
    for o in outcomes {
        let (viol, exact) = o?;
        violations += viol as usize;
        exhaustive &= exact;
    }
    Ok(FrequencyReport {
        spec: spec.clone(),
        test,
        beta,
        trials,
        violations,
        frequency: violations as f64 / trials as f64,
        exhaustive,
    })
}
