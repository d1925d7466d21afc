//! Minor embeddings: validation, degree-3 reduction of the target, the
//! minor-or-separator loop, connected hitting sets from lazy walks, and the
//! clique-minor builder.

use std::collections::VecDeque;

use rand::seq::index::sample;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::certification::{separator_side_cap, Separator};
use crate::error::{invalid, Error, Result};
use crate::exact::{MaskGraph, EXACT_LIMIT};
use crate::graph::{Distance, Graph};
use crate::rng;
use crate::spectral::walks::{lazy_walk, WalkStart};
use crate::spectral::{cheeger_exact, fiedler, sweep_cut_with};
use crate::vertex_set::VertexSet;

/// Branch sets of a minor embedding of `h` into some host graph.
#[derive(Clone, Debug)]
pub struct MinorEmbedding {
    pub h: Graph,
    pub branch_sets: Vec<VertexSet>,
}

impl Serialize for MinorEmbedding {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MinorEmbedding", 3)?;
        st.serialize_field("h_n", &self.h.n())?;
        st.serialize_field("h_edges", &self.h.edges().collect::<Vec<_>>())?;
        st.serialize_field("branch_sets", &self.branch_sets)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinorViolation {
    CountMismatch { expected: usize, found: usize },
    OutOfRange { branch: usize },
    Empty { branch: usize },
    Overlap { first: usize, second: usize, vertex: usize },
    Disconnected { branch: usize },
    MissingEdge { first: usize, second: usize },
}

/// Checks disjointness, connectivity and every required adjacency; returns
/// the first violation found.
pub fn validate_minor(g: &Graph, emb: &MinorEmbedding) -> Option<MinorViolation> {
    let k = emb.h.n();
    if emb.branch_sets.len() != k {
        return Some(MinorViolation::CountMismatch {
            expected: k,
            found: emb.branch_sets.len(),
        });
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, b) in emb.branch_sets.iter().enumerate() {
        if b.universe() != g.n() {
            return Some(MinorViolation::OutOfRange { branch: i });
        }
        if b.is_empty() {
            return Some(MinorViolation::Empty { branch: i });
        }
        for v in b.iter() {
            if owner[v] != usize::MAX {
                return Some(MinorViolation::Overlap {
                    first: owner[v],
                    second: i,
                    vertex: v,
                });
            }
            owner[v] = i;
        }
    }
    for (i, b) in emb.branch_sets.iter().enumerate() {
        if !g.is_connected_set(b) {
            return Some(MinorViolation::Disconnected { branch: i });
        }
    }
    for (i, j) in emb.h.edges() {
        let touch = emb.branch_sets[i]
            .iter()
            .any(|v| g.neighbors(v).iter().any(|&w| owner[w] == j));
        if !touch {
            return Some(MinorViolation::MissingEdge { first: i, second: j });
        }
    }
    None
}

fn require_valid(g: &Graph, emb: &MinorEmbedding) -> Result<()> {
    match validate_minor(g, emb) {
        None => Ok(()),
        Some(v) => Err(Error::Contradiction(format!("invalid minor embedding: {v:?}"))),
    }
}

/// `H'` with maximum degree 3 and, for each vertex of `H`, the path of
/// `H'`-vertices that replaces it.
#[derive(Clone, Debug)]
pub struct Degree3Reduction {
    pub reduced: Graph,
    pub hosts: Vec<Vec<usize>>,
}

impl Degree3Reduction {
    /// `H` as a minor of `H'`.
    pub fn contraction(&self, h: &Graph) -> MinorEmbedding {
        let n = self.reduced.n();
        MinorEmbedding {
            h: h.clone(),
            branch_sets: self.hosts.iter().map(|p| VertexSet::from_iter(n, p.iter().copied())).collect(),
        }
    }

    /// Turns an embedding of `H'` into one of `H` by merging host paths.
    pub fn pull_back(&self, h: &Graph, emb: &MinorEmbedding) -> MinorEmbedding {
        let n = emb.branch_sets.first().map_or(0, |b| b.universe());
        let branch_sets = self
            .hosts
            .iter()
            .map(|p| {
                let mut s = VertexSet::empty(n);
                for &x in p {
                    s.union_with(&emb.branch_sets[x]);
                }
                s
            })
            .collect();
        MinorEmbedding {
            h: h.clone(),
            branch_sets,
        }
    }
}

/// Replaces each vertex of degree `d > 3` by a path on `d - 2` vertices; the
/// path ends take two of its edges and inner vertices one each.
pub fn reduce_degree3(h: &Graph) -> Result<Degree3Reduction> {
    let mut hosts = Vec::with_capacity(h.n());
    let mut slots: Vec<Vec<usize>> = Vec::with_capacity(h.n());
    let mut edges = Vec::new();
    let mut next = 0;
    for v in 0..h.n() {
        let d = h.degree(v);
        if d <= 3 {
            hosts.push(vec![next]);
            slots.push(vec![next; d]);
            next += 1;
            continue;
        }
        let path: Vec<usize> = (next..next + d - 2).collect();
        next += d - 2;
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
        }
        let mut s = vec![path[0], path[0]];
        s.extend(&path[1..path.len() - 1]);
        s.extend([path[path.len() - 1]; 2]);
        slots.push(s);
        hosts.push(path);
    }
    let mut used = vec![0usize; h.n()];
    for (u, v) in h.edges() {
        edges.push((slots[u][used[u]], slots[v][used[v]]));
        used[u] += 1;
        used[v] += 1;
    }
    let reduced = Graph::from_edges(next, edges)?;
    let red = Degree3Reduction { reduced, hosts };
    debug_assert!(red.reduced.max_degree() <= 3);
    require_valid(&red.reduced, &red.contraction(h))?;
    Ok(red)
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum DiameterOrCut {
    Diameter {
        diameter: usize,
        /// Largest diameter compatible with every ball expanding.
        d_max: usize,
        c0: f64,
    },
    Cut {
        set: VertexSet,
        neighborhood: usize,
        center: Option<usize>,
        radius: Option<usize>,
        d_max: usize,
        c0: f64,
    },
}

/// `2 (floor(log(n/2) / log(1 + alpha)) + 1)`: if every ball of at most
/// `n/2` vertices grows by a factor `1 + alpha`, balls around any vertex pass
/// `n/2` within half this radius, so two of them meet.
pub fn diameter_cap(n: usize, alpha: f64) -> usize {
    if n <= 2 {
        return 2;
    }
    let r = ((n as f64 / 2.0).log2() / (1.0 + alpha).log2()).floor() as usize + 1;
    2 * r
}

/// Either the diameter is at most [`diameter_cap`], or some ball `U` with
/// `|U| <= n/2` has `|N(U)| <= alpha |U|`. A disconnected graph yields its
/// smallest component.
pub fn diameter_or_cut(g: &Graph, alpha: f64) -> Result<DiameterOrCut> {
    let n = g.n();
    if !(alpha > 0.0) {
        return invalid("alpha must be positive");
    }
    if n == 0 {
        return invalid("diameter_or_cut on the empty graph");
    }
    let d_max = diameter_cap(n, alpha);
    let c0 = if n >= 2 { d_max as f64 / (n as f64).log2() } else { d_max as f64 };
    let diam = match g.diameter() {
        Distance::Infinite => {
            let set = g.components().into_iter().min_by_key(|c| c.len()).expect("n > 0");
            return Ok(DiameterOrCut::Cut {
                set,
                neighborhood: 0,
                center: None,
                radius: None,
                d_max,
                c0,
            });
        }
        Distance::Finite(d) => d,
    };
    if diam <= d_max {
        return Ok(DiameterOrCut::Diameter { diameter: diam, d_max, c0 });
    }
    let u = (0..n).find(|&v| g.eccentricity(v) == diam).expect("diameter is attained");
    let dist = g.bfs_distances(u);
    let w = (0..n).find(|&v| dist[v] == diam).expect("far end exists");
    for center in [u, w] {
        if let Some((set, radius, nb)) = sparse_ball(g, center, alpha) {
            return Ok(DiameterOrCut::Cut {
                set,
                neighborhood: nb,
                center: Some(center),
                radius: Some(radius),
                d_max,
                c0,
            });
        }
    }
    Err(Error::Contradiction(format!(
        "diameter {diam} > {d_max} but both balls around a diametral pair expand"
    )))
}

/// The largest-radius ball of at most `n/2` vertices around `v` whose
/// external neighbourhood is at most `alpha` times its size.
fn sparse_ball(g: &Graph, v: usize, alpha: f64) -> Option<(VertexSet, usize, usize)> {
    let n = g.n();
    let dist = g.bfs_distances(v);
    let ecc = dist.iter().copied().filter(|&d| d != usize::MAX).max().unwrap_or(0);
    let mut layer = vec![0usize; ecc + 2];
    for &d in &dist {
        if d != usize::MAX {
            layer[d] += 1;
        }
    }
    let mut best = None;
    let mut size = 0;
    for t in 0..=ecc {
        size += layer[t];
        if 2 * size > n {
            break;
        }
        // in a connected graph N(B_t) is the next layer
        let nb = layer[t + 1];
        if nb as f64 <= alpha * size as f64 {
            best = Some(t);
        }
    }
    best.map(|t| {
        let set = VertexSet::from_iter(n, (0..n).filter(|&u| dist[u] <= t));
        (set, t, layer[t + 1])
    })
}

/// State of the minor-or-separator loop: `A` dumped, `B` embedded branch
/// sets, `C` reservoir.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MinorsPartition {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    /// Embedded `H'`-indices.
    pub i0: Vec<usize>,
    pub branch_sets: Vec<Option<VertexSet>>,
}

impl MinorsPartition {
    fn checkpoint(&self, g: &Graph, alpha: f64, branch_cap: usize) -> Result<()> {
        let nac = g.neighborhood(&self.a).intersection(&self.c).len();
        if nac as f64 > alpha * self.a.len() as f64 + 1e-9 {
            return Err(Error::Contradiction(format!(
                "|N(A, C)| = {nac} exceeds alpha |A| = {}",
                alpha * self.a.len() as f64
            )));
        }
        if let Some(i) = self.branch_sets.iter().flatten().position(|b| b.len() > branch_cap) {
            return Err(Error::Contradiction(format!("branch set {i} exceeds {branch_cap} vertices")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum MinorOutcome {
    Embedding {
        embedding: MinorEmbedding,
        reduced_vertices: usize,
        largest_branch: usize,
        branch_cap: usize,
        d_max: usize,
        iterations: usize,
    },
    Separator {
        separator: Separator,
        size_bound: f64,
        partition: MinorsPartition,
        d_max: usize,
        iterations: usize,
    },
}

/// Largest `|V(H')|` admitted by the size precondition.
pub fn minor_size_limit(n: usize, alpha: f64) -> usize {
    (alpha * n as f64 / (6.0 * diameter_cap(n, alpha) as f64)).floor() as usize
}

/// A minor embedding of `h`, or a separator with at most `alpha n` vertices.
///
/// `h` is first reduced to maximum degree 3. With `enforce_size_bound` the
/// reduced target must have at most [`minor_size_limit`] vertices, which is
/// what makes the separator bound automatic; without it the loop still runs
/// and a separator over the bound is reported as an error.
pub fn embed_or_separate(g: &Graph, h: &Graph, alpha: f64, enforce_size_bound: bool) -> Result<MinorOutcome> {
    let n = g.n();
    if !(alpha > 0.0 && alpha < 1.0) {
        return invalid("alpha must lie in (0, 1)");
    }
    if h.n() == 0 || n == 0 {
        return invalid("embed_or_separate needs non-empty graphs");
    }
    let red = reduce_degree3(h)?;
    let hp = &red.reduced;
    let k = hp.n();
    let limit = minor_size_limit(n, alpha);
    if enforce_size_bound && k > limit {
        return invalid(format!(
            "the degree-3 target has {k} vertices; the bound alpha n / (6 D) allows {limit}"
        ));
    }
    let d_max = diameter_cap(n, alpha);
    let branch_cap = 2 * d_max + 1;
    let mut part = MinorsPartition {
        a: VertexSet::empty(n),
        b: VertexSet::empty(n),
        c: VertexSet::full(n),
        i0: Vec::new(),
        branch_sets: vec![None; k],
    };
    let mut iterations = 0;
    loop {
        part.checkpoint(g, alpha, branch_cap)?;
        if part.i0.len() == k {
            let emb = MinorEmbedding {
                h: hp.clone(),
                branch_sets: part.branch_sets.iter().map(|b| b.clone().expect("all embedded")).collect(),
            };
            require_valid(g, &emb)?;
            let pulled = red.pull_back(h, &emb);
            require_valid(g, &pulled)?;
            let largest = emb.branch_sets.iter().map(|b| b.len()).max().unwrap_or(0);
            return Ok(MinorOutcome::Embedding {
                embedding: pulled,
                reduced_vertices: k,
                largest_branch: largest,
                branch_cap,
                d_max,
                iterations,
            });
        }
        if 3 * part.a.len() > n {
            let s = g.neighborhood(&part.a);
            let bound = alpha * n as f64;
            if s.len() as f64 > bound + 1e-9 {
                return Err(Error::Hypothesis(format!(
                    "separator has {} > alpha n = {bound} vertices; the target exceeds the size bound",
                    s.len()
                )));
            }
            let rest = part.a.union(&s).complement();
            let (a, b) = if part.a.len() <= separator_side_cap(n) { (part.a.clone(), rest) } else { (rest, part.a.clone()) };
            let separator = Separator::new(g, a, s, b)?;
            return Ok(MinorOutcome::Separator {
                separator,
                size_bound: bound,
                partition: part,
                d_max,
                iterations,
            });
        }
        iterations += 1;
        let i = (0..k).find(|i| part.branch_sets[*i].is_none()).expect("unembedded index");
        let x: Vec<usize> = hp.neighbors(i).iter().copied().filter(|&j| part.branch_sets[j].is_some()).collect();
        let mut anchors = Vec::with_capacity(x.len());
        let mut dumped = false;
        for &j in &x {
            let bj = part.branch_sets[j].as_ref().expect("embedded");
            match g.neighborhood(bj).intersection(&part.c).first() {
                Some(v) => anchors.push(v),
                None => {
                    let bj = part.branch_sets[j].take().expect("embedded");
                    part.a.union_with(&bj);
                    part.b.difference_with(&bj);
                    part.i0.retain(|&t| t != j);
                    dumped = true;
                    break;
                }
            }
        }
        if dumped {
            continue;
        }
        let y = if anchors.is_empty() {
            match part.c.first() {
                Some(v) => VertexSet::singleton(n, v),
                None => return Err(Error::Hypothesis("the reservoir is empty before A passed n/3".into())),
            }
        } else {
            let ind = g.induce(&part.c)?;
            match diameter_or_cut(&ind.graph, alpha)? {
                DiameterOrCut::Cut { set, .. } => {
                    let u = ind.lift(&set, n);
                    part.a.union_with(&u);
                    part.c.difference_with(&u);
                    continue;
                }
                DiameterOrCut::Diameter { .. } => connect_anchors(g, &part.c, &anchors),
            }
        };
        part.b.union_with(&y);
        part.c.difference_with(&y);
        part.branch_sets[i] = Some(y);
        part.i0.push(i);
    }
}

/// Shortest paths inside `allowed` from the first anchor to the others.
fn connect_anchors(g: &Graph, allowed: &VertexSet, anchors: &[usize]) -> VertexSet {
    let n = g.n();
    let (_, parent) = g.bfs_within(&anchors[..1], allowed);
    let mut y = VertexSet::singleton(n, anchors[0]);
    for &t in &anchors[1..] {
        let mut v = t;
        while y.insert(v) {
            v = parent[v];
        }
    }
    y
}

/// Outcome of the connected hitting set search.
#[derive(Clone, Debug, serde::Serialize)]
pub struct HittingSet {
    pub set: VertexSet,
    pub walk_length: usize,
    /// `C (n/s) max(ln(k s / n), 1)`.
    pub bound: f64,
    pub constant: f64,
    pub s: usize,
    /// Sizes of all attempts, the accepted one last.
    pub attempts: Vec<usize>,
    /// `i(G) >= beta d`, when it could be decided.
    pub hypothesis: Option<bool>,
    pub hypothesis_method: &'static str,
}

/// Retries before the hitting set search gives up.
pub const HITTING_RETRIES: usize = 32;

/// Connected set meeting every target: lazy walk trace plus shortest paths
/// to the targets it missed, pruned of removable leaves. Walk constant
/// `8 / beta^3`.
pub fn connected_hitting_set(g: &Graph, targets: &[VertexSet], beta: f64, seed: u64) -> Result<HittingSet> {
    connected_hitting_set_with(g, targets, beta, 8.0 / beta.powi(3), seed)
}

/// [`connected_hitting_set`] with an explicit walk constant.
pub fn connected_hitting_set_with(
    g: &Graph,
    targets: &[VertexSet],
    beta: f64,
    constant: f64,
    seed: u64,
) -> Result<HittingSet> {
    let n = g.n();
    if !(beta > 0.0) || !(constant > 0.0) {
        return invalid("beta and the walk constant must be positive");
    }
    if targets.is_empty() {
        return invalid("no targets");
    }
    if targets.iter().any(|t| t.universe() != n || t.is_empty()) {
        return invalid("targets must be non-empty sets over the graph's vertices");
    }
    if g.m() == 0 || !g.is_connected() {
        return invalid("connected_hitting_set needs a connected graph with an edge");
    }
    let k = targets.len();
    let s = targets.iter().map(|t| t.len()).min().expect("targets");
    let ratio = n as f64 / s as f64;
    let bound = constant * ratio * (k as f64 / ratio).ln().max(1.0);
    let ell = bound.ceil() as usize;
    let (hypothesis, hypothesis_method) = isoperimetric_flag(g, beta * g.max_degree() as f64, seed);
    let mut attempts = Vec::new();
    for attempt in 0..HITTING_RETRIES {
        let walk = lazy_walk(g, ell, WalkStart::Stationary, rng::derive(seed, attempt as u64))?;
        let y = hitting_from_trace(g, targets, &walk.steps)?;
        attempts.push(y.len());
        if (y.len() as f64) <= 2.0 * bound.max(1.0) {
            return Ok(HittingSet {
                set: y,
                walk_length: ell,
                bound,
                constant,
                s,
                attempts,
                hypothesis,
                hypothesis_method,
            });
        }
    }
    Err(Error::Hypothesis(format!(
        "no connected hitting set within twice the bound {bound:.1} after {HITTING_RETRIES} walks; sizes {attempts:?}"
    )))
}

fn hitting_from_trace(g: &Graph, targets: &[VertexSet], steps: &[usize]) -> Result<VertexSet> {
    let n = g.n();
    let mut y = VertexSet::from_iter(n, steps.iter().copied());
    let sources = y.to_vec();
    let (dist, parent) = g.bfs_within(&sources, &VertexSet::full(n));
    for t in targets {
        if !t.is_disjoint(&y) {
            continue;
        }
        let near = t.iter().min_by_key(|&u| (dist[u], u)).expect("non-empty target");
        let mut v = near;
        while y.insert(v) {
            v = parent[v];
        }
    }
    let y = prune_leaves(g, targets, y);
    if !g.is_connected_set(&y) || targets.iter().any(|t| t.is_disjoint(&y)) {
        return Err(Error::Contradiction("hitting set lost connectivity or a target".into()));
    }
    Ok(y)
}

/// Removes leaves of a spanning tree of `G[Y]` while every target keeps a hit.
fn prune_leaves(g: &Graph, targets: &[VertexSet], y: VertexSet) -> VertexSet {
    let n = g.n();
    let members = y.to_vec();
    let mut hits = vec![0usize; targets.len()];
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &members {
        for (j, t) in targets.iter().enumerate() {
            if t.contains(v) {
                hits[j] += 1;
                covers[v].push(j);
            }
        }
    }
    let root = members[0];
    let (_, parent) = g.bfs_within(&[root], &y);
    let mut child_count = vec![0usize; n];
    for &v in &members {
        if v != root {
            child_count[parent[v]] += 1;
        }
    }
    let mut y = y;
    let mut queue: VecDeque<usize> = members.iter().copied().filter(|&v| v != root && child_count[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        if covers[v].iter().any(|&j| hits[j] == 1) {
            continue;
        }
        for &j in &covers[v] {
            hits[j] -= 1;
        }
        y.remove(v);
        let p = parent[v];
        child_count[p] -= 1;
        if child_count[p] == 0 && p != root {
            queue.push_back(p);
        }
    }
    // the root itself may go when it has a single child left
    let mut root = root;
    while y.len() > 1 && !covers[root].iter().any(|&j| hits[j] == 1) {
        let kids: Vec<usize> = g.neighbors(root).iter().copied().filter(|&w| y.contains(w) && parent[w] == root).collect();
        if kids.len() != 1 {
            break;
        }
        for &j in &covers[root] {
            hits[j] -= 1;
        }
        y.remove(root);
        root = kids[0];
    }
    y
}

/// Decides `i(G) >= threshold` exactly up to the exact limit, and above it
/// only when the spectral bound `i(G) >= mu delta / 2` already suffices.
fn isoperimetric_flag(g: &Graph, threshold: f64, seed: u64) -> (Option<bool>, &'static str) {
    if g.n() <= EXACT_LIMIT {
        return match cheeger_exact(g) {
            Ok(c) => (Some(c.isoperimetric >= threshold - 1e-12), "exact"),
            Err(_) => (None, "unchecked"),
        };
    }
    match fiedler(g, 300, seed) {
        Ok(f) if f.mu / 2.0 * g.min_degree() as f64 >= threshold => (Some(true), "spectral_lower_bound"),
        _ => (None, "unchecked"),
    }
}

/// Replaces the derived parameters of the clique-minor builder.
#[derive(Clone, Copy, Debug, Default, serde::Serialize)]
pub struct CliqueOverrides {
    pub b: Option<usize>,
    pub k: Option<usize>,
    pub walk_constant: Option<f64>,
    /// Skip the dummy targets that pad `k' s` into `(2n, 3n)`.
    pub no_padding: bool,
}

/// Edge counts behind the contradiction that a successful hypothesis forbids.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EdgeLedger {
    pub a_size: usize,
    pub b_size: usize,
    pub e_ab: usize,
    pub e_ac: usize,
    /// `i(G) n / 3` when `i(G)` is known.
    pub required: Option<f64>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CliqueParams {
    pub n: usize,
    pub d: usize,
    pub alpha: f64,
    pub beta: f64,
    pub walk_constant: f64,
    pub b: usize,
    pub k: usize,
    pub overridden: bool,
    pub hypothesis: Option<bool>,
    pub hypothesis_method: &'static str,
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum CliqueMinorOutcome {
    Minor {
        embedding: MinorEmbedding,
        k: usize,
        c_effective: f64,
        params: CliqueParams,
        evictions: usize,
        cuts: usize,
        /// Hitting sets that came out larger than `b`.
        oversized: usize,
    },
    Failure {
        reason: String,
        embedded: usize,
        ledger: EdgeLedger,
        params: CliqueParams,
    },
}

/// A `K_k` minor built one branch set at a time from connected hitting sets.
///
/// Defaults follow `beta = alpha / 4`, `C = 8 / beta^3`,
/// `b = sqrt(8 C n / alpha)`, `k = alpha n / (6 b)`.
pub fn clique_minor(g: &Graph, alpha: f64, overrides: CliqueOverrides, seed: u64) -> Result<CliqueMinorOutcome> {
    let n = g.n();
    if !(alpha > 0.0 && alpha <= 1.0) {
        return invalid("alpha must lie in (0, 1]");
    }
    if n < 2 || g.m() == 0 {
        return invalid("clique_minor needs a graph with an edge");
    }
    let d = g.max_degree();
    let beta = alpha / 4.0;
    let constant = overrides.walk_constant.unwrap_or(8.0 / beta.powi(3));
    let b = overrides.b.unwrap_or_else(|| (8.0 * constant / alpha * n as f64).sqrt().ceil() as usize).max(1);
    let k = overrides.k.unwrap_or((alpha * n as f64 / (6.0 * b as f64)).floor() as usize);
    if k == 0 {
        return invalid(format!("derived k = 0 (b = {b}, n = {n}); override b and k"));
    }
    let (hypothesis, hypothesis_method) = isoperimetric_flag(g, alpha * d as f64, seed);
    let params = CliqueParams {
        n,
        d,
        alpha,
        beta,
        walk_constant: constant,
        b,
        k,
        overridden: overrides.b.is_some() || overrides.k.is_some() || overrides.walk_constant.is_some(),
        hypothesis,
        hypothesis_method,
    };
    let bd = beta * d as f64;
    let mut a = VertexSet::empty(n);
    let mut c = VertexSet::full(n);
    let mut branch: Vec<Option<VertexSet>> = vec![None; k];
    let (mut evictions, mut cuts, mut oversized) = (0, 0, 0);
    let mut round = 0u64;
    while branch.iter().any(|x| x.is_none()) && 3 * a.len() <= n {
        round += 1;
        let weak = branch
            .iter()
            .position(|bi| bi.as_ref().is_some_and(|s| (g.edges_between(s, &c) as f64) < bd * s.len() as f64));
        if let Some(i) = weak {
            a.union_with(&branch[i].take().expect("weak branch"));
            evictions += 1;
            continue;
        }
        if c.len() < 2 {
            break;
        }
        let ind = g.induce(&c)?;
        if let Some(u) = sparse_cut(&ind.graph, bd, rng::derive(seed, round))? {
            let u = ind.lift(&u, n);
            a.union_with(&u);
            c.difference_with(&u);
            cuts += 1;
            continue;
        }
        let cn = ind.graph.n();
        let mut back = vec![usize::MAX; n];
        for (new, &old) in ind.map.iter().enumerate() {
            back[old] = new;
        }
        let to_local = |s: &VertexSet| VertexSet::from_iter(cn, s.iter().filter(|&v| c.contains(v)).map(|v| back[v]));
        let mut targets: Vec<VertexSet> = branch.iter().flatten().map(|bi| to_local(&g.neighborhood(bi))).collect();
        let y_local = if targets.is_empty() {
            VertexSet::singleton(cn, 0)
        } else {
            let s = targets.iter().map(|t| t.len()).min().expect("targets");
            if s == 0 {
                return Err(Error::Contradiction("a strong branch set has no reservoir neighbour".into()));
            }
            if !overrides.no_padding {
                let mut r = rng::stream(seed, 1_000_000 + round);
                while targets.len() * s <= 2 * cn {
                    targets.push(VertexSet::from_iter(cn, sample(&mut r, cn, s).into_iter()));
                }
            }
            match connected_hitting_set_with(&ind.graph, &targets, beta, constant, rng::derive(seed, round)) {
                Ok(h) => h.set,
                Err(Error::Hypothesis(reason)) => {
                    return Ok(CliqueMinorOutcome::Failure {
                        reason,
                        embedded: branch.iter().flatten().count(),
                        ledger: ledger(g, &a, &branch, &c, hypothesis, n),
                        params,
                    })
                }
                Err(e) => return Err(e),
            }
        };
        if y_local.len() > b {
            oversized += 1;
        }
        let y_local = extend_connected(&ind.graph, y_local, b);
        let y = ind.lift(&y_local, n);
        c.difference_with(&y);
        let i = branch.iter().position(|x| x.is_none()).expect("open index");
        branch[i] = Some(y);
    }
    if branch.iter().all(|x| x.is_some()) {
        let full = Graph::from_edges(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))?;
        let emb = MinorEmbedding {
            h: full,
            branch_sets: branch.into_iter().map(|x| x.expect("complete")).collect(),
        };
        require_valid(g, &emb)?;
        return Ok(CliqueMinorOutcome::Minor {
            embedding: emb,
            k,
            c_effective: k as f64 / (n as f64).sqrt(),
            params,
            evictions,
            cuts,
            oversized,
        });
    }
    let reason = if 3 * a.len() > n {
        format!("A grew to {} > n/3 vertices", a.len())
    } else {
        "the reservoir ran out".to_string()
    };
    Ok(CliqueMinorOutcome::Failure {
        reason,
        embedded: branch.iter().flatten().count(),
        ledger: ledger(g, &a, &branch, &c, hypothesis, n),
        params,
    })
}

fn ledger(g: &Graph, a: &VertexSet, branch: &[Option<VertexSet>], c: &VertexSet, hyp: Option<bool>, n: usize) -> EdgeLedger {
    let mut b = VertexSet::empty(n);
    for bi in branch.iter().flatten() {
        b.union_with(bi);
    }
    let required = match (hyp, n <= EXACT_LIMIT) {
        (_, true) => cheeger_exact(g).ok().map(|c| c.isoperimetric * n as f64 / 3.0),
        _ => None,
    };
    EdgeLedger {
        a_size: a.len(),
        b_size: b.len(),
        e_ab: g.edges_between(a, &b),
        e_ac: g.edges_between(a, c),
        required,
    }
}

/// `U` with `|U| <= |V|/2` and `e(U, V \ U) < threshold |U|`: a smaller
/// component, an exhaustive minimum up to the exact limit, otherwise the
/// smaller side of a sweep cut.
fn sparse_cut(g: &Graph, threshold: f64, _seed: u64) -> Result<Option<VertexSet>> {
    let n = g.n();
    let comps = g.components();
    if comps.len() > 1 {
        return Ok(comps.into_iter().min_by_key(|c| c.len()));
    }
    let candidate = if n <= EXACT_LIMIT {
        cheeger_exact(g)?.isoperimetric_witness
    } else {
        let cut = sweep_cut_with(g, 600)?.cut_set;
        if 2 * cut.len() > n {
            cut.complement()
        } else {
            cut
        }
    };
    if candidate.is_empty() || 2 * candidate.len() > n {
        return Ok(None);
    }
    let crossing = g.edges_between(&candidate, &candidate.complement());
    Ok(((crossing as f64) < threshold * candidate.len() as f64).then_some(candidate))
}

/// Grows a connected set by BFS inside `g` until it has `b` vertices or its
/// component is exhausted.
fn extend_connected(g: &Graph, mut y: VertexSet, b: usize) -> VertexSet {
    let mut q: VecDeque<usize> = y.iter().collect();
    while y.len() < b {
        let Some(v) = q.pop_front() else { break };
        for &w in g.neighbors(v) {
            if y.len() >= b {
                break;
            }
            if y.insert(w) {
                q.push_back(w);
            }
        }
    }
    y
}

/// Largest `k` with a `K_k` minor, by enumerating every partition of a
/// subset of the vertices into labelled parts. At most 10 vertices.
pub fn ccl_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 10 {
        return invalid(format!("ccl_bruteforce handles at most 10 vertices (n = {n})"));
    }
    if n == 0 {
        return Ok(0);
    }
    let mg = MaskGraph::new(g);
    let mut label = vec![0usize; n];
    let mut best = 1;
    fn rec(v: usize, used: usize, label: &mut [usize], mg: &MaskGraph, best: &mut usize) {
        let n = label.len();
        // even with every remaining vertex alone in a new part
        if used + (n - v) <= *best {
            return;
        }
        if v == n {
            let mut parts = vec![0u64; used];
            for (u, &l) in label.iter().enumerate() {
                if l > 0 {
                    parts[l - 1] |= 1 << u;
                }
            }
            let ok = parts.iter().all(|&p| connected_mask(mg, p))
                && (0..used).all(|i| (i + 1..used).all(|j| mg.nbr(parts[i]) & parts[j] != 0));
            if ok {
                *best = used;
            }
            return;
        }
        for l in 0..=used + 1 {
            label[v] = l;
            rec(v + 1, used.max(l), label, mg, best);
        }
        label[v] = 0;
    }
    rec(0, 0, &mut label, &mg, &mut best);
    Ok(best)
}

fn connected_mask(mg: &MaskGraph, set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let mut reach = set & set.wrapping_neg();
    loop {
        let next = (reach | mg.nbr(reach)) & set;
        if next == reach {
            return reach == set;
        }
        reach = next;
    }
}
