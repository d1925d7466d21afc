//! Depth-first search forests, long paths and cycles, paths inside a colour
//! class, and families of cycles with distinct lengths.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::generators::{check_locally_sparse, gnp, SparsityReport};
use crate::graph::Graph;
use crate::rng;
use crate::vertex_set::VertexSet;

/// Vertex order `0, 1, ..., n-1`.
pub fn natural_sigma(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Uniformly random vertex order.
pub fn random_sigma(n: usize, seed: u64) -> Vec<usize> {
    let mut s = natural_sigma(n);
    s.shuffle(&mut rng::stream(seed, 0));
    s
}

fn ranks(n: usize, sigma: &[usize]) -> Result<Vec<usize>> {
    if sigma.len() != n {
        return invalid(format!("sigma has {} entries for {n} vertices", sigma.len()));
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in sigma.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return invalid("sigma is not a permutation of the vertices");
        }
        rank[v] = i;
    }
    Ok(rank)
}

/// Depth-first search forest.
#[derive(Clone, Debug, Serialize)]
pub struct DfsForest {
    pub parent: Vec<Option<usize>>,
    /// Tree roots in discovery order.
    pub roots: Vec<usize>,
    /// Moment each vertex entered the stack.
    pub discovery_index: Vec<usize>,
    /// Moment each vertex left the stack.
    pub finish_index: Vec<usize>,
    pub depth: Vec<usize>,
    pub order_sigma: Vec<usize>,
}

impl DfsForest {
    /// Whether `a` lies on the tree path from `b` to its root (`a == b` counts).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.discovery_index[a] <= self.discovery_index[b] && self.finish_index[b] <= self.finish_index[a]
    }

    /// Tree vertices from `v` up to its ancestor `a`, both included.
    pub fn path_up(&self, v: usize, a: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while cur != a {
            cur = self.parent[cur].expect("a is an ancestor of v");
            out.push(cur);
        }
        out
    }

    /// Children lists ordered by discovery.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_disc: Vec<usize> = (0..n).collect();
        by_disc.sort_by_key(|&v| self.discovery_index[v]);
        let mut ch = vec![Vec::new(); n];
        for v in by_disc {
            if let Some(p) = self.parent[v] {
                ch[p].push(v);
            }
        }
        ch
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let n = self.parent.len();
        let mut by_finish: Vec<usize> = (0..n).collect();
        by_finish.sort_by_key(|&v| self.finish_index[v]);
        let mut size = vec![1; n];
        for v in by_finish {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// Tree edges are graph edges, trees match the components, and every
    /// non-tree edge joins an ancestor and a descendant.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut root_of = vec![usize::MAX; n];
        let mut by_disc: Vec<usize> = (0..n).collect();
        by_disc.sort_by_key(|&v| self.discovery_index[v]);
        for &v in &by_disc {
            root_of[v] = match self.parent[v] {
                None => v,
                Some(p) => {
                    if !g.has_edge(p, v) {
                        return Err(Error::Contradiction(format!("tree edge ({p}, {v}) is not in the graph")));
                    }
                    root_of[p]
                }
            };
        }
        for (u, v) in g.edges() {
            if root_of[u] != root_of[v] {
                return Err(Error::Contradiction(format!("edge ({u}, {v}) joins two trees")));
            }
            if !self.is_ancestor(u, v) && !self.is_ancestor(v, u) {
                return Err(Error::Contradiction(format!("edge ({u}, {v}) is a cross edge")));
            }
        }
        Ok(())
    }
}

/// Snapshot passed to the hook each time a vertex is finished.
struct Pop<'a> {
    /// The stack just before the pop, bottom first; its last entry is the
    /// finished vertex.
    stack: &'a [usize],
    finished: usize,
}

/// The search: the stack holds `U`, finished vertices form `S`, the rest is
/// `T`. Neighbours and new roots are taken in `sigma` order. Stops early when
/// `hook` returns true.
fn dfs_core(g: &Graph, rank: &[usize], mut hook: impl FnMut(Pop<'_>) -> bool) -> (DfsForest, bool) {
    let n = g.n();
    let mut nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    for l in nbrs.iter_mut() {
        l.sort_by_key(|&w| rank[w]);
    }
    let mut sigma = vec![0; n];
    for v in 0..n {
        sigma[rank[v]] = v;
    }
    let mut next = vec![0usize; n];
    let mut parent = vec![None; n];
    let mut disc = vec![usize::MAX; n];
    let mut fin = vec![usize::MAX; n];
    let mut depth = vec![0; n];
    let mut roots = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let (mut clock_d, mut clock_f) = (0, 0);
    let mut stopped = false;
    'outer: for &s in &sigma {
        if disc[s] != usize::MAX {
            continue;
        }
        roots.push(s);
        disc[s] = clock_d;
        clock_d += 1;
        stack.push(s);
        while let Some(&v) = stack.last() {
            let l = &nbrs[v];
            while next[v] < l.len() && disc[l[next[v]]] != usize::MAX {
                next[v] += 1;
            }
            if next[v] < l.len() {
                let u = l[next[v]];
                parent[u] = Some(v);
                depth[u] = depth[v] + 1;
                disc[u] = clock_d;
                clock_d += 1;
                stack.push(u);
            } else {
                fin[v] = clock_f;
                clock_f += 1;
                let stop = hook(Pop {
                    stack: &stack,
                    finished: clock_f,
                });
                stack.pop();
                if stop {
                    stopped = true;
                    break 'outer;
                }
            }
        }
    }
    let forest = DfsForest {
        parent,
        roots,
        discovery_index: disc,
        finish_index: fin,
        depth,
        order_sigma: sigma,
    };
    (forest, stopped)
}

/// Depth-first search prioritising vertices by `sigma`. The forest is
/// validated (tree edges, components, no cross edges) before it is returned.
pub fn dfs(g: &Graph, sigma: &[usize]) -> Result<DfsForest> {
    let rank = ranks(g.n(), sigma)?;
    let (forest, _) = dfs_core(g, &rank, |p| {
        // the stack always spans a path
        debug_assert!(p.stack.windows(2).all(|w| g.has_edge(w[0], w[1])));
        false
    });
    forest.validate(g)?;
    Ok(forest)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum PathOutcome {
    Path { vertices: Vec<usize>, length: usize },
    /// A `k`-set with fewer than `ell` outside neighbours.
    Witness { set: VertexSet, neighborhood: usize },
}

/// Checks that `vertices` is a simple path of `g`.
pub fn validate_path(g: &Graph, vertices: &[usize]) -> Result<()> {
    let mut seen = VertexSet::empty(g.n());
    for &v in vertices {
        if v >= g.n() || !seen.insert(v) {
            return Err(Error::Contradiction(format!("path repeats or leaves the graph at {v}")));
        }
    }
    for w in vertices.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::Contradiction(format!("path uses a non-edge ({}, {})", w[0], w[1])));
        }
    }
    Ok(())
}

/// Runs the search until `k` vertices are finished. If the stack then held
/// at least `ell + 1` vertices (counting the one just finished) they form a
/// path of length at least `ell`; otherwise the finished set is returned,
/// whose neighbourhood lies inside the remaining stack.
pub fn long_path(g: &Graph, k: usize, ell: usize, sigma: &[usize]) -> Result<PathOutcome> {
    let n = g.n();
    if k == 0 || n <= k {
        return invalid(format!("long_path needs 1 <= k < n (k = {k}, n = {n})"));
    }
    let rank = ranks(n, sigma)?;
    let mut snapshot: Vec<usize> = Vec::new();
    let mut finished_set = VertexSet::empty(n);
    dfs_core(g, &rank, |p| {
        finished_set.insert(*p.stack.last().expect("non-empty stack"));
        if p.finished == k {
            snapshot = p.stack.to_vec();
            true
        } else {
            false
        }
    });
    if snapshot.len() > ell {
        validate_path(g, &snapshot)?;
        return Ok(PathOutcome::Path {
            length: snapshot.len() - 1,
            vertices: snapshot,
        });
    }
    let nb = g.neighborhood(&finished_set).len();
    if nb >= ell {
        return Err(Error::Contradiction(format!(
            "finished set has {nb} >= {ell} neighbours but the stack held {}",
            snapshot.len()
        )));
    }
    Ok(PathOutcome::Witness {
        set: finished_set,
        neighborhood: nb,
    })
}

/// A cycle given by its cyclic vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub length: usize,
}

impl CycleWitness {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<CycleWitness> {
        let c = CycleWitness {
            length: vertices.len(),
            vertices,
        };
        c.validate(g)?;
        Ok(c)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let v = &self.vertices;
        if v.len() < 3 || self.length != v.len() {
            return Err(Error::Contradiction("a cycle needs at least 3 vertices".into()));
        }
        validate_path(g, v)?;
        if !g.has_edge(v[v.len() - 1], v[0]) {
            return Err(Error::Contradiction("cycle does not close".into()));
        }
        Ok(())
    }
}

/// Where the long-cycle construction found its cycle.
#[derive(Clone, Debug, Serialize)]
pub struct LongCycleTrace {
    pub root: usize,
    /// Deepest vertex whose subtree has more than `k` vertices.
    pub v: usize,
    /// Children of `v` whose subtrees make up `w_set`.
    pub x: Vec<usize>,
    pub w_set: VertexSet,
    /// `|N(W)|`; all of it lies on the root path of `v`.
    pub neighborhood: usize,
    pub v_star: usize,
    pub w: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum CycleOutcome {
    Cycle {
        cycle: CycleWitness,
        trace: LongCycleTrace,
    },
    /// `W` has `k/2 <= |W| <= k` and fewer than `ell` outside neighbours.
    Violation {
        w_set: VertexSet,
        neighborhood: usize,
        /// The shorter cycle, when `|N(W)| >= 2`.
        cycle: Option<CycleWitness>,
        trace: LongCycleTrace,
    },
    /// Every component has at most `k` vertices.
    NoLargeComponent { largest: usize },
}

/// The cycle closed through the farthest root-path neighbour of a set of
/// `k/2..=k` vertices hanging below one vertex of a search tree.
pub fn long_cycle(g: &Graph, k: usize, ell: usize, sigma: &[usize]) -> Result<CycleOutcome> {
    let n = g.n();
    if k == 0 || n <= k {
        return invalid(format!("long_cycle needs 1 <= k < n (k = {k}, n = {n})"));
    }
    if ell < 2 {
        return invalid("long_cycle needs ell >= 2");
    }
    let f = dfs(g, sigma)?;
    let size = f.subtree_sizes();
    let Some(&root) = f.roots.iter().find(|&&r| size[r] > k) else {
        let largest = f.roots.iter().map(|&r| size[r]).max().unwrap_or(0);
        return Ok(CycleOutcome::NoLargeComponent { largest });
    };
    let children = f.children();
    let mut v = root;
    while let Some(&c) = children[v].iter().find(|&&c| size[c] > k) {
        v = c;
    }
    let x: Vec<usize> = match children[v].iter().find(|&&c| 2 * size[c] >= k) {
        Some(&c) => vec![c],
        None => {
            let mut acc = Vec::new();
            let mut total = 0;
            for &c in &children[v] {
                acc.push(c);
                total += size[c];
                if 2 * total >= k {
                    break;
                }
            }
            acc
        }
    };
    let mut w_set = VertexSet::empty(n);
    for &c in &x {
        for u in 0..n {
            if f.is_ancestor(c, u) {
                w_set.insert(u);
            }
        }
    }
    let nw = g.neighborhood(&w_set);
    if let Some(bad) = nw.iter().find(|&u| !f.is_ancestor(u, v)) {
        return Err(Error::Contradiction(format!("neighbour {bad} of W is off the root path")));
    }
    let v_star = nw.iter().min_by_key(|&u| f.depth[u]).expect("W touches v");
    let w = g
        .neighbors(v_star)
        .iter()
        .copied()
        .filter(|&u| w_set.contains(u))
        .min_by_key(|&u| f.discovery_index[u])
        .expect("v* is a neighbour of W");
    let trace = LongCycleTrace {
        root,
        v,
        x,
        neighborhood: nw.len(),
        w_set: w_set.clone(),
        v_star,
        w,
    };
    let cycle = if nw.len() >= 2 {
        Some(CycleWitness::new(g, f.path_up(w, v_star))?)
    } else {
        None
    };
    match cycle {
        Some(c) if c.length > ell => Ok(CycleOutcome::Cycle { cycle: c, trace }),
        cycle => Ok(CycleOutcome::Violation {
            w_set,
            neighborhood: nw.len(),
            cycle,
            trace,
        }),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum ColorPathOutcome {
    Path {
        vertices: Vec<usize>,
        length: usize,
        /// Vertices removed while peeling, in order.
        peel_trace: Vec<usize>,
        hypothesis: ColorHypothesis,
    },
    Failure {
        reason: String,
        peel_trace: Vec<usize>,
        hypothesis: Option<ColorHypothesis>,
    },
}

/// Local density check: sets of at most `2 n_target` vertices span at most
/// `d / (8 r)` edges per vertex.
#[derive(Clone, Debug, Serialize)]
pub struct ColorHypothesis {
    pub bound: f64,
    pub scan: SparsityReport,
    pub holds: bool,
}

/// Finds a path of length `n_target` using only edges of `e0`: peel
/// `(V, e0)` to minimum degree `d / (2r)`, then search the core for a path.
pub fn path_in_color_class(
    g: &Graph,
    e0: &[(usize, usize)],
    r: usize,
    d: f64,
    n_target: usize,
) -> Result<ColorPathOutcome> {
    let n = g.n();
    if r == 0 || n_target == 0 {
        return invalid("r and n_target must be positive");
    }
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in e0 {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return invalid(format!("({u}, {v}) is not an edge of the graph"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return invalid(format!("edge ({u}, {v}) listed twice"));
        }
    }
    let fail = |reason: String, peel_trace: Vec<usize>, hypothesis| {
        Ok(ColorPathOutcome::Failure {
            reason,
            peel_trace,
            hypothesis,
        })
    };
    if (e0.len() * r) < g.m() {
        return fail(format!("|E0| = {} is below |E|/r = {}", e0.len(), g.m() as f64 / r as f64), Vec::new(), None);
    }
    let avg = 2.0 * g.m() as f64 / n as f64;
    if avg < d {
        return fail(format!("average degree {avg} is below d = {d}"), Vec::new(), None);
    }
    let bound = d / (8.0 * r as f64);
    let scan = check_locally_sparse(g, bound + 1e-9, (2 * n_target) as f64 / n as f64, 1 << 20);
    let hypothesis = ColorHypothesis {
        bound,
        holds: scan.worst_ratio <= bound + 1e-12,
        scan,
    };

    let g0 = Graph::from_edges(n, e0.iter().copied())?;
    let threshold = d / (2.0 * r as f64);
    let mut alive = VertexSet::full(n);
    let mut deg: Vec<usize> = (0..n).map(|v| g0.degree(v)).collect();
    let mut peel_trace = Vec::new();
    let mut queue: Vec<usize> = (0..n).filter(|&v| (deg[v] as f64) < threshold).collect();
    while let Some(v) = queue.pop() {
        if !alive.remove(v) {
            continue;
        }
        peel_trace.push(v);
        for &u in g0.neighbors(v) {
            if alive.contains(u) {
                deg[u] -= 1;
                if (deg[u] as f64) < threshold && deg[u] + 1 >= threshold.ceil() as usize {
                    queue.push(u);
                }
            }
        }
    }
    if alive.len() <= n_target {
        let reason = format!("peeling left {} vertices, not more than n_target = {n_target}", alive.len());
        return fail(reason, peel_trace, Some(hypothesis));
    }
    let core = g0.induce(&alive)?;
    let m = core.graph.n();
    match long_path(&core.graph, n_target, n_target, &natural_sigma(m))? {
        PathOutcome::Path { vertices, length } => {
            let vertices: Vec<usize> = vertices.iter().map(|&v| core.map[v]).collect();
            validate_path(&g0, &vertices)?;
            Ok(ColorPathOutcome::Path {
                vertices,
                length,
                peel_trace,
                hypothesis,
            })
        }
        PathOutcome::Witness { set, neighborhood } => {
            let set = core.lift(&set, n);
            fail(
                format!("{} core vertices have only {neighborhood} outside neighbours", set.len()),
                peel_trace,
                Some(hypothesis),
            )
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RamseyTrial {
    pub coloring_seed_stream: u64,
    pub majority_color: usize,
    pub majority_edges: usize,
    pub found: bool,
    pub path_length: Option<usize>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamseyReport {
    pub big_n: usize,
    pub p: f64,
    pub c: f64,
    pub r: usize,
    pub n_target: usize,
    pub seed: u64,
    pub edges: usize,
    pub avg_degree: f64,
    pub hypothesis: ColorHypothesis,
    pub trials: Vec<RamseyTrial>,
    pub successes: usize,
}

/// Samples `G(N, C r ln r / N)` with `N = 25 r n` (or the given `N`), colours
/// its edges uniformly at random `trials` times, and looks for a path of
/// length `n` in the majority colour each time.
pub fn ramsey_demo(
    n_target: usize,
    r: usize,
    c: f64,
    big_n: Option<usize>,
    seed: u64,
    trials: usize,
) -> Result<RamseyReport> {
    if r < 2 || n_target == 0 || !(c > 0.0) {
        return invalid("ramsey_demo needs r >= 2, n >= 1 and C > 0");
    }
    let big_n = big_n.unwrap_or(25 * r * n_target);
    let p = (c * r as f64 * (r as f64).ln() / big_n as f64).min(1.0);
    let g = gnp(big_n, p, &mut rng::stream(seed, 0))?;
    let avg = 2.0 * g.m() as f64 / big_n as f64;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut report_hyp = None;
    let mut out = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rr = rng::stream(seed, 1 + t as u64);
        let colors: Vec<usize> = edges.iter().map(|_| rr.gen_range(0..r)).collect();
        let mut counts = vec![0usize; r];
        for &c in &colors {
            counts[c] += 1;
        }
        let major = (0..r).max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a))).expect("r >= 2");
        let e0: Vec<(usize, usize)> =
            edges.iter().zip(&colors).filter(|(_, &c)| c == major).map(|(&e, _)| e).collect();
        let res = path_in_color_class(&g, &e0, r, avg, n_target)?;
        let (found, len, fail, hyp) = match res {
            ColorPathOutcome::Path { length, hypothesis, .. } => (true, Some(length), None, Some(hypothesis)),
            ColorPathOutcome::Failure { reason, hypothesis, .. } => (false, None, Some(reason), hypothesis),
        };
        if report_hyp.is_none() {
            report_hyp = hyp;
        }
        out.push(RamseyTrial {
            coloring_seed_stream: 1 + t as u64,
            majority_color: major,
            majority_edges: e0.len(),
            found,
            path_length: len,
            failure: fail,
        });
    }
    let hypothesis = match report_hyp {
        Some(h) => h,
        None => {
            let bound = avg / (8.0 * r as f64);
            let scan = check_locally_sparse(&g, bound + 1e-9, (2 * n_target) as f64 / big_n as f64, 1 << 20);
            ColorHypothesis {
                bound,
                holds: scan.worst_ratio <= bound + 1e-12,
                scan,
            }
        }
    };
    Ok(RamseyReport {
        big_n,
        p,
        c,
        r,
        n_target,
        seed,
        edges: g.m(),
        avg_degree: avg,
        hypothesis,
        successes: out.iter().filter(|t| t.found).count(),
        trials: out,
    })
}

/// Steps of the distinct-lengths construction.
#[derive(Clone, Debug, Serialize)]
pub struct CycleFamilyTrace {
    pub root: usize,
    /// Width allowance for the level window.
    pub c1: usize,
    /// Maximum degree, bounding tree degrees.
    pub c2: usize,
    pub k0: usize,
    pub k1: usize,
    pub window_size: usize,
    pub path_length: usize,
    pub x_count: usize,
    pub x0_count: usize,
    pub branch_root: Option<usize>,
    pub a: Option<usize>,
    pub b0_count: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum CycleFamily {
    Family {
        /// In increasing order of length.
        cycles: Vec<CycleWitness>,
        lengths: Vec<usize>,
        /// Largest gap between consecutive lengths.
        max_gap: usize,
        trace: CycleFamilyTrace,
        label: &'static str,
    },
    Inapplicable {
        reason: String,
        trace: CycleFamilyTrace,
    },
}

/// Cycles of pairwise distinct lengths built from a BFS tree with a thick
/// window of consecutive levels and a long path inside that window.
pub fn cycle_lengths_family(g: &Graph, eps: f64, root: usize) -> Result<CycleFamily> {
    let n = g.n();
    if !(eps > 0.0 && eps < 0.5) {
        return invalid("eps must lie in (0, 1/2)");
    }
    if root >= n || !g.is_connected() {
        return invalid("cycle_lengths_family needs a connected graph and a valid root");
    }
    // BFS tree, neighbours in index order
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut bfs_index = vec![0; n];
    let mut order = vec![root];
    depth[root] = 0;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        bfs_index[v] = head;
        head += 1;
        for &u in g.neighbors(v) {
            if depth[u] == usize::MAX {
                depth[u] = depth[v] + 1;
                parent[u] = v;
                order.push(u);
            }
        }
    }
    let max_level = depth.iter().copied().max().unwrap_or(0);
    let mut level_size = vec![0usize; max_level + 1];
    for &d in &depth {
        level_size[d] += 1;
    }
    let need = ((1.0 - eps) * n as f64).ceil() as usize;
    let mut c1 = ((n as f64).log2().ceil() as usize).max(1);
    let (k0, k1) = loop {
        // deepest start whose window is thick enough
        let found = (0..=max_level).rev().find(|&s| {
            let e = (s + c1).min(max_level);
            level_size[s..=e].iter().sum::<usize>() >= need
        });
        if let Some(s) = found {
            break (s, (s + c1).min(max_level));
        }
        c1 = (c1 * 2).min(n);
    };
    let mut trace = CycleFamilyTrace {
        root,
        c1,
        c2: g.max_degree(),
        k0,
        k1,
        window_size: level_size[k0..=k1].iter().sum(),
        path_length: 0,
        x_count: 0,
        x0_count: 0,
        branch_root: None,
        a: None,
        b0_count: 0,
    };
    let inapplicable = |reason: &str, trace: CycleFamilyTrace| {
        Ok(CycleFamily::Inapplicable {
            reason: reason.to_string(),
            trace,
        })
    };
    if k0 == 0 {
        return inapplicable("the window starts at the root level", trace);
    }
    let window = VertexSet::from_iter(n, (0..n).filter(|&v| depth[v] >= k0 && depth[v] <= k1));
    let ind = g.induce(&window)?;
    let f = dfs(&ind.graph, &natural_sigma(ind.graph.n()))?;
    let deepest = (0..ind.graph.n())
        .max_by(|&a, &b| f.depth[a].cmp(&f.depth[b]).then(f.discovery_index[b].cmp(&f.discovery_index[a])))
        .expect("window is non-empty");
    let top = f.path_up(deepest, f.roots.iter().copied().find(|&r| f.is_ancestor(r, deepest)).expect("rooted"));
    let path: Vec<usize> = top.iter().rev().map(|&v| ind.map[v]).collect();
    trace.path_length = path.len() - 1;
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in path.iter().enumerate() {
        pos[v] = i;
    }
    // the level-k0 ancestor of each path vertex and the highest path vertex below it
    let anc_k0 = |mut v: usize| {
        while depth[v] > k0 {
            v = parent[v];
        }
        v
    };
    let mut highest: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for &v in &path {
        let u = anc_k0(v);
        let e = highest.entry(u).or_insert(v);
        if (depth[v], bfs_index[v]) < (depth[*e], bfs_index[*e]) {
            *e = v;
        }
    }
    let mut x: Vec<usize> = highest.into_values().collect();
    x.sort_by_key(|&v| pos[v]);
    trace.x_count = x.len();
    let mut x0: Vec<usize> = Vec::new();
    for &v in &x {
        if x0.last().is_none_or(|&l| pos[v] - pos[l] > c1) {
            x0.push(v);
        }
    }
    trace.x0_count = x0.len();
    if x0.len() < 2 {
        return inapplicable("fewer than two well-spaced subtree representatives", trace);
    }
    let lca = |mut a: usize, mut b: usize| {
        while depth[a] > depth[b] {
            a = parent[a];
        }
        while depth[b] > depth[a] {
            b = parent[b];
        }
        while a != b {
            a = parent[a];
            b = parent[b];
        }
        a
    };
    let r = x0.iter().skip(1).fold(x0[0], |acc, &v| lca(acc, v));
    trace.branch_root = Some(r);
    let branch_of = |mut v: usize| {
        while parent[v] != r {
            v = parent[v];
        }
        v
    };
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for &v in &x0 {
        groups.entry(branch_of(v)).or_default().push(v);
    }
    if groups.len() < 2 {
        return inapplicable("the spanning subtree does not branch at its root", trace);
    }
    let (&a_branch, a_group) = groups.iter().min_by_key(|(b, g)| (g.len(), **b)).expect("two groups");
    let a = a_group[0];
    trace.a = Some(a);
    let b: Vec<usize> = x0.iter().copied().filter(|&v| branch_of(v) != a_branch).collect();
    let before: Vec<usize> = b.iter().copied().filter(|&v| pos[v] < pos[a]).collect();
    let after: Vec<usize> = b.iter().copied().filter(|&v| pos[v] > pos[a]).collect();
    let b0 = if before.len() > after.len() { before } else { after };
    trace.b0_count = b0.len();

    let up = |v: usize| {
        let mut out = vec![v];
        let mut c = v;
        while c != r {
            c = parent[c];
            out.push(c);
        }
        out
    };
    let up_a = up(a);
    let mut cycles = Vec::with_capacity(b0.len());
    for &bv in &b0 {
        let mut seq = up_a.clone();
        let mut up_b = up(bv);
        up_b.pop();
        seq.extend(up_b.iter().rev());
        let (pa, pb) = (pos[a], pos[bv]);
        if pb > pa {
            seq.extend(path[pa + 1..pb].iter().rev());
        } else {
            seq.extend(&path[pb + 1..pa]);
        }
        cycles.push(CycleWitness::new(g, seq)?);
    }
    cycles.sort_by_key(|c| c.length);
    let lengths: Vec<usize> = cycles.iter().map(|c| c.length).collect();
    if lengths.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Contradiction("two cycles of the family share a length".into()));
    }
    let max_gap = lengths.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
    Ok(CycleFamily::Family {
        cycles,
        lengths,
        max_gap,
        trace,
        label: "construction, not certificate",
    })
}

/// Default step budget for [`cycle_spectrum_bruteforce`].
pub const CYCLE_SPECTRUM_BUDGET: u64 = 200_000_000;

/// All cycle lengths of `g`, by enumerating simple paths from each vertex
/// through larger vertices only.
pub fn cycle_spectrum_bruteforce(g: &Graph, budget: u64) -> Result<BTreeSet<usize>> {
    let n = g.n();
    let mut lengths = BTreeSet::new();
    let mut steps: u64 = 0;
    let mut on_path = vec![false; n];
    for s in 0..n {
        // iterative DFS over simple paths starting at s
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        on_path[s] = true;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            steps += 1;
            if steps > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            let nb = g.neighbors(v);
            if *i < nb.len() {
                let u = nb[*i];
                *i += 1;
                if u == s && stack.len() >= 3 {
                    lengths.insert(stack.len());
                } else if u > s && !on_path[u] {
                    on_path[u] = true;
                    stack.push((u, 0));
                }
            } else {
                on_path[v] = false;
                stack.pop();
            }
        }
        if lengths.len() + 2 == n && n >= 3 {
            break;
        }
    }
    Ok(lengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixtures::*;

    #[test]
    fn dfs_examples() {
        let p = path(5);
        let f = dfs(&p, &natural_sigma(5)).unwrap();
        assert_eq!(f.roots, vec![0]);
        assert_eq!(f.parent, vec![None, Some(0), Some(1), Some(2), Some(3)]);
        let c = cycle(4);
        let f = dfs(&c, &natural_sigma(4)).unwrap();
        assert_eq!(f.parent, vec![None, Some(0), Some(1), Some(2)]);
        assert!(f.is_ancestor(0, 3));
        let two = clique_union(3, 2);
        let f = dfs(&two, &[4, 1, 0, 2, 3, 5]).unwrap();
        assert_eq!(f.roots, vec![4, 1]);
        assert!(dfs(&two, &[0, 0, 1, 2, 3, 4]).is_err());
        assert!(dfs(&two, &[0, 1]).is_err());
    }

    #[test]
    fn long_path_examples() {
        match long_path(&cycle(8), 4, 3, &natural_sigma(8)).unwrap() {
            PathOutcome::Path { length, .. } => assert!(length >= 3),
            w => panic!("{w:?}"),
        }
        let k33 = complete_bipartite(3, 3);
        match long_path(&k33, 3, 3, &natural_sigma(6)).unwrap() {
            PathOutcome::Path { length, .. } => assert!(length >= 3),
            w => panic!("{w:?}"),
        }
        match long_path(&star(7), 4, 3, &natural_sigma(8)).unwrap() {
            PathOutcome::Witness { set, neighborhood } => {
                assert_eq!(set.len(), 4);
                assert!(neighborhood < 3);
                assert_eq!(star(7).neighborhood(&set).len(), neighborhood);
            }
            p => panic!("{p:?}"),
        }
        assert!(long_path(&cycle(4), 4, 1, &natural_sigma(4)).is_err());
    }

    #[test]
    fn long_cycle_examples() {
        match long_cycle(&cycle(9), 4, 2, &natural_sigma(9)).unwrap() {
            CycleOutcome::Cycle { cycle, trace } => {
                assert_eq!(cycle.length, 9);
                assert_eq!(trace.v, 4);
                assert_eq!(trace.v_star, 0);
            }
            o => panic!("{o:?}"),
        }
        match long_cycle(&complete(4), 2, 2, &natural_sigma(4)).unwrap() {
            CycleOutcome::Cycle { cycle, .. } => assert!(cycle.length >= 3),
            o => panic!("{o:?}"),
        }
        match long_cycle(&complete_bipartite(2, 6), 4, 2, &natural_sigma(8)).unwrap() {
            CycleOutcome::Cycle { cycle, .. } => assert_eq!(cycle.length, 4),
            o => panic!("{o:?}"),
        }
        let two = clique_union(3, 3);
        assert!(matches!(
            long_cycle(&two, 4, 2, &natural_sigma(9)).unwrap(),
            CycleOutcome::NoLargeComponent { largest: 3 }
        ));
        match long_cycle(&path(8), 3, 2, &natural_sigma(8)).unwrap() {
            CycleOutcome::Violation { neighborhood, cycle: None, .. } => assert_eq!(neighborhood, 1),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn color_class_examples() {
        let c = cycle(20);
        let e0: Vec<_> = c.edges().collect();
        match path_in_color_class(&c, &e0, 1, 2.0, 10).unwrap() {
            ColorPathOutcome::Path { vertices, length, peel_trace, .. } => {
                assert!(length >= 10);
                assert!(peel_trace.is_empty());
                validate_path(&c, &vertices).unwrap();
            }
            f => panic!("{f:?}"),
        }
        let k8 = complete(8);
        let matching = [(0, 1), (2, 3), (4, 5), (6, 7)];
        match path_in_color_class(&k8, &matching, 4, 7.0, 3).unwrap() {
            ColorPathOutcome::Failure { reason, .. } => assert!(reason.contains("|E0|")),
            p => panic!("{p:?}"),
        }
        // enough edges, but the class is a matching: no path of length 3
        match path_in_color_class(&k8, &matching, 7, 7.0, 3).unwrap() {
            ColorPathOutcome::Failure { .. } => {}
            p => panic!("{p:?}"),
        }
        assert!(path_in_color_class(&k8, &[(0, 1), (1, 0)], 1, 1.0, 2).is_err());
    }

    #[test]
    fn ramsey_demo_runs() {
        let r = ramsey_demo(12, 2, 6.0, Some(200), 3, 3).unwrap();
        assert_eq!(r.trials.len(), 3);
        assert_eq!(r.successes, 3, "{r:?}");
    }

    #[test]
    fn spectrum_oracle() {
        let s = |g: &Graph| cycle_spectrum_bruteforce(g, CYCLE_SPECTRUM_BUDGET).unwrap().into_iter().collect::<Vec<_>>();
        assert_eq!(s(&complete(4)), vec![3, 4]);
        assert_eq!(s(&cycle(7)), vec![7]);
        assert_eq!(s(&complete_bipartite(2, 3)), vec![4]);
        assert_eq!(s(&petersen()), vec![5, 6, 8, 9]);
        assert!(s(&path(6)).is_empty());
        assert!(matches!(cycle_spectrum_bruteforce(&complete(12), 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn cycle_family_examples() {
        match cycle_lengths_family(&cycle(20), 0.25, 0).unwrap() {
            CycleFamily::Family { lengths, .. } => assert_eq!(lengths, vec![20]),
            CycleFamily::Inapplicable { .. } => {}
        }
        let p = petersen();
        let spec = cycle_spectrum_bruteforce(&p, CYCLE_SPECTRUM_BUDGET).unwrap();
        if let CycleFamily::Family { lengths, cycles, .. } = cycle_lengths_family(&p, 0.3, 0).unwrap() {
            for (l, c) in lengths.iter().zip(&cycles) {
                c.validate(&p).unwrap();
                assert!(spec.contains(l));
            }
        }
        let g = crate::generators::gen(&crate::generators::GenSpec::random_regular(1000, 3, 4)).unwrap();
        match cycle_lengths_family(&g, 0.25, 0).unwrap() {
            CycleFamily::Family { cycles, lengths, .. } => {
                assert!(lengths.len() >= 2, "{lengths:?}");
                for c in &cycles {
                    c.validate(&g).unwrap();
                }
            }
            i => panic!("{i:?}"),
        }
    }
}
