//! Vertex-expansion certificates, non-expanding witnesses and separators.


use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::exact::{check_limit, scan, Frac, MaskGraph, MinRatio};
use crate::graph::Graph;
use crate::spectral::{self, cheeger::SWEEP_DENSE_LIMIT};
use crate::vertex_set::VertexSet;

/// Which sets must expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    /// All `U` with `1 <= |U| <= floor(n/2)`.
    Half,
    /// All `U` with `min <= |U| <= max`.
    IndexSet { min: usize, max: usize },
    /// All `U` with `1 <= |U| <= k`.
    UpTo { k: usize },
}

impl Mode {
    /// Inclusive admissible size range on `n` vertices (empty when `lo > hi`).
    pub fn sizes(&self, n: usize) -> (usize, usize) {
        match *self {
            Mode::Half => (1, n / 2),
            Mode::IndexSet { min, max } => (min.max(1), max.min(n)),
            Mode::UpTo { k } => (1, k.min(n)),
        }
    }
}

/// Serializes a ratio, writing `+inf` as the string `"inf"`.
pub fn ser_ratio<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() && *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*x)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionReport {
    pub mode: Mode,
    pub exhaustive: bool,
    /// Exact worst ratio `min |N(U)|/|U|`; `+inf` when no set is admissible.
    /// Equal to `upper` in heuristic mode, where it is only an upper bound.
    #[serde(serialize_with = "ser_ratio")]
    pub alpha_star: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub lower: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub upper: f64,
    pub lower_method: &'static str,
    pub upper_method: &'static str,
    pub witness: Option<VertexSet>,
    pub graph_hash: u64,
}

impl ExpansionReport {
    /// Whether the graph is an `alpha`-expander in this report's mode;
    /// `None` when a heuristic interval straddles `alpha`.
    pub fn verdict(&self, alpha: f64) -> Option<bool> {
        if self.lower >= alpha {
            Some(true)
        } else if self.upper < alpha {
            Some(false)
        } else {
            None
        }
    }
}

/// `|N(U)| / |U|` recomputed from the graph.
pub fn vertex_ratio(g: &Graph, set: &VertexSet) -> f64 {
    g.neighborhood(set).len() as f64 / set.len() as f64
}

/// Exhaustive minimum of `|N(U)|/|U|` over the admissible sets of `mode`.
/// Ties go to the smaller, then lexicographically first, set.
pub fn certify_alpha_exact(g: &Graph, mode: Mode) -> Result<ExpansionReport> {
    check_limit("certify_alpha_exact", g.n(), "certify_heuristic")?;
    let mg = MaskGraph::new(g);
    let best = exact_min_ratio(&mg, mode);
    let n = g.n();
    let (alpha, witness) = match best {
        Some((r, m)) => (r.value(), Some(VertexSet::from_mask(n, m))),
        None => (f64::INFINITY, None),
    };
    Ok(ExpansionReport {
        mode,
        exhaustive: true,
        alpha_star: alpha,
        lower: alpha,
        upper: alpha,
        lower_method: "exact",
        upper_method: "exact",
        witness,
        graph_hash: g.graph_hash(),
    })
}

pub(crate) fn exact_min_ratio(mg: &MaskGraph, mode: Mode) -> Option<(Frac, u64)> {
    let (lo, hi) = mode.sizes(mg.n);
    if lo > hi {
        return None;
    }
    let (lo, hi) = (lo as u32, hi as u32);
    scan(
        mg,
        MinRatio::new,
        |acc, info| {
            if info.size >= lo && info.size <= hi {
                let nb = mg.nbr(info.mask).count_ones() as u64;
                acc.offer(Frac::new(nb, info.size as u64), info.mask);
            }
        },
        MinRatio::merge,
    )
    .best
}

/// Smallest-ratio set among admissible candidates, with the same tie rule
/// as the exact scan.
struct Candidates<'a> {
    g: &'a Graph,
    max: usize,
    best: Option<(Frac, VertexSet)>,
}

impl<'a> Candidates<'a> {
    fn offer(&mut self, set: &VertexSet) {
        if set.is_empty() || set.len() > self.max {
            return;
        }
        let r = Frac::new(self.g.neighborhood(set).len() as u64, set.len() as u64);
        let better = match &self.best {
            None => true,
            Some((b, bs)) => r.cmp(b).then_with(|| set.witness_cmp(bs)).is_lt(),
        };
        if better {
            self.best = Some((r, set.clone()));
        }
    }

    /// Offers `set`, or its complement when `set` is too large.
    fn offer_side(&mut self, set: &VertexSet) {
        if set.len() <= self.max {
            self.offer(set);
        } else {
            self.offer(&set.complement());
        }
    }
}

/// Lowest-ratio admissible set (size at most `max`) among components,
/// sweep-cut sides, BFS balls, and single-vertex local search from the
/// best of those.
pub(crate) fn candidate_search(g: &Graph, max: usize) -> Result<Option<(Frac, VertexSet)>> {
    let n = g.n();
    let mut cands = Candidates { g, max, best: None };
    let comps = g.components();
    for c in &comps {
        cands.offer_side(c);
    }
    let mut sweep_sides = Vec::new();
    for c in comps.iter().filter(|c| c.len() >= 2) {
        let ind = g.induce(c)?;
        if let Ok(cut) = spectral::sweep_cut_with(&ind.graph, SWEEP_DENSE_LIMIT) {
            let side = ind.lift(&cut.cut_set, n);
            cands.offer_side(&side);
            sweep_sides.push(side);
        }
    }
    // balls grown from a spread of centres
    let stride = (n / 64).max(1);
    for v in (0..n).step_by(stride) {
        let dist = g.bfs_distances(v);
        let mut by_layer: Vec<Vec<usize>> = Vec::new();
        for (u, &d) in dist.iter().enumerate() {
            if d != usize::MAX {
                if by_layer.len() <= d {
                    by_layer.resize(d + 1, Vec::new());
                }
                by_layer[d].push(u);
            }
        }
        let mut ball = VertexSet::empty(n);
        for layer in by_layer {
            for u in layer {
                ball.insert(u);
            }
            if ball.len() > max {
                break;
            }
            cands.offer(&ball);
        }
    }
    if let Some((_, start)) = cands.best.clone() {
        local_search(g, &mut cands, start);
    }
    for side in sweep_sides {
        if side.len() <= max {
            local_search(g, &mut cands, side);
        } else if n - side.len() <= max && n > side.len() {
            local_search(g, &mut cands, side.complement());
        }
    }
    Ok(cands.best)
}

/// Upper bounds from candidate witnesses and a spectral lower bound, as an
/// interval on the half-mode `alpha_star`. Never claims exactness.
pub fn certify_heuristic(g: &Graph) -> Result<ExpansionReport> {
    let max = g.n() / 2;
    let best = candidate_search(g, max)?;
    let connected = g.is_connected();
    let cands = Candidates { g, max, best };
    let (upper, witness, upper_method) = match &cands.best {
        Some((r, s)) => (r.value(), Some(s.clone()), "best_candidate"),
        None => (f64::INFINITY, None, "no_admissible_set"),
    };
    let (lower, lower_method) = if max == 0 {
        (f64::INFINITY, "no_admissible_set")
    } else if !connected || g.m() == 0 {
        (0.0, "disconnected")
    } else {
        spectral_lower(g)?
    };
    Ok(ExpansionReport {
        mode: Mode::Half,
        exhaustive: false,
        alpha_star: upper,
        lower,
        upper,
        lower_method,
        upper_method,
        witness,
        graph_hash: g.graph_hash(),
    })
}

/// `max{(d - lambda_2)/(2d) if regular, mu_1 delta / (2 Delta)}`.
fn spectral_lower(g: &Graph) -> Result<(f64, &'static str)> {
    let s = spectral::spectrum(g)?;
    let mu = s.laplacian_mu.unwrap_or(0.0).max(0.0);
    let general = mu * g.min_degree() as f64 / (2.0 * g.max_degree() as f64);
    let mut out = (general, "cheeger_vertex");
    if let (Some(d), Some(l2)) = (s.d, s.lambda2()) {
        let reg = ((d as f64 - l2) / (2.0 * d as f64)).max(0.0);
        if reg > out.0 {
            out = (reg, "regular_eigenvalue");
        }
    }
    // guard against rounding above the true value
    out.0 = (out.0 - 1e-9).max(0.0);
    Ok(out)
}

/// Greedy single-vertex moves (add a boundary vertex, drop a member)
/// while they lower the ratio.
fn local_search(g: &Graph, cands: &mut Candidates, start: VertexSet) {
    let mut cur = start;
    let mut cur_r = Frac::new(g.neighborhood(&cur).len() as u64, cur.len() as u64);
    for _ in 0..64 {
        let mut improved = None;
        let nb = g.neighborhood(&cur);
        let moves = nb.iter().map(|v| (v, true)).chain(cur.iter().map(|v| (v, false)));
        for (v, add) in moves {
            let mut t = cur.clone();
            if add {
                if t.len() == cands.max {
                    continue;
                }
                t.insert(v);
            } else {
                if t.len() == 1 {
                    continue;
                }
                t.remove(v);
            }
            let r = Frac::new(g.neighborhood(&t).len() as u64, t.len() as u64);
            if r.cmp(&cur_r).is_lt() && improved.as_ref().is_none_or(|(br, _): &(Frac, VertexSet)| r.cmp(br).is_lt()) {
                improved = Some((r, t));
            }
        }
        match improved {
            Some((r, t)) => {
                cands.offer(&t);
                cur = t;
                cur_r = r;
            }
            None => break,
        }
    }
}

/// A partition `(A, S, B)` of the vertices with no `A`-`B` edges and both
/// sides of size at most `floor(2n/3)`.
#[derive(Clone, Debug, Serialize)]
pub struct Separator {
    pub a: VertexSet,
    pub s: VertexSet,
    pub b: VertexSet,
}

/// Side cap for separators.
pub fn separator_side_cap(n: usize) -> usize {
    2 * n / 3
}

impl Separator {
    /// Validates the partition and side conditions.
    pub fn new(g: &Graph, a: VertexSet, s: VertexSet, b: VertexSet) -> Result<Separator> {
        let n = g.n();
        if a.universe() != n || s.universe() != n || b.universe() != n {
            return invalid("separator parts over the wrong universe");
        }
        if !a.is_disjoint(&s) || !a.is_disjoint(&b) || !s.is_disjoint(&b) {
            return invalid("separator parts overlap");
        }
        if a.len() + s.len() + b.len() != n {
            return invalid("separator parts do not cover the vertex set");
        }
        let cap = separator_side_cap(n);
        if a.len() > cap || b.len() > cap {
            return invalid(format!(
                "separator side sizes {} and {} exceed {cap}",
                a.len(),
                b.len()
            ));
        }
        if g.edges_between(&a, &b) > 0 {
            return invalid("separator has an edge between A and B");
        }
        Ok(Separator { a, s, b })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparatorReport {
    pub separator: Separator,
    pub size: usize,
    /// True when `size` is the exact minimum.
    pub exhaustive: bool,
    pub method: &'static str,
}

/// Largest graph searched exhaustively for a minimum separator.
pub const SEPARATOR_EXACT_LIMIT: usize = 20;

/// Minimum separator by enumeration up to [`SEPARATOR_EXACT_LIMIT`]
/// vertices, otherwise the best one found from sweep and BFS orderings.
pub fn find_separator(g: &Graph) -> Result<SeparatorReport> {
    if g.n() <= SEPARATOR_EXACT_LIMIT {
        exact_separator(g)
    } else {
        heuristic_separator(g)
    }
}

/// Splits components (given as sizes) into two bins of size at most `cap`,
/// as balanced as possible. Returns the component indices for side A.
fn pack_components(sizes: &[usize], cap: usize) -> Option<Vec<usize>> {
    let total: usize = sizes.iter().sum();
    // reach[i][s]: some subset of the first i components sums to s
    let mut reach = vec![vec![false; total + 1]; sizes.len() + 1];
    reach[0][0] = true;
    for (i, &c) in sizes.iter().enumerate() {
        for s in 0..=total {
            if reach[i][s] {
                reach[i + 1][s] = true;
                reach[i + 1][s + c] = true;
            }
        }
    }
    let target = (0..=total.min(cap))
        .filter(|&s| reach[sizes.len()][s] && total - s <= cap)
        .min_by_key(|&s| ((2 * s) as isize - total as isize).unsigned_abs())?;
    let mut picked = Vec::new();
    let mut s = target;
    for i in (0..sizes.len()).rev() {
        if !reach[i][s] {
            picked.push(i);
            s -= sizes[i];
        }
    }
    Some(picked)
}

fn split_rest(g: &Graph, s: &VertexSet) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let rest = s.complement();
    let mut comps: Vec<VertexSet> = Vec::new();
    let mut seen = s.clone();
    for v in rest.iter() {
        if seen.contains(v) {
            continue;
        }
        let (dist, _) = g.bfs_within(&[v], &rest);
        let c = VertexSet::from_iter(n, (0..n).filter(|&u| dist[u] != usize::MAX));
        seen.union_with(&c);
        comps.push(c);
    }
    let sizes: Vec<usize> = comps.iter().map(VertexSet::len).collect();
    let picked = pack_components(&sizes, separator_side_cap(n))?;
    let mut a = VertexSet::empty(n);
    for i in picked {
        a.union_with(&comps[i]);
    }
    let b = rest.difference(&a);
    Some((a, b))
}

/// Minimum `|S|`; among those the most balanced split, then the
/// lexicographically first `S`.
pub fn exact_separator(g: &Graph) -> Result<SeparatorReport> {
    let n = g.n();
    if n > SEPARATOR_EXACT_LIMIT {
        return Err(Error::ExactLimit {
            op: "exact_separator",
            n,
            limit: SEPARATOR_EXACT_LIMIT,
            alternative: "heuristic_separator",
        });
    }
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        let mut best: Option<(usize, VertexSet, VertexSet, VertexSet)> = None;
        loop {
            let s = VertexSet::from_iter(n, idx.iter().copied());
            if let Some((a, b)) = split_rest(g, &s) {
                let larger = a.len().max(b.len());
                if best.as_ref().is_none_or(|(l, ..)| larger < *l) {
                    best = Some((larger, a, s, b));
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        if let Some((_, a, s, b)) = best {
            return Ok(SeparatorReport {
                separator: Separator::new(g, a, s, b)?,
                size: k,
                exhaustive: true,
                method: "exact",
            });
        }
    }
    Err(Error::Contradiction("no separator, not even S = V".into()))
}

/// Advances a sorted index combination in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Scans prefixes `P` of a vertex order with `S = N(P)`.
fn best_prefix_separator(g: &Graph, order: &[usize], best: &mut Option<(usize, VertexSet)>) {
    let n = g.n();
    let cap = separator_side_cap(n);
    let mut in_p = vec![false; n];
    let mut cnt = vec![0usize; n];
    let mut s_size = 0usize;
    let mut best_here: Option<(usize, usize)> = None;
    for (k, &v) in order.iter().enumerate() {
        if cnt[v] > 0 {
            s_size -= 1;
        }
        in_p[v] = true;
        for &w in g.neighbors(v) {
            if !in_p[w] {
                if cnt[w] == 0 {
                    s_size += 1;
                }
                cnt[w] += 1;
            }
        }
        let a = k + 1;
        let b = n - a - s_size;
        if a <= cap && b <= cap && best_here.is_none_or(|(s, _)| s_size < s) {
            best_here = Some((s_size, a));
        }
    }
    if let Some((s, len)) = best_here {
        if best.as_ref().is_none_or(|(bs, _)| s < *bs) {
            *best = Some((s, VertexSet::from_iter(n, order[..len].iter().copied())));
        }
    }
}

/// Best separator over sweep and BFS orderings; never claims minimality.
pub fn heuristic_separator(g: &Graph) -> Result<SeparatorReport> {
    let n = g.n();
    let mut best: Option<(usize, VertexSet)> = None;
    if let Some((a, b)) = split_rest(g, &VertexSet::empty(n)) {
        let separator = Separator::new(g, a, VertexSet::empty(n), b)?;
        return Ok(SeparatorReport {
            separator,
            size: 0,
            exhaustive: true,
            method: "components",
        });
    }
    let comps = g.components();
    let giant = comps.iter().max_by_key(|c| c.len()).expect("n > 0");
    let ind = g.induce(giant)?;
    if let Ok(f) = spectral::fiedler(&ind.graph, SWEEP_DENSE_LIMIT, 0) {
        let mut order: Vec<usize> = (0..ind.graph.n()).collect();
        let score = |v: usize| f.vector[v] / (ind.graph.degree(v).max(1) as f64).sqrt();
        order.sort_by(|&a, &b| score(a).total_cmp(&score(b)).then(a.cmp(&b)));
        let mut full: Vec<usize> = order.iter().map(|&v| ind.map[v]).collect();
        let rev: Vec<usize> = full.iter().rev().copied().collect();
        full.extend(giant.complement().iter());
        best_prefix_separator(g, &full, &mut best);
        let mut rev_full = rev;
        rev_full.extend(giant.complement().iter());
        best_prefix_separator(g, &rev_full, &mut best);
    }
    let stride = (n / 16).max(1);
    for v in giant.iter().step_by(stride) {
        let allowed = VertexSet::full(n);
        let (dist, _) = g.bfs_within(&[v], &allowed);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&u| (dist[u], u));
        best_prefix_separator(g, &order, &mut best);
    }
    let (a, s) = match best {
        Some((_, p)) => {
            let s = g.neighborhood(&p);
            (p, s)
        }
        None => {
            // A = first floor(2n/3) vertices in BFS order, B empty
            let cap = separator_side_cap(n);
            let (dist, _) = g.bfs_within(&[0], &VertexSet::full(n));
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&u| (dist[u], u));
            let a = VertexSet::from_iter(n, order[..cap].iter().copied());
            let s = a.complement();
            (a, s)
        }
    };
    let b = a.union(&s).complement();
    let size = s.len();
    Ok(SeparatorReport {
        separator: Separator::new(g, a, s, b)?,
        size,
        exhaustive: false,
        method: "prefix_orders",
    })
}

/// `|S| >= alpha* n / (3 (1 + alpha*))` against an exhaustive report.
pub fn check_separator_bound(g: &Graph, sep: &Separator, report: &ExpansionReport) -> Result<bool> {
    if !report.exhaustive {
        return invalid("check_separator_bound needs an exhaustive expansion report");
    }
    let n = g.n() as f64;
    let a = report.alpha_star;
    let bound = if a.is_infinite() { n / 3.0 } else { a * n / (3.0 * (1.0 + a)) };
    Ok(sep.s.len() as f64 >= bound - 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixtures::*;

    #[test]
    fn exact_examples() {
        let r = certify_alpha_exact(&cycle(8), Mode::Half).unwrap();
        assert_eq!(r.alpha_star, 0.5);
        assert_eq!(r.witness.as_ref().unwrap().len(), 4);
        assert!(g_is_arc(&r.witness.unwrap()));

        let r = certify_alpha_exact(&clique_union(3, 2), Mode::Half).unwrap();
        assert_eq!(r.alpha_star, 0.0);
        assert_eq!(r.witness.unwrap().to_vec(), vec![0, 1, 2]);

        let r = certify_alpha_exact(&complete_bipartite(2, 6), Mode::Half).unwrap();
        assert_eq!(r.alpha_star, 0.5);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.iter().all(|v| v >= 2));

        let r = certify_alpha_exact(&cycle(8), Mode::UpTo { k: 0 }).unwrap();
        assert!(r.alpha_star.is_infinite());
        assert_eq!(serde_json::to_value(&r).unwrap()["alpha_star"], "inf");
        assert!(certify_alpha_exact(&cycle(23), Mode::Half).is_err());
    }

    fn g_is_arc(w: &VertexSet) -> bool {
        cycle(8).is_connected_set(w)
    }

    #[test]
    fn heuristic_interval() {
        let g = barbell(8);
        let h = certify_heuristic(&g).unwrap();
        assert!((h.upper - 1.0 / 8.0).abs() < 1e-12);
        assert!(h.lower <= h.upper);
        let d = certify_heuristic(&clique_union(4, 2)).unwrap();
        assert_eq!(d.upper, 0.0);
        for g in [cycle(12), petersen(), complete_bipartite(3, 5)] {
            let e = certify_alpha_exact(&g, Mode::Half).unwrap().alpha_star;
            let h = certify_heuristic(&g).unwrap();
            assert!(h.lower <= e + 1e-12 && e <= h.upper + 1e-12, "{e} vs {h:?}");
        }
    }

    #[test]
    fn separator_examples() {
        let r = find_separator(&path(9)).unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(r.separator.s.to_vec(), vec![4]);
        let r = find_separator(&cycle(8)).unwrap();
        assert_eq!(r.size, 2);
        let r = find_separator(&complete(6)).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(r.separator.a.len() + r.separator.b.len(), 4);
        let r = find_separator(&complete_bipartite(2, 6)).unwrap();
        assert_eq!(r.size, 2);
    }

    #[test]
    fn separator_validation() {
        let g = path(3);
        let s = |v: &[usize]| VertexSet::from_iter(3, v.iter().copied());
        assert!(Separator::new(&g, s(&[0]), s(&[1]), s(&[2])).is_ok());
        assert!(Separator::new(&g, s(&[0]), s(&[]), s(&[1, 2])).is_err());
        assert!(Separator::new(&g, s(&[0, 1]), s(&[1]), s(&[2])).is_err());
    }

    #[test]
    fn separator_bound() {
        let g = cycle(8);
        let rep = certify_alpha_exact(&g, Mode::Half).unwrap();
        let sep = find_separator(&g).unwrap().separator;
        assert!(check_separator_bound(&g, &sep, &rep).unwrap());
        let h = certify_heuristic(&g).unwrap();
        assert!(check_separator_bound(&g, &sep, &h).is_err());
    }

    #[test]
    fn heuristic_separator_on_large_path() {
        let g = path(60);
        let r = find_separator(&g).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.size, 1);
    }
}
