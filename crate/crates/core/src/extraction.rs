//! Large expanding induced subgraphs: deletion loops, the medium-set
//! alternative, extraction from locally sparse graphs, and the pipeline for
//! supercritical random graphs.

use serde::{Serialize, Serializer};

use crate::certification::{
    candidate_search, certify_alpha_exact, certify_heuristic, exact_min_ratio, ExpansionReport,
    Mode,
};
use crate::error::{invalid, Error, Result};
use crate::exact::{check_limit, scan, Frac, MaskGraph, EXACT_LIMIT};
use crate::generators::{check_locally_sparse, default_sparse_beta, gen, GenSpec, SparsityReport};
use crate::graph::Graph;
use crate::spectral::{self, cheeger::sweep_from_fiedler, mu_lower_floor, EigenMethod};
use crate::vertex_set::{mask_witness_cmp, VertexSet};

/// Writes `Some(+inf)` as `"inf"`.
fn ser_opt_ratio<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::certification::ser_ratio(v, s),
        None => s.serialize_none(),
    }
}

fn check_ratio(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return invalid(format!("{name} must be a positive finite number, got {x}"));
    }
    Ok(())
}

/// How non-expanding sets are found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Finder {
    /// Exhaustive scan of the current graph (at most 22 vertices).
    Exact,
    /// Components, sweep-cut sides, balls and local swaps.
    Heuristic,
}

/// Threshold, size cap and stop rule of a deletion loop.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum DeletionRule {
    /// Delete `|A| <= |V'|/2` with `|N(A)| < alpha |A|`; fails once `|Z| >= n/3`.
    Balanced { alpha: f64 },
    /// Delete `|A| <= alpha k / 3` with `|N(A)| < alpha |A| / 3`; fails once `|Z| >= k`.
    SmallSets { alpha: f64, k: usize },
    /// Delete `|A| <= |V'|/2` with `|N(A)| < (3 beta / 2) |A|`; fails once `|Z| >= n/3`.
    SeparatorFree { beta: f64 },
    /// Same sets as `Balanced` with no stop rule.
    Plain { alpha: f64 },
}

impl DeletionRule {
    pub fn threshold(&self) -> f64 {
        match *self {
            DeletionRule::Balanced { alpha } | DeletionRule::Plain { alpha } => alpha,
            DeletionRule::SmallSets { alpha, .. } => alpha / 3.0,
            DeletionRule::SeparatorFree { beta } => 1.5 * beta,
        }
    }

    /// Largest deletable set in a current graph on `n_cur` vertices.
    pub fn cap(&self, n_cur: usize) -> usize {
        let c = match *self {
            DeletionRule::SmallSets { alpha, k } => (alpha * k as f64 / 3.0 + 1e-9).floor() as usize,
            _ => n_cur / 2,
        };
        c.min(n_cur.saturating_sub(1))
    }

    /// The mode in which the survivor expands.
    pub fn survivor_mode(&self) -> Mode {
        match *self {
            DeletionRule::SmallSets { alpha, k } => Mode::UpTo {
                k: (alpha * k as f64 / 3.0 + 1e-9).floor() as usize,
            },
            _ => Mode::Half,
        }
    }

    /// Whether a union of deleted sets of size `z` on an `n`-vertex input
    /// is one the argument rules out.
    fn forbidden(&self, z: usize, n: usize) -> bool {
        match *self {
            DeletionRule::Balanced { .. } | DeletionRule::SeparatorFree { .. } => 3 * z >= n,
            DeletionRule::SmallSets { k, .. } => z >= k,
            DeletionRule::Plain { .. } => false,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            DeletionRule::Balanced { alpha } | DeletionRule::Plain { alpha } => check_ratio("alpha", alpha),
            DeletionRule::SmallSets { alpha, k } => {
                check_ratio("alpha", alpha)?;
                if alpha > 1.0 {
                    return invalid("the one-point rule needs alpha <= 1");
                }
                if k == 0 {
                    return invalid("the one-point rule needs k >= 1");
                }
                Ok(())
            }
            DeletionRule::SeparatorFree { beta } => check_ratio("beta", beta),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certified {
    Exact,
    Heuristic,
    Uncertified,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractionTrace {
    pub rule: DeletionRule,
    pub finder: Finder,
    /// In deletion order, as vertex ids of the input graph.
    pub deleted_sets: Vec<VertexSet>,
    pub z_total: VertexSet,
    pub survivor: VertexSet,
    /// The deletion threshold on `|N(A)| / |A|`.
    pub target_alpha: f64,
    pub certified: Certified,
    /// Worst ratio of the survivor in the rule's mode, when computed.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub survivor_alpha: Option<f64>,
    pub iterations: usize,
}

impl ExtractionTrace {
    /// Re-executes the recorded deletions on `g`, checking that each set was
    /// deletable at its turn, and returns the resulting survivor.
    pub fn replay(&self, g: &Graph) -> Result<VertexSet> {
        let n = g.n();
        let t = self.rule.threshold();
        let mut alive = VertexSet::full(n);
        for (i, a) in self.deleted_sets.iter().enumerate() {
            if a.universe() != n {
                return invalid("trace universe does not match the graph");
            }
            if a.is_empty() || !a.is_subset(&alive) {
                return Err(Error::Contradiction(format!("deleted set {i} is empty or not alive")));
            }
            if a.len() > self.rule.cap(alive.len()) {
                return Err(Error::Contradiction(format!("deleted set {i} exceeds the size cap")));
            }
            let nb = g.neighborhood(a).intersection(&alive).len();
            if nb as f64 >= t * a.len() as f64 {
                return Err(Error::Contradiction(format!("deleted set {i} expands at its turn")));
            }
            alive.difference_with(a);
        }
        if alive != self.survivor {
            return Err(Error::Contradiction("replayed survivor differs from the trace".into()));
        }
        Ok(alive)
    }
}

/// Worst admissible set of `sub` when its ratio is below `t`.
fn find_deletable(sub: &Graph, t: f64, cap: usize, finder: Finder) -> Result<Option<VertexSet>> {
    if cap == 0 {
        return Ok(None);
    }
    let n = sub.n();
    let best = match finder {
        Finder::Exact => {
            exact_min_ratio(&MaskGraph::new(sub), Mode::UpTo { k: cap }).map(|(r, m)| (r, VertexSet::from_mask(n, m)))
        }
        Finder::Heuristic => candidate_search(sub, cap)?,
    };
    Ok(best.filter(|(r, _)| (r.num as f64) < t * r.den as f64).map(|(_, s)| s))
}

/// Repeatedly deletes a set that fails to expand in the current graph.
///
/// With the exact finder the survivor is re-certified exhaustively in the
/// rule's mode; a certificate below the threshold is reported as a
/// contradiction.
pub fn delete_nonexpanding(g: &Graph, rule: DeletionRule, finder: Finder) -> Result<ExtractionTrace> {
    rule.validate()?;
    let n = g.n();
    if finder == Finder::Exact {
        check_limit("delete_nonexpanding", n, "the heuristic finder")?;
    }
    let t = rule.threshold();
    let mut alive = VertexSet::full(n);
    let mut deleted: Vec<VertexSet> = Vec::new();
    let mut z = VertexSet::empty(n);
    while !alive.is_empty() {
        let ind = g.induce(&alive)?;
        let Some(a) = find_deletable(&ind.graph, t, rule.cap(alive.len()), finder)? else {
            break;
        };
        let a = ind.lift(&a, n);
        alive.difference_with(&a);
        z.union_with(&a);
        deleted.push(a);
        if rule.forbidden(z.len(), n) {
            return Err(Error::Contradiction(format!(
                "{rule:?}: deleted {} of {n} vertices after {} steps",
                z.len(),
                deleted.len()
            )));
        }
    }
    let (certified, survivor_alpha) = certify_survivor(g, &alive, rule, finder)?;
    Ok(ExtractionTrace {
        rule,
        finder,
        iterations: deleted.len(),
        deleted_sets: deleted,
        z_total: z,
        survivor: alive,
        target_alpha: t,
        certified,
        survivor_alpha,
    })
}

fn certify_survivor(g: &Graph, alive: &VertexSet, rule: DeletionRule, finder: Finder) -> Result<(Certified, Option<f64>)> {
    if alive.is_empty() {
        return Ok((Certified::Uncertified, None));
    }
    let sub = g.induce(alive)?.graph;
    let t = rule.threshold();
    match finder {
        Finder::Exact => {
            let rep = certify_alpha_exact(&sub, rule.survivor_mode())?;
            if rep.alpha_star < t - 1e-12 {
                return Err(Error::Contradiction(format!(
                    "survivor re-certifies at {} below the threshold {t}",
                    rep.alpha_star
                )));
            }
            Ok((Certified::Exact, Some(rep.alpha_star)))
        }
        Finder::Heuristic if rule.survivor_mode() == Mode::Half => {
            let rep = certify_heuristic(&sub)?;
            let c = if rep.lower >= t { Certified::Heuristic } else { Certified::Uncertified };
            Ok((c, Some(rep.upper)))
        }
        Finder::Heuristic => Ok((Certified::Uncertified, None)),
    }
}

/// The two alternatives for a `(k, alpha)`-expander.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum MediumSetOutcome {
    /// Every set of size at most `k` expands by at least `alpha`.
    Verdict {
        k: usize,
        alpha: f64,
        /// Exact worst ratio over sizes `1..=k`.
        #[serde(serialize_with = "crate::certification::ser_ratio")]
        alpha_star: f64,
    },
    /// `G[vertices]` is an `alpha`-expander.
    Subgraph {
        vertices: VertexSet,
        /// The poorly expanding set the subgraph was extracted from.
        x: Option<VertexSet>,
        trace: Option<ExtractionTrace>,
        alpha: f64,
        #[serde(serialize_with = "crate::certification::ser_ratio")]
        alpha_star: f64,
    },
}

/// Either a `(3k/2, alpha/6)`-expansion verdict or an `(alpha/2)`-expanding
/// induced subgraph on at least `2k/3` vertices. Exact mode only.
pub fn medium_set_expander(g: &Graph, k: usize, alpha: f64) -> Result<MediumSetOutcome> {
    check_ratio("alpha", alpha)?;
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let n = g.n();
    check_limit("medium_set_expander", n, "certify_heuristic")?;
    let pre = certify_alpha_exact(g, Mode::UpTo { k })?;
    if pre.alpha_star < alpha {
        let w = pre.witness.expect("a finite ratio has a witness");
        return invalid(format!(
            "not a ({k}, {alpha})-expander: {w} has |N| / |U| = {}",
            pre.alpha_star
        ));
    }
    if n <= 2 * k {
        let rep = certify_alpha_exact(g, Mode::Half)?;
        return Ok(MediumSetOutcome::Subgraph {
            vertices: VertexSet::full(n),
            x: None,
            trace: None,
            alpha,
            alpha_star: rep.alpha_star,
        });
    }
    let k2 = 3 * k / 2;
    let mg = MaskGraph::new(g);
    let found = exact_min_ratio(&mg, Mode::IndexSet { min: k + 1, max: k2 })
        .filter(|(r, _)| (r.num as f64) < alpha / 6.0 * r.den as f64);
    match found {
        Some((_, mask)) => {
            let x = VertexSet::from_mask(n, mask);
            let ind = g.induce(&x)?;
            let trace = delete_nonexpanding(&ind.graph, DeletionRule::Balanced { alpha: alpha / 2.0 }, Finder::Exact)?;
            let vertices = ind.lift(&trace.survivor, n);
            let alpha_star = trace.survivor_alpha.expect("exact survivor is certified");
            Ok(MediumSetOutcome::Subgraph {
                vertices,
                x: Some(x),
                trace: Some(trace),
                alpha: alpha / 2.0,
                alpha_star,
            })
        }
        None => {
            let rep = certify_alpha_exact(g, Mode::UpTo { k: k2 })?;
            Ok(MediumSetOutcome::Verdict {
                k: k2,
                alpha: alpha / 6.0,
                alpha_star: rep.alpha_star,
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OnePointReport {
    /// Vertices removed by the one-point deletion loop.
    pub z: VertexSet,
    /// `(k, alpha)` after the deletion loop and after each verdict.
    pub stages: Vec<(usize, f64)>,
    pub vertices: VertexSet,
    /// Expansion guaranteed for `G[vertices]`.
    pub alpha: f64,
    #[serde(serialize_with = "crate::certification::ser_ratio")]
    pub alpha_star: f64,
}

/// From one-point expansion at size `k` to an induced expander: the
/// one-point deletion loop, then the medium-set alternative until it yields
/// a subgraph. Exact mode only.
pub fn expander_from_one_point(g: &Graph, k: usize, alpha: f64) -> Result<OnePointReport> {
    let n = g.n();
    check_limit("expander_from_one_point", n, "delete_nonexpanding with the heuristic finder")?;
    check_ratio("alpha", alpha)?;
    if k == 0 || k > n {
        return invalid(format!("k = {k} is not a set size of an {n}-vertex graph"));
    }
    let pre = certify_alpha_exact(g, Mode::IndexSet { min: k, max: k })?;
    if pre.alpha_star < alpha {
        let w = pre.witness.expect("k-sets exist");
        return invalid(format!("not a ({{{k}}}, {alpha})-expander: {w} has |N| / |U| = {}", pre.alpha_star));
    }
    let trace = delete_nonexpanding(g, DeletionRule::SmallSets { alpha, k }, Finder::Exact)?;
    let ind = g.induce(&trace.survivor)?;
    let (mut kc, mut ac) = ((alpha * k as f64 / 3.0 + 1e-9).floor() as usize, alpha / 3.0);
    if kc < 2 {
        return invalid("alpha k / 3 must be at least 2 for the size to grow");
    }
    let mut stages = vec![(kc, ac)];
    loop {
        match medium_set_expander(&ind.graph, kc, ac)? {
            MediumSetOutcome::Verdict { k, alpha, .. } => {
                kc = k;
                ac = alpha;
                stages.push((kc, ac));
            }
            MediumSetOutcome::Subgraph { vertices, alpha, alpha_star, .. } => {
                return Ok(OnePointReport {
                    z: trace.z_total,
                    stages,
                    vertices: ind.lift(&vertices, n),
                    alpha,
                    alpha_star,
                });
            }
        }
    }
}

/// `max(1, ceil(log2(1 / beta)))`.
fn descent_cap(beta: f64) -> usize {
    ((1.0 / beta).log2() - 1e-12).ceil().max(1.0) as usize
}

fn density(g: &Graph, set: &VertexSet) -> f64 {
    g.internal_edges(set) as f64 / set.len() as f64
}

#[derive(Clone, Debug, Serialize)]
pub struct SparseExtraction {
    pub finder: Finder,
    pub vertices: VertexSet,
    /// `min(delta, c1 - c2 - (L - 1) delta) / delta_max`, i.e.
    /// `(c1 - c2) / (delta_max L)` for the default step.
    pub claimed_alpha: f64,
    /// Density step per descent.
    pub delta: f64,
    /// `L = ceil(log2(1 / beta))`, the descent cap.
    pub descent_cap: usize,
    /// The vertex set entered at each descent.
    pub descents: Vec<VertexSet>,
    pub final_threshold: f64,
    pub hypothesis: SparsityReport,
    pub certificate: ExpansionReport,
    /// Whether `|vertices| >= beta n`.
    pub size_ok: bool,
    /// Certificate verdict at `claimed_alpha` (`None` if inconclusive).
    pub claim_holds: Option<bool>,
}

/// Expander extraction from a graph of density at least `c1` in which small
/// sets are sparse.
///
/// Exact mode (at most 20 vertices) takes a minimum-size induced subgraph of
/// density at least the current threshold, then descends into a denser
/// medium-size subset when one exists. Heuristic mode peels to minimum degree
/// `ceil(threshold)` and looks for medium subsets among components and
/// sweep-cut sides.
pub fn extract_from_locally_sparse(
    g: &Graph,
    c1: f64,
    c2: f64,
    beta: f64,
    delta_max: usize,
    finder: Finder,
) -> Result<SparseExtraction> {
    check_ratio("c2", c2)?;
    if !(c1 > c2) || !c1.is_finite() {
        return invalid("need c1 > c2");
    }
    if !(beta > 0.0 && beta < 1.0) {
        return invalid("beta must lie in (0, 1)");
    }
    let n = g.n();
    if n == 0 || (g.m() as f64) < c1 * n as f64 * (1.0 - 1e-12) {
        return invalid(format!("edge density {} is below c1 = {c1}", g.m() as f64 / n.max(1) as f64));
    }
    if g.max_degree() > delta_max {
        return invalid(format!("max degree {} exceeds {delta_max}", g.max_degree()));
    }
    if finder == Finder::Exact && n > LOCALLY_SPARSE_EXACT_LIMIT {
        return Err(Error::ExactLimit {
            op: "extract_from_locally_sparse",
            n,
            limit: LOCALLY_SPARSE_EXACT_LIMIT,
            alternative: "the heuristic finder",
        });
    }
    let l = descent_cap(beta);
    let delta = (c1 - c2) / l as f64;
    let claimed_alpha = delta.min(c1 - c2 - (l - 1) as f64 * delta) / delta_max as f64;
    let hypothesis = check_locally_sparse(g, c2, beta, 1 << 22);
    let beta_n = beta * n as f64;

    let mut c = c1;
    let mut w = VertexSet::full(n);
    let mut descents = Vec::new();
    let h = loop {
        let h = match finder {
            Finder::Exact => min_dense_subset(g, &w, c),
            Finder::Heuristic => peel(g, &w, (c - 1e-9).ceil() as usize),
        };
        if h.is_empty() {
            return Err(Error::Hypothesis(format!("no induced subgraph of density {c} remains")));
        }
        let u = match finder {
            Finder::Exact => densest_medium_exact(g, &h, beta_n, c - delta),
            Finder::Heuristic => densest_medium_heuristic(g, &h, beta_n, c - delta)?,
        };
        match u {
            Some(u) => {
                if descents.len() == l {
                    return Err(Error::Contradiction(format!("density descent exceeded {l} rounds")));
                }
                descents.push(u.clone());
                w = u;
                c -= delta;
            }
            None => break h,
        }
    };
    let sub = g.induce(&h)?.graph;
    let certificate = if sub.n() <= EXACT_LIMIT {
        certify_alpha_exact(&sub, Mode::Half)?
    } else {
        certify_heuristic(&sub)?
    };
    Ok(SparseExtraction {
        finder,
        size_ok: h.len() as f64 >= beta_n,
        claim_holds: certificate.verdict(claimed_alpha),
        vertices: h,
        claimed_alpha,
        delta,
        descent_cap: l,
        descents,
        final_threshold: c,
        hypothesis,
        certificate,
    })
}

/// Exact mode of [`extract_from_locally_sparse`] works on at most this many vertices.
pub const LOCALLY_SPARSE_EXACT_LIMIT: usize = 20;

fn meets(internal: u32, size: u32, c: f64) -> bool {
    internal as f64 >= c * size as f64 - 1e-9
}

/// Smallest (then lexicographically first) non-empty subset of `w` spanning
/// at least `c` edges per vertex; empty when none exists.
fn min_dense_subset(g: &Graph, w: &VertexSet, c: f64) -> VertexSet {
    let n = g.n();
    let wm = w.to_mask();
    let mg = MaskGraph::new(g);
    let best = scan(
        &mg,
        || None::<u64>,
        |acc, info| {
            if info.mask != 0 && info.mask & !wm == 0 && meets(info.internal, info.size, c) {
                if acc.is_none_or(|b| mask_witness_cmp(info.mask, b).is_lt()) {
                    *acc = Some(info.mask);
                }
            }
        },
        |a, b| match (a, b) {
            (Some(x), Some(y)) => Some(if mask_witness_cmp(x, y).is_lt() { x } else { y }),
            (x, y) => x.or(y),
        },
    );
    VertexSet::from_mask(n, best.unwrap_or(0))
}

/// Densest subset `U` of `h` with `beta_n < |U| <= |h|/2` spanning at least
/// `c |U|` edges (ties: smaller, then lexicographically first).
fn densest_medium_exact(g: &Graph, h: &VertexSet, beta_n: f64, c: f64) -> Option<VertexSet> {
    let n = g.n();
    let hm = h.to_mask();
    let hi = (h.len() / 2) as u32;
    let mg = MaskGraph::new(g);
    let better = |a: (Frac, u64), b: (Frac, u64)| b.0.cmp(&a.0).then_with(|| mask_witness_cmp(a.1, b.1)).is_lt();
    let best = scan(
        &mg,
        || None::<(Frac, u64)>,
        |acc, info| {
            if info.mask & !hm == 0
                && info.size <= hi
                && info.size as f64 > beta_n
                && meets(info.internal, info.size, c)
            {
                let cand = (Frac::new(info.internal as u64, info.size as u64), info.mask);
                if acc.is_none_or(|b| better(cand, b)) {
                    *acc = Some(cand);
                }
            }
        },
        |a, b| match (a, b) {
            (Some(x), Some(y)) => Some(if better(x, y) { x } else { y }),
            (x, y) => x.or(y),
        },
    );
    best.map(|(_, m)| VertexSet::from_mask(n, m))
}

/// Repeatedly removes vertices of `w` with fewer than `k` neighbours in the
/// remaining set.
fn peel(g: &Graph, w: &VertexSet, k: usize) -> VertexSet {
    let mut alive = w.clone();
    let mut deg: Vec<usize> = (0..g.n())
        .map(|v| if w.contains(v) { g.neighbors(v).iter().filter(|&&u| w.contains(u)).count() } else { 0 })
        .collect();
    let mut stack: Vec<usize> = w.iter().filter(|&v| deg[v] < k).collect();
    while let Some(v) = stack.pop() {
        if !alive.contains(v) {
            continue;
        }
        alive.remove(v);
        for &u in g.neighbors(v) {
            if alive.contains(u) {
                deg[u] -= 1;
                if deg[u] + 1 == k {
                    stack.push(u);
                }
            }
        }
    }
    alive
}

fn densest_medium_heuristic(g: &Graph, h: &VertexSet, beta_n: f64, c: f64) -> Result<Option<VertexSet>> {
    let n = g.n();
    let ind = g.induce(h)?;
    let comps = ind.graph.components();
    let mut sides: Vec<VertexSet> = Vec::new();
    if comps.len() > 1 {
        sides = comps;
    } else if ind.graph.n() >= 2 {
        let cut = spectral::sweep_cut(&ind.graph)?;
        sides.push(cut.cut_set.complement());
        sides.push(cut.cut_set);
    }
    let hi = h.len() / 2;
    let mut best: Option<(f64, VertexSet)> = None;
    for s in sides {
        let s = ind.lift(&s, n);
        if s.len() > hi || s.len() as f64 <= beta_n {
            continue;
        }
        let d = density(g, &s);
        if d < c - 1e-9 {
            continue;
        }
        if best.as_ref().is_none_or(|(bd, bs)| d > *bd || (d == *bd && s.witness_cmp(bs).is_lt())) {
            best = Some((d, s));
        }
    }
    Ok(best.map(|(_, s)| s))
}

/// Spectral certificate for the expander alternative.
#[derive(Clone, Debug, Serialize)]
pub struct ExpanderCertificate {
    pub vertices: VertexSet,
    pub size: usize,
    /// Second normalized-Laplacian eigenvalue of the induced subgraph.
    pub mu: f64,
    pub mu_method: EigenMethod,
    pub mu_residual: f64,
    /// Rigorous lower bound on `mu` from the diameter and volume.
    pub mu_floor: Option<f64>,
    /// `mu delta_min / (2 Delta)`, a lower bound on vertex expansion.
    pub alpha_lower: f64,
    /// Same bound evaluated at `mu_floor`.
    pub alpha_floor: f64,
    /// Required `mu / 2`: `(c1 - c2) / (2 Delta L)`.
    pub tau: f64,
    /// Whether `mu / 2 >= tau`; false only when the loop ran out of parts.
    pub meets_target: bool,
    pub label: &'static str,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "alternative", rename_all = "snake_case")]
pub enum AlgorithmicOutcome {
    /// At most `beta n` vertices spanning at least `c2` edges per vertex.
    Witness {
        set: VertexSet,
        size: usize,
        internal_edges: usize,
        iterations: usize,
    },
    Expander {
        certificate: ExpanderCertificate,
        iterations: usize,
    },
}

impl AlgorithmicOutcome {
    fn lift(self, ind: &crate::graph::Induced, n: usize) -> AlgorithmicOutcome {
        match self {
            AlgorithmicOutcome::Witness { set, size, internal_edges, iterations } => AlgorithmicOutcome::Witness {
                set: ind.lift(&set, n),
                size,
                internal_edges,
                iterations,
            },
            AlgorithmicOutcome::Expander { mut certificate, iterations } => {
                certificate.vertices = ind.lift(&certificate.vertices, n);
                AlgorithmicOutcome::Expander { certificate, iterations }
            }
        }
    }
}

/// Internal dense-solver size for [`extract_algorithmic`].
const ALGORITHMIC_DENSE_LIMIT: usize = 300;

/// `f` is the eigenpair of `G[set]` when already computed; a disconnected
/// set gets `mu = 0`.
fn expander_certificate(
    g: &Graph,
    set: &VertexSet,
    tau: f64,
    f: Option<&spectral::Fiedler>,
    meets: bool,
) -> Result<ExpanderCertificate> {
    let sub = g.induce(set)?.graph;
    let (mu, method, residual) = match f {
        Some(f) => (f.mu.max(0.0), f.method, f.residual),
        None if sub.n() >= 2 && sub.is_connected() => {
            let f = spectral::fiedler(&sub, ALGORITHMIC_DENSE_LIMIT, 0)?;
            (f.mu.max(0.0), f.method, f.residual)
        }
        None => (0.0, EigenMethod::Dense, 0.0),
    };
    let floor = mu_lower_floor(&sub);
    let (dmin, dmax) = (sub.min_degree() as f64, sub.max_degree().max(1) as f64);
    Ok(ExpanderCertificate {
        vertices: set.clone(),
        size: set.len(),
        mu,
        mu_method: method,
        mu_residual: residual,
        mu_floor: floor,
        alpha_lower: mu * dmin / (2.0 * dmax),
        alpha_floor: floor.unwrap_or(0.0) * dmin / (2.0 * dmax),
        tau,
        meets_target: meets,
        label: "reconstructed",
    })
}

/// Either a small dense set or an induced expander on at least `beta n`
/// vertices, in polynomial time.
///
/// The loop keeps a current vertex set. A set that is small and dense is
/// returned as the witness; a connected set whose `mu / 2` reaches `tau` is
/// returned as the expander; otherwise the set is split into components or
/// the two sides of a sweep cut, small dense parts are returned as
/// witnesses, and the loop descends into the largest part above `beta n`
/// whose density keeps pace with the `(c1 - c2) / L` budget per step
/// (the densest such part when none does).
pub fn extract_algorithmic(g: &Graph, c1: f64, c2: f64, beta: f64) -> Result<AlgorithmicOutcome> {
    check_ratio("c2", c2)?;
    if !(c1 > c2) || !c1.is_finite() {
        return invalid("need c1 > c2");
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return invalid("beta must lie in (0, 1]");
    }
    let n = g.n();
    if n == 0 || (g.m() as f64) < c1 * n as f64 * (1.0 - 1e-12) {
        return invalid(format!("edge density {} is below c1 = {c1}", g.m() as f64 / n.max(1) as f64));
    }
    let l = descent_cap(beta);
    let delta_max = g.max_degree();
    let tau = (c1 - c2) / (2.0 * delta_max as f64 * l as f64);
    let step = (c1 - c2) / l as f64;
    let beta_n = beta * n as f64;
    let dense = |set: &VertexSet| {
        let e = g.internal_edges(set);
        (set.len() as f64 <= beta_n && e as f64 >= c2 * set.len() as f64).then_some(e)
    };

    let mut cur = VertexSet::full(n);
    let mut threshold = c1;
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > n + 1 {
            return Err(Error::Contradiction("descent did not terminate".into()));
        }
        if let Some(e) = dense(&cur) {
            return Ok(AlgorithmicOutcome::Witness {
                size: cur.len(),
                set: cur,
                internal_edges: e,
                iterations,
            });
        }
        let ind = g.induce(&cur)?;
        let comps = ind.graph.components();
        let parts: Vec<VertexSet> = if comps.len() > 1 {
            comps.iter().map(|c| ind.lift(c, n)).collect()
        } else if ind.graph.n() < 2 {
            Vec::new()
        } else {
            let f = spectral::fiedler(&ind.graph, ALGORITHMIC_DENSE_LIMIT, 0)?;
            if f.mu / 2.0 >= tau {
                let certificate = expander_certificate(g, &cur, tau, Some(&f), true)?;
                return Ok(AlgorithmicOutcome::Expander { certificate, iterations });
            }
            let cut = sweep_from_fiedler(&ind.graph, &f);
            let side = ind.lift(&cut.cut_set, n);
            let rest = cur.difference(&side);
            vec![side, rest]
        };
        let mut by_size: Vec<&VertexSet> = parts.iter().collect();
        by_size.sort_by(|a, b| a.witness_cmp(b));
        for p in by_size {
            if let Some(e) = dense(p) {
                return Ok(AlgorithmicOutcome::Witness {
                    size: p.len(),
                    set: p.clone(),
                    internal_edges: e,
                    iterations,
                });
            }
        }
        let big: Vec<(f64, &VertexSet)> = parts
            .iter()
            .filter(|p| p.len() as f64 > beta_n)
            .map(|p| (density(g, p), p))
            .collect();
        let paced = big
            .iter()
            .filter(|(d, _)| *d >= threshold - step - 1e-12)
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.1.lex_cmp(a.1)));
        let next = match paced {
            Some(&(_, p)) => {
                threshold -= step;
                p.clone()
            }
            None => match big
                .iter()
                .max_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.len().cmp(&b.1.len())).then_with(|| b.1.lex_cmp(a.1)))
            {
                Some(&(d, p)) => {
                    threshold = d;
                    p.clone()
                }
                None => {
                    let certificate = expander_certificate(g, &cur, tau, None, false)?;
                    return Ok(AlgorithmicOutcome::Expander { certificate, iterations });
                }
            },
        };
        cur = next;
    }
}

const VALIDATION_DENSE_LIMIT: usize = 600;

/// Re-checks an outcome of [`extract_algorithmic`] against `g`: the witness
/// is recounted; the expander's size and connectivity are checked and its
/// `mu` recomputed (densely up to 600 vertices, otherwise by an
/// independently seeded iterative solve).
pub fn validate_algorithmic(g: &Graph, out: &AlgorithmicOutcome, c2: f64, beta: f64) -> Result<()> {
    let beta_n = beta * g.n() as f64;
    match out {
        AlgorithmicOutcome::Witness { set, internal_edges, .. } => {
            let e = g.internal_edges(set);
            if e != *internal_edges || set.len() as f64 > beta_n || (e as f64) < c2 * set.len() as f64 {
                return Err(Error::Contradiction(format!("witness {set} does not recount")));
            }
        }
        AlgorithmicOutcome::Expander { certificate: c, .. } => {
            if (c.vertices.len() as f64) < beta_n || c.vertices.len() != c.size {
                return Err(Error::Contradiction("expander is below beta n vertices".into()));
            }
            let sub = g.induce(&c.vertices)?.graph;
            if c.meets_target && (sub.n() < 2 || !sub.is_connected()) {
                return Err(Error::Contradiction("certified expander is disconnected".into()));
            }
            if c.meets_target {
                let mu = spectral::fiedler(&sub, VALIDATION_DENSE_LIMIT, 0x5eed)?.mu;
                if (mu - c.mu).abs() > 1e-6 || mu / 2.0 < c.tau - 1e-9 {
                    return Err(Error::Contradiction(format!("recomputed mu {mu} disagrees with {}", c.mu)));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineStatus {
    Expander,
    Witness,
    /// No excess over one edge per vertex after trimming.
    DensityGateFailed,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub eps: f64,
    pub p: f64,
    pub seed: u64,
    pub m: usize,
    pub giant: VertexSet,
    pub giant_edges: usize,
    pub giant_density: f64,
    /// Highest-degree giant vertices removed.
    pub deleted: usize,
    pub trimmed: VertexSet,
    pub trimmed_edges: usize,
    pub density: f64,
    pub density_target: f64,
    pub density_ok: bool,
    pub max_degree: usize,
    pub max_degree_target: usize,
    pub max_degree_ok: bool,
    pub c1: f64,
    pub c2: f64,
    /// Thresholds actually passed to the extraction (the observed density
    /// replaces `c1` when the density check fails).
    pub c1_used: f64,
    pub c2_used: f64,
    pub beta: f64,
    pub beta_n: f64,
    pub status: PipelineStatus,
    pub extraction: Option<AlgorithmicOutcome>,
}

impl PipelineReport {
    /// An expander on at least `beta n` vertices with a positive `mu` estimate
    /// and a positive rigorous floor.
    pub fn has_certified_expander(&self) -> bool {
        match &self.extraction {
            Some(AlgorithmicOutcome::Expander { certificate: c, .. }) => {
                c.size as f64 >= self.beta_n && c.mu > 0.0 && c.mu_floor.is_some_and(|f| f > 0.0)
            }
            _ => false,
        }
    }
}

/// Samples `G(n, (1 + eps) / n)`, trims the giant component, and extracts
/// an expander from it.
pub fn supercritical_pipeline(n: usize, eps: f64, seed: u64) -> Result<PipelineReport> {
    supercritical_pipeline_with(n, eps, seed, None)
}

/// As [`supercritical_pipeline`], optionally sampling at edge probability
/// `p` instead (the thresholds still follow `eps`).
pub fn supercritical_pipeline_with(n: usize, eps: f64, seed: u64, p: Option<f64>) -> Result<PipelineReport> {
    if !(eps > 0.0 && eps <= 0.2) {
        return invalid("eps must lie in (0, 0.2]");
    }
    if eps * (n as f64) < 100.0 {
        return invalid(format!("eps n = {} is below 100", eps * n as f64));
    }
    let p = p.unwrap_or((1.0 + eps) / n as f64);
    let g = gen(&GenSpec::gnp(n, p, seed))?;
    let giant = g
        .components()
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.lex_cmp(a)))
        .expect("n >= 1");
    let ln = (1.0 / eps).ln();
    let remove = (eps.powi(3) / (10.0 * ln) * n as f64).ceil() as usize;
    let mut order: Vec<usize> = giant.iter().collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let deleted = remove.min(order.len());
    let trimmed = giant.difference(&VertexSet::from_iter(n, order[..deleted].iter().copied()));
    let c1 = 1.0 + eps * eps / 7.0;
    let c2 = 1.0 + eps * eps / 10.0;
    let beta = default_sparse_beta(1.0 + eps, c2);
    let max_degree_target = (7.0 * ln).ceil() as usize;

    let (trimmed_edges, density, max_degree) = if trimmed.is_empty() {
        (0, 0.0, 0)
    } else {
        let ind = g.induce(&trimmed)?;
        (ind.graph.m(), ind.graph.m() as f64 / trimmed.len() as f64, ind.graph.max_degree())
    };
    // Below the predicted density the run continues at the observed density,
    // keeping c2 - 1 at the same fraction of c1 - 1; without any excess over
    // one edge per vertex there is nothing to extract.
    let (c1_used, c2_used) = if density >= c1 {
        (c1, c2)
    } else {
        (density, 1.0 + (density - 1.0) * (c2 - 1.0) / (c1 - 1.0))
    };
    let extraction = if density > 1.0 {
        let ind = g.induce(&trimmed)?;
        Some(extract_algorithmic(&ind.graph, c1_used, c2_used, beta)?.lift(&ind, n))
    } else {
        None
    };
    let status = match &extraction {
        None => PipelineStatus::DensityGateFailed,
        Some(AlgorithmicOutcome::Witness { .. }) => PipelineStatus::Witness,
        Some(AlgorithmicOutcome::Expander { .. }) => PipelineStatus::Expander,
    };
    Ok(PipelineReport {
        n,
        eps,
        p,
        seed,
        m: g.m(),
        giant_edges: g.internal_edges(&giant),
        giant_density: g.internal_edges(&giant) as f64 / giant.len() as f64,
        giant,
        deleted,
        trimmed_edges,
        trimmed,
        density,
        density_target: c1,
        density_ok: density >= c1,
        max_degree,
        max_degree_target,
        max_degree_ok: max_degree <= max_degree_target,
        c1,
        c2,
        c1_used,
        c2_used,
        beta,
        beta_n: beta * n as f64,
        status,
        extraction,
    })
}
