//! Cheeger constant, edge isoperimetric number and sweep cuts.

use serde::Serialize;

use super::{fiedler, spectrum, EigenMethod, Fiedler};
use crate::error::{invalid, Error, Result};
use crate::exact::{check_limit, scan, Frac, MaskGraph, MinRatio};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Sweep cuts switch to the iterative eigensolver above this size.
pub const SWEEP_DENSE_LIMIT: usize = 600;

#[derive(Clone, Debug, Serialize)]
pub struct CutReport {
    /// The side of smaller volume.
    pub cut_set: VertexSet,
    pub crossing_edges: usize,
    pub volume_small_side: usize,
    /// `crossing / min(vol(U), vol(V \ U))`.
    pub edge_ratio: f64,
    /// `|N(U)| / |U|`.
    pub vertex_ratio: f64,
    pub method: &'static str,
    /// `sqrt(2 mu_1)` for sweep cuts.
    pub guarantee: Option<f64>,
    pub guarantee_holds: Option<bool>,
}

impl CutReport {
    /// Recomputes every quantity from the graph; `set` may be either side.
    pub fn from_set(g: &Graph, set: &VertexSet, method: &'static str) -> CutReport {
        let total = 2 * g.m();
        let vol = g.volume(set);
        let side = if vol * 2 > total || (vol * 2 == total && set.complement().lex_cmp(set).is_lt()) {
            set.complement()
        } else {
            set.clone()
        };
        let vol = g.volume(&side);
        let b = g.boundary(&side, None).expect("set over the graph's universe");
        CutReport {
            crossing_edges: b.crossing_edges,
            volume_small_side: vol,
            edge_ratio: b.crossing_edges as f64 / vol as f64,
            vertex_ratio: b.external_neighborhood.len() as f64 / side.len() as f64,
            cut_set: side,
            method,
            guarantee: None,
            guarantee_holds: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheegerExact {
    pub h: f64,
    pub cut: CutReport,
    /// Conductance of the lazy walk, `h / 2`.
    pub conductance: f64,
    /// `i(G) = min_{|U| <= n/2} e(U, V \ U) / |U|`.
    pub isoperimetric: f64,
    pub isoperimetric_witness: VertexSet,
}

/// Exhaustive Cheeger constant and edge isoperimetric number.
///
/// Sets whose smaller side has volume 0 (only isolated vertices) are skipped.
pub fn cheeger_exact(g: &Graph) -> Result<CheegerExact> {
    check_limit("cheeger_exact", g.n(), "sweep_cut")?;
    if g.m() == 0 {
        return Err(Error::Undefined("Cheeger constant of an edgeless graph".into()));
    }
    let n = g.n();
    let mg = MaskGraph::new(g);
    let total = 2 * g.m() as u32;
    let half = (n / 2) as u32;
    let full = mg.full();
    let (h, iso) = scan(
        &mg,
        || (MinRatio::new(), MinRatio::new()),
        |acc, info| {
            if info.mask == 0 || info.mask == full {
                return;
            }
            let cross = info.crossing() as u64;
            if info.volume > 0 && 2 * info.volume <= total {
                acc.0.offer(Frac::new(cross, info.volume as u64), info.mask);
            }
            if info.size <= half {
                acc.1.offer(Frac::new(cross, info.size as u64), info.mask);
            }
        },
        |a, b| (a.0.merge(b.0), a.1.merge(b.1)),
    );
    let (hf, hmask) = h.best.ok_or_else(|| Error::Undefined("no cut with positive volume".into()))?;
    let (if_, imask) = iso.best.expect("n >= 2 whenever an edge exists");
    let cut = CutReport::from_set(g, &VertexSet::from_mask(n, hmask), "exact");
    Ok(CheegerExact {
        h: hf.value(),
        conductance: hf.value() / 2.0,
        cut,
        isoperimetric: if_.value(),
        isoperimetric_witness: VertexSet::from_mask(n, imask),
    })
}

pub fn sweep_cut(g: &Graph) -> Result<CutReport> {
    sweep_cut_with(g, SWEEP_DENSE_LIMIT)
}

/// Best prefix cut of the vertices ordered by `D^{-1/2} x` for the second
/// normalized-Laplacian eigenvector `x`.
pub fn sweep_cut_with(g: &Graph, dense_limit: usize) -> Result<CutReport> {
    let n = g.n();
    if n < 2 || !g.is_connected() {
        return invalid("sweep_cut needs a connected graph with at least 2 vertices");
    }
    let f = fiedler(g, dense_limit, 0)?;
    Ok(sweep_from_fiedler(g, &f))
}

/// Sweep over an already computed eigenpair of a connected graph.
pub(crate) fn sweep_from_fiedler(g: &Graph, f: &Fiedler) -> CutReport {
    let n = g.n();
    let score: Vec<f64> = (0..n)
        .map(|v| f.vector[v] / (g.degree(v) as f64).sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| score[a].total_cmp(&score[b]).then(a.cmp(&b)));
    let total = 2 * g.m();
    let mut inside = vec![false; n];
    let (mut vol, mut cross) = (0usize, 0usize);
    let mut best: Option<(Frac, usize)> = None;
    for (k, &v) in order.iter().enumerate().take(n - 1) {
        let links = g.neighbors(v).iter().filter(|&&w| inside[w]).count();
        inside[v] = true;
        vol += g.degree(v);
        cross = cross + g.degree(v) - 2 * links;
        let r = Frac::new(cross as u64, vol.min(total - vol) as u64);
        if best.is_none_or(|(b, _)| r.cmp(&b).is_lt()) {
            best = Some((r, k + 1));
        }
    }
    let (_, len) = best.expect("n >= 2");
    let set = VertexSet::from_iter(n, order[..len].iter().copied());
    let mut rep = CutReport::from_set(g, &set, match f.method {
        EigenMethod::Dense => "sweep_dense",
        EigenMethod::Lanczos => "sweep_lanczos",
    });
    let bound = (2.0 * f.mu.max(0.0)).sqrt();
    rep.guarantee = Some(bound);
    rep.guarantee_holds = Some(rep.edge_ratio <= bound + 1e-6);
    rep
}

/// `(d - lambda_2) / (2d)` clipped at 0, for a d-regular graph with `d >= 1`.
pub fn expansion_lower_bound_regular(g: &Graph) -> Result<f64> {
    let Some(d) = g.regular_degree() else {
        return invalid("expansion_lower_bound_regular needs a regular graph");
    };
    if d == 0 || g.n() < 2 {
        return invalid("expansion_lower_bound_regular needs degree at least 1");
    }
    let s = spectrum(g)?;
    let l2 = s.lambda2().expect("n >= 2");
    Ok(((d as f64 - l2) / (2.0 * d as f64)).max(0.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheegerCheck {
    pub h: f64,
    pub mu: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// Evaluates `h^2/2 <= mu <= 2h` with tolerance 1e-9.
pub fn verify_cheeger(g: &Graph) -> Result<CheegerCheck> {
    let ch = cheeger_exact(g)?;
    let mu = spectrum(g)?.laplacian_mu.expect("n >= 2");
    let (lower, upper) = (ch.h * ch.h / 2.0, 2.0 * ch.h);
    Ok(CheegerCheck {
        h: ch.h,
        mu,
        lower,
        upper,
        holds: lower <= mu + 1e-9 && mu <= upper + 1e-9,
    })
}
