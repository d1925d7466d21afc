//! Lazy random walks and the two confinement bounds.

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{dense_eigen, dense_normalized_laplacian};
use super::{cheeger_exact, spectrum, DENSE_LIMIT};
use crate::error::{invalid, Result};
use crate::exact::EXACT_LIMIT;
use crate::graph::Graph;
use crate::rng;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "vertex")]
pub enum WalkStart {
    Stationary,
    Vertex(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkTrace {
    /// `ell + 1` vertices.
    pub steps: Vec<usize>,
    pub seed: u64,
    pub start_mode: WalkStart,
}

/// Samples from the stationary distribution `deg(v) / 2m` by picking a
/// uniform edge endpoint.
fn stationary_vertex(g: &Graph, cum: &[usize], r: &mut rng::Rng) -> usize {
    let t = r.gen_range(0..2 * g.m());
    cum.partition_point(|&c| c <= t)
}

fn degree_prefix(g: &Graph) -> Vec<usize> {
    let mut acc = 0;
    (0..g.n())
        .map(|v| {
            acc += g.degree(v);
            acc
        })
        .collect()
}

#[inline]
fn lazy_step(g: &Graph, v: usize, r: &mut rng::Rng) -> usize {
    if r.gen::<bool>() {
        v
    } else {
        let nb = g.neighbors(v);
        nb[r.gen_range(0..nb.len())]
    }
}

fn walk_from(g: &Graph, start: usize, ell: usize, r: &mut rng::Rng) -> Vec<usize> {
    let mut steps = Vec::with_capacity(ell + 1);
    let mut v = start;
    steps.push(v);
    for _ in 0..ell {
        v = lazy_step(g, v, r);
        steps.push(v);
    }
    steps
}

/// Stay with probability 1/2, otherwise move to a uniform neighbour.
pub fn lazy_walk(g: &Graph, ell: usize, start: WalkStart, seed: u64) -> Result<WalkTrace> {
    lazy_walk_stream(g, ell, start, seed, 0)
}

pub(crate) fn lazy_walk_stream(
    g: &Graph,
    ell: usize,
    start: WalkStart,
    seed: u64,
    stream: u64,
) -> Result<WalkTrace> {
    let mut r = rng::stream(seed, stream);
    let v0 = match start {
        WalkStart::Stationary => {
            if g.m() == 0 {
                return invalid("stationary start on an edgeless graph");
            }
            stationary_vertex(g, &degree_prefix(g), &mut r)
        }
        WalkStart::Vertex(v) => {
            if v >= g.n() {
                return invalid(format!("start vertex {v} out of range"));
            }
            if g.degree(v) == 0 {
                return invalid(format!("start vertex {v} is isolated"));
            }
            v
        }
    };
    Ok(WalkTrace {
        steps: walk_from(g, v0, ell, &mut r),
        seed,
        start_mode: start,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfinementBounds {
    pub n: usize,
    pub max_degree: usize,
    pub set_size: usize,
    pub ell: usize,
    /// `i(G)`: exact, or the lower bound `mu_1 delta / 2` on larger graphs.
    pub isoperimetric: f64,
    pub isoperimetric_method: &'static str,
    /// Conductance (exact `h/2` at desk scale, otherwise `i(G)/(2d)`).
    pub conductance: f64,
    pub conductance_method: &'static str,
    /// `i(G) / (2d)`.
    pub conductance_lower: f64,
    /// `eta = 1 - lambda_2(P)`.
    pub spectral_gap: f64,
    /// `Phi^2 / 2`.
    pub spectral_gap_lower: f64,
    pub pi_set: f64,
    /// `exp(-i^3/(8 d^3) |U| ell / n)` for missing the set.
    pub miss_bound: f64,
    /// `pi(A) (1 - eta (1 - pi(A)))^ell` for never leaving the set.
    pub confinement_bound: f64,
}

/// Both analytic bounds for the set `u` (which plays the role of the set to
/// hit for the miss bound and of the trap `A` for the confinement bound).
pub fn confinement_bounds(g: &Graph, u: &VertexSet, ell: usize) -> Result<ConfinementBounds> {
    let n = g.n();
    if u.universe() != n {
        return invalid("set universe does not match the graph");
    }
    if u.is_empty() || u.len() == n {
        return invalid("confinement bounds need a proper non-empty set");
    }
    if g.m() == 0 {
        return invalid("walks on an edgeless graph");
    }
    let d = g.max_degree();
    let spectral_gap = if n <= DENSE_LIMIT {
        // P is similar to (I + M)/2, so lambda_2(P) = 1 - mu_1/2
        let (vals, _) = dense_eigen(dense_normalized_laplacian(g));
        vals[1] / 2.0
    } else {
        spectrum(g)?.laplacian_mu.expect("n >= 2") / 2.0
    };
    let (iso, iso_method, phi, phi_method) = if n <= EXACT_LIMIT {
        let c = cheeger_exact(g)?;
        (c.isoperimetric, "exact", c.conductance, "exact")
    } else {
        let delta = g.min_degree() as f64;
        // i(G) >= h delta >= (mu_1 / 2) delta = eta delta
        let i_lo = (spectral_gap * delta).max(0.0);
        (i_lo, "spectral_lower_bound", i_lo / (2.0 * d as f64), "isoperimetric_lower_bound")
    };
    let pi_set = g.volume(u) as f64 / (2 * g.m()) as f64;
    let miss_bound =
        (-(iso.powi(3) / (8.0 * (d as f64).powi(3))) * u.len() as f64 * ell as f64 / n as f64).exp();
    let confinement_bound = pi_set * (1.0 - spectral_gap * (1.0 - pi_set)).powi(ell as i32);
    Ok(ConfinementBounds {
        n,
        max_degree: d,
        set_size: u.len(),
        ell,
        isoperimetric: iso,
        isoperimetric_method: iso_method,
        conductance: phi,
        conductance_method: phi_method,
        conductance_lower: iso / (2.0 * d as f64),
        spectral_gap,
        spectral_gap_lower: phi * phi / 2.0,
        pi_set,
        miss_bound,
        confinement_bound,
    })
}

/// Monte Carlo frequency with its binomial standard error.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct McEstimate {
    pub walks: usize,
    pub hits: usize,
    pub frequency: f64,
    pub sigma: f64,
}

impl McEstimate {
    fn new(walks: usize, hits: usize) -> Self {
        let p = hits as f64 / walks as f64;
        McEstimate {
            walks,
            hits,
            frequency: p,
            sigma: (p * (1.0 - p) / walks as f64).sqrt(),
        }
    }
}

fn ensemble<F>(g: &Graph, walks: usize, seed: u64, pred: F) -> Result<McEstimate>
where
    F: Fn(&mut rng::Rng, usize) -> bool + Sync,
{
    if g.m() == 0 {
        return invalid("walks on an edgeless graph");
    }
    if walks == 0 {
        return invalid("at least one walk is needed");
    }
    let cum = degree_prefix(g);
    let hits = (0..walks)
        .into_par_iter()
        .filter(|&t| {
            let mut r = rng::stream(seed, t as u64);
            let v = stationary_vertex(g, &cum, &mut r);
            pred(&mut r, v)
        })
        .count();
    Ok(McEstimate::new(walks, hits))
}

/// Fraction of stationary-start walks of `ell` steps that never visit `u`.
pub fn miss_frequency(g: &Graph, u: &VertexSet, ell: usize, walks: usize, seed: u64) -> Result<McEstimate> {
    ensemble(g, walks, seed, |r, mut v| {
        if u.contains(v) {
            return false;
        }
        for _ in 0..ell {
            v = lazy_step(g, v, r);
            if u.contains(v) {
                return false;
            }
        }
        true
    })
}

/// Fraction of stationary-start walks of `ell` steps that stay inside `a`.
pub fn confinement_frequency(g: &Graph, a: &VertexSet, ell: usize, walks: usize, seed: u64) -> Result<McEstimate> {
    ensemble(g, walks, seed, |r, mut v| {
        if !a.contains(v) {
            return false;
        }
        for _ in 0..ell {
            v = lazy_step(g, v, r);
            if !a.contains(v) {
                return false;
            }
        }
        true
    })
}
