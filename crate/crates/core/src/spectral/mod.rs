//! Spectra of the adjacency matrix and normalized Laplacian, Cheeger-type
//! cut quantities, and lazy random walks.

pub mod cheeger;
pub mod linalg;
pub mod walks;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::Graph;
use linalg::{
    dense_adjacency, dense_eigen, dense_normalized_laplacian, lanczos_largest, Adjacency,
    NormalizedAdjacency,
};

pub use cheeger::{
    cheeger_exact, expansion_lower_bound_regular, sweep_cut, sweep_cut_with, verify_cheeger,
    CheegerCheck, CheegerExact, CutReport,
};
pub use walks::{
    confinement_bounds, confinement_frequency, lazy_walk, miss_frequency, ConfinementBounds,
    McEstimate, WalkStart, WalkTrace,
};

/// Graphs up to this size get a full dense spectrum.
pub const DENSE_LIMIT: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenMethod {
    Dense,
    Lanczos,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSummary {
    pub n: usize,
    /// Non-increasing. The full spectrum in dense mode; the top two otherwise.
    pub adjacency_eigenvalues: Vec<f64>,
    /// Second-smallest normalized-Laplacian eigenvalue; absent when `n < 2`.
    pub laplacian_mu: Option<f64>,
    /// Full normalized-Laplacian spectrum (ascending), dense mode only.
    pub laplacian_eigenvalues: Option<Vec<f64>>,
    pub is_regular: bool,
    pub d: Option<usize>,
    pub method: EigenMethod,
    pub tolerance: f64,
    /// Largest recomputed residual of the iterative eigenpairs (0 in dense mode).
    pub residual: f64,
}

impl SpectralSummary {
    /// Second-largest adjacency eigenvalue, if `n >= 2`.
    pub fn lambda2(&self) -> Option<f64> {
        self.adjacency_eigenvalues.get(1).copied()
    }
}

pub fn spectrum(g: &Graph) -> Result<SpectralSummary> {
    spectrum_with(g, DENSE_LIMIT)
}

pub fn spectrum_with(g: &Graph, dense_limit: usize) -> Result<SpectralSummary> {
    let n = g.n();
    if n == 0 {
        return invalid("spectrum of the empty graph");
    }
    let d = g.regular_degree();
    if n <= dense_limit {
        let (mut adj, _) = dense_eigen(dense_adjacency(g));
        adj.reverse();
        let (lap, _) = dense_eigen(dense_normalized_laplacian(g));
        return Ok(SpectralSummary {
            n,
            adjacency_eigenvalues: adj,
            laplacian_mu: lap.get(1).copied(),
            laplacian_eigenvalues: Some(lap),
            is_regular: d.is_some(),
            d,
            method: EigenMethod::Dense,
            tolerance: linalg::TOLERANCE,
            residual: 0.0,
        });
    }
    let mut residual: f64 = 0.0;
    let adjacency_eigenvalues = match d {
        Some(d) => {
            let ones = vec![1.0 / (n as f64).sqrt(); n];
            let p = lanczos_largest(&Adjacency(g), &[ones], 1, 0)?;
            residual = residual.max(p[0].residual);
            vec![d as f64, p[0].value]
        }
        None => {
            let p = lanczos_largest(&Adjacency(g), &[], 2, 0)?;
            residual = p.iter().fold(residual, |r, e| r.max(e.residual));
            p.iter().map(|e| e.value).collect()
        }
    };
    let fied = fiedler(g, 0, 0)?;
    residual = residual.max(fied.residual);
    Ok(SpectralSummary {
        n,
        adjacency_eigenvalues,
        laplacian_mu: Some(fied.mu),
        laplacian_eigenvalues: None,
        is_regular: d.is_some(),
        d,
        method: EigenMethod::Lanczos,
        tolerance: linalg::TOLERANCE,
        residual,
    })
}

/// Second normalized-Laplacian eigenpair.
#[derive(Clone, Debug)]
pub struct Fiedler {
    pub mu: f64,
    /// Unit eigenvector of `I - D^{-1/2} A D^{-1/2}`.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub method: EigenMethod,
}

/// `mu_1` and its eigenvector; dense up to `dense_limit` vertices.
pub fn fiedler(g: &Graph, dense_limit: usize, seed: u64) -> Result<Fiedler> {
    let n = g.n();
    if n < 2 {
        return invalid("the second Laplacian eigenvalue needs at least 2 vertices");
    }
    if n <= dense_limit {
        let (vals, vecs) = dense_eigen(dense_normalized_laplacian(g));
        return Ok(Fiedler {
            mu: vals[1],
            vector: vecs.column(1).iter().copied().collect(),
            residual: 0.0,
            method: EigenMethod::Dense,
        });
    }
    let op = NormalizedAdjacency::new(g);
    let top = op.top_vector();
    let p = lanczos_largest(&op, &[top], 1, seed)?;
    let e = &p[0];
    Ok(Fiedler {
        mu: 1.0 - e.value,
        vector: e.vector.clone(),
        residual: e.residual,
        method: EigenMethod::Lanczos,
    })
}

/// A rigorous positive lower bound on `mu_1` for a connected graph:
/// `1 / (D vol(G))` with `D <= 2 ecc(v)` bounding the diameter.
pub fn mu_lower_floor(g: &Graph) -> Option<f64> {
    if g.n() < 2 || !g.is_connected() {
        return None;
    }
    let diam_bound = 2 * g.eccentricity(0);
    Some(1.0 / (diam_bound.max(1) as f64 * 2.0 * g.m() as f64))
}
