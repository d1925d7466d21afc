//! Dense and Lanczos symmetric eigensolvers over graph operators.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// Residual tolerance for iterative eigenpairs.
pub const TOLERANCE: f64 = 1e-8;
/// Operator application cap for the iterative solver.
pub const MAX_MATVECS: usize = 100_000;

/// A symmetric linear operator.
pub trait SymOp: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// Adjacency matrix `A`.
pub struct Adjacency<'a>(pub &'a Graph);

impl SymOp for Adjacency<'_> {
    fn dim(&self) -> usize {
        self.0.n()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (v, out) in y.iter_mut().enumerate() {
            *out = self.0.neighbors(v).iter().map(|&w| x[w]).sum();
        }
    }
}

/// `M = D^{-1/2} A D^{-1/2}` with `D^{-1/2}` zero on isolated vertices.
/// The normalized Laplacian is `I - M`.
pub struct NormalizedAdjacency<'a> {
    g: &'a Graph,
    pub inv_sqrt_deg: Vec<f64>,
}

impl<'a> NormalizedAdjacency<'a> {
    pub fn new(g: &'a Graph) -> Self {
        let inv_sqrt_deg = (0..g.n())
            .map(|v| match g.degree(v) {
                0 => 0.0,
                d => 1.0 / (d as f64).sqrt(),
            })
            .collect();
        NormalizedAdjacency { g, inv_sqrt_deg }
    }

    /// Unit vector proportional to `D^{1/2} 1`, the top eigenvector of `M`
    /// on graphs without isolated vertices.
    pub fn top_vector(&self) -> Vec<f64> {
        let mut v: Vec<f64> = (0..self.g.n()).map(|u| (self.g.degree(u) as f64).sqrt()).collect();
        normalize(&mut v);
        v
    }
}

impl SymOp for NormalizedAdjacency<'_> {
    fn dim(&self) -> usize {
        self.g.n()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let s = &self.inv_sqrt_deg;
        for (v, out) in y.iter_mut().enumerate() {
            let acc: f64 = self.g.neighbors(v).iter().map(|&w| s[w] * x[w]).sum();
            *out = s[v] * acc;
        }
    }
}

pub fn dense_adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// Dense normalized Laplacian `I - D^{-1/2} A D^{-1/2}`.
pub fn dense_normalized_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let s = NormalizedAdjacency::new(g).inv_sqrt_deg;
    let mut l = DMatrix::identity(n, n);
    for (u, v) in g.edges() {
        let w = -s[u] * s[v];
        l[(u, v)] = w;
        l[(v, u)] = w;
    }
    l
}

/// Eigenvalues in ascending order with matching eigenvector columns.
pub fn dense_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), m);
    }
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

#[derive(Clone, Debug)]
pub struct EigPair {
    pub value: f64,
    pub vector: Vec<f64>,
    /// `||Ax - value x||` recomputed after convergence.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    // two passes of classical Gram-Schmidt
    for _ in 0..2 {
        for b in basis {
            let c = dot(w, b);
            axpy(-c, b, w);
        }
    }
}

/// The `count` algebraically largest eigenpairs of `op` restricted to the
/// orthogonal complement of `deflate` (orthonormal vectors).
///
/// Pairs are found one at a time and locked into the deflation set, so
/// repeated eigenvalues are returned with their multiplicity.
pub fn lanczos_largest(
    op: &dyn SymOp,
    deflate: &[Vec<f64>],
    count: usize,
    seed: u64,
) -> Result<Vec<EigPair>> {
    let mut locked: Vec<Vec<f64>> = deflate.to_vec();
    let mut out = Vec::new();
    let mut budget = MAX_MATVECS;
    for k in 0..count.min(op.dim().saturating_sub(deflate.len())) {
        let (pair, used) = lanczos_top(op, &locked, rng::derive(seed, k as u64), budget)?;
        budget -= used.min(budget);
        locked.push(pair.vector.clone());
        out.push(pair);
    }
    Ok(out)
}

/// Basis size at which the iteration restarts.
const MAX_BASIS: usize = 100;
/// Ritz vectors kept across a restart.
const KEEP: usize = 25;

/// Largest eigenpair in the complement of `deflate`: Lanczos with full
/// reorthogonalisation and thick restarts that keep the leading Ritz vectors.
///
/// The projected matrix `H = V^T A V` is accumulated column by column, so
/// after a restart it stays exact without tracking the arrowhead structure.
/// With `f` the orthogonalised image of the last basis vector,
/// `A V = V H + f e_m^T` holds throughout and the residual of a Ritz pair
/// `(theta, V s)` is `|f| |s_m|`.
fn lanczos_top(op: &dyn SymOp, deflate: &[Vec<f64>], seed: u64, budget: usize) -> Result<(EigPair, usize)> {
    let n = op.dim();
    let free = n - deflate.len();
    let max_basis = free.min(MAX_BASIS);
    let mut r = rng::stream(seed, 0);
    let mut v0: Vec<f64>;
    loop {
        v0 = (0..n).map(|_| r.gen::<f64>() - 0.5).collect();
        orthogonalize(&mut v0, deflate);
        if normalize(&mut v0) > 0.0 {
            break;
        }
    }
    let mut basis: Vec<Vec<f64>> = vec![v0];
    let mut h = DMatrix::<f64>::zeros(max_basis, max_basis);
    let mut matvecs = 0usize;
    let mut w = vec![0.0; n];
    loop {
        let j = basis.len() - 1;
        op.apply(&basis[j], &mut w);
        matvecs += 1;
        orthogonalize(&mut w, deflate);
        let mut coef = vec![0.0; basis.len()];
        for _ in 0..2 {
            for (i, b) in basis.iter().enumerate() {
                let c = dot(&w, b);
                axpy(-c, b, &mut w);
                coef[i] += c;
            }
        }
        for (i, &c) in coef.iter().enumerate() {
            h[(i, j)] = c;
            h[(j, i)] = c;
        }
        let b = normalize(&mut w);
        let m = basis.len();
        let exhausted = m == free || b < 1e-12;
        if !(exhausted || m == max_basis || m % 10 == 0 || matvecs >= budget) {
            basis.push(w.clone());
            continue;
        }
        let (vals, vecs) = dense_eigen(h.view((0, 0), (m, m)).into_owned());
        let top = m - 1;
        let est = if exhausted { 0.0 } else { (b * vecs[(m - 1, top)]).abs() };
        if est <= TOLERANCE * vals[top].abs().max(1.0) {
            let mut y = vec![0.0; n];
            for (k, bk) in basis.iter().enumerate() {
                axpy(vecs[(k, top)], bk, &mut y);
            }
            normalize(&mut y);
            let mut ay = vec![0.0; n];
            op.apply(&y, &mut ay);
            axpy(-vals[top], &y, &mut ay);
            let pair = EigPair {
                value: vals[top],
                residual: dot(&ay, &ay).sqrt(),
                vector: y,
            };
            return Ok((pair, matvecs + 1));
        }
        if matvecs >= budget {
            return Err(Error::NonConvergence { residual: est });
        }
        if m < max_basis {
            basis.push(w.clone());
            continue;
        }
        // keep the leading Ritz vectors, then continue from f
        let keep = KEEP.min(m - 1);
        let mut kept = Vec::with_capacity(max_basis);
        for c in 0..keep {
            let col = top - c;
            let mut y = vec![0.0; n];
            for (k, bk) in basis.iter().enumerate() {
                axpy(vecs[(k, col)], bk, &mut y);
            }
            kept.push(y);
        }
        h.fill(0.0);
        for c in 0..keep {
            h[(c, c)] = vals[top - c];
        }
        kept.push(w.clone());
        basis = kept;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixtures::{complete, cycle};

    #[test]
    fn dense_k4() {
        let (vals, _) = dense_eigen(dense_adjacency(&complete(4)));
        let want = [-1.0, -1.0, -1.0, 3.0];
        for (a, b) in vals.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn lanczos_matches_dense_on_cycle() {
        let g = cycle(40);
        let op = NormalizedAdjacency::new(&g);
        let top = op.top_vector();
        let pairs = lanczos_largest(&op, &[top], 2, 1).unwrap();
        let expect = (2.0 * std::f64::consts::PI / 40.0).cos();
        assert!((pairs[0].value - expect).abs() < 1e-8);
        assert!((pairs[1].value - expect).abs() < 1e-8);
        assert!(pairs[0].residual < 1e-6);
    }
}
