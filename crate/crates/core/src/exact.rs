//! Exhaustive subset scans for graphs with at most [`EXACT_LIMIT`] vertices.
//!
//! Subsets are bit masks. The scan splits masks into a fixed number of
//! leading bits (one parallel task per prefix) and walks the remaining bits
//! in Gray-code order, so volume and internal edge count update in O(1) per
//! step. External neighbourhoods come from two precomputed OR tables over the
//! low and high halves of the vertex range.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted by exhaustive routines.
pub const EXACT_LIMIT: usize = 22;

pub(crate) fn check_limit(op: &'static str, n: usize, alternative: &'static str) -> Result<()> {
    if n > EXACT_LIMIT {
        return Err(Error::ExactLimit {
            op,
            n,
            limit: EXACT_LIMIT,
            alternative,
        });
    }
    Ok(())
}

/// Precomputed tables for O(1) neighbourhood queries on a small graph.
pub(crate) struct MaskGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    pub deg: Vec<u32>,
    split: usize,
    lo: Vec<u64>,
    hi: Vec<u64>,
}

impl MaskGraph {
    pub fn new(g: &Graph) -> Self {
        Self::from_masks(g.adjacency_masks())
    }

    pub fn from_masks(adj: Vec<u64>) -> Self {
        let n = adj.len();
        assert!(n <= 32, "mask tables are sized for at most 32 vertices");
        let split = n / 2;
        let table = |base: usize, bits: usize| {
            let mut t = vec![0u64; 1 << bits];
            for m in 1..t.len() {
                let b = m.trailing_zeros() as usize;
                t[m] = t[m & (m - 1)] | adj[base + b];
            }
            t
        };
        let lo = table(0, split);
        let hi = table(split, n - split);
        let deg = adj.iter().map(|m| m.count_ones()).collect();
        MaskGraph {
            n,
            adj,
            deg,
            split,
            lo,
            hi,
        }
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// External neighbourhood of `mask`.
    #[inline]
    pub fn nbr(&self, mask: u64) -> u64 {
        let lo = self.lo[(mask & ((1u64 << self.split) - 1)) as usize];
        let hi = self.hi[(mask >> self.split) as usize];
        (lo | hi) & !mask
    }

    pub fn internal_edges(&self, mask: u64) -> u32 {
        let mut m = mask;
        let mut twice = 0;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            twice += (self.adj[v] & mask).count_ones();
        }
        twice / 2
    }

    pub fn volume(&self, mask: u64) -> u32 {
        let mut m = mask;
        let mut vol = 0;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            vol += self.deg[v];
        }
        vol
    }
}

/// Per-mask data supplied to scan visitors.
#[derive(Clone, Copy, Debug)]
pub(crate) struct MaskInfo {
    pub mask: u64,
    pub size: u32,
    pub internal: u32,
    pub volume: u32,
}

impl MaskInfo {
    /// Edges leaving the set.
    pub fn crossing(&self) -> u32 {
        self.volume - 2 * self.internal
    }
}

/// Visits every mask in `[0, 2^n)` (including the empty mask) and reduces the
/// per-task accumulators with `merge`. `merge` must be associative and
/// commutative for the result to be independent of scheduling.
pub(crate) fn scan<A, I, V, M>(mg: &MaskGraph, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, MaskInfo) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let n = mg.n;
    let prefix_bits = n.min(6);
    let low_bits = n - prefix_bits;
    (0u64..1 << prefix_bits)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            let mut mask = prefix << low_bits;
            let mut info = MaskInfo {
                mask,
                size: mask.count_ones(),
                internal: mg.internal_edges(mask),
                volume: mg.volume(mask),
            };
            visit(&mut acc, info);
            for i in 1u64..1 << low_bits {
                let v = i.trailing_zeros() as usize;
                let bit = 1u64 << v;
                let links = (mg.adj[v] & mask).count_ones();
                if mask & bit == 0 {
                    mask |= bit;
                    info.size += 1;
                    info.internal += links;
                    info.volume += mg.deg[v];
                } else {
                    mask &= !bit;
                    info.size -= 1;
                    info.internal -= links;
                    info.volume -= mg.deg[v];
                }
                info.mask = mask;
                visit(&mut acc, info);
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Ratio `num / den` kept as integers for exact comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Frac {
    pub num: u64,
    pub den: u64,
}

impl Frac {
    pub fn new(num: u64, den: u64) -> Self {
        Frac { num, den }
    }

    pub fn cmp(&self, other: &Frac) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Running minimum of a ratio with canonical witness tie-breaking.
#[derive(Clone, Copy, Debug)]
pub(crate) struct MinRatio {
    pub best: Option<(Frac, u64)>,
}

impl MinRatio {
    pub fn new() -> Self {
        MinRatio { best: None }
    }

    #[inline]
    pub fn offer(&mut self, r: Frac, mask: u64) {
        use std::cmp::Ordering::*;
        let better = match self.best {
            None => true,
            Some((b, bm)) => match r.cmp(&b) {
                Less => true,
                Equal => crate::vertex_set::mask_witness_cmp(mask, bm) == Less,
                Greater => false,
            },
        };
        if better {
            self.best = Some((r, mask));
        }
    }

    pub fn merge(mut self, other: MinRatio) -> MinRatio {
        if let Some((r, m)) = other.best {
            self.offer(r, m);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixtures::{cycle, petersen};

    #[test]
    fn scan_visits_every_mask_once() {
        let g = petersen();
        let mg = MaskGraph::new(&g);
        let (count, xor, bad) = scan(
            &mg,
            || (0u64, 0u64, 0u64),
            |acc, info| {
                acc.0 += 1;
                acc.1 ^= info.mask;
                if info.internal != mg.internal_edges(info.mask)
                    || info.volume != mg.volume(info.mask)
                    || info.size != info.mask.count_ones()
                {
                    acc.2 += 1;
                }
            },
            |a, b| (a.0 + b.0, a.1 ^ b.1, a.2 + b.2),
        );
        assert_eq!(count, 1024);
        assert_eq!(xor, 0);
        assert_eq!(bad, 0);
    }

    #[test]
    fn neighbourhood_tables() {
        let g = cycle(8);
        let mg = MaskGraph::new(&g);
        assert_eq!(mg.nbr(0b11), 0b1000_0100);
        assert_eq!(mg.nbr(mg.full()), 0);
    }
}
