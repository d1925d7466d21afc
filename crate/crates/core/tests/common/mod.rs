#![allow(dead_code)]

use expander_core::generators::{fixtures, gen, GenSpec};
use expander_core::Graph;

pub struct Case {
    pub name: String,
    pub g: Graph,
}

fn case(name: String, g: Graph) -> Case {
    Case { name, g }
}

/// Named small graphs.
pub fn fixture_cases() -> Vec<Case> {
    let mut out = vec![
        case("petersen".into(), fixtures::petersen()),
        case("barbell4".into(), fixtures::barbell(4)),
        case("star6".into(), fixtures::star(6)),
        case("k33".into(), fixtures::complete_bipartite(3, 3)),
        case("k26".into(), fixtures::complete_bipartite(2, 6)),
        case("k47".into(), fixtures::complete_bipartite(4, 7)),
        case("triangles3".into(), fixtures::clique_union(3, 3)),
    ];
    for n in [4, 6, 9, 12, 16, 20] {
        out.push(case(format!("C{n}"), fixtures::cycle(n)));
        out.push(case(format!("P{n}"), fixtures::path(n)));
    }
    for n in [4, 5, 8, 11] {
        out.push(case(format!("K{n}"), fixtures::complete(n)));
    }
    out
}

/// Pinned random graphs on `lo..=hi` vertices: G(n, p) over a range of
/// densities and random 3- and 4-regular graphs.
pub fn random_cases(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Case> {
    const PS: [f64; 5] = [0.15, 0.25, 0.35, 0.5, 0.7];
    let span = (hi - lo + 1) as u64;
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
            let n = lo + ((i * 7 + seed) % span) as usize;
            match i % 4 {
                3 => {
                    let d = if i % 8 == 3 { 3 } else { 4 };
                    let n = n.max(d + 1);
                    let n = if n * d % 2 == 1 { n - 1 } else { n };
                    case(format!("reg{d}_n{n}_s{s}"), gen(&GenSpec::random_regular(n, d, s)).unwrap())
                }
                k => {
                    let p = PS[((i / 4) as usize + k as usize) % PS.len()];
                    case(format!("gnp_n{n}_p{p}_s{s}"), gen(&GenSpec::gnp(n, p, s)).unwrap())
                }
            }
        })
        .collect()
}

/// Fixtures plus `count` random graphs, all with `lo..=hi` vertices.
pub fn corpus(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Case> {
    let mut out: Vec<Case> = fixture_cases().into_iter().filter(|c| (lo..=hi).contains(&c.g.n())).collect();
    out.extend(random_cases(count, lo, hi, seed));
    out
}

pub fn regular(n: usize, d: usize, seed: u64) -> Graph {
    gen(&GenSpec::random_regular(n, d, seed)).unwrap()
}

// Bitmask oracles, independent of the library's enumeration code.

pub fn masks(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 24);
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect()
}

fn nbr(adj: &[u32], s: u32) -> u32 {
    let mut out = 0;
    let mut r = s;
    while r != 0 {
        out |= adj[r.trailing_zeros() as usize];
        r &= r - 1;
    }
    out & !s
}

fn internal(adj: &[u32], s: u32) -> u32 {
    let mut twice = 0;
    let mut r = s;
    while r != 0 {
        twice += (adj[r.trailing_zeros() as usize] & s).count_ones();
        r &= r - 1;
    }
    twice / 2
}

fn volume(adj: &[u32], s: u32) -> u32 {
    let mut r = s;
    let mut vol = 0;
    while r != 0 {
        vol += adj[r.trailing_zeros() as usize].count_ones();
        r &= r - 1;
    }
    vol
}

/// An exact nonnegative fraction `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frac {
    pub num: u64,
    pub den: u64,
}

impl Frac {
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn lt(self, o: Frac) -> bool {
        self.num * o.den < o.num * self.den
    }
}

/// `min |N(U)|/|U|` over `lo <= |U| <= hi`; `None` when no size is admissible.
pub fn brute_alpha(g: &Graph, lo: usize, hi: usize) -> Option<Frac> {
    let n = g.n();
    let adj = masks(g);
    let lo = lo.max(1);
    let mut best: Option<Frac> = None;
    for s in 1u32..(1u32 << n) {
        let k = s.count_ones() as usize;
        if k < lo || k > hi {
            continue;
        }
        let f = Frac { num: nbr(&adj, s).count_ones() as u64, den: k as u64 };
        if best.is_none_or(|b| f.lt(b)) {
            best = Some(f);
        }
    }
    best
}

/// Half-mode `alpha*`.
pub fn brute_alpha_half(g: &Graph) -> Option<Frac> {
    brute_alpha(g, 1, g.n() / 2)
}

/// `h(G)` and `i(G)`.
pub fn brute_cheeger(g: &Graph) -> (f64, f64) {
    let n = g.n();
    let adj = masks(g);
    let full = (1u32 << n) - 1;
    let total = volume(&adj, full);
    let (mut h, mut i) = (f64::INFINITY, f64::INFINITY);
    for s in 1..full {
        let vs = volume(&adj, s);
        let cross = vs - 2 * internal(&adj, s);
        let small = vs.min(total - vs);
        if small > 0 {
            h = h.min(cross as f64 / small as f64);
        }
        let k = s.count_ones() as usize;
        if k <= n / 2 {
            i = i.min(cross as f64 / k as f64);
        }
    }
    (h, i)
}

/// Minimum separator size: smallest `S` such that the components of `G - S`
/// split into two sides of at most `floor(2n/3)` vertices each.
pub fn brute_min_separator(g: &Graph) -> usize {
    let n = g.n();
    let adj = masks(g);
    let full = (1u32 << n) - 1;
    let cap = 2 * n / 3;
    let mut by_size: Vec<u32> = (0..=full).collect();
    by_size.sort_by_key(|s| s.count_ones());
    for s in by_size {
        let rest = full & !s;
        let mut sizes = Vec::new();
        let mut left = rest;
        while left != 0 {
            let mut comp = 1u32 << left.trailing_zeros();
            loop {
                let grown = (comp | nbr(&adj, comp)) & rest;
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            sizes.push(comp.count_ones() as usize);
            left &= !comp;
        }
        let r = rest.count_ones() as usize;
        let mut reach = vec![false; r + 1];
        reach[0] = true;
        for c in sizes {
            for a in (c..=r).rev() {
                reach[a] |= reach[a - c];
            }
        }
        if (0..=r).any(|a| reach[a] && a <= cap && r - a <= cap) {
            return s.count_ones() as usize;
        }
    }
    unreachable!("S = V is always a separator")
}

/// Largest `e(W)/|W|` over `1 <= |W| <= max_size`.
pub fn brute_max_density(g: &Graph, max_size: usize) -> f64 {
    let n = g.n();
    let adj = masks(g);
    let mut best = 0.0f64;
    for s in 1u32..(1u32 << n) {
        let k = s.count_ones() as usize;
        if k <= max_size {
            best = best.max(internal(&adj, s) as f64 / k as f64);
        }
    }
    best
}

/// BFS distances, `usize::MAX` when unreachable.
pub fn distances(g: &Graph, src: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.n()];
    let mut q = std::collections::VecDeque::from([src]);
    d[src] = 0;
    while let Some(v) = q.pop_front() {
        for &u in g.neighbors(v) {
            if d[u] == usize::MAX {
                d[u] = d[v] + 1;
                q.push_back(u);
            }
        }
    }
    d
}

pub fn edges_inside(g: &Graph, set: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    g.edges().filter(|&(u, v)| inside[u] && inside[v]).count()
}

/// Number of edges on a longest simple path, by subset dynamic programming.
pub fn brute_longest_path(g: &Graph) -> usize {
    let n = g.n();
    let adj = masks(g);
    // ends[mask]: vertices at which some path spanning exactly `mask` ends
    let mut ends = vec![0u32; 1 << n];
    let mut best = 0;
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1u32..(1u32 << n) {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize - 1);
        let mut r = e;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            let mut ext = adj[v] & !mask;
            while ext != 0 {
                let u = ext.trailing_zeros();
                ext &= ext - 1;
                ends[(mask | 1 << u) as usize] |= 1 << u;
            }
        }
    }
    best
}
