//! Immutable simple undirected graphs and the set primitives everything else
//! is built from.

use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::vertex_set::VertexSet;

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric; there are no loops and no
/// parallel edges. The graph never changes after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Result of [`Graph::induce`]: the subgraph plus the map from new ids to old ids.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    /// `map[new] = old`.
    pub map: Vec<usize>,
}

impl Induced {
    /// Lifts a set of new ids back to the parent graph.
    pub fn lift(&self, set: &VertexSet, parent_n: usize) -> VertexSet {
        VertexSet::from_iter(parent_n, set.iter().map(|v| self.map[v]))
    }
}

/// External neighbourhood and edge counts of a vertex set.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryStats {
    pub external_neighborhood: VertexSet,
    pub crossing_edges: usize,
    pub internal_edges: usize,
    pub touching_edges: usize,
}

/// A graph distance that may be infinite (disconnected pairs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate and reversed pairs collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) out of range for n = {n}"));
            }
            if u == v {
                return invalid(format!("self-loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Sum of degrees over `set`.
    pub fn volume(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.degree(v)).sum()
    }

    /// Number of edges with both ends in `set`.
    pub fn internal_edges(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|v| self.adj[v].iter().filter(|&&w| w > v && set.contains(w)).count())
            .sum()
    }

    /// Number of edges between two disjoint sets.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter()
            .map(|v| self.adj[v].iter().filter(|&&w| b.contains(w)).count())
            .sum()
    }

    /// External neighbourhood `N(U)`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n());
        for v in set.iter() {
            for &w in &self.adj[v] {
                if !set.contains(w) {
                    out.insert(w);
                }
            }
        }
        out
    }

    /// `N(U, W)` together with edge counts. Without `w`, `W = V \ U`.
    pub fn boundary(&self, u: &VertexSet, w: Option<&VertexSet>) -> Result<BoundaryStats> {
        self.check_set(u)?;
        let target = match w {
            Some(w) => {
                self.check_set(w)?;
                if !u.is_disjoint(w) {
                    return invalid("boundary: U and W overlap");
                }
                w.clone()
            }
            None => u.complement(),
        };
        let mut nb = VertexSet::empty(self.n());
        let mut crossing = 0;
        let mut internal2 = 0;
        for v in u.iter() {
            for &x in &self.adj[v] {
                if target.contains(x) {
                    crossing += 1;
                    nb.insert(x);
                } else if u.contains(x) {
                    internal2 += 1;
                }
            }
        }
        Ok(BoundaryStats {
            external_neighborhood: nb,
            crossing_edges: crossing,
            internal_edges: internal2 / 2,
            touching_edges: internal2 / 2 + crossing,
        })
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n() {
            return invalid(format!(
                "vertex set over {} vertices used with a graph on {}",
                s.universe(),
                self.n()
            ));
        }
        Ok(())
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut q = VecDeque::new();
        dist[src] = 0;
        q.push_back(src);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS from a set of sources restricted to `allowed`; returns distances and parents.
    pub(crate) fn bfs_within(
        &self,
        sources: &[usize],
        allowed: &VertexSet,
    ) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut q = VecDeque::new();
        for &s in sources {
            if allowed.contains(s) && dist[s] == usize::MAX {
                dist[s] = 0;
                q.push_back(s);
            }
        }
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if allowed.contains(w) && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// Vertices at distance at most `t` from `v`.
    pub fn ball(&self, v: usize, t: usize) -> Result<VertexSet> {
        if v >= self.n() {
            return invalid(format!("ball: vertex {v} out of range 0..{}", self.n()));
        }
        let dist = self.bfs_distances(v);
        Ok(VertexSet::from_iter(
            self.n(),
            (0..self.n()).filter(|&u| dist[u] <= t),
        ))
    }

    /// Maximum distance from `v` to a reachable vertex.
    pub fn eccentricity(&self, v: usize) -> usize {
        self.bfs_distances(v)
            .into_iter()
            .filter(|&d| d != usize::MAX)
            .max()
            .unwrap_or(0)
    }

    pub fn diameter(&self) -> Distance {
        let mut best = 0;
        for v in 0..self.n() {
            for d in self.bfs_distances(v) {
                if d == usize::MAX {
                    return Distance::Infinite;
                }
                best = best.max(d);
            }
        }
        Distance::Finite(best)
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = VertexSet::empty(n);
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Whether `set` induces a connected subgraph (the empty set does not).
    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        let Some(s) = set.first() else {
            return false;
        };
        let (dist, _) = self.bfs_within(&[s], set);
        set.iter().all(|v| dist[v] != usize::MAX)
    }

    /// Induced subgraph on `set`, relabelled to `0..|set|` in increasing order.
    pub fn induce(&self, set: &VertexSet) -> Result<Induced> {
        self.check_set(set)?;
        if set.is_empty() {
            return invalid("induce: empty vertex set");
        }
        let map: Vec<usize> = set.iter().collect();
        let mut back = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let mut adj = vec![Vec::new(); map.len()];
        let mut m2 = 0;
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.adj[v] {
                if back[w] != usize::MAX {
                    adj[i].push(back[w]);
                }
            }
            m2 += adj[i].len();
        }
        Ok(Induced {
            graph: Graph { adj, m: m2 / 2 },
            map,
        })
    }

    /// Replaces every edge by a path with `ell` new internal vertices.
    pub fn subdivide(&self, ell: usize) -> Graph {
        if ell == 0 {
            return self.clone();
        }
        let n = self.n();
        let total = n + ell * self.m;
        let mut edges = Vec::with_capacity((ell + 1) * self.m);
        let mut next = n;
        for (u, v) in self.edges() {
            let mut prev = u;
            for _ in 0..ell {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, v));
        }
        Graph::from_edges(total, edges).expect("subdivision edges are valid")
    }

    /// Bit masks of neighbourhoods; only for graphs with at most 64 vertices.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64);
        self.adj
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &w| m | 1 << w))
            .collect()
    }

    /// Order-independent 64-bit FNV-1a hash of `n` and the sorted edge list.
    pub fn graph_hash(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(self.n() as u64);
        for (u, v) in self.edges() {
            feed(u as u64);
            feed(v as u64);
        }
        h
    }

    /// Parses the edge-list text format.
    ///
    /// An optional `# n=<count>` header fixes the vertex count; other lines
    /// starting with `#` and blank lines are ignored. Every remaining line is a
    /// `u v` pair of 0-based ids.
    pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_id: Option<usize> = None;
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix('#') {
                if let Some(val) = rest.trim().strip_prefix("n=") {
                    let n = val.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("bad vertex count {:?}", val.trim()),
                    })?;
                    declared = Some(n);
                }
                continue;
            }
            let mut it = t.split_whitespace();
            let mut next_id = |what: &str| -> Result<usize> {
                let tok = it.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("missing {what} vertex"),
                })?;
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex id {tok:?}"),
                })
            };
            let u = next_id("first")?;
            let v = next_id("second")?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected exactly two vertex ids".into(),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("self-loop at vertex {u}"),
                });
            }
            if let Some(n) = declared {
                if u >= n || v >= n {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("vertex id out of range for n={n}"),
                    });
                }
            }
            max_id = Some(max_id.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }
        let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
        Graph::from_edges(n, edges)
    }

    pub fn parse_str(text: &str) -> Result<Graph> {
        Self::parse_edge_list(text.as_bytes())
    }

    /// Writes the edge-list format with a `# n=` header.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# n={}", self.n())?;
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to a Vec");
        String::from_utf8(buf).expect("ascii output")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=", self.n(), self.m())?;
        f.debug_list().entries(self.edges()).finish()?;
        f.write_str(")")
    }
}
