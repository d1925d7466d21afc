//! Graphviz export with highlighted vertex groups and edges.

use std::collections::HashSet;
use std::fmt::Write;

use crate::graph::Graph;

const PALETTE: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999", "#66c2a5", "#ffd92f",
];

/// Things to draw on top of the graph.
#[derive(Clone, Debug, Default)]
pub struct Highlight {
    /// Vertex groups, coloured in order.
    pub groups: Vec<(String, Vec<usize>)>,
    pub edges: Vec<(usize, usize)>,
}

impl Highlight {
    pub fn group(mut self, label: &str, vertices: impl IntoIterator<Item = usize>) -> Self {
        self.groups.push((label.to_string(), vertices.into_iter().collect()));
        self
    }

    /// Consecutive pairs of `seq`, plus the closing pair when `closed`.
    pub fn walk(mut self, seq: &[usize], closed: bool) -> Self {
        self.edges.extend(seq.windows(2).map(|w| (w[0], w[1])));
        if closed && seq.len() > 2 {
            self.edges.push((seq[seq.len() - 1], seq[0]));
        }
        self
    }
}

pub fn to_dot(g: &Graph, h: &Highlight) -> String {
    let mut color = vec![None; g.n()];
    for (i, (_, vs)) in h.groups.iter().enumerate() {
        for &v in vs {
            if v < g.n() {
                color[v] = Some(PALETTE[i % PALETTE.len()]);
            }
        }
    }
    let marked: HashSet<(usize, usize)> = h.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut out = String::from("graph G {\n  node [shape=circle, style=filled, fillcolor=white];\n");
    for (i, (label, _)) in h.groups.iter().enumerate() {
        let _ = writeln!(out, "  // {label}: {}", PALETTE[i % PALETTE.len()]);
    }
    for (v, c) in color.iter().enumerate() {
        match c {
            Some(c) => {
                let _ = writeln!(out, "  {v} [fillcolor=\"{c}\"];");
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        if marked.contains(&(u, v)) {
            let _ = writeln!(out, "  {u} -- {v} [penwidth=3, color=\"#d62728\"];");
        } else {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push_str("}\n");
    out
}
