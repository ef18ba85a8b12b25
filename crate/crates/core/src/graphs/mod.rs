//! Simple undirected graphs, exact colouring and girth facts, random
//! high-girth sampling and a small Ramsey search.

mod certificate;
mod colour;
mod erdos;
mod girth;
mod ramsey;

pub use certificate::{certify, GraphCertificate, LowerBoundMethod};
pub use colour::{
    chromatic_number, clique_number, greedy_colouring, independence_number, k_colouring, Colouring, DEFAULT_CHI_LIMIT,
};
pub use erdos::{erdos_sample, ErdosParams, ErdosSample};
pub use girth::{girth, Girth};
pub use ramsey::{find_monochromatic_triangle, ramsey_exhaustive, EdgeColouring, RamseyReport};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            let v = (u + 1) % n;
            if u != v && !g.has_edge(u, v) {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u).unwrap();
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        g
    }

    /// Mycielski construction; preserves triangle-freeness and raises the
    /// chromatic number by one.
    pub fn mycielski(&self) -> Self {
        let n = self.n;
        let mut g = Graph::new(2 * n + 1);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
            g.add_edge(u, n + v).unwrap();
            g.add_edge(n + u, v).unwrap();
        }
        for u in 0..n {
            g.add_edge(n + u, 2 * n).unwrap();
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
        }
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::IndexOutOfRange { index: x, dim: self.n });
            }
        }
        if !self.has_edge(u, v) {
            self.adj[u].push(v);
            self.adj[v].push(u);
            self.adj[u].sort_unstable();
            self.adj[v].sort_unstable();
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v))).collect()
    }

    /// Induced subgraph on `keep`, relabelled in the given order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (u, v) in self.edges() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v]).unwrap();
            }
        }
        g
    }

    pub fn remove_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Parses `n m` followed by `m` lines `u v`. Blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let nums: Vec<&str> = l.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(Error::Parse { line, msg: format!("expected two integers, got `{l}`") });
            }
            let p = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse { line, msg: format!("`{s}`: {e}") });
            Ok((p(nums[0])?, p(nums[1])?))
        };
        let (line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing `n m` header".into() })?;
        let (n, m) = parse_pair(line, header)?;
        let mut g = Graph::new(n);
        let mut seen = 0;
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            g.add_edge(u, v).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse { line: 1, msg: format!("header declares {m} edges, found {seen}") });
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n {
            writeln!(s, "  {v};").unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(s, "  {u} -- {v};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}
