// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Simple undirected graphs on vertices `0..n` and the edge-list text format.
//!
//! The text format is line based:
//!
//! ```text
//! # comment
//! p 4 6
//! 0 1
//! 1 2
//! ```
//!
//! The optional `p <n> <m>` header fixes the vertex count; without it the
//! vertex count is one more than the largest id mentioned.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Normalized unordered edge, smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A finite simple undirected graph.
///
/// Adjacency lists are kept sorted so that every traversal visits neighbors
/// in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `{u, v}`, rejecting loops, duplicates and ids out of
    /// range.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::Argument(format!(
                "edge {u} {v} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::Argument(format!("loop at vertex {u}")));
        }
        if !self.edges.insert(edge(u, v)) {
            return Err(Error::Argument(format!("duplicate edge {u} {v}")));
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        Ok(())
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&edge(u, v))
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// The graph with vertex `v` removed and the remaining vertices
    /// renumbered consecutively. The second value maps new ids to old ids.
    pub fn remove_vertex(&self, v: Vertex) -> (Graph, Vec<Vertex>) {
        self.remove_vertices(&[v])
    }

    pub fn remove_vertices(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = self.vertices().filter(|u| !removed.contains(u)).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &u) in keep.iter().enumerate() {
            new_id[u] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (u, v) in self.edges() {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                g.add_edge(new_id[u], new_id[v]).expect("subgraph of a simple graph");
            }
        }
        (g, keep)
    }

    /// Subgraph on the same vertex set containing only `edges`.
    pub fn spanning_subgraph<I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::empty(self.vertex_count());
        for (u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(Error::Argument(format!("edge {u} {v} not in graph")));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Breadth-first reachability from `start`, skipping vertices for which
    /// `blocked` returns true.
    pub fn reachable_from(&self, start: Vertex, blocked: impl Fn(Vertex) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] && !blocked(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// True when the graph has at least one vertex and all vertices lie in
    /// one component.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return false;
        }
        self.reachable_from(0, |_| false).into_iter().all(|x| x)
    }

    /// Serializes in the edge-list format with a `p n m` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {} {}", self.vertex_count(), self.edge_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

/// Parses the edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(usize, Vertex, Vertex)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |reason: String| Error::Parse { line, reason };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields[0] == "p" {
            if header.is_some() {
                return Err(err("second header line".into()));
            }
            if !edges.is_empty() {
                return Err(err("header after edges".into()));
            }
            if fields.len() != 3 {
                return Err(err(format!("malformed header '{trimmed}'")));
            }
            let n = parse_num(fields[1]).map_err(err)?;
            let m = parse_num(fields[2]).map_err(err)?;
            header = Some((n, m, line));
            continue;
        }
        if fields.len() != 2 {
            return Err(err(format!("malformed edge line '{trimmed}'")));
        }
        let u = parse_num(fields[0]).map_err(err)?;
        let v = parse_num(fields[1]).map_err(err)?;
        edges.push((line, u, v));
    }

    let n = match header {
        Some((n, _, _)) => n,
        None => edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    let mut g = Graph::empty(n);
    for (line, u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                reason: format!("vertex id out of declared range 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                reason: format!("loop at vertex {u}"),
            });
        }
        if g.has_edge(u, v) {
            return Err(Error::Parse {
                line,
                reason: format!("duplicate edge {u} {v}"),
            });
        }
        g.add_edge(u, v).expect("checked above");
    }
    if let Some((_, m, line)) = header {
        if m != g.edge_count() {
            return Err(Error::Parse {
                line,
                reason: format!("header declares {m} edges, found {}", g.edge_count()),
            });
        }
    }
    Ok(g)
}

fn parse_num(s: &str) -> std::result::Result<usize, String> {
    s.parse::<usize>()
        .map_err(|_| format!("'{s}' is not a non-negative integer"))
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}
