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

//! Vertex-disjoint paths via unit vertex-capacity flow.
//!
//! Every vertex `v` is split into `v_in = 2v` and `v_out = 2v + 1` joined by
//! an arc of capacity one; every undirected edge becomes the two arcs
//! `u_out -> v_in` and `v_out -> u_in`. Two extra nodes serve as super
//! source and super sink when a problem has several terminals.

use std::collections::VecDeque;

use crate::error::{arg_err, Result};
use crate::graph::{Graph, Vertex};

/// A family of paths leaving a common source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSet {
    pub source: Vertex,
    pub targets: Vec<Vertex>,
    pub paths: Vec<Vec<Vertex>>,
}

/// Vertex set whose removal (together with the direct edge, if flagged)
/// leaves no path between two terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub vertices: Vec<Vertex>,
    pub direct_edge: bool,
}

impl Separator {
    /// Number of independent paths this witness rules out beyond.
    pub fn size(&self) -> usize {
        self.vertices.len() + usize::from(self.direct_edge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StPaths {
    Found(PathSet),
    Separated(Separator),
}

struct Network {
    to: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            to: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, u: usize, v: usize, cap: u32) {
        self.out[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.out[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Breadth-first augmentation until `limit` units flow or no augmenting
    /// path remains.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut pred = vec![usize::MAX; self.out.len()];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([source]);
            let mut seen = vec![false; self.out.len()];
            seen[source] = true;
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &a in &self.out[u] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && !seen[w] {
                        seen[w] = true;
                        pred[w] = a;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[sink] {
                break;
            }
            let mut v = sink;
            while v != source {
                let a = pred[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn residual_reach(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Flow on a forward arc: the capacity pushed into its reverse twin.
    fn used(&self, a: usize) -> bool {
        a.is_multiple_of(2) && self.cap[a ^ 1] > 0
    }

    /// Peels unit paths from `source` to `sink` out of the current flow.
    /// Returned paths are node sequences of the network.
    fn decompose(&mut self, source: usize, sink: usize) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        loop {
            let mut path = vec![source];
            let mut u = source;
            while u != sink {
                let Some(&a) = self.out[u].iter().find(|&&a| self.used(a)) else {
                    break;
                };
                self.cap[a ^ 1] -= 1;
                u = self.to[a];
                path.push(u);
            }
            if u != sink {
                return paths;
            }
            paths.push(path);
        }
    }
}

const IN: fn(Vertex) -> usize = |v| 2 * v;
const OUT: fn(Vertex) -> usize = |v| 2 * v + 1;

/// Builds the split network. `arc_ok(u, v)` decides whether the directed
/// graph arc `u -> v` is present; the split arc of a vertex in `uncapped`
/// gets capacity `n`. Edge arcs are effectively uncapacitated so that every
/// minimum cut consists of split arcs, i.e. of vertices.
fn split_network(g: &Graph, uncapped: &[Vertex], arc_ok: impl Fn(Vertex, Vertex) -> bool) -> Network {
    let n = g.vertex_count();
    let mut net = Network::new(2 * n + 2);
    for v in g.vertices() {
        let c = if uncapped.contains(&v) { n as u32 } else { 1 };
        net.arc(IN(v), OUT(v), c);
    }
    for u in g.vertices() {
        for &v in g.neighbors(u) {
            if arc_ok(u, v) {
                net.arc(OUT(u), IN(v), n as u32);
            }
        }
    }
    net
}

/// Collapses a network node path to the graph vertices it visits.
fn to_vertices(path: &[usize], n: usize) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::new();
    for &node in path {
        if node >= 2 * n {
            continue;
        }
        let v = node / 2;
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    out
}

fn check_vertex(g: &Graph, v: Vertex) -> Result<()> {
    if v >= g.vertex_count() {
        return arg_err(format!("vertex {v} out of range"));
    }
    Ok(())
}

/// Maximum number of internally disjoint `s`-`t` paths, stopping at `limit`.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    st_network(g, s, t).max_flow(OUT(s), IN(t), limit)
}

/// Split network for `s`-`t` paths; the direct edge, if any, carries one
/// unit.
fn st_network(g: &Graph, s: Vertex, t: Vertex) -> Network {
    let mut net = split_network(g, &[s, t], |a, b| !(a == s && b == t));
    if g.has_edge(s, t) {
        net.arc(OUT(s), IN(t), 1);
    }
    net
}

/// Finds `k` pairwise internally disjoint `s`-`t` paths, or a separator
/// witnessing that fewer than `k` exist.
///
/// When `s` and `t` are adjacent the direct edge counts as one path; the
/// separator then carries `direct_edge = true` and its vertices separate
/// `s` from `t` once that edge is removed.
pub fn disjoint_st_paths(g: &Graph, s: Vertex, t: Vertex, k: usize) -> Result<StPaths> {
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    if s == t {
        return arg_err("source and target coincide");
    }
    if k == 0 {
        return arg_err("k must be positive");
    }
    let n = g.vertex_count();
    let mut net = st_network(g, s, t);
    let flow = net.max_flow(OUT(s), IN(t), k);
    if flow < k {
        let reach = net.residual_reach(OUT(s));
        let vertices = g
            .vertices()
            .filter(|&v| v != s && v != t && reach[IN(v)] && !reach[OUT(v)])
            .collect();
        return Ok(StPaths::Separated(Separator {
            vertices,
            direct_edge: g.has_edge(s, t),
        }));
    }
    let paths = net
        .decompose(OUT(s), IN(t))
        .iter()
        .map(|p| to_vertices(p, n))
        .collect();
    Ok(StPaths::Found(PathSet {
        source: s,
        targets: vec![t],
        paths,
    }))
}

/// Fan from `v` to `k` distinct vertices of `targets`: the paths pairwise
/// share only `v` and each meets `targets` exactly in its last vertex.
///
/// Panics if the graph is `k`-connected by the caller's account but the
/// fan does not exist.
pub fn fan_paths(g: &Graph, v: Vertex, targets: &[Vertex], k: usize) -> Result<PathSet> {
    check_vertex(g, v)?;
    for &c in targets {
        check_vertex(g, c)?;
    }
    if targets.contains(&v) {
        return arg_err(format!("fan source {v} lies in the target set"));
    }
    let mut target_set: Vec<Vertex> = targets.to_vec();
    target_set.sort_unstable();
    target_set.dedup();
    if target_set.len() < k {
        return arg_err(format!(
            "target set has {} vertices, fewer than k = {k}",
            target_set.len()
        ));
    }
    if !crate::connectivity::is_k_connected(g, k) {
        return arg_err(format!("graph is not {k}-connected"));
    }
    let paths = fan_unchecked(g, v, &target_set, k)
        .unwrap_or_else(|| panic!("no {k}-fan from {v} in a {k}-connected graph"));
    let mut ends: Vec<Vertex> = paths.iter().map(|p| *p.last().unwrap()).collect();
    ends.sort_unstable();
    Ok(PathSet {
        source: v,
        targets: ends,
        paths,
    })
}

/// Fan search without the connectivity precondition. `targets` must be
/// sorted and must not contain `v`.
pub(crate) fn fan_unchecked(g: &Graph, v: Vertex, targets: &[Vertex], k: usize) -> Option<Vec<Vec<Vertex>>> {
    let n = g.vertex_count();
    let sink = 2 * n + 1;
    let is_target = |x: Vertex| targets.binary_search(&x).is_ok();
    let mut net = split_network(g, &[v], |a, _| !is_target(a));
    for &c in targets {
        net.arc(OUT(c), sink, 1);
    }
    if net.max_flow(OUT(v), sink, k) < k {
        return None;
    }
    let mut paths: Vec<Vec<Vertex>> = net
        .decompose(OUT(v), sink)
        .iter()
        .map(|p| to_vertices(p, n))
        .collect();
    paths.sort_by_key(|p| *p.last().unwrap());
    Some(paths)
}

/// `k` vertex-disjoint paths from `from` to `to`, each meeting `from` only
/// in its first vertex and `to` only in its last. A vertex in both sets
/// yields a single-vertex path.
pub(crate) fn set_to_set_paths(g: &Graph, from: &[Vertex], to: &[Vertex], k: usize) -> Option<Vec<Vec<Vertex>>> {
    let n = g.vertex_count();
    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = split_network(g, &[], |a, b| !to.contains(&a) && !from.contains(&b));
    for &c in from {
        net.arc(source, IN(c), 1);
    }
    for &d in to {
        net.arc(OUT(d), sink, 1);
    }
    if net.max_flow(source, sink, k) < k {
        return None;
    }
    Some(
        net.decompose(source, sink)
            .iter()
            .map(|p| to_vertices(p, n))
            .collect(),
    )
}
