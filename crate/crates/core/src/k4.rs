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

//! Detection, enumeration and construction of K4-subdivisions.
//!
//! A K4-subdivision is identified by its edge set. Its real vertices are
//! the four vertices of degree three in that edge set, so the enumeration
//! runs over quadruples of candidate real vertices and, for each, over all
//! systems of six internally disjoint branch paths. Distinct path systems
//! give distinct edge sets, so nothing needs to be deduplicated.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::connectivity::is_k_connected;
use crate::error::{arg_err, Result};
use crate::flow::{fan_unchecked, set_to_set_paths};
use crate::graph::{edge, Edge, Graph, Vertex};

/// Branch-path order: pairs of real-vertex indices in lexicographic order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubdivisionCertificate {
    /// Ascending.
    pub real_vertices: [Vertex; 4],
    /// `branch_paths[p]` runs from `real_vertices[PAIRS[p].0]` to
    /// `real_vertices[PAIRS[p].1]`.
    pub branch_paths: [Vec<Vertex>; 6],
    /// Sorted edges of the union of the branch paths.
    pub edge_set: Vec<Edge>,
}

impl SubdivisionCertificate {
    /// Builds a certificate from six branch paths given in any order and
    /// orientation. Returns `None` if their endpoints do not form the six
    /// pairs of four vertices.
    pub fn assemble(paths: Vec<Vec<Vertex>>) -> Option<Self> {
        if paths.len() != 6 || paths.iter().any(|p| p.len() < 2) {
            return None;
        }
        let ends: BTreeSet<Vertex> = paths
            .iter()
            .flat_map(|p| [p[0], p[p.len() - 1]])
            .collect();
        if ends.len() != 4 {
            return None;
        }
        let real: Vec<Vertex> = ends.into_iter().collect();
        let real = [real[0], real[1], real[2], real[3]];
        let mut slots: [Option<Vec<Vertex>>; 6] = Default::default();
        for mut p in paths {
            if p[0] > p[p.len() - 1] {
                p.reverse();
            }
            let i = real.iter().position(|&r| r == p[0])?;
            let j = real.iter().position(|&r| r == p[p.len() - 1])?;
            let slot = PAIRS.iter().position(|&q| q == (i, j))?;
            if slots[slot].replace(p).is_some() {
                return None;
            }
        }
        let branch_paths = slots.map(|s| s.expect("six distinct pairs fill every slot"));
        Some(Self::from_ordered(real, branch_paths))
    }

    fn from_ordered(real_vertices: [Vertex; 4], branch_paths: [Vec<Vertex>; 6]) -> Self {
        let mut edge_set: Vec<Edge> = branch_paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| edge(w[0], w[1])))
            .collect();
        edge_set.sort_unstable();
        SubdivisionCertificate {
            real_vertices,
            branch_paths,
            edge_set,
        }
    }

    /// All vertices of the subdivision, ascending.
    pub fn vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.branch_paths.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// The branch path between two real vertices, oriented from `a`.
    pub fn branch(&self, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
        let i = self.real_vertices.iter().position(|&r| r == a)?;
        let j = self.real_vertices.iter().position(|&r| r == b)?;
        let key = (i.min(j), i.max(j));
        let p = PAIRS.iter().position(|&q| q == key)?;
        let mut path = self.branch_paths[p].clone();
        if i > j {
            path.reverse();
        }
        Some(path)
    }
}

/// Decides whether `edges` (a subset of the edges of `g`) forms a
/// K4-subdivision, returning its certificate if so.
pub fn is_k4_subdivision(g: &Graph, edges: &[Edge]) -> Result<Option<SubdivisionCertificate>> {
    let mut set: BTreeSet<Edge> = BTreeSet::new();
    for &(u, v) in edges {
        if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
            return arg_err(format!("edge {u} {v} is not an edge of the graph"));
        }
        set.insert(edge(u, v));
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in &set {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut real = Vec::new();
    for (&v, nbrs) in &adj {
        match nbrs.len() {
            2 => {}
            3 => real.push(v),
            _ => return Ok(None),
        }
    }
    if real.len() != 4 {
        return Ok(None);
    }

    // connectivity of the subgraph
    let mut seen: BTreeSet<Vertex> = BTreeSet::from([real[0]]);
    let mut stack = vec![real[0]];
    while let Some(u) = stack.pop() {
        for &w in &adj[&u] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    if seen.len() != adj.len() {
        return Ok(None);
    }

    // smooth degree-2 vertices: trace each of the twelve half-branches
    let mut paths = Vec::new();
    for &r in &real {
        for &first in &adj[&r] {
            let mut path = vec![r, first];
            while !real.contains(path.last().unwrap()) {
                let (prev, cur) = (path[path.len() - 2], path[path.len() - 1]);
                let next = adj[&cur].iter().copied().find(|&w| w != prev).unwrap();
                path.push(next);
            }
            let end = *path.last().unwrap();
            if end == r {
                return Ok(None);
            }
            if r < end {
                paths.push(path);
            }
        }
    }
    Ok(SubdivisionCertificate::assemble(paths))
}

/// Backtracking search over branch-path systems for a fixed real set.
struct PathSystemSearch<'g> {
    g: &'g Graph,
    real: [Vertex; 4],
    /// Real vertices and inner vertices of placed paths.
    blocked: Vec<bool>,
    paths: [Vec<Vertex>; 6],
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<Vertex>,
}

impl<'g> PathSystemSearch<'g> {
    fn new(g: &'g Graph, real: [Vertex; 4]) -> Self {
        let mut blocked = vec![false; g.vertex_count()];
        for &r in &real {
            blocked[r] = true;
        }
        PathSystemSearch {
            g,
            real,
            blocked,
            paths: Default::default(),
            stamp: vec![0; g.vertex_count()],
            epoch: 0,
            queue: Vec::new(),
        }
    }

    /// Whether `b` can still be reached from `a` through unblocked vertices.
    fn connects(&mut self, a: Vertex, b: Vertex) -> bool {
        if self.g.has_edge(a, b) {
            return true;
        }
        self.epoch += 1;
        self.queue.clear();
        for &w in self.g.neighbors(a) {
            if !self.blocked[w] {
                self.stamp[w] = self.epoch;
                self.queue.push(w);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &w in self.g.neighbors(u) {
                if w == b {
                    return true;
                }
                if !self.blocked[w] && self.stamp[w] != self.epoch {
                    self.stamp[w] = self.epoch;
                    self.queue.push(w);
                }
            }
        }
        false
    }

    /// Every pair from `next` on is still routable, and every real vertex
    /// keeps enough free exits for its remaining paths.
    fn feasible(&mut self, next: usize) -> bool {
        let mut need = [0usize; 4];
        for &(i, j) in &PAIRS[next..] {
            need[i] += 1;
            need[j] += 1;
        }
        for i in 0..4 {
            if need[i] == 0 {
                continue;
            }
            let r = self.real[i];
            let mut exits = self.g.neighbors(r).iter().filter(|&&w| !self.blocked[w]).count();
            for &(a, b) in &PAIRS[next..] {
                let other = if a == i {
                    b
                } else if b == i {
                    a
                } else {
                    continue;
                };
                if self.g.has_edge(r, self.real[other]) {
                    exits += 1;
                }
            }
            if exits < need[i] {
                return false;
            }
        }
        for &(i, j) in &PAIRS[next..] {
            if !self.connects(self.real[i], self.real[j]) {
                return false;
            }
        }
        true
    }

    fn place<F>(&mut self, p: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Vertex; 4], &[Vec<Vertex>; 6]) -> ControlFlow<()>,
    {
        if p == 6 {
            return visit(&self.real, &self.paths);
        }
        if !self.feasible(p) {
            return ControlFlow::Continue(());
        }
        let (i, j) = PAIRS[p];
        let (a, b) = (self.real[i], self.real[j]);
        self.paths[p].clear();
        self.paths[p].push(a);
        self.walk(p, a, b, visit)
    }

    fn walk<F>(&mut self, p: usize, u: Vertex, target: Vertex, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Vertex; 4], &[Vec<Vertex>; 6]) -> ControlFlow<()>,
    {
        let g = self.g;
        for &w in g.neighbors(u) {
            if w == target {
                self.paths[p].push(w);
                let flow = self.place(p + 1, visit);
                self.paths[p].pop();
                flow?;
            } else if !self.blocked[w] {
                self.blocked[w] = true;
                self.paths[p].push(w);
                let flow = self.walk(p, w, target, visit);
                self.paths[p].pop();
                self.blocked[w] = false;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with every branch-path system whose real vertices are
/// exactly `real`.
pub fn for_each_k4_with_real<F>(g: &Graph, real: [Vertex; 4], mut visit: F) -> Result<()>
where
    F: FnMut(&[Vertex; 4], &[Vec<Vertex>; 6]) -> ControlFlow<()>,
{
    let mut sorted = real;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[3] >= g.vertex_count() {
        return arg_err(format!("real vertices {real:?} must be four distinct vertices"));
    }
    if sorted.iter().all(|&r| g.degree(r) >= 3) {
        let _ = PathSystemSearch::new(g, sorted).place(0, &mut visit);
    }
    Ok(())
}

/// Quadruples of vertices that can be the real set of some K4-subdivision:
/// every member has degree at least three and a 3-fan to the other three.
pub fn candidate_quadruples(g: &Graph) -> Vec<[Vertex; 4]> {
    let cand: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    let mut quads = Vec::new();
    let k = cand.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    quads.push([cand[a], cand[b], cand[c], cand[d]]);
                }
            }
        }
    }
    quads
        .into_par_iter()
        .filter(|q| {
            (0..4).all(|i| {
                let others: Vec<Vertex> = (0..4).filter(|&j| j != i).map(|j| q[j]).collect();
                fan_unchecked(g, q[i], &others, 3).is_some()
            })
        })
        .collect()
}

/// Sequentially visits every K4-subdivision of `g`: quadruples in
/// lexicographic order, then path systems in search order.
pub fn for_each_k4<F>(g: &Graph, mut visit: F)
where
    F: FnMut(&[Vertex; 4], &[Vec<Vertex>; 6]) -> ControlFlow<()>,
{
    for real in candidate_quadruples(g) {
        let mut stopped = false;
        let _ = PathSystemSearch::new(g, real).place(0, &mut |r: &[Vertex; 4], p: &[Vec<Vertex>; 6]| {
            let flow = visit(r, p);
            stopped = flow.is_break();
            flow
        });
        if stopped {
            return;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct K4List {
    pub certificates: Vec<SubdivisionCertificate>,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct K4Count {
    pub count: BigUint,
    pub truncated: bool,
}

fn capped_list(g: &Graph, real: [Vertex; 4], cap: u64) -> (Vec<SubdivisionCertificate>, bool) {
    let mut out = Vec::new();
    let mut truncated = false;
    let _ = PathSystemSearch::new(g, real).place(0, &mut |r: &[Vertex; 4], p: &[Vec<Vertex>; 6]| {
        if out.len() as u64 == cap {
            truncated = true;
            return ControlFlow::Break(());
        }
        out.push(SubdivisionCertificate::from_ordered(*r, p.clone()));
        ControlFlow::Continue(())
    });
    (out, truncated)
}

fn capped_count(g: &Graph, real: [Vertex; 4], cap: u64) -> (u64, bool) {
    let mut count = 0u64;
    let mut truncated = false;
    let _ = PathSystemSearch::new(g, real).place(0, &mut |_: &[Vertex; 4], _: &[Vec<Vertex>; 6]| {
        if count == cap {
            truncated = true;
            return ControlFlow::Break(());
        }
        count += 1;
        ControlFlow::Continue(())
    });
    (count, truncated)
}

/// All K4-subdivisions of `g`, or the first `cap` in canonical order with
/// `truncated` set when more exist.
///
/// Quadruples are searched in parallel, each up to `cap`, and merged in
/// lexicographic order so the result does not depend on scheduling.
pub fn enumerate_k4(g: &Graph, cap: u64) -> K4List {
    let parts: Vec<(Vec<SubdivisionCertificate>, bool)> = candidate_quadruples(g)
        .into_par_iter()
        .map(|q| capped_list(g, q, cap))
        .collect();
    let mut out = K4List::default();
    for (certs, truncated) in parts {
        let room = (cap - out.certificates.len() as u64) as usize;
        if certs.len() > room || (truncated && certs.len() == room) {
            out.certificates.extend(certs.into_iter().take(room));
            out.truncated = true;
            return out;
        }
        out.certificates.extend(certs);
    }
    out
}

/// Number of K4-subdivisions of `g`, capped like [`enumerate_k4`].
pub fn count_k4(g: &Graph, cap: u64) -> K4Count {
    let parts: Vec<(u64, bool)> = candidate_quadruples(g)
        .into_par_iter()
        .map(|q| capped_count(g, q, cap))
        .collect();
    merge_counts(parts, cap)
}

/// Number of K4-subdivisions whose real vertices are exactly `real`.
pub fn count_k4_with_real(g: &Graph, real: [Vertex; 4], cap: u64) -> Result<K4Count> {
    let mut count = 0u64;
    let mut truncated = false;
    for_each_k4_with_real(g, real, |_, _| {
        if count == cap {
            truncated = true;
            return ControlFlow::Break(());
        }
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(K4Count {
        count: count.into(),
        truncated,
    })
}

fn merge_counts(parts: Vec<(u64, bool)>, cap: u64) -> K4Count {
    let mut total = 0u64;
    for (count, truncated) in parts {
        if truncated || total + count > cap {
            return K4Count {
                count: cap.into(),
                truncated: true,
            };
        }
        total += count;
    }
    K4Count {
        count: total.into(),
        truncated: false,
    }
}

fn check_cycle(g: &Graph, apex: Vertex, cycle: &[Vertex]) -> Result<()> {
    let n = g.vertex_count();
    if apex >= n {
        return arg_err(format!("vertex {apex} out of range"));
    }
    if cycle.len() < 3 {
        return arg_err("a cycle needs at least three vertices");
    }
    let distinct: BTreeSet<Vertex> = cycle.iter().copied().collect();
    if distinct.len() != cycle.len() {
        return arg_err("cycle repeats a vertex");
    }
    if distinct.contains(&apex) {
        return arg_err(format!("vertex {apex} lies on the cycle"));
    }
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if u >= n || v >= n || !g.has_edge(u, v) {
            return arg_err(format!("{u} {v} is not an edge of the graph"));
        }
    }
    if !is_k_connected(g, 3) {
        return arg_err("graph is not 3-connected");
    }
    Ok(())
}

/// The three arcs of `cycle` between the given attachment vertices.
fn cycle_arcs(cycle: &[Vertex], attach: [Vertex; 3]) -> Vec<Vec<Vertex>> {
    let mut pos: Vec<usize> = attach
        .iter()
        .map(|a| cycle.iter().position(|c| c == a).expect("attachment on cycle"))
        .collect();
    pos.sort_unstable();
    let len = cycle.len();
    (0..3)
        .map(|i| {
            let (from, to) = (pos[i], pos[(i + 1) % 3]);
            let steps = (to + len - from) % len;
            (0..=steps).map(|k| cycle[(from + k) % len]).collect()
        })
        .collect()
}

/// K4-subdivision made of `cycle` and a 3-fan from `apex` onto it.
///
/// Requires `g` to be 3-connected and `cycle` to avoid `apex`.
pub fn k4_from_cycle(g: &Graph, apex: Vertex, cycle: &[Vertex]) -> Result<SubdivisionCertificate> {
    check_cycle(g, apex, cycle)?;
    let mut targets = cycle.to_vec();
    targets.sort_unstable();
    let fan = fan_unchecked(g, apex, &targets, 3).expect("3-connected graph has a 3-fan onto any cycle");
    let attach = [0, 1, 2].map(|i| *fan[i].last().unwrap());
    let mut paths = fan;
    paths.extend(cycle_arcs(cycle, attach));
    Ok(SubdivisionCertificate::assemble(paths).expect("fan and arcs form a K4-subdivision"))
}

/// K4-subdivision through `cycle` in which two branch paths at `apex`
/// start with the edges `apex x` and `apex y`. Also returns the first
/// vertex `z` of the third branch path at `apex`.
///
/// The three paths are obtained as vertex-disjoint paths from the cycle to
/// `{apex, x, y}`, which may be trivial where `x` or `y` lie on the cycle,
/// and are then extended to `apex` along `x apex` and `y apex`.
pub fn k4_from_cycle_pinned(
    g: &Graph,
    apex: Vertex,
    x: Vertex,
    y: Vertex,
    cycle: &[Vertex],
) -> Result<(SubdivisionCertificate, Vertex)> {
    if x == y {
        return arg_err("pinned neighbors must be distinct");
    }
    if x >= g.vertex_count() || y >= g.vertex_count() || !g.has_edge(apex, x) || !g.has_edge(apex, y) {
        return arg_err(format!("{x} and {y} must both be neighbors of {apex}"));
    }
    check_cycle(g, apex, cycle)?;
    let mut from = cycle.to_vec();
    from.sort_unstable();
    let to = [apex, x, y];
    let links = set_to_set_paths(g, &from, &to, 3).expect("3-connected graph links a cycle to any 3 vertices");

    let mut paths = Vec::with_capacity(6);
    let mut attach = Vec::with_capacity(3);
    let mut third = None;
    for mut link in links {
        attach.push(link[0]);
        link.reverse();
        if link[0] == apex {
            third = Some(link[1]);
        } else {
            link.insert(0, apex);
        }
        paths.push(link);
    }
    let attach = [attach[0], attach[1], attach[2]];
    paths.extend(cycle_arcs(cycle, attach));
    let cert = SubdivisionCertificate::assemble(paths).expect("linked cycle forms a K4-subdivision");
    Ok((cert, third.expect("one link ends at the apex")))
}
