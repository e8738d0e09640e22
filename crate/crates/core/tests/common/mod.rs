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


//! Brute-force reference implementations, independent of the library's
//! search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use k4sub::{Edge, Graph, Vertex};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi graph with edge probability `p`.
pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn degree_map(edges: &[Edge]) -> BTreeMap<Vertex, Vec<Vertex>> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    adj
}

fn connected(adj: &BTreeMap<Vertex, Vec<Vertex>>) -> bool {
    let Some(&start) = adj.keys().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in &adj[&u] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

fn subset(edges: &[Edge], mask: u64) -> Vec<Edge> {
    edges
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// Whether the edge set is a subdivision of K4: connected, four vertices
/// of degree three, the rest of degree two, and suppressing the degree-two
/// vertices leaves six distinct pairs.
pub fn is_k4_edge_set(edges: &[Edge]) -> bool {
    let adj = degree_map(edges);
    let branch: Vec<Vertex> = adj.iter().filter(|(_, n)| n.len() == 3).map(|(&v, _)| v).collect();
    if branch.len() != 4 || adj.values().any(|n| n.len() != 2 && n.len() != 3) || !connected(&adj) {
        return false;
    }
    let mut pairs = BTreeSet::new();
    for &b in &branch {
        for &first in &adj[&b] {
            let (mut prev, mut cur) = (b, first);
            while adj[&cur].len() == 2 {
                let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
                prev = cur;
                cur = next;
            }
            if cur == b {
                return false;
            }
            pairs.insert((b.min(cur), b.max(cur)));
        }
    }
    pairs.len() == 6
}

/// Every K4-subdivision of `g` as a sorted edge list.
pub fn k4_subsets(g: &Graph) -> BTreeSet<Vec<Edge>> {
    let edges: Vec<Edge> = g.edges().collect();
    assert!(edges.len() <= 20);
    (0u64..1 << edges.len())
        .filter(|m| m.count_ones() >= 6)
        .map(|m| subset(&edges, m))
        .filter(|s| is_k4_edge_set(s))
        .collect()
}

/// Number of edge subsets forming a single cycle.
pub fn cycle_subsets(g: &Graph) -> u64 {
    let edges: Vec<Edge> = g.edges().collect();
    assert!(edges.len() <= 20);
    (0u64..1 << edges.len())
        .filter(|m| m.count_ones() >= 3)
        .filter(|&m| {
            let adj = degree_map(&subset(&edges, m));
            adj.values().all(|n| n.len() == 2) && connected(&adj)
        })
        .count() as u64
}

/// Number of edge subsets forming an `s`-`t` path.
pub fn path_subsets(g: &Graph, s: Vertex, t: Vertex) -> u64 {
    let edges: Vec<Edge> = g.edges().collect();
    assert!(edges.len() <= 20);
    (1u64..1 << edges.len())
        .filter(|&m| {
            let adj = degree_map(&subset(&edges, m));
            adj.get(&s).is_some_and(|n| n.len() == 1)
                && adj.get(&t).is_some_and(|n| n.len() == 1)
                && adj.iter().all(|(&v, n)| v == s || v == t || n.len() == 2)
                && connected(&adj)
        })
        .count() as u64
}

/// Smallest set of vertices other than `s`, `t` whose removal separates
/// them, by trying all subsets; `None` when `s` and `t` are adjacent.
pub fn min_separator_size(g: &Graph, s: Vertex, t: Vertex) -> Option<usize> {
    if g.has_edge(s, t) {
        return None;
    }
    let others: Vec<Vertex> = g.vertices().filter(|&v| v != s && v != t).collect();
    let mut best = others.len();
    for mask in 0u64..1 << others.len() {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let removed: BTreeSet<Vertex> = subset_vertices(&others, mask);
        let reach = g.reachable_from(s, |v| removed.contains(&v));
        if !reach[t] {
            best = size;
        }
    }
    Some(best)
}

fn subset_vertices(vs: &[Vertex], mask: u64) -> BTreeSet<Vertex> {
    vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

/// k-connectivity by removing every vertex set of size below `k`.
pub fn is_k_connected_oracle(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    let vs: Vec<Vertex> = g.vertices().collect();
    (0u64..1 << n).filter(|m| (m.count_ones() as usize) < k).all(|m| {
        let removed = subset_vertices(&vs, m);
        let Some(start) = g.vertices().find(|v| !removed.contains(v)) else {
            return true;
        };
        let reach = g.reachable_from(start, |v| removed.contains(&v));
        g.vertices().all(|v| removed.contains(&v) || reach[v])
    })
}
