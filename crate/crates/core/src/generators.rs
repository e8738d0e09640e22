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

//! Graph families and seeded random generators.
//!
//! Random generators draw from `ChaCha8Rng` seeded with `seed_from_u64`, so
//! a `(parameters, seed)` pair always yields the same graph on every
//! platform.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::is_k_connected;
use crate::error::{arg_err, Result};
use crate::graph::{edge, Edge, Graph, Vertex};

fn build(n: usize, edges: impl IntoIterator<Item = Edge>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid graph")
}

/// Hub `0` joined to every vertex of the rim cycle `1, 2, ..., n-1`.
pub fn wheel(n: usize) -> Result<Graph> {
    if n < 4 {
        return arg_err(format!("wheel needs at least 4 vertices, got {n}"));
    }
    let rim = n - 1;
    let spokes = (1..n).map(|v| (0, v));
    let rim_edges = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
    Ok(build(n, spokes.chain(rim_edges)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{p,q}` with sides `0..p` and `p..p+q`.
pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    build(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path_graph(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// Triangular prism: triangles `0 1 2` and `3 4 5` matched by `i -- i+3`.
pub fn prism() -> Graph {
    build(
        6,
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
}

/// Series chain of diamond cells.
///
/// Cell `i` joins junction `3i` to junction `3i + 3` through the two inner
/// vertices `3i + 1` and `3i + 2`. A chain of `c` cells has `c` cycles and
/// `2^c` paths between its end junctions, and being series-parallel it
/// contains no K4-subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetChain {
    pub cells: usize,
    pub graph: Graph,
    pub endpoints: (Vertex, Vertex),
    pub junctions: Vec<Vertex>,
}

impl GadgetChain {
    /// Inner (non-junction) vertices of the chain.
    pub fn inner_vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..3 * self.cells + 1).filter(|v| v % 3 != 0)
    }
}

pub fn gadget_chain(cells: usize) -> Result<GadgetChain> {
    if cells < 1 {
        return arg_err("gadget chain needs at least one cell");
    }
    let edges = (0..cells).flat_map(|i| {
        let (j, p, q, k) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3);
        [(j, p), (p, k), (j, q), (q, k)]
    });
    let graph = build(3 * cells + 1, edges);
    let junctions: Vec<Vertex> = (0..=cells).map(|i| 3 * i).collect();
    Ok(GadgetChain {
        cells,
        graph,
        endpoints: (0, 3 * cells),
        junctions,
    })
}

/// Random 2-connected graph on `n` vertices with exactly `ears` ears, so
/// `n + ears - 1` edges.
///
/// Starts from a random cycle and attaches `ears - 1` random open ears; the
/// vertex labels are shuffled at the end.
pub fn random_2connected(n: usize, ears: usize, seed: u64) -> Result<Graph> {
    if n < 3 || ears < 1 {
        return arg_err(format!("infeasible 2-connected parameters n={n}, ears={ears}"));
    }
    let m = n + ears - 1;
    if m > n * (n - 1) / 2 {
        return arg_err(format!("{m} edges do not fit on {n} vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        if let Some(edges) = try_ear_growth(n, ears, &mut rng) {
            let mut labels: Vec<Vertex> = (0..n).collect();
            labels.shuffle(&mut rng);
            return Ok(build(n, edges.into_iter().map(|(u, v)| (labels[u], labels[v]))));
        }
    }
    arg_err(format!("could not realize n={n}, ears={ears}"))
}

fn try_ear_growth(n: usize, ears: usize, rng: &mut ChaCha8Rng) -> Option<BTreeSet<Edge>> {
    let cycle_len = if ears == 1 { n } else { rng.gen_range(3..=n) };
    let mut edges: BTreeSet<Edge> = (0..cycle_len)
        .map(|i| edge(i, (i + 1) % cycle_len))
        .collect();
    let mut next = cycle_len;
    for i in 1..ears {
        let remaining = n - next;
        let inner = if i == ears - 1 {
            remaining
        } else {
            rng.gen_range(0..=remaining)
        };
        let (a, b) = if inner == 0 {
            let free: Vec<Edge> = (0..next)
                .flat_map(|u| (u + 1..next).map(move |v| (u, v)))
                .filter(|e| !edges.contains(e))
                .collect();
            *free.choose(rng)?
        } else {
            let a = rng.gen_range(0..next);
            let mut b = rng.gen_range(0..next - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        };
        let mut prev = a;
        for _ in 0..inner {
            edges.insert(edge(prev, next));
            prev = next;
            next += 1;
        }
        edges.insert(edge(prev, b));
    }
    (next == n).then_some(edges)
}

/// Random 3-connected graph on `n` vertices grown from `K4`.
///
/// Each growth step either splits a vertex of degree at least four (both
/// halves keep at least two old neighbors and gain the edge between them)
/// or adds a vertex joined to three existing vertices. Once `n` vertices
/// exist, every missing edge is added with a per-graph random probability
/// below one half. All three operations preserve 3-connectivity; the result
/// is checked anyway.
pub fn random_3connected(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 {
        return arg_err(format!("3-connected graphs need at least 4 vertices, got {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 4;
    let mut edges: BTreeSet<Edge> = complete(4).edges().collect();
    let degree = |edges: &BTreeSet<Edge>, v: Vertex| edges.iter().filter(|&&(a, b)| a == v || b == v).count();

    while count < n {
        let splittable: Vec<Vertex> = (0..count).filter(|&v| degree(&edges, v) >= 4).collect();
        let fresh = count;
        count += 1;
        if !splittable.is_empty() && rng.gen_bool(0.5) {
            let v = *splittable.choose(&mut rng).unwrap();
            let mut nbrs: Vec<Vertex> = edges
                .iter()
                .filter_map(|&(a, b)| match (a == v, b == v) {
                    (true, _) => Some(b),
                    (_, true) => Some(a),
                    _ => None,
                })
                .collect();
            nbrs.shuffle(&mut rng);
            let moved = rng.gen_range(2..=nbrs.len() - 2);
            for &w in &nbrs[..moved] {
                edges.remove(&edge(v, w));
                edges.insert(edge(fresh, w));
            }
            edges.insert(edge(v, fresh));
        } else {
            let picks = rand::seq::index::sample(&mut rng, fresh, 3);
            for w in picks.iter() {
                edges.insert(edge(w, fresh));
            }
        }
    }

    let density: f64 = rng.gen_range(0.0..0.5);
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(density) {
                edges.insert((u, v));
            }
        }
    }
    let g = build(n, edges);
    assert!(is_k_connected(&g, 3), "growth produced a graph that is not 3-connected");
    Ok(g)
}
