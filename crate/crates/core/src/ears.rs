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

//! Open ear decompositions via DFS chain decomposition.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::connectivity::biconnectivity_obstruction;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};

/// Ordered ears of a 2-connected graph.
///
/// The first ear is a cycle written as a closed walk (first vertex repeated
/// at the end); every later ear is an open path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EarDecomposition {
    pub ears: Vec<Vec<Vertex>>,
}

impl EarDecomposition {
    pub fn len(&self) -> usize {
        self.ears.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ears.is_empty()
    }

    /// Spanning subgraph formed by the first `count` ears.
    pub fn prefix_graph(&self, n: usize, count: usize) -> Graph {
        let mut g = Graph::empty(n);
        for ear in &self.ears[..count] {
            for w in ear.windows(2) {
                g.add_edge(w[0], w[1]).expect("ears are edge-disjoint");
            }
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EarDefect {
    #[error("decomposition has no ears")]
    Empty,
    #[error("first ear is not a cycle of length at least 3")]
    FirstNotCycle,
    #[error("ear {0} repeats a vertex")]
    NotSimple(usize),
    #[error("ear {0} has no edge")]
    Degenerate(usize),
    #[error("ear {0} uses {1:?}, which is not an edge of the graph")]
    ForeignEdge(usize, Edge),
    #[error("edge {1:?} appears again in ear {0}")]
    RepeatedEdge(usize, Edge),
    #[error("ear {0} is closed")]
    Closed(usize),
    #[error("endpoint {1} of ear {0} is not on an earlier ear")]
    Detached(usize, Vertex),
    #[error("inner vertex {1} of ear {0} already lies on an earlier ear")]
    InnerVertexReused(usize, Vertex),
    #[error("ears miss {0} edges of the graph")]
    MissingEdges(usize),
    #[error("ear count {got} differs from m - n + 1 = {expected}")]
    WrongCount { got: usize, expected: i64 },
}

/// Computes an open ear decomposition with exactly `m - n + 1` ears.
///
/// DFS from vertex 0 with ascending neighbor order; for each vertex `u` in
/// discovery order, each back edge `u -> w` into the subtree of `u` starts
/// a chain that climbs tree edges from `w` until it meets an already
/// visited vertex. On a 2-connected graph the first chain closes at the
/// root and every later chain is an open path.
pub fn open_ear_decomposition(g: &Graph) -> Result<EarDecomposition> {
    if let Some(obstruction) = biconnectivity_obstruction(g) {
        return Err(Error::NotBiconnected(obstruction));
    }
    let n = g.vertex_count();

    let mut order = Vec::with_capacity(n);
    let mut index = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut stack: Vec<(Vertex, usize)> = vec![(0, 0)];
    index[0] = 0;
    order.push(0);
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        if let Some(&w) = g.neighbors(u).get(*next) {
            *next += 1;
            if index[w] == usize::MAX {
                index[w] = order.len();
                order.push(w);
                parent[w] = u;
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }

    // back edges grouped at their ancestor endpoint, descendants in
    // discovery order
    let mut back: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for (a, b) in g.edges() {
        if parent[a] == b || parent[b] == a {
            continue;
        }
        let (anc, desc) = if index[a] < index[b] { (a, b) } else { (b, a) };
        back[anc].push(desc);
    }
    for list in &mut back {
        list.sort_by_key(|&w| index[w]);
    }

    let mut visited = vec![false; n];
    let mut ears = Vec::new();
    for &u in &order {
        visited[u] = true;
        for &w in &back[u] {
            let mut chain = vec![u, w];
            let mut x = w;
            while !visited[x] {
                visited[x] = true;
                x = parent[x];
                chain.push(x);
            }
            ears.push(chain);
        }
    }

    let ears = ears
        .into_iter()
        .enumerate()
        .map(|(i, ear)| if i == 0 { normalize_cycle(ear) } else { normalize_path(ear) })
        .collect();
    let d = EarDecomposition { ears };
    debug_assert_eq!(verify_ears(g, &d), Ok(()));
    Ok(d)
}

/// Closed walk starting at its minimum vertex, heading to the smaller of
/// that vertex's two cycle neighbors.
fn normalize_cycle(mut walk: Vec<Vertex>) -> Vec<Vertex> {
    walk.pop();
    let start = (0..walk.len()).min_by_key(|&i| walk[i]).unwrap();
    walk.rotate_left(start);
    if walk[1] > walk[walk.len() - 1] {
        walk[1..].reverse();
    }
    walk.push(walk[0]);
    walk
}

fn normalize_path(mut path: Vec<Vertex>) -> Vec<Vertex> {
    if path[0] > path[path.len() - 1] {
        path.reverse();
    }
    path
}

/// Checks every defining property of an open ear decomposition of `g`.
pub fn verify_ears(g: &Graph, d: &EarDecomposition) -> std::result::Result<(), EarDefect> {
    let first = d.ears.first().ok_or(EarDefect::Empty)?;
    if first.len() < 4 || first.first() != first.last() {
        return Err(EarDefect::FirstNotCycle);
    }

    let mut seen_vertices: BTreeSet<Vertex> = BTreeSet::new();
    let mut seen_edges: BTreeSet<Edge> = BTreeSet::new();
    for (i, ear) in d.ears.iter().enumerate() {
        if ear.len() < 2 {
            return Err(EarDefect::Degenerate(i));
        }
        for w in ear.windows(2) {
            let e = edge(w[0], w[1]);
            if w[0] == w[1] || !g.has_edge(w[0], w[1]) {
                return Err(EarDefect::ForeignEdge(i, e));
            }
            if !seen_edges.insert(e) {
                return Err(EarDefect::RepeatedEdge(i, e));
            }
        }
        let body = if i == 0 { &ear[..ear.len() - 1] } else { &ear[..] };
        let distinct: BTreeSet<Vertex> = body.iter().copied().collect();
        if distinct.len() != body.len() {
            return Err(if i > 0 && ear[0] == ear[ear.len() - 1] {
                EarDefect::Closed(i)
            } else {
                EarDefect::NotSimple(i)
            });
        }
        if i > 0 {
            for &end in [ear[0], ear[ear.len() - 1]].iter() {
                if !seen_vertices.contains(&end) {
                    return Err(EarDefect::Detached(i, end));
                }
            }
            for &inner in &ear[1..ear.len() - 1] {
                if seen_vertices.contains(&inner) {
                    return Err(EarDefect::InnerVertexReused(i, inner));
                }
            }
        }
        seen_vertices.extend(body.iter().copied());
    }

    if seen_edges.len() != g.edge_count() {
        return Err(EarDefect::MissingEdges(g.edge_count() - seen_edges.len()));
    }
    let expected = g.edge_count() as i64 - g.vertex_count() as i64 + 1;
    if d.len() as i64 != expected {
        return Err(EarDefect::WrongCount {
            got: d.len(),
            expected,
        });
    }
    Ok(())
}
