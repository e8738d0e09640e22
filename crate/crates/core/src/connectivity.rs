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

use crate::error::Obstruction;
use crate::flow::local_connectivity;
use crate::graph::Graph;

/// True iff the graph has more than `k` vertices and no set of fewer than
/// `k` vertices disconnects it.
///
/// Checks every non-adjacent pair for `k` internally disjoint paths; a
/// graph without non-adjacent pairs is complete and only the vertex count
/// matters.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    if k == 0 {
        return true;
    }
    if !g.is_connected() {
        return false;
    }
    if g.min_degree() < k {
        return false;
    }
    for u in g.vertices() {
        for v in u + 1..n {
            if !g.has_edge(u, v) && local_connectivity(g, u, v, k) < k {
                return false;
            }
        }
    }
    true
}

/// Why a graph fails to be 2-connected, or `None` if it is 2-connected.
pub fn biconnectivity_obstruction(g: &Graph) -> Option<Obstruction> {
    let n = g.vertex_count();
    if n < 3 {
        return Some(Obstruction::TooFewVertices(n));
    }
    let reach = g.reachable_from(0, |_| false);
    if let Some(v) = reach.iter().position(|&r| !r) {
        return Some(Obstruction::Disconnected { u: 0, v });
    }
    for v in g.vertices() {
        let start = if v == 0 { 1 } else { 0 };
        let reach = g.reachable_from(start, |w| w == v);
        if reach.iter().enumerate().any(|(w, &r)| w != v && !r) {
            return Some(Obstruction::CutVertex(v));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, wheel};

    #[test]
    fn named_examples() {
        assert!(is_k_connected(&complete(4), 3));
        assert!(!is_k_connected(&cycle(5), 3));
        assert!(is_k_connected(&cycle(5), 2));
        assert!(is_k_connected(&complete_bipartite(2, 3), 2));
        assert!(!is_k_connected(&complete_bipartite(2, 3), 3));
        assert!(is_k_connected(&wheel(7).unwrap(), 3));
        assert!(!is_k_connected(&wheel(7).unwrap(), 4));
        // K3 is 2- but not 3-connected (needs more than k vertices)
        assert!(!is_k_connected(&complete(3), 3));
    }

    #[test]
    fn obstruction_witnesses() {
        assert_eq!(biconnectivity_obstruction(&cycle(4)), None);
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(biconnectivity_obstruction(&bowtie), Some(Obstruction::CutVertex(2)));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            biconnectivity_obstruction(&split),
            Some(Obstruction::Disconnected { .. })
        ));
        assert_eq!(
            biconnectivity_obstruction(&complete(2)),
            Some(Obstruction::TooFewVertices(2))
        );
    }
}
