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

//! Counting reductions from s-t paths to K4-subdivisions.
//!
//! Three constructions are provided:
//!
//! * the fixed-marker instance, a K4 on markers `a b c d` whose edge `ab`
//!   is replaced by `a s`, the input graph, and `t b`, so that subdivisions
//!   with real set `{a, b, c, d}` correspond to `s`-`t` paths;
//! * the weighted instance, in which every edge of the fixed instance that
//!   touches a marker is replaced by one or two diamond chains, so that the
//!   fixed count can be read off the top bits of the total count;
//! * the apex instance, the input graph joined to `s` independent apex
//!   vertices, whose counts for several `s` determine the count of the
//!   input graph through a Vandermonde solve.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{arg_err, Error, Result};
use crate::generators::gadget_chain;
use crate::graph::{Edge, Graph, Vertex};
use crate::k4::{count_k4, count_k4_with_real, for_each_k4, K4Count};

/// Fixed-marker instance built from an `s`-`t` path counting instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedInstance {
    pub graph: Graph,
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub d: Vertex,
    pub s: Vertex,
    pub t: Vertex,
}

impl FixedInstance {
    pub fn markers(&self) -> [Vertex; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// Keeps the vertices of `g`, appends markers `a b c d` as the next four
/// ids, and adds `a s`, `t b`, `a c`, `a d`, `c d`, `b c`, `b d`.
pub fn build_fixed_instance(g: &Graph, s: Vertex, t: Vertex) -> Result<FixedInstance> {
    let n = g.vertex_count();
    if s >= n || t >= n {
        return arg_err(format!("terminals must be below {n}"));
    }
    if s == t {
        return arg_err("source and target coincide");
    }
    let (a, b, c, d) = (n, n + 1, n + 2, n + 3);
    let mut graph = Graph::empty(n + 4);
    for (u, v) in g.edges() {
        graph.add_edge(u, v)?;
    }
    for (u, v) in [(a, s), (t, b), (a, c), (a, d), (c, d), (b, c), (b, d)] {
        graph.add_edge(u, v)?;
    }
    Ok(FixedInstance {
        graph,
        a,
        b,
        c,
        d,
        s,
        t,
    })
}

/// Number of K4-subdivisions of the fixed instance whose real vertices are
/// exactly the four markers.
pub fn count_fixed_subdivisions(fi: &FixedInstance, cap: u64) -> K4Count {
    count_k4_with_real(&fi.graph, fi.markers(), cap).expect("markers are four distinct vertices")
}

/// Diamond chain spliced in between `from` and `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedChain {
    pub from: Vertex,
    pub to: Vertex,
    /// All junctions, `from` and `to` included.
    pub junctions: Vec<Vertex>,
    pub inner: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacedEdge {
    pub edge: Edge,
    /// One chain, or two joined in series.
    pub chains: Vec<EmbeddedChain>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    pub graph: Graph,
    pub cells: usize,
    pub markers: [Vertex; 4],
    pub gadget_map: Vec<ReplacedEdge>,
    /// Whether `2^cells` is known to exceed the subdivision count of the
    /// fixed instance, which makes [`recover_fixed_count`] exact.
    pub recovery_certified: bool,
}

impl WeightedInstance {
    /// Vertices created by the gadgets: chain inner vertices and the
    /// junctions between two series chains.
    pub fn gadget_vertices(&self) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for r in &self.gadget_map {
            for ch in &r.chains {
                out.extend(ch.inner.iter().copied());
                out.extend(ch.junctions[1..ch.junctions.len() - 1].iter().copied());
            }
            if r.chains.len() == 2 {
                out.insert(r.chains[0].to);
            }
        }
        out
    }
}

fn splice_chain(graph: &mut Graph, from: Vertex, to: Vertex, cells: usize) -> EmbeddedChain {
    let chain = gadget_chain(cells).expect("cells >= 1");
    let (first, last) = chain.endpoints;
    let mut map = vec![usize::MAX; chain.graph.vertex_count()];
    map[first] = from;
    map[last] = to;
    for v in chain.graph.vertices() {
        if map[v] == usize::MAX {
            map[v] = graph.add_vertex();
        }
    }
    for (u, v) in chain.graph.edges() {
        graph.add_edge(map[u], map[v]).expect("fresh chain vertices");
    }
    EmbeddedChain {
        from,
        to,
        junctions: chain.junctions.iter().map(|&j| map[j]).collect(),
        inner: chain.inner_vertices().map(|v| map[v]).collect(),
    }
}

/// Replaces each edge of the fixed instance with one marker endpoint by a
/// diamond chain of `cells` cells, and each edge with two marker endpoints
/// by two such chains in series. Other edges are kept.
pub fn build_weighted_instance(fi: &FixedInstance, cells: usize) -> Result<WeightedInstance> {
    if cells < 1 {
        return arg_err("cells must be at least 1");
    }
    let markers = fi.markers();
    let base = &fi.graph;
    let mut graph = Graph::empty(base.vertex_count());
    let mut gadget_map = Vec::new();
    for (u, v) in base.edges() {
        let touching = markers.iter().filter(|&&x| x == u || x == v).count();
        match touching {
            0 => graph.add_edge(u, v)?,
            1 => {
                let chain = splice_chain(&mut graph, u, v, cells);
                gadget_map.push(ReplacedEdge {
                    edge: (u, v),
                    chains: vec![chain],
                });
            }
            _ => {
                let mid = graph.add_vertex();
                let first = splice_chain(&mut graph, u, mid, cells);
                let second = splice_chain(&mut graph, mid, v, cells);
                gadget_map.push(ReplacedEdge {
                    edge: (u, v),
                    chains: vec![first, second],
                });
            }
        }
    }

    // the total count is at most the number of edge subsets; otherwise ask
    // the enumerator whether it stays below 2^cells
    let recovery_certified = if cells > base.edge_count() {
        true
    } else if cells < 64 {
        let limit = (1u64 << cells) - 1;
        !count_k4(base, limit).truncated
    } else {
        false
    };

    Ok(WeightedInstance {
        graph,
        cells,
        markers,
        gadget_map,
        recovery_certified,
    })
}

/// `floor(total / 2^(12 cells))`.
pub fn recover_fixed_count(total: &BigUint, cells: usize) -> BigUint {
    total >> (12 * cells)
}

/// Subdivision counts `N[(x, y)]` of a graph, keyed by how many marker
/// vertices are real (`x`) and how many lie on branch paths as unreal
/// vertices (`y`).
pub fn marker_usage(g: &Graph, markers: &[Vertex; 4]) -> BTreeMap<(usize, usize), u64> {
    let mut table = BTreeMap::new();
    for_each_k4(g, |real, paths| {
        let x = real.iter().filter(|r| markers.contains(r)).count();
        let mut inner: Vec<Vertex> = paths
            .iter()
            .flat_map(|p| p[1..p.len() - 1].iter().copied())
            .filter(|v| markers.contains(v))
            .collect();
        inner.sort_unstable();
        inner.dedup();
        *table.entry((x, inner.len())).or_insert(0) += 1;
        ControlFlow::Continue(())
    });
    table
}

/// `sum 2^(cells (3x + 2y)) N[(x, y)]`: the subdivision count of the
/// weighted instance predicted from the marker usage table.
pub fn predicted_weighted_count(table: &BTreeMap<(usize, usize), u64>, cells: usize) -> BigUint {
    table
        .iter()
        .map(|(&(x, y), &count)| BigUint::from(count) << (cells * (3 * x + 2 * y)))
        .sum()
}

/// Input graph joined to `s` pairwise non-adjacent apex vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexInstance {
    pub graph: Graph,
    pub base_size: usize,
    pub apexes: Vec<Vertex>,
}

/// Base vertices keep their ids; apexes are `n..n+s`.
pub fn build_apex_instance(g: &Graph, s: usize) -> Result<ApexInstance> {
    if s < 1 {
        return arg_err("at least one apex is required");
    }
    let n = g.vertex_count();
    let mut graph = Graph::empty(n + s);
    for (u, v) in g.edges() {
        graph.add_edge(u, v)?;
    }
    for x in n..n + s {
        for v in 0..n {
            graph.add_edge(v, x)?;
        }
    }
    Ok(ApexInstance {
        graph,
        base_size: n,
        apexes: (n..n + s).collect(),
    })
}

/// Falling factorial `s (s-1) ... (s-t+1)`; zero when `t > s`.
pub fn p_falling(s: u64, t: u64) -> BigUint {
    if t > s {
        return BigUint::zero();
    }
    (0..t).fold(BigUint::one(), |acc, i| acc * (s - i))
}

/// Counts for one apex instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexRow {
    pub s: usize,
    pub total: BigUint,
    /// Subdivisions using exactly `t` apexes, indexed by `t`.
    pub by_apexes: Vec<BigUint>,
    /// Distinct partial subdivisions keyed by remaining edge set and the
    /// neighbor sets of the deleted apexes.
    pub gap_classes: Vec<u64>,
    /// Gap-keyed classes in which two deleted apexes have the same neighbor
    /// set. Exchanging those apexes does not change the subdivision, so such
    /// a class has fewer than `P(s, t)` extensions.
    pub symmetric_classes: Vec<u64>,
    /// Distinct partial subdivisions keyed by remaining graph alone.
    pub remaining_graph_classes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexCensus {
    pub rows: Vec<ApexRow>,
    /// `N_t = count_t / P(s, t)` up to the largest `t` with `N_t > 0`.
    pub partial_counts: Vec<BigRational>,
}

impl ApexCensus {
    /// `sum_t P(s, t) N_t`.
    pub fn predicted_total(&self, s: usize) -> BigRational {
        self.partial_counts
            .iter()
            .enumerate()
            .map(|(t, n_t)| BigRational::from_integer(p_falling(s as u64, t as u64).into()) * n_t)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }
}

type GapKey = (Vec<Edge>, Vec<Vec<Vertex>>);
type RemainingKey = (Vec<Vertex>, Vec<Edge>);

/// `1 / prod m!` over the multiplicities `m` of equal entries in `sorted`.
fn orbit_weight(sorted: &[Vec<Vertex>]) -> (BigRational, bool) {
    let mut denom = BigInt::one();
    let mut symmetric = false;
    let mut run = 1u32;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
            symmetric = true;
            denom *= run;
        } else {
            run = 1;
        }
    }
    (BigRational::new(BigInt::one(), denom), symmetric)
}

fn apex_row(g: &Graph, s: usize) -> Result<(ApexRow, Vec<BigRational>)> {
    let inst = build_apex_instance(g, s)?;
    let n = inst.base_size;
    let mut by_apexes: Vec<u64> = vec![0; s + 1];
    let mut gap: Vec<HashSet<GapKey>> = vec![HashSet::new(); s + 1];
    let mut remaining: Vec<HashSet<RemainingKey>> = vec![HashSet::new(); s + 1];
    for_each_k4(&inst.graph, |_, paths| {
        let mut base_edges = Vec::new();
        let mut apex_nbrs: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        let mut base_vertices = BTreeSet::new();
        for p in paths {
            for w in p.windows(2) {
                let (u, v) = (w[0].min(w[1]), w[0].max(w[1]));
                if v < n {
                    base_edges.push((u, v));
                } else {
                    apex_nbrs.entry(v).or_default().push(u);
                }
            }
            base_vertices.extend(p.iter().copied().filter(|&v| v < n));
        }
        base_edges.sort_unstable();
        let t = apex_nbrs.len();
        let mut gaps: Vec<Vec<Vertex>> = apex_nbrs
            .into_values()
            .map(|mut nb| {
                nb.sort_unstable();
                nb
            })
            .collect();
        gaps.sort();
        by_apexes[t] += 1;
        remaining[t].insert((base_vertices.into_iter().collect(), base_edges.clone()));
        gap[t].insert((base_edges, gaps));
        ControlFlow::Continue(())
    });
    let mut symmetric_classes = vec![0; s + 1];
    let mut weighted = vec![BigRational::zero(); s + 1];
    for t in 0..=s {
        for (_, gaps) in &gap[t] {
            let (w, sym) = orbit_weight(gaps);
            weighted[t] += w;
            symmetric_classes[t] += u64::from(sym);
        }
    }
    let row = ApexRow {
        s,
        total: by_apexes.iter().sum::<u64>().into(),
        by_apexes: by_apexes.into_iter().map(BigUint::from).collect(),
        gap_classes: gap.iter().map(|h| h.len() as u64).collect(),
        symmetric_classes,
        remaining_graph_classes: remaining.iter().map(|h| h.len() as u64).collect(),
    };
    Ok((row, weighted))
}

/// Enumerates every apex instance `G_s` for `s` in `s_values`, buckets its
/// subdivisions by the number `t` of apexes they use, and derives
/// `N_t = count_t / P(s, t)`.
///
/// `N_t` equals the number of gap-keyed classes, each weighted by the
/// reciprocal of its apex symmetry; it is an integer whenever no class is
/// symmetric.
///
/// With `t_max` given, every `s` must be at least `t_max` and no
/// subdivision may use more than `t_max` apexes, so each row determines
/// the full table. Without it, row `s` determines `N_t` for `t <= s`.
///
/// Panics if some `N_t` disagrees between rows or with the weighted class
/// count: either means a bug.
pub fn apex_census(g: &Graph, s_values: &[usize], t_max: Option<usize>) -> Result<ApexCensus> {
    if s_values.is_empty() {
        return arg_err("no apex counts requested");
    }
    if let Some(tm) = t_max {
        if let Some(&s) = s_values.iter().find(|&&s| s < tm) {
            return arg_err(format!("s = {s} is below t_max = {tm}"));
        }
    }
    let mut rows = Vec::new();
    let mut table: BTreeMap<usize, BigRational> = BTreeMap::new();
    for &s in s_values {
        let (row, weighted) = apex_row(g, s)?;
        for (t, count) in row.by_apexes.iter().enumerate() {
            if let Some(tm) = t_max {
                if t > tm && !count.is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "a subdivision of G_{s} uses {t} apexes, more than t_max = {tm}"
                    )));
                }
            }
            let p = p_falling(s as u64, t as u64);
            let n_t = BigRational::new(BigInt::from(count.clone()), BigInt::from(p));
            assert_eq!(n_t, weighted[t], "N_{t} from G_{s} differs from its weighted class count");
            match table.get(&t) {
                Some(prev) => assert_eq!(prev, &n_t, "N_{t} depends on s"),
                None => {
                    table.insert(t, n_t);
                }
            }
        }
        rows.push(row);
    }
    let len = table.iter().filter(|(_, n_t)| !n_t.is_zero()).map(|(&t, _)| t + 1).max().unwrap_or(0);
    let partial_counts = (0..len).map(|t| table.remove(&t).unwrap_or_else(BigRational::zero)).collect();
    Ok(ApexCensus { rows, partial_counts })
}

/// Recovers the constant term of `value(s) = c_0 + c_1 s + ... + c_T s^T`
/// from evaluations at `T + 1` or more distinct points, by exact Gaussian
/// elimination on the Vandermonde system. Surplus points are checked for
/// consistency.
pub fn vandermonde_recover(evals: &[(u64, BigInt)], t_max: usize) -> Result<BigInt> {
    let mut seen = BTreeSet::new();
    for (s, _) in evals {
        if !seen.insert(*s) {
            return arg_err(format!("evaluation point s = {s} repeated"));
        }
    }
    let size = t_max + 1;
    if evals.len() < size {
        return arg_err(format!(
            "{} evaluation points given, {size} needed for degree {t_max}",
            evals.len()
        ));
    }

    let mut rows: Vec<Vec<BigRational>> = evals[..size]
        .iter()
        .map(|(s, value)| {
            let s = BigInt::from(*s);
            let mut row: Vec<BigRational> = Vec::with_capacity(size + 1);
            let mut power = BigInt::one();
            for _ in 0..size {
                row.push(BigRational::from_integer(power.clone()));
                power *= &s;
            }
            row.push(BigRational::from_integer(value.clone()));
            row
        })
        .collect();

    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !rows[r][col].is_zero())
            .expect("distinct points give a nonsingular Vandermonde matrix");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..size {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=size {
                    let delta = &factor * &rows[col][c];
                    rows[r][c] -= delta;
                }
            }
        }
    }
    let coeffs: Vec<BigRational> = rows.into_iter().map(|r| r[size].clone()).collect();

    for (s, value) in &evals[size..] {
        let s = BigRational::from_integer(BigInt::from(*s));
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * &s + c;
        }
        if acc != BigRational::from_integer(value.clone()) {
            return Err(Error::Inconsistent(format!(
                "point s = {s} does not lie on a polynomial of degree {t_max}"
            )));
        }
    }

    let constant = &coeffs[0];
    if !constant.is_integer() {
        return Err(Error::Inconsistent(format!(
            "constant term {constant} is not an integer"
        )));
    }
    Ok(constant.to_integer())
}
