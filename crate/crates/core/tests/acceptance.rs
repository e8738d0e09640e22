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


//! End-to-end acceptance checks. Runs without the libtest harness and
//! prints one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use common::{binom, gnp, k4_subsets, rng};
use k4sub::bounds::{cycle_sum_bound, phi_lower_cubic, star_bound};
use k4sub::cycles::{count_cycles, count_st_paths, enumerate_cycles, DEFAULT_CAP};
use k4sub::ears::{open_ear_decomposition, verify_ears};
use k4sub::generators::{complete, complete_bipartite, prism, random_2connected, random_3connected, wheel};
use k4sub::k4::{count_k4, enumerate_k4};
use k4sub::reductions::{
    apex_census, build_apex_instance, build_fixed_instance, build_weighted_instance, count_fixed_subdivisions,
    recover_fixed_count, vandermonde_recover,
};
use k4sub::{is_k_connected, Edge, Graph};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Check {
    let spent = start.elapsed();
    ensure!(spent <= limit, "took {spent:?}, limit {limit:?}");
    Ok(())
}

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn wheel_formula() -> Check {
    let start = Instant::now();
    let expected = [4u64, 10, 20, 35, 56];
    for (n, want) in (5..=9).zip(expected) {
        ensure!(binom(n as u64 - 1, 3) == want, "binomial table mismatch at n={n}");
        let got = count_k4(&wheel(n).unwrap(), DEFAULT_CAP);
        ensure!(!got.truncated && got.count == BigUint::from(want), "W{n}: {} != {want}", got.count);
    }
    within(start, Duration::from_secs(60))
}

fn k4_equalities() -> Check {
    let k4 = complete(4);
    ensure!(count_k4(&k4, DEFAULT_CAP).count == BigUint::one(), "count_k4(K4) != 1");
    ensure!(phi_lower_cubic(4).unwrap() == BigUint::one(), "cubic lower bound at 4 != 1");
    let degrees = k4.degrees();
    ensure!(star_bound(&degrees).unwrap() == rat(1), "star bound != 1");
    let cs = cycle_sum_bound(&degrees).unwrap();
    ensure!(cs.exact == BigInt::from(4) && cs.chain == rat(4), "cycle sum bound ({}, {}) != (4, 4)", cs.exact, cs.chain);
    // the sum it bounds is attained
    let actual: u64 = k4.vertices().map(|v| count_cycles(&k4.remove_vertex(v).0, DEFAULT_CAP).count).sum();
    ensure!(actual == 4, "cycles over vertex-deleted subgraphs: {actual}");
    Ok(())
}

fn bipartite_cycles() -> Check {
    for k in 3..=7 {
        let list = enumerate_cycles(&complete_bipartite(2, k), DEFAULT_CAP);
        let want = binom(k as u64, 2);
        ensure!(list.cycles.len() as u64 == want && !list.truncated, "K2,{k}: {} cycles", list.cycles.len());
        let distinct: BTreeSet<_> = list.cycles.iter().collect();
        ensure!(distinct.len() == list.cycles.len(), "K2,{k}: duplicate cycles");
    }
    Ok(())
}

fn two_connected_properties() -> Check {
    let start = Instant::now();
    let mut r = rng(4);
    for i in 0..100 {
        let n = r.gen_range(3..=12);
        let max_ears = 8.min(n * (n - 1) / 2 - n + 1);
        let ears = r.gen_range(1..=max_ears);
        let g = random_2connected(n, ears, 1000 + i).map_err(|e| e.to_string())?;
        let (n, m) = (g.vertex_count(), g.edge_count());
        let d = open_ear_decomposition(&g).map_err(|e| e.to_string())?;
        verify_ears(&g, &d).map_err(|e| format!("instance {i}: {e}"))?;
        let l = d.len();
        ensure!(l == m - n + 1, "instance {i}: {l} ears, m-n+1 = {}", m - n + 1);
        for s in 0..n {
            for t in s + 1..n {
                let paths = count_st_paths(&g, s, t, DEFAULT_CAP).unwrap();
                ensure!(paths.count >= l as u64 + 1, "instance {i}: {s}-{t} has {} paths", paths.count);
            }
        }
        let cycles = count_cycles(&g, DEFAULT_CAP);
        ensure!(cycles.count >= binom(l as u64 + 1, 2), "instance {i}: {} cycles", cycles.count);
        for count in 1..=l {
            let prefix = d.prefix_graph(n, count);
            let used: Vec<usize> = prefix.vertices().filter(|&v| prefix.degree(v) > 0).collect();
            let isolated: Vec<usize> = prefix.vertices().filter(|&v| prefix.degree(v) == 0).collect();
            let (induced, _) = prefix.remove_vertices(&isolated);
            ensure!(
                induced.vertex_count() == used.len() && is_k_connected(&induced, 2),
                "instance {i}: union of first {count} ears is not 2-connected"
            );
        }
    }
    within(start, Duration::from_secs(300))
}

fn three_connected_bounds() -> Check {
    let start = Instant::now();
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for n in 4..=7 {
        corpus.push((format!("W{n}"), wheel(n).unwrap()));
        corpus.push((format!("K{n}"), complete(n)));
    }
    corpus.push(("prism".into(), prism()));
    let mut r = rng(5);
    for i in 0..500 {
        let n = r.gen_range(4..=7);
        corpus.push((format!("random #{i}"), random_3connected(n, 5000 + i as u64).map_err(|e| e.to_string())?));
    }
    for (name, g) in &corpus {
        ensure!(g.vertex_count() <= 7 && is_k_connected(g, 3), "{name} is not a 3-connected graph on <= 7 vertices");
        let n = g.vertex_count();
        let count = count_k4(g, DEFAULT_CAP);
        ensure!(!count.truncated, "{name}: count truncated");
        let exact = rat(BigInt::from(count.count.clone()));
        let lower = rat(BigInt::from(phi_lower_cubic(n).unwrap()));
        ensure!(exact >= lower, "{name}: {exact} below cubic bound {lower}");

        let mut fan = BigInt::zero();
        let mut pinned = BigInt::zero();
        for v in g.vertices() {
            let c = count_cycles(&g.remove_vertex(v).0, DEFAULT_CAP).count;
            let d = g.degree(v) as u64;
            fan += c;
            pinned += BigInt::from(c) * binom(d, 2).div_ceil(3);
        }
        let quarter = |x: BigInt| BigRational::new(x, BigInt::from(4));
        ensure!(exact >= quarter(fan.clone()), "{name}: {exact} below fan bound {}", quarter(fan));
        ensure!(exact >= quarter(pinned.clone()), "{name}: {exact} below pinned bound {}", quarter(pinned));
        let star = star_bound(&g.degrees()).unwrap();
        ensure!(exact >= star, "{name}: {exact} below star bound {star}");
    }
    within(start, Duration::from_secs(600))
}

fn fixed_reduction() -> Check {
    let mut r = rng(6);
    for i in 0..50 {
        let n = r.gen_range(2..=7);
        let p = r.gen_range(0.3..0.8);
        let g = gnp(n, p, &mut r);
        let mut ends: Vec<usize> = (0..n).collect();
        ends.shuffle(&mut r);
        let (s, t) = (ends[0], ends[1]);
        let paths = count_st_paths(&g, s, t, DEFAULT_CAP).unwrap();
        let oracle = common::path_subsets(&g, s, t);
        ensure!(paths.count == oracle, "instance {i}: path count {} vs oracle {oracle}", paths.count);
        let fi = build_fixed_instance(&g, s, t).map_err(|e| e.to_string())?;
        ensure!(
            fi.graph.vertex_count() == n + 4 && fi.graph.edge_count() == g.edge_count() + 7,
            "instance {i}: wrong instance size"
        );
        let fixed = count_fixed_subdivisions(&fi, DEFAULT_CAP);
        ensure!(fixed.count == BigUint::from(paths.count), "instance {i}: {} subdivisions, {} paths", fixed.count, paths.count);
    }
    Ok(())
}

fn weighted_reduction() -> Check {
    let start = Instant::now();
    let g = Graph::from_edges(2, [(0, 1)]).unwrap();
    let fi = build_fixed_instance(&g, 0, 1).unwrap();
    let wi = build_weighted_instance(&fi, 1).unwrap();
    ensure!(
        (wi.graph.vertex_count(), wi.graph.edge_count()) == (35, 49),
        "G'' has {} vertices, {} edges",
        wi.graph.vertex_count(),
        wi.graph.edge_count()
    );
    let list = enumerate_k4(&wi.graph, 1 << 20);
    let total = BigUint::from(list.certificates.len());
    ensure!(!list.truncated && total == BigUint::from(4096u32), "count_k4(G'') = {total}");
    let recovered = recover_fixed_count(&total, 1);
    let paths = count_st_paths(&g, 0, 1, DEFAULT_CAP).unwrap().count;
    ensure!(recovered == BigUint::from(paths) && paths == 1, "recovered {recovered}, paths {paths}");
    let gadget = wi.gadget_vertices();
    let violations = list
        .certificates
        .iter()
        .filter(|c| c.real_vertices.iter().any(|v| gadget.contains(v)))
        .count();
    ensure!(violations == 0, "{violations} subdivisions have a gadget vertex as real vertex");
    within(start, Duration::from_secs(300))
}

fn apex_identity() -> Check {
    let k4 = complete(4);
    let census = apex_census(&k4, &[1, 2, 3], None).map_err(|e| e.to_string())?;
    for row in &census.rows {
        let direct = count_k4(&build_apex_instance(&k4, row.s).unwrap().graph, DEFAULT_CAP).count;
        ensure!(row.total == direct, "G_{}: census {} vs direct {direct}", row.s, row.total);
        let predicted = census.predicted_total(row.s);
        ensure!(predicted == rat(BigInt::from(row.total.clone())), "G_{}: identity gives {predicted}, count {}", row.s, row.total);
    }
    ensure!(census.rows[0].total == BigUint::from(35u32), "#K4(K5) = {}", census.rows[0].total);
    ensure!(census.partial_counts[..2] == [rat(1), rat(34)], "N0, N1 = {:?}", &census.partial_counts[..2]);
    for (t, n_t) in census.partial_counts.iter().enumerate() {
        ensure!(n_t.is_integer(), "N_{t} = {n_t} is not an integer");
    }
    Ok(())
}

fn vandermonde() -> Check {
    let mut r = rng(9);
    for i in 0..100 {
        let t_max = r.gen_range(0..=10);
        let coeffs: Vec<BigInt> = (0..=t_max).map(|_| BigInt::from(r.gen::<u64>())).collect();
        let mut points: Vec<u64> = (0..40).collect();
        points.shuffle(&mut r);
        let evals: Vec<(u64, BigInt)> = points[..=t_max]
            .iter()
            .map(|&s| {
                let value = coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * s + c);
                (s, value)
            })
            .collect();
        let got = vandermonde_recover(&evals, t_max).map_err(|e| format!("round trip {i}: {e}"))?;
        ensure!(got == coeffs[0], "round trip {i}: {got} != {}", coeffs[0]);
    }

    // at most six apexes fit in a subdivision over four base vertices
    let k4 = complete(4);
    let t_max = 6;
    let s_values: Vec<usize> = (1..=t_max + 1).collect();
    let census = apex_census(&k4, &s_values, None).map_err(|e| e.to_string())?;
    ensure!(census.partial_counts.len() == t_max + 1, "observed {} apex classes", census.partial_counts.len());
    let evals: Vec<(u64, BigInt)> = census.rows.iter().map(|row| (row.s as u64, BigInt::from(row.total.clone()))).collect();
    let n0 = vandermonde_recover(&evals, t_max).map_err(|e| e.to_string())?;
    ensure!(n0 == BigInt::one(), "end-to-end N0 = {n0}");
    Ok(())
}

fn small_corpus() -> Vec<Graph> {
    let mut corpus = Vec::new();
    for n in 4..=5 {
        let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            corpus.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    corpus.push(wheel(6).unwrap());
    corpus.push(prism());
    corpus.push(complete_bipartite(3, 3));
    let mut octahedron = complete(6);
    for (u, v) in [(0, 1), (2, 3), (4, 5)] {
        octahedron = octahedron.spanning_subgraph(octahedron.edges().filter(|&e| e != (u, v))).unwrap();
    }
    corpus.push(octahedron);
    let mut r = rng(10);
    while corpus.len() < 2048 + 4 + 300 {
        let g = gnp(6, r.gen_range(0.3..0.8), &mut r);
        if g.edge_count() <= 12 {
            corpus.push(g);
        }
    }
    corpus
}

fn oracle_equivalence() -> Check {
    for (i, g) in small_corpus().iter().enumerate() {
        ensure!(g.vertex_count() <= 6 && g.edge_count() <= 12, "corpus graph {i} too large");
        let list = enumerate_k4(g, DEFAULT_CAP);
        let ours: BTreeSet<Vec<Edge>> = list.certificates.iter().map(|c| c.edge_set.clone()).collect();
        ensure!(ours.len() == list.certificates.len(), "graph {i}: duplicate certificates");
        let oracle = k4_subsets(g);
        ensure!(ours == oracle, "graph {i}: {} subdivisions, oracle {}", ours.len(), oracle.len());
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("wheel counts equal binom(n-1, 3) for n = 5..9", wheel_formula),
        ("K4 attains every lower bound with equality", k4_equalities),
        ("K2,k has binom(k, 2) cycles for k = 3..7", bipartite_cycles),
        ("ear, path and cycle bounds on 100 random 2-connected graphs", two_connected_properties),
        ("K4 lower bounds on 3-connected graphs with at most 7 vertices", three_connected_bounds),
        ("fixed-marker subdivisions equal s-t paths on 50 instances", fixed_reduction),
        ("weighted instance with one cell counts 4096 and recovers 1", weighted_reduction),
        ("apex identity over K4 for s = 1, 2, 3", apex_identity),
        ("exact Vandermonde recovery", vandermonde),
        ("enumeration matches the edge-subset oracle on small graphs", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({elapsed:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
