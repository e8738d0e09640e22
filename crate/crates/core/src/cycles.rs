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

//! Exhaustive cycle and s-t path enumeration by backtracking.

use std::ops::ControlFlow;

use crate::error::{arg_err, Result};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_CAP: u64 = 10_000_000;

/// Cycles in canonical form: each starts at its minimum vertex and
/// continues to the smaller of that vertex's two cycle neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleList {
    pub cycles: Vec<Vec<Vertex>>,
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tally {
    pub count: u64,
    pub truncated: bool,
}

/// Calls `visit` once per cycle of `g`, in canonical form.
///
/// Roots are taken in increasing order; from root `r` only vertices above
/// `r` are entered, and a closed walk is reported only when its second
/// vertex is smaller than its last, so each cycle appears exactly once.
pub fn for_each_cycle<F>(g: &Graph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for root in g.vertices() {
        path.push(root);
        on_path[root] = true;
        let flow = extend_cycle(g, root, &mut path, &mut on_path, &mut visit);
        on_path[root] = false;
        path.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

fn extend_cycle<F>(
    g: &Graph,
    root: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let u = *path.last().unwrap();
    for &w in g.neighbors(u) {
        if w == root {
            if path.len() >= 3 && path[1] < u {
                visit(path)?;
            }
        } else if w > root && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            let flow = extend_cycle(g, root, path, on_path, visit);
            path.pop();
            on_path[w] = false;
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// All cycles of `g`, or the first `cap` of them with `truncated` set when
/// more exist.
pub fn enumerate_cycles(g: &Graph, cap: u64) -> CycleList {
    let mut out = CycleList::default();
    let _ = for_each_cycle(g, |c| {
        if out.cycles.len() as u64 == cap {
            out.truncated = true;
            return ControlFlow::Break(());
        }
        out.cycles.push(c.to_vec());
        ControlFlow::Continue(())
    });
    out
}

pub fn count_cycles(g: &Graph, cap: u64) -> Tally {
    let mut tally = Tally {
        count: 0,
        truncated: false,
    };
    let _ = for_each_cycle(g, |_| {
        if tally.count == cap {
            tally.truncated = true;
            return ControlFlow::Break(());
        }
        tally.count += 1;
        ControlFlow::Continue(())
    });
    tally
}

/// Number of simple `s`-`t` paths.
pub fn count_st_paths(g: &Graph, s: Vertex, t: Vertex, cap: u64) -> Result<Tally> {
    let mut tally = Tally {
        count: 0,
        truncated: false,
    };
    for_each_st_path(g, s, t, |_| {
        if tally.count == cap {
            tally.truncated = true;
            return ControlFlow::Break(());
        }
        tally.count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(tally)
}

/// Calls `visit` with every simple `s`-`t` path, extending by ascending
/// neighbor id.
pub fn for_each_st_path<F>(g: &Graph, s: Vertex, t: Vertex, mut visit: F) -> Result<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    if s >= n || t >= n {
        return arg_err(format!("terminal out of range for {n} vertices"));
    }
    if s == t {
        return arg_err("source and target coincide");
    }
    let mut on_path = vec![false; n];
    on_path[s] = true;
    let mut path = vec![s];
    let _ = extend_path(g, t, &mut path, &mut on_path, &mut visit);
    Ok(())
}

fn extend_path<F>(g: &Graph, t: Vertex, path: &mut Vec<Vertex>, on_path: &mut [bool], visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let u = *path.last().unwrap();
    for &w in g.neighbors(u) {
        if on_path[w] {
            continue;
        }
        path.push(w);
        let flow = if w == t {
            visit(path)
        } else {
            on_path[w] = true;
            let flow = extend_path(g, t, path, on_path, visit);
            on_path[w] = false;
            flow
        };
        path.pop();
        flow?;
    }
    ControlFlow::Continue(())
}
