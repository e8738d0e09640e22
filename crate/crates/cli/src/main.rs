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

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde_json::{json, Value};

use k4sub::bounds::bound_report;
use k4sub::cycles::{count_cycles, count_st_paths, enumerate_cycles, for_each_st_path, DEFAULT_CAP};
use k4sub::ears::open_ear_decomposition;
use k4sub::generators;
use k4sub::k4::{count_k4, enumerate_k4};
use k4sub::reductions::{
    build_apex_instance, build_fixed_instance, build_weighted_instance, recover_fixed_count, vandermonde_recover,
};
use k4sub::{parse_graph, Error, Graph};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "k4sub", version, about = "Count and verify K4-subdivisions")]
struct Cli {
    /// Emit JSON for commands whose default output is plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge-list file, or '-' for stdin.
    #[arg(long, short)]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Vertex count; the second side for k2q, the cell count for gadget.
        #[arg(long, short)]
        n: usize,
        /// Ear count for rand2.
        #[arg(long)]
        ears: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Open ear decomposition.
    Ears {
        #[command(flatten)]
        input: Input,
    },
    /// Enumerate or count cycles.
    Cycles {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// Enumerate or count simple s-t paths.
    Paths {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// Count K4-subdivisions.
    CountK4 {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Also list every subdivision.
        #[arg(long)]
        list: bool,
    },
    /// Compare exact counts with every applicable bound.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Verify bounds on a batch of generated graphs.
    Campaign {
        #[arg(long, value_enum)]
        family: CampaignFamily,
        /// Vertex count, or an inclusive range such as 5..9.
        #[arg(long, short, value_parser = parse_range)]
        n: (usize, usize),
        /// Instances per vertex count for random families.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Ear count for rand2; defaults to n.
        #[arg(long)]
        ears: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Build a reduction instance.
    Reduce {
        #[command(subcommand)]
        which: Reduce,
    },
    /// Recover a count from reduction output.
    Recover {
        #[command(subcommand)]
        which: Recover,
    },
}

#[derive(Subcommand)]
enum Reduce {
    Fixed {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    Weighted {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        cells: usize,
    },
    Apex {
        #[command(flatten)]
        input: Input,
        /// Number of apex vertices.
        #[arg(long)]
        s: usize,
    },
}

#[derive(Subcommand)]
enum Recover {
    /// Constant term from apex counts; evals is a JSON object mapping s to a count.
    Vandermonde {
        #[arg(long)]
        tmax: usize,
        #[arg(long)]
        evals: String,
    },
    /// Fixed-marker count from a weighted-instance total.
    Fixed {
        #[arg(long)]
        total: BigUint,
        #[arg(long)]
        cells: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Wheel,
    Complete,
    K2q,
    Cycle,
    Path,
    Prism,
    Gadget,
    Rand2,
    Rand3,
}

#[derive(Clone, Copy, ValueEnum)]
enum CampaignFamily {
    Wheels,
    Complete,
    Rand2,
    Rand3,
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let bad = |_| format!("expected N or A..B, got {text:?}");
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.parse().map_err(bad)?, b.trim_start_matches('=').parse().map_err(bad)?),
        None => {
            let n = text.parse().map_err(bad)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn load(input: &Input) -> Result<Graph, Failure> {
    parse_graph(&read_source(&input.input)?).map_err(|e| Failure::Usage(format!("{}: {e}", input.input)))
}

fn emit(out: &mut impl Write, value: &Value) -> io::Result<()> {
    writeln!(out, "{value}")
}

fn emit_graph(out: &mut impl Write, json: bool, g: &Graph, extra: Value) -> io::Result<()> {
    if json {
        let mut doc = extra;
        doc["n"] = json!(g.vertex_count());
        doc["edges"] = json!(g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>());
        emit(out, &doc)
    } else {
        write!(out, "{}", g.to_edge_list())
    }
}

fn generate(family: Family, n: usize, ears: Option<usize>, seed: u64) -> Result<Graph, Failure> {
    Ok(match family {
        Family::Wheel => generators::wheel(n)?,
        Family::Complete => generators::complete(n),
        Family::K2q => generators::complete_bipartite(2, n),
        Family::Cycle => generators::cycle(n),
        Family::Path => generators::path_graph(n),
        Family::Prism => generators::prism(),
        Family::Gadget => generators::gadget_chain(n)?.graph,
        Family::Rand2 => {
            let ears = ears.ok_or_else(|| Failure::Usage("--ears is required for rand2".into()))?;
            generators::random_2connected(n, ears, seed)?
        }
        Family::Rand3 => generators::random_3connected(n, seed)?,
    })
}

/// `(seed, graph)` pairs in campaign order.
fn campaign_graphs(
    family: CampaignFamily,
    (lo, hi): (usize, usize),
    count: usize,
    ears: Option<usize>,
    seed: u64,
) -> Result<Vec<(Option<u64>, Graph)>, Failure> {
    let mut out = Vec::new();
    let mut next = seed;
    for n in lo..=hi {
        match family {
            CampaignFamily::Wheels => out.push((None, generate(Family::Wheel, n, None, 0)?)),
            CampaignFamily::Complete => out.push((None, generate(Family::Complete, n, None, 0)?)),
            CampaignFamily::Rand2 | CampaignFamily::Rand3 => {
                for _ in 0..count {
                    let g = if matches!(family, CampaignFamily::Rand2) {
                        generate(Family::Rand2, n, Some(ears.unwrap_or(n)), next)?
                    } else {
                        generate(Family::Rand3, n, None, next)?
                    };
                    out.push((Some(next), g));
                    next = next.wrapping_add(1);
                }
            }
        }
    }
    Ok(out)
}

fn print_lists(out: &mut impl Write, lists: &[Vec<usize>]) -> io::Result<()> {
    for l in lists {
        let line: Vec<String> = l.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

fn warn_truncated(truncated: bool, cap: u64) {
    if truncated {
        eprintln!("warning: enumeration stopped at cap {cap}");
    }
}

fn dispatch(cli: Cli, out: &mut impl Write) -> Outcome {
    match cli.command {
        Command::Gen { family, n, ears, seed } => {
            let g = generate(family, n, ears, seed)?;
            emit_graph(out, cli.json, &g, json!({}))?;
        }
        Command::Ears { input } => {
            let g = load(&input)?;
            let d = open_ear_decomposition(&g)?;
            if cli.json {
                emit(out, &json!({ "ear_count": d.len(), "ears": d.ears }))?;
            } else {
                writeln!(out, "l={}", d.len())?;
                print_lists(out, &d.ears)?;
            }
        }
        Command::Cycles { input, cap, count_only } => {
            let g = load(&input)?;
            if count_only {
                let t = count_cycles(&g, cap);
                if cli.json {
                    emit(out, &json!({ "cycle_count": t.count.to_string(), "truncated": t.truncated }))?;
                } else {
                    writeln!(out, "{}", t.count)?;
                    warn_truncated(t.truncated, cap);
                }
            } else {
                let list = enumerate_cycles(&g, cap);
                if cli.json {
                    emit(
                        out,
                        &json!({
                            "cycle_count": list.cycles.len().to_string(),
                            "truncated": list.truncated,
                            "cycles": list.cycles,
                        }),
                    )?;
                } else {
                    writeln!(out, "{}", list.cycles.len())?;
                    print_lists(out, &list.cycles)?;
                    warn_truncated(list.truncated, cap);
                }
            }
        }
        Command::Paths { input, s, t, cap, count_only } => {
            let g = load(&input)?;
            let tally = count_st_paths(&g, s, t, cap)?;
            let mut paths = Vec::new();
            if !count_only {
                for_each_st_path(&g, s, t, |p| {
                    if paths.len() as u64 == cap {
                        return std::ops::ControlFlow::Break(());
                    }
                    paths.push(p.to_vec());
                    std::ops::ControlFlow::Continue(())
                })?;
            }
            if cli.json {
                let mut doc = json!({ "path_count": tally.count.to_string(), "truncated": tally.truncated });
                if !count_only {
                    doc["paths"] = json!(paths);
                }
                emit(out, &doc)?;
            } else {
                writeln!(out, "{}", tally.count)?;
                print_lists(out, &paths)?;
                warn_truncated(tally.truncated, cap);
            }
        }
        Command::CountK4 { input, cap, list } => {
            let g = load(&input)?;
            let doc = if list {
                let l = enumerate_k4(&g, cap);
                let subs: Vec<Value> = l
                    .certificates
                    .iter()
                    .map(|c| json!({ "real": c.real_vertices, "paths": c.branch_paths }))
                    .collect();
                json!({
                    "k4_count": l.certificates.len().to_string(),
                    "truncated": l.truncated,
                    "subdivisions": subs,
                })
            } else {
                let c = count_k4(&g, cap);
                json!({ "k4_count": c.count.to_string(), "truncated": c.truncated })
            };
            emit(out, &doc)?;
        }
        Command::Verify { input, cap } => {
            let g = load(&input)?;
            let report = bound_report(&g, cap);
            let doc = serde_json::to_value(&report).expect("report serializes");
            emit(out, &doc)?;
            return Ok(report.all_hold());
        }
        Command::Campaign { family, n, count, ears, seed, cap } => {
            let graphs = campaign_graphs(family, n, count, ears, seed)?;
            let reports: Vec<_> = graphs.par_iter().map(|(_, g)| bound_report(g, cap)).collect();
            let mut failures = 0usize;
            for (i, ((seed, g), r)) in graphs.iter().zip(&reports).enumerate() {
                let ok = r.all_hold();
                failures += usize::from(!ok);
                let failed: Vec<&str> = r
                    .checks
                    .iter()
                    .filter(|c| c.applicable && c.holds != Some(true))
                    .map(|c| c.name)
                    .collect();
                emit(
                    out,
                    &json!({
                        "instance": i,
                        "seed": seed,
                        "n": g.vertex_count(),
                        "m": g.edge_count(),
                        "k4_count": r.k4_count.as_ref().map(|c| c.to_string()),
                        "cycle_count": r.cycle_count.as_ref().map(|c| c.to_string()),
                        "truncated": r.truncated,
                        "all_hold": ok,
                        "failed": failed,
                    }),
                )?;
            }
            emit(out, &json!({ "instances": graphs.len(), "failures": failures, "all_hold": failures == 0 }))?;
            return Ok(failures == 0);
        }
        Command::Reduce { which } => match which {
            Reduce::Fixed { input, s, t } => {
                let fi = build_fixed_instance(&load(&input)?, s, t)?;
                let extra = json!({ "a": fi.a, "b": fi.b, "c": fi.c, "d": fi.d, "s": fi.s, "t": fi.t });
                emit_graph(out, cli.json, &fi.graph, extra)?;
            }
            Reduce::Weighted { input, s, t, cells } => {
                let fi = build_fixed_instance(&load(&input)?, s, t)?;
                let wi = build_weighted_instance(&fi, cells)?;
                if !wi.recovery_certified {
                    eprintln!("warning: 2^cells is not certified to exceed the fixed-instance count");
                }
                let extra = json!({
                    "markers": wi.markers,
                    "cells": wi.cells,
                    "recovery_certified": wi.recovery_certified,
                });
                emit_graph(out, cli.json, &wi.graph, extra)?;
            }
            Reduce::Apex { input, s } => {
                let ai = build_apex_instance(&load(&input)?, s)?;
                let extra = json!({ "base_size": ai.base_size, "apexes": ai.apexes });
                emit_graph(out, cli.json, &ai.graph, extra)?;
            }
        },
        Command::Recover { which } => match which {
            Recover::Vandermonde { tmax, evals } => {
                let evals = parse_evals(&read_source(&evals)?)?;
                let n0 = vandermonde_recover(&evals, tmax)?;
                writeln!(out, "{n0}")?;
            }
            Recover::Fixed { total, cells } => {
                if cells < 1 {
                    return Err(Failure::Usage("cells must be at least 1".into()));
                }
                writeln!(out, "{}", recover_fixed_count(&total, cells))?;
            }
        },
    }
    Ok(true)
}

/// Accepts `{"s": count, ...}` with counts as decimal strings or integers.
fn parse_evals(text: &str) -> Result<Vec<(u64, BigInt)>, Failure> {
    let bad = |msg: String| Failure::Usage(format!("evals: {msg}"));
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| bad("expected a JSON object".into()))?;
    let mut evals = Vec::with_capacity(obj.len());
    for (key, value) in obj {
        let s: u64 = key.parse().map_err(|_| bad(format!("key {key:?} is not an integer")))?;
        let count = match value {
            Value::String(x) => x.parse::<BigInt>().ok(),
            Value::Number(x) => x.to_string().parse::<BigInt>().ok(),
            _ => None,
        }
        .ok_or_else(|| bad(format!("value for {key} is not an integer")))?;
        evals.push((s, count));
    }
    evals.sort_by_key(|(s, _)| *s);
    Ok(evals)
}

fn configure_threads() {
    if let Some(n) = std::env::var("K4_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    configure_threads();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = dispatch(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}
