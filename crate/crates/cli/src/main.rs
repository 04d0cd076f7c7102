//! Command-line front end: region classification, the exhaustive candidate
//! search, numerical minimization, sweep grids, the named-graph catalog,
//! and seeded verification suites.
//!
//! Exit codes: 0 success, 1 verification/expectation failure, 2 usage error.

mod driver;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use tripartite_core::constructions::{catalog, complement_edge_names, make_named, GraphName};
use tripartite_core::graph::TripartiteGraph;
use tripartite_core::optimizer::{global_tmin, min_triangle_density, MinimizeOptions};
use tripartite_core::regions::{
    classify_region, cyclic_upper_bound, discriminant, tmin_closed_form,
};
use tripartite_core::search::{SearchOptions, PROFILES};
use tripartite_core::weighted::{DensityTriple, WeightedGraph};

#[derive(Parser)]
#[command(
    name = "tripartite",
    about = "Minimal triangle density of weighted tripartite graphs",
    version
)]
struct Cli {
    /// Worker cap for parallel commands (default: TRI_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a density triple and print the closed forms.
    Classify { alpha: f64, beta: f64, gamma: f64 },
    /// Run the exhaustive candidate search and write the survivor report.
    Search {
        /// Restrict to one class-size profile, e.g. `2,2,2` (smoke runs).
        #[arg(long)]
        profile: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit nonzero unless the survivor count matches.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Minimize the triangle density at prescribed edge densities.
    Tmin {
        alpha: f64,
        beta: f64,
        gamma: f64,
        /// Restrict to one topology (text encoding) instead of the global
        /// minimum.
        #[arg(long)]
        graph: Option<String>,
        /// Random restarts per topology.
        #[arg(long, default_value_t = 12)]
        samples: usize,
        #[arg(long, default_value_t = 0x7121)]
        seed: u64,
    },
    /// Emit a CSV of closed-form and numeric minima over a grid.
    Sweep {
        /// Grid resolution per axis; samples the cell midpoints.
        #[arg(long, default_value_t = 8)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Random restarts per grid point.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = 0x7121)]
        seed: u64,
    },
    /// Print the named-graph catalog (or one entry).
    Catalog { name: Option<String> },
    /// Print the tripartite complement of an encoded graph.
    Complement { encoding: String },
    /// Run a seeded verification suite:
    /// transforms | formulas | bounds | conjecture.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(out: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            f.write_all(b"\n")
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ClassifyDoc {
    format: u32,
    alpha: f64,
    beta: f64,
    gamma: f64,
    region: &'static str,
    discriminant: f64,
    tmin_closed_form: f64,
    cyclic_upper_bound: f64,
    /// The square-root branch is proved attainable but only conjectured
    /// minimal; the closed form is flagged accordingly.
    conjectural: bool,
}

#[derive(Serialize)]
struct WitnessDoc {
    encoding: String,
    weights: [Vec<f64>; 3],
}

fn witness_doc(w: &WeightedGraph<f64>) -> WitnessDoc {
    WitnessDoc {
        encoding: w.graph.encode(),
        weights: [
            w.weights[0].clone(),
            w.weights[1].clone(),
            w.weights[2].clone(),
        ],
    }
}

#[derive(Serialize)]
struct TminDoc {
    format: u32,
    alpha: f64,
    beta: f64,
    gamma: f64,
    region: &'static str,
    closed_form: f64,
    feasible: bool,
    value: f64,
    residual: f64,
    converged: bool,
    topology: String,
    witness: WitnessDoc,
    conjecture_violation: bool,
}

fn in_unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x) && x.is_finite()
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("TRI_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .filter(|&n| n > 0);
    if let Some(n) = threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }

    match cli.command {
        Command::Classify { alpha, beta, gamma } => {
            if ![alpha, beta, gamma].iter().all(|&x| in_unit(x)) {
                return usage_error("densities must lie in [0,1]");
            }
            let d = DensityTriple::new(alpha, beta, gamma);
            let region = classify_region(d);
            let doc = ClassifyDoc {
                format: 1,
                alpha,
                beta,
                gamma,
                region: region.name(),
                discriminant: discriminant(d),
                tmin_closed_form: tmin_closed_form(d),
                cyclic_upper_bound: cyclic_upper_bound(d),
                conjectural: region == tripartite_core::regions::RegionLabel::R2,
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            ExitCode::SUCCESS
        }
        Command::Search {
            profile,
            out,
            expect,
        } => {
            let profiles: Vec<[usize; 3]> = match profile {
                Some(ref p) => match driver::parse_profile(p) {
                    Ok(prof) => vec![prof],
                    Err(e) => return usage_error(&e),
                },
                None => PROFILES.to_vec(),
            };
            let report = driver::run_search_parallel(&profiles, SearchOptions::default());
            let doc = driver::report_doc(&report);
            let text = serde_json::to_string_pretty(&doc).unwrap();
            if emit(out.as_ref(), &text).is_err() {
                return usage_error("cannot write report file");
            }
            if let Some(n) = expect {
                if doc.survivor_count != n {
                    eprintln!(
                        "expectation failed: {} survivors, expected {n}",
                        doc.survivor_count
                    );
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Command::Tmin {
            alpha,
            beta,
            gamma,
            graph,
            samples,
            seed,
        } => {
            if ![alpha, beta, gamma].iter().all(|&x| in_unit(x)) {
                return usage_error("densities must lie in [0,1]");
            }
            let d = DensityTriple::new(alpha, beta, gamma);
            let opts = MinimizeOptions {
                restarts: samples,
                seed,
                ..MinimizeOptions::default()
            };
            let doc = match graph {
                Some(enc) => {
                    let g = match TripartiteGraph::parse(&enc) {
                        Ok(g) => g,
                        Err(e) => return usage_error(&format!("bad graph encoding: {e}")),
                    };
                    let outm = min_triangle_density(&g, d, &opts, &[]);
                    TminDoc {
                        format: 1,
                        alpha,
                        beta,
                        gamma,
                        region: classify_region(d).name(),
                        closed_form: tmin_closed_form(d),
                        feasible: outm.feasible,
                        value: outm.value,
                        residual: outm.residual,
                        converged: outm.converged,
                        topology: enc,
                        witness: witness_doc(&outm.witness),
                        conjecture_violation: false,
                    }
                }
                None => {
                    let g = global_tmin(d, &opts);
                    TminDoc {
                        format: 1,
                        alpha,
                        beta,
                        gamma,
                        region: g.region.name(),
                        closed_form: g.closed_form,
                        feasible: true,
                        value: g.value,
                        residual: 0.0,
                        converged: true,
                        topology: g.topology.clone(),
                        witness: witness_doc(&g.witness),
                        conjecture_violation: g.conjecture_violation,
                    }
                }
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            if doc.conjecture_violation {
                eprintln!("conjecture violation: numeric minimum below the closed form");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Command::Sweep {
            grid,
            out,
            samples,
            seed,
        } => {
            if grid == 0 {
                return usage_error("grid must be positive");
            }
            let opts = MinimizeOptions {
                restarts: samples,
                seed,
                ..MinimizeOptions::default()
            };
            use rayon::prelude::*;
            let points: Vec<(usize, usize, usize)> = (0..grid)
                .flat_map(|i| (0..grid).flat_map(move |j| (0..grid).map(move |k| (i, j, k))))
                .collect();
            let rows: Vec<String> = points
                .par_iter()
                .map(|&(i, j, k)| {
                    let at = |n: usize| (n as f64 + 0.5) / grid as f64;
                    let d = DensityTriple::new(at(i), at(j), at(k));
                    let g = global_tmin(d, &opts);
                    format!(
                        "{:.6},{:.6},{:.6},{},{:.9},{:.9}",
                        d.alpha,
                        d.beta,
                        d.gamma,
                        g.region.name(),
                        g.closed_form,
                        g.value
                    )
                })
                .collect();
            let mut text = String::from("alpha,beta,gamma,region,closed_form,numeric_min\n");
            text.push_str(&rows.join("\n"));
            if emit(out.as_ref(), &text).is_err() {
                return usage_error("cannot write sweep file");
            }
            ExitCode::SUCCESS
        }
        Command::Catalog { name } => {
            #[derive(Serialize)]
            struct Entry {
                name: &'static str,
                encoding: String,
                complement_edges: Vec<String>,
                provenance: &'static str,
            }
            #[derive(Serialize)]
            struct Doc {
                format: u32,
                graphs: Vec<Entry>,
            }
            let chosen: Vec<_> = match name {
                Some(ref n) => match GraphName::parse(n) {
                    Some(g) => vec![make_named(g)],
                    None => return usage_error(&format!("unknown catalog graph `{n}`")),
                },
                None => catalog(),
            };
            let doc = Doc {
                format: 1,
                graphs: chosen
                    .iter()
                    .map(|g| Entry {
                        name: g.name.as_str(),
                        encoding: g.graph.encode(),
                        complement_edges: complement_edge_names(&g.graph),
                        provenance: g.provenance,
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            ExitCode::SUCCESS
        }
        Command::Complement { encoding } => match TripartiteGraph::parse(&encoding) {
            Ok(g) => {
                println!("{}", g.complement().encode());
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&format!("bad graph encoding: {e}")),
        },
        Command::Verify {
            suite,
            seed,
            samples,
        } => match verify::run_suite(&suite, seed, samples) {
            Some(outcome) => {
                println!("{}", serde_json::to_string_pretty(&outcome).unwrap());
                if outcome.failures > 0 {
                    eprintln!(
                        "suite {} failed: {} of {} checks",
                        outcome.suite, outcome.failures, outcome.checks
                    );
                    ExitCode::from(1)
                } else {
                    ExitCode::SUCCESS
                }
            }
            None => usage_error(&format!(
                "unknown suite `{suite}` (expected transforms|formulas|bounds|conjecture)"
            )),
        },
    }
}
