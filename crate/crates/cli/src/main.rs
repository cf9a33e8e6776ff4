//! `perturbcc` command-line tool.
//!
//! Machine output (JSON, CSV, edge lists) goes to stdout or `-o`; a short
//! human summary goes to stderr. Exit codes: 0 success, 2 usage or input
//! error, 3 failed invariant check.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use perturbcc::bench::{parse_sizes, run_bench, to_csv, Suite, SuiteSpec};
use perturbcc::detlab::{det_polynomial, graph_det, minor_det, minor_graph};
use perturbcc::exact::{delta_bound, perturb_component_with_cap, DEFAULT_EXACT_CAP};
use perturbcc::generate::{gen_chain_union, gen_random_graph, Labeling};
use perturbcc::oracle::{eccentricity, uf_components};
use perturbcc::{components_via, load_edge_list, write_edge_list, DriverOptions, Error, Graph, MatrixParams, Strategy};
use serde_json::json;

#[derive(Parser)]
#[command(name = "perturbcc", version, about = "Connected components by matrix perturbation and solver traversals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded graph as an edge list.
    Gen(GenArgs),
    /// Find connected components with one strategy.
    Cc(CcArgs),
    /// Run every strategy against the union-find oracle.
    Verify(VerifyArgs),
    /// Time strategies on a generated suite and print CSV.
    Bench(BenchArgs),
    /// Brute-force determinant identities on a small graph.
    Detlab(DetlabArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of disjoint chains.
    #[arg(long, requires = "len", conflicts_with_all = ["vertices", "edges"])]
    chains: Option<usize>,
    /// Vertices per chain.
    #[arg(long)]
    len: Option<usize>,
    /// Keep chain vertices consecutively numbered instead of shuffling.
    #[arg(long, requires = "chains")]
    ordered: bool,
    /// Vertex count of a uniform random graph.
    #[arg(long, requires = "edges")]
    vertices: Option<usize>,
    /// Edge count of a uniform random graph.
    #[arg(long, requires = "vertices")]
    edges: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CcArgs {
    /// bfs, sis, gss or exact.
    #[arg(long)]
    algo: Strategy,
    #[arg(short, long)]
    input: PathBuf,
    /// 1-based vertex to start from; later components start at the lowest
    /// unassigned vertex.
    #[arg(long)]
    start: Option<usize>,
    /// Print one JSON line per iteration before the result.
    #[arg(long)]
    trace: bool,
    /// Sweep over every vertex instead of skipping found components.
    #[arg(long)]
    no_mask: bool,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: usize,
    /// Diagonal value for the exact strategy (integer or p/q).
    #[arg(long)]
    d: Option<BigRational>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Also run the exact perturbation test from every vertex.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// chains or random.
    #[arg(long)]
    suite: Suite,
    /// Comma-separated sizes: CxL for chains, NxM for random graphs.
    #[arg(long)]
    sizes: String,
    /// Comma-separated strategies.
    #[arg(long, default_value = "bfs,sis,gss")]
    strategies: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Timed runs per instance (median reported).
    #[arg(long, default_value_t = 3)]
    runs: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DetlabArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Diagonal value (integer or p/q); defaults to mu * d_max.
    #[arg(long)]
    d: Option<BigRational>,
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular | Error::Overflow(_) => Failure::Invariant(e.to_string()),
            Error::TooLarge { what, n, cap } => Failure::Usage(format!(
                "{what} is capped at {cap} vertices and the graph has {n}; raise the cap or use a traversal strategy"
            )),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let loaded = load_edge_list(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if loaded.duplicate_edges + loaded.self_loops > 0 {
        eprintln!(
            "note: dropped {} duplicate edges and {} self-loops",
            loaded.duplicate_edges, loaded.self_loops
        );
    }
    Ok(loaded.graph)
}

fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn params_for(g: &Graph, d: Option<BigRational>) -> Result<MatrixParams, Failure> {
    match d {
        Some(d) => Ok(MatrixParams::with_d(g, d)?),
        None => Ok(MatrixParams::for_graph(g)),
    }
}

fn gen(args: GenArgs) -> Outcome {
    let g = match (args.chains, args.len, args.vertices, args.edges) {
        (Some(c), Some(l), None, None) => {
            let labeling = if args.ordered {
                Labeling::Identity
            } else {
                Labeling::Shuffled(args.seed)
            };
            gen_chain_union(c, l, labeling)?
        }
        (None, None, Some(n), Some(m)) => gen_random_graph(n, m, args.seed)?,
        _ => return Err(Failure::Usage("give either --chains and --len, or --vertices and --edges".into())),
    };
    eprintln!("generated n={} m={}", g.vertex_count(), g.edge_count());
    emit(args.output.as_deref(), &write_edge_list(&g))
}

fn cc(args: CcArgs) -> Outcome {
    let g = read_graph(&args.input)?;
    let first_start = match args.start {
        Some(0) => return Err(Failure::Usage("vertex ids are 1-based".into())),
        Some(v) => Some(v - 1),
        None => None,
    };
    let params = match args.algo {
        Strategy::ExactPerturb if g.vertex_count() <= args.exact_cap => Some(params_for(&g, args.d)?),
        _ => None,
    };
    let opts = DriverOptions {
        masking: !args.no_mask,
        keep_trace: args.trace,
        exact_cap: args.exact_cap,
        params,
        first_start,
    };
    let run = components_via(&g, args.algo, &opts)?;
    if !run.partition.is_valid_for(&g) {
        return Err(Failure::Invariant("driver returned an invalid partition".into()));
    }
    if args.trace {
        for r in &run.runs {
            for (k, newly) in r.trace.newly_reached.iter().enumerate() {
                let new: Vec<usize> = newly.iter().map(|v| v + 1).collect();
                println!("{}", json!({"start": r.start + 1, "k": k + 1, "new": new}));
            }
        }
    }
    println!(
        "{}",
        json!({
            "components": run.partition.one_based(),
            "K": run.partition.count(),
            "iterations": run.total_iterations(),
        })
    );
    eprintln!(
        "{}: n={} m={} K={} iterations={} sweeps={}",
        args.algo.name(),
        g.vertex_count(),
        g.edge_count(),
        run.partition.count(),
        run.total_iterations(),
        run.total_sweeps()
    );
    Ok(())
}

fn verify(args: VerifyArgs) -> Outcome {
    let g = read_graph(&args.input)?;
    let n = g.vertex_count();
    let truth = uf_components(&g);
    let mut report = serde_json::Map::new();
    let mut problems = Vec::new();
    let mut totals = Vec::new();

    for s in [Strategy::AlgebraicBfs, Strategy::Sis, Strategy::Gss] {
        let run = components_via(&g, s, &DriverOptions::default())?;
        let matches = run.partition == truth;
        if !matches {
            problems.push(format!("{} partition differs from union-find", s.name()));
        }
        if s == Strategy::Gss {
            for r in &run.runs {
                let ecc = eccentricity(&g, r.start);
                if r.trace.iterations_used > ecc {
                    problems.push(format!(
                        "gss used {} iterations from vertex {}, eccentricity {ecc}",
                        r.trace.iterations_used,
                        r.start + 1
                    ));
                }
            }
        }
        totals.push(run.total_iterations());
        report.insert(
            s.name().into(),
            json!({"matches_oracle": matches, "iterations": run.total_iterations()}),
        );
    }
    if totals[0] != totals[1] {
        problems.push(format!("bfs used {} iterations, sis {}", totals[0], totals[1]));
    }

    if args.exact {
        if n > args.exact_cap {
            return Err(Error::TooLarge {
                what: "exact perturbation",
                n,
                cap: args.exact_cap,
            }
            .into());
        }
        let params = MatrixParams::for_graph(&g);
        let delta = delta_bound(n.max(1), &params.d)?;
        let labels = truth.labels(n);
        let mut smallest_gap: Option<BigRational> = None;
        for i in 0..n {
            let out = perturb_component_with_cap(&g, &params, i, args.exact_cap)?;
            if out.x.l1_norm() > BigRational::one() {
                problems.push(format!("solution for vertex {} has 1-norm above 1", i + 1));
            }
            for j in 0..n {
                let gap = (&out.x_perturbed.0[j] - &out.x.0[j]).abs();
                let same = labels[i] == labels[j];
                if gap.is_zero() == same {
                    problems.push(format!("perturbing {} misclassifies {}", i + 1, j + 1));
                }
                if same && gap < delta {
                    problems.push(format!("gap at ({}, {}) below 1/(2d^(2n))", i + 1, j + 1));
                }
                if same && smallest_gap.as_ref().is_none_or(|s| &gap < s) {
                    smallest_gap = Some(gap);
                }
            }
        }
        report.insert(
            "exact".into(),
            json!({
                "d": params.d.to_string(),
                "delta": delta.to_string(),
                "smallest_gap": smallest_gap.map(|g| g.to_string()),
            }),
        );
    }

    let ok = problems.is_empty();
    println!(
        "{}",
        json!({"n": n, "m": g.edge_count(), "K": truth.count(), "strategies": report, "problems": problems, "ok": ok})
    );
    if ok {
        eprintln!("verify: all strategies agree with union-find (K={})", truth.count());
        Ok(())
    } else {
        Err(Failure::Invariant(format!("{} check(s) failed", problems.len())))
    }
}

fn bench(args: BenchArgs) -> Outcome {
    let strategies = args
        .strategies
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<perturbcc::Result<Vec<Strategy>>>()?;
    let mut spec = SuiteSpec::new(args.suite, parse_sizes(&args.sizes)?);
    spec.strategies = strategies;
    spec.seed = args.seed;
    spec.runs = args.runs.max(1);
    let records = run_bench(&spec)?;
    for r in &records {
        eprintln!(
            "{:>5} n={} m={} K={} iterations={} median={:.3}ms",
            r.strategy.name(),
            r.n,
            r.m,
            r.components,
            r.total_iterations,
            r.wall_ns as f64 / 1e6
        );
    }
    emit(args.output.as_deref(), &to_csv(&records))
}

fn detlab(args: DetlabArgs) -> Outcome {
    let g = read_graph(&args.input)?;
    let n = g.vertex_count();
    let params = params_for(&g, args.d)?;
    let poly = det_polynomial(&g)?;
    let coeff = |l: usize| poly.coeffs.get(l).copied().unwrap_or(0);
    let labels = uf_components(&g).labels(n);

    let mut evaluation = true;
    let alt = BigRational::from_integer((g.max_degree() as i64 + 1).into());
    for d in [&params.d, &alt] {
        evaluation &= poly.evaluate(d) == graph_det(&g, d);
    }
    let mut minor_bound = true;
    let mut cross_zero = true;
    let mut cofactor = true;
    for i in 0..n {
        for j in 0..n {
            let m = minor_det(&g, &params, i, j)?;
            if labels[i] == labels[j] {
                minor_bound &= m.abs() >= BigRational::one();
            } else {
                cross_zero &= m.is_zero();
            }
            if i != j {
                let signed = if (i + j) % 2 == 0 { m } else { -m };
                cofactor &= minor_graph(&g, i, j)?.determinant(&params.d)? == signed;
            }
        }
    }
    let checks = json!({
        "c0_is_one": coeff(0) == 1,
        "c1_is_zero": n < 1 || coeff(1) == 0,
        "c2_is_minus_m": n < 2 || coeff(2) == -(g.edge_count() as i64),
        "polynomial_matches_elimination": evaluation,
        "connected_minors_at_least_one": minor_bound,
        "cross_component_minors_zero": cross_zero,
        "minor_graph_gives_cofactor": cofactor,
    });
    let ok = checks.as_object().unwrap().values().all(|v| v.as_bool() == Some(true));
    println!(
        "{}",
        json!({
            "n": n,
            "m": g.edge_count(),
            "d": params.d.to_string(),
            "coefficients": poly.coeffs,
            "polynomial": poly.to_string(),
            "checks": checks,
            "ok": ok,
        })
    );
    eprintln!("det A(d) = {poly}");
    if ok {
        Ok(())
    } else {
        Err(Failure::Invariant("a determinant identity failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Cc(a) => cc(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
        Command::Detlab(a) => detlab(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}
