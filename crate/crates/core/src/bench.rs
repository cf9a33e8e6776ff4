//! Benchmark harness: seeded instances, warm-up plus median-of-runs timing,
//! CSV output.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::DEFAULT_EXACT_CAP;
use crate::generate::{gen_chain_union, gen_random_graph, Labeling};
use crate::graph::Graph;
use crate::traversal::{components_via, DriverOptions, Strategy};

/// Environment variable bounding the worker pool.
pub const THREADS_ENV: &str = "PERTURBCC_THREADS";

pub const CSV_HEADER: &str = "n,m,K,strategy,total_iterations,wall_ns";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Sizes are `(chain count, chain length)`.
    Chains,
    /// Sizes are `(vertices, edges)`.
    Random,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chains" => Ok(Suite::Chains),
            "random" => Ok(Suite::Random),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSpec {
    pub suite: Suite,
    pub sizes: Vec<(usize, usize)>,
    pub strategies: Vec<Strategy>,
    pub seed: u64,
    /// Timed runs per instance; the first, untimed warm-up run is extra.
    pub runs: usize,
}

impl SuiteSpec {
    pub fn new(suite: Suite, sizes: Vec<(usize, usize)>) -> Self {
        SuiteSpec {
            suite,
            sizes,
            strategies: vec![Strategy::AlgebraicBfs, Strategy::Sis, Strategy::Gss],
            seed: 1,
            runs: 3,
        }
    }

    /// Instance `index` of the suite with its generator seed.
    pub fn instance(&self, index: usize) -> Result<(Graph, u64)> {
        let (a, b) = self.sizes[index];
        let seed = self.seed.wrapping_add(index as u64);
        let g = match self.suite {
            Suite::Chains => gen_chain_union(a, b, Labeling::Shuffled(seed))?,
            Suite::Random => gen_random_graph(a, b as u64, seed)?,
        };
        Ok((g, seed))
    }
}

/// Parses `"90x100,10x5"` into size pairs.
pub fn parse_sizes(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (a, b) = item
                .split_once(['x', 'X', ':'])
                .ok_or_else(|| Error::InvalidArgument(format!("size {item:?} is not AxB")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad number in size {item:?}")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub seed: u64,
    pub strategy: Strategy,
    pub total_iterations: usize,
    pub iterations_per_component: Vec<usize>,
    /// Sweeps over the edge array, each `O(m + n)`.
    pub portrait_passes: usize,
    /// Median wall-clock time of the timed runs.
    pub wall_ns: u128,
    /// Rough resident size of the graph plus traversal state.
    pub peak_memory_bytes: usize,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.m,
            self.components,
            self.strategy.name(),
            self.total_iterations,
            self.wall_ns
        )
    }
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Worker count from `PERTURBCC_THREADS`, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn estimate_memory(g: &Graph) -> usize {
    let word = std::mem::size_of::<usize>();
    let n = g.vertex_count();
    let m = g.edge_count();
    // edge list + CSR offsets/targets + reach state, scratch and mask
    2 * m * word + (n + 1) * word + 2 * m * word + 3 * n
}

fn run_one(spec: &SuiteSpec, size_index: usize, strategy: Strategy) -> Result<BenchRecord> {
    let (g, seed) = spec.instance(size_index)?;
    let opts = DriverOptions::default();
    // warm-up, discarded
    let result = components_via(&g, strategy, &opts)?;
    let mut times = Vec::with_capacity(spec.runs.max(1));
    for _ in 0..spec.runs.max(1) {
        let t = Instant::now();
        let again = components_via(&g, strategy, &opts)?;
        times.push(t.elapsed().as_nanos());
        debug_assert_eq!(again.partition, result.partition);
    }
    times.sort_unstable();
    Ok(BenchRecord {
        n: g.vertex_count(),
        m: g.edge_count(),
        components: result.partition.count(),
        seed,
        strategy,
        total_iterations: result.total_iterations(),
        iterations_per_component: result.runs.iter().map(|r| r.trace.iterations_used).collect(),
        portrait_passes: result.total_sweeps(),
        wall_ns: times[times.len() / 2],
        peak_memory_bytes: estimate_memory(&g),
    })
}

/// Runs every (size, strategy) pair of the suite. Rows come back in suite
/// order regardless of how many workers ran them.
pub fn run_bench(spec: &SuiteSpec) -> Result<Vec<BenchRecord>> {
    run_bench_with_workers(spec, worker_count())
}

pub fn run_bench_with_workers(spec: &SuiteSpec, workers: usize) -> Result<Vec<BenchRecord>> {
    if spec.strategies.contains(&Strategy::ExactPerturb) {
        for index in 0..spec.sizes.len() {
            let n = spec.instance(index)?.0.vertex_count();
            if n > DEFAULT_EXACT_CAP {
                return Err(Error::TooLarge {
                    what: "exact perturbation",
                    n,
                    cap: DEFAULT_EXACT_CAP,
                });
            }
        }
    }
    let jobs: Vec<(usize, Strategy)> = (0..spec.sizes.len())
        .flat_map(|i| spec.strategies.iter().map(move |&s| (i, s)))
        .collect();
    let slots: Vec<Mutex<Option<Result<BenchRecord>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.clamp(1, jobs.len().max(1)) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(index, strategy)) = jobs.get(k) else {
                    break;
                };
                let record = run_one(spec, index, strategy);
                *slots[k].lock().unwrap() = Some(record);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("every job ran"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_sizes("90x100, 3:4").unwrap(), vec![(90, 100), (3, 4)]);
        assert_eq!(parse_sizes("").unwrap(), vec![]);
        assert!(parse_sizes("90").is_err());
        assert!(parse_sizes("ax3").is_err());
    }

    #[test]
    fn empty_suite_is_header_only() {
        let spec = SuiteSpec::new(Suite::Chains, vec![]);
        let records = run_bench(&spec).unwrap();
        assert_eq!(to_csv(&records), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn rows_follow_suite_order() {
        let mut spec = SuiteSpec::new(Suite::Chains, vec![(3, 5), (2, 7)]);
        spec.runs = 1;
        let records = run_bench_with_workers(&spec, 4).unwrap();
        let names: Vec<_> = records.iter().map(|r| (r.n, r.strategy.name())).collect();
        assert_eq!(
            names,
            vec![(15, "bfs"), (15, "sis"), (15, "gss"), (14, "bfs"), (14, "sis"), (14, "gss")]
        );
        assert!(records.iter().all(|r| r.portrait_passes == r.total_iterations + r.components));
    }

    #[test]
    fn exact_strategy_respects_cap() {
        let mut spec = SuiteSpec::new(Suite::Chains, vec![(10, 10)]);
        spec.strategies = vec![Strategy::ExactPerturb];
        assert!(matches!(run_bench(&spec), Err(Error::TooLarge { .. })));
        spec.sizes = vec![(4, 3)];
        spec.runs = 1;
        let records = run_bench(&spec).unwrap();
        assert_eq!(records[0].components, 4);
    }
}
