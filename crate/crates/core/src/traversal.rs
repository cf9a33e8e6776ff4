//! Graph traversals induced by iterative linear solvers.
//!
//! A vertex `j` is *reached* at iteration `k` when the `j`-th entry of the
//! iterate is zero before the sweep and nonzero after it. Starting from
//! `x⁽⁰⁾ = e_start`, the three sweep rules below differ only in which entries
//! of the iterate a vertex may read:
//!
//! * algebraic BFS, `x ← A·x`: the vertex itself and its neighbours, previous
//!   iterate;
//! * simple iteration (Jacobi order): the right-hand side and the neighbours
//!   of the previous iterate;
//! * Gauss–Seidel: the right-hand side, lower-numbered neighbours of the
//!   *current* sweep and higher-numbered neighbours of the previous iterate.
//!
//! The normative implementation propagates the boolean nonzero pattern, so a
//! reached set can never be lost to floating-point cancellation. The `float_*`
//! functions run the literal multiplication form for comparison.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::graph::{ComponentPartition, Graph, Portrait};
use crate::params::MatrixParams;

/// Update rule of one sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepRule {
    AlgebraicBfs,
    SimpleIteration,
    GaussSeidel,
}

/// Strategy for finding a single component in [`components_via`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    AlgebraicBfs,
    Sis,
    Gss,
    ExactPerturb,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::AlgebraicBfs,
        Strategy::Sis,
        Strategy::Gss,
        Strategy::ExactPerturb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::AlgebraicBfs => "bfs",
            Strategy::Sis => "sis",
            Strategy::Gss => "gss",
            Strategy::ExactPerturb => "exact",
        }
    }

    pub fn sweep_rule(self) -> Option<SweepRule> {
        match self {
            Strategy::AlgebraicBfs => Some(SweepRule::AlgebraicBfs),
            Strategy::Sis => Some(SweepRule::SimpleIteration),
            Strategy::Gss => Some(SweepRule::GaussSeidel),
            Strategy::ExactPerturb => None,
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bfs" | "algebraic-bfs" => Ok(Strategy::AlgebraicBfs),
            "sis" => Ok(Strategy::Sis),
            "gss" => Ok(Strategy::Gss),
            "exact" | "exact-perturb" => Ok(Strategy::ExactPerturb),
            other => Err(Error::InvalidArgument(format!("unknown strategy {other:?}"))),
        }
    }
}

/// Vertices excluded from sweeps: they are neither read nor written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    masked: Vec<bool>,
}

impl Mask {
    pub fn none(n: usize) -> Self {
        Mask {
            masked: vec![false; n],
        }
    }

    pub fn is_masked(&self, v: usize) -> bool {
        self.masked[v]
    }

    pub fn mask_all(&mut self, vertices: &[usize]) {
        for &v in vertices {
            self.masked[v] = true;
        }
    }

    /// Unmasked vertices in ascending order.
    pub fn active_vertices(&self) -> Vec<usize> {
        (0..self.masked.len()).filter(|&v| !self.masked[v]).collect()
    }
}

/// Nonzero pattern of the current iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachState {
    reached: Vec<bool>,
    k: usize,
    start: usize,
    scratch: Vec<bool>,
}

impl ReachState {
    /// The pattern of `x⁽⁰⁾ = e_start`.
    pub fn new(n: usize, start: usize) -> Self {
        let mut reached = vec![false; n];
        reached[start] = true;
        ReachState {
            scratch: reached.clone(),
            reached,
            k: 0,
            start,
        }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Number of sweeps performed.
    pub fn iteration(&self) -> usize {
        self.k
    }

    pub fn is_reached(&self, v: usize) -> bool {
        self.reached[v]
    }

    pub fn reached(&self) -> &[bool] {
        &self.reached
    }

    pub fn reached_vertices(&self) -> Vec<usize> {
        (0..self.reached.len()).filter(|&v| self.reached[v]).collect()
    }

    /// Performs one sweep over `order` (ascending vertex ids; pass every
    /// vertex of `g` for an unmasked run) and returns the vertices reached
    /// for the first time, ascending.
    ///
    /// Vertices outside `order` are never read or written. Neighbours of
    /// vertices in `order` must themselves be in `order`, which holds
    /// whenever `order` is a union of components.
    pub fn sweep(&mut self, g: &Graph, rule: SweepRule, order: &[usize]) -> Vec<usize> {
        let start = self.start;
        let mut newly = Vec::new();
        match rule {
            SweepRule::AlgebraicBfs | SweepRule::SimpleIteration => {
                let keep_self = rule == SweepRule::AlgebraicBfs;
                for &j in order {
                    let from_rhs = j == start;
                    let from_self = keep_self && self.reached[j];
                    self.scratch[j] = from_rhs
                        || from_self
                        || g.neighbors(j).iter().any(|&l| self.reached[l]);
                }
                for &j in order {
                    let now = self.scratch[j];
                    debug_assert!(now || !self.reached[j], "reached set shrank at {j}");
                    if now && !self.reached[j] {
                        newly.push(j);
                    }
                    self.reached[j] = now;
                }
            }
            SweepRule::GaussSeidel => {
                // In place: when j is updated, entries l < j already hold the
                // current sweep and entries l > j still hold the previous one.
                for &j in order {
                    let was = self.reached[j];
                    let now = j == start || g.neighbors(j).iter().any(|&l| self.reached[l]);
                    debug_assert!(now || !was, "reached set shrank at {j}");
                    if now && !was {
                        newly.push(j);
                    }
                    self.reached[j] = now;
                }
            }
        }
        self.k += 1;
        newly
    }
}

/// Record of a single-component traversal.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TraversalTrace {
    /// Vertices first reached at iterations `1, 2, ...`; empty when trace
    /// retention is off.
    pub newly_reached: Vec<Vec<usize>>,
    /// Iterations that reached at least one new vertex.
    pub iterations_used: usize,
    /// Sweeps performed, including the final one that detects the fixpoint.
    pub sweeps: usize,
}

impl TraversalTrace {
    /// The trace as JSON-lines records `{"k": .., "new": [..]}`, 1-based ids.
    pub fn json_lines(&self) -> Vec<String> {
        self.newly_reached
            .iter()
            .enumerate()
            .map(|(k, vs)| {
                let ids: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
                format!("{{\"k\":{},\"new\":[{}]}}", k + 1, ids.join(","))
            })
            .collect()
    }
}

/// Sweeps until an iteration reaches nothing new. Returns the reached set
/// (ascending) and the trace.
pub fn traverse(
    g: &Graph,
    rule: SweepRule,
    start: usize,
    order: &[usize],
    keep_trace: bool,
) -> (Vec<usize>, TraversalTrace) {
    let mut state = ReachState::new(g.vertex_count(), start);
    let mut trace = TraversalTrace::default();
    let cap = order.len().max(1);
    let mut component = vec![start];
    while trace.sweeps <= cap {
        let newly = state.sweep(g, rule, order);
        trace.sweeps += 1;
        if newly.is_empty() {
            break;
        }
        trace.iterations_used += 1;
        component.extend_from_slice(&newly);
        if keep_trace {
            trace.newly_reached.push(newly);
        }
    }
    component.sort_unstable();
    (component, trace)
}

fn single(g: &Graph, rule: SweepRule, start: usize) -> Result<(Vec<usize>, TraversalTrace)> {
    g.check_vertex(start)?;
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    Ok(traverse(g, rule, start, &order, true))
}

/// Component of `start` by iterating the pattern of `x ← A·x`.
pub fn algebraic_bfs_component(g: &Graph, start: usize) -> Result<(Vec<usize>, TraversalTrace)> {
    single(g, SweepRule::AlgebraicBfs, start)
}

/// Component of `start` by simple-iteration (Jacobi-order) propagation.
pub fn sis_component(g: &Graph, start: usize) -> Result<(Vec<usize>, TraversalTrace)> {
    single(g, SweepRule::SimpleIteration, start)
}

/// Component of `start` by Gauss–Seidel-order propagation, sweeping
/// vertices in ascending index order.
pub fn gss_component(g: &Graph, start: usize) -> Result<(Vec<usize>, TraversalTrace)> {
    single(g, SweepRule::GaussSeidel, start)
}

/// Options for [`components_via`].
#[derive(Debug, Clone)]
pub struct DriverOptions {
    /// Exclude vertices of components already found from later sweeps.
    pub masking: bool,
    /// Keep per-iteration reached sets.
    pub keep_trace: bool,
    /// Largest graph accepted by the exact strategy.
    pub exact_cap: usize,
    /// Matrix parameters for the exact strategy; defaults to
    /// [`MatrixParams::for_graph`].
    pub params: Option<MatrixParams>,
    /// Vertex to take as the first start instead of vertex 0.
    pub first_start: Option<usize>,
}

impl Default for DriverOptions {
    fn default() -> Self {
        DriverOptions {
            masking: true,
            keep_trace: false,
            exact_cap: exact::DEFAULT_EXACT_CAP,
            params: None,
            first_start: None,
        }
    }
}

/// One component found by the driver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRun {
    pub start: usize,
    pub size: usize,
    pub trace: TraversalTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentsRun {
    pub partition: ComponentPartition,
    pub runs: Vec<ComponentRun>,
}

impl ComponentsRun {
    pub fn total_iterations(&self) -> usize {
        self.runs.iter().map(|r| r.trace.iterations_used).sum()
    }

    pub fn total_sweeps(&self) -> usize {
        self.runs.iter().map(|r| r.trace.sweeps).sum()
    }
}

/// Finds every component: starts at `opts.first_start` (if set), then
/// repeatedly takes the lowest-numbered unassigned vertex as start and runs the chosen single-component method on it.
pub fn components_via(g: &Graph, strategy: Strategy, opts: &DriverOptions) -> Result<ComponentsRun> {
    let n = g.vertex_count();
    if strategy == Strategy::ExactPerturb && n > opts.exact_cap {
        return Err(Error::TooLarge {
            what: "exact perturbation",
            n,
            cap: opts.exact_cap,
        });
    }
    let params = match (&opts.params, strategy) {
        (_, s) if s != Strategy::ExactPerturb => None,
        (Some(p), _) => {
            p.validate_for(g)?;
            Some(p.clone())
        }
        (None, _) => Some(MatrixParams::for_graph(g)),
    };

    let mut mask = Mask::none(n);
    let mut assigned = vec![false; n];
    let mut components = Vec::new();
    let mut runs = Vec::new();
    let all: Vec<usize> = (0..n).collect();
    let mut next_start = 0;
    if let Some(s) = opts.first_start {
        g.check_vertex(s)?;
    }
    let mut first = opts.first_start;

    loop {
        let start = match first.take() {
            Some(s) => s,
            None => {
                while next_start < n && assigned[next_start] {
                    next_start += 1;
                }
                if next_start == n {
                    break;
                }
                next_start
            }
        };
        let order = if opts.masking {
            mask.active_vertices()
        } else {
            all.clone()
        };
        let (component, trace) = match strategy.sweep_rule() {
            Some(rule) => traverse(g, rule, start, &order, opts.keep_trace),
            None => {
                let params = params.as_ref().expect("exact strategy has params");
                let component = if opts.masking {
                    let sub = g.induced(&order);
                    let local = order.binary_search(&start).expect("start is active");
                    exact::perturb_component_with_cap(&sub, params, local, opts.exact_cap)?
                        .component
                        .into_iter()
                        .map(|v| order[v])
                        .collect()
                } else {
                    exact::perturb_component_with_cap(g, params, start, opts.exact_cap)?.component
                };
                (component, TraversalTrace::default())
            }
        };
        for &v in &component {
            assigned[v] = true;
        }
        if opts.masking {
            mask.mask_all(&component);
        }
        runs.push(ComponentRun {
            start,
            size: component.len(),
            trace,
        });
        components.push(component);
    }

    Ok(ComponentsRun {
        partition: ComponentPartition::from_components(components),
        runs,
    })
}

/// One pass of the simple-iteration method over the portrait:
/// `x'_j = (b_j − Σ_{l~j} x_l) / d`, with `b = e_start`.
pub fn simple_iteration_portrait(x: &[f64], portrait: &Portrait, params: &MatrixParams, start: usize) -> Vec<f64> {
    let d = params.d_f64();
    let mut next = vec![0.0; x.len()];
    for e in portrait.entries() {
        next[e.v1] += x[e.v2];
        next[e.v2] += x[e.v1];
    }
    for (i, v) in next.iter_mut().enumerate() {
        let b = if i == start { 1.0 } else { 0.0 };
        *v = (b - *v) / d;
    }
    next
}

/// Literal floating-point form of the modified sweeps: the diagonal division
/// is replaced by multiplication, `x_j ← d·(b_j − Σ_{l~j} x_l)`, and `j` is
/// reached once `x_j != 0.0`. Only simple iteration and Gauss–Seidel are
/// meaningful here.
pub fn float_component(g: &Graph, rule: SweepRule, d: f64, start: usize) -> Result<(Vec<usize>, TraversalTrace)> {
    g.check_vertex(start)?;
    if rule == SweepRule::AlgebraicBfs {
        return Err(Error::InvalidArgument(
            "float mode covers simple iteration and Gauss-Seidel only".into(),
        ));
    }
    let n = g.vertex_count();
    let mut x = vec![0.0f64; n];
    x[start] = 1.0;
    let mut trace = TraversalTrace::default();
    let mut prev = x.clone();
    while trace.sweeps <= n {
        prev.copy_from_slice(&x);
        for j in 0..n {
            let b = if j == start { 1.0 } else { 0.0 };
            let source = if rule == SweepRule::GaussSeidel { &x } else { &prev };
            let s: f64 = g.neighbors(j).iter().map(|&l| source[l]).sum();
            x[j] = d * (b - s);
        }
        trace.sweeps += 1;
        let newly: Vec<usize> = (0..n).filter(|&j| prev[j] == 0.0 && x[j] != 0.0).collect();
        if newly.is_empty() {
            break;
        }
        trace.iterations_used += 1;
        trace.newly_reached.push(newly);
    }
    let component = (0..n).filter(|&j| x[j] != 0.0).collect();
    Ok((component, trace))
}
