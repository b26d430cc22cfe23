//! Exact computation of the sum and difference index.
//!
//! `feasible_k` decides whether some labeling induces at most `k` edge
//! labels. It enumerates class systems (see [`search`]) and, for each
//! complete one, solves the homogeneous system
//!
//! * sum: `f(u) + f(v) - α_c = 0`
//! * difference: `f(u) - f(v) - s·α_c = 0`
//!
//! over the rationals. The class system is realisable iff its solution space
//! is not contained in any forbidden hyperplane: `f(u) = f(v)`, `α_i = α_j`,
//! and for differences also `α_i = -α_j` and `α_i = 0`. A space avoiding all
//! of them meets the complement of their union, and a point there is found on
//! the moment curve `Σ t^j·b_j`: each forbidden functional restricts to a
//! nonzero polynomial in `t` of degree at most the dimension, so some small
//! `t` avoids all roots.

pub mod brute;
mod search;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::bounds::{bound_report, BoundHints, BoundReport, BoundsError};
use crate::graph::Graph;
use crate::labeling::{induced_labels, EdgeLabelSummary, IndexKind, VertexLabeling};
use crate::linalg::{primitive_integer, solve, AffineSolutionSpace, Q};

pub use search::Choice;
use search::ClassSearch;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// How often the search polls the stop callback, in nodes.
const STOP_POLL: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("k must be between 1 and 64, got {0}")]
    BadK(usize),
}

impl From<BoundsError> for SolverError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::NoEdges => SolverError::NoEdges,
        }
    }
}

/// Resource limits for a search.
#[derive(Clone, Copy)]
pub struct Budget<'a> {
    pub max_nodes: u64,
    /// Polled periodically; returning `true` abandons the search.
    pub should_stop: Option<&'a (dyn Fn() -> bool + Sync)>,
}

impl Default for Budget<'_> {
    fn default() -> Self {
        Budget { max_nodes: DEFAULT_NODE_BUDGET, should_stop: None }
    }
}

impl core::fmt::Debug for Budget<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Budget")
            .field("max_nodes", &self.max_nodes)
            .field("should_stop", &self.should_stop.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A labeling with at most `k` edge labels.
    Found(VertexLabeling),
    /// The enumeration finished without a realisable class system.
    NoneExists,
    /// The budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchResult {
    Found(VertexLabeling),
    Exhausted,
    OutOfBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchOutcome {
    pub nodes: u64,
    pub result: BranchResult,
}

/// Stop growing the branch prefixes once there are this many.
const TARGET_BRANCHES: usize = 64;
const MAX_PREFIX_DEPTH: usize = 12;

/// A `feasible_k` instance split into independent top-level branches.
///
/// Branches are fixed assignments of the first few edges, listed in the
/// order a serial search would visit them; the split depends only on the
/// graph, the kind and `k`. Running the branches in any order and combining
/// them with [`merge_branches`] reproduces the serial answer.
pub struct FeasibilityProblem<'g> {
    g: &'g Graph,
    kind: IndexKind,
    k: usize,
    prefixes: Vec<Vec<Choice>>,
}

impl<'g> FeasibilityProblem<'g> {
    pub fn new(g: &'g Graph, kind: IndexKind, k: usize) -> Result<Self, SolverError> {
        if g.edge_count() == 0 {
            return Err(SolverError::NoEdges);
        }
        if k == 0 || k > 64 {
            return Err(SolverError::BadK(k));
        }
        let mut st = ClassSearch::new(g, kind, k);
        let mut prefixes: Vec<Vec<Choice>> = vec![Vec::new()];
        let mut depth = 0;
        while prefixes.len() < TARGET_BRANCHES && depth < g.edge_count().min(MAX_PREFIX_DEPTH) {
            let mut next = Vec::new();
            for p in &prefixes {
                let mut undos = Vec::new();
                for (pos, &ch) in p.iter().enumerate() {
                    undos.push(st.push(pos, ch).expect("prefix was feasible"));
                }
                for ch in st.choices(depth) {
                    if let Some(u) = st.push(depth, ch) {
                        st.pop(u);
                        let mut q = p.clone();
                        q.push(ch);
                        next.push(q);
                    }
                }
                while let Some(u) = undos.pop() {
                    st.pop(u);
                }
            }
            prefixes = next;
            depth += 1;
        }
        Ok(FeasibilityProblem { g, kind, k, prefixes })
    }

    pub fn branch_count(&self) -> usize {
        self.prefixes.len()
    }

    /// Runs one branch to completion, to its first witness, or until it has
    /// used more than `budget.max_nodes` nodes.
    pub fn run_branch(&self, i: usize, budget: &Budget) -> BranchOutcome {
        let mut st = ClassSearch::new(self.g, self.kind, self.k);
        let prefix = &self.prefixes[i];
        let mut undos = Vec::new();
        for (pos, &ch) in prefix.iter().enumerate() {
            undos.push(st.push(pos, ch).expect("prefix was feasible"));
        }
        let mut run = Run { nodes: 0, budget, stopped: false };
        let found = dfs(&mut st, prefix.len(), &mut run);
        let result = match found {
            Some(f) => BranchResult::Found(f),
            None if run.stopped => BranchResult::OutOfBudget,
            None => BranchResult::Exhausted,
        };
        BranchOutcome { nodes: run.nodes, result }
    }
}

/// Combines branch outcomes in branch order. Branch `i` counts only if the
/// nodes of branches `0..=i` fit in `max_nodes`.
pub fn merge_branches<I>(outcomes: I, max_nodes: u64) -> (Feasibility, u64)
where
    I: IntoIterator<Item = BranchOutcome>,
{
    let mut total: u64 = 0;
    for o in outcomes {
        total = total.saturating_add(o.nodes);
        if total > max_nodes || o.result == BranchResult::OutOfBudget {
            return (Feasibility::Unknown, total.min(max_nodes));
        }
        if let BranchResult::Found(f) = o.result {
            return (Feasibility::Found(f), total);
        }
    }
    (Feasibility::NoneExists, total)
}

struct Run<'b, 'a> {
    nodes: u64,
    budget: &'b Budget<'a>,
    stopped: bool,
}

impl Run<'_, '_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.stopped = true;
        } else if self.nodes.is_multiple_of(STOP_POLL) {
            if let Some(stop) = self.budget.should_stop {
                self.stopped = stop();
            }
        }
        !self.stopped
    }
}

fn dfs(st: &mut ClassSearch, pos: usize, run: &mut Run) -> Option<VertexLabeling> {
    if pos == st.order.len() {
        if !run.tick() {
            return None;
        }
        return realize(st.g, st.kind, st.used, &st.class, &st.sign);
    }
    for ch in st.choices(pos) {
        if !run.tick() {
            return None;
        }
        let Some(undo) = st.push(pos, ch) else { continue };
        let found = dfs(st, pos + 1, run);
        st.pop(undo);
        if found.is_some() {
            return found;
        }
        if run.stopped {
            return None;
        }
    }
    None
}

/// The linear system of a complete class system over the variables
/// `f(0..n)` followed by `α_0..α_used`.
pub fn class_system_space(
    g: &Graph,
    kind: IndexKind,
    used: usize,
    class: &[u8],
    sign: &[i8],
) -> Option<AffineSolutionSpace> {
    let n = g.n();
    let cols = n + used;
    let rows: Vec<Vec<Q>> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let mut r = vec![Q::zero(); cols];
            r[u] = q(1);
            r[v] = q(match kind {
                IndexKind::Sum => 1,
                IndexKind::Diff => -1,
            });
            r[n + class[e] as usize] = q(match kind {
                IndexKind::Sum => -1,
                IndexKind::Diff => -(sign[e] as i64),
            });
            r
        })
        .collect();
    solve(&rows, &vec![Q::zero(); rows.len()], cols)
}

fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// The functionals that must not vanish at a valid labeling.
pub fn forbidden_functionals(n: usize, used: usize, kind: IndexKind) -> Vec<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push(vec![(u, 1), (v, -1)]);
        }
    }
    for i in 0..used {
        for j in i + 1..used {
            out.push(vec![(n + i, 1), (n + j, -1)]);
            if kind == IndexKind::Diff {
                out.push(vec![(n + i, 1), (n + j, 1)]);
            }
        }
        if kind == IndexKind::Diff {
            out.push(vec![(n + i, 1)]);
        }
    }
    out
}

/// Least `t >= 0` at which the moment-curve point avoids every functional,
/// scaled to a primitive integer vector. `None` if some functional vanishes
/// on the whole space.
pub fn moment_curve_witness(space: &AffineSolutionSpace, functionals: &[Vec<(usize, i64)>]) -> Option<Vec<BigInt>> {
    // Coefficients of each functional as a polynomial in t.
    let mut polys: Vec<Vec<Q>> = Vec::with_capacity(functionals.len());
    for phi in functionals {
        let mut p = Vec::with_capacity(space.dim() + 1);
        p.push(crate::linalg::eval(phi, &space.particular));
        for b in &space.basis {
            p.push(crate::linalg::eval(phi, b));
        }
        if p.iter().all(Zero::is_zero) {
            return None;
        }
        polys.push(p);
    }
    let tries = space.dim() * functionals.len() + 1;
    for t in 0..=tries as u64 {
        let tq = q(t as i64);
        let ok = polys.iter().all(|p| {
            let mut acc = Q::zero();
            for c in p.iter().rev() {
                acc = acc * &tq + c;
            }
            !acc.is_zero()
        });
        if ok {
            return Some(primitive_integer(&space.moment_point(&BigInt::from(t))));
        }
    }
    unreachable!("a nonzero polynomial of degree d has at most d roots")
}

/// Turns a complete class system into a labeling, if it is realisable.
fn realize(g: &Graph, kind: IndexKind, used: usize, class: &[u8], sign: &[i8]) -> Option<VertexLabeling> {
    let space = class_system_space(g, kind, used, class, sign)?;
    let functionals = forbidden_functionals(g.n(), used, kind);
    let x = moment_curve_witness(&space, &functionals)?;
    let f = VertexLabeling::new(x[..g.n()].to_vec()).expect("witness avoids f(u) = f(v)");
    let count = induced_labels(g, &f, kind).expect("labeling sized to graph").count;
    assert!(count <= used, "witness induces {count} labels for {used} classes");
    Some(f)
}

/// Decides whether `g` has a labeling with at most `k` distinct induced
/// edge labels, running the branches in order on the current thread.
pub fn feasible_k(g: &Graph, kind: IndexKind, k: usize, budget: &Budget) -> Result<(Feasibility, u64), SolverError> {
    let problem = FeasibilityProblem::new(g, kind, k)?;
    let mut total = 0u64;
    for i in 0..problem.branch_count() {
        let left = Budget { max_nodes: budget.max_nodes - total, should_stop: budget.should_stop };
        let o = problem.run_branch(i, &left);
        total += o.nodes;
        match o.result {
            BranchResult::Found(f) => return Ok((Feasibility::Found(f), total)),
            BranchResult::OutOfBudget => return Ok((Feasibility::Unknown, total.min(budget.max_nodes))),
            BranchResult::Exhausted => {}
        }
    }
    Ok((Feasibility::NoneExists, total))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Class-system search proved the lower end.
    ExactColoring,
    /// Lower and upper bounds already agreed.
    Bounds,
    /// A closed-form labeling.
    Construction,
    /// Best labeling found by direct search; an upper bound only.
    BruteForceUpper,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactColoring => "exact-coloring",
            Method::Bounds => "bounds",
            Method::Construction => "construction",
            Method::BruteForceUpper => "brute-force-upper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexValue {
    Exact(usize),
    Interval { lower: usize, upper: usize },
}

impl IndexValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            IndexValue::Exact(v) => Some(v),
            IndexValue::Interval { .. } => None,
        }
    }

    pub fn lower(self) -> usize {
        match self {
            IndexValue::Exact(v) => v,
            IndexValue::Interval { lower, .. } => lower,
        }
    }

    pub fn upper(self) -> usize {
        match self {
            IndexValue::Exact(v) => v,
            IndexValue::Interval { upper, .. } => upper,
        }
    }
}

/// A computed index together with the evidence for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCertificate {
    pub kind: IndexKind,
    pub value: IndexValue,
    pub method: Method,
    /// Labeling attaining `value.upper()`.
    pub labeling: VertexLabeling,
    pub per_edge: EdgeLabelSummary,
    pub bounds: BoundReport,
    /// Search nodes spent.
    pub nodes: u64,
    /// Whether a budget ran out.
    pub exhausted: bool,
}

impl IndexCertificate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g: &Graph,
        kind: IndexKind,
        value: IndexValue,
        method: Method,
        labeling: VertexLabeling,
        bounds: BoundReport,
        nodes: u64,
        exhausted: bool,
    ) -> Self {
        let per_edge = induced_labels(g, &labeling, kind).expect("labeling sized to graph");
        assert_eq!(per_edge.count, value.upper(), "certificate labeling does not attain its value");
        IndexCertificate { kind, value, method, labeling, per_edge, bounds, nodes, exhausted }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub hints: BoundHints,
    /// Runs the direct search over labels in `[-B, B]` first to tighten the
    /// upper bound.
    pub brute_force_bound: Option<i64>,
    /// Node budget for that direct search, per target count.
    pub brute_force_nodes: Option<u64>,
}

/// Computes the index with the serial search.
pub fn solve_index(
    g: &Graph,
    kind: IndexKind,
    opts: &SolveOptions,
    budget: &Budget,
) -> Result<IndexCertificate, SolverError> {
    solve_index_with(g, kind, opts, budget, &mut |k| feasible_k(g, kind, k, budget))
}

/// Computes the index, deciding each `k` with `decide`. Tries `k` upward
/// from the lower bound; the first feasible `k` is the index. If every `k`
/// below the upper bound is refuted, the upper bound's witness is optimal.
pub fn solve_index_with(
    g: &Graph,
    kind: IndexKind,
    opts: &SolveOptions,
    budget: &Budget,
    decide: &mut dyn FnMut(usize) -> Result<(Feasibility, u64), SolverError>,
) -> Result<IndexCertificate, SolverError> {
    let mut bounds = bound_report(g, kind, &opts.hints)?;
    if let Some(b) = opts.brute_force_bound {
        if !bounds.is_tight() {
            let nodes = opts.brute_force_nodes.unwrap_or(brute::DEFAULT_NODES);
            let start = bounds.best_witness().expect("upper bounds carry witnesses").clone();
            let r = brute::search_down(g, kind, b, bounds.lower, start, nodes, budget.should_stop);
            bounds.add_upper(g, "direct search", "labels found by direct search", r.labeling);
        }
    }
    let witness = bounds.best_witness().expect("upper bounds carry witnesses").clone();
    if bounds.is_tight() {
        let v = bounds.upper;
        return Ok(IndexCertificate::new(g, kind, IndexValue::Exact(v), Method::Bounds, witness, bounds, 0, false));
    }
    let mut nodes = 0u64;
    for k in bounds.lower..bounds.upper {
        let (res, used) = decide(k)?;
        nodes += used;
        match res {
            Feasibility::Found(f) => {
                let count = induced_labels(g, &f, kind).expect("labeling sized to graph").count;
                // No labeling has fewer than k labels, since k - 1 was refuted
                // or is below the lower bound.
                assert_eq!(count, k);
                return Ok(IndexCertificate::new(
                    g,
                    kind,
                    IndexValue::Exact(k),
                    Method::ExactColoring,
                    f,
                    bounds,
                    nodes,
                    false,
                ));
            }
            Feasibility::NoneExists => {}
            Feasibility::Unknown => {
                let value = IndexValue::Interval { lower: k, upper: bounds.upper };
                return Ok(IndexCertificate::new(
                    g,
                    kind,
                    value,
                    Method::BruteForceUpper,
                    witness,
                    bounds,
                    nodes,
                    true,
                ));
            }
        }
    }
    let v = bounds.upper;
    Ok(IndexCertificate::new(g, kind, IndexValue::Exact(v), Method::ExactColoring, witness, bounds, nodes, false))
}
