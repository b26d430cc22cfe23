//! Multi-threaded feasibility search.
//!
//! The top-level branches of a [`FeasibilityProblem`] run on a rayon pool
//! and are merged in branch order, so the answer does not depend on the
//! number of workers.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use labindex_core::solver::{
    merge_branches, solve_index_with, BranchOutcome, BranchResult, Budget, Feasibility, FeasibilityProblem,
    IndexCertificate, SolveOptions, SolverError,
};
use labindex_core::{Graph, IndexKind};
use rayon::prelude::*;
use rayon::ThreadPool;

/// Resource limits for one index computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Node budget for each `k`.
    pub nodes: u64,
    /// Wall-clock limit for the whole computation.
    pub time: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { nodes: labindex_core::solver::DEFAULT_NODE_BUDGET, time: Some(Duration::from_secs(60)) }
    }
}

pub fn pool(workers: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool")
}

/// [`labindex_core::solver::feasible_k`] with branches spread over `pool`.
pub fn feasible_k(
    pool: &ThreadPool,
    g: &Graph,
    kind: IndexKind,
    k: usize,
    budget: &Budget,
) -> Result<(Feasibility, u64), SolverError> {
    let problem = FeasibilityProblem::new(g, kind, k)?;
    // Branches after the first witness cannot change the merged answer.
    let first_found = AtomicUsize::new(usize::MAX);
    let outcomes: Vec<_> = pool.install(|| {
        (0..problem.branch_count())
            .into_par_iter()
            .map(|i| {
                let stop = || first_found.load(Ordering::Relaxed) < i || budget.should_stop.is_some_and(|f| f());
                if stop() {
                    // Never read by the merge, which ends at the earlier witness
                    // or at the budget that tripped.
                    return BranchOutcome { nodes: 0, result: BranchResult::OutOfBudget };
                }
                let b = Budget { max_nodes: budget.max_nodes, should_stop: Some(&stop) };
                let o = problem.run_branch(i, &b);
                if matches!(o.result, BranchResult::Found(_)) {
                    first_found.fetch_min(i, Ordering::Relaxed);
                }
                o
            })
            .collect()
    });
    Ok(merge_branches(outcomes, budget.max_nodes))
}

/// Computes one index under `limits`, returning the certificate and the
/// elapsed time.
pub fn solve(
    pool: &ThreadPool,
    g: &Graph,
    kind: IndexKind,
    opts: &SolveOptions,
    limits: Limits,
) -> Result<(IndexCertificate, Duration), SolverError> {
    let start = Instant::now();
    let deadline = limits.time.map(|t| start + t);
    let stop = move || deadline.is_some_and(|d| Instant::now() >= d);
    let budget = Budget { max_nodes: limits.nodes, should_stop: Some(&stop) };
    let cert = solve_index_with(g, kind, opts, &budget, &mut |k| feasible_k(pool, g, kind, k, &budget))?;
    Ok((cert, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use labindex_core::FamilySpec;

    #[test]
    fn matches_serial() {
        let p1 = pool(1);
        let p4 = pool(4);
        for spec in [FamilySpec::Wheel(4), FamilySpec::PentagonCounterexample, FamilySpec::Cycle(7)] {
            let g = spec.generate().unwrap();
            for kind in [IndexKind::Sum, IndexKind::Diff] {
                for k in 1..5 {
                    let b = Budget::default();
                    let serial = labindex_core::solver::feasible_k(&g, kind, k, &b).unwrap();
                    assert_eq!(feasible_k(&p1, &g, kind, k, &b).unwrap(), serial, "{spec} {kind} {k}");
                    assert_eq!(feasible_k(&p4, &g, kind, k, &b).unwrap(), serial, "{spec} {kind} {k}");
                }
            }
        }
    }
}
