//! Recomputes the known family values at small parameters.

use labindex_core::constructions::{self, ConstructionResult};
use labindex_core::solver::SolveOptions;
use labindex_core::{FamilySpec, IndexKind};
use rayon::ThreadPool;
use serde_json::{json, Value};

use crate::parallel::{solve, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Exactly(usize),
    AtLeast(usize),
}

impl Expected {
    fn accepts(self, lower: usize, upper: usize) -> bool {
        match self {
            Expected::Exactly(v) => lower == v && upper == v,
            Expected::AtLeast(v) => lower >= v,
        }
    }

    fn describe(self) -> String {
        match self {
            Expected::Exactly(v) => v.to_string(),
            Expected::AtLeast(v) => format!(">= {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub row: &'static str,
    pub graph: String,
    pub kind: IndexKind,
    pub expected: Expected,
    /// `(lower, upper)` as computed.
    pub computed: (usize, usize),
    pub source: &'static str,
    pub ok: bool,
}

impl Check {
    pub fn to_json(&self) -> Value {
        let (lo, hi) = self.computed;
        json!({
            "row": self.row,
            "graph": self.graph,
            "kind": self.kind.as_str(),
            "expected": self.expected.describe(),
            "computed": if lo == hi { json!(lo) } else { json!({ "lower": lo, "upper": hi }) },
            "source": self.source,
            "ok": self.ok,
        })
    }
}

struct Job {
    row: &'static str,
    spec: FamilySpec,
    sum: Expected,
    diff: Expected,
}

fn job(row: &'static str, spec: FamilySpec, sum: usize, diff: usize) -> Job {
    Job { row, spec, sum: Expected::Exactly(sum), diff: Expected::Exactly(diff) }
}

fn solver_jobs() -> Vec<Job> {
    use FamilySpec::*;
    let mut jobs = Vec::new();
    for n in 2..=6 {
        jobs.push(job("complete graphs", Complete(n), 2 * n - 3, n - 1));
    }
    for n in 1..=6 {
        for m in n..=7 - n {
            jobs.push(job("complete bipartite graphs", CompleteBipartite(n, m), n + m - 1, (n + m - 1).div_ceil(2)));
        }
    }
    for leaves in [vec![0, 2, 0], vec![0, 1, 1, 0], vec![0, 3, 1, 0], vec![1, 2, 1]] {
        let d = Caterpillar(leaves.clone()).generate().unwrap().max_degree();
        jobs.push(job("caterpillars", Caterpillar(leaves), d, d.div_ceil(2)));
    }
    for n in 3..=8 {
        jobs.push(job("cycles", Cycle(n), 3, 2));
    }
    for legs in [vec![1, 1, 1], vec![2, 1, 1], vec![2, 2, 2], vec![1, 1, 1, 1], vec![2, 2, 1, 1]] {
        let d = legs.len();
        jobs.push(job("spiders", Spider(legs), d, d.div_ceil(2)));
    }
    for d in [3, 4] {
        jobs.push(job("wheels W_3, W_4", Wheel(d), 5, 3));
    }
    for d in [5, 6] {
        jobs.push(job("wheels W_Δ, Δ >= 5", Wheel(d), d, d.div_ceil(2)));
    }
    jobs.push(job("rectangular grids", RectGrid(vec![3, 3]), 4, 2));
    for m in 2..=6 {
        jobs.push(job("ladders", RectGrid(vec![m, 2]), 3, 2));
    }
    jobs.push(job("pentagon with two chords", PentagonCounterexample, 4, 3));
    jobs.push(Job {
        row: "17-vertex tree",
        spec: TreeCounterexample,
        sum: Expected::Exactly(4),
        diff: Expected::AtLeast(3),
    });
    jobs
}

/// Constructions for parameters past the solver's reach, each with the
/// table value it should reach.
fn construction_checks() -> Vec<(&'static str, ConstructionResult, usize)> {
    use constructions::*;
    let legs = [3, 1, 2, 4, 2, 3, 4];
    let mut out = vec![
        ("complete graphs", complete_diff(12).unwrap(), 11),
        ("complete bipartite graphs", complete_bipartite_diff(7, 10).unwrap(), 8),
        ("caterpillars", caterpillar_diff(&[0, 4, 2, 0, 3, 4, 1, 0]).unwrap(), 3),
        ("spiders", spider_sum(&legs).unwrap(), 7),
        ("spiders", spider_diff(&legs).unwrap(), 4),
        ("rectangular grids", grid_sum(&[6, 3]).unwrap(), 4),
        ("rectangular grids", grid_diff(&[6, 3]).unwrap(), 2),
        ("ladders", ladder_sum(6).unwrap(), 3),
        ("ladders", grid_diff(&[6, 2]).unwrap(), 2),
    ];
    for n in [9, 20] {
        out.push(("cycles", cycle_sum(n).unwrap(), 3));
        out.push(("cycles", cycle_diff(n).unwrap(), 2));
    }
    for d in [7, 10] {
        out.push(("wheels W_Δ, Δ >= 5", wheel_diff(d).unwrap(), d.div_ceil(2)));
    }
    out
}

/// Runs every check. Solver checks compare the computed index with the
/// table value; construction checks compare the labeling's count with it
/// and make sure the lower bounds do not exceed it.
pub fn verify(pool: &ThreadPool, limits: Limits) -> Vec<Check> {
    let mut checks = Vec::new();
    for j in solver_jobs() {
        let g = j.spec.generate().expect("valid family");
        for (kind, expected) in [(IndexKind::Sum, j.sum), (IndexKind::Diff, j.diff)] {
            let computed = match solve(pool, &g, kind, &SolveOptions::default(), limits) {
                Ok((c, _)) => (c.value.lower(), c.value.upper()),
                Err(_) => (0, usize::MAX),
            };
            checks.push(Check {
                row: j.row,
                graph: j.spec.to_string(),
                kind,
                expected,
                computed,
                source: "solver",
                ok: expected.accepts(computed.0, computed.1),
            });
        }
    }
    for (row, r, value) in construction_checks() {
        let b = labindex_core::bounds::bound_report(&r.graph, r.kind, &Default::default()).expect("has edges");
        checks.push(Check {
            row,
            graph: r.family.as_ref().map(ToString::to_string).unwrap_or_default(),
            kind: r.kind,
            expected: Expected::Exactly(value),
            computed: (r.claimed, r.claimed),
            source: "construction",
            ok: r.claimed == value && b.lower <= value,
        });
    }
    checks
}

/// One line per check.
pub fn table(checks: &[Check]) -> String {
    let mut s = format!(
        "{:<28} {:<28} {:<5} {:>9} {:>9}  {:<12} {}\n",
        "row", "graph", "kind", "expected", "computed", "source", "status"
    );
    for c in checks {
        let computed = if c.computed.0 == c.computed.1 {
            c.computed.0.to_string()
        } else {
            format!("{}..{}", c.computed.0, c.computed.1)
        };
        s.push_str(&format!(
            "{:<28} {:<28} {:<5} {:>9} {:>9}  {:<12} {}\n",
            c.row,
            c.graph,
            c.kind.as_str(),
            c.expected.describe(),
            computed,
            c.source,
            if c.ok { "ok" } else { "MISMATCH" }
        ));
    }
    s
}
