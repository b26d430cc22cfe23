//! Direct search over labelings with bounded labels.
//!
//! This shares no code with the class-system search and serves as its
//! oracle. It only ever proves upper bounds: a failed search means no
//! labeling with labels in `[-B, B]` does better, which says nothing about
//! larger labels.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Budget, IndexCertificate, IndexValue, Method, SolverError};
use crate::bounds::{bound_report, BoundHints};
use crate::graph::{Graph, Vertex};
use crate::labeling::{label_count, IndexKind, VertexLabeling};

pub const DEFAULT_NODES: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct BruteForceResult {
    pub best: usize,
    pub labeling: VertexLabeling,
    /// Nodes spent over all targets.
    pub nodes: u64,
    /// Whether the last search ran out of budget rather than finishing.
    pub exhausted: bool,
}

/// Improves `start` by searching for labelings with ever fewer edge labels,
/// stopping at `lower`, at the first target that has no solution in
/// `[-bound, bound]`, or at the first target whose search runs out of nodes.
pub fn search_down(
    g: &Graph,
    kind: IndexKind,
    bound: i64,
    lower: usize,
    start: VertexLabeling,
    nodes_per_target: u64,
    should_stop: Option<&(dyn Fn() -> bool + Sync)>,
) -> BruteForceResult {
    let mut best = label_count(g, &start, kind).expect("start labeling sized to graph");
    let mut labeling = start;
    let mut nodes = 0;
    let mut exhausted = false;
    while best > lower {
        let mut s = Direct::new(g, kind, bound, best - 1, nodes_per_target, should_stop);
        let found = s.run();
        nodes += s.nodes;
        match found {
            Some(f) => {
                best = label_count(g, &f, kind).unwrap();
                labeling = f;
            }
            None => {
                exhausted = s.stopped;
                break;
            }
        }
    }
    BruteForceResult { best, labeling, nodes, exhausted }
}

/// Best count found over labels in `[-bound, bound]`, reported as exact only
/// when it meets the lower bound.
pub fn brute_force_index(
    g: &Graph,
    kind: IndexKind,
    bound: i64,
    budget: &Budget,
) -> Result<IndexCertificate, SolverError> {
    let bounds = bound_report(g, kind, &BoundHints::default())?;
    let start = bounds.best_witness().expect("upper bounds carry witnesses").clone();
    let r = search_down(g, kind, bound, bounds.lower, start, budget.max_nodes, budget.should_stop);
    let value = if r.best == bounds.lower {
        IndexValue::Exact(r.best)
    } else {
        IndexValue::Interval { lower: bounds.lower, upper: r.best }
    };
    Ok(IndexCertificate::new(g, kind, value, Method::BruteForceUpper, r.labeling, bounds, r.nodes, r.exhausted))
}

struct Direct<'g, 'a> {
    g: &'g Graph,
    kind: IndexKind,
    bound: i64,
    target: usize,
    max_nodes: u64,
    should_stop: Option<&'a (dyn Fn() -> bool + Sync)>,
    order: Vec<Vertex>,
    label: Vec<Option<i64>>,
    taken: Vec<bool>,
    /// Multiplicity of each edge label, offset by `4 * bound`.
    edge_count: Vec<u32>,
    distinct: usize,
    /// The edge labels currently in use.
    active: Vec<i64>,
    nodes: u64,
    stopped: bool,
}

impl<'g, 'a> Direct<'g, 'a> {
    fn new(
        g: &'g Graph,
        kind: IndexKind,
        bound: i64,
        target: usize,
        max_nodes: u64,
        should_stop: Option<&'a (dyn Fn() -> bool + Sync)>,
    ) -> Self {
        // Vertices in BFS order from a maximum-degree vertex, so that each
        // vertex after the first in its component has a labeled neighbour.
        let mut order = Vec::with_capacity(g.n());
        let mut seen = vec![false; g.n()];
        let mut roots: Vec<Vertex> = (0..g.n()).collect();
        roots.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
        for r in roots {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let start = order.len();
            order.push(r);
            let mut i = start;
            while i < order.len() {
                let u = order[i];
                for &w in g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
                i += 1;
            }
        }
        let span = (2 * bound + 1) as usize;
        Direct {
            g,
            kind,
            bound,
            target,
            max_nodes,
            should_stop,
            order,
            label: vec![None; g.n()],
            taken: vec![false; span],
            edge_count: vec![0; 2 * span + 1],
            distinct: 0,
            active: Vec::new(),
            nodes: 0,
            stopped: false,
        }
    }

    fn edge_label(&self, a: i64, b: i64) -> i64 {
        match self.kind {
            IndexKind::Sum => a + b,
            IndexKind::Diff => (a - b).abs(),
        }
    }

    fn slot(&self, l: i64) -> usize {
        (l + 2 * self.bound) as usize
    }

    /// Number of distinct edge labels `x` would add toward its labeled
    /// neighbours.
    fn fresh_labels(&self, x: Vertex, val: i64) -> usize {
        let nb = self.g.neighbors(x);
        let mut fresh = 0;
        for (i, &w) in nb.iter().enumerate() {
            let Some(lw) = self.label[w] else { continue };
            let l = self.edge_label(val, lw);
            if self.edge_count[self.slot(l)] > 0 {
                continue;
            }
            let repeat = nb[..i].iter().any(|&p| self.label[p].is_some_and(|lp| self.edge_label(val, lp) == l));
            if !repeat {
                fresh += 1;
            }
        }
        fresh
    }

    fn set(&mut self, x: Vertex, val: i64, delta: i32) {
        for i in 0..self.g.neighbors(x).len() {
            let w = self.g.neighbors(x)[i];
            if let Some(lw) = self.label[w] {
                let l = self.edge_label(val, lw);
                let s = self.slot(l);
                let c = &mut self.edge_count[s];
                if delta > 0 {
                    *c += 1;
                    if *c == 1 {
                        self.distinct += 1;
                        self.active.push(l);
                    }
                } else {
                    *c -= 1;
                    if *c == 0 {
                        self.distinct -= 1;
                        let at = self.active.iter().position(|&a| a == l).expect("active label");
                        self.active.swap_remove(at);
                    }
                }
            }
        }
        let t = (val + self.bound) as usize;
        self.taken[t] = delta > 0;
        self.label[x] = if delta > 0 { Some(val) } else { None };
    }

    fn run(&mut self) -> Option<VertexLabeling> {
        if self.dfs(0) {
            let vals: Vec<BigInt> = self.label.iter().map(|l| BigInt::from(l.unwrap())).collect();
            return Some(VertexLabeling::new(vals).expect("labels are kept distinct"));
        }
        None
    }

    fn dfs(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.stopped = true;
        } else if self.nodes.is_multiple_of(4096) {
            if let Some(stop) = self.should_stop {
                self.stopped = stop();
            }
        }
        if self.stopped {
            return false;
        }
        let x = self.order[pos];
        // Shift and negation normalise the first vertex to 0 and the second
        // to a positive label.
        let anchor = self.g.neighbors(x).iter().find_map(|&w| self.label[w]);
        let range: Vec<i64> = match (pos, anchor) {
            (0, _) => vec![0],
            (1, _) => (1..=self.bound).collect(),
            // With no fresh label allowed, `x` must reuse a label toward a
            // labeled neighbour.
            (_, Some(lw)) if self.distinct == self.target => {
                let mut vs: Vec<i64> = match self.kind {
                    IndexKind::Sum => self.active.iter().map(|l| l - lw).collect(),
                    IndexKind::Diff => self.active.iter().flat_map(|l| [lw - l, lw + l]).collect(),
                };
                vs.retain(|v| v.abs() <= self.bound);
                vs.sort_unstable();
                vs.dedup();
                vs
            }
            _ => (-self.bound..=self.bound).collect(),
        };
        let mut cands: Vec<(usize, i64)> = range
            .into_iter()
            .filter(|&v| !self.taken[(v + self.bound) as usize])
            .filter_map(|v| {
                let fresh = self.fresh_labels(x, v);
                (self.distinct + fresh <= self.target).then_some((fresh, v))
            })
            .collect();
        cands.sort_by_key(|&(fresh, v)| (fresh, v.abs(), v));
        for (_, v) in cands {
            self.set(x, v, 1);
            if self.dfs(pos + 1) {
                return true;
            }
            self.set(x, v, -1);
            if self.stopped {
                return false;
            }
        }
        false
    }
}
