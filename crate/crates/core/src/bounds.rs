//! Lower and upper bounds on the sum and difference index.
//!
//! Every upper bound carries a witness labeling whose induced count is the
//! bound's value, so an upper bound is always realised, never just claimed.
//!
//! Lower bounds lean on subgraph monotonicity: restricting a labeling of `G`
//! to a subgraph `H` can only merge or drop edge labels, so `s(H) <= s(G)`
//! and `d(H) <= d(G)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::cayley::tree_density_lower_bound;
use crate::graph::{Graph, Vertex};
use crate::labeling::{label_count, IndexKind, VertexLabeling};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub side: BoundSide,
    pub value: usize,
    /// The statement the bound rests on.
    pub anchor: &'static str,
    /// For upper bounds: a labeling with exactly `value` edge labels.
    pub witness: Option<VertexLabeling>,
}

impl BoundEntry {
    fn lower(name: &'static str, value: usize, anchor: &'static str) -> Self {
        BoundEntry { name, side: BoundSide::Lower, value, anchor, witness: None }
    }

    fn upper(g: &Graph, kind: IndexKind, name: &'static str, anchor: &'static str, f: VertexLabeling) -> Self {
        let value = label_count(g, &f, kind).expect("witness built for this graph");
        BoundEntry { name, side: BoundSide::Upper, value, anchor, witness: Some(f) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: IndexKind,
    pub lower: usize,
    pub upper: usize,
    pub breakdown: Vec<BoundEntry>,
}

impl BoundReport {
    fn from_entries(kind: IndexKind, breakdown: Vec<BoundEntry>) -> Self {
        let lower = breakdown.iter().filter(|e| e.side == BoundSide::Lower).map(|e| e.value).max().unwrap_or(1);
        let upper =
            breakdown.iter().filter(|e| e.side == BoundSide::Upper).map(|e| e.value).min().unwrap_or(usize::MAX);
        debug_assert!(lower <= upper, "lower bound {lower} above upper bound {upper}");
        BoundReport { kind, lower, upper, breakdown }
    }

    /// Adds a realised upper bound and tightens `upper`.
    pub fn add_upper(&mut self, g: &Graph, name: &'static str, anchor: &'static str, f: VertexLabeling) {
        let e = BoundEntry::upper(g, self.kind, name, anchor, f);
        self.upper = self.upper.min(e.value);
        self.breakdown.push(e);
    }

    /// Best witness among the upper bounds.
    pub fn best_witness(&self) -> Option<&VertexLabeling> {
        self.breakdown
            .iter()
            .filter(|e| e.side == BoundSide::Upper && e.value == self.upper)
            .find_map(|e| e.witness.as_ref())
    }

    pub fn is_tight(&self) -> bool {
        self.lower == self.upper
    }
}

/// Extra facts a caller may know about the other index.
#[derive(Debug, Clone, Default)]
pub struct BoundHints {
    /// A proven value of `s(G)`.
    pub sum_value: Option<usize>,
    /// A sum labeling, transferred to a difference labeling on bipartite
    /// graphs.
    pub sum_witness: Option<VertexLabeling>,
    /// A difference labeling, transferred to a sum labeling on bipartite
    /// graphs.
    pub diff_witness: Option<VertexLabeling>,
}

/// Exact chromatic index: `Δ` if a `Δ`-edge-colouring exists, else `Δ + 1`.
pub fn chromatic_index(g: &Graph) -> Result<usize, BoundsError> {
    if g.edge_count() == 0 {
        return Err(BoundsError::NoEdges);
    }
    let delta = g.max_degree();
    if g.is_bipartite() {
        return Ok(delta);
    }
    if is_overfull(g) {
        return Ok(delta + 1);
    }
    Ok(if edge_colorable(g, delta) { delta } else { delta + 1 })
}

/// More than `Δ·⌊n/2⌋` edges in some component cannot be split into `Δ`
/// matchings.
fn is_overfull(g: &Graph) -> bool {
    let delta = g.max_degree();
    let (count, comp) = g.components();
    let mut verts = vec![0usize; count];
    let mut edges = vec![0usize; count];
    for &c in &comp {
        verts[c] += 1;
    }
    for &(u, _) in g.edges() {
        edges[comp[u]] += 1;
    }
    (0..count).any(|c| edges[c] > delta * (verts[c] / 2))
}

/// Backtracking `k`-edge-colouring. Picks the uncoloured edge with the
/// fewest free colours (ties to the larger degree sum), opens at most one
/// fresh colour per step, and fails a branch as soon as some uncoloured edge
/// has no free colour left.
pub fn edge_colorable(g: &Graph, k: usize) -> bool {
    let m = g.edge_count();
    if m == 0 {
        return true;
    }
    if k == 0 || k < g.max_degree() || k > 63 {
        return k >= g.max_degree() && k > 0;
    }
    let edges = g.edges();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let weight: Vec<usize> = edges.iter().map(|&(u, v)| g.degree(u) + g.degree(v)).collect();
    let mut st =
        ColorState { edges, incident, weight, mask: vec![0u64; g.n()], color: vec![u8::MAX; m], all: (1u64 << k) - 1 };
    st.search(0, m)
}

struct ColorState<'a> {
    edges: &'a [(Vertex, Vertex)],
    incident: Vec<Vec<usize>>,
    weight: Vec<usize>,
    mask: Vec<u64>,
    color: Vec<u8>,
    all: u64,
}

impl ColorState<'_> {
    fn free(&self, e: usize) -> u64 {
        let (u, v) = self.edges[e];
        self.all & !(self.mask[u] | self.mask[v])
    }

    fn search(&mut self, used: usize, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let mut best: Option<(u32, usize)> = None;
        let mut best_w = 0;
        for e in 0..self.edges.len() {
            if self.color[e] != u8::MAX {
                continue;
            }
            let f = self.free(e).count_ones();
            if f == 0 {
                return false;
            }
            let better = match best {
                None => true,
                Some((bf, _)) => f < bf || (f == bf && self.weight[e] > best_w),
            };
            if better {
                best = Some((f, e));
                best_w = self.weight[e];
            }
        }
        let (_, e) = best.unwrap();
        let (u, v) = self.edges[e];
        let mut options = self.free(e);
        // Colours at or above `used` are interchangeable; keep only the first.
        let fresh = options & !((1u64 << used) - 1);
        if fresh != 0 {
            options = (options & ((1u64 << used) - 1)) | (fresh & fresh.wrapping_neg());
        }
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            self.color[e] = c as u8;
            self.mask[u] |= 1 << c;
            self.mask[v] |= 1 << c;
            let ok = self.neighbors_alive(u, v) && self.search(used.max(c + 1), left - 1);
            self.mask[u] &= !(1 << c);
            self.mask[v] &= !(1 << c);
            self.color[e] = u8::MAX;
            if ok {
                return true;
            }
        }
        false
    }

    fn neighbors_alive(&self, u: Vertex, v: Vertex) -> bool {
        self.incident[u].iter().chain(&self.incident[v]).all(|&f| self.color[f] != u8::MAX || self.free(f) != 0)
    }
}

/// Vertex-disjoint triangles, taken greedily in lexicographic order.
pub fn greedy_triangle_packing(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut used = vec![false; g.n()];
    let mut out = Vec::new();
    for u in 0..g.n() {
        'search: for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
            for &w in g.neighbors(v).iter().filter(|&&w| w > v) {
                if !used[u] && !used[v] && !used[w] && g.has_edge(u, w) {
                    used[u] = true;
                    used[v] = true;
                    used[w] = true;
                    out.push([u, v, w]);
                    break 'search;
                }
            }
        }
    }
    out
}

/// Least `k` with `C(k, 3) >= t`: the sum index of `t` disjoint triangles.
pub fn triangles_index(t: usize) -> usize {
    (3..).find(|&k| k * (k - 1) * (k - 2) / 6 >= t).unwrap()
}

/// Largest clique found by growing greedily from every vertex, visiting
/// candidates by decreasing degree.
pub fn greedy_clique(g: &Graph) -> Vec<Vertex> {
    let mut best: Vec<Vertex> = Vec::new();
    for s in 0..g.n() {
        let mut clique = vec![s];
        let mut cand: Vec<Vertex> = g.neighbors(s).to_vec();
        cand.sort_by_key(|&w| (core::cmp::Reverse(g.degree(w)), w));
        for w in cand {
            if clique.iter().all(|&c| g.has_edge(c, w)) {
                clique.push(w);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// Size `m` of a `K_m` minus one edge found by extending the greedy clique by
/// a vertex that misses exactly one clique member.
fn greedy_near_clique(g: &Graph, clique: &[Vertex]) -> Option<usize> {
    (0..g.n())
        .filter(|v| !clique.contains(v))
        .any(|v| clique.iter().filter(|&&c| !g.has_edge(c, v)).count() == 1)
        .then_some(clique.len() + 1)
}

pub fn sum_lower_bound(g: &Graph) -> Result<Vec<BoundEntry>, BoundsError> {
    let chi = chromatic_index(g)?;
    let mut out = vec![BoundEntry::lower("chromatic index", chi, "sum index >= chromatic index")];
    let t = greedy_triangle_packing(g).len();
    if t > 0 {
        out.push(BoundEntry::lower(
            "disjoint triangles",
            triangles_index(t),
            "t disjoint triangles have sum index min{k : C(k,3) >= t}",
        ));
    }
    let clique = greedy_clique(g);
    let m = clique.len();
    if m >= 2 {
        out.push(BoundEntry::lower("clique", 2 * m - 3, "s(K_m) = 2m - 3"));
    }
    if let Some(m) = greedy_near_clique(g, &clique) {
        out.push(BoundEntry::lower("near clique", 2 * m - 4, "s(K_m - e) = 2m - 4"));
    }
    if g.is_tree() {
        out.push(BoundEntry::lower(
            "hyperdiamond density",
            tree_density_lower_bound(g, IndexKind::Sum).expect("graph is a tree"),
            "trees with sum index k embed in H_k",
        ));
    }
    Ok(out)
}

pub fn diff_lower_bound(g: &Graph, hints: &BoundHints) -> Result<Vec<BoundEntry>, BoundsError> {
    let chi = chromatic_index(g)?;
    let mut out = vec![
        BoundEntry::lower("half chromatic index", chi.div_ceil(2), "difference index >= ceil(chromatic index / 2)"),
        BoundEntry::lower("minimum degree", g.min_degree(), "difference index >= minimum degree"),
    ];
    let m = greedy_clique(g).len();
    if m >= 2 {
        out.push(BoundEntry::lower("clique", m - 1, "d(K_m) = m - 1"));
    }
    if g.is_tree() {
        out.push(BoundEntry::lower(
            "grid density",
            tree_density_lower_bound(g, IndexKind::Diff).expect("graph is a tree"),
            "trees with difference index k embed in Q_k",
        ));
    }
    if let (Some(s), true) = (hints.sum_value, g.is_bipartite()) {
        out.push(BoundEntry::lower("half sum index", s.div_ceil(2), "bipartite graphs have d >= ceil(s / 2)"));
    }
    Ok(out)
}

fn consecutive(g: &Graph) -> VertexLabeling {
    VertexLabeling::from_i64(0..g.n() as i64).unwrap()
}

fn powers_of_two(g: &Graph) -> VertexLabeling {
    VertexLabeling::new((0..g.n()).map(|i| BigInt::one() << i).collect()).unwrap()
}

/// Labels `1..=n` that put the endpoints of up to two missing edges at the
/// extremes, so their sums never occur.
fn non_edge_labeling(g: &Graph) -> Option<VertexLabeling> {
    let n = g.n();
    let mut missing = Vec::new();
    'outer: for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                missing.push((u, v));
                if missing.len() == 2 {
                    break 'outer;
                }
            }
        }
    }
    let (a, b) = *missing.first()?;
    // Order of vertices receiving labels 1, 2, ...; `tail` gets n, n-1, ...
    let mut head = vec![a, b];
    let mut tail = Vec::new();
    if let Some(&(c, d)) = missing.get(1) {
        if a == c {
            head.push(d);
        } else if [a, b].contains(&c) || [a, b].contains(&d) {
            let shared = if [a, b].contains(&c) { c } else { d };
            let other = if shared == c { d } else { c };
            head = vec![shared, a + b - shared, other];
        } else {
            tail = vec![d, c];
        }
    }
    let mut labels = vec![0i64; n];
    let mut rest: Vec<Vertex> = (0..n).filter(|v| !head.contains(v) && !tail.contains(v)).collect();
    let mut order = head;
    order.append(&mut rest);
    order.extend(tail.iter().rev());
    for (i, &v) in order.iter().enumerate() {
        labels[v] = i as i64 + 1;
    }
    Some(VertexLabeling::from_i64(labels).unwrap())
}

/// Turns a labeling of one kind into one of the other kind on a bipartite
/// graph: shift every label positive, then negate one side. Sums become
/// differences exactly and differences become sums up to sign.
pub fn bipartite_transfer(g: &Graph, f: &VertexLabeling) -> Option<VertexLabeling> {
    let side = g.bipartition()?;
    let min = f.values().iter().min().cloned().unwrap_or_default();
    let shift = BigInt::one() - min;
    let values = f
        .values()
        .iter()
        .zip(&side)
        .map(|(x, &b)| {
            let y = x + &shift;
            debug_assert!(y.is_positive());
            if b {
                -y
            } else {
                y
            }
        })
        .collect();
    Some(VertexLabeling::new(values).expect("positive labels stay distinct under negation of one side"))
}

pub fn sum_upper_bound(g: &Graph, hints: &BoundHints) -> Vec<BoundEntry> {
    let k = IndexKind::Sum;
    let mut out = vec![
        BoundEntry::upper(g, k, "consecutive labels", "s(G) <= 2n - 3", consecutive(g)),
        BoundEntry::upper(g, k, "powers of two", "s(G) <= |E|", powers_of_two(g)),
    ];
    if let Some(f) = non_edge_labeling(g) {
        out.push(BoundEntry::upper(g, k, "missing edges", "s(G) <= 2n - 4 unless G is complete", f));
    }
    if let Some(f) = hints.diff_witness.as_ref().and_then(|f| bipartite_transfer(g, f)) {
        out.push(BoundEntry::upper(g, k, "from difference labeling", "bipartite graphs have s <= 2d", f));
    }
    out
}

pub fn diff_upper_bound(g: &Graph, hints: &BoundHints) -> Vec<BoundEntry> {
    let k = IndexKind::Diff;
    let mut out = vec![
        BoundEntry::upper(g, k, "consecutive labels", "d(G) <= n - 1", consecutive(g)),
        BoundEntry::upper(g, k, "powers of two", "d(G) <= |E|", powers_of_two(g)),
    ];
    if let Some(f) = hints.sum_witness.as_ref().and_then(|f| bipartite_transfer(g, f)) {
        out.push(BoundEntry::upper(g, k, "from sum labeling", "bipartite graphs have d <= s", f));
    }
    out
}

pub fn bound_report(g: &Graph, kind: IndexKind, hints: &BoundHints) -> Result<BoundReport, BoundsError> {
    let mut entries = match kind {
        IndexKind::Sum => sum_lower_bound(g)?,
        IndexKind::Diff => diff_lower_bound(g, hints)?,
    };
    entries.extend(match kind {
        IndexKind::Sum => sum_upper_bound(g, hints),
        IndexKind::Diff => diff_upper_bound(g, hints),
    });
    Ok(BoundReport::from_entries(kind, entries))
}
