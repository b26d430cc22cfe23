//! Explicit labelings attaining the known sum and difference indices of
//! graph families.
//!
//! Every builder recomputes the induced label count of its labeling and
//! panics if it differs from the claimed value, so a returned result is
//! always a valid certificate for the upper bound `claimed`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::bounds::triangles_index;
use crate::family::FamilySpec;
use crate::graph::{Graph, GraphError, Vertex};
use crate::labeling::{label_count, IndexKind, VertexLabeling};

/// How `claimed` relates to the index of the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// The index equals `claimed`.
    Exact,
    /// The index is at most `claimed`.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub graph: Graph,
    /// `None` for graphs that are not one of the named families.
    pub family: Option<FamilySpec>,
    pub labeling: VertexLabeling,
    pub kind: IndexKind,
    pub claimed: usize,
    pub claim: Claim,
    /// The statement the labeling certifies, e.g. `s(C_n) = 3`.
    pub statement: &'static str,
    /// Set when a complete bipartite labeling was built with the two sides
    /// exchanged.
    pub sides_swapped: bool,
}

impl ConstructionResult {
    fn new(
        graph: Graph,
        family: Option<FamilySpec>,
        labels: Vec<BigInt>,
        kind: IndexKind,
        claimed: usize,
        claim: Claim,
        statement: &'static str,
    ) -> Self {
        let labeling = VertexLabeling::new(labels).unwrap_or_else(|e| panic!("{statement}: {e}"));
        let count = label_count(&graph, &labeling, kind).unwrap_or_else(|e| panic!("{statement}: {e}"));
        assert_eq!(count, claimed, "{statement}: labeling induces {count} labels");
        ConstructionResult { graph, family, labeling, kind, claimed, claim, statement, sides_swapped: false }
    }

    fn from_family(
        spec: FamilySpec,
        labels: Vec<BigInt>,
        kind: IndexKind,
        claimed: usize,
        claim: Claim,
        statement: &'static str,
    ) -> Result<Self, GraphError> {
        let g = spec.generate()?;
        Ok(Self::new(g, Some(spec), labels, kind, claimed, claim, statement))
    }
}

fn big(values: impl IntoIterator<Item = i64>) -> Vec<BigInt> {
    values.into_iter().map(BigInt::from).collect()
}

fn sign(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

fn invalid(msg: &'static str) -> GraphError {
    GraphError::InvalidFamily(msg)
}

/// `f(v_i) = (-1)^i i` on `C_n`; three sums.
pub fn cycle_sum(n: usize) -> Result<ConstructionResult, GraphError> {
    let labels = big((0..n as i64).map(|i| sign(i) * i));
    ConstructionResult::from_family(FamilySpec::Cycle(n), labels, IndexKind::Sum, 3, Claim::Exact, "s(C_n) = 3")
}

/// `f(v_i) = i` on `C_n`; two differences.
pub fn cycle_diff(n: usize) -> Result<ConstructionResult, GraphError> {
    let labels = big(0..n as i64);
    ConstructionResult::from_family(FamilySpec::Cycle(n), labels, IndexKind::Diff, 2, Claim::Exact, "d(C_n) = 2")
}

/// `f(v_i) = i` on `P_n`; one difference.
pub fn path_diff(n: usize) -> Result<ConstructionResult, GraphError> {
    if n < 2 {
        return Err(invalid("path labeling needs n >= 2"));
    }
    let labels = big(0..n as i64);
    ConstructionResult::from_family(FamilySpec::Path(n), labels, IndexKind::Diff, 1, Claim::Exact, "d(P_n) = 1")
}

/// Parameters of the spider labelings: `ξ = Δ mod 2` and `α = (Δ + ξ) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpiderParams {
    pub delta: i64,
    pub xi: i64,
    pub alpha: i64,
}

impl SpiderParams {
    pub fn new(delta: usize) -> Self {
        let delta = delta as i64;
        let xi = delta % 2;
        SpiderParams { delta, xi, alpha: (delta + xi) / 2 }
    }

    /// `|f(v_{i,j})| = (j-1)α + ⌈(i+ξ)/2⌉` for leg `i` and depth `j`, both
    /// counted from 1.
    pub fn magnitude(&self, i: i64, j: i64) -> i64 {
        (j - 1) * self.alpha + ceil_half(i + self.xi)
    }
}

fn spider_labels(legs: &[usize], sign_of: impl Fn(i64, i64) -> i64) -> Vec<BigInt> {
    let p = SpiderParams::new(legs.len());
    let mut out = vec![0];
    for (leg, &len) in legs.iter().enumerate() {
        let i = leg as i64 + 1;
        for j in 1..=len as i64 {
            out.push(sign_of(i, j) * p.magnitude(i, j));
        }
    }
    big(out)
}

/// Alternating spider labeling with `Δ` sums.
pub fn spider_sum(legs: &[usize]) -> Result<ConstructionResult, GraphError> {
    let spec = FamilySpec::Spider(legs.to_vec());
    spec.validate()?;
    let d = legs.len() as i64;
    let labels = spider_labels(legs, |i, j| sign(d - i + j - 1));
    ConstructionResult::from_family(spec, labels, IndexKind::Sum, legs.len(), Claim::Exact, "s(S) = Δ")
}

/// Spider labeling with `⌈Δ/2⌉` differences; each leg keeps one sign.
pub fn spider_diff(legs: &[usize]) -> Result<ConstructionResult, GraphError> {
    let spec = FamilySpec::Spider(legs.to_vec());
    spec.validate()?;
    let d = legs.len() as i64;
    let labels = spider_labels(legs, |i, _| sign(d - i));
    ConstructionResult::from_family(spec, labels, IndexKind::Diff, ceil_half(d) as usize, Claim::Exact, "d(S) = ⌈Δ/2⌉")
}

/// Hub 0 with a rim labeling using `max{3, ⌈Δ/2⌉}` differences.
///
/// For `Δ ≥ 5` the rim is `1, 2, …` up to `c - 2` where `c = ⌈Δ/2⌉`, then
/// `c, c - 1`, then `-1, -2, …`, closing with `-⌊Δ/2⌋` and `1 - ⌊Δ/2⌋`.
/// For odd `Δ` the last entry falls past the rim and is dropped.
pub fn wheel_diff(delta: usize) -> Result<ConstructionResult, GraphError> {
    if delta < 3 {
        return Err(invalid("wheel needs at least 3 spokes"));
    }
    let d = delta as i64;
    let rim: Vec<i64> = match delta {
        3 => vec![1, 2, 3],
        4 => vec![1, 2, -1, -2],
        _ => {
            let c = ceil_half(d);
            let h = d / 2;
            (1..=d)
                .map(|i| match i {
                    _ if i <= c - 2 => i,
                    _ if i == c - 1 => c,
                    _ if i == c => c - 1,
                    _ if i <= 2 * c - 2 => c - i,
                    _ if i == 2 * c - 1 => -h,
                    _ => 1 - h,
                })
                .collect()
        }
    };
    let claimed = ceil_half(d).max(3) as usize;
    let mut labels = vec![0];
    labels.extend(rim);
    ConstructionResult::from_family(
        FamilySpec::Wheel(delta),
        big(labels),
        IndexKind::Diff,
        claimed,
        Claim::Exact,
        "d(W_Δ) = max{3, ⌈Δ/2⌉}",
    )
}

fn ladder_labels(n: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n as i64 {
        let (a, b) = if i % 2 == 0 { (-i, i + 1) } else { (i + 1, -i) };
        out.push(a);
        out.push(b);
    }
    out
}

/// Ladder `L_{n×2}` with sums `{0, 1, 2}`.
pub fn ladder_sum(n: usize) -> Result<ConstructionResult, GraphError> {
    ConstructionResult::from_family(
        FamilySpec::RectGrid(vec![n, 2]),
        big(ladder_labels(n)),
        IndexKind::Sum,
        3,
        Claim::Exact,
        "s(L_{n×2}) = 3",
    )
}

/// Row-major coordinates of each grid vertex read as a number, with the
/// coordinate sum. The base is `m` for `n × m` grids and `n_1` otherwise.
fn grid_positions(dims: &[usize]) -> Vec<(i64, i64)> {
    let base = if dims.len() == 2 { dims[1] } else { dims[0] } as i64;
    let total: usize = dims.iter().product();
    (0..total)
        .map(|mut v| {
            let mut value = 0;
            let mut scale = 1;
            let mut parity = 0;
            for &d in dims.iter().rev() {
                let c = (v % d) as i64;
                v /= d;
                value += c * scale;
                parity += c;
                scale *= base;
            }
            (value, parity)
        })
        .collect()
}

/// Sum labeling of a rectangular grid. Ladders use [`ladder_sum`]; other
/// grids get the coordinates read in a fixed base with alternating sign,
/// which has `2d` sums.
pub fn grid_sum(dims: &[usize]) -> Result<ConstructionResult, GraphError> {
    let spec = FamilySpec::RectGrid(dims.to_vec());
    spec.validate()?;
    if dims.len() == 2 && dims[1] == 2 {
        return ladder_sum(dims[0]);
    }
    let labels = big(grid_positions(dims).into_iter().map(|(v, p)| sign(p) * v));
    // The index is 2d only when every dimension allows degree 2d.
    let claim = if dims.iter().all(|&d| d >= 3) { Claim::Exact } else { Claim::AtMost };
    ConstructionResult::from_family(spec, labels, IndexKind::Sum, 2 * dims.len(), claim, "s(G) = 2d")
}

/// The coordinates read in a fixed base; one difference per dimension.
pub fn grid_diff(dims: &[usize]) -> Result<ConstructionResult, GraphError> {
    let spec = FamilySpec::RectGrid(dims.to_vec());
    spec.validate()?;
    let labels = big(grid_positions(dims).into_iter().map(|(v, _)| v));
    let claim = if dims.len() == 2 { Claim::Exact } else { Claim::AtMost };
    ConstructionResult::from_family(spec, labels, IndexKind::Diff, dims.len(), claim, "d(L_{n×m}) = 2")
}

/// The ladder labelings reused on the prism `Π_n`: at most 5 sums and at
/// most 3 differences.
pub fn prism_labelings(n: usize) -> Result<(ConstructionResult, ConstructionResult), GraphError> {
    let spec = FamilySpec::Prism(n);
    let g = spec.generate()?;
    let sum_labels = VertexLabeling::from_i64(ladder_labels(n)).expect("ladder labels are distinct");
    let diff_labels = VertexLabeling::from_i64(0..2 * n as i64).expect("distinct");
    let sums = label_count(&g, &sum_labels, IndexKind::Sum).expect("sized to graph");
    let diffs = label_count(&g, &diff_labels, IndexKind::Diff).expect("sized to graph");
    assert!(sums <= 5, "prism sum labeling uses {sums} sums");
    assert!(diffs <= 3, "prism difference labeling uses {diffs} differences");
    let sum = ConstructionResult::new(
        g.clone(),
        Some(spec.clone()),
        sum_labels.values().to_vec(),
        IndexKind::Sum,
        sums,
        Claim::AtMost,
        "s(Π_n) ≤ 5",
    );
    let diff = ConstructionResult::new(
        g,
        Some(spec),
        diff_labels.values().to_vec(),
        IndexKind::Diff,
        diffs,
        Claim::AtMost,
        "d(Π_n) ≤ 3",
    );
    Ok((sum, diff))
}

/// `f(v_i) = i` on `K_n`; differences `1..n-1`.
pub fn complete_diff(n: usize) -> Result<ConstructionResult, GraphError> {
    if n < 2 {
        return Err(invalid("complete graph labeling needs n >= 2"));
    }
    let labels = big(0..n as i64);
    ConstructionResult::from_family(
        FamilySpec::Complete(n),
        labels,
        IndexKind::Diff,
        n - 1,
        Claim::Exact,
        "d(K_n) = n - 1",
    )
}

/// Odd labels on one side and even labels on the other, so that every
/// difference is odd and at most `n + m - 1`.
///
/// The labeling needs `n` even or `m` odd; otherwise the sides are swapped
/// and `sides_swapped` is set.
pub fn complete_bipartite_diff(n: usize, m: usize) -> Result<ConstructionResult, GraphError> {
    let spec = FamilySpec::CompleteBipartite(n, m);
    spec.validate()?;
    let swapped = n % 2 == 1 && m.is_multiple_of(2);
    let (odd_side, even_side) = if swapped { (m, n) } else { (n, m) };
    let odd: Vec<i64> = (1..=odd_side as i64).map(|i| -2 * ceil_half(odd_side as i64) + 2 * i - 1).collect();
    let even: Vec<i64> = (1..=even_side as i64).map(|j| -2 * ceil_half(even_side as i64) + 2 * j).collect();
    let labels = if swapped { [even, odd].concat() } else { [odd, even].concat() };
    let claimed = ceil_half((n + m - 1) as i64) as usize;
    let mut r = ConstructionResult::from_family(
        spec,
        big(labels),
        IndexKind::Diff,
        claimed,
        Claim::Exact,
        "d(K_{n,m}) = ⌈(n+m-1)/2⌉",
    )?;
    r.sides_swapped = swapped;
    Ok(r)
}

/// Spine vertex `i` (from 1) gets `iΔ`; its leaves sit just below and just
/// above it so that leaf differences are `1..⌈(Δ-2)/2⌉` and spine
/// differences are `Δ`.
///
/// The labeling wants leafless spine ends, so a leaf at either end is first
/// moved onto the spine.
pub fn caterpillar_diff(leaves: &[usize]) -> Result<ConstructionResult, GraphError> {
    let spec = FamilySpec::Caterpillar(leaves.to_vec());
    let g = spec.generate()?;
    let len = leaves.len();
    let mut first_leaf = Vec::with_capacity(len);
    let mut next = len;
    for &c in leaves {
        first_leaf.push(next);
        next += c;
    }
    let mut spine: Vec<Vertex> = Vec::with_capacity(len + 2);
    if leaves[0] > 0 {
        spine.push(first_leaf[0]);
    }
    spine.extend(0..len);
    let last = len - 1;
    let remaining_at_end = leaves[last] - usize::from(len == 1 && leaves[0] > 0);
    if remaining_at_end > 0 {
        spine.push(first_leaf[last] + leaves[last] - 1);
    }

    let delta = g.max_degree() as i64;
    let mut labels = vec![0i64; g.n()];
    let mut on_spine = vec![false; g.n()];
    for &v in &spine {
        on_spine[v] = true;
    }
    for (p, &v) in spine.iter().enumerate() {
        let i = p as i64 + 1;
        labels[v] = i * delta;
        let deg = g.degree(v) as i64;
        let hangers = g.neighbors(v).iter().filter(|&&w| !on_spine[w]);
        for (j, &u) in (1..).zip(hangers) {
            labels[u] = if j <= (deg - 2) / 2 { i * delta + j - deg / 2 } else { i * delta + j - (deg - 2) / 2 };
        }
    }
    let claimed = match delta {
        0 => 0,
        1 | 2 => 1,
        _ => ceil_half(delta) as usize,
    };
    Ok(ConstructionResult::new(g, Some(spec), big(labels), IndexKind::Diff, claimed, Claim::Exact, "d(G) = ⌈Δ/2⌉"))
}

/// The first `t` three-element subsets of `0..k` in colex order.
pub fn colex_triples(t: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(t);
    let mut c = 2;
    'outer: loop {
        for b in 1..c {
            for a in 0..b {
                if out.len() == t {
                    break 'outer;
                }
                out.push([a, b, c]);
            }
        }
        c += 1;
    }
    out
}

/// Triangle `i` has edge sums `4^a, 4^b, 4^c` for the `i`-th triple in
/// colex order, with vertex labels solved from those sums.
pub fn disjoint_triangles_sum(t: usize) -> Result<ConstructionResult, GraphError> {
    let spec = FamilySpec::DisjointTriangles(t);
    spec.validate()?;
    let four = BigInt::from(4);
    let mut labels = Vec::with_capacity(3 * t);
    for [a, b, c] in colex_triples(t) {
        let (x, y, z) = (four.pow(a as u32 + 1), four.pow(b as u32 + 1), four.pow(c as u32 + 1));
        labels.push((&x - &y + &z) / 2);
        labels.push((&x + &y - &z) / 2);
        labels.push((&y + &z - &x) / 2);
    }
    ConstructionResult::from_family(
        spec,
        labels,
        IndexKind::Sum,
        triangles_index(t),
        Claim::Exact,
        "s(tK_3) = min{k : C(k,3) ≥ t}",
    )
}

/// A connected graph on `n` vertices with sum index `k`, for
/// `2 ≤ k ≤ 2n - 3`.
///
/// For `k ≥ 3` this is a clique on `ℓ` vertices (minus one edge when `k` is
/// even) with a path hanging off its first vertex; `k = 2` gives `P_n`.
pub fn prescribed_sum_index_graph(n: usize, k: usize) -> Result<ConstructionResult, GraphError> {
    if n < 3 || k < 2 || k > 2 * n - 3 {
        return Err(invalid("need n >= 3 and 2 <= k <= 2n - 3"));
    }
    if k == 2 {
        let labels = big((0..n as i64).map(|i| sign(i) * i));
        return ConstructionResult::from_family(
            FamilySpec::Path(n),
            labels,
            IndexKind::Sum,
            2,
            Claim::Exact,
            "s(G) = k",
        );
    }
    let l = if k % 2 == 1 { (k + 3) / 2 } else { (k + 4) / 2 };
    let mut edges = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            if k.is_multiple_of(2) && i == l - 2 && j == l - 1 {
                continue;
            }
            edges.push((i, j));
        }
    }
    if l < n {
        edges.push((0, l));
        edges.extend((l..n - 1).map(|i| (i, i + 1)));
    }
    let g = Graph::new(n, edges)?;
    let l = l as i64;
    let labels = big((1..=n as i64).map(|i| {
        let t = i - l;
        match t {
            _ if t <= 0 => i,
            _ if t % 2 == 1 => l + ceil_half(t),
            _ => 1 - t / 2,
        }
    }));
    Ok(ConstructionResult::new(g, None, labels, IndexKind::Sum, k, Claim::Exact, "s(G) = k"))
}

/// Numeric value of a label as `i64`, for tests and display.
pub fn small_labels(r: &ConstructionResult) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    r.labeling.values().iter().map(ToPrimitive::to_i64).collect()
}
