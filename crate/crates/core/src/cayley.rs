//! The hyperdiamond `H_k` and the infinite grid `Q_k`.
//!
//! `H_k` is the Cayley graph of the group generated by the involutions
//! `ψ_i(x) = e_i - x` on `Z^k`. Every group element is an affine map
//! `x ↦ v + εx` with `ε = ±1`, and it is determined by `v = φ(0)`, whose
//! entries sum to 0 (`ε = +1`) or 1 (`ε = -1`). Trees with sum index at most
//! `k` are exactly the trees that embed in `H_k`; trees with difference index
//! at most `k` are those that embed in `Q_k`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::labeling::{induced_labels, IndexKind, VertexLabeling};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("entries of {0:?} must sum to 0 or 1")]
    NotAnElement(Vec<i64>),
    #[error("input graph is not a tree")]
    NotATree,
    #[error("labeling induces {got} distinct edge labels, more than k = {k}")]
    TooManyLabels { got: usize, k: usize },
    #[error("pair ({0}, {1}) is not an edge of the target graph")]
    NotAnEdge(usize, usize),
    #[error("BFS limited to k <= 5 and r <= 8")]
    BudgetExceeded,
    #[error("embedding failed validation: {0}")]
    Invalid(&'static str),
    #[error(transparent)]
    Labeling(#[from] crate::labeling::LabelingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// The hyperdiamond `H_k`.
    Hyperdiamond,
    /// The infinite grid `Q_k`.
    Grid,
}

impl Target {
    pub fn kind(self) -> IndexKind {
        match self {
            Target::Hyperdiamond => IndexKind::Sum,
            Target::Grid => IndexKind::Diff,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Hyperdiamond => "hd",
            Target::Grid => "qk",
        }
    }
}

/// An element of the hyperdiamond group, stored as its image of the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HDElement {
    v: Vec<i64>,
}

impl HDElement {
    pub fn identity(k: usize) -> Self {
        HDElement { v: vec![0; k] }
    }

    /// The generator `ψ_i`, with `i` zero-based.
    pub fn generator(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        HDElement { v }
    }

    pub fn from_vector(v: Vec<i64>) -> Result<Self, CayleyError> {
        match v.iter().sum::<i64>() {
            0 | 1 => Ok(HDElement { v }),
            _ => Err(CayleyError::NotAnElement(v)),
        }
    }

    pub fn k(&self) -> usize {
        self.v.len()
    }

    pub fn vector(&self) -> &[i64] {
        &self.v
    }

    /// `+1` if the map preserves orientation, `-1` otherwise.
    pub fn parity(&self) -> i64 {
        if self.v.iter().sum::<i64>() == 0 {
            1
        } else {
            -1
        }
    }

    fn same_k(&self, other: usize) -> Result<(), CayleyError> {
        if self.k() == other {
            Ok(())
        } else {
            Err(CayleyError::DimensionMismatch(self.k(), other))
        }
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>, CayleyError> {
        self.same_k(x.len())?;
        let e = self.parity();
        Ok(self.v.iter().zip(x).map(|(a, b)| a + e * b).collect())
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &HDElement) -> Result<Self, CayleyError> {
        Ok(HDElement { v: self.apply(&other.v)? })
    }

    pub fn inverse(&self) -> Self {
        let e = self.parity();
        HDElement { v: self.v.iter().map(|x| -e * x).collect() }
    }

    /// `ψ_i ∘ self` for each generator.
    pub fn neighbors(&self) -> Vec<HDElement> {
        (0..self.k())
            .map(|i| HDElement { v: self.v.iter().enumerate().map(|(j, x)| if i == j { 1 - x } else { -x }).collect() })
            .collect()
    }

    /// Word-metric distance, `‖(self ∘ other⁻¹)(0)‖₁`.
    pub fn distance(&self, other: &HDElement) -> Result<u64, CayleyError> {
        Ok(norm1(&self.compose(&other.inverse())?.v))
    }
}

pub fn norm1(x: &[i64]) -> u64 {
    x.iter().map(|c| c.unsigned_abs()).sum()
}

/// Binomial coefficient extended to `n = -1` by `C(-1, -1) = 1` and
/// `C(-1, m) = 0` for `m >= 0`, with `C(n, m) = 0` whenever `m < 0 <= n`.
pub fn binomial_ext(n: i64, m: i64) -> BigUint {
    if n == -1 && m == -1 {
        return BigUint::one();
    }
    if n < 0 || m < 0 || m > n {
        return BigUint::zero();
    }
    let m = m.min(n - m) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..m {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of elements of `H_k` at distance exactly `r` from the identity.
pub fn hd_sphere_count(k: usize, r: usize) -> BigUint {
    let (k, r) = (k as i64, r as i64);
    let (up, down) = ((r + 1) / 2, r / 2);
    (1..=k).map(|j| binomial_ext(k, j) * binomial_ext(up + j - 1, j - 1) * binomial_ext(down - 1, k - j - 1)).sum()
}

/// Number of points of `Z^k` at 1-norm exactly `r`. The sum covers
/// `r >= 1`; the sphere of radius 0 is the origin.
pub fn grid_sphere_count(k: usize, r: usize) -> BigUint {
    if r == 0 {
        return BigUint::one();
    }
    let (k, r) = (k as i64, r as i64);
    (1..=k).map(|j| binomial_ext(k, j) * binomial_ext(r - 1, j - 1) * (BigUint::one() << j as usize)).sum()
}

pub fn sphere_count(target: Target, k: usize, r: usize) -> BigUint {
    match target {
        Target::Hyperdiamond => hd_sphere_count(k, r),
        Target::Grid => grid_sphere_count(k, r),
    }
}

fn target_neighbors(target: Target, x: &[i64]) -> Vec<Vec<i64>> {
    match target {
        Target::Hyperdiamond => HDElement { v: x.to_vec() }.neighbors().into_iter().map(|h| h.v).collect(),
        Target::Grid => {
            let mut out = Vec::with_capacity(2 * x.len());
            for i in 0..x.len() {
                for d in [1, -1] {
                    let mut y = x.to_vec();
                    y[i] += d;
                    out.push(y);
                }
            }
            out
        }
    }
}

/// Breadth-first layers `0..=r` around the identity (or origin), each as a
/// sorted list of vectors.
pub fn bfs_layers(target: Target, k: usize, r: usize) -> Result<Vec<Vec<Vec<i64>>>, CayleyError> {
    if k > 5 || r > 8 {
        return Err(CayleyError::BudgetExceeded);
    }
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let origin = vec![0; k];
    seen.insert(origin.clone());
    let mut layers = vec![vec![origin]];
    for _ in 0..r {
        let mut next = BTreeSet::new();
        for x in layers.last().unwrap() {
            for y in target_neighbors(target, x) {
                if !seen.contains(&y) {
                    next.insert(y);
                }
            }
        }
        seen.extend(next.iter().cloned());
        layers.push(next.into_iter().collect());
    }
    Ok(layers)
}

/// Size of the BFS layer at distance `r`; the independent check on
/// [`hd_sphere_count`] and [`grid_sphere_count`].
pub fn sphere_bfs(target: Target, k: usize, r: usize) -> Result<usize, CayleyError> {
    Ok(bfs_layers(target, k, r)?[r].len())
}

/// A tree drawn inside `H_k` or `Q_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub target: Target,
    pub k: usize,
    pub root: Vertex,
    /// Image of each tree vertex: `φ(0)` for `H_k`, the point for `Q_k`.
    pub vertex_map: Vec<Vec<i64>>,
    /// The labeling the embedding was built from, normalised to 0 at the root.
    pub source_labeling: VertexLabeling,
}

impl EmbeddingCertificate {
    /// Checks that the map is injective and sends tree edges to target edges.
    pub fn validate(&self, tree: &Graph) -> Result<(), CayleyError> {
        if self.vertex_map.len() != tree.n() {
            return Err(CayleyError::Invalid("vertex map has the wrong length"));
        }
        let distinct: BTreeSet<&Vec<i64>> = self.vertex_map.iter().collect();
        if distinct.len() != tree.n() {
            return Err(CayleyError::Invalid("vertex map is not injective"));
        }
        for x in &self.vertex_map {
            if x.len() != self.k {
                return Err(CayleyError::DimensionMismatch(x.len(), self.k));
            }
            if self.target == Target::Hyperdiamond {
                HDElement::from_vector(x.clone())?;
            }
        }
        for &(u, v) in tree.edges() {
            if !is_target_edge(self.target, &self.vertex_map[u], &self.vertex_map[v]) {
                return Err(CayleyError::NotAnEdge(u, v));
            }
        }
        Ok(())
    }
}

fn is_target_edge(target: Target, a: &[i64], b: &[i64]) -> bool {
    match target {
        Target::Hyperdiamond => {
            let (Ok(x), Ok(y)) = (HDElement::from_vector(a.to_vec()), HDElement::from_vector(b.to_vec())) else {
                return false;
            };
            matches!(x.distance(&y), Ok(1))
        }
        Target::Grid => a.len() == b.len() && norm1(&sub(a, b)) == 1,
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Embeds a tree into `H_k` (from a sum labeling) or `Q_k` (from a
/// difference labeling) using at most `k` distinct edge labels, rooted at
/// vertex 0.
///
/// For `H_k` the `i`-th smallest edge sum selects generator `ψ_i`, and a
/// vertex maps to the product of generators along its root path, last edge
/// leftmost. For `Q_k` the `i`-th smallest difference `α_i` maps to `e_i`, and
/// a vertex maps to the sum of `±e_i` along its root path, signed by the
/// direction of the label change.
pub fn embed_tree(
    tree: &Graph,
    labeling: &VertexLabeling,
    target: Target,
    k: usize,
) -> Result<EmbeddingCertificate, CayleyError> {
    if !tree.is_tree() {
        return Err(CayleyError::NotATree);
    }
    let root = 0;
    let f = labeling.normalize_at(root);
    let summary = induced_labels(tree, &f, target.kind())?;
    if summary.count > k {
        return Err(CayleyError::TooManyLabels { got: summary.count, k });
    }
    let index: BTreeMap<&BigInt, usize> = summary.labels.iter().enumerate().map(|(i, l)| (l, i)).collect();

    let mut map: Vec<Option<Vec<i64>>> = vec![None; tree.n()];
    map[root] = Some(vec![0; k]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let here = map[u].clone().unwrap();
        for &w in tree.neighbors(u) {
            if map[w].is_some() {
                continue;
            }
            let label = target.kind().edge_label(f.get(u), f.get(w));
            let i = index[&label];
            let image = match target {
                Target::Hyperdiamond => HDElement::generator(k, i).compose(&HDElement { v: here.clone() })?.v,
                Target::Grid => {
                    let mut p = here.clone();
                    p[i] += if f.get(w) > f.get(u) { 1 } else { -1 };
                    p
                }
            };
            map[w] = Some(image);
            queue.push_back(w);
        }
    }
    let cert = EmbeddingCertificate {
        target,
        k,
        root,
        vertex_map: map.into_iter().map(Option::unwrap).collect(),
        source_labeling: f,
    };
    cert.validate(tree)?;
    Ok(cert)
}

/// Labels points of `H_k` or `Q_k` by `x ↦ Σ (2r+1)^(i-1) x_i`, where `r` is
/// the largest 1-norm among `vertices`. On any subgraph given by `edges`
/// this induces at most `k` distinct sums (`H_k`) or differences (`Q_k`).
pub fn labeling_from_subgraph(
    target: Target,
    k: usize,
    vertices: &[Vec<i64>],
    edges: &[(usize, usize)],
) -> Result<VertexLabeling, CayleyError> {
    for x in vertices {
        if x.len() != k {
            return Err(CayleyError::DimensionMismatch(x.len(), k));
        }
        if target == Target::Hyperdiamond {
            HDElement::from_vector(x.clone())?;
        }
    }
    for &(a, b) in edges {
        if a >= vertices.len() || b >= vertices.len() || !is_target_edge(target, &vertices[a], &vertices[b]) {
            return Err(CayleyError::NotAnEdge(a, b));
        }
    }
    let r = vertices.iter().map(|x| norm1(x)).max().unwrap_or(0);
    let base = BigInt::from(2 * r + 1);
    let values = vertices
        .iter()
        .map(|x| {
            let mut acc = BigInt::zero();
            for &c in x.iter().rev() {
                acc = acc * &base + c;
            }
            acc
        })
        .collect();
    Ok(VertexLabeling::new(values)?)
}

/// Smallest `k` such that every sphere of the tree fits in the sphere of
/// the same radius in `H_k` (Sum) or `Q_k` (Diff). A lower bound on the
/// corresponding index, because an embedding maps the tree's spheres around
/// `v` into the target's spheres around the image of `v`.
pub fn tree_density_lower_bound(tree: &Graph, kind: IndexKind) -> Result<usize, CayleyError> {
    if !tree.is_tree() {
        return Err(CayleyError::NotATree);
    }
    let target = match kind {
        IndexKind::Sum => Target::Hyperdiamond,
        IndexKind::Diff => Target::Grid,
    };
    let mut spheres: Vec<usize> = Vec::new();
    for v in 0..tree.n() {
        let mut sizes: Vec<usize> = Vec::new();
        for d in tree.distances_from(v).into_iter().flatten() {
            if d >= sizes.len() {
                sizes.resize(d + 1, 0);
            }
            sizes[d] += 1;
        }
        if sizes.len() > spheres.len() {
            spheres.resize(sizes.len(), 0);
        }
        for (r, &s) in sizes.iter().enumerate() {
            spheres[r] = spheres[r].max(s);
        }
    }
    let fits =
        |k: usize| spheres.iter().enumerate().skip(1).all(|(r, &s)| BigUint::from(s) <= sphere_count(target, k, r));
    Ok((1..).find(|&k| fits(k)).unwrap())
}

/// Smallest height `h >= 1` with `2^h` larger than the radius-`h` sphere of
/// `H_k`. The perfect binary tree of height `h` then has sum index above `k`.
pub fn binary_tree_threshold(k: usize) -> usize {
    (1..).find(|&h| BigUint::one() << h > hd_sphere_count(k, h)).unwrap()
}
