//! Injective vertex labelings and the edge labels they induce.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexKind {
    /// Edge label `f(u) + f(v)`.
    Sum,
    /// Edge label `|f(u) - f(v)|`.
    Diff,
}

impl IndexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IndexKind::Sum => "sum",
            IndexKind::Diff => "diff",
        }
    }

    pub fn edge_label(self, a: &BigInt, b: &BigInt) -> BigInt {
        match self {
            IndexKind::Sum => a + b,
            IndexKind::Diff => (a - b).abs(),
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for IndexKind {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(IndexKind::Sum),
            "diff" => Ok(IndexKind::Diff),
            _ => Err("kind must be `sum` or `diff`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("vertices {0} and {1} share the label {2}")]
    NotInjective(Vertex, Vertex, BigInt),
    #[error("labeling has {got} values but the graph has {expected} vertices")]
    WrongLength { expected: usize, got: usize },
}

/// An injective map from vertices `0..n` to integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexLabeling {
    values: Vec<BigInt>,
}

impl VertexLabeling {
    pub fn new(values: Vec<BigInt>) -> Result<Self, LabelingError> {
        let mut seen: BTreeMap<&BigInt, Vertex> = BTreeMap::new();
        for (v, x) in values.iter().enumerate() {
            if let Some(&u) = seen.get(x) {
                return Err(LabelingError::NotInjective(u, v, x.clone()));
            }
            seen.insert(x, v);
        }
        Ok(VertexLabeling { values })
    }

    pub fn from_i64<I: IntoIterator<Item = i64>>(values: I) -> Result<Self, LabelingError> {
        Self::new(values.into_iter().map(BigInt::from).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: Vertex) -> &BigInt {
        &self.values[v]
    }

    /// Adds `c` to every label. Edge-label counts of both kinds are unchanged.
    pub fn shift(&self, c: &BigInt) -> Self {
        VertexLabeling { values: self.values.iter().map(|x| x + c).collect() }
    }

    /// Shifts so that `v` gets label 0.
    pub fn normalize_at(&self, v: Vertex) -> Self {
        self.shift(&-&self.values[v])
    }

    pub fn negate(&self) -> Self {
        VertexLabeling { values: self.values.iter().map(|x| -x).collect() }
    }

    pub fn check_for(&self, g: &Graph) -> Result<(), LabelingError> {
        if self.values.len() != g.n() {
            return Err(LabelingError::WrongLength { expected: g.n(), got: self.values.len() });
        }
        Ok(())
    }
}

/// The edge labels a labeling induces on a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabelSummary {
    pub kind: IndexKind,
    pub labels: BTreeSet<BigInt>,
    pub count: usize,
    /// Label of each edge, indexed like [`Graph::edges`].
    pub per_edge: Vec<BigInt>,
}

pub fn induced_labels(g: &Graph, f: &VertexLabeling, kind: IndexKind) -> Result<EdgeLabelSummary, LabelingError> {
    f.check_for(g)?;
    let per_edge: Vec<BigInt> = g.edges().iter().map(|&(u, v)| kind.edge_label(f.get(u), f.get(v))).collect();
    let labels: BTreeSet<BigInt> = per_edge.iter().cloned().collect();
    Ok(EdgeLabelSummary { kind, count: labels.len(), labels, per_edge })
}

/// Number of distinct induced edge labels.
pub fn label_count(g: &Graph, f: &VertexLabeling, kind: IndexKind) -> Result<usize, LabelingError> {
    induced_labels(g, f, kind).map(|s| s.count)
}

/// Edges grouped by their induced label.
pub fn label_classes(summary: &EdgeLabelSummary) -> BTreeMap<&BigInt, Vec<usize>> {
    let mut classes: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
    for (i, l) in summary.per_edge.iter().enumerate() {
        classes.entry(l).or_default().push(i);
    }
    classes
}

/// Whether the sum classes of `f` form a proper edge colouring. Holds for
/// every injective `f`: two edges `uv`, `uw` with equal sums force
/// `f(v) = f(w)`.
pub fn is_proper_edge_coloring_induced(g: &Graph, f: &VertexLabeling) -> bool {
    let Ok(summary) = induced_labels(g, f, IndexKind::Sum) else {
        return false;
    };
    label_classes(&summary).values().all(|class| max_class_degree(g, class) <= 1)
}

/// Whether every difference class is a disjoint union of paths.
pub fn diff_classes_are_linear_forests(g: &Graph, f: &VertexLabeling) -> bool {
    let Ok(summary) = induced_labels(g, f, IndexKind::Diff) else {
        return false;
    };
    label_classes(&summary)
        .values()
        .all(|class| max_class_degree(g, class) <= 2 && is_forest(g.n(), class.iter().map(|&i| g.edges()[i])))
}

fn max_class_degree(g: &Graph, class: &[usize]) -> usize {
    let mut deg = vec![0usize; g.n()];
    for &i in class {
        let (u, v) = g.edges()[i];
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.into_iter().max().unwrap_or(0)
}

fn is_forest<I: Iterator<Item = (Vertex, Vertex)>>(n: usize, edges: I) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn labels(xs: &[i64]) -> BTreeSet<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pentagon_counts() {
        let g = FamilySpec::PentagonCounterexample.generate().unwrap();
        let f = VertexLabeling::from_i64([1, 5, 2, 3, 4]).unwrap();
        let s = induced_labels(&g, &f, IndexKind::Sum).unwrap();
        assert_eq!(s.labels, labels(&[5, 6, 7, 8]));
        assert_eq!(s.count, 4);

        let h = VertexLabeling::from_i64([1, 2, 4, 5, 3]).unwrap();
        let d = induced_labels(&g, &h, IndexKind::Diff).unwrap();
        assert_eq!(d.labels, labels(&[1, 2, 3]));
    }

    #[test]
    fn single_edge() {
        let g = FamilySpec::Path(2).generate().unwrap();
        let f = VertexLabeling::from_i64([0, 7]).unwrap();
        let s = induced_labels(&g, &f, IndexKind::Sum).unwrap();
        assert_eq!((s.labels, s.count), (labels(&[7]), 1));
    }

    #[test]
    fn rejects_collisions_and_wrong_length() {
        assert_eq!(VertexLabeling::from_i64([3, 1, 3]), Err(LabelingError::NotInjective(0, 2, BigInt::from(3))));
        let g = FamilySpec::Path(3).generate().unwrap();
        let f = VertexLabeling::from_i64([0, 1]).unwrap();
        assert!(matches!(
            induced_labels(&g, &f, IndexKind::Sum),
            Err(LabelingError::WrongLength { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn shift_and_normalize() {
        let f = VertexLabeling::from_i64([0, 1, 2]).unwrap();
        assert_eq!(f.shift(&BigInt::from(5)), VertexLabeling::from_i64([5, 6, 7]).unwrap());
        let f = VertexLabeling::from_i64([3, 4, 5]).unwrap();
        assert_eq!(f.normalize_at(0), VertexLabeling::from_i64([0, 1, 2]).unwrap());
    }

    #[test]
    fn diff_class_on_triangle_is_a_path() {
        let g = FamilySpec::Cycle(3).generate().unwrap();
        let f = VertexLabeling::from_i64([0, 1, 2]).unwrap();
        let s = induced_labels(&g, &f, IndexKind::Diff).unwrap();
        let classes = label_classes(&s);
        let ones: Vec<_> = classes[&BigInt::from(1)].iter().map(|&i| g.edges()[i]).collect();
        assert_eq!(ones, vec![(0, 1), (1, 2)]);
        assert!(diff_classes_are_linear_forests(&g, &f));
        assert!(is_proper_edge_coloring_induced(&g, &f));
    }
}
