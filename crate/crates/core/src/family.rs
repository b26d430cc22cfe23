//! Parametrised graph families and named example graphs.
//!
//! Vertex numbering per family is fixed; the labelings in
//! [`crate::constructions`] index into it.
//!
//! | family | numbering |
//! |---|---|
//! | `Cycle`, `Path`, `Complete` | `0..n` in order |
//! | `CompleteBipartite(n, m)` | side `u` is `0..n`, side `v` is `n..n+m` |
//! | `Wheel(Δ)` | hub `0`, rim `1..=Δ` in cyclic order |
//! | `Spider` | center `0`, then each leg outward, legs in input order |
//! | `Caterpillar` | spine `0..L`, then leaves grouped by spine vertex |
//! | `RectGrid(d_1..d_k)` | row-major, the last coordinate varies fastest |
//! | `TriangularGrid(n)` | `(i, j)` with `0 ≤ j ≤ i ≤ n` at `i(i+1)/2 + j` |
//! | `Prism(n)` | `v_{i,j}` at `2i + j`, `j ∈ {0, 1}` |
//! | `DisjointTriangles(n)` | triangle `i` is `3i, 3i+1, 3i+2` |
//! | `PerfectBinaryTree(h)` | heap order, children of `v` are `2v+1`, `2v+2` |

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::{Edge, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Wheel(usize),
    /// Leg lengths, one per leg.
    Spider(Vec<usize>),
    /// Leaf count of each spine vertex, in spine order.
    Caterpillar(Vec<usize>),
    RectGrid(Vec<usize>),
    TriangularGrid(usize),
    Prism(usize),
    DisjointTriangles(usize),
    PerfectBinaryTree(usize),
    /// Five-cycle with two chords whose difference index exceeds half its
    /// sum index.
    PentagonCounterexample,
    /// Tree on 17 vertices with sum index 4 that does not embed in `Q_2`.
    TreeCounterexample,
    /// Tree on 11 vertices used to separate the sum index from the
    /// exclusive sum number.
    EslGapTree,
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        use FamilySpec::*;
        let bad = |ok: bool, msg| if ok { Ok(()) } else { Err(GraphError::InvalidFamily(msg)) };
        match self {
            Cycle(n) => bad(*n >= 3, "cycle needs n >= 3"),
            Path(n) => bad(*n >= 1, "path needs n >= 1"),
            Complete(n) => bad(*n >= 1, "complete graph needs n >= 1"),
            CompleteBipartite(n, m) => bad(*n >= 1 && *m >= 1, "complete bipartite needs n, m >= 1"),
            Wheel(d) => bad(*d >= 3, "wheel needs at least 3 spokes"),
            Spider(legs) => bad(
                legs.len() >= 3 && legs.iter().all(|&l| l >= 1),
                "spider needs at least 3 legs, each of length >= 1",
            ),
            Caterpillar(leaves) => bad(!leaves.is_empty(), "caterpillar needs a nonempty spine"),
            RectGrid(dims) => bad(
                !dims.is_empty() && dims.iter().all(|&d| d >= 2) && dims.windows(2).all(|w| w[0] >= w[1]),
                "grid dimensions must be non-increasing and each >= 2",
            ),
            TriangularGrid(n) => bad(*n >= 1, "triangular grid needs n >= 1"),
            Prism(n) => bad(*n >= 3, "prism needs n >= 3"),
            DisjointTriangles(n) => bad(*n >= 1, "need at least one triangle"),
            PerfectBinaryTree(_) | PentagonCounterexample | TreeCounterexample | EslGapTree => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        let (n, edges) = self.edges();
        Graph::new(n, edges)
    }

    fn edges(&self) -> (usize, Vec<Edge>) {
        use FamilySpec::*;
        let mut e = Vec::new();
        let n = match self {
            Cycle(n) => {
                e.extend((0..*n).map(|i| (i, (i + 1) % n)));
                *n
            }
            Path(n) => {
                e.extend((1..*n).map(|i| (i - 1, i)));
                *n
            }
            Complete(n) => {
                for u in 0..*n {
                    e.extend((u + 1..*n).map(|v| (u, v)));
                }
                *n
            }
            CompleteBipartite(n, m) => {
                for u in 0..*n {
                    e.extend((0..*m).map(|j| (u, n + j)));
                }
                n + m
            }
            Wheel(d) => {
                for i in 1..=*d {
                    e.push((0, i));
                    e.push((i, i % d + 1));
                }
                d + 1
            }
            Spider(legs) => {
                let mut next = 1;
                for &len in legs {
                    let mut prev = 0;
                    for _ in 0..len {
                        e.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
                next
            }
            Caterpillar(leaves) => {
                let spine = leaves.len();
                e.extend((1..spine).map(|i| (i - 1, i)));
                let mut next = spine;
                for (i, &c) in leaves.iter().enumerate() {
                    for _ in 0..c {
                        e.push((i, next));
                        next += 1;
                    }
                }
                next
            }
            RectGrid(dims) => {
                let total: usize = dims.iter().product();
                let mut stride = 1;
                let mut strides = alloc::vec![0; dims.len()];
                for t in (0..dims.len()).rev() {
                    strides[t] = stride;
                    stride *= dims[t];
                }
                for v in 0..total {
                    for t in 0..dims.len() {
                        if (v / strides[t]) % dims[t] + 1 < dims[t] {
                            e.push((v, v + strides[t]));
                        }
                    }
                }
                total
            }
            TriangularGrid(n) => {
                let at = |i: usize, j: usize| i * (i + 1) / 2 + j;
                for i in 0..=*n {
                    for j in 0..=i {
                        if j < i {
                            e.push((at(i, j), at(i, j + 1)));
                        }
                        if i < *n {
                            e.push((at(i, j), at(i + 1, j)));
                            e.push((at(i, j), at(i + 1, j + 1)));
                        }
                    }
                }
                at(*n + 1, 0)
            }
            Prism(n) => {
                for i in 0..*n {
                    e.push((2 * i, 2 * i + 1));
                    e.push((2 * i, 2 * ((i + 1) % n)));
                    e.push((2 * i + 1, 2 * ((i + 1) % n) + 1));
                }
                2 * n
            }
            DisjointTriangles(n) => {
                for i in 0..*n {
                    e.extend([(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2), (3 * i, 3 * i + 2)]);
                }
                3 * n
            }
            PerfectBinaryTree(h) => {
                let n = (1usize << (h + 1)) - 1;
                e.extend((1..n).map(|v| ((v - 1) / 2, v)));
                n
            }
            PentagonCounterexample => {
                e.extend([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 4), (1, 3)]);
                5
            }
            TreeCounterexample => {
                // Center 0, branch vertices 1..=4, and branch `1 + b` carries
                // the outer vertex `5 + 3b` and the leaves `6 + 3b`, `7 + 3b`.
                for b in 0..4 {
                    let mid = 1 + b;
                    e.push((0, mid));
                    for t in 0..3 {
                        e.push((mid, 5 + 3 * b + t));
                    }
                }
                17
            }
            EslGapTree => {
                e.extend([(6, 5), (5, 0), (0, 1), (1, 2), (2, 3), (7, 5), (9, 8), (8, 0), (8, 10), (4, 2)]);
                11
            }
        };
        (n, e)
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Cycle(n) => write!(f, "cycle:{n}"),
            Path(n) => write!(f, "path:{n}"),
            Complete(n) => write!(f, "complete:{n}"),
            CompleteBipartite(n, m) => write!(f, "complete-bipartite:{n},{m}"),
            Wheel(d) => write!(f, "wheel:{d}"),
            Spider(l) => write!(f, "spider:{}", join(l)),
            Caterpillar(l) => write!(f, "caterpillar:{}", join(l)),
            RectGrid(d) => write!(f, "grid:{}", join(d)),
            TriangularGrid(n) => write!(f, "triangular-grid:{n}"),
            Prism(n) => write!(f, "prism:{n}"),
            DisjointTriangles(n) => write!(f, "disjoint-triangles:{n}"),
            PerfectBinaryTree(h) => write!(f, "binary-tree:{h}"),
            PentagonCounterexample => f.write_str("pentagon"),
            TreeCounterexample => f.write_str("tree-counterexample"),
            EslGapTree => f.write_str("esl-gap-tree"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad family spec `{input}`: {reason}")]
pub struct FamilyParseError {
    pub input: String,
    pub reason: String,
}

impl FromStr for FamilySpec {
    type Err = FamilyParseError;

    /// Parses `name` or `name:p1,p2,...`, e.g. `cycle:5`, `spider:3,1,2`,
    /// `grid:3,3,3`, `pentagon`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| FamilyParseError { input: s.to_string(), reason: reason.to_string() };
        let (name, args) = match s.split_once(':') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), ""),
        };
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| fail(&format!("{e}")))?
        };
        let one = || match nums.as_slice() {
            [x] => Ok(*x),
            _ => Err(fail("expected exactly one parameter")),
        };
        let spec = match name {
            "cycle" => FamilySpec::Cycle(one()?),
            "path" => FamilySpec::Path(one()?),
            "complete" => FamilySpec::Complete(one()?),
            "complete-bipartite" => match nums.as_slice() {
                [a, b] => FamilySpec::CompleteBipartite(*a, *b),
                _ => return Err(fail("expected two parameters")),
            },
            "wheel" => FamilySpec::Wheel(one()?),
            "spider" => FamilySpec::Spider(nums),
            "caterpillar" => FamilySpec::Caterpillar(nums),
            "grid" => FamilySpec::RectGrid(nums),
            "triangular-grid" => FamilySpec::TriangularGrid(one()?),
            "prism" => FamilySpec::Prism(one()?),
            "disjoint-triangles" => FamilySpec::DisjointTriangles(one()?),
            "binary-tree" => FamilySpec::PerfectBinaryTree(one()?),
            "pentagon" => FamilySpec::PentagonCounterexample,
            "tree-counterexample" => FamilySpec::TreeCounterexample,
            "esl-gap-tree" => FamilySpec::EslGapTree,
            _ => return Err(fail("unknown family")),
        };
        spec.validate().map_err(|e| fail(&format!("{e}")))?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(s: FamilySpec) -> Graph {
        s.generate().unwrap()
    }

    #[test]
    fn small_family_shapes() {
        let c4 = g(FamilySpec::Cycle(4));
        assert_eq!((c4.n(), c4.edge_count()), (4, 4));
        assert!((0..4).all(|v| c4.degree(v) == 2));

        let t3 = g(FamilySpec::TriangularGrid(3));
        assert_eq!((t3.n(), t3.edge_count()), (10, 18));

        let dt = g(FamilySpec::DisjointTriangles(2));
        assert_eq!((dt.n(), dt.edge_count(), dt.stats().component_count), (6, 6, 2));

        let w6 = g(FamilySpec::Wheel(6)).stats();
        assert_eq!((w6.max_degree, w6.min_degree), (6, 3));

        let p1 = g(FamilySpec::Path(1)).stats();
        assert!(p1.is_tree);
        assert_eq!(p1.edge_count, 0);
    }

    #[test]
    fn named_graphs() {
        let pent = g(FamilySpec::PentagonCounterexample);
        let mut degs: Vec<_> = (0..5).map(|v| pent.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 3, 3, 3, 3]);
        assert_eq!(pent.edge_count(), 7);

        let tree = g(FamilySpec::TreeCounterexample);
        let s = tree.stats();
        assert_eq!(tree.n(), 17);
        assert!(s.is_tree);
        assert_eq!(s.max_degree, 4);

        let esl = g(FamilySpec::EslGapTree);
        assert!(esl.is_tree());
        assert_eq!(esl.n(), 11);
    }

    #[test]
    fn grid_counts() {
        for dims in [vec![2, 2], vec![3, 2], vec![6, 6], vec![3, 3, 3], vec![4, 3, 2]] {
            let gr = g(FamilySpec::RectGrid(dims.clone()));
            let prod: usize = dims.iter().product();
            let edges: usize = (0..dims.len()).map(|i| (dims[i] - 1) * prod / dims[i]).sum();
            assert_eq!((gr.n(), gr.edge_count()), (prod, edges), "{dims:?}");
        }
    }

    #[test]
    fn prism_contains_ladder() {
        for n in 3..8 {
            let prism = g(FamilySpec::Prism(n));
            let wraps = [(0, 2 * (n - 1)), (1, 2 * (n - 1) + 1)];
            let ladder = prism.edge_subgraph(|_, e| !wraps.contains(&e));
            assert_eq!(ladder, g(FamilySpec::RectGrid(vec![n, 2])));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        for bad in [
            FamilySpec::Cycle(2),
            FamilySpec::Wheel(2),
            FamilySpec::Spider(vec![1, 1]),
            FamilySpec::Spider(vec![1, 0, 1]),
            FamilySpec::RectGrid(vec![2, 3]),
            FamilySpec::RectGrid(vec![1]),
            FamilySpec::Prism(2),
        ] {
            assert!(bad.generate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn parse_display_round_trip() {
        for s in [
            "cycle:5",
            "complete-bipartite:2,3",
            "spider:3,1,2,4,2,3,4",
            "caterpillar:0,4,2,0,3,4,1,0",
            "grid:3,3,3",
            "binary-tree:0",
            "pentagon",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("cycle:2".parse::<FamilySpec>().is_err());
        assert!("moebius:4".parse::<FamilySpec>().is_err());
        assert!("cycle:x".parse::<FamilySpec>().is_err());
    }
}
