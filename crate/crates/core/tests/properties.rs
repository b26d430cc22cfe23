//! Invariants of labelings, the solver and the hyperdiamond group.

use std::collections::BTreeMap;

use labindex_core::cayley::{tree_density_lower_bound, HDElement};
use labindex_core::labeling::{diff_classes_are_linear_forests, is_proper_edge_coloring_induced, label_count};
use labindex_core::solver::brute::brute_force_index;
use labindex_core::solver::{solve_index, Budget, SolveOptions};
use labindex_core::{induced_labels, Graph, IndexKind, VertexLabeling};
use num_bigint::BigInt;
use proptest::prelude::*;

const KINDS: [IndexKind; 2] = [IndexKind::Sum, IndexKind::Diff];

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m)
            .prop_filter("at least one edge", |keep| keep.iter().any(|&b| b))
            .prop_map(move |keep| {
                let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
                Graph::new(n, edges).unwrap()
            })
    })
}

fn graph_and_labeling(max_n: usize) -> impl Strategy<Value = (Graph, VertexLabeling)> {
    graph(max_n).prop_flat_map(|g| {
        let labels = proptest::collection::btree_set(-60i64..60, g.n())
            .prop_map(|s| s.into_iter().collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| VertexLabeling::from_i64(v).unwrap());
        (Just(g), labels)
    })
}

/// Random tree from a Prüfer sequence.
fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |seq| {
            let mut degree = vec![1usize; n];
            for &x in &seq {
                degree[x] += 1;
            }
            let mut edges = Vec::new();
            for &x in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, x));
                degree[leaf] -= 1;
                degree[x] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1]));
            Graph::new(n, edges).unwrap()
        })
    })
}

fn index(g: &Graph, kind: IndexKind) -> usize {
    solve_index(g, kind, &SolveOptions::default(), &Budget::default())
        .unwrap()
        .value
        .exact()
        .expect("small graphs are decided")
}

fn hd_element(k: usize) -> impl Strategy<Value = HDElement> {
    proptest::collection::vec(0..k, 0..8).prop_map(move |word| {
        word.iter().fold(HDElement::identity(k), |acc, &i| HDElement::generator(k, i).compose(&acc).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn shifting_and_negating_keep_the_count((g, f) in graph_and_labeling(9), c in -1000i64..1000) {
        for kind in KINDS {
            let before = label_count(&g, &f, kind).unwrap();
            prop_assert_eq!(label_count(&g, &f.shift(&BigInt::from(c)), kind).unwrap(), before);
            prop_assert_eq!(label_count(&g, &f.negate(), kind).unwrap(), before);
        }
    }

    #[test]
    fn sum_classes_are_matchings((g, f) in graph_and_labeling(9)) {
        prop_assert!(is_proper_edge_coloring_induced(&g, &f));
        let s = induced_labels(&g, &f, IndexKind::Sum).unwrap();
        let mut seen: BTreeMap<(&BigInt, usize), usize> = BTreeMap::new();
        for (i, l) in s.per_edge.iter().enumerate() {
            let (u, v) = g.edges()[i];
            for w in [u, v] {
                prop_assert!(seen.insert((l, w), i).is_none(), "two edges labeled {} meet at {}", l, w);
            }
        }
    }

    #[test]
    fn diff_classes_are_paths((g, f) in graph_and_labeling(9)) {
        prop_assert!(diff_classes_are_linear_forests(&g, &f));
        let s = induced_labels(&g, &f, IndexKind::Diff).unwrap();
        for label in &s.labels {
            let class: Vec<(usize, usize)> =
                g.edges().iter().zip(&s.per_edge).filter(|(_, l)| *l == label).map(|(&e, _)| e).collect();
            let mut deg = vec![0; g.n()];
            for &(u, v) in &class {
                deg[u] += 1;
                deg[v] += 1;
            }
            prop_assert!(deg.iter().all(|&d| d <= 2));
            // An edge joining two vertices already connected closes a cycle.
            let mut parent: Vec<usize> = (0..g.n()).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            for &(u, v) in &class {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                prop_assert_ne!(a, b, "class {} has a cycle", label);
                parent[a] = b;
            }
        }
    }

    #[test]
    fn hd_group_laws(a in hd_element(4), b in hd_element(4), c in hd_element(4), i in 0..4usize) {
        let id = HDElement::identity(4);
        let p = HDElement::generator(4, i);
        prop_assert_eq!(p.compose(&p).unwrap(), id.clone());
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), id.clone());
        prop_assert_eq!(a.inverse().compose(&a).unwrap(), id);
        prop_assert_eq!(
            a.compose(&b).unwrap().compose(&c).unwrap(),
            a.compose(&b.compose(&c).unwrap()).unwrap()
        );
        let x = [3, -1, 4, 1];
        prop_assert_eq!(a.compose(&b).unwrap().apply(&x).unwrap(), a.apply(&b.apply(&x).unwrap()).unwrap());
        prop_assert_eq!(a.distance(&b).unwrap(), b.distance(&a).unwrap());
    }

    #[test]
    fn hd_words_reach_within_their_length(word in proptest::collection::vec(0..3usize, 0..10)) {
        let x = word
            .iter()
            .fold(HDElement::identity(3), |acc, &i| HDElement::generator(3, i).compose(&acc).unwrap());
        let d = x.distance(&HDElement::identity(3)).unwrap();
        prop_assert!(d <= word.len() as u64);
        prop_assert_eq!(d % 2, word.len() as u64 % 2);
        prop_assert_eq!(x.parity(), if word.len() % 2 == 0 { 1 } else { -1 });
        for y in x.neighbors() {
            prop_assert_eq!(y.distance(&x).unwrap(), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn indices_are_monotone_under_subgraphs(g in graph(6), drop in proptest::collection::vec(any::<bool>(), 15)) {
        let kept: Vec<(usize, usize)> =
            g.edges().iter().zip(drop.iter().chain(std::iter::repeat(&false))).filter(|(_, &d)| !d).map(|(&e, _)| e).collect();
        prop_assume!(!kept.is_empty());
        let h = Graph::new(g.n(), kept).unwrap();
        for kind in KINDS {
            prop_assert!(index(&h, kind) <= index(&g, kind), "{:?} {:?} {:?}", kind, h.edges(), g.edges());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn density_bound_does_not_exceed_the_index(t in tree(10)) {
        for kind in KINDS {
            prop_assert!(tree_density_lower_bound(&t, kind).unwrap() <= index(&t, kind));
        }
    }

    #[test]
    fn solver_agrees_with_direct_search(g in graph(5)) {
        let b = 4 * (g.n() * g.n()) as i64;
        let budget = Budget { max_nodes: 200_000, should_stop: None };
        for kind in KINDS {
            let exact = index(&g, kind);
            let direct = brute_force_index(&g, kind, b, &budget).unwrap();
            prop_assert_eq!(direct.value.upper(), exact, "{:?} {:?}", kind, g.edges());
        }
    }
}
