//! Acceptance checks, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.

use std::collections::{BTreeSet, HashMap, VecDeque};

use labindex::formats::parse_graph6;
use labindex::parallel::{pool, solve, Limits};
use labindex::scan::{scan, Category, ScanSummary};
use labindex_core::bounds::{bound_report, triangles_index, BoundHints};
use labindex_core::cayley::{
    binary_tree_threshold, embed_tree, labeling_from_subgraph, sphere_bfs, sphere_count, tree_density_lower_bound,
    Target,
};
use labindex_core::constructions::{self as cons, Claim, ConstructionResult};
use labindex_core::solver::brute::brute_force_index;
use labindex_core::solver::{feasible_k, Budget, Feasibility, SolveOptions};
use labindex_core::{induced_labels, FamilySpec, Graph, IndexKind, VertexLabeling};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use IndexKind::{Diff, Sum};

const CORPORA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpora");

fn corpus(name: &str) -> String {
    std::fs::read_to_string(format!("{CORPORA}/{name}")).unwrap()
}

fn corpus_graphs(name: &str) -> Vec<Graph> {
    corpus(name)
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| parse_graph6(l).unwrap())
        .collect()
}

/// Prints the criterion line and fails the test on any problem.
fn report(n: &str, what: &str, problems: Vec<String>) {
    if problems.is_empty() {
        println!("criterion {n}: PASS  {what}");
    } else {
        println!("criterion {n}: FAIL  {what}");
        for p in &problems {
            println!("    {p}");
        }
        panic!("criterion {n}: {} problem(s)", problems.len());
    }
}

fn exact_index(g: &Graph, kind: IndexKind) -> Result<(usize, VertexLabeling), String> {
    let (c, _) = solve(&pool(2), g, kind, &SolveOptions::default(), Limits::default()).map_err(|e| e.to_string())?;
    let v = c.value.exact().ok_or_else(|| format!("undecided: {:?}", c.value))?;
    let count = induced_labels(g, &c.labeling, kind).unwrap().count;
    if count != v {
        return Err(format!("witness induces {count} labels, certificate says {v}"));
    }
    Ok((v, c.labeling))
}

/// The table values checked by criteria 1 and 8.
fn table_values() -> Vec<(FamilySpec, IndexKind, usize)> {
    use FamilySpec::*;
    let mut v = Vec::new();
    for n in 3..=8 {
        v.push((Cycle(n), Sum, 3));
        v.push((Cycle(n), Diff, 2));
    }
    for n in 2..=5 {
        v.push((Complete(n), Sum, 2 * n - 3));
    }
    for n in 2..=6 {
        v.push((Complete(n), Diff, n - 1));
    }
    for n in 1..=6 {
        for m in n..=7 - n {
            v.push((CompleteBipartite(n, m), Sum, n + m - 1));
            v.push((CompleteBipartite(n, m), Diff, (n + m - 1).div_ceil(2)));
        }
    }
    for d in [3, 4] {
        v.push((Wheel(d), Sum, 5));
        v.push((Wheel(d), Diff, 3));
    }
    v.push((RectGrid(vec![3, 2]), Sum, 3));
    v.push((RectGrid(vec![3, 2]), Diff, 2));
    v.push((RectGrid(vec![3, 3]), Sum, 4));
    v.push((RectGrid(vec![3, 3]), Diff, 2));
    v.push((PentagonCounterexample, Sum, 4));
    v.push((PentagonCounterexample, Diff, 3));
    v
}

#[test]
fn criterion_1_exact_values() {
    let mut problems = Vec::new();
    let cases = table_values();
    for (spec, kind, want) in &cases {
        match exact_index(&spec.generate().unwrap(), *kind) {
            Ok((got, _)) if got == *want => {}
            Ok((got, _)) => problems.push(format!("{spec} {kind:?}: got {got}, want {want}")),
            Err(e) => problems.push(format!("{spec} {kind:?}: {e}")),
        }
    }
    report("1", &format!("{} exact index values", cases.len()), problems);
}

#[test]
fn criterion_2_impossibility() {
    let cases =
        [(FamilySpec::Cycle(4), Sum, 2), (FamilySpec::Wheel(4), Sum, 4), (FamilySpec::PentagonCounterexample, Diff, 2)];
    let mut problems = Vec::new();
    for (spec, kind, k) in cases {
        let g = spec.generate().unwrap();
        let serial = feasible_k(&g, kind, k, &Budget::default()).unwrap().0;
        let parallel = labindex::parallel::feasible_k(&pool(4), &g, kind, k, &Budget::default()).unwrap().0;
        for (route, r) in [("serial", serial), ("parallel", parallel)] {
            if r != Feasibility::NoneExists {
                problems.push(format!("{spec} {kind:?} k={k} ({route}): {r:?}"));
            }
        }
    }
    report("2", "three refutations, serial and parallel", problems);
}

/// Recounts a construction's labels from scratch.
fn check_construction(r: &ConstructionResult, problems: &mut Vec<String>) {
    let name = r.family.as_ref().map_or_else(|| format!("{} vertices", r.graph.n()), ToString::to_string);
    let vals: BTreeSet<_> = r.labeling.values().iter().collect();
    if vals.len() != r.graph.n() {
        problems.push(format!("{name}: labeling is not injective"));
    }
    let labels: BTreeSet<_> =
        r.graph.edges().iter().map(|&(u, v)| r.kind.edge_label(r.labeling.get(u), r.labeling.get(v))).collect();
    if labels.len() != r.claimed {
        problems.push(format!("{name} {:?}: {} labels, claimed {}", r.kind, labels.len(), r.claimed));
    }
    let b = bound_report(&r.graph, r.kind, &BoundHints::default()).unwrap();
    if b.lower > r.claimed {
        problems.push(format!("{name} {:?}: lower bound {} above claim {}", r.kind, b.lower, r.claimed));
    }
}

fn multisets(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in lo..=max {
            cur.push(x);
            go(len, x, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 1, max, &mut Vec::new(), &mut out);
    out
}

fn random_caterpillars(count: usize, max_vertices: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let spine = rng.gen_range(2..=10);
            let mut leaves = vec![0; spine];
            let mut room = max_vertices - spine;
            while room > 0 && rng.gen_bool(0.85) {
                leaves[rng.gen_range(0..spine)] += 1;
                room -= 1;
            }
            leaves
        })
        .collect()
}

/// Every construction instance swept by criterion 3.
fn sweep() -> Vec<ConstructionResult> {
    let mut out = Vec::new();
    for delta in 3..=7 {
        for legs in multisets(delta, 4) {
            let mut rev = legs.clone();
            rev.reverse();
            for l in [legs, rev] {
                out.push(cons::spider_sum(&l).unwrap());
                out.push(cons::spider_diff(&l).unwrap());
            }
        }
    }
    for d in 3..=12 {
        out.push(cons::wheel_diff(d).unwrap());
    }
    for leaves in random_caterpillars(100, 30, 7) {
        out.push(cons::caterpillar_diff(&leaves).unwrap());
    }
    for n in 2..=6 {
        for m in 2..=n {
            out.push(cons::grid_sum(&[n, m]).unwrap());
            out.push(cons::grid_diff(&[n, m]).unwrap());
        }
    }
    out.push(cons::grid_sum(&[3, 3, 3]).unwrap());
    out.push(cons::grid_diff(&[3, 3, 3]).unwrap());
    for t in 1..=20 {
        out.push(cons::disjoint_triangles_sum(t).unwrap());
    }
    for n in 3..=8 {
        for k in 2..=2 * n - 3 {
            out.push(cons::prescribed_sum_index_graph(n, k).unwrap());
        }
    }
    for n in 3..=10 {
        out.push(cons::cycle_sum(n).unwrap());
        out.push(cons::cycle_diff(n).unwrap());
        out.push(cons::ladder_sum(n).unwrap());
        let (s, d) = cons::prism_labelings(n).unwrap();
        out.push(s);
        out.push(d);
    }
    for n in 2..=10 {
        out.push(cons::path_diff(n).unwrap());
        out.push(cons::complete_diff(n).unwrap());
    }
    for n in 1..=8 {
        for m in 1..=8 {
            out.push(cons::complete_bipartite_diff(n, m).unwrap());
        }
    }
    out
}

#[test]
fn criterion_3_construction_sweep() {
    let instances = sweep();
    let mut problems = Vec::new();
    for r in &instances {
        check_construction(r, &mut problems);
    }
    let cube = cons::grid_sum(&[3, 3, 3]).unwrap();
    if cube.claimed != 6 || cube.claim != Claim::Exact {
        problems.push(format!("3x3x3 grid sum claim {} {:?}, want exactly 6", cube.claimed, cube.claim));
    }
    report("3", &format!("{} constructions recount to their claims", instances.len()), problems);
}

#[test]
fn criterion_4_solver_meets_constructions() {
    let mut problems = Vec::new();
    let mut checked = 0;
    for r in sweep().iter().filter(|r| r.claim == Claim::Exact && r.graph.n() <= 7) {
        checked += 1;
        match exact_index(&r.graph, r.kind) {
            Ok((v, _)) if v == r.claimed => {}
            Ok((v, _)) => problems.push(format!("{:?} {:?}: solver {v}, claim {}", r.family, r.kind, r.claimed)),
            Err(e) => problems.push(format!("{:?} {:?}: {e}", r.family, r.kind)),
        }
    }
    for n in 3..=5 {
        let g = FamilySpec::Prism(n).generate().unwrap();
        for (kind, cap) in [(Sum, 5), (Diff, 3)] {
            match exact_index(&g, kind) {
                Ok((v, _)) if v <= cap => {}
                other => problems.push(format!("prism:{n} {kind:?}: {other:?}, want at most {cap}")),
            }
        }
    }
    report("4", &format!("{checked} exact claims on <= 7 vertices plus prisms 3..5"), problems);
}

/// Sphere sizes by breadth-first search written from the generator
/// definitions: `ψ_i(x) = e_i - x` acting on `(sign, offset)` affine maps,
/// and `±e_i` on `Z^k`.
fn independent_spheres(target: Target, k: usize, r: usize) -> Vec<usize> {
    type Node = (i64, Vec<i64>);
    let start: Node = (1, vec![0; k]);
    let mut dist: HashMap<Node, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    let mut sizes = vec![0; r + 1];
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        sizes[d] += 1;
        if d == r {
            continue;
        }
        let mut next: Vec<Node> = Vec::new();
        for i in 0..k {
            match target {
                Target::Hyperdiamond => {
                    let mut v: Vec<i64> = x.1.iter().map(|c| -c).collect();
                    v[i] += 1;
                    next.push((-x.0, v));
                }
                Target::Grid => {
                    for s in [-1, 1] {
                        let mut v = x.1.clone();
                        v[i] += s;
                        next.push((1, v));
                    }
                }
            }
        }
        for y in next {
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    sizes
}

#[test]
fn criterion_5_sphere_counts() {
    let mut problems = Vec::new();
    let mut cells = 0;
    for target in [Target::Hyperdiamond, Target::Grid] {
        for k in 1..=4 {
            let ours = independent_spheres(target, k, 6);
            for (r, &want) in ours.iter().enumerate() {
                cells += 1;
                let closed = sphere_count(target, k, r);
                let bfs = sphere_bfs(target, k, r).unwrap();
                if closed != BigUint::from(want) || bfs != want {
                    problems
                        .push(format!("{} k={k} r={r}: closed {closed}, bfs {bfs}, reference {want}", target.as_str()));
                }
            }
        }
    }
    report("5", &format!("{cells} (target, k, r) cells agree three ways"), problems);
}

fn random_tree(rng: &mut StdRng, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let edges = (1..n).map(|i| (order[rng.gen_range(0..i)], order[i]));
    Graph::new(n, edges).unwrap()
}

fn adjacent(target: Target, a: &[i64], b: &[i64]) -> bool {
    match target {
        // ψ_i ∘ g sends the origin to e_i - g(0).
        Target::Hyperdiamond => {
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            s.iter().filter(|&&c| c == 1).count() == 1 && s.iter().all(|&c| c == 0 || c == 1)
        }
        Target::Grid => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<i64>() == 1,
    }
}

#[test]
fn criterion_6_tree_embeddings() {
    let mut rng = StdRng::seed_from_u64(6);
    let mut problems = Vec::new();
    for t in 0..50 {
        let n = rng.gen_range(2..=12);
        let tree = random_tree(&mut rng, n);
        for (kind, target) in [(Sum, Target::Hyperdiamond), (Diff, Target::Grid)] {
            let (k, f) = match exact_index(&tree, kind) {
                Ok(x) => x,
                Err(e) => {
                    problems.push(format!("tree {t}: {e}"));
                    continue;
                }
            };
            let cert = match embed_tree(&tree, &f, target, k) {
                Ok(c) => c,
                Err(e) => {
                    problems.push(format!("tree {t} {}: {e}", target.as_str()));
                    continue;
                }
            };
            let images: BTreeSet<&Vec<i64>> = cert.vertex_map.iter().collect();
            let adjacency =
                tree.edges().iter().all(|&(u, v)| adjacent(target, &cert.vertex_map[u], &cert.vertex_map[v]));
            if images.len() != n || !adjacency || cert.validate(&tree).is_err() {
                problems.push(format!("tree {t} {}: invalid embedding", target.as_str()));
            }
            let back = labeling_from_subgraph(target, k, &cert.vertex_map, tree.edges()).unwrap();
            let count = induced_labels(&tree, &back, kind).unwrap().count;
            if count > k {
                problems.push(format!("tree {t} {}: pulled-back labeling has {count} > {k} labels", target.as_str()));
            }
        }
    }
    report("6", "50 random trees embed in H_s and Q_d and pull back", problems);
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && permutations(a.n()).iter().any(|p| a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v])))
}

#[test]
fn criterion_7_conjecture_scan() {
    let p = pool(2);
    let mut problems = Vec::new();
    let small = scan(&p, &corpus("small.g6"), Limits::default());
    for r in small.iter().filter(|r| r.category != Category::Equality) {
        problems.push(format!("small graph {} is {:?}", r.graph6, r.category));
    }
    let five = scan(&p, &corpus("connected5.g6"), Limits::default());
    let summary = ScanSummary::of(&five);
    if summary.graphs != 21 || summary.violations + summary.unknown + summary.errors > 0 {
        problems.push(format!("connected 5-vertex scan: {summary:?}"));
    }
    let pentagon = FamilySpec::PentagonCounterexample.generate().unwrap();
    let strict: Vec<Graph> = summary.strict_graphs.iter().map(|s| parse_graph6(s).unwrap()).collect();
    if !strict.iter().any(|g| isomorphic(g, &pentagon)) {
        problems.push(format!("pentagon not among strict graphs {:?}", summary.strict_graphs));
    }
    for r in scan(&p, &corpus("strict.g6"), Limits::default()) {
        if r.category != Category::Strict {
            problems.push(format!("{} is {:?}, want strict", r.graph6, r.category));
        }
    }
    report(
        "7",
        &format!(
            "{} small graphs at equality; 5-vertex scan {} equality, {} strict, 0 violations",
            small.len(),
            summary.equality,
            summary.strict
        ),
        problems,
    );
}

#[test]
fn criterion_8_direct_search_oracle() {
    let mut problems = Vec::new();
    let cases = table_values();
    for (spec, kind, _) in &cases {
        let g = spec.generate().unwrap();
        let bound = 4 * (g.n() * g.n()) as i64;
        let budget = Budget { max_nodes: 100_000, should_stop: None };
        let direct = brute_force_index(&g, *kind, bound, &budget).unwrap();
        match exact_index(&g, *kind) {
            Ok((v, _)) if direct.value.upper() == v => {}
            Ok((v, _)) => problems.push(format!("{spec} {kind:?}: direct search {:?}, solver {v}", direct.value)),
            Err(e) => problems.push(format!("{spec} {kind:?}: {e}")),
        }
    }
    report("8", &format!("direct search with B = 4n^2 reaches the solver value on {} cases", cases.len()), problems);
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, edges).unwrap()
}

fn random_labeling(rng: &mut StdRng, n: usize) -> VertexLabeling {
    let mut vals: Vec<i64> = (-100..100).collect();
    vals.shuffle(rng);
    VertexLabeling::from_i64(vals[..n].iter().copied()).unwrap()
}

#[test]
fn criterion_9_properties() {
    let mut rng = StdRng::seed_from_u64(9);
    let mut problems = Vec::new();
    for _ in 0..300 {
        let n = rng.gen_range(2..=9);
        let g = random_graph(&mut rng, n, 0.5);
        let f = random_labeling(&mut rng, n);
        let c = num_bigint::BigInt::from(rng.gen_range(-1000..1000));
        for kind in [Sum, Diff] {
            let count = induced_labels(&g, &f, kind).unwrap().count;
            if induced_labels(&g, &f.shift(&c), kind).unwrap().count != count {
                problems.push(format!("shift changed the {kind:?} count on {:?}", g.edges()));
            }
        }
        if !labindex_core::labeling::is_proper_edge_coloring_induced(&g, &f) {
            problems.push(format!("sum class is not a matching on {:?}", g.edges()));
        }
        if !labindex_core::labeling::diff_classes_are_linear_forests(&g, &f) {
            problems.push(format!("difference class is not a linear forest on {:?}", g.edges()));
        }
    }
    let mut pairs = 0;
    while pairs < 500 {
        let n = rng.gen_range(2..=6);
        let g = random_graph(&mut rng, n, 0.6);
        let kept: Vec<(usize, usize)> = g.edges().iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if kept.is_empty() {
            continue;
        }
        pairs += 1;
        let h = Graph::new(n, kept).unwrap();
        for kind in [Sum, Diff] {
            let (a, b) = (exact_index(&h, kind), exact_index(&g, kind));
            match (a, b) {
                (Ok((x, _)), Ok((y, _))) if x <= y => {}
                other => problems.push(format!("{kind:?} monotonicity {:?} in {:?}: {other:?}", h.edges(), g.edges())),
            }
        }
    }
    let trees = corpus_graphs("trees10.g6");
    for t in &trees {
        for kind in [Sum, Diff] {
            let bound = tree_density_lower_bound(t, kind).unwrap();
            match exact_index(t, kind) {
                Ok((v, _)) if bound <= v => {}
                other => problems.push(format!("{kind:?} density bound {bound} on {:?}: {other:?}", t.edges())),
            }
        }
    }
    report("9", &format!("shift, class shapes, {pairs} subgraph pairs, {} trees", trees.len()), problems);
}

#[test]
fn criterion_asymptotic_triangles() {
    let mut problems = Vec::new();
    let choose3 = |k: usize| k * k.saturating_sub(1) * k.saturating_sub(2) / 6;
    let mut prev = 0;
    for t in 1..=5000 {
        let v = triangles_index(t);
        let reference = (1..).find(|&k| choose3(k) >= t).unwrap();
        if v != reference || v < prev {
            problems.push(format!("t={t}: {v}, reference {reference}, previous {prev}"));
        }
        prev = v;
    }
    let thresholds: Vec<usize> = (1..=6).map(binary_tree_threshold).collect();
    if thresholds.windows(2).any(|w| w[0] > w[1]) {
        problems.push(format!("binary tree thresholds not monotone: {thresholds:?}"));
    }
    report("asymptotic", "triangle bound monotone and equal to the closed form for t <= 5000", problems);
}
