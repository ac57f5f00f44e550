//! Comparisons against independent brute-force or published reference values.

mod common;

use apcd::dissimilarity::{apsp, edge_betweenness, kernel_ebc, rescale_betweenness};
use apcd::evaluation::{ami, gr_score_detailed};
use apcd::npso::{npso_generate, NpsoParams};
use apcd::{graph_stats, EdgeWeights, Graph, Kernel, Partition, RngSeed};
use common::{bfs, karate, random_connected};
use rand::seq::SliceRandom;

/// Every shortest path between `s` and `t`, by depth-first search over the
/// BFS layers.
fn shortest_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let dist = bfs(g, t);
    let mut out = Vec::new();
    let mut stack = vec![vec![s]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == t {
            out.push(path);
            continue;
        }
        for &v in g.neighbors(last) {
            if dist[v].unwrap() + 1 == dist[last].unwrap() {
                let mut next = path.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    out
}

#[test]
fn edge_betweenness_matches_path_enumeration() {
    for seed in 0..40 {
        let n = 2 + (seed as usize % 7);
        let g = random_connected(n, 0.35, seed);
        let mut expected = vec![0.0; g.edge_count()];
        let mut total_length = 0.0;
        for s in 0..n {
            for t in s + 1..n {
                let paths = shortest_paths(&g, s, t);
                total_length += (paths[0].len() - 1) as f64;
                for p in &paths {
                    for w in p.windows(2) {
                        expected[g.edge_index(w[0], w[1]).unwrap()] += 1.0 / paths.len() as f64;
                    }
                }
            }
        }
        let got = edge_betweenness(&g);
        for (e, (a, b)) in got.values().iter().zip(&expected).enumerate() {
            assert!((a - b).abs() < 1e-12, "seed {seed}, edge {e}: {a} vs {b}");
        }
        let sum: f64 = got.values().iter().sum();
        assert!((sum - total_length).abs() < 1e-9);
    }
}

#[test]
fn ebc_kernel_ignores_the_pair_counting_convention() {
    for seed in 0..10 {
        let g = random_connected(25, 0.1, 100 + seed);
        let unordered = edge_betweenness(&g);
        let ordered = EdgeWeights(unordered.values().iter().map(|x| 2.0 * x).collect());
        let a = apsp(&g, Some(&rescale_betweenness(&ordered))).unwrap();
        let b = kernel_ebc(&g).unwrap();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert!((x - y).abs() <= 1e-12 * (1.0 + y));
        }
    }
}

#[test]
fn karate_reference_values() {
    let (g, truth) = karate();
    assert_eq!(g.n(), 34);
    assert_eq!(g.edge_count(), 78);
    assert_eq!(truth.sizes(), vec![17, 17]);
    let d = Kernel::Sp.compute(&g).unwrap();
    assert_eq!(d.off_diagonal_range(), Some((1.0, 5.0)));
    let stats = graph_stats(&g);
    // networkx: average_clustering over nodes of degree >= 2
    assert!((stats.clustering - 0.587_930_553_304_884_8).abs() < 1e-12, "{}", stats.clustering);
    assert!((stats.m_half_degree - 78.0 / 34.0).abs() < 1e-15);
}

#[test]
fn ami_of_random_labelings_averages_zero() {
    let n = 100;
    let fixed = Partition::from_labels((0..n).map(|i| i % 3));
    let mut labels: Vec<usize> = (0..n).map(|i| i % 4).collect();
    let mut rng = RngSeed(8).rng();
    let draws = 2000;
    let mut total = 0.0;
    for _ in 0..draws {
        labels.shuffle(&mut rng);
        total += ami(&fixed, &Partition::from_labels(labels.iter().copied())).unwrap();
    }
    let mean = total / draws as f64;
    assert!(mean.abs() <= 0.02, "mean AMI {mean}");
}

#[test]
fn geometric_ratios_never_exceed_one() {
    let p = NpsoParams { n: 120, m: 4, t: 0.3, gamma: 2.5, c: 3 };
    let net = npso_generate(&p, RngSeed(21)).unwrap();
    let lengths = net.edge_lengths();
    for kernel in [Kernel::Ra, Kernel::Sp, Kernel::Cn] {
        let d = kernel.compute(&net.graph).unwrap();
        let out = gr_score_detailed(&net.graph, &d, Some(&lengths)).unwrap();
        assert!(out.ratios.unwrap().iter().all(|&r| (0.0..=1.0).contains(&r)));
        assert!((0.0..=1.0).contains(&out.score));
    }
}
