#![allow(dead_code)]

use apcd::{load_edge_list, Graph, Partition, RngSeed};
use rand::Rng;

pub fn karate() -> (Graph, Partition) {
    let edges = include_str!("../../../../data/karate/karate.edges");
    let labels = include_str!("../../../../data/karate/karate.labels");
    let (g, truth) = load_edge_list(edges, Some(labels)).unwrap();
    (g, truth.unwrap())
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = RngSeed(seed).rng();
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.random::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Erdos-Renyi G(n, p); may be disconnected or empty.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = RngSeed(seed).rng();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Cliques of the given sizes joined in a chain by one link each.
pub fn bridged_cliques(sizes: &[usize]) -> (Graph, Partition) {
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut base = 0;
    for (c, &s) in sizes.iter().enumerate() {
        for a in base..base + s {
            labels.push(c);
            for b in a + 1..base + s {
                edges.push((a, b));
            }
        }
        if base > 0 {
            edges.push((base - 1, base));
        }
        base += s;
    }
    (Graph::from_edges(base, edges).unwrap(), Partition::from_labels(labels))
}

/// Hop distances from `src` by breadth-first search.
pub fn bfs(g: &Graph, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}
