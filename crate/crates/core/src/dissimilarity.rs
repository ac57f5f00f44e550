//! Node-dissimilarity kernels over unweighted graphs.
//!
//! Every kernel follows the same shape: assign a positive weight to a set of
//! node pairs (the original links, or for CN/J also the pairs sharing a
//! neighbour), then complete the matrix with all-pairs shortest paths over
//! those weights. The result is a dense metric on the nodes.
//!
//! | kernel | pair weight |
//! |--------|-------------|
//! | SP     | 1 on every link |
//! | ESP    | Euclidean distance between rows of the SP matrix (no completion) |
//! | CN     | `1 / (1 + cn)` on links and on pairs with `cn > 0` |
//! | J      | `1 / (1 + cn / |N(i)\{j} ∪ N(j)\{i}|)` on links and on pairs with `cn > 0` |
//! | RA     | `(1 + e_i + e_j) / (1 + cn)` on links, `e_i = deg(i) - cn - 1` |
//! | EBC    | `ebc / (ebc + mean(ebc))` on links |

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense symmetric `n x n` matrix of node dissimilarities, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DissimilarityMatrix {
    /// Wraps a row-major buffer without checking the metric invariants.
    pub fn from_raw(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, found: data.len() });
        }
        Ok(DissimilarityMatrix { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = f(i, j);
            }
        }
        DissimilarityMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Smallest and largest off-diagonal entries, `None` when `n < 2`.
    pub fn off_diagonal_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let v = self.get(i, j);
                    range = Some(match range {
                        None => (v, v),
                        Some((lo, hi)) => (lo.min(v), hi.max(v)),
                    });
                }
            }
        }
        range
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Checks symmetry, zero diagonal and finite positive off-diagonal
    /// entries. The triangle inequality is not checked here (it is O(n^3)).
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.get(i, i) != 0.0 {
                return Err(Error::invalid(format!("diagonal entry {i} is {}", self.get(i, i))));
            }
            for j in i + 1..self.n {
                let (a, b) = (self.get(i, j), self.get(j, i));
                if !(a.is_finite() && a > 0.0) {
                    return Err(Error::invalid(format!("entry ({i}, {j}) is {a}")));
                }
                if a != b {
                    return Err(Error::invalid(format!("asymmetric at ({i}, {j}): {a} vs {b}")));
                }
            }
        }
        Ok(())
    }

    /// Debug export: header of node names, then one row per node.
    pub fn write_csv<W: Write>(&self, names: &[String], mut out: W) -> io::Result<()> {
        writeln!(out, "{}", names.join(","))?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Positive weight per edge, aligned with [`Graph::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights(pub Vec<f64>);

impl EdgeWeights {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.edge_count() {
            return Err(Error::SizeMismatch { expected: g.edge_count(), found: self.0.len() });
        }
        if let Some((i, w)) = self.0.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            let (u, v) = g.edges()[i];
            return Err(Error::invalid(format!("edge ({u}, {v}) has weight {w}")));
        }
        Ok(())
    }
}

/// How a kernel's pair weights are turned into a full matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    /// Shortest paths everywhere; direct entries may be shortened.
    #[default]
    Full,
    /// Directly weighted pairs keep their weight; shortest paths only fill
    /// the remaining pairs. The result need not be a metric.
    FillMissing,
}

/// The six dissimilarity kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kernel {
    Sp,
    Esp,
    Cn,
    Jaccard,
    Ra,
    Ebc,
}

impl Kernel {
    pub const ALL: [Kernel; 6] =
        [Kernel::Sp, Kernel::Esp, Kernel::Cn, Kernel::Jaccard, Kernel::Ra, Kernel::Ebc];

    pub fn as_str(self) -> &'static str {
        match self {
            Kernel::Sp => "SP",
            Kernel::Esp => "ESP",
            Kernel::Cn => "CN",
            Kernel::Jaccard => "J",
            Kernel::Ra => "RA",
            Kernel::Ebc => "EBC",
        }
    }

    pub fn compute(self, g: &Graph) -> Result<DissimilarityMatrix> {
        self.compute_with(g, Completion::Full)
    }

    /// `completion` only affects CN and J, the kernels whose weighted pairs
    /// go beyond the original links.
    pub fn compute_with(self, g: &Graph, completion: Completion) -> Result<DissimilarityMatrix> {
        match self {
            Kernel::Sp => kernel_sp(g),
            Kernel::Esp => kernel_esp(g),
            Kernel::Cn => kernel_cn_with(g, completion),
            Kernel::Jaccard => kernel_jaccard_with(g, completion),
            Kernel::Ra => kernel_ra(g),
            Kernel::Ebc => kernel_ebc(g),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SP" => Ok(Kernel::Sp),
            "ESP" => Ok(Kernel::Esp),
            "CN" => Ok(Kernel::Cn),
            "J" | "JACCARD" => Ok(Kernel::Jaccard),
            "RA" => Ok(Kernel::Ra),
            "EBC" => Ok(Kernel::Ebc),
            other => Err(Error::invalid(format!("unknown kernel `{other}`"))),
        }
    }
}

type WeightedAdjacency = Vec<Vec<(usize, f64)>>;

fn weighted_adjacency(g: &Graph, w: &EdgeWeights) -> WeightedAdjacency {
    let mut adj = vec![Vec::new(); g.n()];
    for (&(u, v), &x) in g.edges().iter().zip(w.values()) {
        adj[u].push((v, x));
        adj[v].push((u, x));
    }
    adj
}

#[derive(PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    // min-heap on distance, then node index
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

fn dijkstra_row(adj: &WeightedAdjacency, source: usize, dist: &mut [f64]) {
    dist.fill(f64::INFINITY);
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem(0.0, source));
    while let Some(HeapItem(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(HeapItem(nd, v));
            }
        }
    }
}

fn bfs_row(g: &Graph, source: usize, dist: &mut [f64]) {
    dist.fill(f64::INFINITY);
    dist[source] = 0.0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v].is_infinite() {
                dist[v] = dist[u] + 1.0;
                queue.push_back(v);
            }
        }
    }
}

fn shortest_path_matrix(
    n: usize,
    row: impl Fn(usize, &mut [f64]) + Sync,
) -> Result<DissimilarityMatrix> {
    let mut data = vec![0.0; n * n];
    if n > 0 {
        data.par_chunks_mut(n).enumerate().for_each(|(i, out)| row(i, out));
    }
    if let Some(pos) = data.iter().position(|d| d.is_infinite()) {
        return Err(Error::Disconnected { from: pos / n, to: pos % n });
    }
    // symmetrise exactly; Dijkstra sums can differ in the last bit by direction
    for i in 0..n {
        for j in i + 1..n {
            let v = data[i * n + j].min(data[j * n + i]);
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    Ok(DissimilarityMatrix { n, data })
}

/// All-pairs shortest paths, unit weights when `w` is absent.
///
/// BFS per source for unit weights, binary-heap Dijkstra per source
/// otherwise; rows are computed in parallel.
pub fn apsp(g: &Graph, w: Option<&EdgeWeights>) -> Result<DissimilarityMatrix> {
    match w {
        None => shortest_path_matrix(g.n(), |s, out| bfs_row(g, s, out)),
        Some(w) => {
            w.check(g)?;
            let adj = weighted_adjacency(g, w);
            shortest_path_matrix(g.n(), |s, out| dijkstra_row(&adj, s, out))
        }
    }
}

fn apsp_adjacency(adj: &WeightedAdjacency) -> Result<DissimilarityMatrix> {
    shortest_path_matrix(adj.len(), |s, out| dijkstra_row(adj, s, out))
}

/// Edge betweenness: for each link, the sum over unordered node pairs of the
/// fraction of their shortest paths that traverse it (Brandes accumulation).
pub fn edge_betweenness(g: &Graph) -> EdgeWeights {
    let n = g.n();
    let e = g.edge_count();
    // contiguous source blocks summed in order keep the result independent of
    // the worker count
    const BLOCK: usize = 32;
    let blocks: Vec<Vec<f64>> = (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut acc = vec![0.0; e];
            let mut state = BrandesState::new(n);
            for s in b * BLOCK..((b + 1) * BLOCK).min(n) {
                state.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; e];
    for block in blocks {
        for (t, x) in total.iter_mut().zip(block) {
            *t += x;
        }
    }
    // every unordered pair was seen from both endpoints
    for t in &mut total {
        *t *= 0.5;
    }
    EdgeWeights(total)
}

struct BrandesState {
    sigma: Vec<f64>,
    dist: Vec<usize>,
    delta: Vec<f64>,
    order: Vec<usize>,
}

impl BrandesState {
    fn new(n: usize) -> Self {
        BrandesState {
            sigma: vec![0.0; n],
            dist: vec![usize::MAX; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        self.sigma.fill(0.0);
        self.dist.fill(usize::MAX);
        self.delta.fill(0.0);
        self.order.clear();
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            self.order.push(u);
            for &v in g.neighbors(u) {
                if self.dist[v] == usize::MAX {
                    self.dist[v] = self.dist[u] + 1;
                    queue.push_back(v);
                }
                if self.dist[v] == self.dist[u] + 1 {
                    self.sigma[v] += self.sigma[u];
                }
            }
        }
        for &w in self.order.iter().rev() {
            for &v in g.neighbors(w) {
                if self.dist[v] != usize::MAX && self.dist[v] + 1 == self.dist[w] {
                    let c = self.sigma[v] / self.sigma[w] * (1.0 + self.delta[w]);
                    acc[g.edge_index(v, w).expect("neighbor pair is an edge")] += c;
                    self.delta[v] += c;
                }
            }
        }
    }
}

/// Hop-count shortest paths.
pub fn kernel_sp(g: &Graph) -> Result<DissimilarityMatrix> {
    apsp(g, None)
}

/// Euclidean distance between the rows of the SP matrix.
pub fn kernel_esp(g: &Graph) -> Result<DissimilarityMatrix> {
    let sp = kernel_sp(g)?;
    let n = sp.n();
    let mut data = vec![0.0; n * n];
    data.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, out)| {
        let ri = sp.row(i);
        for (j, slot) in out.iter_mut().enumerate() {
            if j == i {
                continue;
            }
            let rj = sp.row(j);
            *slot = ri.iter().zip(rj).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        }
    });
    Ok(DissimilarityMatrix { n, data })
}

/// Common-neighbour counts for every node pair, dense `n x n`.
pub fn common_neighbours(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut cn = vec![0u32; n * n];
    for w in 0..n {
        let nb = g.neighbors(w);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                cn[a * n + b] += 1;
                cn[b * n + a] += 1;
            }
        }
    }
    cn
}

/// Support graph of the neighbourhood kernels: links plus every pair with at
/// least one common neighbour, weighted by `weight(i, j, cn_ij)`.
fn neighbourhood_kernel(
    g: &Graph,
    completion: Completion,
    weight: impl Fn(usize, usize, u32) -> f64,
) -> Result<DissimilarityMatrix> {
    let n = g.n();
    let cn = common_neighbours(g);
    let mut adj: WeightedAdjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let c = cn[i * n + j];
            if i != j && (c > 0 || g.has_edge(i, j)) {
                adj[i].push((j, weight(i, j, c)));
            }
        }
    }
    let mut d = apsp_adjacency(&adj)?;
    if completion == Completion::FillMissing {
        for (i, row) in adj.iter().enumerate() {
            for &(j, w) in row {
                d.data[i * n + j] = w;
            }
        }
    }
    Ok(d)
}

/// Common-neighbour dissimilarity with full shortest-path completion.
pub fn kernel_cn(g: &Graph) -> Result<DissimilarityMatrix> {
    kernel_cn_with(g, Completion::Full)
}

pub fn kernel_cn_with(g: &Graph, completion: Completion) -> Result<DissimilarityMatrix> {
    neighbourhood_kernel(g, completion, |_, _, c| 1.0 / (1.0 + c as f64))
}

/// Jaccard dissimilarity with full shortest-path completion.
pub fn kernel_jaccard(g: &Graph) -> Result<DissimilarityMatrix> {
    kernel_jaccard_with(g, Completion::Full)
}

pub fn kernel_jaccard_with(g: &Graph, completion: Completion) -> Result<DissimilarityMatrix> {
    neighbourhood_kernel(g, completion, |i, j, c| 1.0 / (1.0 + jaccard(g, i, j, c)))
}

/// `cn / |N(i) ∪ N(j)|` with `i` and `j` themselves excluded from the union.
fn jaccard(g: &Graph, i: usize, j: usize, cn: u32) -> f64 {
    let linked = usize::from(g.has_edge(i, j));
    let union = (g.degree(i) - linked) + (g.degree(j) - linked) - cn as usize;
    if union == 0 {
        0.0
    } else {
        cn as f64 / union as f64
    }
}

/// Repulsion-attraction weight of every link.
pub fn ra_weights(g: &Graph) -> EdgeWeights {
    EdgeWeights(
        g.edges()
            .iter()
            .map(|&(u, v)| {
                let cn = sorted_intersection(g.neighbors(u), g.neighbors(v));
                let ext_u = g.degree(u) - cn - 1;
                let ext_v = g.degree(v) - cn - 1;
                (1 + ext_u + ext_v) as f64 / (1 + cn) as f64
            })
            .collect(),
    )
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Repulsion-attraction dissimilarity.
pub fn kernel_ra(g: &Graph) -> Result<DissimilarityMatrix> {
    g.require_connected()?;
    apsp(g, Some(&ra_weights(g)))
}

/// Edge betweenness rescaled into `[0, 1)` around its mean: `x / (x + mean)`.
pub fn rescale_betweenness(ebc: &EdgeWeights) -> EdgeWeights {
    let values = ebc.values();
    let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
    EdgeWeights(values.iter().map(|&x| x / (x + mean)).collect())
}

/// Edge-betweenness dissimilarity.
pub fn kernel_ebc(g: &Graph) -> Result<DissimilarityMatrix> {
    g.require_connected()?;
    apsp(g, Some(&rescale_betweenness(&edge_betweenness(g))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    fn off_diagonal_all(d: &DissimilarityMatrix, value: f64) {
        for i in 0..d.n() {
            for j in 0..d.n() {
                let expect = if i == j { 0.0 } else { value };
                assert!((d.get(i, j) - expect).abs() < 1e-12, "({i},{j}) = {}", d.get(i, j));
            }
        }
    }

    #[test]
    fn apsp_unit_and_weighted() {
        assert_eq!(apsp(&path3(), None).unwrap().get(0, 2), 2.0);
        let w = EdgeWeights(vec![0.5; 3]);
        off_diagonal_all(&apsp(&triangle(), Some(&w)).unwrap(), 0.5);
        // edges sorted: (0,1)=1, (0,2)=5, (1,2)=3
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = apsp(&g, Some(&EdgeWeights(vec![1.0, 5.0, 3.0]))).unwrap();
        assert_eq!(d.get(0, 2), 4.0);
    }

    #[test]
    fn apsp_rejects_disconnected_and_bad_weights() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(apsp(&g, None).unwrap_err(), Error::Disconnected { from: 0, to: 2 });
        assert!(apsp(&path3(), Some(&EdgeWeights(vec![1.0, 0.0]))).is_err());
        assert!(apsp(&path3(), Some(&EdgeWeights(vec![1.0]))).is_err());
    }

    #[test]
    fn betweenness_small_cases() {
        assert_eq!(edge_betweenness(&path3()).0, vec![2.0, 2.0]);
        assert_eq!(edge_betweenness(&triangle()).0, vec![1.0; 3]);
        assert_eq!(edge_betweenness(&star(4)).0, vec![4.0; 4]);
    }

    #[test]
    fn sp_and_esp_small_cases() {
        let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(kernel_sp(&edge).unwrap().get(0, 1), 1.0);
        assert!((kernel_esp(&edge).unwrap().get(0, 1) - 2f64.sqrt()).abs() < 1e-15);
        off_diagonal_all(&kernel_esp(&triangle()).unwrap(), 2f64.sqrt());
    }

    #[test]
    fn cn_small_cases() {
        off_diagonal_all(&kernel_cn(&triangle()).unwrap(), 0.5);
        let d = kernel_cn(&star(3)).unwrap();
        assert_eq!(d.get(0, 1), 1.0);
        assert_eq!(d.get(1, 2), 0.5);
        let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(kernel_cn(&edge).unwrap().get(0, 1), 1.0);
    }

    #[test]
    fn jaccard_small_cases() {
        // triangle: N(0)\{1} = N(1)\{0} = {2}, so J = 1 and the weight is 1/2
        off_diagonal_all(&kernel_jaccard(&triangle()).unwrap(), 0.5);
        let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(kernel_jaccard(&edge).unwrap().get(0, 1), 1.0);
        // path 0-1-2: the non-adjacent pair shares node 1 and nothing else
        let d = kernel_jaccard(&path3()).unwrap();
        assert_eq!(d.get(0, 2), 0.5);
        assert_eq!(d.get(0, 1), 1.0);
    }

    #[test]
    fn jaccard_separates_bridged_cliques() {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for a in base..base + 4 {
                for b in a + 1..base + 4 {
                    edges.push((a, b));
                }
            }
        }
        edges.push((3, 4));
        let g = Graph::from_edges(8, edges).unwrap();
        let d = kernel_jaccard(&g).unwrap();
        assert!(d.get(0, 1) < d.get(3, 4));
        assert!(d.get(0, 2) < d.get(3, 4));
    }

    #[test]
    fn fill_missing_keeps_direct_weights() {
        // star: leaf pairs have cn = 1 (weight 0.5), hub-leaf links weight 1
        let g = star(3);
        let full = kernel_cn_with(&g, Completion::Full).unwrap();
        let fill = kernel_cn_with(&g, Completion::FillMissing).unwrap();
        assert_eq!(full, fill);
        // in K4 minus an edge the direct cn weights are already shortest
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let fill = kernel_cn_with(&g, Completion::FillMissing).unwrap();
        assert_eq!(fill.get(2, 3), 1.0 / 3.0);
    }

    #[test]
    fn ra_small_cases() {
        off_diagonal_all(&kernel_ra(&triangle()).unwrap(), 0.5);
        assert_eq!(ra_weights(&path3()).0, vec![2.0, 2.0]);
        assert_eq!(kernel_ra(&path3()).unwrap().get(0, 2), 4.0);
        // two hubs (0, 1), five private leaves each
        let mut edges = vec![(0, 1)];
        edges.extend((2..7).map(|l| (0, l)));
        edges.extend((7..12).map(|l| (1, l)));
        let g = Graph::from_edges(12, edges).unwrap();
        let w = ra_weights(&g);
        assert_eq!(w.0[g.edge_index(0, 1).unwrap()], 11.0);
        assert_eq!(w.0[g.edge_index(0, 2).unwrap()], 6.0);
    }

    #[test]
    fn ebc_small_cases() {
        assert_eq!(kernel_ebc(&path3()).unwrap().get(0, 2), 1.0);
        off_diagonal_all(&kernel_ebc(&triangle()).unwrap(), 0.5);
        let raw = edge_betweenness(&star(4));
        let scaled = EdgeWeights(raw.0.iter().map(|x| x * 7.5).collect());
        assert_eq!(rescale_betweenness(&raw), rescale_betweenness(&scaled));
    }

    #[test]
    fn kernel_names_round_trip() {
        for k in Kernel::ALL {
            assert_eq!(k.as_str().parse::<Kernel>().unwrap(), k);
        }
        assert!("XY".parse::<Kernel>().is_err());
    }
}
