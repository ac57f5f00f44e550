//! Partition similarity (NMI, AMI) and greedy-routing navigability.

use rayon::prelude::*;

use crate::dissimilarity::{apsp, DissimilarityMatrix, EdgeWeights};
use crate::error::{Error, Result};
use crate::graph::Graph;
pub use crate::partition::Partition;

/// Node-to-community ratio at or below which the chance-corrected score is used.
pub const ADJUSTMENT_THRESHOLD: f64 = 100.0;

struct Contingency {
    n: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    /// Nonzero cells only.
    cells: Vec<usize>,
}

impl Contingency {
    fn new(a: &Partition, b: &Partition) -> Result<Self> {
        b.check_len(a.len())?;
        let mut table = vec![0usize; a.k() * b.k()];
        for (&x, &y) in a.labels().iter().zip(b.labels()) {
            table[x * b.k() + y] += 1;
        }
        Ok(Contingency {
            n: a.len(),
            rows: a.sizes(),
            cols: b.sizes(),
            cells: table.into_iter().filter(|&c| c > 0).collect(),
        })
    }

    fn entropies(&self) -> (f64, f64) {
        (entropy(&self.rows, self.n), entropy(&self.cols, self.n))
    }

    fn mutual_information(&self) -> f64 {
        // I = H(a) + H(b) - H(a, b); exact zero for independent tables
        let (ha, hb) = self.entropies();
        (ha + hb - entropy(&self.cells, self.n)).max(0.0)
    }
}

fn entropy(counts: &[usize], n: usize) -> f64 {
    let n = n as f64;
    -counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * p.ln()
        })
        .sum::<f64>()
}

/// Normalized mutual information `I / sqrt(H(a) H(b))`, natural logarithms.
///
/// Identical partitions score 1 (including two single-community
/// partitions); otherwise a zero entropy gives 0.
pub fn nmi(a: &Partition, b: &Partition) -> Result<f64> {
    let table = Contingency::new(a, b)?;
    if a == b {
        return Ok(1.0);
    }
    let (ha, hb) = table.entropies();
    if ha <= 0.0 || hb <= 0.0 {
        return Ok(0.0);
    }
    Ok((table.mutual_information() / (ha * hb).sqrt()).clamp(0.0, 1.0))
}

/// `ln(k!)` for `k = 0..=n`.
fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Expected mutual information of two partitions with the given cluster
/// sizes under the permutation (hypergeometric) model.
pub fn expected_mutual_information(rows: &[usize], cols: &[usize], n: usize) -> f64 {
    let lf = log_factorials(n);
    let nf = n as f64;
    let mut emi = 0.0;
    for &a in rows.iter().filter(|&&a| a > 0) {
        for &b in cols.iter().filter(|&&b| b > 0) {
            let start = (a + b).saturating_sub(n).max(1);
            let end = a.min(b);
            // log of the hypergeometric normaliser a! b! (n-a)! (n-b)! / n!
            let base = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n];
            for nij in start..=end {
                let log_p = base - lf[nij] - lf[a - nij] - lf[b - nij] - lf[n + nij - a - b];
                let x = nij as f64;
                emi += x / nf * (nf * x / (a as f64 * b as f64)).ln() * log_p.exp();
            }
        }
    }
    emi
}

/// Adjusted mutual information `(I - E[I]) / (sqrt(H(a) H(b)) - E[I])`,
/// clipped to `[-1, 1]`.
pub fn ami(a: &Partition, b: &Partition) -> Result<f64> {
    let table = Contingency::new(a, b)?;
    if a == b {
        return Ok(1.0);
    }
    let (ha, hb) = table.entropies();
    if ha <= 0.0 || hb <= 0.0 {
        return Ok(0.0);
    }
    let mi = table.mutual_information();
    let emi = expected_mutual_information(&table.rows, &table.cols, table.n);
    let denominator = (ha * hb).sqrt() - emi;
    if denominator.abs() < 1e-15 {
        return Ok(0.0);
    }
    Ok(((mi - emi) / denominator).clamp(-1.0, 1.0))
}

/// A partition score together with the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionScore {
    pub value: f64,
    /// `true` when the chance-corrected (AMI) branch was taken.
    pub adjusted: bool,
}

/// AMI when `n / max(k_detected, k_truth) <= 100`, plain NMI otherwise.
pub fn score_partition(detected: &Partition, truth: &Partition) -> Result<PartitionScore> {
    truth.check_len(detected.len())?;
    let k = detected.k().max(truth.k()).max(1);
    let adjusted = detected.len() as f64 / k as f64 <= ADJUSTMENT_THRESHOLD;
    let value = if adjusted { ami(detected, truth)? } else { nmi(detected, truth)? };
    Ok(PartitionScore { value, adjusted })
}

/// Greedy route from `src` to `dst`: each hop moves to the neighbour with the
/// smallest dissimilarity to `dst` (lowest index on ties). Returns the
/// visited nodes, or `None` when the packet would revisit a node.
pub fn greedy_route(
    g: &Graph,
    d: &DissimilarityMatrix,
    src: usize,
    dst: usize,
) -> Option<Vec<usize>> {
    let mut visited = vec![false; g.n()];
    let mut path = vec![src];
    visited[src] = true;
    let mut current = src;
    while current != dst {
        let next = greedy_step(g, d, current, dst)?;
        if visited[next] {
            return None;
        }
        visited[next] = true;
        path.push(next);
        current = next;
    }
    Some(path)
}

fn greedy_step(g: &Graph, d: &DissimilarityMatrix, current: usize, dst: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &v in g.neighbors(current) {
        if best.is_none_or(|b| d.get(v, dst) < d.get(b, dst)) {
            best = Some(v);
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrOutcome {
    /// Mean of `sp / p` over all ordered pairs, failures counting 0.
    pub score: f64,
    /// Fraction of ordered pairs delivered.
    pub success_rate: f64,
    /// Row-major `sp / p` per ordered pair (diagonal 0), when requested.
    pub ratios: Option<Vec<f64>>,
}

/// Greedy-routing score of `d` on `g`.
///
/// Without `geometry`, path lengths are hop counts. With `geometry` (a
/// positive length per edge), the optimum is the shortest path under those
/// lengths and the greedy path is measured by summing them along the route.
pub fn gr_score(
    g: &Graph,
    d: &DissimilarityMatrix,
    geometry: Option<&EdgeWeights>,
) -> Result<GrOutcome> {
    gr_score_impl(g, d, geometry, false)
}

/// As [`gr_score`], also returning the per-pair ratios.
pub fn gr_score_detailed(
    g: &Graph,
    d: &DissimilarityMatrix,
    geometry: Option<&EdgeWeights>,
) -> Result<GrOutcome> {
    gr_score_impl(g, d, geometry, true)
}

fn gr_score_impl(
    g: &Graph,
    d: &DissimilarityMatrix,
    geometry: Option<&EdgeWeights>,
    keep_ratios: bool,
) -> Result<GrOutcome> {
    let n = g.n();
    if d.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: d.n() });
    }
    if let Some(w) = geometry {
        if w.values().len() != g.edge_count() {
            return Err(Error::SizeMismatch { expected: g.edge_count(), found: w.values().len() });
        }
        if w.values().iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(Error::invalid("geometric edge lengths must be positive and finite"));
        }
    }
    // errors on disconnected graphs
    let optimum = apsp(g, geometry)?;
    if n < 2 {
        return Ok(GrOutcome { score: 1.0, success_rate: 1.0, ratios: keep_ratios.then(Vec::new) });
    }
    let hop = |u: usize, v: usize| -> f64 {
        match geometry {
            None => 1.0,
            Some(w) => w.values()[g.edge_index(u, v).expect("route follows edges")],
        }
    };

    let rows: Vec<(Vec<f64>, usize)> = (0..n)
        .into_par_iter()
        .map(|src| {
            let mut ratios = vec![0.0; n];
            let mut delivered = 0;
            for dst in 0..n {
                if dst == src {
                    continue;
                }
                if let Some(path) = greedy_route(g, d, src, dst) {
                    let length: f64 = path.windows(2).map(|w| hop(w[0], w[1])).sum();
                    ratios[dst] = (optimum.get(src, dst) / length).min(1.0);
                    delivered += 1;
                }
            }
            (ratios, delivered)
        })
        .collect();

    let pairs = (n * (n - 1)) as f64;
    let total: f64 = rows.iter().map(|(r, _)| r.iter().sum::<f64>()).sum();
    let delivered: usize = rows.iter().map(|(_, k)| k).sum();
    Ok(GrOutcome {
        score: total / pairs,
        success_rate: delivered as f64 / pairs,
        ratios: keep_ratios.then(|| rows.into_iter().flat_map(|(r, _)| r).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissimilarity::kernel_sp;

    fn p(labels: &[usize]) -> Partition {
        Partition::from_labels(labels.iter().copied())
    }

    #[test]
    fn nmi_reference_values() {
        let a = p(&[0, 0, 1, 1, 2]);
        assert_eq!(nmi(&a, &a).unwrap(), 1.0);
        assert_eq!(nmi(&Partition::singletons(5), &Partition::single(5)).unwrap(), 0.0);
        assert_eq!(nmi(&p(&[0, 0, 1, 1]), &p(&[0, 1, 0, 1])).unwrap(), 0.0);
        assert_eq!(nmi(&Partition::single(3), &Partition::single(3)).unwrap(), 1.0);
        assert!(nmi(&a, &p(&[0, 1])).is_err());
    }

    #[test]
    fn nmi_hand_computed() {
        // a = {0,0,1,1}, b = {0,0,0,1}: H(a) = ln 2, H(b) = -(3/4 ln 3/4 + 1/4 ln 1/4),
        // H(a,b) = -(1/2 ln 1/2 + 2 * 1/4 ln 1/4)
        let ha = 2f64.ln();
        let hb = -(0.75 * 0.75f64.ln() + 0.25 * 0.25f64.ln());
        let hab = -(0.5 * 0.5f64.ln() + 0.5 * 0.25f64.ln());
        let expected = (ha + hb - hab) / (ha * hb).sqrt();
        let got = nmi(&p(&[0, 0, 1, 1]), &p(&[0, 0, 0, 1])).unwrap();
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn ami_reference_values() {
        let a = p(&[0, 0, 1, 1, 2, 2]);
        assert_eq!(ami(&a, &a).unwrap(), 1.0);
        assert_eq!(ami(&Partition::single(6), &a).unwrap(), 0.0);
        assert_eq!(ami(&a, &Partition::single(6)).unwrap(), 0.0);
    }

    #[test]
    fn ami_matches_reference_implementation() {
        // scikit-learn adjusted_mutual_info_score(average_method="geometric")
        let a = p(&[0, 0, 0, 1, 1, 1, 2, 2, 2, 2]);
        let b = p(&[0, 0, 1, 1, 1, 2, 2, 2, 0, 0]);
        let got = ami(&a, &b).unwrap();
        assert!((got - 0.171_524_235_400_728_48).abs() < 1e-9, "{got}");
    }

    #[test]
    fn emi_matches_brute_force_enumeration() {
        // average MI over every labelling with the given cluster sizes
        use std::collections::HashSet;
        let a = p(&[0, 0, 1, 1, 1, 2]);
        let base = [0usize, 0, 0, 1, 1, 2];
        let mut perms = HashSet::new();
        permutations(&mut base.to_vec(), 0, &mut perms);
        let mean: f64 = perms
            .iter()
            .map(|labels| Contingency::new(&a, &p(labels)).unwrap().mutual_information())
            .sum::<f64>()
            / perms.len() as f64;
        let emi = expected_mutual_information(&[2, 3, 1], &[3, 2, 1], 6);
        assert!((emi - mean).abs() < 1e-12, "{emi} vs {mean}");
    }

    fn permutations(v: &mut Vec<usize>, k: usize, out: &mut std::collections::HashSet<Vec<usize>>) {
        if k == v.len() {
            out.insert(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, out);
            v.swap(k, i);
        }
    }

    #[test]
    fn score_partition_branch() {
        let truth = Partition::from_labels((0..34).map(|i| i % 2));
        let s = score_partition(&truth, &truth).unwrap();
        assert!(s.adjusted);
        assert_eq!(s.value, 1.0);
        let truth = Partition::from_labels((0..1222).map(|i| i % 2));
        let s = score_partition(&truth, &truth).unwrap();
        assert!(!s.adjusted);
        assert_eq!(s.value, 1.0);
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn greedy_route_basics() {
        let g = path(3);
        let d = kernel_sp(&g).unwrap();
        assert_eq!(greedy_route(&g, &d, 0, 1), Some(vec![0, 1]));
        assert_eq!(greedy_route(&g, &d, 0, 2), Some(vec![0, 1, 2]));
    }

    #[test]
    fn greedy_route_ties_go_to_lower_index() {
        // 4-cycle; from 0 both neighbours are equally close to 2
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let d = kernel_sp(&g).unwrap();
        assert_eq!(greedy_route(&g, &d, 0, 2), Some(vec![0, 1, 2]));
        assert_eq!(greedy_route(&g, &d, 1, 3), Some(vec![1, 0, 3]));
    }

    #[test]
    fn greedy_route_two_cycle_fails() {
        // path 0-1-2-3, route 0 -> 3; d says 2 is farther from 3 than 0 is,
        // so 1 sends the packet back to 0
        let g = path(4);
        let d = DissimilarityMatrix::from_fn(4, |i, j| {
            let table = [
                [0.0, 1.0, 1.0, 1.0],
                [1.0, 0.0, 1.0, 2.0],
                [1.0, 1.0, 0.0, 5.0],
                [1.0, 2.0, 5.0, 0.0],
            ];
            table[i][j]
        });
        assert_eq!(greedy_route(&g, &d, 0, 3), None);
        let out = gr_score(&g, &d, None).unwrap();
        assert!(out.score <= out.success_rate);
        assert!(out.success_rate < 1.0);
    }

    #[test]
    fn sp_kernel_scores_one() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        let out = gr_score(&g, &kernel_sp(&g).unwrap(), None).unwrap();
        assert_eq!(out.score, 1.0);
        assert_eq!(out.success_rate, 1.0);
    }

    #[test]
    fn complete_graph_scores_one() {
        let edges = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b)));
        let g = Graph::from_edges(5, edges).unwrap();
        let d = DissimilarityMatrix::from_fn(5, |i, j| if i == j { 0.0 } else { (i + j) as f64 });
        assert_eq!(gr_score(&g, &d, None).unwrap().score, 1.0);
    }

    #[test]
    fn geometric_mode() {
        // triangle with lengths (0,1)=1, (0,2)=3, (1,2)=1; greedy on SP goes
        // 0 -> 2 directly (length 3) while the geometric optimum is 2
        let g = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let geometry = EdgeWeights(vec![1.0, 3.0, 1.0]);
        let d = kernel_sp(&g).unwrap();
        let out = gr_score_detailed(&g, &d, Some(&geometry)).unwrap();
        let r = out.ratios.unwrap();
        assert!((r[2] - 2.0 / 3.0).abs() < 1e-15);
        assert!((r[2 * 3] - 2.0 / 3.0).abs() < 1e-15);
        assert!((out.score - (4.0 + 4.0 / 3.0) / 6.0).abs() < 1e-15);
        assert!(gr_score(&g, &d, Some(&EdgeWeights(vec![1.0, 0.0, 1.0]))).is_err());
    }
}
