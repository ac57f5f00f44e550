//! Descriptive network statistics: size, half average degree, average local
//! clustering and a discrete power-law fit of the degree sequence.

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub e: usize,
    /// Half the average degree, `e / n`.
    pub m_half_degree: f64,
    /// Average local clustering coefficient over nodes of degree >= 2.
    pub clustering: f64,
    /// Fitted power-law exponent, `None` when the degree sequence is degenerate.
    pub gamma: Option<f64>,
    /// Lower degree cutoff selected for the fit.
    pub kmin: Option<usize>,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let n = g.n();
    let e = g.edge_count();
    let fit = fit_power_law(&g.degrees());
    GraphStats {
        n,
        e,
        m_half_degree: if n == 0 { 0.0 } else { e as f64 / n as f64 },
        clustering: average_clustering(g),
        gamma: fit.map(|f| f.gamma),
        kmin: fit.map(|f| f.kmin),
    }
}

pub fn local_clustering(g: &Graph, node: usize) -> f64 {
    let nb = g.neighbors(node);
    let k = nb.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if g.has_edge(a, b) {
                links += 1;
            }
        }
    }
    links as f64 / (k * (k - 1) / 2) as f64
}

/// Mean local clustering over the nodes where it is defined (degree >= 2);
/// 0 when there are none.
pub fn average_clustering(g: &Graph) -> f64 {
    let eligible: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 2).collect();
    if eligible.is_empty() {
        return 0.0;
    }
    eligible.iter().map(|&v| local_clustering(g, v)).sum::<f64>() / eligible.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub kmin: usize,
    /// Kolmogorov-Smirnov distance of the tail against the fitted law.
    pub ks: f64,
    pub tail: usize,
}

/// Discrete power-law fit with KS-optimal lower cutoff.
///
/// For each candidate `kmin` the exponent is the discrete approximation to
/// the maximum-likelihood estimate, `1 + n_tail / sum(ln(k / (kmin - 0.5)))`,
/// and the candidate is scored by the KS distance between the empirical tail
/// CDF and the exact discrete CDF `1 - zeta(g, k + 1) / zeta(g, kmin)`. A
/// candidate is only considered when its tail holds at least two distinct
/// degree values; when none qualifies the fit is unavailable.
pub fn fit_power_law(degrees: &[usize]) -> Option<PowerLawFit> {
    let mut sorted: Vec<usize> = degrees.iter().copied().filter(|&k| k > 0).collect();
    sorted.sort_unstable();
    let mut candidates = sorted.clone();
    candidates.dedup();

    let mut best: Option<PowerLawFit> = None;
    for &kmin in &candidates {
        let start = sorted.partition_point(|&k| k < kmin);
        let tail = &sorted[start..];
        if tail.first() == tail.last() {
            continue;
        }
        let shift = kmin as f64 - 0.5;
        let log_sum: f64 = tail.iter().map(|&k| (k as f64 / shift).ln()).sum();
        let gamma = 1.0 + tail.len() as f64 / log_sum;
        let norm = hurwitz_zeta(gamma, kmin as f64);
        let kmax = *tail.last().unwrap();

        let mut ks = 0.0f64;
        let mut below = 0usize;
        for k in kmin..=kmax {
            while below < tail.len() && tail[below] <= k {
                below += 1;
            }
            let empirical = below as f64 / tail.len() as f64;
            let model = 1.0 - hurwitz_zeta(gamma, (k + 1) as f64) / norm;
            ks = ks.max((empirical - model).abs());
        }
        if best.is_none_or(|b| ks < b.ks) {
            best = Some(PowerLawFit { gamma, kmin, ks, tail: tail.len() });
        }
    }
    best
}

/// Hurwitz zeta `sum_{j >= 0} (q + j)^-s` for `s > 1`, `q > 0`, by
/// Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    const DIRECT: usize = 12;
    // B_2k / (2k)!
    const BERNOULLI: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
    ];
    let mut sum = 0.0;
    for j in 0..DIRECT {
        sum += (q + j as f64).powf(-s);
    }
    let a = q + DIRECT as f64;
    sum += a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    // rising factorial s (s+1) ... (s+2k-2) times a^(-s-2k+1)
    let mut factor = s * a.powf(-s - 1.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        sum += b * factor;
        let m = 2.0 * k as f64;
        factor *= (s + m + 1.0) * (s + m + 2.0) / (a * a);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_reference_values() {
        assert!((hurwitz_zeta(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-12);
        assert!((hurwitz_zeta(2.0, 2.0) - (PI * PI / 6.0 - 1.0)).abs() < 1e-12);
        assert!((hurwitz_zeta(3.0, 1.0) - 1.202_056_903_159_594_2).abs() < 1e-12);
        assert!((hurwitz_zeta(4.0, 1.0) - PI.powi(4) / 90.0).abs() < 1e-12);
        // slow tail: zeta(1.5) = 2.612375348685488
        assert!((hurwitz_zeta(1.5, 1.0) - 2.612_375_348_685_488).abs() < 1e-10);
    }

    #[test]
    fn triangle_clustering_and_no_fit() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = graph_stats(&g);
        assert_eq!(s.clustering, 1.0);
        assert_eq!(s.m_half_degree, 1.0);
        assert!(s.gamma.is_none() && s.kmin.is_none());
    }

    #[test]
    fn star_has_zero_clustering() {
        let g = Graph::from_edges(6, (1..6).map(|l| (0, l))).unwrap();
        let s = graph_stats(&g);
        assert_eq!(s.clustering, 0.0);
        assert_eq!(s.m_half_degree * 6.0, 5.0);
    }

    #[test]
    fn degree_one_nodes_count_as_zero() {
        // triangle with a pendant: C = (1 + 1 + 1/3 + 0) / 4
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!((average_clustering(&g) - (7.0 / 3.0) / 3.0).abs() < 1e-15);
    }

    #[test]
    fn recovers_exponent_of_a_sampled_power_law() {
        use rand::{Rng, SeedableRng};
        // inverse-CDF sampling of the continuous law, rounded (standard test
        // generator for discrete fits); exponent 2.5, kmin 1
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let degrees: Vec<usize> = (0..20000)
            .map(|_| {
                let u: f64 = rng.random();
                (0.5 * (1.0 - u).powf(-1.0 / 1.5) + 0.5).floor() as usize
            })
            .collect();
        let fit = fit_power_law(&degrees).unwrap();
        assert!((fit.gamma - 2.5).abs() < 0.1, "{fit:?}");
    }
}
