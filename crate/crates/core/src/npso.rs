//! Nonuniform popularity-similarity (nPSO) network generator.
//!
//! Nodes arrive one at a time, t = 1..N, on the hyperbolic disk:
//!
//! - radial coordinate at birth `r_t = 2 ln t`;
//! - angular coordinate drawn from a Gaussian mixture with `C` components,
//!   means `mu_i = 2 pi (i - 1) / C`, deviations `sigma_i = (1/6)(2 pi / C)`
//!   and weights `rho_i = 1 / C`, wrapped into `[0, 2 pi)`;
//! - on arrival of `t`, every older node `s` fades outwards to
//!   `r_s(t) = beta r_s + (1 - beta) r_t` with `beta = 1 / (gamma - 1)`;
//! - node `t` links to `min(m, t - 1)` older nodes. At `T = 0` these are the
//!   `m` hyperbolically closest; at `0 < T < 1` they are drawn without
//!   replacement with weights `p(x) = 1 / (1 + exp((x - R_t) / (2T)))`, where
//!
//!   `R_t = r_t - 2 ln[ 2T (1 - exp(-(1 - beta) ln t)) / (sin(T pi) m (1 - beta)) ]`.
//!
//! Ground-truth communities assign each node to the mixture component whose
//! mean is angularly closest. Exported radii are the final faded values.

use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index;
use rand::Rng;
use rand_distr::Normal;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::seed::RngSeed;
use crate::dissimilarity::EdgeWeights;

/// Attempts before giving up on drawing a connected network.
pub const MAX_ATTEMPTS: u64 = 10;

const ATTEMPT_STREAM: u64 = 0x6e70_736f;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NpsoParams {
    pub n: usize,
    /// Half of the average degree.
    pub m: usize,
    /// Temperature, `0 <= T < 1`.
    pub t: f64,
    /// Target power-law exponent of the degree distribution, `> 2`.
    pub gamma: f64,
    /// Number of communities.
    pub c: usize,
}

impl NpsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::invalid("m must be at least 1"));
        }
        if self.n <= self.m + 1 {
            return Err(Error::invalid(format!("n = {} must exceed m + 1 = {}", self.n, self.m + 1)));
        }
        if !(self.gamma.is_finite() && self.gamma > 2.0) {
            return Err(Error::invalid(format!("gamma = {} must be > 2", self.gamma)));
        }
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(Error::invalid(format!("temperature {} must be >= 0", self.t)));
        }
        // sin(T pi) vanishes at T = 1 and the normalisation changes form above it
        if self.t >= 1.0 {
            return Err(Error::invalid(format!("temperature {} must be < 1", self.t)));
        }
        if self.c < 1 {
            return Err(Error::invalid("c must be at least 1"));
        }
        Ok(())
    }

    pub fn beta(&self) -> f64 {
        1.0 / (self.gamma - 1.0)
    }

    /// Exact edge count of every generated network: `m N - m (m + 1) / 2`.
    pub fn expected_edges(&self) -> usize {
        self.m * self.n - self.m * (self.m + 1) / 2
    }
}

/// Angular Gaussian mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture {
    pub means: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Mixture {
    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    fn validate(&self) -> Result<()> {
        let c = self.means.len();
        if c == 0 || self.sigmas.len() != c || self.weights.len() != c {
            return Err(Error::invalid("mixture components must be nonempty and aligned"));
        }
        if self.sigmas.iter().any(|s| !(s.is_finite() && *s >= 0.0))
            || self.weights.iter().any(|w| !(w.is_finite() && *w >= 0.0))
            || self.weights.iter().sum::<f64>() <= 0.0
        {
            return Err(Error::invalid("mixture deviations and weights must be finite and >= 0"));
        }
        Ok(())
    }
}

/// Equidistant means, `sigma = (1/6)(2 pi / c)`, uniform weights.
pub fn mixture_params(c: usize) -> Result<Mixture> {
    if c < 1 {
        return Err(Error::invalid("a mixture needs at least one component"));
    }
    let spacing = TAU / c as f64;
    Ok(Mixture {
        means: (0..c).map(|i| spacing * i as f64).collect(),
        sigmas: vec![spacing / 6.0; c],
        weights: vec![1.0 / c as f64; c],
    })
}

fn wrap(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2 pi for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Angular sampler bound to one mixture.
pub struct AngleSampler {
    pick: WeightedIndex<f64>,
    components: Vec<Normal<f64>>,
}

impl AngleSampler {
    pub fn new(mix: &Mixture) -> Result<Self> {
        mix.validate()?;
        let pick = WeightedIndex::new(&mix.weights).map_err(|e| Error::invalid(e.to_string()))?;
        let components = mix
            .means
            .iter()
            .zip(&mix.sigmas)
            .map(|(&mu, &sigma)| Normal::new(mu, sigma).map_err(|e| Error::invalid(e.to_string())))
            .collect::<Result<_>>()?;
        Ok(AngleSampler { pick, components })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let i = self.pick.sample(rng);
        wrap(self.components[i].sample(rng))
    }
}

/// One draw from the mixture, wrapped into `[0, 2 pi)`.
pub fn sample_angle<R: Rng + ?Sized>(mix: &Mixture, rng: &mut R) -> Result<f64> {
    Ok(AngleSampler::new(mix)?.sample(rng))
}

/// Angle between two directions, in `[0, pi]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(TAU);
    d.min(TAU - d)
}

/// Component whose mean is angularly closest; ties go to the lowest id.
pub fn assign_community(theta: f64, mix: &Mixture) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, &mu) in mix.means.iter().enumerate() {
        let d = circular_distance(theta, mu);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

/// Exact hyperbolic distance between `(r1, theta1)` and `(r2, theta2)` on the
/// curvature -1 disk.
pub fn hyperbolic_distance(r1: f64, theta1: f64, r2: f64, theta2: f64) -> f64 {
    let dtheta = circular_distance(theta1, theta2);
    if dtheta == 0.0 {
        return (r1 - r2).abs();
    }
    let arg = r1.cosh() * r2.cosh() - r1.sinh() * r2.sinh() * dtheta.cos();
    arg.max(1.0).acosh()
}

/// A generated network with its latent coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct NpsoNetwork {
    pub params: NpsoParams,
    pub graph: Graph,
    /// Final (faded) radial coordinates.
    pub radial: Vec<f64>,
    pub angular: Vec<f64>,
    /// Mixture component of each node, `0..c`.
    pub components: Vec<usize>,
    /// Ground truth, canonically relabelled.
    pub truth: Partition,
    /// Seed of the attempt that produced this network.
    pub seed: RngSeed,
}

impl NpsoNetwork {
    /// Hyperbolic length of every edge, aligned with `graph.edges()`.
    pub fn edge_lengths(&self) -> EdgeWeights {
        EdgeWeights(
            self.graph
                .edges()
                .iter()
                .map(|&(u, v)| {
                    hyperbolic_distance(self.radial[u], self.angular[u], self.radial[v], self.angular[v])
                })
                .collect(),
        )
    }

    /// One line `nodeId r theta communityId` per node (1-based node ids, the
    /// same ids as [`Graph::write_edge_list`]).
    pub fn write_coordinates<W: Write>(&self, mut out: W) -> io::Result<()> {
        for v in 0..self.graph.n() {
            writeln!(
                out,
                "{} {:.12} {:.12} {}",
                self.graph.name(v),
                self.radial[v],
                self.angular[v],
                self.components[v]
            )?;
        }
        Ok(())
    }
}

/// Generates a connected nPSO network. Disconnected draws are retried on
/// derived seeds, at most [`MAX_ATTEMPTS`] times.
pub fn npso_generate(p: &NpsoParams, seed: RngSeed) -> Result<NpsoNetwork> {
    p.validate()?;
    let mix = mixture_params(p.c)?;
    let sampler = AngleSampler::new(&mix)?;
    for attempt in 0..MAX_ATTEMPTS {
        let s = if attempt == 0 { seed } else { seed.derive(ATTEMPT_STREAM, attempt) };
        let net = grow(p, &mix, &sampler, s)?;
        if net.graph.is_connected() {
            return Ok(net);
        }
    }
    Err(Error::Generation(format!("no connected network after {MAX_ATTEMPTS} attempts")))
}

fn grow(p: &NpsoParams, mix: &Mixture, sampler: &AngleSampler, seed: RngSeed) -> Result<NpsoNetwork> {
    let mut rng = seed.rng();
    let n = p.n;
    let beta = p.beta();
    let birth: Vec<f64> = (1..=n).map(|t| 2.0 * (t as f64).ln()).collect();
    let mut angular = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(p.expected_edges());
    let mut distance = Vec::with_capacity(n);

    for (idx, &r_t) in birth.iter().enumerate() {
        let theta_t = sampler.sample(&mut rng);
        angular.push(theta_t);
        if idx == 0 {
            continue;
        }
        distance.clear();
        distance.extend((0..idx).map(|s| {
            let r_s = beta * birth[s] + (1.0 - beta) * r_t;
            hyperbolic_distance(r_s, angular[s], r_t, theta_t)
        }));
        if idx <= p.m {
            edges.extend((0..idx).map(|s| (s, idx)));
            continue;
        }
        let targets = if p.t == 0.0 {
            closest(&distance, p.m)
        } else {
            let r_cut = connection_radius(p, idx + 1);
            sample_targets(&distance, r_cut, p.t, p.m, &mut rng)
        };
        edges.extend(targets.into_iter().map(|s| (s, idx)));
    }

    let r_n = birth[n - 1];
    let radial = birth.iter().map(|&r| beta * r + (1.0 - beta) * r_n).collect();
    let components: Vec<usize> = angular.iter().map(|&th| assign_community(th, mix)).collect();
    let names = (1..=n).map(|i| i.to_string()).collect();
    let graph = Graph::from_edges(n, edges)?.with_names(names)?;
    Ok(NpsoNetwork {
        params: *p,
        graph,
        radial,
        angular,
        truth: Partition::from_labels(components.iter().copied()),
        components,
        seed,
    })
}

/// `R_t` for node `t` (1-based), `0 < T < 1`.
pub fn connection_radius(p: &NpsoParams, t: usize) -> f64 {
    let beta = p.beta();
    let lt = (t as f64).ln();
    let r_t = 2.0 * lt;
    let num = 2.0 * p.t * (1.0 - (-(1.0 - beta) * lt).exp());
    let den = (p.t * PI).sin() * p.m as f64 * (1.0 - beta);
    r_t - 2.0 * (num / den).ln()
}

/// Fermi-Dirac connection probability, evaluated without overflow.
pub fn connection_probability(x: f64, r_cut: f64, t: f64) -> f64 {
    let z = (x - r_cut) / (2.0 * t);
    if z > 0.0 {
        let e = (-z).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + z.exp())
    }
}

/// The `m` smallest distances, ties to the older node.
fn closest(distance: &[f64], m: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..distance.len()).collect();
    order.sort_by(|&a, &b| distance[a].total_cmp(&distance[b]).then(a.cmp(&b)));
    order.truncate(m);
    order
}

/// Target selection at positive temperature: `m` distinct nodes sampled
/// without replacement, weighted by their connection probability. If fewer
/// than `m` weights are representable as positive, the nearest nodes are
/// taken instead.
fn sample_targets<R: Rng + ?Sized>(
    distance: &[f64],
    r_cut: f64,
    t: f64,
    m: usize,
    rng: &mut R,
) -> Vec<usize> {
    let weights: Vec<f64> = distance.iter().map(|&x| connection_probability(x, r_cut, t)).collect();
    if weights.iter().filter(|&&w| w > 0.0).count() < m {
        return closest(distance, m);
    }
    match index::sample_weighted(rng, weights.len(), |i| weights[i], m) {
        Ok(chosen) => chosen.into_vec(),
        Err(_) => closest(distance, m),
    }
}
