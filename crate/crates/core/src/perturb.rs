//! Random link removal and addition (missing / spurious link noise).

use rand::seq::index;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::RngSeed;

/// `round(fraction * e)` with halves rounded up.
pub fn perturbation_count(fraction: f64, edges: usize) -> usize {
    (fraction * edges as f64 + 0.5).floor() as usize
}

/// Deletes `round(fraction * e)` edges chosen uniformly without replacement.
///
/// The result may be disconnected.
pub fn perturb_remove(g: &Graph, fraction: f64, seed: RngSeed) -> Result<Graph> {
    if !(0.0..1.0).contains(&fraction) {
        return Err(Error::invalid(format!("removal fraction {fraction} outside [0, 1)")));
    }
    let e = g.edge_count();
    let count = perturbation_count(fraction, e);
    if count == 0 {
        return Ok(g.clone());
    }
    if count >= e {
        return Err(Error::invalid(format!("removing {count} of {e} edges leaves none")));
    }
    let mut rng = seed.rng();
    let mut drop = vec![false; e];
    for i in index::sample(&mut rng, e, count) {
        drop[i] = true;
    }
    let kept = g.edges().iter().zip(&drop).filter(|(_, &d)| !d).map(|(&uv, _)| uv);
    rebuild(g, kept)
}

/// Adds `round(fraction * e)` edges chosen uniformly without replacement from
/// the non-adjacent node pairs.
pub fn perturb_add(g: &Graph, fraction: f64, seed: RngSeed) -> Result<Graph> {
    if !(fraction.is_finite() && fraction >= 0.0) {
        return Err(Error::invalid(format!("addition fraction {fraction} must be >= 0")));
    }
    let n = g.n();
    let e = g.edge_count();
    let count = perturbation_count(fraction, e);
    if count == 0 {
        return Ok(g.clone());
    }
    let mut candidates = Vec::with_capacity((n * n.saturating_sub(1) / 2).saturating_sub(e));
    for u in 0..n {
        let nb = g.neighbors(u);
        let mut cursor = nb.partition_point(|&v| v <= u);
        for v in u + 1..n {
            if cursor < nb.len() && nb[cursor] == v {
                cursor += 1;
            } else {
                candidates.push((u, v));
            }
        }
    }
    if count > candidates.len() {
        return Err(Error::invalid(format!(
            "cannot add {count} edges: only {} non-adjacent pairs",
            candidates.len()
        )));
    }
    let mut rng = seed.rng();
    let added = index::sample(&mut rng, candidates.len(), count).into_iter().map(|i| candidates[i]);
    rebuild(g, g.edges().iter().copied().chain(added))
}

fn rebuild<I: IntoIterator<Item = (usize, usize)>>(g: &Graph, edges: I) -> Result<Graph> {
    let out = Graph::from_edges(g.n(), edges)?;
    match g.names() {
        Some(names) => out.with_names(names.to_vec()),
        None => Ok(out),
    }
}
