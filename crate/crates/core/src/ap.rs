//! Affinity propagation (Frey & Dueck message passing) over a dissimilarity
//! matrix, and a binary search on the shared preference that targets a given
//! number of communities.

use crate::dissimilarity::DissimilarityMatrix;
use crate::error::{Error, Probe, ProbeLog, Result};
use crate::partition::Partition;

/// Message-passing controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApSettings {
    /// Weight of the previous message in each update, in `[0.5, 1)`.
    pub damping: f64,
    pub max_iterations: usize,
    /// Iterations the exemplar set must stay unchanged to count as converged.
    pub convergence_window: usize,
    /// Halvings performed by [`preference_search`] per bracketing round.
    pub preference_search_steps: usize,
}

impl Default for ApSettings {
    fn default() -> Self {
        ApSettings {
            damping: 0.9,
            max_iterations: 2000,
            convergence_window: 50,
            preference_search_steps: 30,
        }
    }
}

impl ApSettings {
    pub fn validate(&self) -> Result<()> {
        if !(0.5..1.0).contains(&self.damping) {
            return Err(Error::invalid(format!("damping {} outside [0.5, 1)", self.damping)));
        }
        if self.convergence_window < 1 || self.max_iterations < self.convergence_window {
            return Err(Error::invalid(format!(
                "need max_iterations ({}) >= convergence_window ({}) >= 1",
                self.max_iterations, self.convergence_window
            )));
        }
        if self.preference_search_steps < 1 {
            return Err(Error::invalid("preference_search_steps must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApResult {
    pub labels: Partition,
    /// Exemplar nodes, ascending.
    pub exemplars: Vec<usize>,
    pub iterations: usize,
    pub converged: bool,
    /// Shared preference the run used.
    pub preference: f64,
}

impl ApResult {
    pub fn communities(&self) -> usize {
        self.exemplars.len()
    }
}

/// Exemplar count oscillating with period two for this many iterations
/// triggers one restart with higher damping.
const OSCILLATION_RUN: usize = 100;
const OSCILLATION_DAMPING_STEP: f64 = 0.05;
const MAX_DAMPING: f64 = 0.99;

/// Runs affinity propagation with similarities `-d` and a shared preference.
///
/// Returns [`Error::Degenerate`] when no exemplar emerged within
/// `max_iterations`.
pub fn ap_run(d: &DissimilarityMatrix, preference: f64, settings: &ApSettings) -> Result<ApResult> {
    if !d.all_finite() {
        return Err(Error::invalid("dissimilarity matrix has non-finite entries"));
    }
    let n = d.n();
    let similarity: Vec<f64> = d.as_slice().iter().map(|&x| -x).collect();
    run_similarity(n, similarity, preference, settings)
}

/// Affinity propagation on a raw row-major similarity matrix; the diagonal is
/// overwritten with `preference`.
pub fn ap_run_similarity(
    n: usize,
    similarity: Vec<f64>,
    preference: f64,
    settings: &ApSettings,
) -> Result<ApResult> {
    if similarity.len() != n * n {
        return Err(Error::SizeMismatch { expected: n * n, found: similarity.len() });
    }
    if similarity.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("similarity matrix has non-finite entries"));
    }
    run_similarity(n, similarity, preference, settings)
}

fn run_similarity(
    n: usize,
    mut s: Vec<f64>,
    preference: f64,
    settings: &ApSettings,
) -> Result<ApResult> {
    settings.validate()?;
    if !preference.is_finite() {
        return Err(Error::invalid(format!("preference {preference} is not finite")));
    }
    if n == 0 {
        return Err(Error::invalid("empty similarity matrix"));
    }
    for k in 0..n {
        s[k * n + k] = preference;
    }
    if n == 1 {
        return Ok(ApResult {
            labels: Partition::single(1),
            exemplars: vec![0],
            iterations: 0,
            converged: true,
            preference,
        });
    }

    let mut outcome = propagate(n, &s, settings.damping, settings);
    if outcome.oscillating && settings.damping < MAX_DAMPING {
        let damping = (settings.damping + OSCILLATION_DAMPING_STEP).min(MAX_DAMPING);
        outcome = propagate(n, &s, damping, settings);
    }
    if outcome.exemplars.is_empty() {
        return Err(Error::Degenerate { iterations: outcome.iterations });
    }
    let (exemplars, labels) = assign(n, &s, outcome.exemplars);
    Ok(ApResult {
        labels,
        exemplars,
        iterations: outcome.iterations,
        converged: outcome.converged,
        preference,
    })
}

struct Outcome {
    exemplars: Vec<usize>,
    iterations: usize,
    converged: bool,
    oscillating: bool,
}

fn propagate(n: usize, s: &[f64], damping: f64, settings: &ApSettings) -> Outcome {
    let mut r = vec![0.0; n * n];
    let mut a = vec![0.0; n * n];
    let mut column = vec![0.0; n];
    let mut current = vec![false; n];
    let mut previous = vec![false; n];
    let mut stable = 0usize;
    let mut counts: Vec<usize> = Vec::new();
    let mut oscillation = 0usize;
    let keep = damping;
    let fresh = 1.0 - damping;

    let mut iterations = 0;
    let mut converged = false;
    while iterations < settings.max_iterations {
        iterations += 1;

        // responsibilities
        for i in 0..n {
            let row_s = &s[i * n..(i + 1) * n];
            let row_a = &a[i * n..(i + 1) * n];
            let (mut best, mut second, mut arg) = (f64::NEG_INFINITY, f64::NEG_INFINITY, 0);
            for k in 0..n {
                let v = row_a[k] + row_s[k];
                if v > best {
                    second = best;
                    best = v;
                    arg = k;
                } else if v > second {
                    second = v;
                }
            }
            let row_r = &mut r[i * n..(i + 1) * n];
            for k in 0..n {
                let competitor = if k == arg { second } else { best };
                row_r[k] = keep * row_r[k] + fresh * (row_s[k] - competitor);
            }
        }

        // availabilities
        column.fill(0.0);
        for i in 0..n {
            for k in 0..n {
                let v = r[i * n + k];
                column[k] += if i == k { v } else { v.max(0.0) };
            }
        }
        for i in 0..n {
            for k in 0..n {
                let v = r[i * n + k];
                let fresh_a = if i == k {
                    column[k] - v
                } else {
                    (column[k] - v.max(0.0)).min(0.0)
                };
                let slot = &mut a[i * n + k];
                *slot = keep * *slot + fresh * fresh_a;
            }
        }

        std::mem::swap(&mut current, &mut previous);
        let mut count = 0;
        for k in 0..n {
            current[k] = r[k * n + k] + a[k * n + k] > 0.0;
            count += usize::from(current[k]);
        }
        if iterations > 1 && current == previous {
            stable += 1;
        } else {
            stable = 0;
        }
        if stable + 1 >= settings.convergence_window && count > 0 {
            converged = true;
            break;
        }

        counts.push(count);
        let t = counts.len();
        if t >= 3 && counts[t - 1] == counts[t - 3] && counts[t - 1] != counts[t - 2] {
            oscillation += 1;
            if oscillation >= OSCILLATION_RUN {
                return Outcome {
                    exemplars: indices(&current),
                    iterations,
                    converged: false,
                    oscillating: true,
                };
            }
        } else {
            oscillation = 0;
        }
    }
    Outcome { exemplars: indices(&current), iterations, converged, oscillating: false }
}

fn indices(flags: &[bool]) -> Vec<usize> {
    flags.iter().enumerate().filter_map(|(k, &f)| f.then_some(k)).collect()
}

/// Nearest-exemplar assignment followed by one refinement pass that
/// re-elects, inside each cluster, the member with the largest summed
/// similarity from the other members. Ties go to the lower index.
fn assign(n: usize, s: &[f64], mut exemplars: Vec<usize>) -> (Vec<usize>, Partition) {
    let nearest = |exemplars: &[usize]| -> Vec<usize> {
        let mut slot = vec![usize::MAX; n];
        for (c, &k) in exemplars.iter().enumerate() {
            slot[k] = c;
        }
        (0..n)
            .map(|i| {
                if slot[i] != usize::MAX {
                    return slot[i];
                }
                let mut best = 0;
                for c in 1..exemplars.len() {
                    if s[i * n + exemplars[c]] > s[i * n + exemplars[best]] {
                        best = c;
                    }
                }
                best
            })
            .collect()
    };

    let clusters = nearest(&exemplars);
    let mut members = vec![Vec::new(); exemplars.len()];
    for (i, &c) in clusters.iter().enumerate() {
        members[c].push(i);
    }
    for (c, group) in members.iter().enumerate() {
        let mut best = exemplars[c];
        let mut best_sum = f64::NEG_INFINITY;
        for &j in group {
            let sum: f64 = group.iter().map(|&i| s[i * n + j]).sum();
            if sum > best_sum {
                best_sum = sum;
                best = j;
            }
        }
        exemplars[c] = best;
    }
    exemplars.sort_unstable();
    let clusters = nearest(&exemplars);
    (exemplars, Partition::from_labels(clusters))
}

/// Binary search on the shared preference for a result with `target_k`
/// communities.
///
/// The initial bracket is `[hi - 2 (d_max - d_min) n, hi]` with `hi` the
/// largest off-diagonal similarity. A probe with more communities than the
/// target lowers the upper end, anything else (fewer, or no exemplar at all)
/// raises the lower end. When a round of `preference_search_steps` probes
/// never crosses the target, the bracket is moved past the exhausted end (the
/// upper end halves towards 0, the lower end doubles the span) and searched
/// again. The search stops early on an exact hit; otherwise the probe with
/// the community count closest to `target_k` wins, ties going to fewer
/// communities and then to the earlier probe.
pub fn preference_search(
    d: &DissimilarityMatrix,
    target_k: usize,
    settings: &ApSettings,
) -> Result<ApResult> {
    settings.validate()?;
    let n = d.n();
    if target_k < 1 || target_k > n {
        return Err(Error::invalid(format!("target_k {target_k} outside 1..={n}")));
    }
    if !d.all_finite() {
        return Err(Error::invalid("dissimilarity matrix has non-finite entries"));
    }
    let Some((d_min, d_max)) = d.off_diagonal_range() else {
        return ap_run(d, 0.0, settings);
    };

    let mut hi = -d_min;
    let mut span = 2.0 * (d_max - d_min) * n as f64;
    if span <= 0.0 {
        span = d_min.max(1.0);
    }
    let mut lo = hi - span;

    const MAX_ROUNDS: usize = 8;
    let mut probes = Vec::new();
    let mut best: Option<((usize, usize), ApResult)> = None;
    for _ in 0..MAX_ROUNDS {
        let (round_lo, round_hi) = (lo, hi);
        let (mut above, mut below) = (false, false);
        for _ in 0..settings.preference_search_steps {
            let mid = 0.5 * (lo + hi);
            match ap_run(d, mid, settings) {
                Ok(result) => {
                    let k = result.communities();
                    probes.push(Probe { preference: mid, communities: Some(k) });
                    if k == target_k {
                        return Ok(result);
                    }
                    let key = (k.abs_diff(target_k), k);
                    if best.as_ref().is_none_or(|(b, _)| key < *b) {
                        best = Some((key, result));
                    }
                    if k > target_k {
                        above = true;
                        hi = mid;
                    } else {
                        below = true;
                        lo = mid;
                    }
                }
                Err(Error::Degenerate { .. }) => {
                    probes.push(Probe { preference: mid, communities: None });
                    below = true;
                    lo = mid;
                }
                Err(e) => return Err(e),
            }
        }
        if above && below {
            break;
        }
        if above {
            // every probe had too many communities
            hi = round_lo;
            lo = round_hi - 2.0 * (round_hi - round_lo);
        } else {
            lo = round_hi;
            hi = 0.5 * round_hi;
        }
    }
    best.map(|(_, r)| r).ok_or(Error::SearchFailed(ProbeLog(probes)))
}
