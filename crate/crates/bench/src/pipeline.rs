//! Experiment pipelines behind the subcommands.
//!
//! Seeds: every random draw uses `seed.derive(stream ^ fnv1a(dataset), rep)`,
//! so a repetition sees the same stream whatever else the run contains.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use apcd::evaluation::{gr_score, score_partition, PartitionScore};
use apcd::louvain::{best_level, louvain};
use apcd::npso::{npso_generate, NpsoNetwork, NpsoParams};
use apcd::perturb::{perturb_add, perturb_remove};
use apcd::{
    graph_stats, largest_connected_component, preference_search, ApSettings, Graph, Kernel,
    Partition, RngSeed,
};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Method, PerturbMode};
use crate::error::{BenchError, BenchResult};
use crate::output::{summarize, Metric, ResultRow, StatsRow};
use crate::registry::{load_dataset, Dataset};

const STREAM_PERTURB: u64 = 0x7065_7274;
const STREAM_LOUVAIN: u64 = 0x6c6f_7576;
const STREAM_NPSO: u64 = 0x6e70_736f;

/// FNV-1a, used to give each dataset its own seed streams.
pub fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn stream_seed(seed: RngSeed, stream: u64, dataset: &str, rep: usize) -> RngSeed {
    seed.derive(stream ^ fnv1a(dataset), rep as u64)
}

/// Dataset name used for a generator grid entry, e.g. `npso_N100_m7_T0.1_g3_C3`.
pub fn npso_name(p: &NpsoParams) -> String {
    format!("npso_N{}_m{}_T{}_g{}_C{}", p.n, p.m, p.t, p.gamma, p.c)
}

/// Seed of repetition `rep` of a generator grid entry.
pub fn npso_seed(seed: RngSeed, p: &NpsoParams, rep: usize) -> RngSeed {
    stream_seed(seed, STREAM_NPSO, &npso_name(p), rep)
}

fn load_all(cfg: &ExperimentConfig) -> BenchResult<Vec<Dataset>> {
    cfg.datasets.iter().map(load_dataset).collect()
}

pub fn cmd_stats(cfg: &ExperimentConfig) -> BenchResult<Vec<StatsRow>> {
    let mut rows: Vec<StatsRow> = load_all(cfg)?
        .into_iter()
        .map(|d| StatsRow::new(&d.name, &graph_stats(&d.graph)))
        .collect();
    rows.sort_by(|a, b| a.dataset.cmp(&b.dataset));
    Ok(rows)
}

/// Topological GR-score per (dataset, kernel); for a configured generator
/// grid, geometric GR-score per repetition plus a mean row.
pub fn cmd_grscore(cfg: &ExperimentConfig) -> BenchResult<Vec<ResultRow>> {
    let datasets = load_all(cfg)?;
    let items: Vec<(&Dataset, Kernel)> =
        datasets.iter().flat_map(|d| cfg.kernels.iter().map(move |&k| (d, k))).collect();
    let mut rows: Vec<ResultRow> = items
        .par_iter()
        .map(|&(d, kernel)| {
            let wrap = |source| BenchError::Data { dataset: d.name.clone(), source };
            let dis = kernel.compute(&d.graph).map_err(wrap)?;
            let out = gr_score(&d.graph, &dis, None).map_err(wrap)?;
            Ok(ResultRow::new(&d.name, kernel.as_str(), Metric::Gr, Some(0), out.score)
                .with("mode", "topological")
                .with("success_rate", format!("{:.6}", out.success_rate)))
        })
        .collect::<BenchResult<_>>()?;

    if let Some(grid) = &cfg.npso_grid {
        let mut synthetic = Vec::new();
        for p in grid {
            let name = npso_name(p);
            let per_rep: Vec<Vec<ResultRow>> = (0..cfg.repetitions)
                .into_par_iter()
                .map(|rep| npso_gr_rows(cfg, p, &name, rep))
                .collect();
            synthetic.extend(per_rep.into_iter().flatten());
        }
        rows.extend(summarize(&synthetic));
        rows.extend(synthetic);
    }
    crate::output::sort_rows(&mut rows);
    Ok(rows)
}

fn npso_gr_rows(cfg: &ExperimentConfig, p: &NpsoParams, name: &str, rep: usize) -> Vec<ResultRow> {
    let net = match npso_generate(p, npso_seed(cfg.seed, p, rep)) {
        Ok(net) => net,
        Err(e) => {
            return cfg
                .kernels
                .iter()
                .map(|k| ResultRow::failed(name, k.as_str(), Metric::Gr, rep, &e.to_string()))
                .collect()
        }
    };
    let lengths = net.edge_lengths();
    cfg.kernels
        .iter()
        .map(|&kernel| {
            let out = kernel
                .compute(&net.graph)
                .and_then(|d| gr_score(&net.graph, &d, Some(&lengths)));
            match out {
                Ok(out) => ResultRow::new(name, kernel.as_str(), Metric::Gr, Some(rep), out.score)
                    .with("mode", "geometric")
                    .with("success_rate", format!("{:.6}", out.success_rate)),
                Err(e) => ResultRow::failed(name, kernel.as_str(), Metric::Gr, rep, &e.to_string()),
            }
        })
        .collect()
}

/// A detected partition scored against the truth.
#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub partition: Partition,
    pub score: PartitionScore,
    pub extra: Vec<(String, String)>,
}

/// Runs one method on a connected graph. AP searches the preference for
/// `truth.k()` communities; Louvain reports its best level.
pub fn detect(
    graph: &Graph,
    truth: &Partition,
    method: Method,
    ap: &ApSettings,
    louvain_seed: RngSeed,
) -> apcd::Result<Detection> {
    let mut extra = Vec::new();
    let partition = match method {
        Method::Ap(kernel) => {
            let d = kernel.compute(graph)?;
            let r = preference_search(&d, truth.k(), ap)?;
            extra.push(("target_k".into(), truth.k().to_string()));
            extra.push(("preference".into(), format!("{:.6}", r.preference)));
            extra.push(("iterations".into(), r.iterations.to_string()));
            extra.push(("converged".into(), r.converged.to_string()));
            r.labels
        }
        Method::Louvain => {
            let h = louvain(graph, louvain_seed)?;
            extra.push(("levels".into(), h.levels.len().to_string()));
            best_level(&h, truth)?.0
        }
    };
    let score = score_partition(&partition, truth)?;
    extra.push(("k".into(), partition.k().to_string()));
    extra.push(("adjusted".into(), score.adjusted.to_string()));
    Ok(Detection { partition, score, extra })
}

fn detection_row(dataset: &str, method: Method, rep: usize, det: Detection) -> ResultRow {
    let mut row = ResultRow::new(dataset, &method.to_string(), Metric::Nmi, Some(rep), det.score.value);
    row.extra.extend(det.extra);
    row
}

/// One row per (dataset, method) on the unperturbed networks.
pub fn cmd_detect(cfg: &ExperimentConfig) -> BenchResult<Vec<ResultRow>> {
    let datasets = load_all(cfg)?;
    for d in &datasets {
        d.require_truth()?;
    }
    let items: Vec<(&Dataset, Method)> =
        datasets.iter().flat_map(|d| cfg.methods.iter().map(move |&m| (d, m))).collect();
    let mut rows: Vec<ResultRow> = items
        .par_iter()
        .map(|&(d, method)| {
            let truth = d.truth.as_ref().expect("checked above");
            let seed = stream_seed(cfg.seed, STREAM_LOUVAIN, &d.name, 0);
            let det = detect(&d.graph, truth, method, &cfg.ap, seed).map_err(|source| {
                BenchError::Algorithm { dataset: d.name.clone(), method: method.to_string(), source }
            })?;
            Ok(detection_row(&d.name, method, 0, det))
        })
        .collect::<BenchResult<_>>()?;
    crate::output::sort_rows(&mut rows);
    Ok(rows)
}

/// Perturbed copy of a dataset: `(graph before LCC, LCC graph, LCC truth)`.
pub fn perturbed(
    d: &Dataset,
    mode: PerturbMode,
    fraction: f64,
    seed: RngSeed,
) -> apcd::Result<(Graph, Graph, Partition)> {
    let truth = d.truth.as_ref().ok_or_else(|| apcd::Error::InvalidArgument("no labels".into()))?;
    let g = match mode {
        PerturbMode::None => d.graph.clone(),
        PerturbMode::Remove => perturb_remove(&d.graph, fraction, seed)?,
        PerturbMode::Add => perturb_add(&d.graph, fraction, seed)?,
    };
    let (lcc, lcc_truth) = largest_connected_component(&g, Some(truth));
    Ok((g, lcc, lcc_truth.expect("labels given")))
}

/// Per-repetition detection on perturbed networks plus a mean row per
/// (dataset, method). The score of a repetition compares partitions on the
/// nodes of the perturbed network's largest component.
pub fn cmd_perturb(cfg: &ExperimentConfig) -> BenchResult<Vec<ResultRow>> {
    let datasets = load_all(cfg)?;
    for d in &datasets {
        d.require_truth()?;
    }
    let items: Vec<(&Dataset, usize)> =
        datasets.iter().flat_map(|d| (0..cfg.repetitions).map(move |r| (d, r))).collect();
    let per_item: Vec<Vec<ResultRow>> = items
        .par_iter()
        .map(|&(d, rep)| perturb_rows(cfg, d, rep))
        .collect();
    let reps: Vec<ResultRow> = per_item.into_iter().flatten().collect();
    let mut rows = summarize(&reps);
    rows.extend(reps);
    crate::output::sort_rows(&mut rows);
    Ok(rows)
}

fn perturb_rows(cfg: &ExperimentConfig, d: &Dataset, rep: usize) -> Vec<ResultRow> {
    let pseed = stream_seed(cfg.seed, STREAM_PERTURB, &d.name, rep);
    let lseed = stream_seed(cfg.seed, STREAM_LOUVAIN, &d.name, rep);
    let (g, lcc, truth) = match perturbed(d, cfg.perturbation, cfg.fraction, pseed) {
        Ok(x) => x,
        Err(e) => {
            return cfg
                .methods
                .iter()
                .map(|m| ResultRow::failed(&d.name, &m.to_string(), Metric::Nmi, rep, &e.to_string()))
                .collect()
        }
    };
    cfg.methods
        .iter()
        .map(|&method| match detect(&lcc, &truth, method, &cfg.ap, lseed) {
            Ok(det) => detection_row(&d.name, method, rep, det)
                .with("perturbation", cfg.perturbation.to_string())
                .with("edges", g.edge_count().to_string())
                .with("lcc_nodes", lcc.n().to_string()),
            Err(e) => ResultRow::failed(&d.name, &method.to_string(), Metric::Nmi, rep, &e.to_string()),
        })
        .collect()
}

/// Writes `<name>/rep<k>.{edges,labels,coords}` for one generated network.
pub fn write_network(dir: &Path, rep: usize, net: &NpsoNetwork) -> BenchResult<()> {
    fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let file = |ext: &str| {
        let path = dir.join(format!("rep{rep}.{ext}"));
        File::create(&path).map(BufWriter::new).map_err(|e| BenchError::io(&path, e)).map(|f| (f, path))
    };
    let (f, path) = file("edges")?;
    net.graph.write_edge_list(f).map_err(|e| BenchError::io(&path, e))?;
    let (f, path) = file("labels")?;
    net.graph.write_labels(&net.truth, f).map_err(|e| BenchError::io(&path, e))?;
    let (f, path) = file("coords")?;
    net.write_coordinates(f).map_err(|e| BenchError::io(&path, e))?;
    Ok(())
}

/// Generates the grid, writes every network under `<output_dir>/npso/`, and
/// scores each method per network; mean rows carry the standard error.
pub fn cmd_npso(cfg: &ExperimentConfig) -> BenchResult<Vec<ResultRow>> {
    let grid = cfg.grid();
    let items: Vec<(&NpsoParams, usize)> =
        grid.iter().flat_map(|p| (0..cfg.repetitions).map(move |r| (p, r))).collect();
    let per_item: Vec<BenchResult<Vec<ResultRow>>> = items
        .par_iter()
        .map(|&(p, rep)| npso_rows(cfg, p, rep))
        .collect();
    let mut reps = Vec::new();
    for r in per_item {
        reps.extend(r?);
    }
    let mut rows = summarize(&reps);
    rows.extend(reps);
    crate::output::sort_rows(&mut rows);
    Ok(rows)
}

fn npso_rows(cfg: &ExperimentConfig, p: &NpsoParams, rep: usize) -> BenchResult<Vec<ResultRow>> {
    let name = npso_name(p);
    let net = match npso_generate(p, npso_seed(cfg.seed, p, rep)) {
        Ok(net) => net,
        Err(e) => {
            return Ok(cfg
                .methods
                .iter()
                .map(|m| ResultRow::failed(&name, &m.to_string(), Metric::Nmi, rep, &e.to_string()))
                .collect())
        }
    };
    write_network(&cfg.output_dir.join("npso").join(&name), rep, &net)?;
    let lseed = stream_seed(cfg.seed, STREAM_LOUVAIN, &name, rep);
    Ok(cfg
        .methods
        .iter()
        .map(|&method| match detect(&net.graph, &net.truth, method, &cfg.ap, lseed) {
            Ok(det) => detection_row(&name, method, rep, det),
            Err(e) => ResultRow::failed(&name, &method.to_string(), Metric::Nmi, rep, &e.to_string()),
        })
        .collect())
}
