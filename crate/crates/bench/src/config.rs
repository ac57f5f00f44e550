//! Experiment configuration: a TOML key-value file overridden by flags.
//!
//! ```toml
//! seed = 7
//! output_dir = "results"
//! data_root = "data"            # manifest datasets found here are used when
//!                               # no [[dataset]] table is given
//! kernels = ["EBC", "RA", "SP"]
//! methods = ["AP", "Louvain"]   # or explicit names such as "LGI-AP-RA"
//! reps = 20
//! perturbation = "remove"       # none | remove | add
//! fraction = 0.1
//!
//! [ap]
//! damping = 0.9
//! max_iterations = 2000
//! convergence_window = 50
//! preference_search_steps = 30
//!
//! [[dataset]]
//! name = "karate"
//! edges = "data/karate/karate.edges"
//! labels = "data/karate/karate.labels"
//!
//! [[npso]]
//! n = 100
//! m = 7
//! t = 0.1
//! gamma = 3.0
//! c = 3
//! ```
//!
//! Relative paths resolve against the directory holding the file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use apcd::npso::NpsoParams;
use apcd::{ApSettings, Kernel, RngSeed};
use serde::Deserialize;

use crate::error::{BenchError, BenchResult};
use crate::registry::{available_datasets, DatasetSpec};

/// Repetitions used unless `reps` is given: desk scale and `--full`.
pub const DESK_REPS: usize = 20;
pub const FULL_REPS: usize = 100;

/// Community-detection method compared by the pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Ap(Kernel),
    Louvain,
}

impl Method {
    /// Affinity propagation over every kernel, in table order.
    pub fn all_ap() -> Vec<Method> {
        [Kernel::Ebc, Kernel::Ra, Kernel::Jaccard, Kernel::Cn, Kernel::Esp, Kernel::Sp]
            .into_iter()
            .map(Method::Ap)
            .collect()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Ap(k @ (Kernel::Ebc | Kernel::Ra)) => write!(f, "LGI-AP-{k}"),
            Method::Ap(k) => write!(f, "{k}-AP"),
            Method::Louvain => f.write_str("Louvain"),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        if upper == "LOUVAIN" {
            return Ok(Method::Louvain);
        }
        let kernel = upper
            .strip_prefix("LGI-AP-")
            .or_else(|| upper.strip_suffix("-AP"))
            .ok_or_else(|| format!("unknown method `{s}`"))?;
        kernel.parse::<Kernel>().map(Method::Ap).map_err(|_| format!("unknown method `{s}`"))
    }
}

/// A method selector: the `AP` family (expanded over the configured kernels)
/// or one explicit method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSelector {
    AllAp,
    One(Method),
}

impl FromStr for MethodSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("AP") {
            Ok(MethodSelector::AllAp)
        } else {
            s.parse().map(MethodSelector::One)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PerturbMode {
    #[default]
    None,
    Remove,
    Add,
}

impl FromStr for PerturbMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(PerturbMode::None),
            "remove" => Ok(PerturbMode::Remove),
            "add" => Ok(PerturbMode::Add),
            _ => Err(format!("unknown perturbation `{s}` (none, remove, add)")),
        }
    }
}

impl fmt::Display for PerturbMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PerturbMode::None => "none",
            PerturbMode::Remove => "remove",
            PerturbMode::Add => "add",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub datasets: Vec<DatasetSpec>,
    pub kernels: Vec<Kernel>,
    pub methods: Vec<Method>,
    pub perturbation: PerturbMode,
    pub fraction: f64,
    pub repetitions: usize,
    /// Explicit generator grid; `None` lets `npso` fall back to [`default_grid`].
    pub npso_grid: Option<Vec<NpsoParams>>,
    pub seed: RngSeed,
    pub ap: ApSettings,
    pub output_dir: PathBuf,
    pub full: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            datasets: Vec::new(),
            kernels: Kernel::ALL.to_vec(),
            methods: {
                let mut m = Method::all_ap();
                m.push(Method::Louvain);
                m
            },
            perturbation: PerturbMode::None,
            fraction: 0.1,
            repetitions: DESK_REPS,
            npso_grid: None,
            seed: RngSeed(0),
            ap: ApSettings::default(),
            output_dir: PathBuf::from("results"),
            full: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> BenchResult<()> {
        if self.repetitions < 1 {
            return Err(BenchError::Config("repetitions must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&self.fraction) {
            return Err(BenchError::Config(format!("fraction {} outside [0, 1)", self.fraction)));
        }
        self.ap.validate().map_err(|e| BenchError::Config(e.to_string()))?;
        if let Some(grid) = &self.npso_grid {
            for p in grid {
                p.validate().map_err(|e| BenchError::Config(e.to_string()))?;
            }
        }
        for d in &self.datasets {
            for path in std::iter::once(&d.edges).chain(&d.labels) {
                if !path.is_file() {
                    return Err(BenchError::io(
                        path,
                        std::io::Error::new(std::io::ErrorKind::NotFound, "file not found"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The generator grid to run: the configured one, else [`default_grid`].
    pub fn grid(&self) -> Vec<NpsoParams> {
        self.npso_grid.clone().unwrap_or_else(|| default_grid(self.full))
    }
}

/// `gamma = 3, m = 7, T in {0.1, 0.3, 0.5}, C in {3, 6, 9}` with
/// `N in {100, 500}`, or `{100, 500, 1000}` at full scale.
pub fn default_grid(full: bool) -> Vec<NpsoParams> {
    let sizes: &[usize] = if full { &[100, 500, 1000] } else { &[100, 500] };
    let mut grid = Vec::new();
    for &n in sizes {
        for t in [0.1, 0.3, 0.5] {
            for c in [3, 6, 9] {
                grid.push(NpsoParams { n, m: 7, t, gamma: 3.0, c });
            }
        }
    }
    grid
}

/// Command-line values; every `Some` replaces the file value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub kernels: Option<Vec<Kernel>>,
    pub methods: Option<Vec<MethodSelector>>,
    pub repetitions: Option<usize>,
    pub fraction: Option<f64>,
    pub perturbation: Option<PerturbMode>,
    pub full: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    seed: Option<u64>,
    output_dir: Option<PathBuf>,
    data_root: Option<PathBuf>,
    kernels: Option<Vec<String>>,
    methods: Option<Vec<String>>,
    reps: Option<usize>,
    perturbation: Option<String>,
    fraction: Option<f64>,
    full: Option<bool>,
    ap: Option<FileAp>,
    #[serde(default, rename = "dataset")]
    datasets: Vec<FileDataset>,
    npso: Option<Vec<FileNpso>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileAp {
    damping: Option<f64>,
    max_iterations: Option<usize>,
    convergence_window: Option<usize>,
    preference_search_steps: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDataset {
    name: String,
    edges: PathBuf,
    labels: Option<PathBuf>,
    threshold: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileNpso {
    n: usize,
    m: usize,
    t: f64,
    gamma: f64,
    c: usize,
}

fn parse_list<T: FromStr<Err = String>>(items: &[String]) -> BenchResult<Vec<T>> {
    items.iter().map(|s| s.parse().map_err(BenchError::Config)).collect()
}

fn parse_kernels(items: &[String]) -> BenchResult<Vec<Kernel>> {
    items
        .iter()
        .map(|s| s.parse::<Kernel>().map_err(|e| BenchError::Config(e.to_string())))
        .collect()
}

/// Expands selectors over `kernels`, dropping duplicates but keeping order.
pub fn resolve_methods(selectors: &[MethodSelector], kernels: &[Kernel]) -> Vec<Method> {
    let mut out = Vec::new();
    for s in selectors {
        let expanded = match s {
            MethodSelector::AllAp => Method::all_ap()
                .into_iter()
                .filter(|m| matches!(m, Method::Ap(k) if kernels.contains(k)))
                .collect(),
            MethodSelector::One(m) => vec![*m],
        };
        for m in expanded {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// Builds the configuration from an optional file plus flag overrides.
/// Without a file or `[[dataset]]` tables, every manifest dataset found under
/// `data_root` (default `data`) is used.
pub fn load_config(path: Option<&Path>, overrides: &Overrides) -> BenchResult<ExperimentConfig> {
    let (file, base) = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| BenchError::io(p, e))?;
            let file: FileConfig = toml::from_str(&text)
                .map_err(|e| BenchError::Config(format!("{}: {e}", p.display())))?;
            (file, p.parent().map(Path::to_path_buf).unwrap_or_default())
        }
        None => (FileConfig::default(), PathBuf::new()),
    };
    let resolve = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };

    let mut cfg = ExperimentConfig::default();
    cfg.full = overrides.full || file.full.unwrap_or(false);
    if cfg.full {
        cfg.repetitions = FULL_REPS;
    }
    if let Some(k) = &file.kernels {
        cfg.kernels = parse_kernels(k)?;
    }
    if let Some(k) = &overrides.kernels {
        cfg.kernels = k.clone();
    }
    let selectors = match (&overrides.methods, &file.methods) {
        (Some(m), _) => m.clone(),
        (None, Some(m)) => parse_list(m)?,
        (None, None) => vec![MethodSelector::AllAp, MethodSelector::One(Method::Louvain)],
    };
    cfg.methods = resolve_methods(&selectors, &cfg.kernels);

    cfg.seed = RngSeed(overrides.seed.or(file.seed).unwrap_or(0));
    cfg.repetitions = overrides.repetitions.or(file.reps).unwrap_or(cfg.repetitions);
    cfg.fraction = overrides.fraction.or(file.fraction).unwrap_or(cfg.fraction);
    cfg.perturbation = match (overrides.perturbation, &file.perturbation) {
        (Some(m), _) => m,
        (None, Some(s)) => s.parse().map_err(BenchError::Config)?,
        (None, None) => PerturbMode::None,
    };
    if let Some(dir) = overrides.output_dir.clone() {
        cfg.output_dir = dir;
    } else if let Some(dir) = file.output_dir {
        cfg.output_dir = resolve(dir);
    }
    if let Some(ap) = file.ap {
        let d = ApSettings::default();
        cfg.ap = ApSettings {
            damping: ap.damping.unwrap_or(d.damping),
            max_iterations: ap.max_iterations.unwrap_or(d.max_iterations),
            convergence_window: ap.convergence_window.unwrap_or(d.convergence_window),
            preference_search_steps: ap.preference_search_steps.unwrap_or(d.preference_search_steps),
        };
    }
    cfg.datasets = if file.datasets.is_empty() {
        available_datasets(&resolve(file.data_root.unwrap_or_else(|| PathBuf::from("data"))))
    } else {
        file.datasets
            .into_iter()
            .map(|d| DatasetSpec {
                name: d.name,
                edges: resolve(d.edges),
                labels: d.labels.map(&resolve),
                threshold: d.threshold,
            })
            .collect()
    };
    cfg.npso_grid = file.npso.map(|grid| {
        grid.into_iter()
            .map(|p| NpsoParams { n: p.n, m: p.m, t: p.t, gamma: p.gamma, c: p.c })
            .collect()
    });
    cfg.validate()?;
    Ok(cfg)
}
