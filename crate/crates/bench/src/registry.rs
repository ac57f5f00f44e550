//! Dataset loading and the fetch manifest for the real-network corpus.
//!
//! Only Zachary's karate club ships with the repository. The other networks
//! are listed in [`MANIFEST`] (mirrored in `data/MANIFEST.toml`) with their
//! public source and the preprocessing needed to rebuild them.

use std::fs;
use std::path::{Path, PathBuf};

use apcd::{largest_connected_component, load_edge_list, Graph, Partition};

use crate::error::{BenchError, BenchResult};

/// Where a dataset lives on disk and how to read it.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub name: String,
    pub edges: PathBuf,
    pub labels: Option<PathBuf>,
    /// Weighted edge list: keep `u v w` lines with `w >= threshold`.
    pub threshold: Option<f64>,
}

impl DatasetSpec {
    pub fn new(name: impl Into<String>, edges: impl Into<PathBuf>) -> Self {
        DatasetSpec { name: name.into(), edges: edges.into(), labels: None, threshold: None }
    }

    pub fn with_labels(mut self, labels: impl Into<PathBuf>) -> Self {
        self.labels = Some(labels.into());
        self
    }
}

/// A network reduced to its largest connected component.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub graph: Graph,
    pub truth: Option<Partition>,
}

impl Dataset {
    pub fn require_truth(&self) -> BenchResult<&Partition> {
        self.truth.as_ref().ok_or_else(|| BenchError::MissingLabels(self.name.clone()))
    }
}

fn read(path: &Path) -> BenchResult<String> {
    fs::read_to_string(path).map_err(|e| BenchError::io(path, e))
}

pub fn load_dataset(spec: &DatasetSpec) -> BenchResult<Dataset> {
    let mut text = read(&spec.edges)?;
    if let Some(threshold) = spec.threshold {
        text = threshold_edges(&text, threshold)
            .map_err(|source| BenchError::Parse { path: spec.edges.clone(), source })?;
    }
    // parse the edges alone first so errors name the right file
    let (mut graph, mut truth) = load_edge_list(&text, None)
        .map_err(|source| BenchError::Parse { path: spec.edges.clone(), source })?;
    if let Some(path) = &spec.labels {
        let labels = read(path)?;
        (graph, truth) = load_edge_list(&text, Some(&labels))
            .map_err(|source| BenchError::Parse { path: path.clone(), source })?;
    }
    let (graph, truth) = largest_connected_component(&graph, truth.as_ref());
    Ok(Dataset { name: spec.name.clone(), graph, truth })
}

/// Turns a weighted edge list (`u v w` per line, extra columns ignored) into a
/// plain one, keeping links with `w >= threshold`. Direction is dropped by the
/// graph builder, which also merges reciprocal links.
pub fn threshold_edges(text: &str, threshold: f64) -> apcd::Result<String> {
    let mut out = String::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() < 3 {
            return Err(apcd::Error::Parse {
                line: i + 1,
                message: format!("expected `u v weight`, found {} tokens", tokens.len()),
            });
        }
        let w: f64 = tokens[2].parse().map_err(|_| apcd::Error::Parse {
            line: i + 1,
            message: format!("weight `{}` is not a number", tokens[2]),
        })?;
        if w >= threshold {
            out.push_str(tokens[0]);
            out.push(' ');
            out.push_str(tokens[1]);
            out.push('\n');
        }
    }
    Ok(out)
}

/// One row of the fetch manifest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManifestEntry {
    pub name: &'static str,
    pub source: &'static str,
    /// Minimum link weight kept, for weighted sources.
    pub threshold: Option<f64>,
    pub preprocessing: &'static str,
    /// Nodes and edges after preprocessing and LCC extraction.
    pub nodes: usize,
    pub edges: usize,
    pub communities: usize,
}

const NEWMAN: &str = "http://www-personal.umich.edu/~mejn/netdata/";
const OPSAHL: &str = "https://toreopsahl.com/datasets/#Cross_Parker";

pub const MANIFEST: [ManifestEntry; 8] = [
    ManifestEntry {
        name: "karate",
        source: NEWMAN,
        threshold: None,
        preprocessing: "bundled in data/karate; labels: club split (Mr. Hi vs Officer)",
        nodes: 34,
        edges: 78,
        communities: 2,
    },
    ManifestEntry {
        name: "opsahl_8",
        source: OPSAHL,
        threshold: Some(2.0),
        preprocessing: "consulting company, information-seeking frequency; keep weight >= 2 (seldom), ignore direction",
        nodes: 43,
        edges: 193,
        communities: 7,
    },
    ManifestEntry {
        name: "opsahl_9",
        source: OPSAHL,
        threshold: Some(4.0),
        preprocessing: "consulting company, perceived expertise; keep weight >= 4 (agree), ignore direction",
        nodes: 44,
        edges: 348,
        communities: 7,
    },
    ManifestEntry {
        name: "opsahl_10",
        source: OPSAHL,
        threshold: Some(4.0),
        preprocessing: "manufacturing research team, information provided; keep weight >= 4 (frequently), ignore direction",
        nodes: 77,
        edges: 518,
        communities: 4,
    },
    ManifestEntry {
        name: "opsahl_11",
        source: OPSAHL,
        threshold: Some(4.0),
        preprocessing: "manufacturing research team, knowledge awareness; keep weight >= 4 (somewhat agree), ignore direction",
        nodes: 77,
        edges: 1088,
        communities: 4,
    },
    ManifestEntry {
        name: "polbooks",
        source: NEWMAN,
        threshold: None,
        preprocessing: "GML; labels from the `value` attribute (conservative, neutral, liberal)",
        nodes: 105,
        edges: 441,
        communities: 3,
    },
    ManifestEntry {
        name: "football",
        source: NEWMAN,
        threshold: None,
        preprocessing: "GML; labels from the `value` attribute (conference)",
        nodes: 115,
        edges: 613,
        communities: 12,
    },
    ManifestEntry {
        name: "polblogs",
        source: NEWMAN,
        threshold: None,
        preprocessing: "GML, directed; drop direction and self-loops, keep the LCC; labels from `value` (left, right)",
        nodes: 1222,
        edges: 16714,
        communities: 2,
    },
];

pub fn manifest_entry(name: &str) -> Option<&'static ManifestEntry> {
    MANIFEST.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// Conventional layout `<root>/<name>/<name>.edges` (+ `.labels`), with the
/// manifest threshold applied to weighted sources.
pub fn conventional_spec(root: &Path, name: &str) -> DatasetSpec {
    let dir = root.join(name);
    let labels = dir.join(format!("{name}.labels"));
    DatasetSpec {
        name: name.to_owned(),
        edges: dir.join(format!("{name}.edges")),
        labels: labels.exists().then_some(labels),
        threshold: manifest_entry(name).and_then(|e| e.threshold),
    }
}

/// Manifest datasets present under `root`.
pub fn available_datasets(root: &Path) -> Vec<DatasetSpec> {
    MANIFEST
        .iter()
        .map(|e| conventional_spec(root, e.name))
        .filter(|s| s.edges.exists())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_keeps_heavy_links() {
        let text = "# weighted\n1 2 1\n2 3 2\n3 1 5 extra\n";
        assert_eq!(threshold_edges(text, 2.0).unwrap(), "2 3\n3 1\n");
        assert!(threshold_edges("1 2\n", 1.0).is_err());
        assert!(threshold_edges("1 2 x\n", 1.0).is_err());
    }

    #[test]
    fn manifest_lookup() {
        assert_eq!(manifest_entry("Opsahl_8").unwrap().threshold, Some(2.0));
        assert_eq!(manifest_entry("opsahl_11").unwrap().threshold, Some(4.0));
        assert!(manifest_entry("unknown").is_none());
        assert_eq!(MANIFEST.len(), 8);
    }

    #[test]
    fn manifest_file_matches_the_table() {
        let file: toml::Table = include_str!("../../../data/MANIFEST.toml").parse().unwrap();
        let rows = file["dataset"].as_array().unwrap();
        assert_eq!(rows.len(), MANIFEST.len());
        for (row, entry) in rows.iter().zip(&MANIFEST) {
            assert_eq!(row["name"].as_str(), Some(entry.name));
            assert_eq!(row["source"].as_str(), Some(entry.source));
            assert_eq!(row.get("threshold").and_then(|t| t.as_float()), entry.threshold);
            assert_eq!(row["preprocessing"].as_str(), Some(entry.preprocessing));
            assert_eq!(row["nodes"].as_integer(), Some(entry.nodes as i64));
            assert_eq!(row["edges"].as_integer(), Some(entry.edges as i64));
            assert_eq!(row["communities"].as_integer(), Some(entry.communities as i64));
        }
    }
}
