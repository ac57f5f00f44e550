//! Result rows and their CSV encoding.
//!
//! `stats.csv`: `dataset,n,e,clustering,gamma,m,kmin` (gamma and kmin empty
//! when no power-law fit exists).
//!
//! `grscore.csv`, `detect.csv`, `perturb.csv`, `npso.csv`:
//! `dataset,method,metric,repetition,value,stderr,extra`, where `repetition`
//! is an index or `mean`, `stderr` is filled on mean rows only and `extra` is
//! a `key=value;...` list. Failed runs leave `value` empty and carry
//! `status=failed`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use apcd::GraphStats;

use crate::error::BenchResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Nmi,
    Gr,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Nmi => "NMI",
            Metric::Gr => "GR",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub dataset: String,
    pub method: String,
    pub metric: Metric,
    /// `None` marks a mean row.
    pub repetition: Option<usize>,
    pub value: Option<f64>,
    pub stderr: Option<f64>,
    pub extra: Vec<(String, String)>,
}

impl ResultRow {
    pub fn new(dataset: &str, method: &str, metric: Metric, repetition: Option<usize>, value: f64) -> Self {
        ResultRow {
            dataset: dataset.to_owned(),
            method: method.to_owned(),
            metric,
            repetition,
            value: Some(value),
            stderr: None,
            extra: Vec::new(),
        }
    }

    pub fn failed(dataset: &str, method: &str, metric: Metric, repetition: usize, error: &str) -> Self {
        ResultRow {
            value: None,
            ..ResultRow::new(dataset, method, metric, Some(repetition), 0.0)
        }
        .with("status", "failed")
        .with("error", error.replace([';', '\n'], " "))
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.extra.push((key.to_owned(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.extra.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn is_mean(&self) -> bool {
        self.repetition.is_none()
    }

    fn record(&self) -> [String; 7] {
        let extra: Vec<String> = self.extra.iter().map(|(k, v)| format!("{k}={v}")).collect();
        [
            self.dataset.clone(),
            self.method.clone(),
            self.metric.to_string(),
            self.repetition.map_or_else(|| "mean".to_owned(), |r| r.to_string()),
            self.value.map_or_else(String::new, |v| format!("{v:.6}")),
            self.stderr.map_or_else(String::new, |v| format!("{v:.6}")),
            extra.join(";"),
        ]
    }
}

pub const RESULT_HEADER: [&str; 7] =
    ["dataset", "method", "metric", "repetition", "value", "stderr", "extra"];

/// Sorts by dataset, method, metric, then repetition with the mean row last.
pub fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| {
        a.dataset
            .cmp(&b.dataset)
            .then_with(|| a.method.cmp(&b.method))
            .then_with(|| a.metric.cmp(&b.metric))
            .then_with(|| match (a.repetition, b.repetition) {
                (Some(x), Some(y)) => x.cmp(&y),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => Ordering::Equal,
            })
    });
}

/// Mean and standard error of the mean (sample deviation over `sqrt(k)`).
pub fn mean_stderr(values: &[f64]) -> Option<(f64, f64)> {
    let k = values.len();
    if k == 0 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / k as f64;
    if k == 1 {
        return Some((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    Some((mean, (var / k as f64).sqrt()))
}

/// One mean row per (dataset, method, metric) over the successful repetitions.
pub fn summarize(rows: &[ResultRow]) -> Vec<ResultRow> {
    let mut groups: BTreeMap<(&str, &str, Metric), (Vec<f64>, usize)> = BTreeMap::new();
    for r in rows.iter().filter(|r| !r.is_mean()) {
        let entry = groups.entry((&r.dataset, &r.method, r.metric)).or_default();
        match r.value {
            Some(v) => entry.0.push(v),
            None => entry.1 += 1,
        }
    }
    groups
        .into_iter()
        .map(|((dataset, method, metric), (values, failed))| {
            let mut row = ResultRow::new(dataset, method, metric, None, 0.0);
            match mean_stderr(&values) {
                Some((mean, se)) => {
                    row.value = Some(mean);
                    row.stderr = Some(se);
                }
                None => row.value = None,
            }
            row.with("runs", values.len().to_string()).with("failed", failed.to_string())
        })
        .collect()
}

pub fn write_results<W: Write>(rows: &[ResultRow], out: W) -> BenchResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULT_HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub dataset: String,
    pub stats: GraphStats,
}

impl StatsRow {
    pub fn new(dataset: &str, stats: &GraphStats) -> Self {
        StatsRow { dataset: dataset.to_owned(), stats: stats.clone() }
    }
}

pub const STATS_HEADER: [&str; 7] = ["dataset", "n", "e", "clustering", "gamma", "m", "kmin"];

pub fn write_stats<W: Write>(rows: &[StatsRow], out: W) -> BenchResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(STATS_HEADER)?;
    for r in rows {
        let s = &r.stats;
        w.write_record([
            r.dataset.clone(),
            s.n.to_string(),
            s.e.to_string(),
            format!("{:.4}", s.clustering),
            s.gamma.map_or_else(String::new, |g| format!("{g:.4}")),
            format!("{:.4}", s.m_half_degree),
            s.kmin.map_or_else(String::new, |k| k.to_string()),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
