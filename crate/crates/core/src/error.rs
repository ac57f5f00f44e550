use std::fmt;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One probe of the preference binary search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    pub preference: f64,
    /// `None` when the run ended with zero exemplars.
    pub communities: Option<usize>,
}

/// Probe log attached to a failed preference search.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeLog(pub Vec<Probe>);

impl fmt::Display for ProbeLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match p.communities {
                Some(k) => write!(f, "{:.6}->{}", p.preference, k)?,
                None => write!(f, "{:.6}->degenerate", p.preference)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyGraph,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is disconnected: node {from} cannot reach node {to}")]
    Disconnected { from: usize, to: usize },

    #[error("partition covers {found} nodes, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("affinity propagation produced no exemplars after {iterations} iterations")]
    Degenerate { iterations: usize },

    #[error("every preference probe was degenerate: {0}")]
    SearchFailed(ProbeLog),

    #[error("nPSO generation failed: {0}")]
    Generation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
