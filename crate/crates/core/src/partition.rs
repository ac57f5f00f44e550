use crate::error::{Error, Result};

/// Assignment of every node to a community.
///
/// Community ids are dense `0..k` and canonical: ids are numbered in order of
/// first appearance, so two partitions describing the same grouping compare
/// equal regardless of the labels they were built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn from_labels<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let mut remap = std::collections::HashMap::new();
        let labels: Vec<usize> = raw
            .into_iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(l).or_insert(next)
            })
            .collect();
        Partition { labels, k: remap.len() }
    }

    /// Everyone in one community.
    pub fn single(n: usize) -> Self {
        Partition::from_labels(std::iter::repeat_n(0, n))
    }

    /// Every node alone.
    pub fn singletons(n: usize) -> Self {
        Partition::from_labels(0..n)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of distinct communities.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> usize {
        self.labels[node]
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Members of each community, ascending.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (node, &l) in self.labels.iter().enumerate() {
            out[l].push(node);
        }
        out
    }

    /// Partition restricted to `nodes` (in the given order), re-densified.
    pub fn restrict(&self, nodes: &[usize]) -> Partition {
        Partition::from_labels(nodes.iter().map(|&v| self.labels[v]))
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::SizeMismatch { expected, found: self.len() });
        }
        Ok(())
    }
}
