//! Simple undirected graphs and edge-list ingestion.
//!
//! # Edge-list format
//!
//! One edge per line, two whitespace-separated node identifiers. Identifiers
//! are arbitrary non-whitespace strings and are mapped to dense indices in
//! order of first appearance. Blank lines and lines whose first
//! non-whitespace character is `#` or `%` are ignored. Self-loops and repeated
//! edges (in either direction) are dropped silently.
//!
//! # Label format
//!
//! One line per node: `nodeId<whitespace>communityId`, with the same comment
//! rules. Community ids are arbitrary strings. A label line may introduce a
//! node that never appears in the edge list; it becomes an isolated node.

use std::collections::{HashMap, VecDeque};
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Undirected simple graph on dense node indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    /// Sorted, each pair stored once as `(lo, hi)`.
    edges: Vec<(usize, usize)>,
    names: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` nodes. Self-loops and duplicates are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            if u != v {
                list.push((u.min(v), u.max(v)));
            }
        }
        list.sort_unstable();
        list.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &list {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(Graph { adjacency, edges: list, names: None })
    }

    /// Attaches original identifiers; `names.len()` must equal `n`.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(lo, hi)` pairs in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Original identifier of `node`, or its index when the graph is unnamed.
    pub fn name(&self, node: usize) -> String {
        match &self.names {
            Some(names) => names[node].clone(),
            None => node.to_string(),
        }
    }

    /// Connected components in order of their lowest node index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Fails with [`Error::Disconnected`] naming a pair that cannot reach each other.
    pub fn require_connected(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::invalid("graph has no nodes"));
        }
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected { from: comps[0][0], to: comps[1][0] });
        }
        Ok(())
    }

    /// Subgraph induced by `nodes` (ascending), reindexed densely in that order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.n()];
        for (new, &old) in nodes.iter().enumerate() {
            position[old] = new;
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            let (pu, pv) = (position[u], position[v]);
            (pu != usize::MAX && pv != usize::MAX).then_some((pu, pv))
        });
        let mut g = Graph::from_edges(nodes.len(), edges).expect("positions are in range");
        if let Some(names) = &self.names {
            g.names = Some(nodes.iter().map(|&v| names[v].clone()).collect());
        }
        g
    }

    /// Writes the graph in the edge-list format, using node names when present.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", self.name(u), self.name(v))?;
        }
        Ok(())
    }

    /// Writes `partition` in the label format.
    pub fn write_labels<W: Write>(&self, partition: &Partition, mut out: W) -> io::Result<()> {
        for node in 0..self.n() {
            writeln!(out, "{}\t{}", self.name(node), partition.label(node))?;
        }
        Ok(())
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

#[derive(Default)]
struct NameTable {
    index: HashMap<String, usize>,
    names: Vec<String>,
}

impl NameTable {
    fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.to_owned(), i);
        self.names.push(name.to_owned());
        i
    }
}

/// Parses an edge list and, optionally, a label document.
///
/// Returns the simple graph together with the ground-truth partition when
/// labels were given. Every node (including ones only named in the label
/// document) must carry a label.
pub fn load_edge_list(text: &str, label_text: Option<&str>) -> Result<(Graph, Option<Partition>)> {
    let mut table = NameTable::default();
    let mut edges = Vec::new();
    for (line, tokens) in data_lines(text) {
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected two node identifiers, found {} tokens", tokens.len()),
            });
        }
        let u = table.intern(tokens[0]);
        let v = table.intern(tokens[1]);
        edges.push((u, v));
    }
    if !edges.iter().any(|&(u, v)| u != v) {
        return Err(Error::EmptyGraph);
    }

    let mut raw_labels: Option<Vec<Option<usize>>> = None;
    if let Some(label_text) = label_text {
        let mut communities: HashMap<String, usize> = HashMap::new();
        let mut assigned: Vec<(usize, usize, usize)> = Vec::new();
        for (line, tokens) in data_lines(label_text) {
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `nodeId communityId`, found {} tokens", tokens.len()),
                });
            }
            let node = table.intern(tokens[0]);
            let next = communities.len();
            let community = *communities.entry(tokens[1].to_owned()).or_insert(next);
            assigned.push((line, node, community));
        }
        let mut labels = vec![None; table.names.len()];
        for (line, node, community) in assigned {
            if labels[node].is_some_and(|c| c != community) {
                return Err(Error::Parse {
                    line,
                    message: format!("node `{}` labeled twice", table.names[node]),
                });
            }
            labels[node] = Some(community);
        }
        raw_labels = Some(labels);
    }

    let n = table.names.len();
    let graph = Graph::from_edges(n, edges)?.with_names(table.names)?;
    let partition = match raw_labels {
        None => None,
        Some(labels) => {
            let mut dense = Vec::with_capacity(n);
            for (node, l) in labels.into_iter().enumerate() {
                match l {
                    Some(c) => dense.push(c),
                    None => {
                        return Err(Error::invalid(format!(
                            "node `{}` has no community label",
                            graph.name(node)
                        )))
                    }
                }
            }
            Some(Partition::from_labels(dense))
        }
    };
    Ok((graph, partition))
}

/// Largest connected component, reindexed densely; ties go to the component
/// containing the lowest node index. Labels are restricted to the survivors.
pub fn largest_connected_component(
    g: &Graph,
    labels: Option<&Partition>,
) -> (Graph, Option<Partition>) {
    let comps = g.components();
    let mut best: &[usize] = &[];
    for comp in &comps {
        if comp.len() > best.len() {
            best = comp;
        }
    }
    if best.len() == g.n() {
        return (g.clone(), labels.cloned());
    }
    (g.induced(best), labels.map(|p| p.restrict(best)))
}

/// Indices kept by [`largest_connected_component`], for callers that need to
/// map results back onto the input graph.
pub fn largest_component_nodes(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    for comp in g.components() {
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best
}
