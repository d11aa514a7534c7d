//! Immutable directed graph storage and exact ground-truth properties.
//!
//! Nodes carry arbitrary non-negative external ids which are remapped to dense
//! indices `0..N` in ascending id order. Adjacency is stored in compressed
//! sparse row form in both directions with sorted neighbor lists, so edge
//! membership is a binary search.

use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::distribution::Distribution;
use crate::error::{Error, Result};

/// Edge direction used when talking about degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Direction::In => "in",
            Direction::Out => "out",
        })
    }
}

/// Counters collected while building a graph from raw edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    pub input_edges: usize,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// Average of in/out degree ratios over nodes where the ratio is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioAverage {
    pub value: f64,
    /// Nodes skipped because their out-degree is zero.
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn from_sorted_pairs(node_count: usize, pairs: &[(u32, u32)]) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for &(src, _) in pairs {
            offsets[src as usize + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.iter().map(|&(_, dst)| dst).collect();
        Self { offsets, targets }
    }

    fn row(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// A simple directed graph: no self-loops, no parallel edges.
///
/// Equality compares node ids and edges, not build counters.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    ids: Vec<u64>,
    out_adj: Csr,
    in_adj: Csr,
    stats: BuildStats,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.out_adj == other.out_adj
    }
}

impl Eq for DirectedGraph {}

impl DirectedGraph {
    /// Builds a graph over dense indices `0..node_count`; external ids equal indices.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let ids: Vec<u64> = (0..node_count as u64).collect();
        let mut pairs = Vec::new();
        for (s, t) in edges {
            for v in [s, t] {
                if v >= node_count {
                    return Err(Error::NodeOutOfRange { index: v, node_count });
                }
            }
            pairs.push((s as u32, t as u32));
        }
        Self::build(ids, pairs)
    }

    /// Builds a graph from edges over external ids; the node set is `extra_ids`
    /// plus every id that appears in an edge.
    pub fn from_id_edges<I>(edges: I, extra_ids: &[u64]) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let raw: Vec<(u64, u64)> = edges.into_iter().collect();
        let mut ids: Vec<u64> = raw.iter().flat_map(|&(s, t)| [s, t]).chain(extra_ids.iter().copied()).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() > u32::MAX as usize {
            return Err(Error::InvalidParameter("more than 2^32 nodes".into()));
        }
        let index = |id: u64| ids.binary_search(&id).expect("id collected above") as u32;
        let pairs = raw.iter().map(|&(s, t)| (index(s), index(t))).collect();
        Self::build(ids, pairs)
    }

    fn build(ids: Vec<u64>, mut pairs: Vec<(u32, u32)>) -> Result<Self> {
        let n = ids.len();
        let mut stats = BuildStats { input_edges: pairs.len(), ..Default::default() };
        pairs.retain(|&(s, t)| s != t);
        stats.self_loops = stats.input_edges - pairs.len();
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        stats.duplicate_edges = before - pairs.len();

        let out_adj = Csr::from_sorted_pairs(n, &pairs);
        let mut reversed: Vec<(u32, u32)> = pairs.iter().map(|&(s, t)| (t, s)).collect();
        reversed.sort_unstable();
        let in_adj = Csr::from_sorted_pairs(n, &reversed);
        Ok(Self { ids, out_adj, in_adj, stats })
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.targets.len()
    }

    pub fn build_stats(&self) -> BuildStats {
        self.stats
    }

    /// External id of a dense node index.
    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    /// Dense index of an external id.
    pub fn index_of(&self, id: u64) -> Result<usize> {
        self.ids.binary_search(&id).map_err(|_| Error::UnknownNode(id))
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { index: v, node_count: self.node_count() })
        }
    }

    /// Sorted out-neighbors of `v`. Panics if `v` is out of range.
    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        self.out_adj.row(v)
    }

    /// Sorted in-neighbors of `v`. Panics if `v` is out of range.
    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        self.in_adj.row(v)
    }

    pub fn in_degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.in_neighbors(v).len())
    }

    pub fn out_degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.out_neighbors(v).len())
    }

    /// Degree of `v` in the given direction. Panics if `v` is out of range.
    pub fn degree(&self, v: usize, direction: Direction) -> usize {
        match direction {
            Direction::In => self.in_neighbors(v).len(),
            Direction::Out => self.out_neighbors(v).len(),
        }
    }

    /// Whether the directed edge `i -> j` exists. `O(log out_degree(i))`.
    pub fn has_edge(&self, i: usize, j: usize) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.contains_edge(i, j))
    }

    /// Unchecked variant of [`has_edge`](Self::has_edge); panics if `i` is out of range.
    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        u32::try_from(j).is_ok_and(|j| self.out_neighbors(i).binary_search(&j).is_ok())
    }

    /// All edges as `(src, dst)` index pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |i| self.out_neighbors(i).iter().map(move |&j| (i, j as usize)))
    }

    pub fn degree_distribution(&self, direction: Direction) -> Result<Distribution> {
        if self.node_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        Distribution::from_samples((0..self.node_count()).map(|v| self.degree(v, direction) as u64))
    }

    /// In-degree over out-degree; `None` when the out-degree is zero.
    pub fn ratio(&self, v: usize) -> Result<Option<f64>> {
        self.check(v)?;
        Ok(self.ratio_unchecked(v))
    }

    pub(crate) fn ratio_unchecked(&self, v: usize) -> Option<f64> {
        let out = self.out_neighbors(v).len();
        (out > 0).then(|| self.in_neighbors(v).len() as f64 / out as f64)
    }

    pub fn ratio_average(&self) -> Result<RatioAverage> {
        let mut sum = 0.0;
        let mut defined = 0usize;
        for v in 0..self.node_count() {
            if let Some(r) = self.ratio_unchecked(v) {
                sum += r;
                defined += 1;
            }
        }
        if defined == 0 {
            return Err(Error::NoDefinedRatio);
        }
        Ok(RatioAverage { value: sum / defined as f64, excluded: self.node_count() - defined })
    }

    /// Number of edges `i -> j` whose reverse `j -> i` also exists.
    pub fn reciprocated_edge_count(&self) -> usize {
        self.edges().filter(|&(i, j)| self.contains_edge(j, i)).count()
    }

    /// Fraction of directed edges that are reciprocated.
    pub fn mutual_proportion(&self) -> Result<f64> {
        if self.edge_count() == 0 {
            return Err(Error::NoEdges);
        }
        Ok(self.reciprocated_edge_count() as f64 / self.edge_count() as f64)
    }

    /// The graph with every edge reversed; ids are unchanged.
    pub fn transpose(&self) -> Self {
        Self {
            ids: self.ids.clone(),
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            stats: BuildStats { input_edges: self.edge_count(), ..Default::default() },
        }
    }

    /// Content hash over node ids and edges, as 16 hex digits.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.node_count() as u64).to_le_bytes());
        for &id in &self.ids {
            h.update(id.to_le_bytes());
        }
        for (i, j) in self.edges() {
            h.update(self.ids[i].to_le_bytes());
            h.update(self.ids[j].to_le_bytes());
        }
        hex::encode(&h.finalize()[..8])
    }

    /// Writes the edge list in the text format accepted by [`load_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# Nodes: {} Edges: {}\n", self.node_count(), self.edge_count());
        for (i, j) in self.edges() {
            out.push_str(&format!("{} {}\n", self.ids[i], self.ids[j]));
        }
        out
    }
}

/// Parses a `# Nodes: N` header comment (SNAP style), case-insensitive.
fn declared_nodes(comment: &str) -> Option<usize> {
    let lower = comment.to_ascii_lowercase();
    let rest = lower.split("nodes:").nth(1)?;
    rest.split_whitespace().next()?.parse().ok()
}

/// Reads a whitespace-separated edge list, transparently gunzipping input that
/// starts with the gzip magic bytes.
///
/// Lines starting with `#` are comments. A `# Nodes: N` comment declares the
/// node count: when every id is below `N` the node set becomes `0..N`;
/// otherwise missing nodes are added as fresh ids above the largest seen id.
pub fn load_edge_list<R: Read>(source: R) -> Result<DirectedGraph> {
    let mut reader = BufReader::new(source);
    let gz = reader.fill_buf()?.starts_with(&[0x1f, 0x8b]);
    if gz {
        parse_edge_list(BufReader::new(flate2::read::MultiGzDecoder::new(reader)))
    } else {
        parse_edge_list(reader)
    }
}

/// Loads an edge-list file; errors carry the path.
pub fn load_edge_list_file(path: impl AsRef<Path>) -> Result<DirectedGraph> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    load_edge_list(file).map_err(|e| match e {
        Error::Stream(source) => Error::io(path, source),
        other => other,
    })
}

fn parse_edge_list<R: BufRead>(reader: R) -> Result<DirectedGraph> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = n + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if declared.is_none() {
                declared = declared_nodes(comment);
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = |what: &str| -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse { line: line_no, message: format!("missing {what} id") })?;
            tok.parse::<u64>()
                .map_err(|_| Error::Parse { line: line_no, message: format!("invalid {what} id {tok:?}") })
        };
        let src = next_id("source")?;
        let dst = next_id("target")?;
        edges.push((src, dst));
    }

    if edges.is_empty() && declared.unwrap_or(0) == 0 {
        return Err(Error::EmptyInput);
    }
    let extra = match declared {
        Some(n) => padding_ids(&edges, n),
        None => Vec::new(),
    };
    DirectedGraph::from_id_edges(edges, &extra)
}

fn padding_ids(edges: &[(u64, u64)], declared: usize) -> Vec<u64> {
    let max = edges.iter().flat_map(|&(s, t)| [s, t]).max();
    if max.is_none_or(|m| m < declared as u64) {
        return (0..declared as u64).collect();
    }
    let mut seen: Vec<u64> = edges.iter().flat_map(|&(s, t)| [s, t]).collect();
    seen.sort_unstable();
    seen.dedup();
    let start = max.unwrap_or(0) + 1;
    (start..start + declared.saturating_sub(seen.len()) as u64).collect()
}
