//! Undirected simple graphs and exact motif counts.
//!
//! Vertices are 0-based and double as qubit labels `q[0..n]`. Each vertex
//! keeps its neighbourhood as a bit mask, so the hard upper bound on the
//! vertex count is 64; the configurable default limit is
//! [`DEFAULT_MAX_VERTICES`].

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Location, Result};

pub const DEFAULT_MAX_VERTICES: usize = 24;

/// Mask width; no configuration can go past this.
pub const HARD_MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<u64>,
}

/// Edge, triangle and 4-cycle counts `(k₂, k₃, k₄)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct MotifCounts {
    pub k2: u64,
    pub k3: u64,
    pub k4: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "edge-list" | "edgelist" | "txt" => Ok(GraphFormat::EdgeList),
            "json" => Ok(GraphFormat::Json),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

impl GraphFormat {
    /// Guesses the format from the first non-blank character.
    pub fn sniff(source: &str) -> Self {
        match source.trim_start().chars().next() {
            Some('{') => GraphFormat::Json,
            _ => GraphFormat::EdgeList,
        }
    }
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicates (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_limit(n, edges, DEFAULT_MAX_VERTICES)
    }

    pub fn with_limit(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        max_vertices: usize,
    ) -> Result<Self> {
        let mut builder = Builder::new(max_vertices);
        for (idx, (i, j)) in edges.into_iter().enumerate() {
            builder.push(Location::Field(format!("edges[{idx}]")), i, j)?;
        }
        builder.finish(Some(n))
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Path `0–1–…–(n−1)`.
    pub fn chain(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle `0–1–…–(n−1)–0`; `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Parses edge-list or JSON text with the default vertex limit.
    pub fn parse(source: &str, format: GraphFormat) -> Result<Self> {
        Self::parse_with_limit(source, format, DEFAULT_MAX_VERTICES)
    }

    pub fn parse_with_limit(
        source: &str,
        format: GraphFormat,
        max_vertices: usize,
    ) -> Result<Self> {
        match format {
            GraphFormat::EdgeList => parse_edge_list(source, max_vertices),
            GraphFormat::Json => parse_json(source, max_vertices),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(i, j)` with `i < j`, in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adjacency[i] >> j & 1 == 1
    }

    /// Neighbourhood of `v` as a bit mask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adjacency[v].count_ones()
    }

    /// Dense symmetric 0/1 adjacency matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as u8).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adjacency[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen.count_ones() as usize == self.n
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must equal vertex count"
        );
        Self::with_limit(
            self.n,
            self.edges.iter().map(|&(i, j)| (perm[i], perm[j])),
            HARD_MAX_VERTICES,
        )
    }

    /// Edge list text accepted by [`Graph::parse`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(i, j) in &self.edges {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }

    /// Counts edges, triangles and 4-cycles.
    ///
    /// Triangles are enumerated once per edge `(i, j)` through common
    /// neighbours above `j`. Each 4-cycle has two diagonals, and each diagonal
    /// `(i, k)` sees it as a pair of common neighbours, so
    /// `k₄ = ½ Σ_{i<k} C(|N(i) ∩ N(k)|, 2)`.
    pub fn count_motifs(&self) -> MotifCounts {
        let k2 = self.edges.len() as u64;
        let mut k3 = 0u64;
        for &(i, j) in &self.edges {
            let above_j = if j + 1 >= 64 { 0 } else { !0u64 << (j + 1) };
            k3 += (self.adjacency[i] & self.adjacency[j] & above_j).count_ones() as u64;
        }
        let mut diagonal_pairs = 0u64;
        for i in 0..self.n {
            for k in i + 1..self.n {
                let common = (self.adjacency[i] & self.adjacency[k]).count_ones() as u64;
                diagonal_pairs += common * common.saturating_sub(1) / 2;
            }
        }
        MotifCounts {
            k2,
            k3,
            k4: diagonal_pairs / 2,
        }
    }
}

struct Builder {
    max_vertices: usize,
    edges: BTreeSet<(usize, usize)>,
    located: Vec<(Location, usize)>,
}

impl Builder {
    fn new(max_vertices: usize) -> Self {
        Self {
            max_vertices: max_vertices.min(HARD_MAX_VERTICES),
            edges: BTreeSet::new(),
            located: Vec::new(),
        }
    }

    fn push(&mut self, at: Location, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::SelfLoop { at, vertex: i });
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        if hi >= self.max_vertices {
            return Err(Error::VertexOutOfRange {
                at,
                vertex: hi,
                n: self.max_vertices,
            });
        }
        self.edges.insert((lo, hi));
        self.located.push((at, hi));
        Ok(())
    }

    fn finish(self, declared: Option<usize>) -> Result<Graph> {
        let n = match declared {
            Some(n) => {
                if let Some((at, vertex)) = self.located.into_iter().find(|&(_, hi)| hi >= n) {
                    return Err(Error::VertexOutOfRange { at, vertex, n });
                }
                n
            }
            None => self.edges.iter().map(|&(_, hi)| hi + 1).max().unwrap_or(0),
        };
        if n == 0 {
            return Err(Error::Malformed {
                at: Location::Line(1),
                reason: "graph has no vertices; declare them with `n <count>`".into(),
            });
        }
        if n > self.max_vertices {
            return Err(Error::TooManyVertices {
                n,
                max: self.max_vertices,
            });
        }
        let mut adjacency = vec![0u64; n];
        for &(i, j) in &self.edges {
            adjacency[i] |= 1 << j;
            adjacency[j] |= 1 << i;
        }
        Ok(Graph {
            n,
            edges: self.edges.into_iter().collect(),
            adjacency,
        })
    }
}

fn parse_index(token: &str, at: &Location) -> Result<usize> {
    if let Ok(value) = token.parse::<i64>() {
        if value < 0 {
            return Err(Error::NegativeIndex {
                at: at.clone(),
                value,
            });
        }
    }
    token.parse::<usize>().map_err(|_| Error::Malformed {
        at: at.clone(),
        reason: format!("`{token}` is not a vertex index"),
    })
}

fn parse_edge_list(source: &str, max_vertices: usize) -> Result<Graph> {
    let mut builder = Builder::new(max_vertices);
    let mut declared = None;
    let mut seen_edge = false;
    for (idx, raw) in source.lines().enumerate() {
        let at = Location::Line(idx + 1);
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["n", count] => {
                if seen_edge || declared.is_some() {
                    return Err(Error::Malformed {
                        at,
                        reason: "`n <count>` header must come before any edge".into(),
                    });
                }
                declared = Some(parse_index(count, &at)?);
            }
            [a, b] => {
                let i = parse_index(a, &at)?;
                let j = parse_index(b, &at)?;
                builder.push(at, i, j)?;
                seen_edge = true;
            }
            _ => {
                return Err(Error::Malformed {
                    at,
                    reason: format!(
                        "expected two vertex indices, found {} token(s)",
                        tokens.len()
                    ),
                })
            }
        }
    }
    if let Some(n) = declared {
        if n > builder.max_vertices {
            return Err(Error::TooManyVertices {
                n,
                max: builder.max_vertices,
            });
        }
    }
    builder.finish(declared)
}

fn json_index(value: &Value, path: String) -> Result<usize> {
    let at = Location::Field(path);
    match value.as_i64() {
        Some(v) if v < 0 => Err(Error::NegativeIndex { at, value: v }),
        Some(v) => Ok(v as usize),
        None => Err(Error::Malformed {
            at,
            reason: format!("expected an integer, found {value}"),
        }),
    }
}

fn parse_json(source: &str, max_vertices: usize) -> Result<Graph> {
    let doc: Value = serde_json::from_str(source).map_err(|e| Error::Malformed {
        at: Location::Line(e.line()),
        reason: e.to_string(),
    })?;
    let obj = doc.as_object().ok_or_else(|| Error::Malformed {
        at: Location::Field("$".into()),
        reason: "expected an object with `n` and `edges`".into(),
    })?;
    let declared = match obj.get("n") {
        Some(v) => Some(json_index(v, "n".into())?),
        None => None,
    };
    if let Some(n) = declared {
        if n > max_vertices.min(HARD_MAX_VERTICES) {
            return Err(Error::TooManyVertices {
                n,
                max: max_vertices.min(HARD_MAX_VERTICES),
            });
        }
    }
    let edges = match obj.get("edges") {
        Some(Value::Array(edges)) => edges.as_slice(),
        Some(_) => {
            return Err(Error::Malformed {
                at: Location::Field("edges".into()),
                reason: "expected an array of [i, j] pairs".into(),
            })
        }
        None => &[],
    };
    let mut builder = Builder::new(max_vertices);
    for (idx, edge) in edges.iter().enumerate() {
        let pair = edge
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Malformed {
                at: Location::Field(format!("edges[{idx}]")),
                reason: "expected a pair [i, j]".into(),
            })?;
        let i = json_index(&pair[0], format!("edges[{idx}][0]"))?;
        let j = json_index(&pair[1], format!("edges[{idx}][1]"))?;
        builder.push(Location::Field(format!("edges[{idx}]")), i, j)?;
    }
    builder.finish(declared)
}
