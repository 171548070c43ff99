//! Labeled simple graphs and the elementary operations every other module
//! builds on: intersection, induced subgraphs, joins and universal vertices.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric irreflexive adjacency relation stored as one bit row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        AdjacencyMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of `u64` words in a row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adds the edge `{i, j}`; self-loops are ignored.
    pub fn set(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn clear(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] &= !(1 << (j % 64));
        self.bits[j * self.words + i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(i))
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }
}

impl fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.n {
            for j in self.neighbors(i).filter(|&j| j > i) {
                list.entry(&(i, j));
            }
        }
        list.finish()
    }
}

/// Iterates the positions of set bits in a multi-word bit row.
pub fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

/// Finite simple undirected graph whose vertices carry distinct printable
/// labels. Vertex order is significant: it fixes indices, JSON output and
/// the canonical order in which pairs are reported.
#[derive(Clone)]
pub struct LabeledGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: AdjacencyMatrix,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for LabeledGraph {}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(&str, &str)> = self
            .edges()
            .map(|(i, j)| (self.labels[i].as_str(), self.labels[j].as_str()))
            .collect();
        f.debug_struct("LabeledGraph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

fn build_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::input(format!("duplicate vertex label {l:?}")));
        }
    }
    Ok(index)
}

impl LabeledGraph {
    /// Edgeless graph on the given labels.
    pub fn edgeless<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let index = build_index(&labels)?;
        let adj = AdjacencyMatrix::new(labels.len());
        Ok(LabeledGraph { labels, index, adj })
    }

    /// Graph with the given index edges. Out-of-range indices and loops are
    /// input errors.
    pub fn from_edges<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Self::edgeless(labels)?;
        let n = g.order();
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::input(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            if i == j {
                return Err(Error::input(format!("self-loop at vertex {i}")));
            }
            g.adj.set(i, j);
        }
        Ok(g)
    }

    /// Graph whose edge `{i, j}` (i < j) is present iff `adjacent(i, j)`.
    pub fn from_fn<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        mut adjacent: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut g = Self::edgeless(labels)?;
        let n = g.order();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.adj.set(i, j);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_parts(labels: Vec<String>, adj: AdjacencyMatrix) -> Result<Self> {
        debug_assert_eq!(labels.len(), adj.len());
        let index = build_index(&labels)?;
        Ok(LabeledGraph { labels, index, adj })
    }

    /// `K_n` on labels `0..n`.
    pub fn complete(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()), |_, _| true).expect("distinct labels")
    }

    /// `C_n` on labels `0..n`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()), |i, j| j == i + 1 || (i == 0 && j + 1 == n))
            .expect("distinct labels")
    }

    /// `P_n` (n vertices) on labels `0..n`.
    pub fn path(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()), |i, j| j == i + 1).expect("distinct labels")
    }

    /// `K_{1,k}` with centre `0`.
    pub fn star(k: usize) -> Self {
        Self::from_fn((0..=k).map(|i| i.to_string()), |i, _| i == 0).expect("distinct labels")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn adjacency(&self) -> &AdjacencyMatrix {
        &self.adj
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.has(i, j)
    }

    pub fn has_edge_between(&self, a: &str, b: &str) -> Result<bool> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        Ok(self.adj.has(i, j))
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::input(format!("unknown vertex label {label:?}")))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj.degree(i)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.edge_count()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |i| self.adj.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    /// Non-adjacent pairs `(i, j)` with `i < j`, lexicographically ordered.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.adj.has(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    /// Copy of the graph with the extra pairs added as edges.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Self {
        let mut g = self.clone();
        for &(i, j) in extra {
            g.adj.set(i, j);
        }
        g
    }

    /// Same graph with every label passed through `f`.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<Self> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        Self::from_parts(labels, self.adj.clone())
    }

    /// Same graph with vertices listed in the given label order.
    pub fn reorder(&self, order: &[String]) -> Result<Self> {
        if order.len() != self.order() {
            return Err(Error::input("reorder: label count differs"));
        }
        let idx: Vec<usize> = order.iter().map(|l| self.require(l)).collect::<Result<_>>()?;
        Self::from_fn(order.iter().cloned(), |a, b| self.adj.has(idx[a], idx[b]))
    }

    /// Edge-set equality by label, independent of vertex order.
    pub fn same_edges(&self, other: &LabeledGraph) -> bool {
        if self.order() != other.order() || self.edge_count() != other.edge_count() {
            return false;
        }
        let map: Option<Vec<usize>> = self.labels.iter().map(|l| other.index_of(l)).collect();
        let Some(map) = map else { return false };
        self.edges().all(|(i, j)| other.adj.has(map[i], map[j]))
    }
}

/// Intersection of graphs on an identical vertex list: an edge survives iff
/// every input graph has it.
pub fn intersection_graph(graphs: &[LabeledGraph]) -> Result<LabeledGraph> {
    let first = graphs
        .first()
        .ok_or_else(|| Error::input("intersection of an empty list of graphs"))?;
    for g in &graphs[1..] {
        if g.order() != first.order() {
            return Err(Error::input(format!(
                "vertex count mismatch: {} vs {}",
                first.order(),
                g.order()
            )));
        }
        if let Some((a, _)) = first.labels.iter().zip(&g.labels).find(|(a, b)| a != b) {
            return Err(Error::input(format!("vertex label mismatch at {a:?}")));
        }
    }
    let mut adj = first.adj.clone();
    for g in &graphs[1..] {
        for (w, o) in adj.bits.iter_mut().zip(&g.adj.bits) {
            *w &= o;
        }
    }
    LabeledGraph::from_parts(first.labels.clone(), adj)
}

/// Subgraph induced on `keep`; vertices stay in their original order.
pub fn induced_subgraph<S: AsRef<str>>(g: &LabeledGraph, keep: &[S]) -> Result<LabeledGraph> {
    let mut idx: Vec<usize> = keep.iter().map(|l| g.require(l.as_ref())).collect::<Result<_>>()?;
    idx.sort_unstable();
    idx.dedup();
    LabeledGraph::from_fn(idx.iter().map(|&i| g.labels[i].clone()), |a, b| {
        g.adj.has(idx[a], idx[b])
    })
}

/// Join of vertex-disjoint graphs: their union plus every cross edge.
pub fn join_graphs(gs: &[LabeledGraph]) -> Result<LabeledGraph> {
    let mut labels = Vec::new();
    let mut part = Vec::new();
    let mut offset = Vec::new();
    for (p, g) in gs.iter().enumerate() {
        offset.push(labels.len());
        labels.extend(g.labels.iter().cloned());
        part.extend(std::iter::repeat(p).take(g.order()));
    }
    let mut seen = std::collections::HashSet::new();
    for l in &labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::input(format!("join parts share the label {l:?}")));
        }
    }
    LabeledGraph::from_fn(labels.clone(), |a, b| {
        let (pa, pb) = (part[a], part[b]);
        pa != pb || gs[pa].adj.has(a - offset[pa], b - offset[pb])
    })
}

/// Labels of the vertices adjacent to every other vertex.
pub fn universal_vertices(g: &LabeledGraph) -> Vec<String> {
    let n = g.order();
    (0..n)
        .filter(|&i| g.degree(i) + 1 == n)
        .map(|i| g.labels[i].clone())
        .collect()
}

pub fn strip_universal(g: &LabeledGraph) -> LabeledGraph {
    let n = g.order();
    let keep: Vec<&str> = (0..n)
        .filter(|&i| g.degree(i) + 1 != n)
        .map(|i| g.label(i))
        .collect();
    induced_subgraph(g, &keep).expect("labels come from g")
}

/// `{"vertices": [...], "edges": [[i, j], ...]}` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl From<&LabeledGraph> for GraphJson {
    fn from(g: &LabeledGraph) -> Self {
        GraphJson {
            vertices: g.labels.clone(),
            edges: g.edges().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for LabeledGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        LabeledGraph::from_edges(j.vertices, j.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl Serialize for LabeledGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        LabeledGraph::try_from(j).map_err(serde::de::Error::custom)
    }
}
