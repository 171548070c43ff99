//! Isomorphism search for small graphs: joint colour refinement of both
//! graphs, then individualization with backtracking.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Default cap on the vertex count accepted by [`are_isomorphic`].
pub const DEFAULT_MAX_VERTICES: usize = 64;

/// A witness bijection as `(label in g1, label in g2)` pairs, listed in the
/// vertex order of `g1`.
pub type Bijection = Vec<(String, String)>;

/// Refines the colourings of both graphs in lock-step until stable, using a
/// shared signature table so colours stay comparable across graphs.
fn refine(g1: &LabeledGraph, g2: &LabeledGraph, c1: &mut Vec<usize>, c2: &mut Vec<usize>) {
    let n = c1.len();
    let mut classes = count_classes(c1, c2);
    loop {
        let sig = |g: &LabeledGraph, c: &[usize], v: usize| {
            let mut nb: Vec<usize> = g.adjacency().neighbors(v).map(|u| c[u]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let s1: Vec<_> = (0..n).map(|v| sig(g1, c1, v)).collect();
        let s2: Vec<_> = (0..n).map(|v| sig(g2, c2, v)).collect();
        let mut table = BTreeMap::new();
        for s in s1.iter().chain(&s2) {
            table.entry(s.clone()).or_insert(0);
        }
        for (id, slot) in table.values_mut().enumerate() {
            *slot = id;
        }
        *c1 = s1.iter().map(|s| table[s]).collect();
        *c2 = s2.iter().map(|s| table[s]).collect();
        let now = count_classes(c1, c2);
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(c1: &[usize], c2: &[usize]) -> usize {
    let mut all: Vec<usize> = c1.iter().chain(c2).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn search(g1: &LabeledGraph, g2: &LabeledGraph, c1: Vec<usize>, c2: Vec<usize>) -> Option<Vec<usize>> {
    let h1 = histogram(&c1);
    if h1 != histogram(&c2) {
        return None;
    }
    let n = c1.len();
    // Smallest non-singleton cell, lowest colour on ties.
    let target = h1
        .iter()
        .filter(|(_, &k)| k > 1)
        .min_by_key(|(&col, &k)| (k, col))
        .map(|(&col, _)| col);
    let Some(col) = target else {
        let mut by_colour = vec![0; c1.iter().chain(&c2).max().map_or(0, |m| m + 1)];
        for (w, &c) in c2.iter().enumerate() {
            by_colour[c] = w;
        }
        let map: Vec<usize> = c1.iter().map(|&c| by_colour[c]).collect();
        let ok = (0..n).all(|a| (a + 1..n).all(|b| g1.has_edge(a, b) == g2.has_edge(map[a], map[b])));
        return ok.then_some(map);
    };
    let fresh = c1.iter().chain(&c2).max().map_or(0, |m| m + 1);
    let v = (0..n).find(|&v| c1[v] == col).expect("cell is non-empty");
    for w in (0..n).filter(|&w| c2[w] == col) {
        let (mut d1, mut d2) = (c1.clone(), c2.clone());
        d1[v] = fresh;
        d2[w] = fresh;
        refine(g1, g2, &mut d1, &mut d2);
        if let Some(map) = search(g1, g2, d1, d2) {
            return Some(map);
        }
    }
    None
}

/// Isomorphism test with a vertex-count cap. Returns a bijection preserving
/// adjacency in both directions, or `None`.
pub fn are_isomorphic_capped(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    max_vertices: usize,
) -> Result<Option<Bijection>> {
    let n = g1.order();
    if n.max(g2.order()) > max_vertices {
        return Err(Error::capacity(format!(
            "isomorphism search on {} vertices exceeds the cap of {max_vertices}",
            n.max(g2.order())
        )));
    }
    if n != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut c1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut c2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    refine(g1, g2, &mut c1, &mut c2);
    Ok(search(g1, g2, c1, c2).map(|map| {
        map.iter()
            .enumerate()
            .map(|(a, &b)| (g1.label(a).to_string(), g2.label(b).to_string()))
            .collect()
    }))
}

/// [`are_isomorphic_capped`] with [`DEFAULT_MAX_VERTICES`].
pub fn are_isomorphic(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<Option<Bijection>> {
    are_isomorphic_capped(g1, g2, DEFAULT_MAX_VERTICES)
}

/// Checks that `map` is an adjacency-preserving bijection from `g1` to `g2`.
pub fn is_isomorphism(g1: &LabeledGraph, g2: &LabeledGraph, map: &[(String, String)]) -> bool {
    if g1.order() != g2.order() || map.len() != g1.order() {
        return false;
    }
    let mut image = vec![usize::MAX; g1.order()];
    let mut hit = vec![false; g2.order()];
    for (a, b) in map {
        let (Some(i), Some(j)) = (g1.index_of(a), g2.index_of(b)) else {
            return false;
        };
        if image[i] != usize::MAX || hit[j] {
            return false;
        }
        image[i] = j;
        hit[j] = true;
    }
    let n = g1.order();
    (0..n).all(|a| (a + 1..n).all(|b| g1.has_edge(a, b) == g2.has_edge(image[a], image[b])))
}
