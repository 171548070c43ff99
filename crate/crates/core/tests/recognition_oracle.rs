//! Interval and unit interval recognition checked against a brute-force
//! search over endpoint sequences.
//!
//! An interval model is a left-to-right sequence of endpoint events. A vertex
//! may open only while every open vertex is its neighbour, and may close once
//! all its neighbours have opened. Closing as early as possible never hurts,
//! so only the opening order is searched. Unit interval models are exactly
//! the models whose intervals close in the order they opened.

use std::collections::HashSet;

use rayon::prelude::*;

use boxikit::graph::{AdjacencyMatrix, LabeledGraph};
use boxikit::recognition::{interval_model, is_interval, is_unit_interval, unit_interval_model};

fn graph_from_code(n: usize, code: u64) -> AdjacencyMatrix {
    let mut adj = AdjacencyMatrix::new(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> bit & 1 == 1 {
                adj.set(i, j);
            }
            bit += 1;
        }
    }
    adj
}

fn nbr_mask(adj: &AdjacencyMatrix, v: usize) -> u32 {
    adj.neighbors(v).fold(0, |m, u| m | 1 << u)
}

fn brute_interval(adj: &AdjacencyMatrix) -> bool {
    let n = adj.len();
    let nbrs: Vec<u32> = (0..n).map(|v| nbr_mask(adj, v)).collect();
    let full = (1u32 << n) - 1;
    fn go(opened: u32, full: u32, nbrs: &[u32], dead: &mut HashSet<u32>) -> bool {
        if opened == full {
            return true;
        }
        if dead.contains(&opened) {
            return false;
        }
        let open: u32 = (0..nbrs.len())
            .filter(|&v| opened >> v & 1 == 1 && nbrs[v] & !opened != 0)
            .fold(0, |m, v| m | 1 << v);
        for v in 0..nbrs.len() {
            if opened >> v & 1 == 0 && open & !nbrs[v] == 0 && go(opened | 1 << v, full, nbrs, dead) {
                return true;
            }
        }
        dead.insert(opened);
        false
    }
    go(0, full, &nbrs, &mut HashSet::new())
}

fn brute_unit_interval(adj: &AdjacencyMatrix) -> bool {
    let n = adj.len();
    let nbrs: Vec<u32> = (0..n).map(|v| nbr_mask(adj, v)).collect();
    // `queue` holds the open vertices in opening order.
    fn go(opened: u32, queue: &mut Vec<usize>, n: usize, nbrs: &[u32]) -> bool {
        let mut closed = 0;
        while closed < queue.len() && nbrs[queue[closed]] & !opened == 0 {
            closed += 1;
        }
        if opened.count_ones() as usize == n {
            return closed == queue.len();
        }
        let saved: Vec<usize> = queue.drain(..closed).collect();
        let open_mask = queue.iter().fold(0u32, |m, &v| m | 1 << v);
        for v in 0..n {
            if opened >> v & 1 == 0 && open_mask & !nbrs[v] == 0 {
                queue.push(v);
                if go(opened | 1 << v, queue, n, nbrs) {
                    return true;
                }
                queue.pop();
            }
        }
        queue.splice(0..0, saved);
        false
    }
    go(0, &mut Vec::new(), n, &nbrs)
}

fn model_matches(adj: &AdjacencyMatrix, model: &[(i64, i64)]) -> bool {
    let n = adj.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| (model[i].0.max(model[j].0) <= model[i].1.min(model[j].1)) == adj.has(i, j))
    })
}

fn check_all(n: usize) -> usize {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs).into_par_iter().map(|code| check_one(n, code)).count()
}

fn check_one(n: usize, code: u64) {
    let adj = graph_from_code(n, code);
    let interval = brute_interval(&adj);
    let unit = brute_unit_interval(&adj);
    assert_eq!(is_interval(&adj), interval, "interval, n={n}, code={code}");
    assert_eq!(is_unit_interval(&adj), unit, "unit interval, n={n}, code={code}");
    let model = interval_model(&adj).unwrap();
    assert_eq!(model.is_some(), interval);
    if let Some(m) = model {
        assert!(model_matches(&adj, &m), "interval model, n={n}, code={code}");
    }
    let unit_model = unit_interval_model(&adj).unwrap();
    assert_eq!(unit_model.is_some(), unit);
    if let Some((x, len)) = unit_model {
        let m: Vec<(i64, i64)> = x.iter().map(|&l| (l, l + len)).collect();
        assert!(model_matches(&adj, &m), "unit model, n={n}, code={code}");
    }
}

#[test]
fn brute_force_sanity() {
    assert!(brute_interval(LabeledGraph::path(5).adjacency()));
    assert!(!brute_interval(LabeledGraph::cycle(4).adjacency()));
    assert!(brute_interval(LabeledGraph::star(3).adjacency()));
    assert!(!brute_unit_interval(LabeledGraph::star(3).adjacency()));
    assert!(brute_unit_interval(LabeledGraph::complete(4).adjacency()));
    assert!(brute_unit_interval(&AdjacencyMatrix::new(3)));
}

#[test]
fn all_graphs_up_to_six_vertices() {
    let total: usize = (1..=6).map(check_all).sum();
    assert_eq!(total, 1 + 2 + 8 + 64 + 1024 + 32768);
}

#[test]
fn all_graphs_on_seven_vertices() {
    assert_eq!(check_all(7), 1 << 21);
}
