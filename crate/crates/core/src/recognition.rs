//! Interval and unit interval graph recognition, plus explicit interval
//! models for graphs that pass.
//!
//! Recognition follows the classical characterizations: a graph is an
//! interval graph iff it is chordal and has no asteroidal triple, and a unit
//! interval graph iff it is an interval graph without an induced claw.
//! The model builders are separate algorithms (clique paths and LexBFS
//! orderings) so that the two can be checked against each other.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{iter_bits, AdjacencyMatrix, LabeledGraph};

fn empty_row(adj: &AdjacencyMatrix) -> Vec<u64> {
    vec![0; adj.words()]
}

#[inline]
fn set_bit(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

#[inline]
fn get_bit(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Maximum cardinality search; the reverse of the visit order is a perfect
/// elimination ordering iff the graph is chordal.
fn mcs_order(adj: &AdjacencyMatrix) -> Vec<usize> {
    let n = adj.len();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for u in adj.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order.reverse();
    order
}

/// A perfect elimination ordering, or `None` if the graph is not chordal.
pub fn perfect_elimination_order(adj: &AdjacencyMatrix) -> Option<Vec<usize>> {
    let order = mcs_order(adj);
    let n = adj.len();
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    for &v in &order {
        let mut later = empty_row(adj);
        let mut parent = None;
        for u in adj.neighbors(v).filter(|&u| pos[u] > pos[v]) {
            set_bit(&mut later, u);
            if parent.is_none_or(|p: usize| pos[u] < pos[p]) {
                parent = Some(u);
            }
        }
        if let Some(p) = parent {
            let mut rest = later;
            rest[p / 64] &= !(1 << (p % 64));
            if !is_subset(&rest, adj.row(p)) {
                return None;
            }
        }
    }
    Some(order)
}

pub fn is_chordal(adj: &AdjacencyMatrix) -> bool {
    perfect_elimination_order(adj).is_some()
}

/// Component ids of `G - N[a]` for every vertex `a` (`usize::MAX` marks the
/// removed closed neighbourhood).
fn components_avoiding(adj: &AdjacencyMatrix) -> Vec<Vec<usize>> {
    let n = adj.len();
    (0..n)
        .map(|a| {
            let mut comp = vec![usize::MAX; n];
            let mut blocked = adj.row(a).to_vec();
            set_bit(&mut blocked, a);
            let mut next_id = 0;
            for s in 0..n {
                if get_bit(&blocked, s) || comp[s] != usize::MAX {
                    continue;
                }
                comp[s] = next_id;
                let mut stack = vec![s];
                while let Some(v) = stack.pop() {
                    for u in adj.neighbors(v) {
                        if !get_bit(&blocked, u) && comp[u] == usize::MAX {
                            comp[u] = next_id;
                            stack.push(u);
                        }
                    }
                }
                next_id += 1;
            }
            comp
        })
        .collect()
}

/// Three pairwise non-adjacent vertices such that each pair is joined by a
/// path avoiding the closed neighbourhood of the third.
pub fn find_asteroidal_triple(adj: &AdjacencyMatrix) -> Option<(usize, usize, usize)> {
    let n = adj.len();
    let comp = components_avoiding(adj);
    for a in 0..n {
        for b in a + 1..n {
            if adj.has(a, b) {
                continue;
            }
            for c in b + 1..n {
                if adj.has(a, c) || adj.has(b, c) {
                    continue;
                }
                if comp[a][b] == comp[a][c] && comp[b][a] == comp[b][c] && comp[c][a] == comp[c][b] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// An induced `K_{1,3}` as `(centre, leaves)`.
pub fn find_claw(adj: &AdjacencyMatrix) -> Option<(usize, [usize; 3])> {
    let n = adj.len();
    for v in 0..n {
        let nbrs: Vec<usize> = adj.neighbors(v).collect();
        for (x, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[x + 1..] {
                if adj.has(a, b) {
                    continue;
                }
                let rest = adj
                    .row(v)
                    .iter()
                    .zip(adj.row(a))
                    .zip(adj.row(b))
                    .map(|((nv, na), nb)| nv & !na & !nb)
                    .collect::<Vec<_>>();
                let third = iter_bits(&rest).find(|&c| c != a && c != b);
                if let Some(c) = third {
                    return Some((v, [a, b, c]));
                }
            }
        }
    }
    None
}

pub fn is_interval(adj: &AdjacencyMatrix) -> bool {
    is_chordal(adj) && find_asteroidal_triple(adj).is_none()
}

pub fn is_unit_interval(adj: &AdjacencyMatrix) -> bool {
    is_interval(adj) && find_claw(adj).is_none()
}

/// True iff `g` is the intersection graph of closed intervals.
pub fn is_interval_graph(g: &LabeledGraph) -> bool {
    is_interval(g.adjacency())
}

/// True iff `g` is the intersection graph of closed unit intervals.
pub fn is_unit_interval_graph(g: &LabeledGraph) -> bool {
    is_unit_interval(g.adjacency())
}

/// Maximal cliques of a chordal graph, read off a perfect elimination
/// ordering, as bit rows.
fn chordal_maximal_cliques(adj: &AdjacencyMatrix, peo: &[usize]) -> Vec<Vec<u64>> {
    let n = adj.len();
    let mut pos = vec![0; n];
    for (p, &v) in peo.iter().enumerate() {
        pos[v] = p;
    }
    let mut candidates: Vec<Vec<u64>> = peo
        .iter()
        .map(|&v| {
            let mut c = empty_row(adj);
            set_bit(&mut c, v);
            for u in adj.neighbors(v).filter(|&u| pos[u] > pos[v]) {
                set_bit(&mut c, u);
            }
            c
        })
        .collect();
    candidates.sort();
    candidates.dedup();
    let maximal: Vec<Vec<u64>> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d != *c && is_subset(c, d)))
        .cloned()
        .collect();
    maximal
}

/// Integer interval model `[lo, hi]` per vertex, built from a consecutive
/// ordering of maximal cliques. `Ok(None)` if `adj` is not an interval graph.
pub fn interval_model(adj: &AdjacencyMatrix) -> Result<Option<Vec<(i64, i64)>>> {
    let n = adj.len();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let Some(peo) = perfect_elimination_order(adj) else {
        return Ok(None);
    };
    let cliques = chordal_maximal_cliques(adj, &peo);
    let c = cliques.len();
    if c > 64 {
        return Err(Error::capacity(format!("interval model search over {c} maximal cliques")));
    }
    let full: u64 = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };

    fn search(
        cliques: &[Vec<u64>],
        placed: u64,
        union: &[u64],
        last: usize,
        full: u64,
        path: &mut Vec<usize>,
        dead: &mut HashSet<(u64, usize)>,
    ) -> bool {
        if placed == full {
            return true;
        }
        if dead.contains(&(placed, last)) {
            return false;
        }
        for next in 0..cliques.len() {
            if placed >> next & 1 == 1 {
                continue;
            }
            // Vertices already seen but absent from the last clique are closed.
            let clash = cliques[next]
                .iter()
                .zip(union)
                .zip(&cliques[last])
                .any(|((nx, un), ls)| nx & un & !ls != 0);
            if clash {
                continue;
            }
            let grown: Vec<u64> = union.iter().zip(&cliques[next]).map(|(a, b)| a | b).collect();
            path.push(next);
            if search(cliques, placed | 1 << next, &grown, next, full, path, dead) {
                return true;
            }
            path.pop();
        }
        dead.insert((placed, last));
        false
    }

    let mut dead = HashSet::new();
    for first in 0..c {
        let mut path = vec![first];
        if search(&cliques, 1 << first, &cliques[first], first, full, &mut path, &mut dead) {
            let mut model = vec![(i64::MAX, i64::MIN); n];
            for (p, &k) in path.iter().enumerate() {
                for v in iter_bits(&cliques[k]) {
                    let m = &mut model[v];
                    m.0 = m.0.min(p as i64);
                    m.1 = m.1.max(p as i64);
                }
            }
            return Ok(Some(model));
        }
    }
    Ok(None)
}

/// Lexicographic breadth-first search. With `previous`, ties go to the
/// vertex appearing last in `previous` (the LexBFS+ rule); otherwise to the
/// smallest index.
pub fn lex_bfs(adj: &AdjacencyMatrix, previous: Option<&[usize]>) -> Vec<usize> {
    let n = adj.len();
    let mut rank = vec![0usize; n];
    if let Some(prev) = previous {
        for (p, &v) in prev.iter().enumerate() {
            rank[v] = p;
        }
    } else {
        for (v, r) in rank.iter_mut().enumerate() {
            *r = n - v;
        }
    }
    let mut label: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| label[a].cmp(&label[b]).then(rank[a].cmp(&rank[b])))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for u in adj.neighbors(v) {
            if !visited[u] {
                label[u].push(n - step);
            }
        }
    }
    order
}

/// Whether `order` is a unit interval ordering: for `u < v < w` in the
/// order, `u ~ w` forces `u ~ v` and `v ~ w`.
pub fn is_umbrella_ordering(adj: &AdjacencyMatrix, order: &[usize]) -> bool {
    let n = order.len();
    for i in 0..n {
        for k in i + 2..n {
            if !adj.has(order[i], order[k]) {
                continue;
            }
            for &v in &order[i + 1..k] {
                if !adj.has(order[i], v) || !adj.has(v, order[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Unit interval model: left endpoints `x` and a common length `len`, so
/// vertex `v` gets `[x[v], x[v] + len]`. `Ok(None)` if `adj` is not a unit
/// interval graph.
///
/// A three-sweep LexBFS+ ordering is turned into positions by solving the
/// difference constraints `x_w - x_u <= len` (adjacent) and
/// `x_w - x_u >= len + 1` (non-adjacent) for `u` before `w`, with `len = n`
/// so an integral solution exists whenever a real one does.
pub fn unit_interval_model(adj: &AdjacencyMatrix) -> Result<Option<(Vec<i64>, i64)>> {
    let n = adj.len();
    let len = n.max(1) as i64;
    if n == 0 {
        return Ok(Some((Vec::new(), len)));
    }
    let s1 = lex_bfs(adj, None);
    let s2 = lex_bfs(adj, Some(&s1));
    let s3 = lex_bfs(adj, Some(&s2));
    if !is_umbrella_ordering(adj, &s3) {
        return Ok(None);
    }
    // Edge (a -> b, w) encodes x_b - x_a <= w.
    let mut edges = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            let (u, w) = (s3[i], s3[k]);
            edges.push((w, u, 0));
            if adj.has(u, w) {
                edges.push((u, w, len));
            } else {
                edges.push((w, u, -(len + 1)));
            }
        }
    }
    let mut dist = vec![0i64; n];
    for round in 0..=n {
        let mut changed = false;
        for &(a, b, w) in &edges {
            if dist[a] + w < dist[b] {
                dist[b] = dist[a] + w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == n {
            return Err(Error::capacity(
                "unit interval constraints infeasible for an umbrella ordering",
            ));
        }
    }
    let min = dist.iter().copied().min().unwrap_or(0);
    Ok(Some((dist.iter().map(|d| d - min).collect(), len)))
}
