//! Finite posets: divisibility orders, comparability graphs, realizers and
//! an exact brute-force dimension oracle for small posets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{divisors, exponents_of};
use crate::graph::LabeledGraph;

/// Default cap on the number of linear extensions enumerated by
/// [`exact_poset_dimension`].
pub const DEFAULT_MAX_EXTENSIONS: usize = 5000;

/// Ground set plus a transitively closed strict order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    ground: Vec<String>,
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// Validates irreflexivity, antisymmetry and transitivity of
    /// `less(i, j)`, meaning `ground[i] < ground[j]`.
    pub fn from_fn<S: Into<String>>(
        ground: impl IntoIterator<Item = S>,
        mut less: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let ground: Vec<String> = ground.into_iter().map(Into::into).collect();
        let n = ground.len();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = ground.iter().find(|g| !seen.insert(g.as_str())) {
            return Err(Error::input(format!("duplicate poset element {dup:?}")));
        }
        let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| less(i, j)).collect()).collect();
        for i in 0..n {
            if rel[i][i] {
                return Err(Error::input(format!("{:?} < itself", ground[i])));
            }
            for j in 0..n {
                if rel[i][j] && rel[j][i] {
                    return Err(Error::input(format!("{:?} and {:?} precede each other", ground[i], ground[j])));
                }
                if rel[i][j] {
                    if let Some(k) = (0..n).find(|&k| rel[j][k] && !rel[i][k]) {
                        return Err(Error::input(format!(
                            "order not transitive at {:?} < {:?} < {:?}",
                            ground[i], ground[j], ground[k]
                        )));
                    }
                }
            }
        }
        Ok(Poset { ground, less: rel })
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less[i][j] || self.less[j][i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == label)
    }

    fn indices_of(&self, ext: &LinearExtension) -> Result<Vec<usize>> {
        let n = self.len();
        if ext.0.len() != n {
            return Err(Error::input(format!("extension lists {} elements, poset has {n}", ext.0.len())));
        }
        let mut hit = vec![false; n];
        ext.0
            .iter()
            .map(|l| {
                let i = self
                    .index_of(l)
                    .ok_or_else(|| Error::input(format!("unknown poset element {l:?}")))?;
                if std::mem::replace(&mut hit[i], true) {
                    return Err(Error::input(format!("element {l:?} repeated in extension")));
                }
                Ok(i)
            })
            .collect()
    }
}

/// A linear order on the ground set, listed from least to greatest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearExtension(pub Vec<String>);

/// A family of linear extensions, as `{"extensions": [[...], ...]}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizer {
    pub extensions: Vec<LinearExtension>,
}

impl Realizer {
    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }
}

/// Divisibility order on a set of distinct positive integers.
pub fn divisibility_poset(ground: &[u64]) -> Result<Poset> {
    if ground.is_empty() {
        return Err(Error::input("divisibility poset needs a non-empty ground set"));
    }
    if ground.contains(&0) {
        return Err(Error::input("divisibility poset elements must be positive"));
    }
    Poset::from_fn(ground.iter().map(u64::to_string), |i, j| {
        i != j && ground[j] % ground[i] == 0
    })
}

pub fn comparability_graph(p: &Poset) -> LabeledGraph {
    LabeledGraph::from_fn(p.ground.iter().cloned(), |i, j| p.comparable(i, j)).expect("ground is distinct")
}

/// One linear extension per prime `p_i` of `n`: the divisors are grouped by
/// the exponent of `p_i`, groups in increasing exponent, each group in
/// increasing numeric order.
pub fn build_divisibility_realizer(n: u64) -> Result<Realizer> {
    let f = exponents_of(n)?;
    let ds = divisors(n);
    let extensions = (0..f.omega())
        .map(|i| {
            let mut order = ds.clone();
            order.sort_by_key(|&d| (f.exponent_tuple(d)[i], d));
            LinearExtension(order.iter().map(u64::to_string).collect())
        })
        .collect();
    Ok(Realizer { extensions })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RealizerVerdict {
    Ok,
    /// Extension `extension` places `pair.1` before `pair.0` although
    /// `pair.0 < pair.1`.
    ExtensionViolation { extension: usize, pair: (String, String) },
    /// No extension puts `pair.1` before `pair.0`.
    PairNotReversed { pair: (String, String) },
}

impl RealizerVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, RealizerVerdict::Ok)
    }
}

pub fn verify_realizer(p: &Poset, r: &Realizer) -> Result<RealizerVerdict> {
    let n = p.len();
    let positions: Vec<Vec<usize>> = r
        .extensions
        .iter()
        .map(|e| {
            let idx = p.indices_of(e)?;
            let mut pos = vec![0; n];
            for (k, &i) in idx.iter().enumerate() {
                pos[i] = k;
            }
            Ok(pos)
        })
        .collect::<Result<_>>()?;
    let label = |i: usize, j: usize| (p.ground[i].clone(), p.ground[j].clone());
    for (e, pos) in positions.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if p.less(i, j) && pos[i] > pos[j] {
                    return Ok(RealizerVerdict::ExtensionViolation { extension: e, pair: label(i, j) });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !p.comparable(i, j) && !positions.iter().any(|pos| pos[j] < pos[i]) {
                return Ok(RealizerVerdict::PairNotReversed { pair: label(i, j) });
            }
        }
    }
    Ok(RealizerVerdict::Ok)
}

/// Number of elements in a longest chain.
pub fn longest_chain(p: &Poset) -> usize {
    let n = p.len();
    // In a transitively closed order, a < b implies b has strictly more
    // predecessors, so sorting by predecessor count is a topological order.
    let preds: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| p.less(i, j)).count()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| preds[v]);
    let mut best = vec![1usize; n];
    for (k, &v) in order.iter().enumerate() {
        for &u in &order[..k] {
            if p.less(u, v) {
                best[v] = best[v].max(best[u] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// All linear extensions as index sequences, lexicographically ordered.
/// More than `cap` extensions is a capacity error.
pub fn linear_extensions(p: &Poset, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn go(
        p: &Poset,
        placed: &mut Vec<bool>,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        let n = p.len();
        if prefix.len() == n {
            if out.len() == cap {
                return Err(Error::capacity(format!(
                    "more than {cap} linear extensions (enumerated {} before stopping)",
                    out.len()
                )));
            }
            out.push(prefix.clone());
            return Ok(());
        }
        for v in 0..n {
            if placed[v] || (0..n).any(|u| p.less(u, v) && !placed[u]) {
                continue;
            }
            placed[v] = true;
            prefix.push(v);
            go(p, placed, prefix, out, cap)?;
            prefix.pop();
            placed[v] = false;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(p, &mut vec![false; p.len()], &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// Exact dimension with a minimum realizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionResult {
    pub dimension: usize,
    pub realizer: Realizer,
    pub extension_count: usize,
}

struct CoverSearch<'a> {
    p: &'a Poset,
    pairs: Vec<(usize, usize)>,
    covers: Vec<Vec<u64>>,
    covering: Vec<Vec<usize>>,
}

impl CoverSearch<'_> {
    /// A topological order of the poset with the uncovered pairs forced,
    /// if the combined relation is acyclic.
    fn completing_extension(&self, uncovered: &[u64]) -> Option<Vec<usize>> {
        let n = self.p.len();
        let mut succ = vec![vec![false; n]; n];
        for (i, row) in succ.iter_mut().enumerate() {
            for (j, s) in row.iter_mut().enumerate() {
                *s = self.p.less(i, j);
            }
        }
        for id in crate::graph::iter_bits(uncovered) {
            let (x, y) = self.pairs[id];
            succ[x][y] = true;
        }
        let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| succ[i][j]).count()).collect();
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let v = (0..n).find(|&v| !done[v] && indeg[v] == 0)?;
            done[v] = true;
            order.push(v);
            for w in 0..n {
                if succ[v][w] {
                    indeg[w] -= 1;
                }
            }
        }
        Some(order)
    }

    fn search(&self, left: usize, uncovered: &[u64], chosen: &mut Vec<Vec<usize>>, exts: &[Vec<usize>]) -> bool {
        if uncovered.iter().all(|&w| w == 0) {
            return true;
        }
        if left == 0 {
            return false;
        }
        if left == 1 {
            if let Some(order) = self.completing_extension(uncovered) {
                chosen.push(order);
                return true;
            }
            return false;
        }
        let pivot = crate::graph::iter_bits(uncovered)
            .min_by_key(|&id| (self.covering[id].len(), id))
            .expect("uncovered is non-empty");
        for &e in &self.covering[pivot] {
            let rest: Vec<u64> = uncovered.iter().zip(&self.covers[e]).map(|(u, c)| u & !c).collect();
            chosen.push(exts[e].clone());
            if self.search(left - 1, &rest, chosen, exts) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Minimum number of linear extensions whose intersection is the order.
///
/// Enumerates every linear extension (at most `max_extensions`), then tries
/// `k = 1, 2, ..., max_k`, covering each ordered incomparable pair `(x, y)`
/// by an extension placing `x` before `y`. The last pick of each branch is
/// decided directly: some extension covers the remaining pairs iff forcing
/// them keeps the order acyclic.
pub fn exact_poset_dimension(p: &Poset, max_extensions: usize, max_k: usize) -> Result<DimensionResult> {
    let n = p.len();
    let exts = linear_extensions(p, max_extensions)?;
    let to_ext = |order: &[usize]| LinearExtension(order.iter().map(|&i| p.ground[i].clone()).collect());
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && !p.comparable(x, y))
        .collect();
    if pairs.is_empty() {
        let realizer = Realizer { extensions: exts.first().map(|e| to_ext(e)).into_iter().collect() };
        return Ok(DimensionResult { dimension: 1, realizer, extension_count: exts.len() });
    }
    let words = pairs.len().div_ceil(64);
    let covers: Vec<Vec<u64>> = exts
        .iter()
        .map(|order| {
            let mut pos = vec![0; n];
            for (k, &v) in order.iter().enumerate() {
                pos[v] = k;
            }
            let mut bits = vec![0u64; words];
            for (id, &(x, y)) in pairs.iter().enumerate() {
                if pos[x] < pos[y] {
                    bits[id / 64] |= 1 << (id % 64);
                }
            }
            bits
        })
        .collect();
    let covering: Vec<Vec<usize>> = (0..pairs.len())
        .map(|id| (0..exts.len()).filter(|&e| covers[e][id / 64] >> (id % 64) & 1 == 1).collect())
        .collect();
    let search = CoverSearch { p, pairs, covers, covering };
    let mut all = vec![u64::MAX; words];
    let tail = search.pairs.len() % 64;
    if tail != 0 {
        all[words - 1] = (1u64 << tail) - 1;
    }
    for k in 2..=max_k {
        let mut chosen = Vec::new();
        if search.search(k, &all, &mut chosen, &exts) {
            let realizer = Realizer { extensions: chosen.iter().map(|o| to_ext(o)).collect() };
            return Ok(DimensionResult { dimension: k, realizer, extension_count: exts.len() });
        }
    }
    Err(Error::capacity(format!("poset dimension exceeds the cap k = {max_k}")))
}
