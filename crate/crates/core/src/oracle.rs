//! Exact boxicity and cubicity of small graphs.
//!
//! A graph has boxicity at most `k` iff it is the edge intersection of `k`
//! interval supergraphs. Each supergraph is `g` plus a completion set `S` of
//! non-edges, and the non-edges it keeps broken are `B(S) = nonEdges \ S`.
//! The oracle enumerates inclusion-minimal completions by subset size and
//! then finds a minimum cover of the non-edges by broken sets. Cubicity is
//! the same search with unit interval supergraphs.

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{lower_bound, require_sorted, upper_bound};
use crate::boxes::{BoxRepresentation, Interval, Rational};
use crate::error::{Error, Result};
use crate::families::build_tcc;
use crate::graph::{AdjacencyMatrix, LabeledGraph};
use crate::recognition::{interval_model, is_interval, is_unit_interval, unit_interval_model};
use crate::representation::{tcc_cube_representation, verify_representation, Verdict};

pub const DEFAULT_MAX_NON_EDGES: usize = 18;
/// Hard ceiling for [`OracleConfig::max_non_edges`].
pub const MAX_NON_EDGES_CEILING: usize = 24;
pub const DEFAULT_MAX_K: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parameter {
    Boxicity,
    Cubicity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub max_non_edges: usize,
    pub max_k: usize,
    pub mode: Parameter,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_non_edges: DEFAULT_MAX_NON_EDGES,
            max_k: DEFAULT_MAX_K,
            mode: Parameter::Boxicity,
        }
    }
}

impl OracleConfig {
    pub fn new(mode: Parameter) -> Self {
        OracleConfig { mode, ..Default::default() }
    }

    pub fn with_mode(self, mode: Parameter) -> Self {
        OracleConfig { mode, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.max_non_edges > MAX_NON_EDGES_CEILING {
            return Err(Error::input(format!(
                "maxNonEdges = {} is above the ceiling of {MAX_NON_EDGES_CEILING}",
                self.max_non_edges
            )));
        }
        Ok(())
    }

    /// Whether `g` is small enough for this configuration.
    pub fn is_feasible(&self, g: &LabeledGraph) -> bool {
        self.validate().is_ok() && g.non_edges().len() <= self.max_non_edges
    }
}

/// Minimal completions of `g` as bitmasks over `non_edges`.
struct CompletionSpace {
    non_edges: Vec<(usize, usize)>,
    minimal: Vec<u32>,
}

impl CompletionSpace {
    fn all(&self) -> u32 {
        ((1u64 << self.non_edges.len()) - 1) as u32
    }

    fn completed(adj: &AdjacencyMatrix, non_edges: &[(usize, usize)], mask: u32) -> AdjacencyMatrix {
        let mut h = adj.clone();
        for (bit, &(i, j)) in non_edges.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                h.set(i, j);
            }
        }
        h
    }

    fn build(g: &LabeledGraph, config: &OracleConfig) -> Result<Self> {
        config.validate()?;
        let non_edges = g.non_edges();
        let ne = non_edges.len();
        if ne > config.max_non_edges {
            return Err(Error::capacity(format!(
                "{ne} non-edges exceed maxNonEdges = {}",
                config.max_non_edges
            )));
        }
        let test = match config.mode {
            Parameter::Boxicity => is_interval,
            Parameter::Cubicity => is_unit_interval,
        };
        let mut minimal: Vec<u32> = Vec::new();
        for size in 0..=ne {
            let candidates: Vec<u32> = subsets_of_size(ne, size)
                .filter(|&c| !minimal.iter().any(|&m| m & c == m))
                .collect();
            if candidates.is_empty() {
                break;
            }
            let found: Vec<u32> = candidates
                .into_par_iter()
                .filter(|&c| test(&Self::completed(g.adjacency(), &non_edges, c)))
                .collect();
            minimal.extend(found);
        }
        Ok(CompletionSpace { non_edges, minimal })
    }

    fn labeled(&self, g: &LabeledGraph, mask: u32) -> Vec<(String, String)> {
        self.non_edges
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &(i, j))| (g.label(i).to_string(), g.label(j).to_string()))
            .collect()
    }
}

/// `size`-element subsets of `0..n` as bitmasks, in increasing numeric order.
fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let first = if size == 0 { Some(0u64) } else { Some((1u64 << size) - 1) };
    std::iter::successors(first.filter(|&c| c < limit), move |&c| {
        if c == 0 {
            return None;
        }
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        let next = ripple | (((ripple ^ c) / low) >> 2);
        (next < limit).then_some(next)
    })
    .map(|c| c as u32)
}

/// Inclusion-minimal completion sets of `g` for `config.mode`, smallest
/// first. An interval (or unit interval) graph yields the single empty set.
pub fn interval_completions(g: &LabeledGraph, config: &OracleConfig) -> Result<Vec<Vec<(String, String)>>> {
    let space = CompletionSpace::build(g, config)?;
    Ok(space.minimal.iter().map(|&m| space.labeled(g, m)).collect())
}

/// Whether `k` of `sets` cover `all`, given `covered` so far. Branches on
/// the uncovered element hit by the fewest sets.
fn coverable(sets: &[u32], covered: u32, all: u32, k: usize) -> bool {
    let uncovered = all & !covered;
    if uncovered == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let best = sets.iter().map(|s| (s & uncovered).count_ones()).max().unwrap_or(0);
    if (best as usize) * k < uncovered.count_ones() as usize {
        return false;
    }
    let pivot = (0..32)
        .filter(|&b| uncovered >> b & 1 == 1)
        .min_by_key(|&b| sets.iter().filter(|&&s| s >> b & 1 == 1).count())
        .expect("uncovered is non-empty");
    sets.iter()
        .filter(|&&s| s >> pivot & 1 == 1)
        .any(|&s| coverable(sets, covered | s, all, k - 1))
}

/// Lexicographically smallest index list of `k` sets covering `all`.
fn smallest_cover(sets: &[u32], all: u32, k: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(k);
    let mut covered = 0;
    let mut start = 0;
    for picked in 0..k {
        let j = (start..sets.len()).find(|&j| coverable(&sets[j + 1..], covered | sets[j], all, k - picked - 1))?;
        chosen.push(j);
        covered |= sets[j];
        start = j + 1;
    }
    Some(chosen)
}

/// Exact value with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub parameter: Parameter,
    pub value: usize,
    /// One completion set per axis; `g` is the intersection of the graphs
    /// `g + completions[i]`.
    pub completions: Vec<Vec<(String, String)>>,
    /// Intervals (unit intervals for cubicity) of each `g + completions[i]`,
    /// verified to represent `g`.
    pub representation: BoxRepresentation,
}

fn certificate_representation(
    g: &LabeledGraph,
    space: &CompletionSpace,
    masks: &[u32],
    mode: Parameter,
) -> Result<BoxRepresentation> {
    let n = g.order();
    let mut axes: Vec<Vec<Interval>> = Vec::with_capacity(masks.len());
    let mut lengths = Vec::with_capacity(masks.len());
    for &mask in masks {
        let h = CompletionSpace::completed(g.adjacency(), &space.non_edges, mask);
        let axis = match mode {
            Parameter::Boxicity => interval_model(&h)?
                .ok_or_else(|| Error::Verification("completion lost its interval model".into()))?
                .into_iter()
                .map(|(lo, hi)| Interval::int(lo, hi))
                .collect::<Result<Vec<_>>>()?,
            Parameter::Cubicity => {
                let (x, len) = unit_interval_model(&h)?
                    .ok_or_else(|| Error::Verification("completion lost its unit interval model".into()))?;
                lengths.push(Rational::from_integer(len));
                x.into_iter().map(|lo| Interval::int(lo, lo + len)).collect::<Result<Vec<_>>>()?
            }
        };
        axes.push(axis);
    }
    let boxes: IndexMap<String, Vec<Interval>> = (0..n)
        .map(|v| (g.label(v).to_string(), axes.iter().map(|a| a[v]).collect()))
        .collect();
    let unit = (mode == Parameter::Cubicity).then_some(lengths);
    let rep = BoxRepresentation::new(masks.len(), boxes, unit)?;
    match verify_representation(g, &rep)? {
        Verdict::Ok => Ok(rep),
        Verdict::Failure { pair, kind } => Err(Error::Verification(format!(
            "oracle certificate {kind:?} at {{{}, {}}}",
            pair.0, pair.1
        ))),
    }
}

/// Exact boxicity or cubicity (per `config.mode`). A value above
/// `config.max_k` is a capacity error reading "greater than maxK".
pub fn exact_parameter(g: &LabeledGraph, config: &OracleConfig) -> Result<ExactResult> {
    let space = CompletionSpace::build(g, config)?;
    let all = space.all();
    if all == 0 {
        return Ok(ExactResult {
            parameter: config.mode,
            value: 0,
            completions: Vec::new(),
            representation: BoxRepresentation::zero(g.labels().iter().cloned()),
        });
    }
    let broken: Vec<u32> = space.minimal.iter().map(|&s| all & !s).collect();
    let k = (1..=config.max_k)
        .find(|&k| coverable(&broken, 0, all, k))
        .ok_or_else(|| Error::capacity(format!("{:?} greater than maxK = {}", config.mode, config.max_k)))?;
    let picks = smallest_cover(&broken, all, k).expect("a cover of this size exists");
    let masks: Vec<u32> = picks.iter().map(|&i| space.minimal[i]).collect();
    let representation = certificate_representation(g, &space, &masks, config.mode)?;
    Ok(ExactResult {
        parameter: config.mode,
        value: k,
        completions: masks.iter().map(|&m| space.labeled(g, m)).collect(),
        representation,
    })
}

pub fn exact_boxicity(g: &LabeledGraph, config: &OracleConfig) -> Result<ExactResult> {
    exact_parameter(g, &config.with_mode(Parameter::Boxicity))
}

pub fn exact_cubicity(g: &LabeledGraph, config: &OracleConfig) -> Result<ExactResult> {
    exact_parameter(g, &config.with_mode(Parameter::Cubicity))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificationStatus {
    Exact,
    /// The oracle hit a cap; only the bounds are reported.
    #[serde(rename = "skipped: oracle-infeasible")]
    Skipped,
}

/// Construction, bounds and oracle side by side for `TCC(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub m: Vec<u32>,
    pub lower: usize,
    pub upper: usize,
    /// Dimension of the explicit construction; equals `upper`.
    pub construction_dimension: usize,
    pub boxicity: Option<usize>,
    pub cubicity: Option<usize>,
    pub status: CertificationStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Runs construction, bound formulas and (when feasible) both oracles on
/// `TCC(m)` for sorted `m`. Checks `lower <= box <= cub <= upper`, and
/// `box = cub = upper` when `d <= 3`; a violation is a verification error.
/// Oracle capacity errors turn into a skipped status.
pub fn certify_representation_optimal(m: &[u32], config: &OracleConfig) -> Result<CertificationReport> {
    require_sorted(m)?;
    let upper = upper_bound(m)? as usize;
    let (lower, construction_dimension) = if m.len() == 1 {
        (0, 0)
    } else {
        (lower_bound(m)? as usize, tcc_cube_representation(m)?.representation.dimension())
    };
    if construction_dimension != upper {
        return Err(Error::Verification(format!(
            "construction for {m:?} has dimension {construction_dimension}, expected {upper}"
        )));
    }
    let g = build_tcc(m)?;
    let mut report = CertificationReport {
        m: m.to_vec(),
        lower,
        upper,
        construction_dimension,
        boxicity: None,
        cubicity: None,
        status: CertificationStatus::Skipped,
        reason: None,
    };
    let exact = exact_boxicity(&g, config).and_then(|b| Ok((b.value, exact_cubicity(&g, config)?.value)));
    let (b, c) = match exact {
        Ok(v) => v,
        Err(Error::Capacity(reason)) => {
            report.reason = Some(reason);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    if !(lower <= b && b <= c && c <= upper) {
        return Err(Error::Verification(format!(
            "TCC{m:?}: expected {lower} <= box {b} <= cub {c} <= {upper}"
        )));
    }
    if m.len() <= 3 && (b != upper || c != upper) {
        return Err(Error::Verification(format!(
            "TCC{m:?}: box {b}, cub {c} differ from the bound {upper}"
        )));
    }
    report.boxicity = Some(b);
    report.cubicity = Some(c);
    report.status = CertificationStatus::Exact;
    Ok(report)
}
