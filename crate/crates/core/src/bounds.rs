//! Closed-form bounds on the boxicity and cubicity of `TCC(m)`, the
//! literature quantities they are compared against, and the witness
//! subgraphs behind the lower bound.

use std::collections::HashSet;

use serde::Serialize;

use crate::boxes::{serialize_rational, Rational};
use crate::error::{Error, Result};
use crate::families::{build_crown, build_tc_hypercube, exponents_of, tuples_in_box, TupleVertex};
use crate::graph::{induced_subgraph, LabeledGraph};
use crate::isomorphism::{are_isomorphic_capped, is_isomorphism};

/// Rejects empty, zero-containing or decreasing exponent lists.
pub fn require_sorted(m: &[u32]) -> Result<()> {
    if m.is_empty() {
        return Err(Error::input("exponent list is empty"));
    }
    if m.contains(&0) {
        return Err(Error::input(format!("exponents must be positive, got {m:?}")));
    }
    if m.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::input(format!("exponents must be non-decreasing, got {m:?}")));
    }
    Ok(())
}

/// `m_1 + ... + m_{d-1}`; zero for a single coordinate.
pub fn upper_bound(m: &[u32]) -> Result<u64> {
    require_sorted(m)?;
    Ok(m[..m.len() - 1].iter().map(|&x| x as u64).sum())
}

/// `m_2 + m_4 + ... + m_{d-2} + m_{d-1}` for even `d`,
/// `m_1 + m_3 + ... + m_{d-2} + m_{d-1}` for odd `d`; `m_1` when `d = 2`.
pub fn lower_bound(m: &[u32]) -> Result<u64> {
    require_sorted(m)?;
    let d = m.len();
    if d < 2 {
        return Err(Error::input("the lower bound needs at least two exponents"));
    }
    if d == 2 {
        return Ok(m[0] as u64);
    }
    // 1-based indices of the same parity as d, strictly below d - 1.
    let alternating: u64 = (1..d - 1).filter(|i| (d - i) % 2 == 0).map(|i| m[i - 1] as u64).sum();
    Ok(alternating + m[d - 2] as u64)
}

/// `m_1 f(d) + (m_2 - m_1) f(d-1) + ... + (m_{d-1} - m_{d-2}) f(2)`.
pub fn general_lower_bound(m: &[u32], f: impl Fn(usize) -> u64) -> Result<u64> {
    require_sorted(m)?;
    let d = m.len();
    if d < 2 {
        return Err(Error::input("the lower bound needs at least two exponents"));
    }
    let head = m[0] as u64 * f(d);
    let steps: u64 = (1..d - 1).map(|l| (m[l] - m[l - 1]) as u64 * f(d - l)).sum();
    Ok(head + steps)
}

/// Boxicity of the truncated hypercube closure `TC*(H_s)` used by the lower
/// bound: `ceil(s / 2)`.
pub fn ceil_half(s: usize) -> u64 {
    s.div_ceil(2) as u64
}

/// Earlier estimates the bounds are compared with, for exponents `a`:
/// `eq1 = s * sum(a)`, `eq2 = eq1 * ceil(log2(prod(a_i + 1)))` and
/// `eq3 = s / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonQuantities {
    pub eq1: u64,
    pub eq2: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub eq3: Rational,
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        (x - 1).ilog2() as u64 + 1
    }
}

pub fn comparison_quantities(a: &[u32]) -> Result<ComparisonQuantities> {
    if a.is_empty() {
        return Err(Error::input("comparison quantities need at least one exponent"));
    }
    let s = a.len() as u64;
    let eq1 = s * a.iter().map(|&x| x as u64).sum::<u64>();
    let vertices = a
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x as u64 + 1))
        .ok_or_else(|| Error::capacity("vertex count overflows"))?;
    Ok(ComparisonQuantities {
        eq1,
        eq2: eq1 * ceil_log2(vertices),
        eq3: Rational::new(s as i64, 2),
    })
}

/// [`comparison_quantities`] for the exponents of `n`.
pub fn comparison_quantities_for(n: u64) -> Result<ComparisonQuantities> {
    comparison_quantities(&exponents_of(n)?.exponents)
}

/// Every bound for one sorted exponent list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub m: Vec<u32>,
    /// Zero for a single coordinate (complete graph).
    pub lower: u64,
    pub upper: u64,
    pub general_lower: u64,
    pub eq1: u64,
    pub eq2: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub eq3: Rational,
    /// Vertices on a longest chain, `sum(m) + 1`.
    pub chain: u64,
}

pub fn bound_report(m: &[u32]) -> Result<BoundReport> {
    require_sorted(m)?;
    let (lower, general_lower) = if m.len() < 2 {
        (0, 0)
    } else {
        (lower_bound(m)?, general_lower_bound(m, ceil_half)?)
    };
    let q = comparison_quantities(m)?;
    Ok(BoundReport {
        m: m.to_vec(),
        lower,
        upper: upper_bound(m)?,
        general_lower,
        eq1: q.eq1,
        eq2: q.eq2,
        eq3: q.eq3,
        chain: m.iter().map(|&x| x as u64).sum::<u64>() + 1,
    })
}

/// One join component of the lower-bound witness: the non-uniform tuples
/// with the first `level` coordinates fixed to `m_1..m_level` and the
/// remaining `dimension` coordinates in `{value - 1, value}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessComponent {
    pub dimension: usize,
    pub level: usize,
    pub value: u32,
    pub vertices: Vec<String>,
    /// Isomorphic to `TC*(H_dimension)` under the map
    /// `x_i -> x_i - (value - 1)` on the free coordinates.
    pub isomorphic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessDecomposition {
    pub m: Vec<u32>,
    pub components: Vec<WitnessComponent>,
    pub disjoint: bool,
    /// Every pair from distinct components is adjacent in `TCC(m)`.
    pub join_verified: bool,
    /// Sum of `ceil(dimension / 2)` over the components.
    pub weighted_sum: u64,
}

impl WitnessDecomposition {
    pub fn is_verified(&self) -> bool {
        self.disjoint && self.join_verified && self.components.iter().all(|c| c.isomorphic)
    }
}

fn witness_component(m: &[u32], level: usize, value: u32) -> Result<(WitnessComponent, Vec<TupleVertex>)> {
    let d = m.len();
    let dimension = d - level;
    let free = tuples_in_box(&vec![value - 1; dimension], &vec![value; dimension]);
    let tuples: Vec<TupleVertex> = free
        .into_iter()
        .filter(|t| !t.is_uniform())
        .map(|t| TupleVertex(m[..level].iter().copied().chain(t.0).collect()))
        .collect();
    let labels: Vec<String> = tuples.iter().map(ToString::to_string).collect();
    let g = LabeledGraph::from_fn(labels.clone(), |i, j| tuples[i].comparable(&tuples[j]))?;
    let cube = build_tc_hypercube(dimension, true)?;
    let map: Vec<(String, String)> = tuples
        .iter()
        .map(|t| {
            let bits = TupleVertex(t.0[level..].iter().map(|&x| x + 1 - value).collect());
            (t.to_string(), bits.to_string())
        })
        .collect();
    let component = WitnessComponent {
        dimension,
        level,
        value,
        vertices: labels,
        isomorphic: is_isomorphism(&g, &cube, &map),
    };
    Ok((component, tuples))
}

/// Components `Y_d(j)` for `1 <= j <= m_1`, then for each `l` in
/// `1..=d-2` with `m_l < m_{l+1}` the components `Y_{d-l}(m_l + j)` for
/// `1 <= j <= m_{l+1} - m_l`, with disjointness, join and isomorphism
/// checks.
pub fn extract_witness(m: &[u32]) -> Result<WitnessDecomposition> {
    require_sorted(m)?;
    let d = m.len();
    if d < 2 {
        return Err(Error::input("the witness needs at least two exponents"));
    }
    if d > 13 {
        return Err(Error::capacity(format!("witness for {d} coordinates")));
    }
    let mut parts = Vec::new();
    for j in 1..=m[0] {
        parts.push(witness_component(m, 0, j)?);
    }
    for l in 1..=d - 2 {
        for j in 1..=m[l] - m[l - 1] {
            parts.push(witness_component(m, l, m[l - 1] + j)?);
        }
    }
    let mut seen = HashSet::new();
    let disjoint = parts.iter().flat_map(|(_, ts)| ts).all(|t| seen.insert(t.clone()));
    let join_verified = parts.iter().enumerate().all(|(a, (_, ta))| {
        parts[a + 1..]
            .iter()
            .all(|(_, tb)| ta.iter().all(|x| tb.iter().all(|y| x.comparable(y))))
    });
    let components: Vec<WitnessComponent> = parts.into_iter().map(|(c, _)| c).collect();
    let weighted_sum = components.iter().map(|c| ceil_half(c.dimension)).sum();
    Ok(WitnessDecomposition {
        m: m.to_vec(),
        components,
        disjoint,
        join_verified,
        weighted_sum,
    })
}

/// Crown inside `TC(H_s)`: `a[i]` is the `i`-th unit tuple and `b[i]` its
/// complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrownWitness {
    pub s: usize,
    pub a: Vec<String>,
    pub b: Vec<String>,
    /// Bijection from the induced subgraph onto `build_crown(s)`.
    pub isomorphism: Option<Vec<(String, String)>>,
}

pub fn extract_crown(s: usize) -> Result<CrownWitness> {
    if s < 3 {
        return Err(Error::input("crown extraction needs s >= 3"));
    }
    let unit = |i: usize, on: u32| TupleVertex((0..s).map(|k| if k == i { on } else { 1 - on }).collect());
    let a: Vec<String> = (0..s).map(|i| unit(i, 1).to_string()).collect();
    let b: Vec<String> = (0..s).map(|i| unit(i, 0).to_string()).collect();
    let cube = build_tc_hypercube(s, false)?;
    let keep: Vec<&String> = a.iter().chain(&b).collect();
    let h = induced_subgraph(&cube, &keep)?;
    let isomorphism = are_isomorphic_capped(&h, &build_crown(s)?, 2 * s)?;
    Ok(CrownWitness { s, a, b, isomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_examples() {
        assert_eq!(upper_bound(&[1, 2, 3]).unwrap(), 3);
        assert_eq!(upper_bound(&[5]).unwrap(), 0);
        assert_eq!(upper_bound(&[1, 1]).unwrap(), 1);
        assert!(upper_bound(&[2, 1]).is_err());
    }

    #[test]
    fn lower_examples() {
        assert_eq!(lower_bound(&[1, 2]).unwrap(), 1);
        assert_eq!(lower_bound(&[1, 2, 3]).unwrap(), 3);
        assert_eq!(lower_bound(&[1, 1, 2, 2]).unwrap(), 3);
        assert_eq!(lower_bound(&[1, 1, 1, 1]).unwrap(), 2);
        assert_eq!(lower_bound(&[1, 1, 1, 1, 1]).unwrap(), 3);
        assert!(lower_bound(&[3]).is_err());
        assert!(lower_bound(&[3, 1]).is_err());
    }

    #[test]
    fn general_lower_examples() {
        assert_eq!(general_lower_bound(&[1, 1, 1, 1, 1], ceil_half).unwrap(), 3);
        assert_eq!(general_lower_bound(&[2, 2], ceil_half).unwrap(), 2);
        assert_eq!(general_lower_bound(&[1, 2, 3], ceil_half).unwrap(), 3);
    }

    #[test]
    fn comparison_examples() {
        let q = comparison_quantities_for(360).unwrap();
        assert_eq!((q.eq1, q.eq2, q.eq3), (18, 90, Rational::new(3, 2)));
        assert_eq!(comparison_quantities_for(7).unwrap().eq1, 1);
        assert_eq!(comparison_quantities_for(30).unwrap().eq1, 9);
        assert!(comparison_quantities_for(1).is_err());
    }

    #[test]
    fn report_json() {
        let r = bound_report(&[1, 1, 1]).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"m":[1,1,1],"lower":2,"upper":2,"general_lower":2,"eq1":9,"eq2":27,"eq3":"3/2","chain":4}"#
        );
        let single = bound_report(&[4]).unwrap();
        assert_eq!((single.lower, single.upper, single.chain), (0, 0, 5));
    }

    #[test]
    fn witness_examples() {
        let w = extract_witness(&[1, 1, 1]).unwrap();
        assert_eq!(w.components.len(), 1);
        assert_eq!(w.components[0].vertices.len(), 6);
        assert!(w.is_verified());

        let w = extract_witness(&[1, 2, 2]).unwrap();
        assert_eq!(w.components.len(), 2);
        assert_eq!(w.components[1].vertices, ["(1,1,2)", "(1,2,1)"]);
        assert!(w.is_verified());
        assert_eq!(w.weighted_sum, lower_bound(&[1, 2, 2]).unwrap());

        let w = extract_witness(&[2, 2]).unwrap();
        assert_eq!(w.components.len(), 2);
        assert!(w.components.iter().all(|c| c.vertices.len() == 2));
        assert!(w.is_verified());
    }

    #[test]
    fn crown_examples() {
        let c = extract_crown(3).unwrap();
        assert_eq!(c.a[0], "(1,0,0)");
        assert_eq!(c.b[0], "(0,1,1)");
        assert!(c.isomorphism.is_some());
        assert!(extract_crown(4).unwrap().isomorphism.is_some());
        assert!(extract_crown(2).is_err());
    }
}
