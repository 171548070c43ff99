//! Explicit cube representations of `TCC(m)` and of the divisor and power
//! graphs derived from it, with exact verification, unit normalization and
//! lifting from reduced power graphs to full power graphs.
//!
//! The construction is recursive over coordinates. With the coordinates
//! ordered so that `a_1 >= a_2 >= ... >= a_d`, `TCC(a_1)` is complete and
//! gets the empty box. Passing from `s - 1` to `s` coordinates, a vertex
//! `(x, b)` keeps the `k` intervals of `x` ("type 1" axes) and gains `a_s`
//! new axes ("type 2"). With `S = a_1 + ... + a_{s-1}` and `|x|` the
//! coordinate sum of `x`, type-2 axis `a` (1-based) assigns
//!
//! ```text
//! [|x|, S + |x|]   if b <= a - 1
//! [|x| - S, |x|]   if b >= a
//! ```
//!
//! Type-1 axes break every pair whose prefixes are incomparable; type-2 axis
//! `b + 1` breaks `(x, b)` against `(y, c)` when `x > y` and `b < c`. The
//! total dimension is `a_2 + ... + a_d`, i.e. the sum of all but the
//! largest exponent.

use indexmap::IndexMap;
use serde::Serialize;

use crate::boxes::{representation_to_graph, BoxRepresentation, Interval, Rational};
use crate::error::{Error, Result};
use crate::families::{
    build_divisor_graph, build_power_graph_cyclic, build_reduced_power_graph_cyclic, build_tcc,
    divisors, exponents_of, TupleVertex,
};
use crate::graph::LabeledGraph;

/// Dimensions contributed by one recursion level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelTrace {
    pub level: usize,
    /// Sum of the exponents already placed, which is also the common
    /// interval length of this level's type-2 axes.
    #[serde(rename = "S")]
    pub prefix_sum: u64,
    pub type1_dims: usize,
    pub type2_dims: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ConstructionTrace {
    pub levels: Vec<LevelTrace>,
}

impl ConstructionTrace {
    pub fn dimension(&self) -> usize {
        self.levels.last().map_or(0, |l| l.type1_dims + l.type2_dims)
    }
}

/// A verified representation together with how it was built.
#[derive(Debug, Clone)]
pub struct Construction {
    pub representation: BoxRepresentation,
    pub trace: ConstructionTrace,
    /// Recursion order: `recursion_order[j]` is the index into `m` of the
    /// coordinate placed at level `j + 1`.
    pub recursion_order: Vec<usize>,
}

/// Outcome of checking a representation against a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Ok,
    Failure { pair: (String, String), kind: MismatchKind },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MismatchKind {
    /// The graph has the edge but the boxes are disjoint.
    MissingEdge,
    /// The boxes meet but the graph has no such edge.
    SpuriousEdge,
}

/// Compares the intersection graph of `rep` with `g` edge by edge and
/// reports the first offending pair in `g`'s vertex order.
pub fn verify_representation(g: &LabeledGraph, rep: &BoxRepresentation) -> Result<Verdict> {
    let h = representation_to_graph(rep, g.labels())?;
    let n = g.order();
    for i in 0..n {
        for j in i + 1..n {
            let (want, got) = (g.has_edge(i, j), h.has_edge(i, j));
            if want != got {
                let kind = if want { MismatchKind::MissingEdge } else { MismatchKind::SpuriousEdge };
                return Ok(Verdict::Failure {
                    pair: (g.label(i).to_string(), g.label(j).to_string()),
                    kind,
                });
            }
        }
    }
    Ok(Verdict::Ok)
}

fn require_verified(g: &LabeledGraph, rep: &BoxRepresentation, what: &str) -> Result<()> {
    match verify_representation(g, rep)? {
        Verdict::Ok => Ok(()),
        Verdict::Failure { pair, kind } => Err(Error::Verification(format!(
            "{what}: {kind:?} at {{{}, {}}}",
            pair.0, pair.1
        ))),
    }
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x)
}

/// Cube representation of `TCC(m)` of dimension (sum of `m`) minus (max of
/// `m`), verified edge-exactly before it is returned. Requires `d >= 2`;
/// `TCC(m_1)` is complete and takes [`BoxRepresentation::zero`] instead.
pub fn tcc_cube_representation(m: &[u32]) -> Result<Construction> {
    if m.len() < 2 {
        return Err(Error::input(
            "a single coordinate gives a complete graph; use the zero-dimensional representation",
        ));
    }
    let target = build_tcc(m)?;
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by(|&i, &j| m[j].cmp(&m[i]));
    let a: Vec<u32> = order.iter().map(|&i| m[i]).collect();

    // (tuple in recursion order, box)
    let mut current: Vec<(Vec<u32>, Vec<Interval>)> = (0..=a[0]).map(|x| (vec![x], Vec::new())).collect();
    let mut lengths: Vec<Rational> = Vec::new();
    let mut levels = Vec::new();
    for s in 1..a.len() {
        let big_s: i64 = a[..s].iter().map(|&x| x as i64).sum();
        let top = a[s];
        let k = lengths.len();
        let mut next = Vec::with_capacity(current.len() * (top as usize + 1));
        for (x, boxes) in &current {
            let w: i64 = x.iter().map(|&c| c as i64).sum();
            for b in 0..=top {
                let mut t = x.clone();
                t.push(b);
                let mut bx = boxes.clone();
                for axis in 1..=top {
                    let iv = if b < axis {
                        Interval::new(int(w), int(big_s + w))
                    } else {
                        Interval::new(int(w - big_s), int(w))
                    };
                    bx.push(iv?);
                }
                next.push((t, bx));
            }
        }
        current = next;
        lengths.extend(std::iter::repeat(int(big_s)).take(top as usize));
        levels.push(LevelTrace {
            level: s + 1,
            prefix_sum: big_s as u64,
            type1_dims: k,
            type2_dims: top as usize,
        });
    }

    let mut by_label: IndexMap<String, Vec<Interval>> = current
        .into_iter()
        .map(|(t, bx)| {
            let mut natural = vec![0; t.len()];
            for (j, &i) in order.iter().enumerate() {
                natural[i] = t[j];
            }
            (TupleVertex(natural).to_string(), bx)
        })
        .collect();
    let boxes: IndexMap<String, Vec<Interval>> = target
        .labels()
        .iter()
        .map(|l| (l.clone(), by_label.swap_remove(l).expect("every tuple was generated")))
        .collect();
    let dimension = lengths.len();
    let representation = BoxRepresentation::new(dimension, boxes, Some(lengths))?;
    require_verified(&target, &representation, "TCC construction")?;
    Ok(Construction {
        representation,
        trace: ConstructionTrace { levels },
        recursion_order: order,
    })
}

/// Rescales every axis to unit length using the recorded per-axis lengths.
///
/// Axes of length zero hold points only: if all points coincide the axis is
/// dropped; otherwise each distinct point is replaced by a unit interval at
/// twice its rank, which keeps exactly the same overlaps.
pub fn normalize_to_unit(rep: &BoxRepresentation) -> Result<BoxRepresentation> {
    let lengths = rep
        .unit_lengths()
        .ok_or_else(|| Error::input("representation carries no unit lengths"))?
        .to_vec();
    // Re-validates that every axis really is uniform.
    let rep = rep.clone().with_unit_lengths(Some(lengths.clone()))?;
    let zero = int(0);
    let mut keep = Vec::new();
    let mut point_ranks: Vec<Option<Vec<Rational>>> = vec![None; lengths.len()];
    for (i, len) in lengths.iter().enumerate() {
        if *len != zero {
            keep.push(i);
            continue;
        }
        let mut points: Vec<Rational> = rep.boxes().values().map(|b| b[i].lo()).collect();
        points.sort();
        points.dedup();
        if points.len() > 1 {
            keep.push(i);
            point_ranks[i] = Some(points);
        }
    }
    let scaled = rep.map_axes(|i, iv| match &point_ranks[i] {
        Some(points) => {
            let r = points.binary_search(&iv.lo()).expect("point was collected") as i64;
            Interval::new(int(2 * r), int(2 * r + 1)).expect("ordered")
        }
        None if lengths[i] == zero => iv,
        None => Interval::new(iv.lo() / lengths[i], iv.hi() / lengths[i]).expect("positive scale"),
    });
    let out = scaled
        .select_axes(&keep)
        .with_unit_lengths(Some(vec![int(1); keep.len()]))?;
    let labels: Vec<String> = rep.boxes().keys().cloned().collect();
    if representation_to_graph(&rep, &labels)? != representation_to_graph(&out, &labels)? {
        return Err(Error::Verification("unit normalization changed the intersection graph".into()));
    }
    Ok(out)
}

/// Lifts a representation of the reduced power graph of `Z_n` to the full
/// power graph: every element takes the box of its class.
pub fn lift_to_power_graph(n: u64, reduced_rep: &BoxRepresentation) -> Result<BoxRepresentation> {
    let reduced = build_reduced_power_graph_cyclic(n)?;
    match verify_representation(&reduced.graph, reduced_rep)? {
        Verdict::Ok => {}
        Verdict::Failure { pair, kind } => {
            return Err(Error::input(format!(
                "input does not represent the reduced power graph of Z_{n}: {kind:?} at {{{}, {}}}",
                pair.0, pair.1
            )))
        }
    }
    let boxes: IndexMap<String, Vec<Interval>> = (0..n)
        .map(|x| {
            let b = reduced_rep.box_of(&reduced.class_of(x)).expect("class covered").to_vec();
            (x.to_string(), b)
        })
        .collect();
    let lifted = BoxRepresentation::new(
        reduced_rep.dimension(),
        boxes,
        reduced_rep.unit_lengths().map(<[Rational]>::to_vec),
    )?;
    require_verified(&build_power_graph_cyclic(n)?, &lifted, "power graph lift")?;
    Ok(lifted)
}

/// Verified representation of `D(n)`: the construction over the sorted
/// exponents of `n`, transported along `p_1^{x_1}...p_s^{x_s} -> (x_1..x_s)`.
pub fn representation_for_divisor_graph(n: u64) -> Result<Construction> {
    let f = exponents_of(n)?;
    let target = build_divisor_graph(n)?;
    if f.omega() < 2 {
        return Ok(Construction {
            representation: BoxRepresentation::zero(target.labels().iter().cloned()),
            trace: ConstructionTrace::default(),
            recursion_order: (0..f.omega()).collect(),
        });
    }
    let tcc = tcc_cube_representation(&f.sorted)?;
    let perm = f.sort_permutation();
    let boxes: IndexMap<String, Vec<Interval>> = divisors(n)
        .into_iter()
        .map(|d| {
            let natural = f.exponent_tuple(d);
            let sorted: Vec<u32> = perm.iter().map(|&i| natural[i]).collect();
            let b = tcc
                .representation
                .box_of(&TupleVertex(sorted).to_string())
                .expect("tuple is a TCC vertex")
                .to_vec();
            (d.to_string(), b)
        })
        .collect();
    let representation = BoxRepresentation::new(
        tcc.representation.dimension(),
        boxes,
        tcc.representation.unit_lengths().map(<[Rational]>::to_vec),
    )?;
    require_verified(&target, &representation, "divisor graph transport")?;
    Ok(Construction {
        representation,
        trace: tcc.trace,
        recursion_order: tcc.recursion_order.iter().map(|&j| perm[j]).collect(),
    })
}

/// Verified representation of the power graph of `Z_n`, through `D(n)` and
/// the reduced power graph (whose vertices carry the same divisor labels).
pub fn representation_for_power_graph_cyclic(n: u64) -> Result<Construction> {
    let div = representation_for_divisor_graph(n)?;
    let representation = lift_to_power_graph(n, &div.representation)?;
    Ok(Construction {
        representation,
        trace: div.trace,
        recursion_order: div.recursion_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::int(lo, hi).unwrap()
    }

    #[test]
    fn tcc11_boxes_match_the_type2_formula() {
        let c = tcc_cube_representation(&[1, 1]).unwrap();
        let rep = &c.representation;
        assert_eq!(rep.dimension(), 1);
        assert_eq!(rep.box_of("(0,0)").unwrap(), [iv(0, 1)]);
        assert_eq!(rep.box_of("(1,0)").unwrap(), [iv(1, 2)]);
        assert_eq!(rep.box_of("(0,1)").unwrap(), [iv(-1, 0)]);
        assert_eq!(rep.box_of("(1,1)").unwrap(), [iv(0, 1)]);
        assert_eq!(
            c.trace.levels,
            vec![LevelTrace { level: 2, prefix_sum: 1, type1_dims: 0, type2_dims: 1 }]
        );
    }

    #[test]
    fn dimensions_follow_the_sum_of_smaller_exponents() {
        assert_eq!(tcc_cube_representation(&[1, 1, 1]).unwrap().representation.dimension(), 2);
        assert_eq!(tcc_cube_representation(&[2, 3]).unwrap().representation.dimension(), 2);
        let c = tcc_cube_representation(&[3, 1, 2]).unwrap();
        assert_eq!(c.representation.dimension(), 3);
        assert_eq!(c.recursion_order, vec![0, 2, 1]);
        assert_eq!(c.trace.dimension(), 3);
    }

    #[test]
    fn single_coordinate_is_signaled() {
        assert!(matches!(tcc_cube_representation(&[4]), Err(Error::Input(_))));
    }

    #[test]
    fn verification_failures() {
        let k2 = LabeledGraph::complete(2);
        let mut boxes = IndexMap::new();
        boxes.insert("0".to_string(), vec![iv(0, 1)]);
        boxes.insert("1".to_string(), vec![iv(2, 3)]);
        let rep = BoxRepresentation::new(1, boxes, None).unwrap();
        assert_eq!(
            verify_representation(&k2, &rep).unwrap(),
            Verdict::Failure { pair: ("0".into(), "1".into()), kind: MismatchKind::MissingEdge }
        );

        let c4 = LabeledGraph::cycle(4);
        let mut boxes = IndexMap::new();
        for (l, a) in ["0", "1", "2", "3"].iter().zip([0, 1, 2, 3]) {
            boxes.insert(l.to_string(), vec![iv(a, a + 1)]);
        }
        let rep = BoxRepresentation::new(1, boxes, None).unwrap();
        assert!(!verify_representation(&c4, &rep).unwrap().is_ok());
        assert!(verify_representation(&LabeledGraph::complete(3), &rep).is_err());
    }

    #[test]
    fn unit_normalization() {
        let mut boxes = IndexMap::new();
        boxes.insert("u".to_string(), vec![iv(0, 3)]);
        boxes.insert("v".to_string(), vec![iv(3, 6)]);
        let rep = BoxRepresentation::new(1, boxes, Some(vec![int(3)])).unwrap();
        let unit = normalize_to_unit(&rep).unwrap();
        assert_eq!(unit.box_of("u").unwrap(), [iv(0, 1)]);
        assert_eq!(unit.box_of("v").unwrap(), [iv(1, 2)]);

        let zero = BoxRepresentation::zero(["a"]);
        assert_eq!(normalize_to_unit(&zero).unwrap().dimension(), 0);

        let plain = rep.with_unit_lengths(None).unwrap();
        assert!(normalize_to_unit(&plain).is_err());
    }

    #[test]
    fn degenerate_axes() {
        let mut boxes = IndexMap::new();
        boxes.insert("u".to_string(), vec![iv(5, 5), iv(0, 2)]);
        boxes.insert("v".to_string(), vec![iv(5, 5), iv(1, 3)]);
        boxes.insert("w".to_string(), vec![iv(5, 5), iv(4, 6)]);
        let rep = BoxRepresentation::new(2, boxes, Some(vec![int(0), int(2)])).unwrap();
        let unit = normalize_to_unit(&rep).unwrap();
        assert_eq!(unit.dimension(), 1);

        let mut boxes = IndexMap::new();
        boxes.insert("u".to_string(), vec![iv(1, 1)]);
        boxes.insert("v".to_string(), vec![iv(7, 7)]);
        boxes.insert("w".to_string(), vec![iv(1, 1)]);
        let rep = BoxRepresentation::new(1, boxes, Some(vec![int(0)])).unwrap();
        let unit = normalize_to_unit(&rep).unwrap();
        assert_eq!(unit.dimension(), 1);
        assert_eq!(unit.box_of("v").unwrap(), [iv(2, 3)]);
    }

    #[test]
    fn normalized_tcc111_still_verifies() {
        let c = tcc_cube_representation(&[1, 1, 1]).unwrap();
        let unit = normalize_to_unit(&c.representation).unwrap();
        assert!(unit.boxes().values().flatten().all(|iv| iv.length() == int(1)));
        let g = build_tcc(&[1, 1, 1]).unwrap();
        assert!(verify_representation(&g, &unit).unwrap().is_ok());
    }

    #[test]
    fn lifting_examples() {
        let rep = lift_to_power_graph(7, &BoxRepresentation::zero(["1", "7"])).unwrap();
        assert_eq!(rep.boxes().len(), 7);
        assert_eq!(rep.dimension(), 0);

        let d12 = representation_for_divisor_graph(12).unwrap();
        assert_eq!(d12.representation.dimension(), 1);
        let lifted = lift_to_power_graph(12, &d12.representation).unwrap();
        assert_eq!(lifted.dimension(), 1);

        let p6 = representation_for_power_graph_cyclic(6).unwrap();
        let g = build_power_graph_cyclic(6).unwrap();
        assert!(verify_representation(&g, &p6.representation).unwrap().is_ok());

        // A representation of the wrong graph is rejected up front.
        assert!(matches!(
            lift_to_power_graph(6, &BoxRepresentation::zero(["1", "2", "3", "6"])),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn divisor_representation_examples() {
        assert_eq!(representation_for_divisor_graph(30).unwrap().representation.dimension(), 2);
        assert_eq!(representation_for_divisor_graph(12).unwrap().representation.dimension(), 1);
        assert_eq!(representation_for_divisor_graph(4).unwrap().representation.dimension(), 0);
        let one = representation_for_divisor_graph(1).unwrap();
        assert_eq!((one.representation.dimension(), one.representation.boxes().len()), (0, 1));
    }
}
