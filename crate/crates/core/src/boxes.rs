//! Closed intervals with exact rational endpoints and k-box representations.

use std::fmt;

use indexmap::IndexMap;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

pub type Rational = Ratio<i64>;

/// Canonical `"p/q"` form: `q > 0`, `gcd(|p|, q) = 1`, denominator always
/// written (`"3/1"`).
pub fn format_rational(r: &Rational) -> String {
    // Ratio keeps itself reduced with a positive denominator.
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("not a rational: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<i64>().map_err(|_| bad())?,
            q.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub(crate) fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

mod rational_vec_serde {
    use super::*;

    pub fn serialize<S: serde::Serializer>(
        v: &Option<Vec<Rational>>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strings: Option<Vec<String>> = v.as_ref().map(|v| v.iter().map(format_rational).collect());
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        let strings = Option::<Vec<String>>::deserialize(d)?;
        strings
            .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

/// Closed interval `[lo, hi]`, possibly a single point.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::input(format!(
                "interval [{}, {}] has lo > hi",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// Integer endpoints.
    pub fn int(lo: i64, hi: i64) -> Result<Self> {
        Self::new(Rational::from_integer(lo), Rational::from_integer(hi))
    }

    pub fn lo(&self) -> Rational {
        self.lo
    }

    pub fn hi(&self) -> Rational {
        self.hi
    }

    pub fn length(&self) -> Rational {
        self.hi - self.lo
    }

    /// Closed overlap: touching endpoints count.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo.max(other.lo) <= self.hi.min(other.hi)
    }

    fn map(&self, f: impl Fn(Rational) -> Rational) -> Interval {
        Interval {
            lo: f(self.lo),
            hi: f(self.hi),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.lo), format_rational(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&hi).map_err(serde::de::Error::custom)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// A k-box representation: every vertex label maps to k closed intervals.
///
/// When `unit_lengths` is present, every interval of dimension `i` has
/// length `unit_lengths[i]`, which makes the boxes cubes after per-axis
/// scaling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRepresentation")]
pub struct BoxRepresentation {
    dimension: usize,
    boxes: IndexMap<String, Vec<Interval>>,
    #[serde(skip_serializing_if = "Option::is_none", with = "rational_vec_serde", default)]
    unit_lengths: Option<Vec<Rational>>,
}

#[derive(Deserialize)]
struct RawRepresentation {
    dimension: usize,
    boxes: IndexMap<String, Vec<Interval>>,
    #[serde(with = "rational_vec_serde", default)]
    unit_lengths: Option<Vec<Rational>>,
}

impl TryFrom<RawRepresentation> for BoxRepresentation {
    type Error = Error;

    fn try_from(r: RawRepresentation) -> Result<Self> {
        BoxRepresentation::new(r.dimension, r.boxes, r.unit_lengths)
    }
}

impl BoxRepresentation {
    pub fn new(
        dimension: usize,
        boxes: IndexMap<String, Vec<Interval>>,
        unit_lengths: Option<Vec<Rational>>,
    ) -> Result<Self> {
        if let Some((label, b)) = boxes.iter().find(|(_, b)| b.len() != dimension) {
            return Err(Error::input(format!(
                "box of {label:?} has {} intervals, expected {dimension}",
                b.len()
            )));
        }
        if let Some(lengths) = &unit_lengths {
            if lengths.len() != dimension {
                return Err(Error::input(format!(
                    "{} unit lengths for dimension {dimension}",
                    lengths.len()
                )));
            }
            for (i, len) in lengths.iter().enumerate() {
                if *len < Rational::from_integer(0) {
                    return Err(Error::input(format!("negative unit length on axis {i}")));
                }
                if let Some((label, _)) = boxes.iter().find(|(_, b)| b[i].length() != *len) {
                    return Err(Error::input(format!(
                        "axis {i} mixes lengths: {label:?} differs from {}",
                        format_rational(len)
                    )));
                }
            }
        }
        Ok(BoxRepresentation {
            dimension,
            boxes,
            unit_lengths,
        })
    }

    /// Zero-dimensional representation: every vertex gets the empty box,
    /// which denotes a complete graph.
    pub fn zero<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let boxes = labels.into_iter().map(|l| (l.into(), Vec::new())).collect();
        BoxRepresentation {
            dimension: 0,
            boxes,
            unit_lengths: Some(Vec::new()),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn boxes(&self) -> &IndexMap<String, Vec<Interval>> {
        &self.boxes
    }

    pub fn box_of(&self, label: &str) -> Option<&[Interval]> {
        self.boxes.get(label).map(Vec::as_slice)
    }

    pub fn unit_lengths(&self) -> Option<&[Rational]> {
        self.unit_lengths.as_deref()
    }

    /// Per-axis common lengths, if every axis is uniform.
    pub fn infer_unit_lengths(&self) -> Option<Vec<Rational>> {
        (0..self.dimension)
            .map(|i| {
                let mut it = self.boxes.values().map(|b| b[i].length());
                let first = it.next().unwrap_or_else(|| Rational::from_integer(0));
                it.all(|l| l == first).then_some(first)
            })
            .collect()
    }

    pub fn with_unit_lengths(mut self, lengths: Option<Vec<Rational>>) -> Result<Self> {
        self.unit_lengths = None;
        BoxRepresentation::new(self.dimension, self.boxes, lengths)
    }

    /// Shifts every axis so that its smallest left endpoint is 0.
    pub fn translated(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dimension {
            let Some(min) = self.boxes.values().map(|b| b[i].lo).min() else {
                continue;
            };
            for b in out.boxes.values_mut() {
                b[i] = b[i].map(|x| x - min);
            }
        }
        out
    }

    /// Applies `f(axis, interval)` to every interval; the caller is
    /// responsible for keeping unit lengths meaningful.
    pub(crate) fn map_axes(&self, f: impl Fn(usize, Interval) -> Interval) -> Self {
        let mut out = self.clone();
        for b in out.boxes.values_mut() {
            for (i, iv) in b.iter_mut().enumerate() {
                *iv = f(i, *iv);
            }
        }
        out
    }

    /// Keeps only the listed axes, in order.
    pub(crate) fn select_axes(&self, axes: &[usize]) -> Self {
        let boxes = self
            .boxes
            .iter()
            .map(|(l, b)| (l.clone(), axes.iter().map(|&i| b[i]).collect()))
            .collect();
        let unit_lengths = self
            .unit_lengths
            .as_ref()
            .map(|u| axes.iter().map(|&i| u[i]).collect());
        BoxRepresentation {
            dimension: axes.len(),
            boxes,
            unit_lengths,
        }
    }

    /// The one-dimensional projection onto `axis`.
    pub fn projection(&self, axis: usize) -> Self {
        self.select_axes(&[axis])
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("representation serializes")
    }

    pub(crate) fn covers_exactly(&self, vertices: &[String]) -> Result<()> {
        if self.boxes.len() != vertices.len() {
            return Err(Error::input(format!(
                "representation covers {} vertices, graph has {}",
                self.boxes.len(),
                vertices.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| !self.boxes.contains_key(v.as_str())) {
            return Err(Error::input(format!("vertex {v:?} has no box")));
        }
        Ok(())
    }
}

/// Whether two boxes intersect: they overlap on every axis.
pub fn boxes_intersect(a: &[Interval], b: &[Interval]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.overlaps(y))
}

/// The intersection graph of `rep` on the given vertex list (which fixes the
/// vertex order of the result).
pub fn representation_to_graph(rep: &BoxRepresentation, vertices: &[String]) -> Result<LabeledGraph> {
    rep.covers_exactly(vertices)?;
    let boxes: Vec<&[Interval]> = vertices.iter().map(|v| rep.boxes[v.as_str()].as_slice()).collect();
    LabeledGraph::from_fn(vertices.iter().cloned(), |i, j| boxes_intersect(boxes[i], boxes[j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::int(lo, hi).unwrap()
    }

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rational_strings_are_canonical() {
        assert_eq!(format_rational(&Rational::new(6, -4)), "-3/2");
        assert_eq!(format_rational(&Rational::from_integer(3)), "3/1");
        assert_eq!(parse_rational("4/8").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), Rational::from_integer(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn interval_rules() {
        assert!(Interval::int(2, 1).is_err());
        assert!(iv(0, 1).overlaps(&iv(1, 2)));
        assert!(!iv(0, 1).overlaps(&iv(2, 3)));
        assert!(iv(1, 1).overlaps(&iv(0, 2)));
    }

    #[test]
    fn zero_dimensional_is_complete() {
        let rep = BoxRepresentation::zero(["a", "b", "c"]);
        let g = representation_to_graph(&rep, &labels(&["a", "b", "c"])).unwrap();
        assert!(g.is_complete());
    }

    #[test]
    fn tcc11_type2_boxes() {
        let mut boxes = IndexMap::new();
        boxes.insert("(0,0)".to_string(), vec![iv(0, 1)]);
        boxes.insert("(1,0)".to_string(), vec![iv(1, 2)]);
        boxes.insert("(0,1)".to_string(), vec![iv(-1, 0)]);
        boxes.insert("(1,1)".to_string(), vec![iv(0, 1)]);
        let rep = BoxRepresentation::new(1, boxes, None).unwrap();
        let vs = labels(&["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        let g = representation_to_graph(&rep, &vs).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge_between("(1,0)", "(0,1)").unwrap());
    }

    #[test]
    fn disjoint_on_one_axis_means_no_edge() {
        let mut boxes = IndexMap::new();
        boxes.insert("u".to_string(), vec![iv(0, 1), iv(0, 1)]);
        boxes.insert("v".to_string(), vec![iv(2, 3), iv(0, 1)]);
        let rep = BoxRepresentation::new(2, boxes, None).unwrap();
        let g = representation_to_graph(&rep, &labels(&["u", "v"])).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn coverage_mismatch_is_input_error() {
        let rep = BoxRepresentation::zero(["a", "b"]);
        assert!(representation_to_graph(&rep, &labels(&["a", "c"])).is_err());
        assert!(representation_to_graph(&rep, &labels(&["a"])).is_err());
    }

    #[test]
    fn unit_lengths_are_checked() {
        let mut boxes = IndexMap::new();
        boxes.insert("u".to_string(), vec![iv(0, 3)]);
        boxes.insert("v".to_string(), vec![iv(1, 3)]);
        let one = Some(vec![Rational::from_integer(3)]);
        assert!(BoxRepresentation::new(1, boxes.clone(), one).is_err());
        let rep = BoxRepresentation::new(1, boxes, None).unwrap();
        assert_eq!(rep.infer_unit_lengths(), None);
    }

    #[test]
    fn json_round_trip_and_layout() {
        let mut boxes = IndexMap::new();
        boxes.insert("b".to_string(), vec![Interval::new(Rational::new(-1, 2), Rational::new(1, 2)).unwrap()]);
        boxes.insert("a".to_string(), vec![Interval::new(Rational::new(0, 1), Rational::new(1, 1)).unwrap()]);
        let rep = BoxRepresentation::new(1, boxes, Some(vec![Rational::from_integer(1)])).unwrap();
        let s = serde_json::to_string(&rep).unwrap();
        assert_eq!(
            s,
            r#"{"dimension":1,"boxes":{"b":[["-1/2","1/2"]],"a":[["0/1","1/1"]]},"unit_lengths":["1/1"]}"#
        );
        let back: BoxRepresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);

        let no_units = rep.with_unit_lengths(None).unwrap();
        assert!(!serde_json::to_string(&no_units).unwrap().contains("unit_lengths"));
    }

    #[test]
    fn translation_starts_axes_at_zero() {
        let mut boxes = IndexMap::new();
        boxes.insert("u".to_string(), vec![iv(-3, -1)]);
        boxes.insert("v".to_string(), vec![iv(-2, 5)]);
        let rep = BoxRepresentation::new(1, boxes, None).unwrap().translated();
        assert_eq!(rep.box_of("u").unwrap()[0], iv(0, 2));
        assert_eq!(rep.box_of("v").unwrap()[0], iv(1, 8));
    }
}
