//! Constructors for the graph families: transitive closures of Cartesian
//! products of complete graphs, divisor graphs, power graphs of cyclic
//! groups and their reduced quotients, hypercube closures, lifted cubes and
//! crowns.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Largest integer accepted by the number-theoretic builders.
pub const MAX_N: u64 = 1 << 31;

/// Power graphs are dense; refuse anything beyond this many elements.
pub const MAX_POWER_GRAPH_ORDER: u64 = 1 << 13;

/// An integer tuple vertex `(x_1, ..., x_s)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TupleVertex(pub Vec<u32>);

impl TupleVertex {
    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &TupleVertex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn comparable(&self, other: &TupleVertex) -> bool {
        self.dominated_by(other) || other.dominated_by(self)
    }

    pub fn is_uniform(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Coordinate sum.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// Parses the canonical `(x1,...,xs)` label.
    pub fn parse(label: &str) -> Result<Self> {
        let inner = label
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::input(format!("not a tuple label: {label:?}")))?;
        inner
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::input(format!("not a tuple label: {label:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(TupleVertex)
    }
}

impl fmt::Display for TupleVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// All tuples with `lo[i] <= x_i <= hi[i]`, in lexicographic order.
pub fn tuples_in_box(lo: &[u32], hi: &[u32]) -> Vec<TupleVertex> {
    let mut out = vec![TupleVertex(Vec::with_capacity(lo.len()))];
    for (&a, &b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|t| {
                (a..=b).map(move |x| {
                    let mut c = t.0.clone();
                    c.push(x);
                    TupleVertex(c)
                })
            })
            .collect();
    }
    out
}

fn comparability_on(tuples: Vec<TupleVertex>) -> LabeledGraph {
    LabeledGraph::from_fn(tuples.iter().map(ToString::to_string), |i, j| {
        tuples[i].comparable(&tuples[j])
    })
    .expect("tuples are distinct")
}

/// `TCC(m_1, ..., m_d)`: tuples `0 <= x_i <= m_i`, adjacent iff distinct
/// and componentwise comparable.
pub fn build_tcc(m: &[u32]) -> Result<LabeledGraph> {
    if m.is_empty() {
        return Err(Error::input("TCC needs at least one exponent"));
    }
    if m.contains(&0) {
        return Err(Error::input(format!("TCC exponents must be positive, got {m:?}")));
    }
    let count: u64 = m.iter().map(|&x| x as u64 + 1).product();
    if count > 1 << 14 {
        return Err(Error::capacity(format!("TCC{m:?} has {count} vertices")));
    }
    Ok(comparability_on(tuples_in_box(&vec![0; m.len()], m)))
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::input("n must be positive"));
    }
    if n > MAX_N {
        return Err(Error::capacity(format!("n = {n} exceeds 2^31")));
    }
    Ok(())
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `D(n)`: divisors of `n`, adjacent iff one divides the other.
pub fn build_divisor_graph(n: u64) -> Result<LabeledGraph> {
    check_n(n)?;
    let ds = divisors(n);
    LabeledGraph::from_fn(ds.iter().map(u64::to_string), |i, j| ds[j] % ds[i] == 0)
}

/// Power graph of `Z_n` on elements `0..n`. `x` lies in the cyclic subgroup
/// generated by `y` iff `gcd(y, n)` divides `x`.
pub fn build_power_graph_cyclic(n: u64) -> Result<LabeledGraph> {
    check_n(n)?;
    if n > MAX_POWER_GRAPH_ORDER {
        return Err(Error::capacity(format!("power graph of Z_{n} is too large")));
    }
    let g: Vec<u64> = (0..n).map(|x| x.gcd(&n)).collect();
    LabeledGraph::from_fn((0..n).map(|x| x.to_string()), |x, y| {
        (x as u64) % g[y] == 0 || (y as u64) % g[x] == 0
    })
}

/// Order of `x` in `Z_n`.
pub fn element_order(x: u64, n: u64) -> u64 {
    n / x.gcd(&n)
}

/// Reduced power graph of `Z_n` together with the element-to-class map.
#[derive(Debug, Clone)]
pub struct ReducedPowerGraph {
    pub n: u64,
    /// One vertex per divisor `d` of `n`, labeled by `d`: the class of
    /// elements of order `d`.
    pub graph: LabeledGraph,
}

impl ReducedPowerGraph {
    /// Label of the class containing `x`.
    pub fn class_of(&self, x: u64) -> String {
        element_order(x % self.n, self.n).to_string()
    }
}

pub fn build_reduced_power_graph_cyclic(n: u64) -> Result<ReducedPowerGraph> {
    check_n(n)?;
    // Classes are generator sets of the unique subgroup of each order d; two
    // classes are adjacent iff one subgroup contains the other, i.e. iff
    // their orders divide one another.
    let ds = divisors(n);
    let graph = LabeledGraph::from_fn(ds.iter().map(u64::to_string), |i, j| ds[j] % ds[i] == 0)?;
    Ok(ReducedPowerGraph { n, graph })
}

/// `TC(H_s)`, or `TC*(H_s)` with the all-zero and all-one tuples removed.
pub fn build_tc_hypercube(s: usize, truncated: bool) -> Result<LabeledGraph> {
    if s == 0 {
        return Err(Error::input("hypercube dimension must be at least 1"));
    }
    if truncated && s < 2 {
        return Err(Error::input("truncated hypercube closure needs s >= 2"));
    }
    if s > 13 {
        return Err(Error::capacity(format!("hypercube closure of dimension {s}")));
    }
    let tuples = tuples_in_box(&vec![0; s], &vec![1; s])
        .into_iter()
        .filter(|t| !truncated || !t.is_uniform())
        .collect();
    Ok(comparability_on(tuples))
}

/// The k-lifted cube: non-uniform s-tuples over `{k-1, k}` with domination
/// edges.
pub fn build_lifted(s: usize, k: u32) -> Result<LabeledGraph> {
    if s < 2 || k < 1 {
        return Err(Error::input(format!("lifted cube needs s >= 2 and k >= 1, got s={s}, k={k}")));
    }
    if s > 13 {
        return Err(Error::capacity(format!("lifted cube of dimension {s}")));
    }
    let tuples = tuples_in_box(&vec![k - 1; s], &vec![k; s])
        .into_iter()
        .filter(|t| !t.is_uniform())
        .collect();
    Ok(comparability_on(tuples))
}

/// Crown graph: `K_{s,s}` minus a perfect matching, on `a1..as`, `b1..bs`.
pub fn build_crown(s: usize) -> Result<LabeledGraph> {
    if s < 2 {
        return Err(Error::input("crown needs s >= 2"));
    }
    let labels = (1..=s).map(|i| format!("a{i}")).chain((1..=s).map(|i| format!("b{i}")));
    LabeledGraph::from_fn(labels, |i, j| i < s && j >= s && j - s != i)
}

/// Prime factorization `n = p_1^{a_1} ... p_s^{a_s}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Distinct primes, increasing.
    pub primes: Vec<u64>,
    /// Exponents in prime order.
    pub exponents: Vec<u32>,
    /// Exponents sorted ascending.
    pub sorted: Vec<u32>,
}

impl Factorization {
    /// Number of distinct primes.
    pub fn omega(&self) -> usize {
        self.primes.len()
    }

    /// Stable permutation taking prime order to ascending exponent order:
    /// `sorted[i] == exponents[perm[i]]`.
    pub fn sort_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.exponents.len()).collect();
        perm.sort_by_key(|&i| self.exponents[i]);
        perm
    }

    /// Exponent tuple of a divisor of `n`, in prime order.
    pub fn exponent_tuple(&self, divisor: u64) -> Vec<u32> {
        let mut d = divisor;
        self.primes
            .iter()
            .map(|&p| {
                let mut e = 0;
                while d % p == 0 {
                    d /= p;
                    e += 1;
                }
                e
            })
            .collect()
    }
}

/// Trial-division factorization; `n = 1` gives the empty factorization.
pub fn exponents_of(n: u64) -> Result<Factorization> {
    check_n(n)?;
    let mut primes = Vec::new();
    let mut exponents = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            primes.push(p);
            exponents.push(e);
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
        exponents.push(1);
    }
    let mut sorted = exponents.clone();
    sorted.sort_unstable();
    Ok(Factorization {
        primes,
        exponents,
        sorted,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Tcc,
    Divisor,
    PowerCyclic,
    ReducedPowerCyclic,
    HypercubeTc,
    HypercubeTcTruncated,
    Lifted,
    Crown,
}

/// A parameterized family member, e.g. `{"kind": "tcc", "params": [1,2,3]}`.
///
/// Parameters: exponents for `tcc`; `[n]` for the number-theoretic kinds;
/// `[s]` for hypercube closures and crowns; `[s, k]` for `lifted`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<i64>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: Vec<i64>) -> Self {
        FamilySpec { kind, params }
    }

    fn single(&self) -> Result<i64> {
        match self.params.as_slice() {
            [x] => Ok(*x),
            p => Err(Error::input(format!("{:?} takes one parameter, got {p:?}", self.kind))),
        }
    }

    fn positive(x: i64, what: &str) -> Result<u64> {
        if x <= 0 {
            return Err(Error::input(format!("{what} must be positive, got {x}")));
        }
        Ok(x as u64)
    }

    pub fn build(&self) -> Result<LabeledGraph> {
        match self.kind {
            FamilyKind::Tcc => {
                let m = self
                    .params
                    .iter()
                    .map(|&x| Self::positive(x, "TCC exponent").and_then(|x| {
                        u32::try_from(x).map_err(|_| Error::capacity("exponent too large"))
                    }))
                    .collect::<Result<Vec<u32>>>()?;
                build_tcc(&m)
            }
            FamilyKind::Divisor => build_divisor_graph(Self::positive(self.single()?, "n")?),
            FamilyKind::PowerCyclic => build_power_graph_cyclic(Self::positive(self.single()?, "n")?),
            FamilyKind::ReducedPowerCyclic => {
                Ok(build_reduced_power_graph_cyclic(Self::positive(self.single()?, "n")?)?.graph)
            }
            FamilyKind::HypercubeTc | FamilyKind::HypercubeTcTruncated => {
                let s = Self::positive(self.single()?, "s")? as usize;
                build_tc_hypercube(s, self.kind == FamilyKind::HypercubeTcTruncated)
            }
            FamilyKind::Lifted => match self.params.as_slice() {
                &[s, k] => {
                    let s = Self::positive(s, "s")? as usize;
                    let k = u32::try_from(Self::positive(k, "k")?).map_err(|_| Error::capacity("k too large"))?;
                    build_lifted(s, k)
                }
                p => Err(Error::input(format!("lifted takes [s, k], got {p:?}"))),
            },
            FamilyKind::Crown => build_crown(Self::positive(self.single()?, "s")? as usize),
        }
    }
}
