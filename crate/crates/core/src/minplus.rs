//! Exact min-plus geometry in the tropical torus.
//!
//! Points are stored as arbitrary representatives of their class modulo the
//! all-ones vector; equality, ordering and hashing go through the canonical
//! representative (nonnegative, minimum zero). Coordinates and generator
//! indices are 1-based wherever they appear in the public interface.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a bare integer literal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let r = Rational::from_str(t).map_err(|_| Error::Malformed(format!("not a rational: {t:?}")))?;
    Ok(r)
}

fn rational_to_json(r: &Rational) -> serde_json::Value {
    if r.is_integer() {
        if let Some(v) = r.numer().to_i64() {
            return serde_json::Value::from(v);
        }
    }
    serde_json::Value::from(r.to_string())
}

fn rational_from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(rat(i)),
            None => Err(Error::Malformed(format!("non-integer number {n}; use \"p/q\""))),
        },
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::Malformed(format!("expected rational, got {other}"))),
    }
}

/// A class in the tropical torus, held by one of its representatives.
#[derive(Clone, Debug)]
pub struct TropicalPoint {
    coords: Vec<Rational>,
}

impl TropicalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty(), "a tropical point needs at least one coordinate");
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn origin(len: usize) -> Self {
        Self::new(vec![Rational::zero(); len])
    }

    /// The unit vector `e_i` (1-based `i`).
    pub fn unit(len: usize, i: usize) -> Self {
        Self::indicator(len, &BTreeSet::from([i]))
    }

    /// `e_S`: ones on `set`, zeros elsewhere.
    pub fn indicator(len: usize, set: &BTreeSet<usize>) -> Self {
        Self::new(
            (1..=len)
                .map(|c| if set.contains(&c) { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    /// `-e_S`, whose canonical form is the indicator of the complement.
    pub fn neg_indicator(len: usize, set: &BTreeSet<usize>) -> Self {
        Self::new(
            (1..=len)
                .map(|c| if set.contains(&c) { -Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    /// Number of coordinates, `d + 1`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Dimension `d` of the ambient torus.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// 1-based coordinate access.
    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i - 1]
    }

    pub fn canonical(&self) -> TropicalPoint {
        let min = self.coords.iter().min().expect("nonempty").clone();
        Self::new(self.coords.iter().map(|c| c - &min).collect())
    }

    pub fn is_canonical(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative()) && self.coords.iter().any(Zero::is_zero)
    }

    /// The chart `(x_2 - x_1, ..., x_{d+1} - x_1)`.
    pub fn c0_chart(&self) -> Vec<Rational> {
        let first = &self.coords[0];
        self.coords[1..].iter().map(|c| c - first).collect()
    }

    /// Inverse of [`TropicalPoint::c0_chart`]; returns the representative with first coordinate 0.
    pub fn from_c0_chart(chart: &[Rational]) -> Self {
        let mut coords = Vec::with_capacity(chart.len() + 1);
        coords.push(Rational::zero());
        coords.extend(chart.iter().cloned());
        Self::new(coords)
    }

    /// Tropical scalar multiplication `lambda ⊙ x`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        Self::new(self.coords.iter().map(|c| c + lambda).collect())
    }

    /// Componentwise minimum `x ⊕ y`.
    pub fn tropical_sum(&self, other: &TropicalPoint) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        ))
    }

    /// Ordinary translation by a vector.
    pub fn translated(&self, w: &[Rational]) -> Result<Self> {
        check_len(self.len(), w.len())?;
        Ok(Self::new(self.coords.iter().zip(w).map(|(a, b)| a + b).collect()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(rational_to_json).collect())
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Malformed("point must be a JSON array".into()))?;
        if arr.is_empty() {
            return Err(Error::Malformed("point has no coordinates".into()));
        }
        Ok(Self::new(arr.iter().map(rational_from_json).collect::<Result<_>>()?))
    }

    /// Parses a point from JSON text: an array of integers or `"p/q"` strings.
    pub fn parse_json(text: &[u8]) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_slice(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_json(&v)
    }

    fn canonical_coords(&self) -> Vec<Rational> {
        self.canonical().coords
    }
}

impl PartialEq for TropicalPoint {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.c0_chart() == other.c0_chart()
    }
}

impl Eq for TropicalPoint {}

impl Hash for TropicalPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_coords().hash(state);
    }
}

impl PartialOrd for TropicalPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropicalPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_coords().cmp(&other.canonical_coords())
    }
}

impl fmt::Display for TropicalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for TropicalPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&rational_to_json(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for TropicalPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PointVisitor;
        impl<'de> Visitor<'de> for PointVisitor {
            type Value = TropicalPoint;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of integers or \"p/q\" strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut coords = Vec::new();
                while let Some(v) = seq.next_element::<serde_json::Value>()? {
                    coords.push(rational_from_json(&v).map_err(de::Error::custom)?);
                }
                if coords.is_empty() {
                    return Err(de::Error::custom("point has no coordinates"));
                }
                Ok(TropicalPoint::new(coords))
            }
        }
        deserializer.deserialize_seq(PointVisitor)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Per-coordinate sets of generator indices (both 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FineType {
    entries: Vec<BTreeSet<usize>>,
}

impl FineType {
    pub fn new(entries: Vec<BTreeSet<usize>>) -> Self {
        Self { entries }
    }

    /// Builds a type from literal index lists, e.g. `&[&[1, 2], &[3]]`.
    pub fn from_lists(lists: &[&[usize]]) -> Self {
        Self::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BTreeSet<usize>] {
        &self.entries
    }

    /// Entry at 1-based coordinate `k`.
    pub fn entry(&self, k: usize) -> &BTreeSet<usize> {
        &self.entries[k - 1]
    }

    pub fn entry_mut(&mut self, k: usize) -> &mut BTreeSet<usize> {
        &mut self.entries[k - 1]
    }

    pub fn coarse(&self) -> CoarseType {
        CoarseType::new(self.entries.iter().map(BTreeSet::len).collect())
    }

    pub fn union(&self) -> BTreeSet<usize> {
        self.entries.iter().flatten().copied().collect()
    }

    /// A cell is bounded iff no entry is empty.
    pub fn is_bounded(&self) -> bool {
        self.entries.iter().all(|e| !e.is_empty())
    }

    /// Entrywise containment `self ⊇ other`.
    pub fn contains(&self, other: &FineType) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| b.is_subset(a))
    }

    /// Dimension of the cell of this type: connected components of the graph on
    /// coordinates joining `j, k` whenever the entries meet, minus one.
    pub fn cell_dimension(&self) -> usize {
        let m = self.entries.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = m;
        for j in 0..m {
            for k in j + 1..m {
                if !self.entries[j].is_disjoint(&self.entries[k]) {
                    let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                    if a != b {
                        parent[a] = b;
                        components -= 1;
                    }
                }
            }
        }
        components - 1
    }

    /// For each generator, the set of coordinates whose entry contains it.
    pub fn argmin_sets(&self, n: usize) -> Vec<BTreeSet<usize>> {
        let mut out = vec![BTreeSet::new(); n];
        for (k, entry) in self.entries.iter().enumerate() {
            for &i in entry {
                out[i - 1].insert(k + 1);
            }
        }
        out
    }
}

impl fmt::Display for FineType {
    /// Compact form `(12345,1267,...)` when every index is a single digit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.entries.iter().flatten().all(|&i| i < 10);
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if compact {
                if e.is_empty() {
                    write!(f, "-")?;
                }
                for i in e {
                    write!(f, "{i}")?;
                }
            } else {
                write!(f, "{{")?;
                for (t, i) in e.iter().enumerate() {
                    if t > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, "}}")?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoarseType {
    counts: Vec<usize>,
}

impl CoarseType {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn nonzero_entries(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Orbit representative under coordinate permutations (entries sorted descending).
    pub fn sorted_desc(&self) -> CoarseType {
        let mut c = self.counts.clone();
        c.sort_unstable_by(|a, b| b.cmp(a));
        CoarseType::new(c)
    }
}

impl fmt::Display for CoarseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_generators(x: &TropicalPoint, generators: &[TropicalPoint]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    for v in generators {
        check_len(x.len(), v.len())?;
    }
    Ok(())
}

/// `T_k = { i : v_{i,k} - x_k <= v_{i,j} - x_j for all j }`.
pub fn fine_type(x: &TropicalPoint, generators: &[TropicalPoint]) -> Result<FineType> {
    check_generators(x, generators)?;
    let mut entries = vec![BTreeSet::new(); x.len()];
    for (idx, v) in generators.iter().enumerate() {
        let diff: Vec<Rational> = v.coords.iter().zip(&x.coords).map(|(a, b)| a - b).collect();
        let min = diff.iter().min().expect("nonempty");
        for (k, value) in diff.iter().enumerate() {
            if value == min {
                entries[k].insert(idx + 1);
            }
        }
    }
    Ok(FineType::new(entries))
}

pub fn coarse_type(x: &TropicalPoint, generators: &[TropicalPoint]) -> Result<CoarseType> {
    Ok(fine_type(x, generators)?.coarse())
}

/// Membership in the tropical convex hull: `x` lies in a bounded cell.
pub fn in_tconv(x: &TropicalPoint, generators: &[TropicalPoint]) -> Result<bool> {
    Ok(fine_type(x, generators)?.is_bounded())
}

/// Breakpoints of the tropical segment from `x` to `y`, endpoints included,
/// in canonical coordinates and ordered from `x` to `y`.
pub fn trop_segment(x: &TropicalPoint, y: &TropicalPoint) -> Result<Vec<TropicalPoint>> {
    check_len(x.len(), y.len())?;
    let mut lambdas: Vec<Rational> = y.coords.iter().zip(&x.coords).map(|(b, a)| b - a).collect();
    lambdas.sort();
    lambdas.dedup();
    lambdas
        .iter()
        .map(|l| Ok(x.scaled(l).tropical_sum(y)?.canonical()))
        .collect()
}

/// A closed tropical halfspace: the points `x` for which the minimum of
/// `x - apex` is attained at some coordinate in `sectors`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TropicalHalfspace {
    apex: TropicalPoint,
    sectors: BTreeSet<usize>,
}

impl TropicalHalfspace {
    pub fn new(apex: TropicalPoint, sectors: BTreeSet<usize>) -> Result<Self> {
        let dim = apex.len();
        if sectors.is_empty() || sectors.len() >= dim || sectors.iter().any(|&i| i == 0 || i > dim) {
            return Err(Error::InvalidSectors { dim });
        }
        Ok(Self { apex, sectors })
    }

    pub fn apex(&self) -> &TropicalPoint {
        &self.apex
    }

    pub fn sectors(&self) -> &BTreeSet<usize> {
        &self.sectors
    }

    /// The opposite halfspace `H(apex, I^C)`.
    pub fn complement(&self) -> TropicalHalfspace {
        let sectors = (1..=self.apex.len()).filter(|i| !self.sectors.contains(i)).collect();
        TropicalHalfspace { apex: self.apex.clone(), sectors }
    }

    pub fn contains(&self, x: &TropicalPoint) -> Result<bool> {
        halfspace_contains(self, x)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "apex": self.apex.to_json(),
            "sectors": self.sectors.iter().collect::<Vec<_>>(),
        })
    }

    /// Parses `{"apex":[...],"sectors":[...]}`.
    pub fn parse_json(text: &[u8]) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_slice(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Malformed("halfspace must be a JSON object".into()))?;
        let apex = TropicalPoint::from_json(
            obj.get("apex").ok_or_else(|| Error::Malformed("missing \"apex\"".into()))?,
        )?;
        let raw = obj
            .get("sectors")
            .and_then(|s| s.as_array())
            .ok_or_else(|| Error::Malformed("missing \"sectors\" array".into()))?;
        let mut sectors = BTreeSet::new();
        for s in raw {
            let i = s
                .as_u64()
                .ok_or_else(|| Error::Malformed(format!("bad sector index {s}")))?;
            sectors.insert(usize::try_from(i).map_err(|_| Error::InvalidSectors { dim: apex.len() })?);
        }
        Self::new(apex, sectors)
    }
}

/// With linear form `a = -apex`: `min_{i in I}(a_i + x_i) <= min_{j not in I}(a_j + x_j)`.
pub fn halfspace_contains(h: &TropicalHalfspace, x: &TropicalPoint) -> Result<bool> {
    check_len(h.apex.len(), x.len())?;
    let mut inside: Option<Rational> = None;
    let mut outside: Option<Rational> = None;
    for (k, (xi, ai)) in x.coords.iter().zip(&h.apex.coords).enumerate() {
        let value = xi - ai;
        let slot = if h.sectors.contains(&(k + 1)) { &mut inside } else { &mut outside };
        match slot {
            Some(m) if *m <= value => {}
            _ => *slot = Some(value),
        }
    }
    Ok(inside.expect("I nonempty") <= outside.expect("I proper"))
}
