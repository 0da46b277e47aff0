//! Exact order relations on integer points of `R^d`.
//!
//! Coordinates are indexed from 1 in every public API (`[u]_1 .. [u]_d`), the
//! same way index sets and order types print. Internally an [`IndexSet`] is a
//! bitmask, so the dimension is capped at [`MAX_DIM`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported dimension.
pub const MAX_DIM: usize = 64;

/// Order types of a pair are enumerated explicitly; more free (tied)
/// coordinates than this is refused.
const MAX_TIED_COORDS: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("a point needs at least one coordinate")]
    EmptyPoint,
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} is outside [1, {universe}]")]
    IndexOutOfRange { index: usize, universe: usize },
    #[error("index set must be nonempty")]
    EmptyIndexSet,
    #[error("an order type part must be a nonempty proper subset of [{0}]")]
    NotProperPart(usize),
    #[error("points {0} and {1} are comparable; order types need an incomparable pair")]
    Comparable(Point, Point),
    #[error("order types need d >= 2, got d = {0}")]
    DimensionTooSmall(usize),
    #[error("pair {0} and {1} ties in too many coordinates to enumerate its order types")]
    TooManyTies(Point, Point),
    #[error("points x{first} and x{second} violate the common-order-type hypothesis: {reason}")]
    HypothesisViolation {
        first: usize,
        second: usize,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// A point of `Z^d`, `d >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyPoint);
        }
        if coords.len() > MAX_DIM {
            return Err(GeometryError::DimensionTooLarge(coords.len()));
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `[u]_i`, 1-based.
    ///
    /// # Panics
    ///
    /// If `i` is not in `[1, d]`.
    pub fn coord(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    /// The same point with coordinates listed in `order` (1-based indices).
    pub(crate) fn reindexed(&self, order: &[usize]) -> Point {
        Point(order.iter().map(|&i| self.coord(i)).collect())
    }

    pub(crate) fn shifted(&self, delta: i64) -> Point {
        Point(self.0.iter().map(|c| c + delta).collect())
    }
}

impl TryFrom<Vec<i64>> for Point {
    type Error = GeometryError;

    fn try_from(coords: Vec<i64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<i64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Builds a point from a literal; panics on an empty slice.
#[macro_export]
macro_rules! pt {
    ($($c:expr),+ $(,)?) => {
        $crate::geometry::Point::new(vec![$($c as i64),+]).expect("literal point")
    };
}

/// A subset of `[d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "Vec<usize>")]
pub struct IndexSet {
    bits: u64,
    universe: usize,
}

impl IndexSet {
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if universe > MAX_DIM {
            return Err(GeometryError::DimensionTooLarge(universe));
        }
        let mut bits = 0u64;
        for index in members {
            if index == 0 || index > universe {
                return Err(GeometryError::IndexOutOfRange { index, universe });
            }
            bits |= 1 << (index - 1);
        }
        Ok(IndexSet { bits, universe })
    }

    pub fn full(universe: usize) -> Result<Self> {
        IndexSet::new(universe, 1..=universe)
    }

    pub(crate) fn from_bits(universe: usize, bits: u64) -> Self {
        debug_assert!(universe <= MAX_DIM);
        debug_assert!(universe == MAX_DIM || bits >> universe == 0);
        IndexSet { bits, universe }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= self.universe && self.bits & (1 << (index - 1)) != 0
    }

    /// `[d] \ S`.
    pub fn complement(&self) -> IndexSet {
        IndexSet {
            bits: !self.bits & universe_mask(self.universe),
            universe: self.universe,
        }
    }

    /// Members in increasing order, 1-based.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.universe).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.to_vec()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

fn universe_mask(universe: usize) -> u64 {
    if universe >= 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    }
}

/// An unordered partition `{S, [d] \ S}` of `[d]` into two nonempty parts.
///
/// Stored by the part that contains index 1, so each partition has a single
/// representation. Ordering compares those parts as sorted index lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "[Vec<usize>; 2]")]
pub struct OrderType {
    part: IndexSet,
}

impl OrderType {
    /// The partition `{part, complement}`; either part may be given.
    pub fn from_part(part: IndexSet) -> Result<Self> {
        if part.is_empty() || part.len() == part.universe() {
            return Err(GeometryError::NotProperPart(part.universe()));
        }
        let part = if part.contains(1) {
            part
        } else {
            part.complement()
        };
        Ok(OrderType { part })
    }

    pub fn universe(&self) -> usize {
        self.part.universe()
    }

    /// The canonical part, which contains index 1.
    pub fn part(&self) -> IndexSet {
        self.part
    }

    pub fn parts(&self) -> (IndexSet, IndexSet) {
        (self.part, self.part.complement())
    }

    /// A part with exactly `size` members, preferring the canonical one.
    pub fn part_of_size(&self, size: usize) -> Option<IndexSet> {
        let (s, t) = self.parts();
        if s.len() == size {
            Some(s)
        } else if t.len() == size {
            Some(t)
        } else {
            None
        }
    }

    pub fn min_part_size(&self) -> usize {
        let (s, t) = self.parts();
        s.len().min(t.len())
    }
}

impl Ord for OrderType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe()
            .cmp(&other.universe())
            .then_with(|| self.part.to_vec().cmp(&other.part.to_vec()))
    }
}

impl PartialOrd for OrderType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<OrderType> for [Vec<usize>; 2] {
    fn from(t: OrderType) -> Self {
        let (s, c) = t.parts();
        [s.to_vec(), c.to_vec()]
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, c) = self.parts();
        write!(f, "{{{s},{c}}}")
    }
}

fn check_dims(u: &Point, v: &Point) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(GeometryError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(())
}

fn check_set(s: &IndexSet, d: usize) -> Result<()> {
    if s.is_empty() {
        return Err(GeometryError::EmptyIndexSet);
    }
    if s.universe() != d {
        return Err(GeometryError::DimensionMismatch {
            left: d,
            right: s.universe(),
        });
    }
    Ok(())
}

/// `u ≼ v`: `[u]_i <= [v]_i` for every `i`.
pub fn precedes(u: &Point, v: &Point) -> Result<bool> {
    check_dims(u, v)?;
    Ok(u.0.iter().zip(&v.0).all(|(a, b)| a <= b))
}

/// `u ≺ v`: `[u]_i < [v]_i` for every `i`.
pub fn precedes_strict(u: &Point, v: &Point) -> Result<bool> {
    check_dims(u, v)?;
    Ok(u.0.iter().zip(&v.0).all(|(a, b)| a < b))
}

/// `u ≼_S v`: `[u]_i <= [v]_i` for every `i ∈ S`.
pub fn precedes_on(u: &Point, v: &Point, s: &IndexSet) -> Result<bool> {
    check_dims(u, v)?;
    check_set(s, u.dim())?;
    Ok(s.iter().all(|i| u.coord(i) <= v.coord(i)))
}

pub fn comparable(u: &Point, v: &Point) -> Result<bool> {
    Ok(precedes(u, v)? || precedes(v, u)?)
}

/// Componentwise minimum `min{u, v}`.
pub fn min_point(u: &Point, v: &Point) -> Result<Point> {
    check_dims(u, v)?;
    Ok(Point(
        u.0.iter().zip(&v.0).map(|(a, b)| *a.min(b)).collect(),
    ))
}

/// Whether `{S, S̄}` is an order type of `{u, v}` (no incomparability check).
pub fn has_order_type(u: &Point, v: &Point, t: &OrderType) -> Result<bool> {
    check_dims(u, v)?;
    if t.universe() != u.dim() {
        return Err(GeometryError::DimensionMismatch {
            left: u.dim(),
            right: t.universe(),
        });
    }
    let (s, c) = t.parts();
    Ok((precedes_on(u, v, &s)? && precedes_on(v, u, &c)?)
        || (precedes_on(u, v, &c)? && precedes_on(v, u, &s)?))
}

/// All order types of an incomparable pair, sorted.
///
/// With `L = {i : [u]_i < [v]_i}`, `G = {i : [u]_i > [v]_i}` and `E` the tied
/// coordinates, the order types are exactly `{L ∪ E', G ∪ (E \ E')}` for
/// `E' ⊆ E`; both orientations of the definition produce the same partitions.
pub fn order_types(u: &Point, v: &Point) -> Result<Vec<OrderType>> {
    check_dims(u, v)?;
    let d = u.dim();
    let (mut lt, mut gt, mut eq) = (0u64, 0u64, 0u64);
    for (i, (a, b)) in u.0.iter().zip(&v.0).enumerate() {
        match a.cmp(b) {
            Ordering::Less => lt |= 1 << i,
            Ordering::Greater => gt |= 1 << i,
            Ordering::Equal => eq |= 1 << i,
        }
    }
    if lt == 0 || gt == 0 {
        return Err(GeometryError::Comparable(u.clone(), v.clone()));
    }
    if eq.count_ones() > MAX_TIED_COORDS {
        return Err(GeometryError::TooManyTies(u.clone(), v.clone()));
    }
    let ties: Vec<u64> = (0..d).filter(|i| eq & (1 << i) != 0).map(|i| 1 << i).collect();
    let mut types = Vec::with_capacity(1 << ties.len());
    for mask in 0u64..(1 << ties.len()) {
        let extra = ties
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .fold(0, |acc, (_, bit)| acc | bit);
        let part = IndexSet::from_bits(d, lt | extra);
        types.push(OrderType::from_part(part).expect("lt and gt are nonempty"));
    }
    types.sort();
    types.dedup();
    Ok(types)
}

/// Every order type over `[d]`, sorted.
pub fn all_order_types(d: usize) -> Result<Vec<OrderType>> {
    if d < 2 {
        return Err(GeometryError::DimensionTooSmall(d));
    }
    if d > 24 {
        return Err(GeometryError::DimensionTooLarge(d));
    }
    // Parts containing index 1 are the proper subsets {1} ∪ X with X ⊊ {2..d}.
    let rest = d - 1;
    let mut types: Vec<OrderType> = (0u64..(1 << rest) - 1)
        .map(|x| OrderType {
            part: IndexSet::from_bits(d, 1 | (x << 1)),
        })
        .collect();
    types.sort();
    Ok(types)
}

/// Number of order types over `[d]`, the Stirling number `S(d, 2) = 2^(d-1) - 1`.
pub fn count_possible_order_types(d: usize) -> Result<u64> {
    if d < 2 {
        return Err(GeometryError::DimensionTooSmall(d));
    }
    if d > MAX_DIM {
        return Err(GeometryError::DimensionTooLarge(d));
    }
    Ok((1u64 << (d - 1)) - 1)
}

/// For three pairwise incomparable points sharing the order type `t`, returns
/// a permutation `σ` (0-based) with `x[σ0] ≼_S x[σ1] ≼_S x[σ2]` and
/// `x[σ0] ≽_S̄ x[σ1] ≽_S̄ x[σ2]`, where `S` is the canonical part of `t`.
pub fn sort_by_common_type(points: [&Point; 3], t: &OrderType) -> Result<[usize; 3]> {
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let (u, v) = (points[a], points[b]);
        let violation = |reason: &str| GeometryError::HypothesisViolation {
            first: a + 1,
            second: b + 1,
            reason: reason.to_string(),
        };
        if comparable(u, v)? {
            return Err(violation("the pair is comparable"));
        }
        if !has_order_type(u, v, t)? {
            return Err(violation(&format!("{t} is not an order type of the pair")));
        }
    }
    sort_by_part(points, &t.part())
}

/// Sorts three points along `≼_S` and checks the reversed `≼_S̄` chain.
pub(crate) fn sort_by_part(points: [&Point; 3], s: &IndexSet) -> Result<[usize; 3]> {
    let c = s.complement();
    let sum = |p: &Point, set: &IndexSet| set.iter().map(|i| p.coord(i) as i128).sum::<i128>();
    let mut sigma = [0, 1, 2];
    // Strict progress on S raises the S-sum; ties on S fall back to S̄ descending.
    sigma.sort_by(|&a, &b| {
        sum(points[a], s)
            .cmp(&sum(points[b], s))
            .then_with(|| sum(points[b], &c).cmp(&sum(points[a], &c)))
            .then(a.cmp(&b))
    });
    for w in sigma.windows(2) {
        let (u, v) = (points[w[0]], points[w[1]]);
        if !precedes_on(u, v, s)? || !precedes_on(v, u, &c)? {
            return Err(GeometryError::HypothesisViolation {
                first: w[0] + 1,
                second: w[1] + 1,
                reason: format!("the pair does not chain along {s} against {c}"),
            });
        }
    }
    Ok(sigma)
}
