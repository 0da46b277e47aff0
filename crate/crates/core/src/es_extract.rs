//! Erdős–Szekeres chain/antichain extraction in `(R^2, ≼)` and the iterated
//! extraction of three points that are monotone in a chosen set of coordinates.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{comparable, GeometryError, Point};

/// `2^(2^k)` is only materialised up to this `k`; larger values exceed any
/// input size anyway.
const MAX_TOWER_EXPONENT: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("n must be at least 1")]
    ZeroLength,
    #[error("expected points of dimension {expected}, found dimension {found} at index {index}")]
    WrongDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("need at least {required} points, got {found}")]
    InsufficientPoints { required: String, found: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("internal guarantee violated: {0}")]
    GuaranteeViolated(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T> = std::result::Result<T, ExtractError>;

/// `2^(2^k)`, or `None` when it is too large to be a meaningful bound.
pub fn tower(k: u32) -> Option<BigUint> {
    (k <= MAX_TOWER_EXPONENT).then(|| BigUint::from(1u32) << (1usize << k))
}

/// `2^(2^k) + 1` as a display string, exact when it can be materialised.
pub(crate) fn tower_plus_one_string(k: u32) -> String {
    match tower(k) {
        Some(v) => (v + 1u32).to_string(),
        None => format!("2^(2^{k})+1"),
    }
}

/// Whether `len >= 2^(2^k) + 1`.
pub(crate) fn meets_tower_bound(len: usize, k: u32) -> bool {
    match tower(k) {
        Some(v) => BigUint::from(len) > v,
        None => false,
    }
}

/// Minimum input size for [`extract_monotone_triple`]: `2^(2^(d-t+1)) + 1`.
pub fn extraction_threshold(d: usize, t: usize) -> Option<BigUint> {
    tower((d + 1).checked_sub(t)? as u32).map(|v| v + 1u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Chain,
    Antichain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainResult {
    pub kind: StructureKind,
    /// Strictly increasing indices into the input.
    pub indices: Vec<usize>,
}

impl ChainResult {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Positions of a longest monotone subsequence of `seq`: nondecreasing when
/// `strict` is false, strictly increasing otherwise. Patience sorting with
/// predecessor links, `O(m log m)`.
fn longest_monotone(seq: &[i64], strict: bool) -> Vec<usize> {
    // tails[k]: position of the smallest tail among subsequences of length k+1.
    let mut tails: Vec<usize> = Vec::new();
    let mut prev = vec![usize::MAX; seq.len()];
    for (i, &v) in seq.iter().enumerate() {
        let k = if strict {
            tails.partition_point(|&p| seq[p] < v)
        } else {
            tails.partition_point(|&p| seq[p] <= v)
        };
        if k > 0 {
            prev[i] = tails[k - 1];
        }
        if k == tails.len() {
            tails.push(i);
        } else {
            tails[k] = i;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied().unwrap_or(usize::MAX);
    while cur != usize::MAX {
        out.push(cur);
        cur = prev[cur];
    }
    out.reverse();
    out
}

fn check_dimension(points: &[Point], expected: usize) -> Result<()> {
    for (index, p) in points.iter().enumerate() {
        if p.dim() != expected {
            return Err(ExtractError::WrongDimension {
                index,
                expected,
                found: p.dim(),
            });
        }
    }
    Ok(())
}

/// A chain or an antichain of length at least `n + 1` in `(S, ≼)` for a planar
/// set with `|S| >= n^2 + 1`.
///
/// Points are scanned by first coordinate (ties by second). A nondecreasing
/// run in the second coordinate is a chain; a strictly decreasing one is an
/// antichain, since equal first coordinates are visited with increasing second
/// coordinate. The longest structure of the chosen kind is returned, and a
/// chain wins when both reach `n + 1`.
pub fn chain_or_antichain(points: &[Point], n: usize) -> Result<ChainResult> {
    if n == 0 {
        return Err(ExtractError::ZeroLength);
    }
    check_dimension(points, 2)?;
    let required = (n as u128) * (n as u128) + 1;
    if (points.len() as u128) < required {
        return Err(ExtractError::InsufficientPoints {
            required: required.to_string(),
            found: points.len(),
        });
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].coord(1), points[i].coord(2), i));
    let ys: Vec<i64> = order.iter().map(|&i| points[i].coord(2)).collect();

    let chain = longest_monotone(&ys, false);
    let (kind, picked) = if chain.len() > n {
        (StructureKind::Chain, chain)
    } else {
        let neg: Vec<i64> = ys.iter().map(|y| -y).collect();
        let anti = longest_monotone(&neg, true);
        if anti.len() <= n {
            return Err(ExtractError::GuaranteeViolated(format!(
                "longest chain {} and antichain {} both below {}",
                chain.len(),
                anti.len(),
                n + 1
            )));
        }
        (StructureKind::Antichain, anti)
    };

    let mut indices: Vec<usize> = picked.into_iter().map(|p| order[p]).collect();
    indices.sort_unstable();
    let result = ChainResult { kind, indices };
    verify_structure(points, &result)?;
    Ok(result)
}

fn verify_structure(points: &[Point], r: &ChainResult) -> Result<()> {
    for (a, &i) in r.indices.iter().enumerate() {
        for &j in &r.indices[a + 1..] {
            let c = comparable(&points[i], &points[j])?;
            if c != (r.kind == StructureKind::Chain) {
                return Err(ExtractError::GuaranteeViolated(format!(
                    "indices {i} and {j} break the {:?}",
                    r.kind
                )));
            }
        }
    }
    Ok(())
}

/// `[x]_j <= [y]_j <= [z]_j` or `[x]_j >= [y]_j >= [z]_j`.
pub fn monotone_in(x: &Point, y: &Point, z: &Point, j: usize) -> bool {
    let (a, b, c) = (x.coord(j), y.coord(j), z.coord(j));
    (a <= b && b <= c) || (a >= b && b >= c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneTriple {
    /// Input indices of `x`, `y`, `z`.
    pub indices: [usize; 3],
    pub points: [Point; 3],
    /// `I_t ⊇ I_{t+1} ⊇ ... ⊇ I_d` as input indices, listed in scan order.
    pub trace: Vec<Vec<usize>>,
}

/// Three distinct points of `V` that are monotone in every coordinate of
/// `{1, t, t+1, ..., d}`, for `|V| >= 2^(2^(d-t+1)) + 1`.
///
/// `V` is scanned in order of coordinate 1 (ties by input index); each round
/// `j = t..d` keeps a chain or antichain of the planar sequence
/// `(scan position, [a]_j)`, shrinking `2^(2^(d-j+1)) + 1` points to
/// `2^(2^(d-j)) + 1`. Using the scan position rather than `[a]_1` keeps the
/// final triple monotone when coordinate 1 has ties.
pub fn extract_monotone_triple(v: &[Point], t: usize) -> Result<MonotoneTriple> {
    let d = v.first().map(Point::dim).unwrap_or(0);
    if d < 3 {
        return Err(ExtractError::InvalidParameters(format!("need d >= 3, got d = {d}")));
    }
    if !(2..=d).contains(&t) {
        return Err(ExtractError::InvalidParameters(format!(
            "need 2 <= t <= d = {d}, got t = {t}"
        )));
    }
    check_dimension(v, d)?;
    let k = (d - t + 1) as u32;
    if !meets_tower_bound(v.len(), k) {
        return Err(ExtractError::InsufficientPoints {
            required: tower_plus_one_string(k),
            found: v.len(),
        });
    }

    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by_key(|&i| (v[i].coord(1), i));

    // Scan positions still alive.
    let mut alive: Vec<usize> = (0..v.len()).collect();
    let mut trace = Vec::with_capacity(d - t + 1);
    for j in t..=d {
        let keep = tower((d - j) as u32)
            .and_then(|b| usize::try_from(b).ok())
            .expect("bounded by the input size");
        let projected = alive
            .iter()
            .map(|&pos| Point::new(vec![pos as i64, v[order[pos]].coord(j)]))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let found = chain_or_antichain(&projected, keep)?;
        alive = found.indices[..=keep].iter().map(|&local| alive[local]).collect();
        trace.push(alive.iter().map(|&pos| order[pos]).collect());
    }

    let [p, q, r] = <[usize; 3]>::try_from(alive.as_slice()).map_err(|_| {
        ExtractError::GuaranteeViolated(format!("final index set has {} elements", alive.len()))
    })?;
    let indices = [order[p], order[q], order[r]];
    let points = indices.map(|i| v[i].clone());
    for j in std::iter::once(1).chain(t..=d) {
        if !monotone_in(&points[0], &points[1], &points[2], j) {
            return Err(ExtractError::GuaranteeViolated(format!(
                "triple is not monotone in coordinate {j}"
            )));
        }
    }
    Ok(MonotoneTriple {
        indices,
        points,
        trace,
    })
}

/// Exhaustive search for a triple monotone in every coordinate of `coords`,
/// in lexicographic index order. Used where the size bound does not apply.
pub(crate) fn search_monotone_triple(v: &[Point], coords: &[usize]) -> Option<[usize; 3]> {
    let m = v.len();
    for a in 0..m {
        for b in 0..m {
            if b == a {
                continue;
            }
            for c in 0..m {
                if c == a || c == b {
                    continue;
                }
                if coords.iter().all(|&j| monotone_in(&v[a], &v[b], &v[c], j)) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}
