//! Seeded random generators for point sets, families and multipartite
//! instances. Everything takes an explicit RNG so runs are reproducible.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::competition::PointConfig;
use crate::geometry::{IndexSet, Point};
use crate::witness::{FamilyInstance, MultipartiteInstance};

/// `n` points of dimension `d` with coordinates in `0..range` (repeats allowed).
pub fn random_points<R: Rng>(rng: &mut R, n: usize, d: usize, range: i64) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new((0..d).map(|_| rng.gen_range(0..range)).collect()).expect("d >= 1"))
        .collect()
}

/// `n` distinct points labelled `v0..`.
///
/// # Panics
/// If `range^d < n`, since that many distinct points do not exist.
pub fn random_config<R: Rng>(rng: &mut R, n: usize, d: usize, range: i64) -> PointConfig {
    let room = (range.max(0) as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    assert!(room >= n as u128, "only {room} distinct points with coordinates in 0..{range}");
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(n);
    while entries.len() < n {
        let p = random_points(rng, 1, d, range).pop().expect("one point");
        if seen.insert(p.clone()) {
            entries.push((format!("v{}", entries.len()), p));
        }
    }
    PointConfig::new(entries).expect("generated labels are valid")
}

fn monotone_values<R: Rng>(rng: &mut R, m: usize, span: i64, strict: bool, ascending: bool) -> Vec<i64> {
    let mut vals: Vec<i64> = if strict {
        let mut set = HashSet::new();
        while set.len() < m {
            set.insert(rng.gen_range(0..span.max(m as i64)));
        }
        set.into_iter().collect()
    } else {
        (0..m).map(|_| rng.gen_range(0..span.max(1))).collect()
    };
    vals.sort_unstable();
    if !ascending {
        vals.reverse();
    }
    vals
}

/// `m` pairwise incomparable points around `base` whose pairs all have order
/// type `{part, complement}`. Offsets lie in `0..span` per coordinate.
pub fn typed_antichain<R: Rng>(rng: &mut R, part: IndexSet, m: usize, base: &Point, span: i64) -> Vec<Point> {
    let s: Vec<usize> = part.to_vec();
    let c: Vec<usize> = part.complement().to_vec();
    let up = *s.choose(rng).expect("nonempty part");
    let down = *c.choose(rng).expect("proper part");
    let d = part.universe();
    let columns: Vec<Vec<i64>> = (1..=d)
        .map(|j| {
            let ascending = part.contains(j);
            monotone_values(rng, m, span, j == up || j == down, ascending)
        })
        .collect();
    let mut pts: Vec<Point> = (0..m)
        .map(|k| {
            Point::new((0..d).map(|j| base.coords()[j] + columns[j][k]).collect()).expect("d >= 1")
        })
        .collect();
    pts.shuffle(rng);
    pts
}

/// Placement of families relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyShape {
    /// Independent random bases.
    Scattered,
    /// Bases climb in the first coordinate of the part and fall in the
    /// second, with random spreads, so middle points tend to form inversions.
    Staircase,
}

/// `alpha` disjoint families of `size` points sharing the order type with part `part`.
pub fn random_family_instance<R: Rng>(
    rng: &mut R,
    part: IndexSet,
    alpha: usize,
    size: usize,
    shape: FamilyShape,
) -> FamilyInstance {
    let d = part.universe();
    let members = part.to_vec();
    let step: i64 = 64;
    let mut seen: HashSet<Point> = HashSet::new();
    let mut families = Vec::with_capacity(alpha);
    while families.len() < alpha {
        let i = families.len() as i64;
        let (base, span) = match shape {
            FamilyShape::Scattered => {
                let range = step * (alpha as i64 + 1);
                (random_points(rng, 1, d, range).pop().expect("one point"), step)
            }
            FamilyShape::Staircase => {
                let mut coords: Vec<i64> = (0..d).map(|_| rng.gen_range(0..step * alpha as i64)).collect();
                coords[members[0] - 1] = i * step;
                if let Some(&s2) = members.get(1) {
                    coords[s2 - 1] = (alpha as i64 - i) * step;
                }
                let span = *[4, step / 2, 2 * step].choose(rng).expect("nonempty");
                (Point::new(coords).expect("d >= 1"), span)
            }
        };
        let fam = typed_antichain(rng, part, size, &base, span);
        if fam.iter().all(|p| !seen.contains(p)) {
            seen.extend(fam.iter().cloned());
            families.push(fam);
        }
    }
    FamilyInstance::new(families, part).expect("dimensions agree")
}

/// `gamma` partite sets of `beta` points, each on a hyperplane
/// `x_1 + ... + x_d = C` (so pairwise incomparable), all points distinct.
/// For `d <= 5` every incomparable pair has an order type with a part of
/// size at most two.
pub fn random_multipartite_instance<R: Rng>(rng: &mut R, d: usize, beta: usize, gamma: usize) -> MultipartiteInstance {
    let range: i64 = 1 << 20;
    let mut seen: HashSet<Point> = HashSet::new();
    let parts = (0..gamma)
        .map(|_| {
            let total: i64 = rng.gen_range(0..range) * d as i64;
            let mut part = Vec::with_capacity(beta);
            while part.len() < beta {
                let mut coords: Vec<i64> = (1..d).map(|_| rng.gen_range(0..range)).collect();
                let last = total - coords.iter().sum::<i64>();
                coords.push(last);
                let p = Point::new(coords).expect("d >= 1");
                if seen.insert(p.clone()) {
                    part.push(p);
                }
            }
            part
        })
        .collect();
    MultipartiteInstance::new(d, parts).expect("dimensions agree")
}

/// Partite sets whose pairs all have the order type `{part, complement}`.
pub fn typed_multipartite_instance<R: Rng>(rng: &mut R, part: IndexSet, beta: usize, gamma: usize) -> MultipartiteInstance {
    let fams = random_family_instance(rng, part, gamma, beta, FamilyShape::Scattered);
    MultipartiteInstance::new(part.universe(), fams.families().to_vec()).expect("dimensions agree")
}
