//! Constructive witnesses `min{a,b} ≼ min{c,d}` for families of pairwise
//! incomparable points sharing an order type, and the forbidden-configuration
//! pipeline for complete multipartite competition graphs.
//!
//! A witness with `a`, `b` in different families and `c != d` in one family
//! rules out a complete multipartite competition graph: any common prey of
//! `a` and `b` lies strictly below `min{a,b}`, hence below `min{c,d}`, so `c`
//! and `d` would compete as well.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::competition::{build_digraph, competition_graph, CompetitionError, PointConfig};
use crate::es_extract::{
    extract_monotone_triple, meets_tower_bound, monotone_in, search_monotone_triple, tower,
    tower_plus_one_string, ExtractError,
};
use crate::geometry::{
    comparable, has_order_type, min_point, order_types, precedes, precedes_on, sort_by_part,
    GeometryError, IndexSet, OrderType, Point,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisFailure {
    #[error("dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("point {member} of family {family} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        family: usize,
        member: usize,
        expected: usize,
        found: usize,
    },
    #[error("the designated part {0} is not a nonempty proper subset of [d]")]
    ImproperPart(IndexSet),
    #[error("the designated part has size {0}; only sizes 1 and 2 are covered")]
    PartSize(usize),
    #[error("need at least {required} families for a part of size {part_size}, got {found}")]
    TooFewFamilies {
        part_size: usize,
        required: String,
        found: usize,
    },
    #[error("family {family} has {size} points, need at least {required}")]
    FamilyTooSmall {
        family: usize,
        size: usize,
        required: String,
    },
    #[error("need at least {required} partite sets, got {found}")]
    TooFewParts { required: String, found: usize },
    #[error("families {first} and {second} share the point {point}")]
    NotDisjoint {
        first: usize,
        second: usize,
        point: Point,
    },
    #[error("points {first} and {second} of family {family} are comparable")]
    Comparable {
        family: usize,
        first: usize,
        second: usize,
    },
    #[error("points {first} and {second} of family {family} do not have order type {expected}")]
    MissingOrderType {
        family: usize,
        first: usize,
        second: usize,
        expected: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(#[from] HypothesisFailure),
    #[error("certificate failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Competition(#[from] CompetitionError),
}

pub type Result<T> = std::result::Result<T, WitnessError>;

/// Families `V_1..V_α` of points in `R^d` and the designated part `S` of their
/// shared order type `{S, S̄}`. Structural checks only; the lemma's
/// hypotheses are checked by [`find_witness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    families: Vec<Vec<Point>>,
    part: IndexSet,
}

impl FamilyInstance {
    pub fn new(families: Vec<Vec<Point>>, part: IndexSet) -> Result<Self> {
        let d = part.universe();
        for (f, fam) in families.iter().enumerate() {
            for (m, p) in fam.iter().enumerate() {
                if p.dim() != d {
                    return Err(HypothesisFailure::DimensionMismatch {
                        family: f,
                        member: m,
                        expected: d,
                        found: p.dim(),
                    }
                    .into());
                }
            }
        }
        Ok(FamilyInstance { families, part })
    }

    pub fn dim(&self) -> usize {
        self.part.universe()
    }

    pub fn families(&self) -> &[Vec<Point>] {
        &self.families
    }

    pub fn part(&self) -> IndexSet {
        self.part
    }

    pub fn shared_type(&self) -> Result<OrderType> {
        OrderType::from_part(self.part).map_err(|_| HypothesisFailure::ImproperPart(self.part).into())
    }

    fn point(&self, r: MemberRef) -> &Point {
        &self.families[r.family][r.member]
    }
}

/// A point identified by family (or partite set) and position within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MemberRef {
    pub family: usize,
    pub member: usize,
}

impl MemberRef {
    fn new(family: usize, member: usize) -> Self {
        MemberRef { family, member }
    }
}

/// Which branch of the construction produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRoute {
    /// `|S| = 1`: two pairs oriented along `S`.
    SingletonPart,
    /// `|S| = 2`: middle points `y_i ≼_S y_j` for some `i < j` in scan order.
    NonInversion,
    /// `|S| = 2`, `[x_q]_s1 < [y_p]_s1`.
    LowFirst,
    /// `|S| = 2`, `[x_q]_s2 < [y_r]_s2`.
    LowSecond,
    /// `|S| = 2`, `min{y_p, y_r} ≼ min{x_q, y_q}`.
    Dominated,
}

/// Points `a ∈ V_i`, `b ∈ V_j`, `c, d ∈ V_k` with `i != j`, `c != d` and
/// `min{a,b} ≼ min{c,d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessQuadruple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    /// Provenance of `a`, `b`, `c`, `d`.
    pub members: [MemberRef; 4],
    pub route: WitnessRoute,
}

impl WitnessQuadruple {
    fn build(inst: &FamilyInstance, members: [MemberRef; 4], route: WitnessRoute) -> Result<Self> {
        let [a, b, c, d] = members.map(|r| inst.point(r).clone());
        let w = WitnessQuadruple {
            i: members[0].family,
            j: members[1].family,
            k: members[2].family,
            a,
            b,
            c,
            d,
            members,
            route,
        };
        w.check()?;
        Ok(w)
    }

    fn check(&self) -> Result<()> {
        let [ra, rb, rc, rd] = self.members;
        if ra.family != self.i || rb.family != self.j || rc.family != self.k || rd.family != self.k {
            return Err(WitnessError::Verification("member families disagree with i, j, k".into()));
        }
        if self.i == self.j {
            return Err(WitnessError::Verification("a and b come from the same family".into()));
        }
        if rc == rd || self.c == self.d {
            return Err(WitnessError::Verification("c and d coincide".into()));
        }
        if !precedes(&min_point(&self.a, &self.b)?, &min_point(&self.c, &self.d)?)? {
            return Err(WitnessError::Verification(format!(
                "min{{{}, {}}} is not below min{{{}, {}}}",
                self.a, self.b, self.c, self.d
            )));
        }
        Ok(())
    }

    /// Re-checks the invariants and that the points sit where `members` says.
    pub fn verify(&self, inst: &FamilyInstance) -> bool {
        let located = self.members.iter().zip([&self.a, &self.b, &self.c, &self.d]).all(|(r, p)| {
            inst.families
                .get(r.family)
                .and_then(|f| f.get(r.member))
                .is_some_and(|q| q == p)
        });
        located && self.check().is_ok()
    }

    /// The witness points (deduplicated) plus one prey point strictly below
    /// `min{a,b}`. In its competition graph `c` and `d` are adjacent.
    pub fn embedding(&self) -> Result<PointConfig> {
        let refs = self.members.iter().copied().zip([&self.a, &self.b, &self.c, &self.d]);
        embed(refs, "V", &self.a, &self.b)
    }
}

fn member_label(prefix: &str, r: MemberRef) -> String {
    format!("{prefix}{}.{}", r.family, r.member)
}

fn embed<'a>(
    refs: impl Iterator<Item = (MemberRef, &'a Point)>,
    prefix: &str,
    a: &Point,
    b: &Point,
) -> Result<PointConfig> {
    let mut entries: Vec<(String, Point)> = Vec::new();
    for (r, p) in refs {
        let label = member_label(prefix, r);
        if !entries.iter().any(|(l, _)| *l == label) {
            entries.push((label, p.clone()));
        }
    }
    entries.push(("prey".to_string(), min_point(a, b)?.shifted(-1)));
    Ok(PointConfig::new(entries)?)
}

/// Whether the embedding of a certificate makes `c` and `d` compete.
pub fn embedding_forces_edge(cfg: &PointConfig, c: &str, d: &str) -> bool {
    let g = competition_graph(&build_digraph(cfg));
    match (g.index_of(c), g.index_of(d)) {
        (Some(x), Some(y)) => g.has_edge(x, y),
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scale {
    Full,
    Reduced,
}

fn check_families(inst: &FamilyInstance, scale: Scale) -> Result<(OrderType, usize)> {
    let d = inst.dim();
    if d < 3 {
        return Err(HypothesisFailure::DimensionTooSmall(d).into());
    }
    let t = inst.shared_type()?;
    let size = inst.part.len();
    let alpha = inst.families.len();
    match size {
        1 if alpha < 2 => {
            return Err(HypothesisFailure::TooFewFamilies {
                part_size: 1,
                required: "2".into(),
                found: alpha,
            }
            .into())
        }
        2 => {
            let k = (d - 2) as u32;
            let enough = if scale == Scale::Full {
                meets_tower_bound(alpha, k)
            } else {
                alpha >= 2
            };
            if !enough {
                return Err(HypothesisFailure::TooFewFamilies {
                    part_size: 2,
                    required: if scale == Scale::Full {
                        tower_plus_one_string(k)
                    } else {
                        "2".into()
                    },
                    found: alpha,
                }
                .into());
            }
        }
        1 => {}
        other => return Err(HypothesisFailure::PartSize(other).into()),
    }
    let mut seen: BTreeMap<&Point, usize> = BTreeMap::new();
    for (f, fam) in inst.families.iter().enumerate() {
        if fam.len() < 3 {
            return Err(HypothesisFailure::FamilyTooSmall {
                family: f,
                size: fam.len(),
                required: "3".into(),
            }
            .into());
        }
        for p in fam {
            if let Some(&other) = seen.get(p) {
                if other != f {
                    return Err(HypothesisFailure::NotDisjoint {
                        first: other,
                        second: f,
                        point: p.clone(),
                    }
                    .into());
                }
            }
            seen.insert(p, f);
        }
        for (x, u) in fam.iter().enumerate() {
            for (y, v) in fam.iter().enumerate().skip(x + 1) {
                if comparable(u, v)? {
                    return Err(HypothesisFailure::Comparable {
                        family: f,
                        first: x,
                        second: y,
                    }
                    .into());
                }
                if !has_order_type(u, v, &t)? {
                    return Err(HypothesisFailure::MissingOrderType {
                        family: f,
                        first: x,
                        second: y,
                        expected: t.to_string(),
                    }
                    .into());
                }
            }
        }
    }
    Ok((t, size))
}

/// Finds a witness quadruple for families satisfying the lemma's hypotheses:
/// pairwise incomparable points sharing `{S, S̄}` in every family, at least
/// three points per family, and either `|S| = 1` with `α >= 2` or `|S| = 2`
/// with `α >= 2^(2^(d-2)) + 1`.
pub fn find_witness(inst: &FamilyInstance) -> Result<WitnessQuadruple> {
    let (_, size) = check_families(inst, Scale::Full)?;
    let found = if size == 1 {
        Some(singleton_part(inst)?)
    } else {
        pair_part(inst, Scale::Full)?
    };
    found.ok_or_else(|| {
        WitnessError::Extract(ExtractError::GuaranteeViolated(
            "no monotone triple among the middle points".into(),
        ))
    })
}

/// Like [`find_witness`] but with any `α >= 2` for `|S| = 2`. Below the
/// guaranteed family count the monotone triple is searched exhaustively and
/// may not exist, in which case `None` is returned.
pub fn find_witness_reduced(inst: &FamilyInstance) -> Result<Option<WitnessQuadruple>> {
    let (_, size) = check_families(inst, Scale::Reduced)?;
    if size == 1 {
        singleton_part(inst).map(Some)
    } else {
        pair_part(inst, Scale::Reduced)
    }
}

/// `|S| = 1`, `S = {l}`.
fn singleton_part(inst: &FamilyInstance) -> Result<WitnessQuadruple> {
    let s = inst.part;
    let c = s.complement();
    let l = s.iter().next().expect("part of size one");
    // Orient each pair so that p ≼_S q and q ≼_S̄ p.
    let orient = |f: usize| -> Result<(usize, usize)> {
        let fam = &inst.families[f];
        if precedes_on(&fam[0], &fam[1], &s)? && precedes_on(&fam[1], &fam[0], &c)? {
            Ok((0, 1))
        } else {
            Ok((1, 0))
        }
    };
    let (mut x, mut y_unused) = (MemberRef::new(0, 0), MemberRef::new(0, 0));
    let (mut z, mut w) = (MemberRef::new(1, 0), MemberRef::new(1, 0));
    let (x0, y0) = orient(0)?;
    let (z0, w0) = orient(1)?;
    x.member = x0;
    y_unused.member = y0;
    z.member = z0;
    w.member = w0;
    if inst.point(x).coord(l) > inst.point(z).coord(l) {
        // Swap the roles of the two families.
        std::mem::swap(&mut x, &mut z);
        std::mem::swap(&mut y_unused, &mut w);
    }
    // x ≼_S z and w ≼_S̄ z give min{x,w} ≼ z; trivially min{x,w} ≼ w.
    WitnessQuadruple::build(inst, [x, w, w, z], WitnessRoute::SingletonPart)
}

/// `|S| = 2`, `S = {s1, s2}`.
fn pair_part(inst: &FamilyInstance, scale: Scale) -> Result<Option<WitnessQuadruple>> {
    let s = inst.part;
    let d = inst.dim();
    let members: Vec<usize> = s.to_vec();
    let (s1, s2) = (members[0], members[1]);
    let alpha = inst.families.len();

    // (x_i, y_i, z_i): x ≼_S y ≼_S z and z ≼_S̄ y ≼_S̄ x.
    let mut xyz = Vec::with_capacity(alpha);
    for (f, fam) in inst.families.iter().enumerate() {
        let sigma = sort_by_part([&fam[0], &fam[1], &fam[2]], &s)?;
        xyz.push(sigma.map(|m| MemberRef::new(f, m)));
    }
    let pt = |r: MemberRef| inst.point(r);

    // Scan families by [y]_s1, ties by family index.
    let mut scan: Vec<usize> = (0..alpha).collect();
    scan.sort_by_key(|&f| (pt(xyz[f][1]).coord(s1), f));

    for (a, &fi) in scan.iter().enumerate() {
        for &fj in &scan[a + 1..] {
            let (yi, yj, zj) = (xyz[fi][1], xyz[fj][1], xyz[fj][2]);
            if pt(yi).coord(s2) <= pt(yj).coord(s2) {
                // y_i ≼_S y_j and z_j ≼_S̄ y_j.
                return WitnessQuadruple::build(inst, [yi, zj, yj, zj], WitnessRoute::NonInversion)
                    .map(Some);
            }
        }
    }

    // Now [y]_s2 strictly decreases along the scan. Find p < q < r whose
    // middle points are monotone in s1 and every coordinate of S̄.
    let mut coord_order = vec![s1, s2];
    coord_order.extend(s.complement().iter());
    let ys: Vec<Point> = scan.iter().map(|&f| pt(xyz[f][1]).reindexed(&coord_order)).collect();
    let triple = if meets_tower_bound(ys.len(), (d - 2) as u32) {
        Some(extract_monotone_triple(&ys, 3)?.indices)
    } else if scale == Scale::Reduced {
        // Coordinate 1 is already sorted by scan position.
        let rest: Vec<usize> = (3..=d).collect();
        first_increasing_triple(&ys, &rest)
    } else {
        None
    };
    let Some([p, q, r]) = triple else {
        return Ok(None);
    };
    let (fp, fq, fr) = (scan[p], scan[q], scan[r]);
    let (yp, zp) = (xyz[fp][1], xyz[fp][2]);
    let (xq, yq) = (xyz[fq][0], xyz[fq][1]);
    let (yr, zr) = (xyz[fr][1], xyz[fr][2]);

    let w = if pt(xq).coord(s1) < pt(yp).coord(s1) {
        WitnessQuadruple::build(inst, [xq, zp, yp, zp], WitnessRoute::LowFirst)?
    } else if pt(xq).coord(s2) < pt(yr).coord(s2) {
        WitnessQuadruple::build(inst, [xq, zr, yr, zr], WitnessRoute::LowSecond)?
    } else {
        WitnessQuadruple::build(inst, [yp, yr, xq, yq], WitnessRoute::Dominated)?
    };
    Ok(Some(w))
}

/// First `p < q < r` (lexicographically) monotone in every coordinate of `coords`.
fn first_increasing_triple(v: &[Point], coords: &[usize]) -> Option<[usize; 3]> {
    let m = v.len();
    (0..m)
        .flat_map(|p| (p + 1..m).flat_map(move |q| (q + 1..m).map(move |r| [p, q, r])))
        .find(|&[p, q, r]| coords.iter().all(|&j| monotone_in(&v[p], &v[q], &v[r], j)))
}

/// Disjoint partite sets `W_1..W_γ` of points in `R^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultipartiteInstance {
    dim: usize,
    parts: Vec<Vec<Point>>,
}

impl MultipartiteInstance {
    pub fn new(dim: usize, parts: Vec<Vec<Point>>) -> Result<Self> {
        for (f, part) in parts.iter().enumerate() {
            for (m, p) in part.iter().enumerate() {
                if p.dim() != dim {
                    return Err(HypothesisFailure::DimensionMismatch {
                        family: f,
                        member: m,
                        expected: dim,
                        found: p.dim(),
                    }
                    .into());
                }
            }
        }
        Ok(MultipartiteInstance { dim, parts })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> &[Vec<Point>] {
        &self.parts
    }

    pub fn point(&self, r: MemberRef) -> Option<&Point> {
        self.parts.get(r.family)?.get(r.member)
    }

    /// Every point with label `W{part}.{member}`.
    pub fn to_config(&self) -> Result<PointConfig> {
        let entries = self
            .parts
            .iter()
            .enumerate()
            .flat_map(|(f, part)| {
                part.iter()
                    .enumerate()
                    .map(move |(m, p)| (member_label("W", MemberRef::new(f, m)), p.clone()))
            })
            .collect();
        Ok(PointConfig::new(entries)?)
    }
}

/// `β = 2^(2^(d-1)) + 1`, the partite-set size the pipeline needs.
pub fn required_part_size(d: usize) -> Option<BigUint> {
    tower((d - 1) as u32).map(|t| t + 1u32)
}

/// `γ = C(d,2)·2^(2^(d-1)) + d + 1`, the number of partite sets the pipeline needs.
pub fn required_part_count(d: usize) -> Option<BigUint> {
    let pairs = BigUint::from(d * (d - 1) / 2);
    tower((d - 1) as u32).map(|t| pairs * t + BigUint::from(d + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelinePhase {
    /// Two partite sets share an order type with a singleton part.
    SingletonTypes,
    /// Pigeonhole over the types whose smaller part has size two.
    Pigeonhole,
}

/// `a`, `b` in distinct partite sets and `c != d` in one partite set with
/// `min{a,b} ≼ min{c,d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenConfiguration {
    pub a: MemberRef,
    pub b: MemberRef,
    pub c: MemberRef,
    pub d: MemberRef,
    pub points: [Point; 4],
    pub phase: PipelinePhase,
    pub route: WitnessRoute,
    /// Order type shared by the triples the witness came from.
    pub order_type: OrderType,
}

impl ForbiddenConfiguration {
    pub fn verify(&self, inst: &MultipartiteInstance) -> bool {
        let located = [self.a, self.b, self.c, self.d]
            .iter()
            .zip(&self.points)
            .all(|(r, p)| inst.point(*r) == Some(p));
        let [a, b, c, d] = &self.points;
        let dominated = match (min_point(a, b), min_point(c, d)) {
            (Ok(lo), Ok(hi)) => precedes(&lo, &hi).unwrap_or(false),
            _ => false,
        };
        located
            && self.a.family != self.b.family
            && self.c.family == self.d.family
            && self.c.member != self.d.member
            && dominated
    }

    /// Certificate points plus a prey below `min{a,b}`; labels `W{part}.{member}`.
    pub fn embedding(&self) -> Result<PointConfig> {
        let refs = [self.a, self.b, self.c, self.d].into_iter().zip(self.points.iter());
        embed(refs, "W", &self.points[0], &self.points[1])
    }

    pub fn c_label(&self) -> String {
        member_label("W", self.c)
    }

    pub fn d_label(&self) -> String {
        member_label("W", self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PipelineOutcome {
    Certificate(ForbiddenConfiguration),
    NoCertificate { reason: String },
}

/// Validates a multipartite instance: every pair inside a partite set is
/// incomparable with an order type having a part of size 1 or 2, and no point
/// appears in two partite sets.
pub fn check_multipartite(inst: &MultipartiteInstance) -> Result<()> {
    if inst.dim < 3 {
        return Err(HypothesisFailure::DimensionTooSmall(inst.dim).into());
    }
    let mut seen: HashSet<&Point> = HashSet::new();
    let mut owner: BTreeMap<&Point, usize> = BTreeMap::new();
    for (f, part) in inst.parts.iter().enumerate() {
        for p in part {
            if !seen.insert(p) && owner.get(p) != Some(&f) {
                return Err(HypothesisFailure::NotDisjoint {
                    first: owner[p],
                    second: f,
                    point: p.clone(),
                }
                .into());
            }
            owner.insert(p, f);
        }
    }
    inst.parts.par_iter().enumerate().try_for_each(|(f, part)| {
        for (x, u) in part.iter().enumerate() {
            for (y, v) in part.iter().enumerate().skip(x + 1) {
                let comparable_pair = HypothesisFailure::Comparable {
                    family: f,
                    first: x,
                    second: y,
                };
                let types = match order_types(u, v) {
                    Ok(t) => t,
                    Err(GeometryError::Comparable(..)) => return Err(comparable_pair.into()),
                    Err(e) => return Err(e.into()),
                };
                if !types.iter().any(|t| t.min_part_size() <= 2) {
                    return Err(HypothesisFailure::MissingOrderType {
                        family: f,
                        first: x,
                        second: y,
                        expected: "a type with a part of size 1 or 2".into(),
                    }
                    .into());
                }
            }
        }
        Ok(())
    })
}

struct PartTriple {
    part: usize,
    members: [usize; 3],
    order_type: OrderType,
}

/// Least order type common to all three pairs with a part of size 1 or 2.
fn common_small_type(points: [&Point; 3]) -> Result<Option<OrderType>> {
    let mut common: Vec<OrderType> = order_types(points[0], points[1])?;
    for (u, v) in [(points[0], points[2]), (points[1], points[2])] {
        let other = order_types(u, v)?;
        common.retain(|t| other.contains(t));
    }
    Ok(common.into_iter().find(|t| t.min_part_size() <= 2))
}

fn part_triple(inst: &MultipartiteInstance, f: usize, scale: Scale) -> Result<Option<PartTriple>> {
    let part = &inst.parts[f];
    let d = inst.dim;
    let members = if meets_tower_bound(part.len(), (d - 1) as u32) {
        Some(extract_monotone_triple(part, 2)?.indices)
    } else if scale == Scale::Reduced {
        let all: Vec<usize> = (1..=d).collect();
        search_monotone_triple(part, &all)
    } else {
        return Err(HypothesisFailure::FamilyTooSmall {
            family: f,
            size: part.len(),
            required: tower_plus_one_string((d - 1) as u32),
        }
        .into());
    };
    let Some(members) = members else {
        return Ok(None);
    };
    let pts = members.map(|m| &part[m]);
    match common_small_type(pts)? {
        Some(order_type) => Ok(Some(PartTriple {
            part: f,
            members,
            order_type,
        })),
        None if scale == Scale::Reduced => Ok(None),
        None => Err(ExtractError::GuaranteeViolated(format!(
            "triple of partite set {f} has no common order type with a part of size 1 or 2"
        ))
        .into()),
    }
}

fn run_pipeline(inst: &MultipartiteInstance, scale: Scale) -> Result<PipelineOutcome> {
    check_multipartite(inst)?;
    let d = inst.dim;
    if scale == Scale::Full {
        let need = required_part_count(d).ok_or_else(|| HypothesisFailure::TooFewParts {
            required: format!("C({d},2)*2^(2^{})+{}", d - 1, d + 1),
            found: inst.parts.len(),
        })?;
        if BigUint::from(inst.parts.len()) < need {
            return Err(HypothesisFailure::TooFewParts {
                required: need.to_string(),
                found: inst.parts.len(),
            }
            .into());
        }
    }

    let triples: Vec<Option<PartTriple>> = (0..inst.parts.len())
        .into_par_iter()
        .map(|f| part_triple(inst, f, scale))
        .collect::<Result<_>>()?;
    let triples: Vec<PartTriple> = triples.into_iter().flatten().collect();

    let as_family = |t: &PartTriple| t.members.iter().map(|&m| inst.parts[t.part][m].clone()).collect();
    let lift = |w: WitnessQuadruple, chosen: &[&PartTriple], phase, order_type| {
        let map = |r: MemberRef| {
            let t = chosen[r.family];
            MemberRef::new(t.part, t.members[r.member])
        };
        let [a, b, c, dd] = w.members.map(map);
        let cert = ForbiddenConfiguration {
            a,
            b,
            c,
            d: dd,
            points: [w.a, w.b, w.c, w.d],
            phase,
            route: w.route,
            order_type,
        };
        if cert.verify(inst) {
            Ok(cert)
        } else {
            Err(WitnessError::Verification("lifted certificate does not check out".into()))
        }
    };

    // Types with a singleton part {l}: two partite sets sharing one yield a witness.
    let mut by_singleton: BTreeMap<usize, Vec<&PartTriple>> = BTreeMap::new();
    let mut rest: BTreeMap<OrderType, Vec<&PartTriple>> = BTreeMap::new();
    for t in &triples {
        match t.order_type.part_of_size(1) {
            Some(s) => by_singleton
                .entry(s.iter().next().expect("singleton"))
                .or_default()
                .push(t),
            None => rest.entry(t.order_type).or_default().push(t),
        }
    }
    for (&l, group) in &by_singleton {
        if group.len() >= 2 {
            let chosen = &group[..2];
            let part = IndexSet::new(d, [l])?;
            let fam = FamilyInstance::new(chosen.iter().map(|t| as_family(t)).collect(), part)?;
            let w = find_witness(&fam)?;
            let ot = chosen[0].order_type;
            return lift(w, chosen, PipelinePhase::SingletonTypes, ot).map(PipelineOutcome::Certificate);
        }
    }

    // Pigeonhole: the most frequent remaining type (ties by type order).
    let best = rest
        .iter()
        .max_by(|x, y| x.1.len().cmp(&y.1.len()).then_with(|| y.0.cmp(x.0)));
    let Some((&ot, group)) = best else {
        return no_certificate(scale, "no two partite sets share a usable order type".into());
    };
    let part = ot.part_of_size(2).expect("remaining types have a part of size 2");
    let fam = FamilyInstance::new(group.iter().map(|t| as_family(t)).collect(), part)?;
    let found = match scale {
        Scale::Full => Some(find_witness(&fam)?),
        Scale::Reduced if group.len() >= 2 => find_witness_reduced(&fam)?,
        Scale::Reduced => None,
    };
    match found {
        Some(w) => lift(w, group, PipelinePhase::Pigeonhole, ot).map(PipelineOutcome::Certificate),
        None => no_certificate(
            scale,
            format!("{} partite set(s) share type {ot}; no monotone middle triple", group.len()),
        ),
    }
}

fn no_certificate(scale: Scale, reason: String) -> Result<PipelineOutcome> {
    match scale {
        Scale::Reduced => Ok(PipelineOutcome::NoCertificate { reason }),
        Scale::Full => Err(ExtractError::GuaranteeViolated(reason).into()),
    }
}

/// Certificate that the partite sets cannot induce `K_{β×γ}` in the
/// competition graph of any d-partial order containing them. Requires
/// `|W_i| >= 2^(2^(d-1)) + 1` and `γ >= C(d,2)·2^(2^(d-1)) + d + 1`.
pub fn find_forbidden_configuration(inst: &MultipartiteInstance) -> Result<ForbiddenConfiguration> {
    match run_pipeline(inst, Scale::Full)? {
        PipelineOutcome::Certificate(c) => Ok(c),
        PipelineOutcome::NoCertificate { reason } => {
            Err(ExtractError::GuaranteeViolated(reason).into())
        }
    }
}

/// The same pipeline at any scale; below the thresholds it may report that no
/// certificate was found.
pub fn probe_forbidden_configuration(inst: &MultipartiteInstance) -> Result<PipelineOutcome> {
    run_pipeline(inst, Scale::Reduced)
}
