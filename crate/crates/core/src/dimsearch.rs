//! Bounded search for `dim_poc(G)`: the least `d` such that `G` together
//! with some isolated vertices is the competition graph of a d-partial order.
//!
//! Two reductions keep the search finite and exact:
//!
//! * Ties can be removed (see [`break_ties`]), so every axis is a permutation
//!   of the points.
//! * At most `|E(G)|` isolated padding points are ever needed: keep one
//!   common prey per edge and delete the other padding points; deleting
//!   points never creates edges.
//!
//! Points are inserted in increasing order of the last axis. A new point is
//! above everything placed so far on that axis, so its prey set and its
//! adjacency to every placed point are final at insertion, and each partial
//! assignment can be rejected as soon as it disagrees with `G`.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::competition::{is_realization, CompetitionError, Graph, PointConfig};
use crate::geometry::Point;

/// Points per cell; prey and adjacency sets are `u64` bitmasks.
pub const MAX_POINTS: usize = 64;
/// Largest graph the interval oracle accepts.
pub const MAX_ORACLE_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("the interval oracle handles at most {MAX_ORACLE_VERTICES} vertices, got {0}")]
    OracleTooLarge(usize),
    #[error("two points share the position {0}")]
    DuplicatePoint(Point),
    #[error("{0}")]
    NotInduced(String),
    #[error("internal witness failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Competition(#[from] CompetitionError),
}

pub type Result<T> = std::result::Result<T, SearchError>;

/// Limits for [`dim_poc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Largest dimension searched.
    pub d_max: usize,
    /// Largest padding count searched; `None` means `|E(G)|`, which is complete.
    pub k_max: Option<usize>,
    /// Node limit per search shard.
    pub node_limit: u64,
    /// Settle dimensions 0, 1 and 2 by characterization instead of search.
    pub use_oracles: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            d_max: 3,
            k_max: None,
            node_limit: 20_000_000,
            use_oracles: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    /// A realization was found and verified.
    Found,
    /// The whole space was searched without success.
    Exhausted,
    /// The node limit was hit before the space was exhausted.
    Truncated,
    /// More than [`MAX_POINTS`] points; not searched.
    TooLarge,
}

/// One `(d, k)` cell: realizations in `R^d` with exactly `k` padding points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub d: usize,
    pub k: usize,
    pub status: CellStatus,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "d", rename_all = "snake_case")]
pub enum DimValue {
    Exact(usize),
    /// Realized in this dimension; smaller ones not ruled out.
    AtMost(usize),
    /// Every dimension up to this one was ruled out.
    GreaterThan(usize),
    Unknown,
}

/// How a dimension was settled without search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    SingleVertex,
    CliquePlusVertex,
    Interval,
    NotInterval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimResult {
    pub value: DimValue,
    /// Every dimension below this one is ruled out.
    pub lower_bound: usize,
    /// Realizing configuration; `None` in dimension 0 and when nothing was found.
    pub witness: Option<PointConfig>,
    /// Labels of the padding points in `witness`.
    pub padding: Vec<String>,
    pub oracle: Option<OracleVerdict>,
    pub cells: Vec<CellReport>,
    /// Whether the padding range searched covered `0..=|E(G)|`.
    pub k_complete: bool,
}

impl DimResult {
    pub fn upper_bound(&self) -> Option<usize> {
        match self.value {
            DimValue::Exact(d) | DimValue::AtMost(d) => Some(d),
            _ => None,
        }
    }

    /// Whether the reported lower bound is backed by oracles or exhausted cells.
    pub fn lower_bound_proved(&self) -> bool {
        self.lower_bound > 0
    }
}

/// Rewrites every axis as a permutation `1..=N` without changing `D_S`.
///
/// Within a tie block on one axis, points with a larger coordinate sum on the
/// other axes go lower. If `z` is strictly below `x` on all other axes it has
/// the smaller sum and ends up above `x`, so no arc appears; other pairs keep
/// their relation. Fails on coinciding points, and on ties in dimension 1
/// (which can only come from coinciding points).
pub fn break_ties(cfg: &PointConfig) -> Result<PointConfig> {
    let n = cfg.len();
    let d = cfg.dim();
    let mut seen = HashSet::new();
    for (_, p) in cfg.entries() {
        if !seen.insert(p) {
            return Err(SearchError::DuplicatePoint(p.clone()));
        }
    }
    let mut coords: Vec<Vec<i64>> = cfg.entries().iter().map(|(_, p)| p.coords().to_vec()).collect();
    for axis in 0..d {
        let other_sum = |c: &Vec<i64>| c.iter().enumerate().filter(|&(j, _)| j != axis).map(|(_, v)| v).sum::<i64>();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (coords[i][axis], std::cmp::Reverse(other_sum(&coords[i])), i));
        for (rank, &i) in order.iter().enumerate() {
            coords[i][axis] = rank as i64 + 1;
        }
    }
    let entries = cfg
        .entries()
        .iter()
        .zip(coords)
        .map(|((l, _), c)| (l.clone(), Point::new(c).expect("same dimension")))
        .collect();
    Ok(PointConfig::new(entries)?)
}

/// An interval model `[l_v, r_v]` with distinct left endpoints, or `None` if
/// `g` is not an interval graph.
///
/// Searches for a vertex order in which `u < v < w` and `uw ∈ E` imply
/// `uv ∈ E`; such an order exists exactly for interval graphs and gives
/// `I(v_i) = [i, max{j : j = i or v_j ~ v_i}]`.
pub fn interval_model(g: &Graph) -> Result<Option<Vec<(i64, i64)>>> {
    let n = g.len();
    if n == 0 {
        return Err(SearchError::EmptyGraph);
    }
    if n > MAX_ORACLE_VERTICES {
        return Err(SearchError::OracleTooLarge(n));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut failed = HashSet::new();
    if !interval_order(&nbr, &mut order, 0, 0, &mut failed) {
        return Ok(None);
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let model: Vec<(i64, i64)> = (0..n)
        .map(|v| {
            let right = g.neighbors(v).map(|u| pos[u]).filter(|&p| p > pos[v]).max().unwrap_or(pos[v]);
            (pos[v] as i64, right as i64)
        })
        .collect();
    for x in 0..n {
        for y in x + 1..n {
            let meet = model[x].0.max(model[y].0) <= model[x].1.min(model[y].1);
            if meet != g.has_edge(x, y) {
                return Err(SearchError::Verification("interval model disagrees with the graph".into()));
            }
        }
    }
    Ok(Some(model))
}

/// `placed` is the set of ordered vertices; `open` those adjacent to every
/// vertex placed after them. A new vertex may only have open neighbours.
fn interval_order(nbr: &[u32], order: &mut Vec<usize>, placed: u32, open: u32, failed: &mut HashSet<(u32, u32)>) -> bool {
    let n = nbr.len();
    if order.len() == n {
        return true;
    }
    if failed.contains(&(placed, open)) {
        return false;
    }
    for w in 0..n {
        if placed & 1 << w != 0 || nbr[w] & placed & !open != 0 {
            continue;
        }
        // Placed vertices not adjacent to w stop being open.
        let next_open = (open & nbr[w]) | 1 << w;
        order.push(w);
        if interval_order(nbr, order, placed | 1 << w, next_open, failed) {
            return true;
        }
        order.pop();
    }
    failed.insert((placed, open));
    false
}

pub fn is_interval_graph(g: &Graph) -> Result<bool> {
    interval_model(g).map(|m| m.is_some())
}

fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &x)| vertices[i + 1..].iter().all(|&y| g.has_edge(x, y)))
}

/// `G = K_m` or `K_m ∪ K_1` with `m >= 1`: the graphs with `dim_poc <= 1`.
/// Returns the isolated vertex kept below the clique, if one is needed.
fn one_dimensional(g: &Graph) -> Option<Option<usize>> {
    let all: Vec<usize> = (0..g.len()).collect();
    if is_clique(g, &all) {
        return Some(None);
    }
    let isolated: Vec<usize> = all.iter().copied().filter(|&v| g.is_isolated(v)).collect();
    for &v in &isolated {
        let rest: Vec<usize> = all.iter().copied().filter(|&u| u != v).collect();
        if is_clique(g, &rest) {
            return Some(Some(v));
        }
    }
    None
}

fn padding_labels(g: &Graph, k: usize) -> Vec<String> {
    let taken: HashSet<&str> = g.labels().iter().map(String::as_str).collect();
    let mut prefix = String::from("_iso");
    while (0..k).any(|i| taken.contains(format!("{prefix}{i}").as_str())) {
        prefix.insert(0, '_');
    }
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

fn one_dim_witness(g: &Graph, low: Option<usize>) -> Result<(PointConfig, Vec<String>)> {
    let mut entries = Vec::new();
    let mut padding = Vec::new();
    match low {
        Some(v) => entries.push((g.labels()[v].clone(), Point::new(vec![0]).expect("d = 1"))),
        None => {
            padding = padding_labels(g, 1);
            entries.push((padding[0].clone(), Point::new(vec![0]).expect("d = 1")));
        }
    }
    let mut next = 1;
    for (v, label) in g.labels().iter().enumerate() {
        if Some(v) != low {
            entries.push((label.clone(), Point::new(vec![next]).expect("d = 1")));
            next += 1;
        }
    }
    Ok((PointConfig::new(entries)?, padding))
}

/// Vertex `v ↦ (2r_v, -2l_v)`, prey `t ↦ (2t-1, -2t-1)` for each left
/// endpoint `t` that is the larger left endpoint of some edge.
fn interval_witness(g: &Graph, model: &[(i64, i64)]) -> Result<(PointConfig, Vec<String>)> {
    let mut prey: Vec<i64> = g.edges().iter().map(|&(x, y)| model[x].0.max(model[y].0)).collect();
    prey.sort_unstable();
    prey.dedup();
    let padding = padding_labels(g, prey.len());
    let mut entries: Vec<(String, Point)> = g
        .labels()
        .iter()
        .zip(model)
        .map(|(label, &(l, r))| (label.clone(), Point::new(vec![2 * r, -2 * l]).expect("d = 2")))
        .collect();
    for (label, &t) in padding.iter().zip(&prey) {
        entries.push((label.clone(), Point::new(vec![2 * t - 1, -2 * t - 1]).expect("d = 2")));
    }
    Ok((PointConfig::new(entries)?, padding))
}

fn check_witness(g: &Graph, cfg: &PointConfig) -> Result<()> {
    let distinct: HashSet<&Point> = cfg.entries().iter().map(|(_, p)| p).collect();
    if distinct.len() != cfg.len() {
        return Err(SearchError::Verification("coinciding points".into()));
    }
    if !is_realization(cfg, g, g.labels())? {
        return Err(SearchError::Verification("competition graph differs".into()));
    }
    Ok(())
}

/// Result of searching a single `(d, k)` cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellOutcome {
    pub report: CellReport,
    /// Realizing configuration with padding labels, when found (and `d >= 1`).
    pub witness: Option<(PointConfig, Vec<String>)>,
}

const PAD: u8 = u8::MAX;

struct Problem {
    n: usize,
    total: usize,
    free: usize,
    nbr: Vec<u64>,
    deg: Vec<u32>,
    /// Previous vertex of the same twin class, if any.
    twin_prev: Vec<Option<usize>>,
    node_limit: u64,
}

#[derive(Clone)]
struct State {
    t: usize,
    /// Point order along each free axis, lowest first.
    orders: Vec<[u8; MAX_POINTS]>,
    prey: [u64; MAX_POINTS],
    /// Vertex of each point, or `PAD`.
    labels: [u8; MAX_POINTS],
    used: u64,
    pads_left: usize,
    /// Per vertex: placed points carrying one of its neighbours.
    req: [u64; MAX_POINTS],
    /// Per unplaced vertex: prey of placed points it must not compete with.
    forb: [u64; MAX_POINTS],
    placed_nbrs: [u32; MAX_POINTS],
    /// Bit `a`: free axes `a` and `a+1` have identical insertion histories.
    tied: u32,
}

struct Saved {
    tied: u32,
    forb: [u64; MAX_POINTS],
}

enum Step {
    Done(Box<State>),
    Exhausted,
    Truncated,
    Abandoned,
}

/// Positions on the free axes for the next point, in odometer order,
/// restricted to lexicographically ordered histories on tied axes.
struct Placements {
    pos: Vec<usize>,
    t: usize,
    tied: u32,
    started: bool,
}

impl Placements {
    fn new(free: usize, t: usize, tied: u32) -> Self {
        Placements {
            pos: vec![0; free],
            t,
            tied,
            started: false,
        }
    }

    fn advance(&mut self) -> bool {
        loop {
            if self.started {
                let mut a = self.pos.len();
                loop {
                    if a == 0 {
                        return false;
                    }
                    a -= 1;
                    if self.pos[a] < self.t {
                        self.pos[a] += 1;
                        break;
                    }
                    self.pos[a] = 0;
                }
            }
            self.started = true;
            let free = self.pos.len();
            if (0..free.saturating_sub(1)).all(|a| self.tied & 1 << a == 0 || self.pos[a] <= self.pos[a + 1]) {
                return true;
            }
        }
    }
}

impl Problem {
    fn new(g: &Graph, d: usize, k: usize, node_limit: u64) -> Problem {
        let n = g.len();
        let nbr: Vec<u64> = (0..n).map(|v| g.neighbors(v).fold(0u64, |m, u| m | 1 << u)).collect();
        let twin = |u: usize, v: usize| nbr[u] & !(1 << v) == nbr[v] & !(1 << u);
        let twin_prev = (0..n).map(|v| (0..v).rev().find(|&u| twin(u, v))).collect();
        Problem {
            n,
            total: n + k,
            free: d - 1,
            deg: nbr.iter().map(|m| m.count_ones()).collect(),
            nbr,
            twin_prev,
            node_limit,
        }
    }

    fn root(&self, k: usize) -> State {
        State {
            t: 0,
            orders: vec![[0; MAX_POINTS]; self.free],
            prey: [0; MAX_POINTS],
            labels: [PAD; MAX_POINTS],
            used: 0,
            pads_left: k,
            req: [0; MAX_POINTS],
            forb: [0; MAX_POINTS],
            placed_nbrs: [0; MAX_POINTS],
            tied: if self.free > 1 { (1u32 << (self.free - 1)) - 1 } else { 0 },
        }
    }

    fn prefix_masks(&self, s: &State) -> Vec<[u64; MAX_POINTS + 1]> {
        s.orders
            .iter()
            .map(|ord| {
                let mut pm = [0u64; MAX_POINTS + 1];
                for (i, &p) in ord[..s.t].iter().enumerate() {
                    pm[i + 1] = pm[i] | 1 << p;
                }
                pm
            })
            .collect()
    }

    /// Prey set and adjacency mask of a point inserted at `pos`.
    fn probe(&self, s: &State, pos: &[usize], pm: &[[u64; MAX_POINTS + 1]]) -> (u64, u64) {
        let placed = if s.t == 64 { u64::MAX } else { (1u64 << s.t) - 1 };
        let prey = pos.iter().zip(pm).fold(placed, |m, (&p, pm)| m & pm[p]);
        let adj = (0..s.t).filter(|&u| s.prey[u] & prey != 0).fold(0u64, |m, u| m | 1 << u);
        (prey, adj)
    }

    /// Labels the new point may take, padding first.
    fn labels(&self, s: &State, prey: u64, adj: u64) -> impl Iterator<Item = u8> + '_ {
        let (used, pads_left) = (s.used, s.pads_left);
        let req = s.req;
        let placed_nbrs = s.placed_nbrs;
        (pads_left > 0 && adj == 0)
            .then_some(PAD)
            .into_iter()
            .chain((0..self.n).filter(move |&v| {
                used & 1 << v == 0
                    && req[v] == adj
                    && self.twin_prev[v].is_none_or(|u| used & 1 << u != 0)
                    && (prey != 0 || placed_nbrs[v] == self.deg[v])
            }).map(|v| v as u8))
    }

    fn apply(&self, s: &mut State, pos: &[usize], prey: u64, label: u8) -> Saved {
        let t = s.t;
        let saved = Saved {
            tied: s.tied,
            forb: s.forb,
        };
        for (ord, &p) in s.orders.iter_mut().zip(pos) {
            ord.copy_within(p..t, p + 1);
            ord[p] = t as u8;
        }
        for a in 0..self.free.saturating_sub(1) {
            if pos[a] != pos[a + 1] {
                s.tied &= !(1 << a);
            }
        }
        s.prey[t] = prey;
        s.labels[t] = label;
        let apart = if label == PAD {
            s.pads_left -= 1;
            u64::MAX
        } else {
            let v = label as usize;
            s.used |= 1 << v;
            let mut m = self.nbr[v];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                s.req[w] |= 1 << t;
                s.placed_nbrs[w] += 1;
            }
            !self.nbr[v]
        };
        if prey != 0 {
            for w in 0..self.n {
                if s.used & 1 << w == 0 && apart & 1 << w != 0 {
                    s.forb[w] |= prey;
                }
            }
        }
        s.t += 1;
        saved
    }

    fn revert(&self, s: &mut State, pos: &[usize], saved: Saved) {
        s.t -= 1;
        let t = s.t;
        for (ord, &p) in s.orders.iter_mut().zip(pos) {
            ord.copy_within(p + 1..t + 1, p);
        }
        let label = s.labels[t];
        if label == PAD {
            s.pads_left += 1;
        } else {
            let v = label as usize;
            s.used &= !(1 << v);
            let mut m = self.nbr[v];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                s.req[w] &= !(1 << t);
                s.placed_nbrs[w] -= 1;
            }
        }
        s.labels[t] = PAD;
        s.prey[t] = 0;
        s.tied = saved.tied;
        s.forb = saved.forb;
    }

    /// Every unplaced vertex can still reach a prey of each placed neighbour
    /// that no placed non-neighbour preys on.
    fn feasible(&self, s: &State) -> bool {
        let mut open = !s.used & if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        while open != 0 {
            let w = open.trailing_zeros() as usize;
            open &= open - 1;
            let mut m = s.req[w];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                if s.prey[u] & !s.forb[w] == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn children(&self, s: &State) -> Vec<State> {
        let mut out = Vec::new();
        let pm = self.prefix_masks(s);
        let mut places = Placements::new(self.free, s.t, s.tied);
        let mut work = s.clone();
        while places.advance() {
            let (prey, adj) = self.probe(s, &places.pos, &pm);
            for label in self.labels(s, prey, adj) {
                let saved = self.apply(&mut work, &places.pos, prey, label);
                if self.feasible(&work) {
                    out.push(work.clone());
                }
                self.revert(&mut work, &places.pos, saved);
            }
        }
        out
    }

    fn dfs(&self, s: &mut State, nodes: &mut u64, abandon: &dyn Fn() -> bool) -> Step {
        if s.t == self.total {
            return Step::Done(Box::new(s.clone()));
        }
        let pm = self.prefix_masks(s);
        let mut places = Placements::new(self.free, s.t, s.tied);
        let mut labels: Vec<u8> = Vec::with_capacity(self.n + 1);
        while places.advance() {
            let (prey, adj) = self.probe(s, &places.pos, &pm);
            labels.clear();
            labels.extend(self.labels(s, prey, adj));
            for &label in &labels {
                *nodes += 1;
                if *nodes > self.node_limit {
                    return Step::Truncated;
                }
                if nodes.is_multiple_of(4096) && abandon() {
                    return Step::Abandoned;
                }
                let saved = self.apply(s, &places.pos, prey, label);
                let step = if self.feasible(s) {
                    self.dfs(s, nodes, abandon)
                } else {
                    Step::Exhausted
                };
                self.revert(s, &places.pos, saved);
                if !matches!(step, Step::Exhausted) {
                    return step;
                }
            }
        }
        Step::Exhausted
    }

    fn config(&self, g: &Graph, s: &State) -> Result<(PointConfig, Vec<String>)> {
        let pads = padding_labels(g, self.total - self.n);
        let mut ranks = vec![vec![0i64; self.free + 1]; self.total];
        for (a, ord) in s.orders.iter().enumerate() {
            for (r, &p) in ord[..s.t].iter().enumerate() {
                ranks[p as usize][a] = r as i64 + 1;
            }
        }
        let mut next_pad = pads.iter();
        let entries = (0..s.t)
            .map(|p| {
                ranks[p][self.free] = p as i64 + 1;
                let name = match s.labels[p] {
                    PAD => next_pad.next().expect("padding count").clone(),
                    v => g.labels()[v as usize].clone(),
                };
                (name, Point::new(ranks[p].clone()).expect("d >= 1"))
            })
            .collect();
        Ok((PointConfig::new(entries)?, pads))
    }
}

/// Frontier size at which the tree is split into parallel shards.
const SHARDS: usize = 256;

/// Searches for `G ∪ I_k = C(D_S)` with `S ⊂ R^d` of exactly `n + k` points.
/// The node limit applies to each parallel shard separately.
pub fn search_cell(g: &Graph, d: usize, k: usize, node_limit: u64) -> Result<CellOutcome> {
    if g.is_empty() {
        return Err(SearchError::EmptyGraph);
    }
    let total = g.len() + k;
    let report = |status, nodes| CellReport { d, k, status, nodes };
    if d == 0 {
        // R^0 holds a single point.
        let status = if total == 1 { CellStatus::Found } else { CellStatus::Exhausted };
        return Ok(CellOutcome {
            report: report(status, 0),
            witness: None,
        });
    }
    if total > MAX_POINTS {
        return Ok(CellOutcome {
            report: report(CellStatus::TooLarge, 0),
            witness: None,
        });
    }
    let problem = Problem::new(g, d, k, node_limit);

    // Breadth-first split into a deterministic list of shards.
    let mut nodes = 0u64;
    let mut frontier = vec![problem.root(k)];
    while frontier.len() < SHARDS && frontier.iter().any(|s| s.t < total) {
        let mut next = Vec::new();
        for s in frontier {
            if s.t == total {
                next.push(s);
            } else {
                let children = problem.children(&s);
                nodes += children.len() as u64;
                next.extend(children);
            }
        }
        frontier = next;
    }

    let best = AtomicUsize::new(usize::MAX);
    let outcomes: Vec<(Step, u64)> = frontier
        .into_par_iter()
        .enumerate()
        .map(|(i, mut s)| {
            if best.load(Ordering::Relaxed) < i {
                return (Step::Abandoned, 0);
            }
            let mut shard_nodes = 0;
            let abandon = || best.load(Ordering::Relaxed) < i;
            let step = problem.dfs(&mut s, &mut shard_nodes, &abandon);
            if matches!(step, Step::Done(_)) {
                best.fetch_min(i, Ordering::Relaxed);
            }
            (step, shard_nodes)
        })
        .collect();

    // Shards before the winner always run to completion and later ones are
    // cut short at racy points, so only the former are counted.
    let winner = outcomes.iter().position(|(step, _)| matches!(step, Step::Done(_)));
    let counted = winner.map_or(outcomes.len(), |w| w + 1);
    nodes += outcomes[..counted].iter().map(|(_, n)| n).sum::<u64>();
    let mut truncated = false;
    for (step, _) in outcomes.into_iter().take(counted) {
        match step {
            Step::Done(s) => {
                let witness = problem.config(g, &s)?;
                check_witness(g, &witness.0)?;
                return Ok(CellOutcome {
                    report: report(CellStatus::Found, nodes),
                    witness: Some(witness),
                });
            }
            Step::Truncated => truncated = true,
            Step::Exhausted | Step::Abandoned => {}
        }
    }
    let status = if truncated { CellStatus::Truncated } else { CellStatus::Exhausted };
    Ok(CellOutcome {
        report: report(status, nodes),
        witness: None,
    })
}

/// Bounds `dim_poc(G)` within `budget`.
pub fn dim_poc(g: &Graph, budget: &SearchBudget) -> Result<DimResult> {
    if g.is_empty() {
        return Err(SearchError::EmptyGraph);
    }
    let edges = g.edge_count();
    let k_max = budget.k_max.unwrap_or(edges);
    let k_complete = k_max >= edges;
    let mut result = DimResult {
        value: DimValue::Unknown,
        lower_bound: 0,
        witness: None,
        padding: Vec::new(),
        oracle: None,
        cells: Vec::new(),
        k_complete,
    };

    let mut start = 0;
    if budget.use_oracles {
        let settled = if g.len() == 1 {
            Some((0, OracleVerdict::SingleVertex, None))
        } else if let Some(low) = one_dimensional(g) {
            Some((1, OracleVerdict::CliquePlusVertex, Some(one_dim_witness(g, low)?)))
        } else if let Some(model) = interval_model(g)? {
            Some((2, OracleVerdict::Interval, Some(interval_witness(g, &model)?)))
        } else {
            None
        };
        if let Some((d, verdict, witness)) = settled {
            if let Some((cfg, _)) = &witness {
                check_witness(g, cfg)?;
            }
            if d <= budget.d_max {
                result.value = DimValue::Exact(d);
                result.lower_bound = d;
                if let Some((cfg, padding)) = witness {
                    result.witness = Some(cfg);
                    result.padding = padding;
                }
            } else {
                result.value = DimValue::GreaterThan(budget.d_max);
                result.lower_bound = budget.d_max + 1;
            }
            result.oracle = Some(verdict);
            return Ok(result);
        }
        result.oracle = Some(OracleVerdict::NotInterval);
        result.lower_bound = 3;
        start = 3;
    }

    let mut proved = true;
    for d in start..=budget.d_max {
        let mut exhausted = true;
        for k in 0..=k_max {
            let cell = search_cell(g, d, k, budget.node_limit)?;
            result.cells.push(cell.report);
            match cell.report.status {
                CellStatus::Found => {
                    result.value = if proved && result.lower_bound == d {
                        DimValue::Exact(d)
                    } else {
                        DimValue::AtMost(d)
                    };
                    if let Some((cfg, padding)) = cell.witness {
                        result.witness = Some(cfg);
                        result.padding = padding;
                    }
                    return Ok(result);
                }
                CellStatus::Exhausted => {}
                CellStatus::Truncated | CellStatus::TooLarge => exhausted = false,
            }
        }
        if proved && exhausted && k_complete {
            result.lower_bound = d + 1;
        } else {
            proved = false;
        }
    }
    if result.lower_bound > budget.d_max {
        result.value = DimValue::GreaterThan(budget.d_max);
    }
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Holds,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub verdict: Monotonicity,
    pub graph: DimResult,
    pub subgraph: DimResult,
}

/// Checks `dim_poc(H) <= dim_poc(G)` for an induced subgraph `H` of `G`
/// (matched by labels).
pub fn verify_induced_monotonicity(g: &Graph, h: &Graph, budget: &SearchBudget) -> Result<MonotonicityReport> {
    let induced = g.induced(h.labels()).map_err(|e| SearchError::NotInduced(e.to_string()))?;
    if !induced.same_labeled(h) {
        return Err(SearchError::NotInduced(
            "the subgraph's edges differ from those induced in the graph".into(),
        ));
    }
    let graph = dim_poc(g, budget)?;
    let subgraph = dim_poc(h, budget)?;
    let verdict = match (subgraph.upper_bound(), graph.upper_bound()) {
        (Some(hu), _) if hu <= graph.lower_bound => Monotonicity::Holds,
        (_, Some(gu)) if subgraph.lower_bound > gu => Monotonicity::Violated,
        _ => Monotonicity::Inconclusive,
    };
    Ok(MonotonicityReport {
        verdict,
        graph,
        subgraph,
    })
}

/// `dim_poc(K_{m×n})` within `budget`.
pub fn multipartite_probe(m: usize, n: usize, budget: &SearchBudget) -> Result<DimResult> {
    dim_poc(&Graph::complete_multipartite(m, n), budget)
}

/// Per-dimension summary of a cell table: `(d, exhausted cells, total cells)`.
pub fn cell_summary(cells: &[CellReport]) -> BTreeMap<usize, (usize, usize)> {
    let mut out: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for c in cells {
        let e = out.entry(c.d).or_default();
        e.1 += 1;
        if c.status == CellStatus::Exhausted {
            e.0 += 1;
        }
    }
    out
}
