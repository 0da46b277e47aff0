//! d-partial orders `D_S` of labeled point configurations and their
//! competition graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{precedes_strict, GeometryError, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompetitionError {
    #[error("a point configuration needs at least one point")]
    EmptyConfig,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("invalid label {0:?}: labels are nonempty, contain no whitespace and do not start with '#'")]
    InvalidLabel(String),
    #[error("point {label:?} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },
    #[error("loop at vertex {0:?}")]
    Loop(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T> = std::result::Result<T, CompetitionError>;

pub(crate) fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() || label.starts_with('#') || label.chars().any(char::is_whitespace) {
        return Err(CompetitionError::InvalidLabel(label.to_string()));
    }
    Ok(())
}

fn check_unique<'a>(labels: impl IntoIterator<Item = &'a String>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for l in labels {
        validate_label(l)?;
        if !seen.insert(l.as_str()) {
            return Err(CompetitionError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// A labeled finite point set `S ⊂ Z^d`. Distinct labels may share a position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointConfig {
    dim: usize,
    entries: Vec<(String, Point)>,
}

impl PointConfig {
    pub fn new(entries: Vec<(String, Point)>) -> Result<Self> {
        let dim = entries.first().ok_or(CompetitionError::EmptyConfig)?.1.dim();
        check_unique(entries.iter().map(|(l, _)| l))?;
        for (label, p) in &entries {
            if p.dim() != dim {
                return Err(CompetitionError::DimensionMismatch {
                    label: label.clone(),
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        Ok(PointConfig { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(String, Point)] {
        &self.entries
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(l, _)| l.as_str())
    }

    pub fn point(&self, label: &str) -> Option<&Point> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    /// Appends a copy of the first coordinate to every point. `D_S` is unchanged.
    pub fn padded(&self) -> PointConfig {
        let entries = self
            .entries
            .iter()
            .map(|(l, p)| {
                let mut c = p.coords().to_vec();
                c.push(c[0]);
                (l.clone(), Point::new(c).expect("dimension grows by one"))
            })
            .collect();
        PointConfig {
            dim: self.dim + 1,
            entries,
        }
    }

    /// Applies `map(axis, value)` to every coordinate; `axis` is 1-based.
    pub fn map_coords(&self, mut map: impl FnMut(usize, i64) -> i64) -> PointConfig {
        let entries = self
            .entries
            .iter()
            .map(|(l, p)| {
                let c = p
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| map(i + 1, v))
                    .collect();
                (l.clone(), Point::new(c).expect("same dimension"))
            })
            .collect();
        PointConfig {
            dim: self.dim,
            entries,
        }
    }
}

/// A loopless digraph on labeled vertices. Arc `(x, y)` means `x` preys on `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Digraph {
    labels: Vec<String>,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(labels: Vec<String>, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_unique(&labels)?;
        let n = labels.len();
        let mut set = BTreeSet::new();
        for (x, y) in arcs {
            for v in [x, y] {
                if v >= n {
                    return Err(CompetitionError::VertexOutOfRange { index: v, len: n });
                }
            }
            if x == y {
                return Err(CompetitionError::Loop(labels[x].clone()));
            }
            set.insert((x, y));
        }
        Ok(Digraph { labels, arcs: set })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.arcs.contains(&(x, y))
    }

    /// Arcs as label pairs, sorted by label.
    pub fn arc_labels(&self) -> Vec<(String, String)> {
        let mut out: Vec<_> = self
            .arcs
            .iter()
            .map(|&(x, y)| (self.labels[x].clone(), self.labels[y].clone()))
            .collect();
        out.sort();
        out
    }
}

/// A simple undirected graph on labeled vertices; edges are kept as sorted
/// index pairs `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    labels: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_unique(&labels)?;
        let n = labels.len();
        let mut set = BTreeSet::new();
        for (x, y) in edges {
            for v in [x, y] {
                if v >= n {
                    return Err(CompetitionError::VertexOutOfRange { index: v, len: n });
                }
            }
            if x == y {
                return Err(CompetitionError::Loop(labels[x].clone()));
            }
            set.insert((x.min(y), x.max(y)));
        }
        Ok(Graph { labels, edges: set })
    }

    pub fn from_label_edges<S: AsRef<str>>(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| CompetitionError::UnknownLabel(l.to_string()))
        };
        let pairs = edges
            .into_iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(labels, pairs)
    }

    /// Vertices labeled `0..n-1`.
    pub fn with_indices(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Graph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn empty(n: usize) -> Graph {
        Graph::with_indices(n, []).expect("no edges")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::with_indices(n, edges).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Graph {
        Graph::with_indices(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// The cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::with_indices(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// The star `K_{1,leaves}` with centre `0`.
    pub fn star(leaves: usize) -> Graph {
        Graph::with_indices(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
    }

    /// The wheel: hub `0` joined to a rim cycle `1..=rim`.
    pub fn wheel(rim: usize) -> Graph {
        let spokes = (1..=rim).map(|i| (0, i));
        let rim_edges = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
        Graph::with_indices(rim + 1, spokes.chain(rim_edges)).expect("valid wheel")
    }

    /// `K_{m×n}`: `n` partite sets of `m` vertices each; vertex `p*m + r` is
    /// member `r` of part `p`.
    pub fn complete_multipartite(m: usize, n: usize) -> Graph {
        let total = m * n;
        let edges = (0..total).flat_map(move |i| {
            (i + 1..total).filter(move |j| i / m != j / m).map(move |j| (i, j))
        });
        Graph::with_indices(total, edges).expect("valid multipartite graph")
    }

    /// Disjoint union with `k` isolated vertices labeled `n..n+k-1` in index form.
    pub fn with_isolated(&self, k: usize) -> Graph {
        let mut labels = self.labels.clone();
        let mut next = self.labels.len();
        for _ in 0..k {
            while labels.iter().any(|l| *l == next.to_string()) {
                next += 1;
            }
            labels.push(next.to_string());
            next += 1;
        }
        Graph {
            labels,
            edges: self.edges.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x.min(y), x.max(y)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&u| u != v && self.has_edge(u, v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.degree(v) == 0
    }

    /// Edges as label pairs `(a, b)` with `a < b`, sorted.
    pub fn edge_labels(&self) -> Vec<(String, String)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(x, y)| {
                let (a, b) = (&self.labels[x], &self.labels[y]);
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Labels of isolated vertices, sorted.
    pub fn isolated_labels(&self) -> Vec<String> {
        let mut out: Vec<_> = (0..self.len())
            .filter(|&v| self.is_isolated(v))
            .map(|v| self.labels[v].clone())
            .collect();
        out.sort();
        out
    }

    /// Induced subgraph on `labels`, in the given order.
    pub fn induced<S: AsRef<str>>(&self, labels: &[S]) -> Result<Graph> {
        let idx = labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| CompetitionError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        for (a, &x) in idx.iter().enumerate() {
            for (b, &y) in idx.iter().enumerate().skip(a + 1) {
                if self.has_edge(x, y) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(labels.iter().map(|l| l.as_ref().to_string()).collect(), edges)
    }

    /// The same graph with vertex `v` renamed `labels[v]`.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.len() {
            return Err(CompetitionError::LabelMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.len()
            )));
        }
        Graph::new(labels, self.edges.iter().copied())
    }

    /// Whether the two graphs have the same labeled vertex and edge sets.
    pub fn same_labeled(&self, other: &Graph) -> bool {
        let a: BTreeSet<&String> = self.labels.iter().collect();
        let b: BTreeSet<&String> = other.labels.iter().collect();
        a == b && self.edge_labels() == other.edge_labels()
    }
}

/// `D_S`: vertex set the labels of `cfg`, arc `(x, y)` iff `y ≺ x`.
pub fn build_digraph(cfg: &PointConfig) -> Digraph {
    let pts = cfg.entries();
    let mut arcs = BTreeSet::new();
    for (x, (_, px)) in pts.iter().enumerate() {
        for (y, (_, py)) in pts.iter().enumerate() {
            if x != y && precedes_strict(py, px).expect("config points share a dimension") {
                arcs.insert((x, y));
            }
        }
    }
    Digraph {
        labels: cfg.labels().map(str::to_string).collect(),
        arcs,
    }
}

/// `C(D)`: `xy` is an edge iff `x != y` share an out-neighbour.
pub fn competition_graph(d: &Digraph) -> Graph {
    let mut predators: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(x, z) in d.arcs() {
        predators.entry(z).or_default().push(x);
    }
    let mut edges = BTreeSet::new();
    for preds in predators.values() {
        for (i, &x) in preds.iter().enumerate() {
            for &y in &preds[i + 1..] {
                edges.insert((x.min(y), x.max(y)));
            }
        }
    }
    Graph {
        labels: d.labels().to_vec(),
        edges,
    }
}

/// Checks `G ∪ I_k = C(D_S)`: the points labeled `graph_labels` carry `G`'s
/// edges exactly and every other point of `cfg` is isolated.
pub fn is_realization<S: AsRef<str>>(cfg: &PointConfig, g: &Graph, graph_labels: &[S]) -> Result<bool> {
    let designated: BTreeSet<&str> = graph_labels.iter().map(AsRef::as_ref).collect();
    let g_labels: BTreeSet<&str> = g.labels().iter().map(String::as_str).collect();
    if designated != g_labels || designated.len() != graph_labels.len() {
        return Err(CompetitionError::LabelMismatch(
            "graph_labels must list exactly the vertices of G".into(),
        ));
    }
    let cfg_labels: BTreeSet<&str> = cfg.labels().collect();
    if let Some(missing) = designated.iter().find(|l| !cfg_labels.contains(*l)) {
        return Err(CompetitionError::LabelMismatch(format!(
            "vertex {missing:?} has no point in the configuration"
        )));
    }
    let c = competition_graph(&build_digraph(cfg));
    let cl = c.labels();
    for x in 0..c.len() {
        for y in x + 1..c.len() {
            let (lx, ly) = (cl[x].as_str(), cl[y].as_str());
            let expected = match (designated.contains(lx), designated.contains(ly)) {
                (true, true) => g.has_edge(
                    g.index_of(lx).expect("designated label"),
                    g.index_of(ly).expect("designated label"),
                ),
                _ => false,
            };
            if c.has_edge(x, y) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pt;

    fn cfg(entries: &[(&str, Point)]) -> PointConfig {
        PointConfig::new(entries.iter().map(|(l, p)| (l.to_string(), p.clone())).collect()).unwrap()
    }

    #[test]
    fn single_point_digraph() {
        let d = build_digraph(&cfg(&[("a", pt![0, 0])]));
        assert_eq!(d.labels().len(), 1);
        assert!(d.arcs().is_empty());
        assert_eq!(competition_graph(&d).edge_count(), 0);
    }

    #[test]
    fn two_point_chain() {
        let d = build_digraph(&cfg(&[("a", pt![0, 0]), ("b", pt![1, 1])]));
        assert_eq!(d.arc_labels(), vec![("b".into(), "a".into())]);
    }

    #[test]
    fn shared_prey() {
        let c = cfg(&[("a", pt![1, 2]), ("b", pt![2, 1]), ("p", pt![0, 0])]);
        let d = build_digraph(&c);
        assert_eq!(
            d.arc_labels(),
            vec![("a".into(), "p".into()), ("b".into(), "p".into())]
        );
        let g = competition_graph(&d);
        assert_eq!(g.edge_labels(), vec![("a".into(), "b".into())]);
        assert_eq!(g.isolated_labels(), vec!["p".to_string()]);

        let ab = Graph::from_label_edges(vec!["a".into(), "b".into()], [("a", "b")]).unwrap();
        assert!(is_realization(&c, &ab, &["a", "b"]).unwrap());
        let no_edge = Graph::new(vec!["a".into(), "b".into()], []).unwrap();
        assert!(!is_realization(&c, &no_edge, &["a", "b"]).unwrap());
    }

    #[test]
    fn comparable_chain_is_adjacent() {
        let c = cfg(&[("a", pt![0, 0]), ("b", pt![1, 1]), ("c", pt![2, 2])]);
        let g = competition_graph(&build_digraph(&c));
        assert_eq!(g.edge_labels(), vec![("b".into(), "c".into())]);
    }

    #[test]
    fn ties_give_no_arc() {
        let d = build_digraph(&cfg(&[("a", pt![0, 1]), ("b", pt![0, 2])]));
        assert!(d.arcs().is_empty());
    }

    #[test]
    fn k1_realized_by_one_point() {
        let c = cfg(&[("0", pt![7])]);
        assert!(is_realization(&c, &Graph::complete(1), &["0"]).unwrap());
    }

    #[test]
    fn realization_label_errors() {
        let c = cfg(&[("a", pt![1, 2]), ("b", pt![2, 1])]);
        let g = Graph::new(vec!["a".into(), "z".into()], []).unwrap();
        assert!(matches!(
            is_realization(&c, &g, &["a", "z"]),
            Err(CompetitionError::LabelMismatch(_))
        ));
        assert!(matches!(
            is_realization(&c, &g, &["a"]),
            Err(CompetitionError::LabelMismatch(_))
        ));
    }

    #[test]
    fn config_validation() {
        assert_eq!(PointConfig::new(vec![]), Err(CompetitionError::EmptyConfig));
        assert!(matches!(
            PointConfig::new(vec![("a".into(), pt![1]), ("a".into(), pt![2])]),
            Err(CompetitionError::DuplicateLabel(_))
        ));
        assert!(matches!(
            PointConfig::new(vec![("a".into(), pt![1]), ("b".into(), pt![2, 3])]),
            Err(CompetitionError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            PointConfig::new(vec![("a b".into(), pt![1])]),
            Err(CompetitionError::InvalidLabel(_))
        ));
        // Shared positions are fine.
        assert!(PointConfig::new(vec![("a".into(), pt![1, 1]), ("b".into(), pt![1, 1])]).is_ok());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::cycle(5).edge_count(), 5);
        assert_eq!(Graph::star(3).degree(0), 3);
        assert_eq!(Graph::wheel(4).edge_count(), 8);
        let oct = Graph::complete_multipartite(2, 3);
        assert_eq!(oct.edge_count(), 12);
        assert!(!oct.has_edge(0, 1));
        assert!(oct.has_edge(0, 2));
        assert_eq!(Graph::complete(3).with_isolated(1).isolated_labels(), vec!["3".to_string()]);
    }

    #[test]
    fn induced_subgraph() {
        let w = Graph::wheel(4);
        let rim = w.induced(&["1", "2", "3", "4"]).unwrap();
        assert_eq!(rim.edge_count(), 4);
        assert!(rim.has_edge(0, 3));
        assert!(!rim.has_edge(0, 2));
    }
}
