//! Randomized checks of the structural lemmas. Each trial draws an instance
//! satisfying a lemma's hypotheses from a seeded generator and tests the
//! conclusion; any failure is reported with the offending instance.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::competition::{build_digraph, competition_graph};
use crate::es_extract::{chain_or_antichain, extract_monotone_triple, extraction_threshold, monotone_in, StructureKind};
use crate::geometry::{
    comparable, min_point, precedes, precedes_on, sort_by_common_type, IndexSet, OrderType, Point,
};
use crate::instances::{
    random_config, random_family_instance, random_multipartite_instance, random_points, typed_antichain, FamilyShape,
};
use crate::witness::{
    embedding_forces_edge, find_forbidden_configuration, find_witness, required_part_count, required_part_size,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    Three,
    Min,
    Incomparable,
    Erdos,
    Extract,
    Main,
    Theorem,
}

impl Lemma {
    pub const ALL: [Lemma; 7] = [
        Lemma::Three,
        Lemma::Min,
        Lemma::Incomparable,
        Lemma::Erdos,
        Lemma::Extract,
        Lemma::Main,
        Lemma::Theorem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Three => "three",
            Lemma::Min => "min",
            Lemma::Incomparable => "incomparable",
            Lemma::Erdos => "erdos",
            Lemma::Extract => "extract",
            Lemma::Main => "main",
            Lemma::Theorem => "theorem",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| VerifyError::UnknownLemma(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown lemma {0:?}; expected one of three, min, incomparable, erdos, extract, main, theorem")]
    UnknownLemma(String),
    #[error("invalid scale: {0}")]
    InvalidScale(String),
}

/// Scale parameters; `None` picks the lemma's default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Scale {
    pub d: Option<usize>,
    /// Erdős–Szekeres length parameter.
    pub n: Option<usize>,
    /// First extracted coordinate.
    pub t: Option<usize>,
    /// Size of the designated part for the main lemma.
    pub part_size: Option<usize>,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub gamma: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub lemma: Lemma,
    pub seed: u64,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    /// Resolved scale parameters.
    pub scale: Scale,
    pub first_counterexample: Option<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn threshold_usize(d: usize, t: usize, cap: usize) -> Result<usize, VerifyError> {
    extraction_threshold(d, t)
        .and_then(|b| usize::try_from(&b).ok())
        .filter(|&m| m <= cap)
        .ok_or_else(|| VerifyError::InvalidScale(format!("extraction threshold for d={d}, t={t} is out of reach")))
}

/// Runs `trials` instances of `lemma`; trial `i` uses its own stream derived from `seed`.
pub fn verify(lemma: Lemma, trials: u64, seed: u64, scale: Scale) -> Result<VerifyReport, VerifyError> {
    let scale = resolve(lemma, scale)?;
    let mut report = VerifyReport {
        lemma,
        seed,
        trials,
        passed: 0,
        failed: 0,
        scale,
        first_counterexample: None,
    };
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        match trial(lemma, &scale, &mut rng) {
            Ok(()) => report.passed += 1,
            Err(msg) => {
                report.failed += 1;
                report.first_counterexample.get_or_insert(format!("trial {i}: {msg}"));
            }
        }
    }
    Ok(report)
}

fn resolve(lemma: Lemma, s: Scale) -> Result<Scale, VerifyError> {
    let bad = |m: String| Err(VerifyError::InvalidScale(m));
    let mut s = s;
    match lemma {
        Lemma::Three | Lemma::Min | Lemma::Incomparable => {
            let d = *s.d.get_or_insert(if lemma == Lemma::Incomparable { 3 } else { 4 });
            let lo = if lemma == Lemma::Incomparable { 1 } else { 2 };
            if !(lo..=16).contains(&d) {
                return bad(format!("d must lie in {lo}..=16"));
            }
        }
        Lemma::Erdos => {
            let n = *s.n.get_or_insert(3);
            if !(1..=1000).contains(&n) {
                return bad("n must lie in 1..=1000".into());
            }
        }
        Lemma::Extract => {
            let d = *s.d.get_or_insert(3);
            let t = *s.t.get_or_insert(2);
            if d < 2 || !(2..=d).contains(&t) {
                return bad("need 2 <= t <= d".into());
            }
            threshold_usize(d, t, 1 << 17)?;
        }
        Lemma::Main => {
            let d = *s.d.get_or_insert(3);
            let size = *s.part_size.get_or_insert(2);
            if d < 3 || !(1..=2).contains(&size) {
                return bad("need d >= 3 and part size 1 or 2".into());
            }
            let need = if size == 1 { 2 } else { threshold_usize(d, 3, 1 << 17)? };
            let alpha = *s.alpha.get_or_insert(need);
            if alpha < need {
                return bad(format!("alpha must be at least {need}"));
            }
        }
        Lemma::Theorem => {
            let d = *s.d.get_or_insert(3);
            if !(3..=5).contains(&d) {
                return bad("theorem instances are generated for 3 <= d <= 5".into());
            }
            let to_usize = |b: Option<num_bigint::BigUint>| b.and_then(|b| usize::try_from(&b).ok());
            let (need_b, need_g) = match (to_usize(required_part_size(d)), to_usize(required_part_count(d))) {
                (Some(b), Some(g)) if b * g <= 1 << 22 => (b, g),
                _ => return bad(format!("full-scale instances for d={d} do not fit in memory")),
            };
            let beta = *s.beta.get_or_insert(need_b);
            let gamma = *s.gamma.get_or_insert(need_g);
            if beta < need_b || gamma < need_g {
                return bad(format!("need beta >= {need_b} and gamma >= {need_g}"));
            }
        }
    }
    Ok(s)
}

fn random_part<R: Rng>(rng: &mut R, d: usize, size: Option<usize>) -> IndexSet {
    let mut axes: Vec<usize> = (1..=d).collect();
    axes.shuffle(rng);
    let size = size.unwrap_or_else(|| rng.gen_range(1..d));
    IndexSet::new(d, axes[..size].iter().copied()).expect("axes within range")
}

fn trial<R: Rng>(lemma: Lemma, s: &Scale, rng: &mut R) -> Result<(), String> {
    let err = |e: &dyn fmt::Display| e.to_string();
    match lemma {
        Lemma::Three => {
            let d = rng.gen_range(2..=s.d.expect("resolved"));
            let part = random_part(rng, d, None);
            let t = OrderType::from_part(part).map_err(|e| err(&e))?;
            let base = Point::new(vec![0; d]).expect("d >= 2");
            let pts = typed_antichain(rng, part, 3, &base, 6);
            let sigma = sort_by_common_type([&pts[0], &pts[1], &pts[2]], &t).map_err(|e| err(&e))?;
            let [x, y, z] = sigma.map(|i| &pts[i]);
            let (p, q) = t.parts();
            let ok = precedes_on(x, y, &p).map_err(|e| err(&e))?
                && precedes_on(y, z, &p).map_err(|e| err(&e))?
                && precedes_on(z, y, &q).map_err(|e| err(&e))?
                && precedes_on(y, x, &q).map_err(|e| err(&e))?;
            ok.then_some(()).ok_or_else(|| format!("{x} {y} {z} not sorted by {t}"))
        }
        Lemma::Min => {
            let d = rng.gen_range(2..=s.d.expect("resolved"));
            let part = random_part(rng, d, None);
            let x = random_points(rng, 1, d, 20).pop().expect("one point");
            let below = |rng: &mut R, on: &IndexSet| {
                let c = x
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| if on.contains(j + 1) { v - rng.gen_range(0..5) } else { rng.gen_range(-10..30) })
                    .collect();
                Point::new(c).expect("d >= 2")
            };
            let y = below(rng, &part);
            let z = below(rng, &part.complement());
            let m = min_point(&y, &z).map_err(|e| err(&e))?;
            precedes(&m, &x)
                .map_err(|e| err(&e))?
                .then_some(())
                .ok_or_else(|| format!("min{{{y}, {z}}} not below {x}"))
        }
        Lemma::Incomparable => {
            let d = rng.gen_range(1..=s.d.expect("resolved"));
            let n = rng.gen_range(1..=8);
            let cfg = random_config(rng, n, d, if d == 1 { 8 } else { 5 });
            let g = competition_graph(&build_digraph(&cfg));
            for x in 0..n {
                for y in x + 1..n {
                    if g.has_edge(x, y) || g.is_isolated(x) || g.is_isolated(y) {
                        continue;
                    }
                    let (u, v) = (&cfg.entries()[x].1, &cfg.entries()[y].1);
                    if comparable(u, v).map_err(|e| err(&e))? {
                        return Err(format!("nonadjacent non-isolated {u} and {v} are comparable"));
                    }
                }
            }
            Ok(())
        }
        Lemma::Erdos => {
            let n = s.n.expect("resolved");
            let m = n * n + 1;
            let pts = random_points(rng, m, 2, (2 * m) as i64);
            let r = chain_or_antichain(&pts, n).map_err(|e| err(&e))?;
            if r.len() < n + 1 {
                return Err(format!("structure of length {} < {}", r.len(), n + 1));
            }
            for (a, &i) in r.indices.iter().enumerate() {
                for &j in &r.indices[a + 1..] {
                    let (u, v) = (&pts[i], &pts[j]);
                    let ok = match r.kind {
                        StructureKind::Chain => comparable(u, v).map_err(|e| err(&e))?,
                        StructureKind::Antichain => !comparable(u, v).map_err(|e| err(&e))?,
                    };
                    if !ok {
                        return Err(format!("{u} and {v} break the {:?}", r.kind));
                    }
                }
            }
            Ok(())
        }
        Lemma::Extract => {
            let (d, t) = (s.d.expect("resolved"), s.t.expect("resolved"));
            let m = threshold_usize(d, t, usize::MAX).map_err(|e| err(&e))?;
            let pts = random_points(rng, m, d, 10);
            let tr = extract_monotone_triple(&pts, t).map_err(|e| err(&e))?;
            let [x, y, z] = &tr.points;
            let coords = std::iter::once(1).chain(t..=d);
            for j in coords {
                if !monotone_in(x, y, z, j) {
                    return Err(format!("{x} {y} {z} not monotone in coordinate {j}"));
                }
            }
            Ok(())
        }
        Lemma::Main => {
            let d = s.d.expect("resolved");
            let part = random_part(rng, d, s.part_size);
            let shape = *[FamilyShape::Scattered, FamilyShape::Staircase].choose(rng).expect("nonempty");
            let inst = random_family_instance(rng, part, s.alpha.expect("resolved"), 3, shape);
            let w = find_witness(&inst).map_err(|e| err(&e))?;
            w.verify(&inst).then_some(()).ok_or_else(|| format!("witness {w:?} fails"))
        }
        Lemma::Theorem => {
            let d = s.d.expect("resolved");
            let inst = random_multipartite_instance(rng, d, s.beta.expect("resolved"), s.gamma.expect("resolved"));
            let cert = find_forbidden_configuration(&inst).map_err(|e| err(&e))?;
            if !cert.verify(&inst) {
                return Err(format!("certificate {cert:?} fails"));
            }
            let cfg = cert.embedding().map_err(|e| err(&e))?;
            embedding_forces_edge(&cfg, &cert.c_label(), &cert.d_label())
                .then_some(())
                .ok_or_else(|| "embedding does not force the edge cd".into())
        }
    }
}
