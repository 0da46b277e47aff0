//! Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
//! Exits nonzero if anything fails.

mod common;

use std::time::{Duration, Instant};

use pocdim::competition::{build_digraph, competition_graph, is_realization, Graph, PointConfig};
use pocdim::dimsearch::{cell_summary, dim_poc, multipartite_probe, CellStatus, DimResult, DimValue, SearchBudget};
use pocdim::es_extract::{chain_or_antichain, extract_monotone_triple, StructureKind};
use pocdim::geometry::{all_order_types, count_possible_order_types, order_types, IndexSet, Point};
use pocdim::instances::{random_config, random_family_instance, random_multipartite_instance, random_points, FamilyShape};
use pocdim::witness::{find_forbidden_configuration, find_witness, MemberRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rows(pts: &[Point]) -> Vec<Vec<i64>> {
    pts.iter().map(|p| p.coords().to_vec()).collect()
}

fn exact(g: &Graph, budget: &SearchBudget) -> Result<(usize, DimResult), String> {
    let r = dim_poc(g, budget).map_err(|e| e.to_string())?;
    if let Some(w) = &r.witness {
        ensure(is_realization(w, g, g.labels()).map_err(|e| e.to_string())?, || "witness fails".into())?;
    }
    match r.value {
        DimValue::Exact(d) => Ok((d, r)),
        other => Err(format!("not settled: {other:?}")),
    }
}

fn characterizations() -> Outcome {
    let mut cases = vec![("K_1".to_string(), Graph::complete(1), 0)];
    for t in 2..=5 {
        cases.push((format!("K_{t}"), Graph::complete(t), 1));
        cases.push((format!("K_{t}+K_1"), Graph::complete(t).with_isolated(1), 1));
    }
    cases.push(("P_3".into(), Graph::path(3), 2));
    cases.push(("P_4".into(), Graph::path(4), 2));
    cases.push(("K_1,3".into(), Graph::star(3), 2));
    // Both with the characterizations and by plain search up to d = 2.
    for use_oracles in [true, false] {
        let budget = SearchBudget {
            d_max: 2,
            use_oracles,
            ..SearchBudget::default()
        };
        for (name, g, want) in &cases {
            let (got, _) = exact(g, &budget)?;
            ensure(got == *want, || format!("{name}: got {got}, want {want} (oracles {use_oracles})"))?;
        }
    }
    Ok(format!("{} graphs, oracle and search agree", cases.len()))
}

fn cycle(n: usize) -> Outcome {
    let g = Graph::cycle(n);
    let budget = SearchBudget {
        d_max: 3,
        k_max: Some(g.edge_count()),
        node_limit: u64::MAX,
        use_oracles: false,
    };
    let (d, r) = exact(&g, &budget)?;
    ensure(d == 3, || format!("C_{n}: got {d}"))?;
    let w = r.witness.as_ref().ok_or("no witness")?;
    // Re-verify on the raw coordinates with the independent oracle.
    let coords: Vec<Vec<i64>> = w.entries().iter().map(|(_, p)| p.coords().to_vec()).collect();
    let edges = common::competition_edges(&coords);
    let label = |i: usize| w.entries()[i].0.clone();
    let got: std::collections::BTreeSet<(String, String)> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (label(a), label(b));
            if x < y { (x, y) } else { (y, x) }
        })
        .collect();
    let want: std::collections::BTreeSet<(String, String)> = g
        .edge_labels()
        .into_iter()
        .map(|(x, y)| if x < y { (x, y) } else { (y, x) })
        .collect();
    ensure(got == want, || format!("witness edges {got:?}"))?;
    let nodes: u64 = r.cells.iter().map(|c| c.nodes).sum();
    Ok(format!("dim 3 with {} padding points, {} cells, {nodes} nodes", r.padding.len(), r.cells.len()))
}

fn order_type_counts() -> Outcome {
    for d in 2..=8 {
        let want = (1u64 << (d - 1)) - 1;
        let n = count_possible_order_types(d).map_err(|e| e.to_string())?;
        let listed = all_order_types(d).map_err(|e| e.to_string())?.len() as u64;
        ensure(n == want && listed == want, || format!("d={d}: {n}/{listed}, want {want}"))?;
    }
    let u = Point::new(vec![1, 2, 5]).unwrap();
    let v = Point::new(vec![1, 3, 4]).unwrap();
    let types = order_types(&u, &v).map_err(|e| e.to_string())?;
    let got: std::collections::BTreeSet<(Vec<usize>, Vec<usize>)> = types
        .iter()
        .map(|t| {
            let (s, c) = t.parts();
            (s.to_vec(), c.to_vec())
        })
        .collect();
    let want: std::collections::BTreeSet<_> = [(vec![1, 2], vec![3]), (vec![1, 3], vec![2])].into_iter().collect();
    ensure(got == want && common::order_types(u.coords(), v.coords()) == want, || {
        format!("example pair gave {got:?}")
    })?;
    let got: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    Ok(format!("d=2..8 match 2^(d-1)-1; example pair: {}", got.join(" ")))
}

fn erdos_szekeres() -> Outcome {
    let mut checked = 0;
    for n in [2usize, 3, 5, 10] {
        let m = n * n + 1;
        for trial in 0..10_000u64 {
            let mut r = rng(n as u64, trial);
            let pts = random_points(&mut r, m, 2, 2 * m as i64);
            let res = chain_or_antichain(&pts, n).map_err(|e| e.to_string())?;
            ensure(res.len() > n, || format!("n={n} trial {trial}: length {}", res.len()))?;
            let raw = rows(&pts);
            for (a, &i) in res.indices.iter().enumerate() {
                for &j in &res.indices[a + 1..] {
                    let comparable = !common::incomparable(&raw[i], &raw[j]);
                    ensure(comparable == (res.kind == StructureKind::Chain), || {
                        format!("n={n} trial {trial}: {:?} broken", res.kind)
                    })?;
                }
            }
            if n <= 5 {
                let planar: Vec<(i64, i64)> = raw.iter().map(|c| (c[0], c[1])).collect();
                let (chain, anti) = common::longest_chain_antichain(&planar);
                let want = if res.kind == StructureKind::Chain { chain } else { anti };
                ensure(res.len() == want, || format!("n={n} trial {trial}: {} vs longest {want}", res.len()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("40000 inputs, {checked} matched against the oracle"))
}

fn extraction() -> Outcome {
    for (t, m) in [(3usize, 5usize), (2, 17)] {
        let axes: Vec<usize> = std::iter::once(1).chain(t..=3).collect();
        for trial in 0..1000u64 {
            let mut r = rng(100 + t as u64, trial);
            let pts = random_points(&mut r, m, 3, 8);
            let raw = rows(&pts);
            if t == 3 {
                ensure(common::has_monotone_triple(&raw, &axes), || format!("t=3 trial {trial}: oracle finds none"))?;
            }
            let tr = extract_monotone_triple(&pts, t).map_err(|e| format!("t={t} trial {trial}: {e}"))?;
            let [a, b, c] = tr.indices;
            let ok = a != b
                && b != c
                && a != c
                && axes.iter().all(|&j| common::monotone(raw[a][j - 1], raw[b][j - 1], raw[c][j - 1]));
            ensure(ok, || format!("t={t} trial {trial}: {:?} not monotone", tr.indices))?;
        }
    }
    Ok("1000 instances each for t=3 (5 points) and t=2 (17 points)".into())
}

fn main_lemma() -> Outcome {
    let mut routes = std::collections::BTreeMap::new();
    for (size, alpha) in [(1usize, 2usize), (2, 5)] {
        for trial in 0..1000u64 {
            let mut r = rng(200 + size as u64, trial);
            let mut axes = [1, 2, 3];
            for i in (1..3).rev() {
                axes.swap(i, r.gen_range(0..=i));
            }
            let part = IndexSet::new(3, axes[..size].iter().copied()).unwrap();
            let shape = if r.gen_bool(0.5) { FamilyShape::Scattered } else { FamilyShape::Staircase };
            let inst = random_family_instance(&mut r, part, alpha, 3, shape);
            let fams: Vec<Vec<Vec<i64>>> = inst.families().iter().map(|f| rows(f)).collect();
            ensure(!common::witness_quadruples(&fams).is_empty(), || format!("|S|={size} trial {trial}: none exist"))?;
            let w = find_witness(&inst).map_err(|e| format!("|S|={size} trial {trial}: {e}"))?;
            let q = w.members.map(|m: MemberRef| (m.family, m.member));
            ensure(common::is_witness(&fams, q), || format!("|S|={size} trial {trial}: {q:?} fails"))?;
            *routes.entry(format!("{:?}", w.route)).or_insert(0) += 1;
        }
    }
    Ok(format!("2000 instances; routes {routes:?}"))
}

fn theorem_pipeline() -> Outcome {
    let mut phases = Vec::new();
    for seed in 0..10u64 {
        let mut r = rng(300, seed);
        let inst = random_multipartite_instance(&mut r, 3, 17, 52);
        let cert = find_forbidden_configuration(&inst).map_err(|e| format!("instance {seed}: {e}"))?;
        let parts: Vec<Vec<Vec<i64>>> = inst.parts().iter().map(|p| rows(p)).collect();
        let q = [cert.a, cert.b, cert.c, cert.d].map(|m| (m.family, m.member));
        ensure(common::is_witness(&parts, q), || format!("instance {seed}: {q:?} fails"))?;
        // One prey point below min{a, b} makes c and d compete.
        let cfg = cert.embedding().map_err(|e| e.to_string())?;
        let coords: Vec<Vec<i64>> = cfg.entries().iter().map(|(_, p)| p.coords().to_vec()).collect();
        let idx = |l: &str| cfg.entries().iter().position(|(x, _)| x == l).unwrap();
        let (c, d) = (idx(&cert.c_label()), idx(&cert.d_label()));
        let edge = common::competition_edges(&coords).contains(&(c.min(d), c.max(d)));
        ensure(edge, || format!("instance {seed}: cd is not an edge"))?;
        phases.push(format!("{:?}", cert.phase));
    }
    phases.dedup();
    Ok(format!("10 certificates, phases {phases:?}"))
}

fn invariance() -> Outcome {
    for trial in 0..1000u64 {
        let mut r = rng(400, trial);
        let d = r.gen_range(1..=4);
        let n = r.gen_range(1..=8);
        let cfg = random_config(&mut r, n, d, if d == 1 { 8 } else { 5 });
        let base = build_digraph(&cfg);
        let g = competition_graph(&base);
        let raw: Vec<Vec<i64>> = cfg.entries().iter().map(|(_, p)| p.coords().to_vec()).collect();
        ensure(g.edges() == &common::competition_edges(&raw), || format!("trial {trial}: edges differ from definition"))?;

        let scale: Vec<i64> = (0..d).map(|_| r.gen_range(1..6)).collect();
        let shift: Vec<i64> = (0..d).map(|_| r.gen_range(-20..20)).collect();
        let mapped = cfg.map_coords(|axis, v| scale[axis - 1] * v * v * v + shift[axis - 1]);
        let padded: PointConfig = cfg.padded();
        for (what, other) in [("reparameterization", mapped), ("padding", padded)] {
            let dg = build_digraph(&other);
            let same = dg.arc_labels() == base.arc_labels() && competition_graph(&dg).same_labeled(&g);
            ensure(same, || format!("trial {trial}: {what} changed the graph"))?;
        }
        for x in 0..n {
            for y in x + 1..n {
                if !g.has_edge(x, y) && !g.is_isolated(x) && !g.is_isolated(y) {
                    ensure(common::incomparable(&raw[x], &raw[y]), || format!("trial {trial}: {x},{y} comparable"))?;
                }
            }
        }
    }
    Ok("1000 configurations".into())
}

fn probes() -> Outcome {
    let budget = SearchBudget {
        d_max: 3,
        node_limit: u64::MAX,
        ..SearchBudget::default()
    };
    let mut notes = Vec::new();
    for n in [2usize, 3] {
        let r = multipartite_probe(2, n, &budget).map_err(|e| e.to_string())?;
        let g = Graph::complete_multipartite(2, n);
        if let Some(w) = &r.witness {
            ensure(is_realization(w, &g, g.labels()).map_err(|e| e.to_string())?, || "witness fails".into())?;
        }
        let exhausted: Vec<String> = cell_summary(&r.cells)
            .iter()
            .map(|(d, (e, t))| format!("d={d}:{e}/{t}"))
            .collect();
        let lower_exhausted = r.cells.iter().filter(|c| c.status != CellStatus::Found).all(|c| c.status == CellStatus::Exhausted);
        notes.push(format!(
            "K_2x{n}: {:?}, exhausted {}, k_complete {}, lower cells all exhausted {lower_exhausted}",
            r.value,
            exhausted.join(" "),
            r.k_complete
        ));
        ensure(matches!(r.value, DimValue::Exact(_)), || format!("K_2x{n} not settled: {:?}", r.value))?;
    }
    Ok(notes.join("; "))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("characterization of dimensions 0, 1, 2", 10, characterizations),
        ("C_4 has dimension 3", 600, || cycle(4)),
        ("C_5 has dimension 3", 600, || cycle(5)),
        ("order type counts and example pair", 1, order_type_counts),
        ("Erdos-Szekeres guarantee", 60, erdos_szekeres),
        ("monotone triple extraction in d=3", 60, extraction),
        ("main lemma witnesses", 120, main_lemma),
        ("forbidden configurations at d=3", 300, theorem_pipeline),
        ("invariance suite", 60, invariance),
        ("multipartite probes K_2x2, K_2x3", 600, probes),
    ];
    let mut failures = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let (tag, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the {limit} s limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!("{tag} {name} [{:.2} s / {limit} s]: {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {failures} failure(s)");
    if failures > 0 {
        std::process::exit(1);
    }
}
