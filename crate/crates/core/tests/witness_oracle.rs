mod common;

use pocdim::competition::{build_digraph, competition_graph};
use pocdim::geometry::{IndexSet, Point};
use pocdim::instances::{random_family_instance, random_multipartite_instance, typed_multipartite_instance, FamilyShape};
use pocdim::witness::{
    find_forbidden_configuration, find_witness, find_witness_reduced, probe_forbidden_configuration, FamilyInstance,
    MultipartiteInstance, PipelineOutcome, PipelinePhase, WitnessRoute,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn raw(inst: &FamilyInstance) -> Vec<Vec<Vec<i64>>> {
    inst.families()
        .iter()
        .map(|f| f.iter().map(|p| p.coords().to_vec()).collect())
        .collect()
}

fn check_instance(inst: &FamilyInstance) {
    let w = find_witness(inst).unwrap();
    let fams = raw(inst);
    let q = w.members.map(|r| (r.family, r.member));
    assert!(common::is_witness(&fams, q), "returned quadruple fails the oracle");
    assert!(!common::witness_quadruples(&fams).is_empty());
    assert!(w.verify(inst));
    // The embedding makes c and d compete.
    let cfg = w.embedding().unwrap();
    let g = competition_graph(&build_digraph(&cfg));
    let label = |r: pocdim::witness::MemberRef| format!("V{}.{}", r.family, r.member);
    let (c, d) = (g.index_of(&label(w.members[2])).unwrap(), g.index_of(&label(w.members[3])).unwrap());
    assert!(g.has_edge(c, d));
}

#[test]
fn singleton_part_instances() {
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let axis = 1 + (seed as usize % 3);
        let part = IndexSet::new(3, [axis]).unwrap();
        let inst = random_family_instance(&mut rng, part, 2, 3 + seed as usize % 2, FamilyShape::Scattered);
        check_instance(&inst);
    }
}

#[test]
fn pair_part_instances_cover_every_route() {
    let mut routes = std::collections::HashSet::new();
    for seed in 0..2000 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let part = IndexSet::new(3, [[1, 2], [1, 3], [2, 3]][seed as usize % 3]).unwrap();
        let shape = if seed % 2 == 0 { FamilyShape::Scattered } else { FamilyShape::Staircase };
        let inst = random_family_instance(&mut rng, part, 5, 3, shape);
        check_instance(&inst);
        routes.insert(find_witness(&inst).unwrap().route);
    }
    for r in [WitnessRoute::NonInversion, WitnessRoute::LowFirst, WitnessRoute::LowSecond, WitnessRoute::Dominated] {
        assert!(routes.contains(&r), "route {r:?} never taken");
    }
}

#[test]
fn pair_part_in_dimension_four() {
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let part = IndexSet::new(4, [2, 4]).unwrap();
        let inst = random_family_instance(&mut rng, part, 17, 3, FamilyShape::Staircase);
        check_instance(&inst);
    }
}

#[test]
fn reduced_scale_answers_are_sound() {
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let part = IndexSet::new(3, [1, 2]).unwrap();
        let inst = random_family_instance(&mut rng, part, 2 + seed as usize % 3, 3, FamilyShape::Staircase);
        assert!(find_witness(&inst).is_err());
        if let Some(w) = find_witness_reduced(&inst).unwrap() {
            assert!(common::is_witness(&raw(&inst), w.members.map(|r| (r.family, r.member))));
        }
    }
}

fn check_certificate(inst: &MultipartiteInstance) -> PipelinePhase {
    let cert = find_forbidden_configuration(inst).unwrap();
    assert!(cert.verify(inst));
    let parts: Vec<Vec<Vec<i64>>> = inst.parts().iter().map(|p| p.iter().map(|q| q.coords().to_vec()).collect()).collect();
    let q = [cert.a, cert.b, cert.c, cert.d].map(|r| (r.family, r.member));
    assert!(common::is_witness(&parts, q));
    let cfg = cert.embedding().unwrap();
    let g = competition_graph(&build_digraph(&cfg));
    let (c, d) = (g.index_of(&cert.c_label()).unwrap(), g.index_of(&cert.d_label()).unwrap());
    assert!(g.has_edge(c, d));
    cert.phase
}

#[test]
fn pipeline_in_dimension_three() {
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_multipartite_instance(&mut rng, 3, 17, 52);
        assert_eq!(check_certificate(&inst), PipelinePhase::SingletonTypes);
    }
}

#[test]
fn pipeline_reaches_the_pigeonhole_phase() {
    // Every pair has type {{1,2},{3,4}}, which has no singleton part.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let part = IndexSet::new(4, [1, 2]).unwrap();
    let inst = typed_multipartite_instance(&mut rng, part, 5, 8);
    match probe_forbidden_configuration(&inst).unwrap() {
        PipelineOutcome::Certificate(cert) => {
            assert_eq!(cert.phase, PipelinePhase::Pigeonhole);
            assert!(cert.verify(&inst));
        }
        PipelineOutcome::NoCertificate { reason } => panic!("no certificate: {reason}"),
    }
}

#[test]
fn full_scale_rejects_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let inst = random_multipartite_instance(&mut rng, 3, 17, 10);
    assert!(find_forbidden_configuration(&inst).is_err());
    let small = random_multipartite_instance(&mut rng, 3, 4, 60);
    assert!(find_forbidden_configuration(&small).is_err());
    // Reduced scale still answers soundly.
    if let PipelineOutcome::Certificate(c) = probe_forbidden_configuration(&small).unwrap() {
        assert!(c.verify(&small));
    }
}

#[test]
fn shared_points_are_rejected() {
    let p = |c: [i64; 3]| Point::new(c.to_vec()).unwrap();
    let a = vec![p([0, 5, 5]), p([1, 4, 4]), p([2, 3, 3])];
    let inst = MultipartiteInstance::new(3, vec![a.clone(), a]).unwrap();
    assert!(probe_forbidden_configuration(&inst).is_err());
}
