//! Finds points a, b, c, d with a, b in different families, c, d in one
//! family and min{a,b} below min{c,d}, then shows that one prey point forces
//! c and d to compete.

use pocdim::geometry::IndexSet;
use pocdim::instances::{random_family_instance, FamilyShape};
use pocdim::witness::{embedding_forces_edge, find_witness};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let part = IndexSet::new(3, [1, 2]).unwrap();
    let inst = random_family_instance(&mut rng, part, 5, 3, FamilyShape::Staircase);
    for (f, fam) in inst.families().iter().enumerate() {
        let pts: Vec<String> = fam.iter().map(|p| p.to_string()).collect();
        println!("family {f}: {}", pts.join(" "));
    }

    let w = find_witness(&inst).unwrap();
    println!("route {:?}", w.route);
    println!("a = {}  b = {}", w.a, w.b);
    println!("c = {}  d = {}", w.c, w.d);
    assert!(w.verify(&inst));

    let cfg = w.embedding().unwrap();
    let [_, _, c, d] = w.members;
    let (cl, dl) = (format!("V{}.{}", c.family, c.member), format!("V{}.{}", d.family, d.member));
    println!("{cl} and {dl} compete: {}", embedding_forces_edge(&cfg, &cl, &dl));
}
