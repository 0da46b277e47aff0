//! Runs the full pipeline on a large multipartite point set in R^3: every
//! pair inside a part is incomparable, yet two points of one part are forced
//! to share prey.

use pocdim::instances::random_multipartite_instance;
use pocdim::witness::{find_forbidden_configuration, required_part_count, required_part_size};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let d = 3;
    let beta: usize = required_part_size(d).unwrap().try_into().unwrap();
    let gamma: usize = required_part_count(d).unwrap().try_into().unwrap();
    println!("d = {d}: {gamma} parts of {beta} points");

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let inst = random_multipartite_instance(&mut rng, d, beta, gamma);
    let cert = find_forbidden_configuration(&inst).unwrap();
    println!("phase {:?}, route {:?}, shared type {}", cert.phase, cert.route, cert.order_type);
    for (name, p) in ["a", "b", "c", "d"].iter().zip(&cert.points) {
        println!("  {name} = {p}");
    }
    assert!(cert.verify(&inst));
    println!("{} and {} compete once a prey point sits below min{{a,b}}", cert.c_label(), cert.d_label());
}
