//! Chains and antichains among n^2+1 planar points, then a monotone triple
//! pulled out of 17 points in three dimensions.

use pocdim::es_extract::{chain_or_antichain, extract_monotone_triple, extraction_threshold};
use pocdim::instances::random_points;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 4;
    let pts = random_points(&mut rng, n * n + 1, 2, 40);
    let r = chain_or_antichain(&pts, n).unwrap();
    println!("{:?} of length {} (need {})", r.kind, r.len(), n + 1);
    for &i in &r.indices {
        println!("  {}", pts[i]);
    }

    let m = extraction_threshold(3, 2).unwrap();
    let cube = random_points(&mut rng, m.try_into().unwrap(), 3, 10);
    let tr = extract_monotone_triple(&cube, 2).unwrap();
    let [x, y, z] = &tr.points;
    println!("monotone in every coordinate: {x} {y} {z}");
    println!("survivors per round: {:?}", tr.trace.iter().map(Vec::len).collect::<Vec<_>>());
}
