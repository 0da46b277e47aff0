//! Builds the dominance digraph of a point set and its competition graph.

use pocdim::competition::{build_digraph, competition_graph, PointConfig};
use pocdim::geometry::Point;

fn main() {
    let pts = [("a", [1, 2]), ("b", [2, 1]), ("c", [3, 3]), ("p", [0, 0])];
    let cfg = PointConfig::new(pts.iter().map(|(l, c)| (l.to_string(), Point::new(c.to_vec()).unwrap())).collect())
        .unwrap();
    let dg = build_digraph(&cfg);
    let g = competition_graph(&dg);

    println!("arcs (predator -> prey):");
    for (x, y) in dg.arc_labels() {
        println!("  {x} -> {y}");
    }
    println!("edges:");
    for (x, y) in g.edge_labels() {
        println!("  {x} {y}");
    }
    println!("isolated: {:?}", g.isolated_labels());
}
