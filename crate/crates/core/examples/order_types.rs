//! Order types of incomparable pairs, and how many splits exist per dimension.
//!
//! Run with `cargo run --example order_types`.

use pocdim::geometry::{count_possible_order_types, order_types, Point};

fn main() {
    let u = Point::new(vec![1, 2, 5]).unwrap();
    let v = Point::new(vec![1, 3, 4]).unwrap();
    println!("order types of {u} and {v}:");
    for t in order_types(&u, &v).unwrap() {
        println!("  {t}");
    }

    for d in 2..=8 {
        println!("d = {d}: {} possible types", count_possible_order_types(d).unwrap());
    }
}
