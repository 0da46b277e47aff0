//! Searches the complete multipartite graphs K_{2×2} and K_{2×3} and prints
//! which cells were exhausted.

use pocdim::dimsearch::{cell_summary, multipartite_probe, SearchBudget};

fn main() {
    let budget = SearchBudget::default();
    for n in 2..=3 {
        let r = multipartite_probe(2, n, &budget).unwrap();
        println!("K_2x{n}: {:?}, k range complete: {}", r.value, r.k_complete);
        for (d, (done, total)) in cell_summary(&r.cells) {
            println!("  d = {d}: {done}/{total} cells exhausted");
        }
    }
}
