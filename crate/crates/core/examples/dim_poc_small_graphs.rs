//! Smallest dimension whose point sets realize a graph (plus isolated
//! padding) as a competition graph.

use pocdim::competition::Graph;
use pocdim::dimsearch::{dim_poc, SearchBudget};

fn main() {
    let graphs = [
        ("K_1", Graph::complete(1)),
        ("K_4", Graph::complete(4)),
        ("P_4", Graph::path(4)),
        ("K_1,3", Graph::star(3)),
        ("C_4", Graph::cycle(4)),
        ("wheel W_4", Graph::wheel(4)),
    ];
    let budget = SearchBudget::default();
    for (name, g) in graphs {
        let r = dim_poc(&g, &budget).unwrap();
        println!("{name:>10}: {:?} (oracle {:?}, {} cells)", r.value, r.oracle, r.cells.len());
        if let Some(w) = &r.witness {
            for (label, p) in w.entries() {
                let tag = if r.padding.contains(label) { " (padding)" } else { "" };
                println!("{:>14} {p}{tag}", label);
            }
        }
    }
}
