//! Exhaustive confirmation of the minimal cardinality at small degree:
//! enumerates all semitransitive subsemigroups of the singular part up to
//! the bound, then classifies every minimal class against the families.
//!
//! Run with: cargo run --release --example minimal_search

use semitransitive::constructors::bound;
use semitransitive::search::{minimal_search, SearchConfig};

fn main() {
    for n in 2u8..=4 {
        let mut config = SearchConfig::new(n);
        config.classify = true;
        let result = minimal_search(&config).expect("supported degree");
        println!(
            "degree {n}: minimal cardinality {:?} (bound {}), {} similarity class(es)",
            result.minimal_cardinality,
            bound(n),
            result.representatives.len()
        );
        for (i, rep) in result.representatives.iter().enumerate() {
            let elems: Vec<String> = rep.elements().iter().map(|e| e.to_string()).collect();
            println!("  class {}: {}", i + 1, elems.join("  "));
            let matches = &result.classifications[i];
            if matches.is_empty() {
                println!("    unclassified");
            } else {
                for m in matches {
                    let l = m.l.map(|v| format!(" l={v}")).unwrap_or_default();
                    println!(
                        "    matches {} with p={} m={}{} (group {})",
                        m.family.label(),
                        m.p,
                        m.m,
                        l,
                        m.group
                    );
                }
            }
        }
        let st = result.stats;
        println!(
            "  search stats: {} nodes, {} semitransitive, pruned (size/pairs/idempotents/symmetry) = {}/{}/{}/{}",
            st.nodes,
            st.semitransitive_nodes,
            st.pruned_size,
            st.pruned_pairs,
            st.pruned_idempotents,
            st.pruned_symmetry
        );
        println!();
    }
}
