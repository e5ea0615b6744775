//! Rooted trees: comparability graphs, leaf cliques, and the iterated
//! semidirect product profile indexed by vertex heights.
//!
//! ```bash
//! cargo run --example tree_profile
//! ```

use chordal_braids::{LimitElement, RootedTree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // root r; children a, b; c under a — Newick-style input
    let t = RootedTree::from_newick("(a(c),b)r;")?;
    let g = t.comparability_graph();
    println!("comparability graph edges: {:?}", g.edges());
    println!("chordal? {}", g.is_chordal());

    // maximal simplices are the leaf chains
    println!("leaf cliques:");
    for c in t.maximal_simplices_via_leaves()? {
        println!("  {c}");
    }
    assert_eq!(t.maximal_simplices_via_leaves()?, g.maximal_simplices()?);

    // the semidirect profile lists vertices by height
    println!("profile:");
    for (h, vs) in t.semidirect_profile()? {
        println!("  height {h}: {}", vs.join(", "));
    }

    // normal-form layer ranks along a leaves-first PEO equal the heights
    let peo = t.leaves_first_peo()?;
    let elt = LimitElement::from_edge_word_str(&g, "E[a,c] E[r,b]^-1 E[r,c]")?;
    let nf = elt.normal_form(&peo)?;
    println!("leaves-first PEO {peo}, layer ranks {:?}", nf.layer_ranks());

    // projecting to a chain only sees the layers below it
    for w in t.vertices() {
        println!(
            "projection to the chain of {w} ignores other layers? {}",
            t.projection_kills_layers(&elt, w)?
        );
    }
    Ok(())
}
