//! Elements of Γ(G) as compatible tuples of braid words over the maximal
//! simplices of a chordal graph.
//!
//! ```bash
//! cargo run --example limit_elements
//! ```

use chordal_braids::{Graph, LimitElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // two triangles sharing an edge
    let g = Graph::from_edges(
        ["x", "y", "z", "w"],
        [("x", "y"), ("y", "z"), ("x", "z"), ("y", "w"), ("z", "w")],
    )?;

    // one meridian generator per edge; its components live on the cliques
    // containing the edge
    let gen = LimitElement::edge_generator(&g, "y", "z")?;
    println!("edge generator E[y,z] by clique:");
    for (clique, word) in gen.components() {
        println!("  {clique}: {word}");
    }
    println!("compatible? {}", gen.is_compatible()?);

    // elements multiply componentwise; edge words spell products
    let elt = LimitElement::from_edge_word_str(&g, "E[x,y] E[y,w]^-1 E[y,z]")?;
    println!("\nE[x,y] E[y,w]^-1 E[y,z] by clique:");
    for (clique, word) in elt.components() {
        println!("  {clique}: {word}");
    }

    // projections to any simplex are consistent across cliques
    let shared = g.simplex(["y", "z"])?;
    println!("\nprojection to {shared}: {}", elt.project(&shared)?);

    // inverses cancel
    let id = elt.mul(&elt.inverse())?;
    println!("γ·γ⁻¹ trivial? {}", id.equal(&LimitElement::identity(&g)?)?);
    Ok(())
}
