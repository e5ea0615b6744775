//! The pull-back square at a simplicial vertex: the component at the
//! unique maximal simplex S through the vertex must agree with the rest of
//! the tuple over S minus its interior S⁰. Genuine elements always pass;
//! corrupted tuples are caught.
//!
//! ```bash
//! cargo run --example pullback_square
//! ```

use chordal_braids::{BraidWord, Graph, IndexSet, LimitElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Graph::from_edges(
        ["x", "y", "z", "w"],
        [("x", "y"), ("y", "z"), ("x", "z"), ("y", "w"), ("z", "w")],
    )?;
    let (s, s0) = g.s_zero("x")?;
    println!("at the simplicial vertex x: S = {s}, S0 = {{{}}}", s0.join(", "));

    let elt = LimitElement::from_edge_word_str(&g, "E[y,z] E[x,y]^-1 E[z,w]")?;
    println!("genuine element passes? {}", elt.verify_pullback_square("x")?);

    // corrupt the component at S by an extra twist supported in S∖S0
    let mut pairs: Vec<_> = elt
        .components()
        .map(|(c, w)| (c.clone(), w.clone()))
        .collect();
    for (c, w) in &mut pairs {
        if *c == s {
            let idx = IndexSet::new(c.members().iter().cloned())?;
            *w = w.mul(&BraidWord::generator(&idx, "y", "z")?)?;
        }
    }
    let corrupted = LimitElement::from_components(&g, pairs)?;
    println!("corrupted tuple compatible? {}", corrupted.is_compatible()?);
    println!(
        "corrupted tuple passes the square? {}",
        corrupted.verify_pullback_square("x")?
    );
    Ok(())
}
