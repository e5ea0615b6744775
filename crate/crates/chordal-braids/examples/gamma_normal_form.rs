//! Normal forms in Γ(G) along a perfect elimination ordering: one free
//! layer of edge generators per eliminated vertex, with exact reassembly.
//!
//! ```bash
//! cargo run --example gamma_normal_form
//! ```

use chordal_braids::{Graph, LimitElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Graph::from_edges(
        ["a", "b", "c", "d"],
        [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
    )?;
    let peo = g.find_peo()?;
    println!("graph: diamond, PEO {peo}");

    let elt = LimitElement::from_edge_word_str(&g, "E[a,b] E[c,d] E[a,c]^-1 E[b,d]")?;
    let nf = elt.normal_form(&peo)?;
    println!("normal form layers:");
    for (v, layer) in peo.order().iter().zip(nf.layers()) {
        println!("  {v}: {layer}");
    }
    println!("layer ranks (later-neighbor counts): {:?}", nf.layer_ranks());

    // reassembling the layers in PEO order recovers the element exactly
    let back = LimitElement::from_normal_form(&nf)?;
    println!("reassembly equal? {}", back.equal(&elt)?);
    println!("same layers again? {}", back.normal_form(&peo)? == nf);

    // the tower splits: γ = lift(kernel part) · section(delete γ)
    let v = peo.order()[0].clone();
    let delta = elt.delete_simplicial_vertex(&v)?;
    let section = LimitElement::section(&delta, &g, &v)?;
    let kappa = elt.mul(&section.inverse())?;
    let kernel = kappa.kernel_word(&v)?;
    println!("kernel part at {v}: {kernel}");
    Ok(())
}
