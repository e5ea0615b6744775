//! Arrangement invariants from the elimination tower, each validated by a
//! brute-force oracle: chromatic polynomial vs coloring counts, region
//! count vs acyclic orientations, abelianization as edge exponent sums.
//!
//! ```bash
//! cargo run --example arrangement_invariants
//! ```

use chordal_braids::invariants::{
    abelianization, brute_force_acyclic_orientations, brute_force_coloring_count,
    chromatic_polynomial, exponents, poincare_polynomial, region_count,
};
use chordal_braids::{Graph, LimitElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Graph::from_edges(
        ["a", "b", "c", "d"],
        [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
    )?;
    let peo = g.find_peo()?;
    let exps = exponents(&g, &peo)?;
    println!("PEO {peo}, later-neighbor counts {:?}", exps.exponents());

    let chi = chromatic_polynomial(&g)?;
    println!("chromatic polynomial: {chi}");
    for q in 0..=4 {
        let counted = brute_force_coloring_count(&g, q)?;
        println!("  q = {q}: formula {} vs oracle {counted}", chi.eval(q as i64));
    }

    let poincare = poincare_polynomial(&g)?;
    println!("Poincaré polynomial: {}", poincare.display_with("t"));
    let regions = region_count(&g)?;
    let orientations = brute_force_acyclic_orientations(&g)?;
    println!("regions {regions} vs acyclic orientations {orientations}");
    println!("|χ(-1)| = {}", chi.eval(-1).abs());

    // the abelianization reads exponent sums off the normal form
    let elt = LimitElement::from_edge_word_str(&g, "E[a,b]^2 E[c,d]^-1 E[a,b]")?;
    println!("abelianization of E[a,b]^2 E[c,d]^-1 E[a,b]:");
    for ((u, v), e) in abelianization(&elt)? {
        if e != 0 {
            println!("  {{{u},{v}}}: {e}");
        }
    }
    Ok(())
}
