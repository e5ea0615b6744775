//! Chordality recognition and perfect elimination orderings.
//!
//! ```bash
//! cargo run --example chordality
//! ```

use chordal_braids::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a path, a cycle, and a diamond (K4 minus one edge)
    let path = Graph::from_edges(["a", "b", "c"], [("a", "b"), ("b", "c")])?;
    let cycle = Graph::from_edges(
        ["a", "b", "c", "d"],
        [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
    )?;
    let diamond = Graph::from_edges(
        ["a", "b", "c", "d"],
        [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
    )?;

    for (name, g) in [("path", &path), ("4-cycle", &cycle), ("diamond", &diamond)] {
        println!("{name}: chordal = {}", g.is_chordal());
        // the brute-force oracle inspects every induced cycle
        assert_eq!(g.is_chordal(), g.is_chordal_by_cycle_inspection());
    }

    // a PEO eliminates a simplicial vertex at every step
    let peo = diamond.find_peo()?;
    println!("diamond PEO: {peo}");
    assert!(diamond.is_valid_peo(peo.order()));

    // any simplex can be pushed to the end of a PEO
    let s = diamond.simplex(["b", "c"])?;
    let suffixed = diamond.peo_with_suffix(&s)?;
    println!("diamond PEO ending in {s}: {suffixed}");

    // every vertex of the path is simplicial except the middle one
    for v in path.vertices() {
        println!("path: {v} simplicial = {}", path.is_simplicial(v)?);
    }
    Ok(())
}
