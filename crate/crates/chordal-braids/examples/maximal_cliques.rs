//! Maximal simplices of a chordal graph and their intersection diagram.
//!
//! ```bash
//! cargo run --example maximal_cliques
//! ```

use chordal_braids::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // two triangles glued along an edge, with a pendant vertex
    let g = Graph::from_edges(
        ["x", "y", "z", "w", "p"],
        [
            ("x", "y"),
            ("y", "z"),
            ("x", "z"),
            ("y", "w"),
            ("z", "w"),
            ("w", "p"),
        ],
    )?;

    println!("maximal simplices:");
    for c in g.maximal_simplices()? {
        println!("  {c}");
    }

    // the S⁰ construction at a simplicial vertex: the unique maximal
    // simplex containing it, and the members with no outside neighbors
    let (s, s0) = g.s_zero("x")?;
    println!("at x: S = {s}, S0 = {{{}}}", s0.join(", "));

    println!("\nintersection diagram (DOT):");
    print!("{}", g.maximal_simplex_diagram_dot()?);
    Ok(())
}
