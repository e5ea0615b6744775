//! The Artin action: braid words act on a free group with one generator
//! per strand, faithfully. Equality of braid words reduces to comparing
//! images.
//!
//! ```bash
//! cargo run --example artin_action
//! ```

use chordal_braids::{BraidWord, IndexSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let index = IndexSet::strands(3);

    let a12 = BraidWord::parse(&index, "A[1,2]")?;
    let auto = a12.artin_auto();
    println!("A[1,2] acts by:");
    for label in index.labels() {
        println!("  x[{label}] ↦ {}", auto.image(label).unwrap());
    }

    // generators at overlapping pairs do not commute
    let u = BraidWord::parse(&index, "A[1,3] A[2,3]")?;
    let v = BraidWord::parse(&index, "A[2,3] A[1,3]")?;
    println!("A[1,3]A[2,3] = A[2,3]A[1,3]?  {}", u.equal(&v)?);

    // the full twist generates the center of P(3)
    let center = BraidWord::parse(&index, "A[1,2] A[1,3] A[2,3]")?;
    let w = BraidWord::parse(&index, "A[1,3]^-1 A[2,3] A[1,2]")?;
    let lhs = center.mul(&w)?;
    let rhs = w.mul(&center)?;
    println!("full twist central?      {}", lhs.equal(&rhs)?);

    // words cancel against their inverses
    let cancel = w.mul(&w.inverse())?;
    println!(
        "w·w⁻¹ trivial?           {}",
        cancel.equal(&BraidWord::identity(&index))?
    );
    Ok(())
}
