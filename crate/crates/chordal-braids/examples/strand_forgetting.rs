//! Strand forgetting is a contravariant functor: deleting strands in two
//! steps agrees with deleting them at once, and including a word into a
//! larger index set splits the forgetting map.
//!
//! ```bash
//! cargo run --example strand_forgetting
//! ```

use chordal_braids::{BraidWord, IndexSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let index = IndexSet::strands(4);
    let j = index.subset(["1", "2", "4"])?;
    let k = index.subset(["1", "4"])?;

    let w = BraidWord::parse(&index, "A[1,4] A[2,3]^-1 A[2,4] A[1,2] A[3,4]")?;
    println!("w                = {w}");
    println!("forget to J      = {}", w.forget(&j)?);
    println!("forget to K      = {}", w.forget(&k)?);

    // functoriality: through J equals direct
    let through_j = w.forget(&j)?.forget(&k)?;
    let direct = w.forget(&k)?;
    println!("functorial?      = {}", through_j.equal(&direct)?);

    // inclusion splits forgetting on the nose
    let small = BraidWord::parse(&j, "A[1,2] A[2,4]^-1")?;
    let round_trip = small.include(&index)?.forget(&j)?;
    println!("section split?   = {}", round_trip == small);

    // forgetting to a single strand lands in the trivial group
    let singleton = index.subset(["2"])?;
    println!("forget to {{2}}    = {}", w.forget(&singleton)?);
    Ok(())
}
