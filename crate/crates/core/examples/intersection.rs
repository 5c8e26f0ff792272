//! Intersection numbers and flattening for arcs given by coordinates.

use arc_complex::arc::{self, ArcClass};
use arc_complex::flip::{FlipWord, MarkedTriangulation};
use arc_complex::Surface;

fn main() -> arc_complex::Result<()> {
    let s = Surface::new(1, 2)?;
    let m = MarkedTriangulation::from_word(s, &FlipWord::parse("0,3,1,5,2")?)?;
    let classes: Vec<ArcClass> = m.classes().to_vec();
    let far = m.flip(m.flippable_slots()[0])?;
    let other = far.class(m.flippable_slots()[0]).clone();
    println!("flipped arc {other}");
    for c in &classes {
        println!("  i({c}, flipped) = {}", arc::intersection(c, &other)?);
    }
    let f = arc::flatten(&other)?;
    println!("flattened by [{}], lands on slot {}", f.word, f.slot);
    Ok(())
}
