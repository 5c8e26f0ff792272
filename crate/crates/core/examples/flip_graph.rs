//! Flip ball around the standard triangulation of the four-punctured sphere,
//! and a shortest flip word between two of its nodes.

use arc_complex::flip::{self, BallOptions, MarkedTriangulation, DEFAULT_CAP};
use arc_complex::Surface;

fn main() -> arc_complex::Result<()> {
    let s = Surface::new(0, 4)?;
    let center = MarkedTriangulation::standard(s)?;
    for r in 0..=3 {
        let ball = flip::ball(&center, BallOptions::radius(r))?;
        println!("radius {r}: {} triangulations, {} flips", ball.len(), ball.edges.len());
    }
    let ball = flip::ball(&center, BallOptions::radius(3))?;
    let (a, b) = (&ball.nodes[1].marked, &ball.nodes[ball.len() - 1].marked);
    let word = flip::path(a, b, DEFAULT_CAP)?;
    println!("path from [{}] to [{}]: [{word}]", a.word(), b.word());
    assert_eq!(a.apply(&word)?.key(), b.key());
    Ok(())
}
