//! Arcs on the once-punctured torus as slopes: flip words, coordinates and the
//! Farey adjacency rule.

use arc_complex::arc::{self, farey};

fn main() -> arc_complex::Result<()> {
    for slope in [(0, 1), (1, 0), (1, 1), (2, 3), (-3, 5), (7, 4)] {
        let a = farey::arc_from_slope(slope)?;
        let word = farey::word_to_slope(slope)?;
        println!("{:>3}/{:<2} coords {a}  word [{word}]", slope.0, slope.1);
        assert_eq!(farey::slope_from_coords(&a)?, farey::normalize(slope));
    }
    let pairs = [((1, 2), (1, 3)), ((1, 2), (3, 1)), ((2, 5), (-1, 3))];
    for (p, q) in pairs {
        let i = arc::intersection(&farey::arc_from_slope(p)?, &farey::arc_from_slope(q)?)?;
        println!("det = {:>2}, i = {i}", farey::determinant(p, q));
    }
    Ok(())
}
