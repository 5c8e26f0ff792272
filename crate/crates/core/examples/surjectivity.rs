//! Coverage of a ball by the image of an induced map, walked one top simplex
//! at a time.

use arc_complex::complex::{ball_complex, ball_complex_around};
use arc_complex::flip::{BallOptions, MarkedTriangulation, DEFAULT_CAP};
use arc_complex::rigidity::{self, CombinatorialHomeo};
use arc_complex::arc::farey;

fn main() -> arc_complex::Result<()> {
    let s = farey::torus();
    let codomain = ball_complex(s, 3, DEFAULT_CAP)?;
    let h = CombinatorialHomeo::from_matrix([[2, 1], [1, 1]])?;
    let center = MarkedTriangulation::from_word(s, h.word())?;
    let domain = ball_complex_around(&center, BallOptions::radius(3))?;
    let map = rigidity::induced_map(&h, &domain)?;
    let r = rigidity::surjectivity_extend(&map, &codomain, 0)?;
    println!(
        "{} of {} vertices covered, interior {} (all covered: {}), {} simplices walked",
        r.covered.len(),
        codomain.len(),
        r.interior.len(),
        r.all_interior_covered,
        r.simplices
    );
    Ok(())
}
