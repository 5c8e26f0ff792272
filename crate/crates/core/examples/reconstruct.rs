//! Recovers a homeomorphism from the map it induces on a ball of the arc
//! complex, then checks the result everywhere on the ball.

use arc_complex::complex::ball_complex;
use arc_complex::flip::DEFAULT_CAP;
use arc_complex::rigidity::{self, CombinatorialHomeo};
use arc_complex::Surface;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> arc_complex::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (g, b) in [(0, 4), (1, 1), (1, 2)] {
        let s = Surface::new(g, b)?;
        let slice = ball_complex(s, 2, DEFAULT_CAP)?;
        let h = CombinatorialHomeo::random(s, 10, &mut rng)?;
        let map = rigidity::induced_map(&h, &slice)?;
        let r = rigidity::reconstruct(&map, 0)?;
        let report = rigidity::verify_geometric(&map, &r, 0)?;
        println!("({g},{b}) word [{}] -> [{}], {} vertices agree", h.word(), r.word(), report.vertices);
    }

    // a broken map is refuted with a certificate
    let s = Surface::new(1, 1)?;
    let slice = ball_complex(s, 2, DEFAULT_CAP)?;
    let mut map = rigidity::induced_map(&CombinatorialHomeo::torus_twist_a()?, &slice)?;
    let moved = map.images()[0].clone();
    map.set_image(0, map.images()[slice.len() - 1].clone())?;
    map.set_image(slice.len() - 1, moved)?;
    match rigidity::reconstruct(&map, 0) {
        Err(arc_complex::Error::Refuted(c)) => println!("refuted: {c}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
