//! Dehn twists of the torus and puncture permutations of the sphere as
//! homeomorphism files, ready for `arc-complex rigidity induce`.

use arc_complex::arc::farey;
use arc_complex::rigidity::CombinatorialHomeo;
use arc_complex::Surface;

fn main() -> arc_complex::Result<()> {
    let a = CombinatorialHomeo::torus_twist_a()?;
    let b = CombinatorialHomeo::torus_twist_b()?;
    // braid relation aba = bab
    let aba = a.compose(&b)?.compose(&a)?;
    let bab = b.compose(&a)?.compose(&b)?;
    for slope in [(1, 0), (0, 1), (2, 3)] {
        let c = farey::arc_from_slope(slope)?;
        let (x, y) = (aba.apply(&c)?, bab.apply(&c)?);
        assert_eq!(x, y);
        println!("{slope:?} -> {:?}", farey::slope_from_coords(&x)?);
    }
    println!("{}", serde_json::to_string_pretty(&a.to_json()).expect("json"));

    let swap = CombinatorialHomeo::from_puncture_permutation(Surface::new(0, 4)?, &[1, 0, 2, 3])?;
    println!("{}", serde_json::to_string_pretty(&swap.to_json()).expect("json"));
    Ok(())
}
