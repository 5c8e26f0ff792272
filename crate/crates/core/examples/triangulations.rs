//! Standard triangulations and their counts for small surfaces.

use arc_complex::{Surface, Triangulation};

fn main() -> arc_complex::Result<()> {
    for (g, b) in [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)] {
        let s = Surface::new(g, b)?;
        let t = Triangulation::new_standard(s)?;
        let report = t.validate();
        println!("({g},{b}): {} arcs, {} triangles, valid = {}", t.arc_count(), t.triangle_count(), report.is_empty());
        for (i, tri) in t.triangles().iter().enumerate() {
            println!("  triangle {i}: {:?} {:?}", tri.map(|s| s.arc), t.classify(i)?);
        }
    }
    // one puncture short of a triangle
    println!("(0,2) triangulable: {}", Surface::new(0, 2)?.triangulable());
    Ok(())
}
