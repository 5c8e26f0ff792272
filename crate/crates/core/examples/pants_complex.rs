//! The full arc complex of the pair of pants and its automorphism group.

use arc_complex::complex::{automorphisms, full_complex};
use arc_complex::flip::DEFAULT_CAP;
use arc_complex::Surface;

fn main() -> arc_complex::Result<()> {
    let slice = full_complex(Surface::new(0, 3)?)?;
    println!("{} vertices, {} edges", slice.len(), slice.edges().len());
    for m in slice.maximal_simplices() {
        println!("  top simplex {:?}", m.vertices);
    }
    let group = automorphisms(&slice, DEFAULT_CAP)?;
    let orders: Vec<usize> = group.iter().map(|g| g.order()).collect();
    println!("{} automorphisms, element orders {orders:?}", group.len());
    print!("{}", slice.to_dot());
    Ok(())
}
