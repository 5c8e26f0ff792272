//! Ideal triangulations, flip graphs and arc complexes of bordered surfaces,
//! with checks that simplicial self-maps of arc complexes come from surface
//! homeomorphisms.

pub mod arc;
pub mod cli;
pub mod complex;
pub mod error;
pub mod flip;
pub mod iso;
pub mod rigidity;
pub mod surface;
pub mod triangulation;

pub use arc::{intersection, ArcClass, IntersectionNumber};
pub use error::{Error, Result};
pub use flip::{FlipWord, MarkedTriangulation};
pub use surface::Surface;
pub use triangulation::Triangulation;
