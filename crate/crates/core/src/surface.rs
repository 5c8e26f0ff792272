//! Topological signatures of compact orientable bordered surfaces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A compact, connected, orientable surface of the given genus with
/// `boundary` boundary components.
///
/// Boundary circles are coned off to punctures, so triangulations of the
/// surface are ideal triangulations with one ideal vertex per boundary
/// component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub boundary: u32,
}

impl Surface {
    pub fn new(genus: u32, boundary: u32) -> Result<Self> {
        if boundary == 0 {
            return Err(Error::NoBoundary);
        }
        Ok(Surface { genus, boundary })
    }

    /// The disc and the annulus are the only bordered surfaces without triangulations.
    pub fn triangulable(&self) -> bool {
        self.boundary >= 1 && !(self.genus == 0 && self.boundary <= 2)
    }

    /// Number of arcs in any triangulation: `6g + 3b - 6`.
    ///
    /// Returns zero for the non-triangulable signatures.
    pub fn arc_count(&self) -> usize {
        if !self.triangulable() {
            return 0;
        }
        (6 * self.genus + 3 * self.boundary - 6) as usize
    }

    /// Number of triangles in any triangulation: `4g + 2b - 4`.
    pub fn triangle_count(&self) -> usize {
        if !self.triangulable() {
            return 0;
        }
        (4 * self.genus + 2 * self.boundary - 4) as usize
    }

    /// Euler characteristic of the closed surface obtained by capping every boundary circle.
    pub fn closed_euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    pub(crate) fn require_triangulable(&self) -> Result<()> {
        if self.triangulable() {
            Ok(())
        } else {
            Err(Error::NotTriangulable { genus: self.genus, boundary: self.boundary })
        }
    }

    pub(crate) fn require_same(&self, other: &Surface) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SurfaceMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.genus, self.boundary)
    }
}
