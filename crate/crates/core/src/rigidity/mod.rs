//! Simplicial self-maps of arc complexes and the checks that decide whether
//! such a map comes from a homeomorphism of the surface.
//!
//! Negative outcomes are returned as [`Certificate`]s inside
//! [`Error::Refuted`](crate::Error::Refuted), so they can be re-checked.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::arc::ArcClass;

pub mod checks;
pub mod configuration;
pub mod extend;
pub mod homeo;
pub mod map;
pub mod reconstruct;

pub use checks::{check_intersection_one, check_triangle_class_preserved, four_distinct_neighbors, TriangleSpec};
pub use configuration::{detect_configuration, Configuration};
pub use extend::{surjectivity_extend, CoverageReport};
pub use homeo::CombinatorialHomeo;
pub use map::{induced_map, SimplicialSelfMap};
pub use reconstruct::{reconstruct, verify_geometric, OrientationConstraintSystem, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    NotSimplicial,
    NotInjective,
    IntersectionOne,
    ClassMismatch,
    OrientationUnsatisfiable,
    Disagreement,
}

impl CertificateKind {
    /// The property the map was found to violate.
    pub fn property(self) -> &'static str {
        match self {
            CertificateKind::NotSimplicial => "simpliciality",
            CertificateKind::NotInjective => "injectivity",
            CertificateKind::IntersectionOne => "intersection-one-preservation",
            CertificateKind::ClassMismatch => "triangle-class-preservation",
            CertificateKind::OrientationUnsatisfiable => "orientation-compatibility",
            CertificateKind::Disagreement => "geometricity",
        }
    }
}

/// Evidence that a map is not induced by a homeomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// A finer property name, e.g. `embedded-triangle-preservation`.
    pub property: String,
    /// Domain classes involved.
    pub vertices: Vec<ArcClass>,
    /// Their images under the map.
    pub images: Vec<ArcClass>,
    /// Offending domain vertex index, when there is one.
    pub vertex: Option<usize>,
    pub message: String,
}

impl Certificate {
    pub fn new(kind: CertificateKind, message: impl Into<String>) -> Self {
        Certificate {
            kind,
            property: kind.property().to_string(),
            vertices: Vec::new(),
            images: Vec::new(),
            vertex: None,
            message: message.into(),
        }
    }

    pub fn with_property(mut self, property: &str) -> Self {
        self.property = property.to_string();
        self
    }

    pub fn with_classes(mut self, vertices: Vec<ArcClass>, images: Vec<ArcClass>) -> Self {
        self.vertices = vertices;
        self.images = images;
        self
    }

    pub fn with_vertex(mut self, v: usize) -> Self {
        self.vertex = Some(v);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "certificate": self.kind,
            "property": self.property,
            "vertices": self.vertices.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
            "images": self.images.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
            "vertex": self.vertex,
            "message": self.message,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated: {}", self.property, self.message)
    }
}
