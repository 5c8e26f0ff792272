//! Vertex maps defined on a slice of the arc complex.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arc::ArcClass;
use crate::complex::{self, ArcComplexSlice};
use crate::error::{Error, Result};
use crate::surface::Surface;

use super::homeo::CombinatorialHomeo;

/// A vertex map from a slice into the arc complex.
#[derive(Clone, Debug)]
pub struct SimplicialSelfMap {
    domain: ArcComplexSlice,
    images: Vec<ArcClass>,
    simplicial: Option<bool>,
    injective: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct MapFile {
    surface: Surface,
    vertices: Vec<ArcClass>,
    images: Vec<ArcClass>,
}

impl SimplicialSelfMap {
    /// An unverified map; see [`verify`](Self::verify).
    pub fn new(domain: ArcComplexSlice, images: Vec<ArcClass>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::UndefinedVertex(images.len().min(domain.len())));
        }
        for c in &images {
            domain.surface().require_same(&c.base())?;
        }
        Ok(SimplicialSelfMap { domain, images, simplicial: None, injective: None })
    }

    pub fn identity(domain: ArcComplexSlice) -> Self {
        let images = domain.vertices().to_vec();
        SimplicialSelfMap { domain, images, simplicial: Some(true), injective: Some(true) }
    }

    /// Computes and caches the simplicial and injective flags.
    pub fn verify(&mut self) -> Result<(bool, bool)> {
        let opts: Vec<Option<ArcClass>> = self.images.iter().cloned().map(Some).collect();
        let s = complex::is_simplicial(&self.domain, &opts)?;
        let i = complex::is_injective(&self.domain, &opts)?;
        self.simplicial = Some(s);
        self.injective = Some(i);
        Ok((s, i))
    }

    pub fn verified(mut self) -> Result<Self> {
        self.verify()?;
        Ok(self)
    }

    pub fn domain(&self) -> &ArcComplexSlice {
        &self.domain
    }

    pub fn surface(&self) -> Surface {
        self.domain.surface()
    }

    pub fn images(&self) -> &[ArcClass] {
        &self.images
    }

    pub fn image(&self, v: usize) -> Result<&ArcClass> {
        self.images.get(v).ok_or(Error::VertexOutsideDomain(v))
    }

    /// Image of a class lying in the domain.
    pub fn image_of(&self, c: &ArcClass) -> Option<&ArcClass> {
        self.domain.index_of(c).map(|v| &self.images[v])
    }

    pub fn is_simplicial(&self) -> Option<bool> {
        self.simplicial
    }

    pub fn is_injective(&self) -> Option<bool> {
        self.injective
    }

    /// Replaces one image; cached flags are cleared.
    pub fn set_image(&mut self, v: usize, c: ArcClass) -> Result<()> {
        if v >= self.images.len() {
            return Err(Error::VertexOutsideDomain(v));
        }
        self.images[v] = c;
        self.simplicial = None;
        self.injective = None;
        Ok(())
    }

    /// `self ∘ other` on the vertices of `other`'s domain whose image lies in
    /// `self`'s domain.
    pub fn compose(&self, other: &SimplicialSelfMap) -> Result<SimplicialSelfMap> {
        let images = other
            .images
            .iter()
            .enumerate()
            .map(|(v, c)| self.image_of(c).cloned().ok_or(Error::VertexOutsideDomain(v)))
            .collect::<Result<Vec<_>>>()?;
        SimplicialSelfMap::new(other.domain.clone(), images)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "surface": self.surface(),
            "vertices": self.domain.vertices(),
            "images": self.images,
        })
    }

    /// Reads a map file; the domain is the full subcomplex on its vertices.
    pub fn from_json(text: &str) -> Result<Self> {
        let f: MapFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let vertices = f
            .vertices
            .into_iter()
            .map(|c| ArcClass::new(c.base(), c.coords().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let images = f
            .images
            .into_iter()
            .map(|c| ArcClass::new(c.base(), c.coords().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        if vertices.len() != images.len() {
            return Err(Error::Parse(format!("{} vertices but {} images", vertices.len(), images.len())));
        }
        let domain = ArcComplexSlice::from_vertices(f.surface, vertices.clone())?;
        // the slice may reorder or merge vertices
        let mut ordered = vec![None; domain.len()];
        for (c, img) in vertices.iter().zip(images) {
            let v = domain.index_of(c).expect("vertex kept");
            if let Some(prev) = &ordered[v] {
                if prev != &img {
                    return Err(Error::Parse(format!("vertex {c} listed twice with different images")));
                }
            }
            ordered[v] = Some(img);
        }
        let images = ordered.into_iter().map(|c| c.expect("every vertex mapped")).collect();
        SimplicialSelfMap::new(domain, images)
    }
}

/// The vertex map of `h` on `slice`, with both flags computed.
pub fn induced_map(h: &CombinatorialHomeo, slice: &ArcComplexSlice) -> Result<SimplicialSelfMap> {
    h.surface().require_same(&slice.surface())?;
    let images = slice.vertices().par_iter().map(|c| h.apply(c)).collect::<Result<Vec<_>>>()?;
    SimplicialSelfMap::new(slice.clone(), images)?.verified()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{ball_complex, full_complex};
    use crate::flip::DEFAULT_CAP;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_homeo_induces_identity() {
        let s = Surface::new(1, 1).unwrap();
        let slice = ball_complex(s, 2, DEFAULT_CAP).unwrap();
        let m = induced_map(&CombinatorialHomeo::identity(s).unwrap(), &slice).unwrap();
        assert_eq!(m.images(), slice.vertices());
        assert_eq!((m.is_simplicial(), m.is_injective()), (Some(true), Some(true)));
    }

    #[test]
    fn pants_rotation_permutes_the_complex() {
        let s = Surface::new(0, 3).unwrap();
        let slice = full_complex(s).unwrap();
        let h = CombinatorialHomeo::from_puncture_permutation(s, &[1, 2, 0]).unwrap();
        let m = induced_map(&h, &slice).unwrap();
        assert_eq!(m.is_injective(), Some(true));
        for c in m.images() {
            assert!(slice.index_of(c).is_some());
        }
        let moved = (0..slice.len()).filter(|&v| m.images()[v] != slice.vertices()[v]).count();
        assert_eq!(moved, 6);
    }

    #[test]
    fn random_maps_are_simplicial_injective() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = Surface::new(1, 2).unwrap();
        let slice = ball_complex(s, 2, DEFAULT_CAP).unwrap();
        let h = CombinatorialHomeo::random(s, 6, &mut rng).unwrap();
        let m = induced_map(&h, &slice).unwrap();
        assert_eq!((m.is_simplicial(), m.is_injective()), (Some(true), Some(true)));
    }

    #[test]
    fn functoriality() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let s = Surface::new(0, 4).unwrap();
        let slice = ball_complex(s, 1, DEFAULT_CAP).unwrap();
        let g = CombinatorialHomeo::random(s, 6, &mut rng).unwrap();
        let h = CombinatorialHomeo::random(s, 6, &mut rng).unwrap();
        let hg = induced_map(&h.compose(&g).unwrap(), &slice).unwrap();
        for (v, c) in slice.vertices().iter().enumerate() {
            assert_eq!(&hg.images()[v], &h.apply(&g.apply(c).unwrap()).unwrap());
        }
    }

    #[test]
    fn map_file_round_trip() {
        let s = Surface::new(0, 3).unwrap();
        let m = SimplicialSelfMap::identity(full_complex(s).unwrap());
        let back = SimplicialSelfMap::from_json(&m.to_json().to_string()).unwrap();
        assert_eq!(back.images(), m.images());
    }
}
