//! Local properties every map induced by a homeomorphism has.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use crate::arc::{self, ArcClass};
use crate::complex::ArcComplexSlice;
use crate::error::{Error, Result};
use crate::flip::{FlipWord, MarkedTriangulation};
use crate::triangulation::TriangleClass;

use super::map::SimplicialSelfMap;
use super::{Certificate, CertificateKind};

/// A triangle of some triangulation, by the classes of its sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TriangleSpec {
    Embedded([ArcClass; 3]),
    /// `folded` appears twice; `loop_arc` encloses it.
    NonEmbedded { folded: ArcClass, loop_arc: ArcClass },
}

impl TriangleSpec {
    pub fn classes(&self) -> Vec<ArcClass> {
        match self {
            TriangleSpec::Embedded(cs) => cs.to_vec(),
            TriangleSpec::NonEmbedded { folded, loop_arc } => vec![folded.clone(), loop_arc.clone()],
        }
    }
}

/// The triangles of a triangulation, in triangle order.
pub fn triangles_of(m: &MarkedTriangulation) -> Vec<TriangleSpec> {
    let t = m.triangulation();
    (0..t.triangle_count())
        .map(|i| match t.classify(i).expect("triangle index in range") {
            TriangleClass::Embedded => {
                let s = t.triangles()[i];
                TriangleSpec::Embedded([m.class(s[0].arc).clone(), m.class(s[1].arc).clone(), m.class(s[2].arc).clone()])
            }
            TriangleClass::SelfFolded { folded, loop_arc } => {
                TriangleSpec::NonEmbedded { folded: m.class(folded).clone(), loop_arc: m.class(loop_arc).clone() }
            }
        })
        .collect()
}

/// Whether the classes bound a triangle of the given kind. Any triangulation
/// containing the classes contains such a triangle if one exists.
pub fn spans_triangle(spec: &TriangleSpec) -> Result<bool> {
    let classes = spec.classes();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if a == b || !arc::disjoint(a, b)? {
                return Ok(false);
            }
        }
    }
    let m = arc::realize(&classes)?;
    let t = m.triangulation();
    let slot = |c: &ArcClass| m.slot_of(c).expect("realised");
    Ok(match spec {
        TriangleSpec::Embedded(cs) => {
            let arcs = [slot(&cs[0]), slot(&cs[1]), slot(&cs[2])];
            t.find_triangle(arcs).is_some_and(|i| t.classify(i).map(|c| c.is_embedded()).unwrap_or(false))
        }
        TriangleSpec::NonEmbedded { folded, loop_arc } => {
            let (f, l) = (slot(folded), slot(loop_arc));
            t.find_triangle([f, f, l])
                .is_some_and(|i| t.classify(i) == Ok(TriangleClass::SelfFolded { folded: f, loop_arc: l }))
        }
    })
}

/// Checks that the image of a triangle is a triangle of the same kind.
/// Returns a certificate on failure.
pub fn check_triangle_class_preserved(map: &SimplicialSelfMap, spec: &TriangleSpec) -> Result<Option<Certificate>> {
    let vertices = spec.classes();
    let images = vertices
        .iter()
        .map(|c| map.image_of(c).cloned().ok_or_else(|| Error::WitnessNotFound(format!("{c} is not in the domain"))))
        .collect::<Result<Vec<_>>>()?;
    let image_spec = match spec {
        TriangleSpec::Embedded(_) => TriangleSpec::Embedded([images[0].clone(), images[1].clone(), images[2].clone()]),
        TriangleSpec::NonEmbedded { .. } => TriangleSpec::NonEmbedded { folded: images[0].clone(), loop_arc: images[1].clone() },
    };
    if spans_triangle(&image_spec)? {
        return Ok(None);
    }
    let property = match spec {
        TriangleSpec::Embedded(_) => "embedded-triangle-preservation",
        TriangleSpec::NonEmbedded { .. } => "non-embedded-triangle-preservation",
    };
    Ok(Some(
        Certificate::new(CertificateKind::ClassMismatch, "image of a triangle is not a triangle of the same kind")
            .with_property(property)
            .with_classes(vertices, images),
    ))
}

/// Outcome of [`check_intersection_one`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionOneReport {
    pub checked: usize,
    /// Pairs `(a, b)` with `i(λa, λb) != 1`, and that number.
    pub failures: Vec<(usize, usize, u64)>,
}

impl IntersectionOneReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn certificate(&self, map: &SimplicialSelfMap) -> Option<Certificate> {
        let &(a, b, n) = self.failures.first()?;
        let d = map.domain();
        Some(
            Certificate::new(CertificateKind::IntersectionOne, format!("images of vertices {a} and {b} meet {n} times"))
                .with_classes(vec![d.vertex(a).clone(), d.vertex(b).clone()], vec![map.images()[a].clone(), map.images()[b].clone()])
                .with_vertex(a),
        )
    }
}

/// For pairs of domain vertices meeting once, reports pairs whose images do not.
pub fn check_intersection_one(map: &SimplicialSelfMap, pairs: &[(usize, usize)]) -> Result<IntersectionOneReport> {
    let d = map.domain();
    let results = pairs
        .par_iter()
        .map(|&(a, b)| {
            for v in [a, b] {
                if v >= d.len() {
                    return Err(Error::VertexOutsideDomain(v));
                }
            }
            let n = arc::intersection(d.vertex(a), d.vertex(b))?.0;
            if n != 1 {
                return Err(Error::Precondition(format!("vertices {a} and {b} meet {n} times, not once")));
            }
            let m = arc::intersection(&map.images()[a], &map.images()[b])?.0;
            Ok((a, b, m))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntersectionOneReport {
        checked: pairs.len(),
        failures: results.into_iter().filter(|&(_, _, m)| m != 1).collect(),
    })
}

/// Pairs of diagonals exchanged by a flip between two top simplices of the slice.
pub fn elementary_move_pairs(slice: &ArcComplexSlice) -> Vec<(usize, usize)> {
    let mut out = HashSet::new();
    let tops = slice.maximal_simplices();
    for (i, m) in tops.iter().enumerate() {
        for j in slice.maximal_neighbours(i) {
            let other = &tops[j].vertices;
            let a = m.vertices.iter().find(|v| !other.contains(v));
            let b = other.iter().find(|v| !m.vertices.contains(v));
            if let (Some(&a), Some(&b)) = (a, b) {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut out: Vec<_> = out.into_iter().collect();
    out.sort_unstable();
    out
}

// triangles across the three sides of an embedded triangle, if distinct
fn neighbours_distinct(m: &MarkedTriangulation, slots: [usize; 3]) -> bool {
    let t = m.triangulation();
    let Some(delta) = t.find_triangle(slots) else { return false };
    let mut seen = vec![delta];
    for s in slots {
        let (x, y) = t.adjacent_triangles(s).expect("slot in range");
        let across = if x == delta { y } else { x };
        if seen.contains(&across) {
            return false;
        }
        seen.push(across);
    }
    true
}

/// Flips at most two arcs other than the sides of the embedded triangle
/// `delta` so that the triangles across its three sides become distinct.
pub fn four_distinct_neighbors(m: &MarkedTriangulation, delta: &[ArcClass; 3]) -> Result<(FlipWord, MarkedTriangulation)> {
    let s = m.surface();
    if s.genus == 0 && s.boundary == 3 {
        return Err(Error::Unsupported("a pair of pants has only two triangles".into()));
    }
    let slot = |c: &ArcClass| m.slot_of(c).ok_or(Error::NotRealizable);
    let slots = [slot(&delta[0])?, slot(&delta[1])?, slot(&delta[2])?];
    let t = m.triangulation();
    match t.find_triangle(slots) {
        Some(i) if t.classify(i)?.is_embedded() => {}
        _ => return Err(Error::Precondition("the classes do not bound an embedded triangle".into())),
    }
    const MAX_LEN: usize = 2;
    let mut queue = VecDeque::from([(FlipWord::new(), m.clone())]);
    while let Some((w, cur)) = queue.pop_front() {
        if neighbours_distinct(&cur, slots) {
            return Ok((w, cur));
        }
        if w.len() == MAX_LEN {
            continue;
        }
        for e in cur.flippable_slots() {
            if slots.contains(&e) {
                continue;
            }
            let mut w2 = w.clone();
            w2.0.push(e);
            queue.push_back((w2, cur.flip(e)?));
        }
    }
    Err(Error::NeighbourSearchExhausted { max_len: MAX_LEN })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ball_complex;
    use crate::flip::DEFAULT_CAP;
    use crate::rigidity::homeo::CombinatorialHomeo;
    use crate::rigidity::map::induced_map;
    use crate::surface::Surface;

    #[test]
    fn identity_preserves_everything() {
        let s = Surface::new(1, 1).unwrap();
        let slice = ball_complex(s, 1, DEFAULT_CAP).unwrap();
        let id = SimplicialSelfMap::identity(slice.clone());
        let pairs = elementary_move_pairs(&slice);
        assert!(!pairs.is_empty());
        assert!(check_intersection_one(&id, &pairs).unwrap().is_empty());
        let base = slice.maximal_simplices()[0].witness.clone().unwrap();
        for t in triangles_of(&base) {
            assert_eq!(check_triangle_class_preserved(&id, &t).unwrap(), None);
        }
    }

    #[test]
    fn corrupted_map_is_reported() {
        let s = Surface::new(0, 4).unwrap();
        let slice = ball_complex(s, 1, DEFAULT_CAP).unwrap();
        let mut m = SimplicialSelfMap::identity(slice.clone());
        let (a, b) = elementary_move_pairs(&slice)[0];
        // send a onto b: now the pair has equal images
        m.set_image(a, slice.vertex(b).clone()).unwrap();
        let r = check_intersection_one(&m, &[(a, b)]).unwrap();
        assert_eq!(r.failures, vec![(a, b, 0)]);
        assert!(r.certificate(&m).is_some());
        assert!(matches!(check_intersection_one(&m, &[(a, a)]), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_embedded_triangles_preserved_by_homeos() {
        let s = Surface::new(0, 4).unwrap();
        let slice = ball_complex(s, 2, DEFAULT_CAP).unwrap();
        let h = CombinatorialHomeo::from_puncture_permutation(s, &[1, 0, 2, 3])
            .or_else(|_| CombinatorialHomeo::identity(s))
            .unwrap();
        let map = induced_map(&h, &slice).unwrap();
        let mut folded = 0;
        for top in slice.maximal_simplices() {
            for t in triangles_of(top.witness.as_ref().unwrap()) {
                if matches!(t, TriangleSpec::NonEmbedded { .. }) {
                    folded += 1;
                }
                assert_eq!(check_triangle_class_preserved(&map, &t).unwrap(), None);
            }
        }
        assert!(folded > 0);
    }

    #[test]
    fn four_neighbours_found() {
        for (g, b) in [(0, 4), (1, 2), (0, 5), (2, 1)] {
            let m = MarkedTriangulation::standard(Surface::new(g, b).unwrap()).unwrap();
            let t = m.triangulation();
            for i in 0..t.triangle_count() {
                if !t.classify(i).unwrap().is_embedded() {
                    continue;
                }
                let s = t.triangles()[i];
                let delta = [m.class(s[0].arc).clone(), m.class(s[1].arc).clone(), m.class(s[2].arc).clone()];
                let (w, after) = four_distinct_neighbors(&m, &delta).unwrap();
                assert!(w.len() <= 2);
                for c in &delta {
                    assert!(after.slot_of(c).is_some());
                }
            }
        }
    }
}
