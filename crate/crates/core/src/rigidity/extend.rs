//! Ball-relative evidence that a map hits every vertex, by walking chains of
//! top simplices across shared faces of codimension one.

use std::collections::VecDeque;

use serde::Serialize;

use crate::complex::{ArcComplexSlice, Completeness};
use crate::error::{Error, Result};

use super::map::SimplicialSelfMap;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    /// Codomain vertices shown to be images, sorted.
    pub covered: Vec<usize>,
    /// Codomain vertices lying on a top simplex strictly inside the ball, sorted.
    pub interior: Vec<usize>,
    pub all_interior_covered: bool,
    /// Codomain top simplices reached by the walk.
    pub simplices: usize,
    /// Steps whose preimage simplex lies outside the domain.
    pub left_slice: usize,
    /// Steps where the preimage simplex exists but its new vertex maps elsewhere.
    pub mismatches: usize,
}

fn interior_vertices(slice: &ArcComplexSlice) -> Vec<usize> {
    let mut inside = vec![false; slice.len()];
    let bound = match slice.completeness() {
        Completeness::BallRadius(r) => r.checked_sub(1),
        _ => Some(usize::MAX),
    };
    for m in slice.maximal_simplices() {
        let within = match (bound, m.depth) {
            (None, _) => false,
            (Some(usize::MAX), _) => true,
            (Some(b), Some(d)) => d <= b,
            (Some(_), None) => false,
        };
        if within {
            for &v in &m.vertices {
                inside[v] = true;
            }
        }
    }
    (0..slice.len()).filter(|&v| inside[v]).collect()
}

/// Starting from the domain top simplex `start`, whose image must be a top
/// simplex of `codomain`, walks the codomain's top simplices. Crossing from
/// `{x} ∪ F` to `{w} ∪ F`, the preimage step is the unique domain top simplex
/// containing the preimage of `F` but not that of `x`; its new vertex must
/// map to `w`, which is then covered.
pub fn surjectivity_extend(map: &SimplicialSelfMap, codomain: &ArcComplexSlice, start: usize) -> Result<CoverageReport> {
    let domain = map.domain();
    map.surface().require_same(&codomain.surface())?;
    let tops = domain.maximal_simplices();
    let first = tops
        .get(start)
        .ok_or(Error::IndexOutOfRange { what: "maximal simplex", index: start, len: tops.len() })?;
    let image: Vec<usize> = first
        .vertices
        .iter()
        .map(|&v| codomain.index_of(&map.images()[v]).ok_or_else(|| Error::WitnessNotFound(format!("image of vertex {v}"))))
        .collect::<Result<_>>()?;
    let tau0 = codomain
        .maximal_of(&image)
        .ok_or_else(|| Error::WitnessNotFound("image of the start simplex is not a top simplex of the codomain".into()))?;

    let ctops = codomain.maximal_simplices();
    let mut covered = vec![false; codomain.len()];
    for &w in &image {
        covered[w] = true;
    }
    // codomain top simplex -> (domain top simplex, preimage of each codomain vertex in it)
    let mut pre: Vec<Option<usize>> = vec![None; ctops.len()];
    pre[tau0] = Some(start);
    let preimage = |sigma: usize, w: usize| {
        tops[sigma].vertices.iter().copied().find(|&v| codomain.index_of(&map.images()[v]) == Some(w))
    };
    let mut report = CoverageReport::default();
    let mut queue = VecDeque::from([tau0]);
    while let Some(tau) = queue.pop_front() {
        report.simplices += 1;
        let sigma = pre[tau].expect("queued simplices have preimages");
        for next in codomain.maximal_neighbours(tau) {
            if pre[next].is_some() {
                continue;
            }
            let x = *ctops[tau].vertices.iter().find(|v| !ctops[next].vertices.contains(v)).expect("one vertex leaves");
            let w = *ctops[next].vertices.iter().find(|v| !ctops[tau].vertices.contains(v)).expect("one vertex enters");
            let face: Vec<usize> = ctops[tau].vertices.iter().copied().filter(|&v| v != x).collect();
            let face_pre: Vec<usize> = face.iter().map(|&v| preimage(sigma, v).expect("image simplex")).collect();
            let x_pre = preimage(sigma, x).expect("image simplex");
            let found: Vec<usize> = domain
                .maximal_neighbours(sigma)
                .into_iter()
                .filter(|&s| face_pre.iter().all(|v| tops[s].vertices.contains(v)) && !tops[s].vertices.contains(&x_pre))
                .collect();
            let [s] = found[..] else {
                report.left_slice += 1;
                continue;
            };
            let u = *tops[s].vertices.iter().find(|v| !face_pre.contains(v)).expect("one new vertex");
            if codomain.index_of(&map.images()[u]) != Some(w) {
                report.mismatches += 1;
                continue;
            }
            covered[w] = true;
            pre[next] = Some(s);
            queue.push_back(next);
        }
    }
    report.covered = (0..codomain.len()).filter(|&v| covered[v]).collect();
    report.interior = interior_vertices(codomain);
    report.all_interior_covered = report.interior.iter().all(|&v| covered[v]);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::ArcClass;
    use crate::complex::ball_complex;
    use crate::flip::DEFAULT_CAP;
    use crate::iso::{isomorphisms, Orientation};
    use crate::rigidity::homeo::CombinatorialHomeo;
    use crate::rigidity::map::induced_map;
    use crate::surface::Surface;
    use crate::triangulation::Triangulation;
    use crate::FlipWord;

    #[test]
    fn identity_covers_the_ball() {
        let s = Surface::new(1, 1).unwrap();
        let slice = ball_complex(s, 2, DEFAULT_CAP).unwrap();
        let r = surjectivity_extend(&SimplicialSelfMap::identity(slice.clone()), &slice, 0).unwrap();
        assert_eq!(r.covered.len(), slice.len());
        assert!(r.all_interior_covered);
        assert_eq!(r.mismatches, 0);
    }

    #[test]
    fn symmetries_of_the_base_triangle_cover_the_interior() {
        let s = Surface::new(1, 1).unwrap();
        let slice = ball_complex(s, 2, DEFAULT_CAP).unwrap();
        let t = Triangulation::new_standard(s).unwrap();
        let mut maps = 0;
        for iso in isomorphisms(&t, &t, None, Some(Orientation::Preserving)).into_iter().chain(isomorphisms(&t, &t, None, Some(Orientation::Reversing))) {
            let h = CombinatorialHomeo::from_arc_map(s, FlipWord::new(), &iso.arc_map, Some(iso.orientation)).unwrap();
            let map = induced_map(&h, &slice).unwrap();
            let r = surjectivity_extend(&map, &slice, 0).unwrap();
            assert!(r.all_interior_covered);
            maps += 1;
        }
        assert_eq!(maps, 12);
    }

    #[test]
    fn one_triangle_covers_itself() {
        let s = Surface::new(1, 1).unwrap();
        let full = ball_complex(s, 1, DEFAULT_CAP).unwrap();
        let base: Vec<ArcClass> = (0..3).map(|k| ArcClass::standard_arc(s, k).unwrap()).collect();
        let small = ArcComplexSlice::from_vertices(s, base).unwrap();
        let map = SimplicialSelfMap::identity(small);
        let r = surjectivity_extend(&map, &full, 0).unwrap();
        assert_eq!(r.covered.len(), 3);
        assert_eq!(r.left_slice, 3);
    }
}
