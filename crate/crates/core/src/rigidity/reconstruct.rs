//! Recovering a homeomorphism from the image of one top simplex, and
//! checking it against the rest of the map.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::arc::{self, ArcClass};
use crate::error::{Error, Result};
use crate::flip::{FlipWord, MarkedTriangulation};
use crate::iso::Orientation;
use crate::triangulation::{TriangleClass, Triangulation};

use super::homeo::CombinatorialHomeo;
use super::map::SimplicialSelfMap;
use super::{Certificate, CertificateKind};

/// Parity constraints between per-triangle orientation bits, solved by
/// union-find. Node `n` is the constant 0.
#[derive(Clone, Debug)]
pub struct OrientationConstraintSystem {
    parent: Vec<usize>,
    // parity of a node relative to its parent
    parity: Vec<u8>,
    conflict: Option<(usize, usize)>,
}

impl OrientationConstraintSystem {
    pub fn new(triangles: usize) -> Self {
        OrientationConstraintSystem { parent: (0..=triangles).collect(), parity: vec![0; triangles + 1], conflict: None }
    }

    fn constant(&self) -> usize {
        self.parent.len() - 1
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, up) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= up;
        (root, self.parity[x])
    }

    /// Requires `o[a] ^ o[b] == parity`; returns false on a contradiction.
    pub fn relate(&mut self, a: usize, b: usize, parity: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != parity & 1 {
                self.conflict.get_or_insert((a, b));
                return false;
            }
            return true;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ (parity & 1);
        true
    }

    /// Fixes the orientation bit of triangle `t`.
    pub fn pin(&mut self, t: usize, bit: u8) -> bool {
        let c = self.constant();
        self.relate(t, c, bit)
    }

    /// The first contradictory pair of nodes; `n` stands for the constant.
    pub fn conflict(&self) -> Option<(usize, usize)> {
        self.conflict
    }

    /// One bit per triangle; unconstrained components take 0.
    pub fn solve(&mut self) -> Option<Vec<u8>> {
        if self.conflict.is_some() {
            return None;
        }
        let c = self.constant();
        let (rc, pc) = self.find(c);
        Some(
            (0..c)
                .map(|t| {
                    let (r, p) = self.find(t);
                    if r == rc {
                        p ^ pc
                    } else {
                        p
                    }
                })
                .collect(),
        )
    }
}

fn refuted(c: Certificate) -> Error {
    Error::Refuted(c)
}

fn sides(t: &Triangulation, i: usize) -> [usize; 3] {
    let s = t.triangles()[i];
    [s[0].arc, s[1].arc, s[2].arc]
}

fn is_rotation(a: [usize; 3], b: [usize; 3]) -> bool {
    (0..3).any(|r| (0..3).all(|k| a[k] == b[(r + k) % 3]))
}

// candidate image triangles for each triangle of `t`, by side classes
fn candidates(t: &Triangulation, image: &Triangulation, pi: &[usize]) -> std::result::Result<Vec<Vec<usize>>, usize> {
    (0..t.triangle_count())
        .map(|i| {
            let want = t.classify(i).expect("triangle in range");
            let mut key = sides(t, i).map(|a| pi[a]);
            key.sort_unstable();
            let found: Vec<usize> = (0..image.triangle_count())
                .filter(|&k| {
                    let mut other = sides(image, k);
                    other.sort_unstable();
                    other == key
                        && match (want, image.classify(k).expect("triangle in range")) {
                            (TriangleClass::Embedded, TriangleClass::Embedded) => true,
                            (TriangleClass::SelfFolded { folded, loop_arc }, TriangleClass::SelfFolded { folded: f2, loop_arc: l2 }) => {
                                pi[folded] == f2 && pi[loop_arc] == l2
                            }
                            _ => false,
                        }
                })
                .collect();
            if found.is_empty() {
                Err(i)
            } else {
                Ok(found)
            }
        })
        .collect()
}

fn system_for(t: &Triangulation, image: &Triangulation, pi: &[usize], beta: &[usize]) -> OrientationConstraintSystem {
    let mut sys = OrientationConstraintSystem::new(t.triangle_count());
    for (i, &k) in beta.iter().enumerate() {
        if t.classify(i).expect("triangle in range").is_embedded() {
            let src = sides(t, i).map(|a| pi[a]);
            let bit = u8::from(!is_rotation(src, sides(image, k)));
            sys.pin(i, bit);
        }
    }
    for a in 0..t.arc_count() {
        let (t1, t2) = t.adjacent_triangles(a).expect("arc in range");
        if t1 == t2 {
            continue;
        }
        let copy_in = |tri: &Triangulation, k: usize, arc: usize| {
            tri.triangles()[k].iter().find(|s| s.arc == arc).map(|s| s.copy).expect("side present")
        };
        let parity = copy_in(t, t1, a) ^ copy_in(t, t2, a) ^ copy_in(image, beta[t1], pi[a]) ^ copy_in(image, beta[t2], pi[a]);
        sys.relate(t1, t2, parity);
    }
    sys
}

// backtracking over triangle bijections; returns the first solvable one
fn solve_correspondence(
    t: &Triangulation,
    image: &Triangulation,
    pi: &[usize],
    cands: &[Vec<usize>],
) -> std::result::Result<(Vec<usize>, Vec<u8>), Option<(usize, usize)>> {
    let n = cands.len();
    let mut beta = vec![usize::MAX; n];
    let mut used = vec![false; image.triangle_count()];
    let mut first_conflict = None;
    fn go(
        i: usize,
        beta: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ctx: (&Triangulation, &Triangulation, &[usize], &[Vec<usize>]),
        first_conflict: &mut Option<(usize, usize)>,
    ) -> Option<(Vec<usize>, Vec<u8>)> {
        let (t, image, pi, cands) = ctx;
        if i == cands.len() {
            let mut sys = system_for(t, image, pi, beta);
            return match sys.solve() {
                Some(o) => Some((beta.clone(), o)),
                None => {
                    first_conflict.get_or_insert(sys.conflict().expect("unsolved system has a conflict"));
                    None
                }
            };
        }
        for &k in &cands[i] {
            if used[k] {
                continue;
            }
            used[k] = true;
            beta[i] = k;
            if let Some(r) = go(i + 1, beta, used, ctx, first_conflict) {
                return Some(r);
            }
            used[k] = false;
        }
        None
    }
    go(0, &mut beta, &mut used, (t, image, pi, cands), &mut first_conflict).ok_or(first_conflict)
}

/// A homeomorphism agreeing with `map` on the arcs of the top simplex `top`
/// of its domain. Refutations carry a [`Certificate`].
pub fn reconstruct(map: &SimplicialSelfMap, top: usize) -> Result<CombinatorialHomeo> {
    let domain = map.domain();
    let surface = domain.surface();
    let sigma = domain
        .maximal_simplices()
        .get(top)
        .ok_or(Error::IndexOutOfRange { what: "maximal simplex", index: top, len: domain.maximal_simplices().len() })?;
    let Some(src) = &sigma.witness else {
        return Err(Error::Unsupported("the annulus has no triangulation to reconstruct from".into()));
    };
    let classes = src.classes();
    let images: Vec<ArcClass> = classes
        .iter()
        .map(|c| map.image_of(c).cloned().ok_or_else(|| Error::WitnessNotFound(format!("{c} is not in the domain"))))
        .collect::<Result<_>>()?;
    let n = classes.len();

    for i in 0..n {
        for j in i + 1..n {
            let pair = (vec![classes[i].clone(), classes[j].clone()], vec![images[i].clone(), images[j].clone()]);
            let vi = domain.index_of(&classes[i]).expect("witness arcs are vertices");
            if images[i] == images[j] {
                return Err(refuted(
                    Certificate::new(CertificateKind::NotInjective, "two arcs of the simplex share an image")
                        .with_classes(pair.0, pair.1)
                        .with_vertex(vi),
                ));
            }
            if !arc::disjoint(&images[i], &images[j])? {
                return Err(refuted(
                    Certificate::new(CertificateKind::NotSimplicial, "images of two disjoint arcs intersect")
                        .with_classes(pair.0, pair.1)
                        .with_vertex(vi),
                ));
            }
        }
    }

    let dst = arc::realize(&images)?;
    let pi: Vec<usize> = images.iter().map(|c| dst.slot_of(c).expect("realised")).collect();
    let (t, image) = (src.triangulation(), dst.triangulation());

    let cands = candidates(t, image, &pi).map_err(|i| {
        let (vertices, kind) = match t.classify(i).expect("triangle in range") {
            TriangleClass::Embedded => (sides(t, i).to_vec(), "embedded-triangle-preservation"),
            TriangleClass::SelfFolded { folded, loop_arc } => (vec![folded, loop_arc], "non-embedded-triangle-preservation"),
        };
        refuted(
            Certificate::new(CertificateKind::ClassMismatch, format!("triangle {i} has no image triangle of the same kind"))
                .with_property(kind)
                .with_classes(vertices.iter().map(|&a| classes[a].clone()).collect(), vertices.iter().map(|&a| images[a].clone()).collect()),
        )
    })?;

    let (_, bits) = solve_correspondence(t, image, &pi, &cands).map_err(|conflict| {
        let mut vertices = Vec::new();
        if let Some((a, b)) = conflict {
            for x in [a, b] {
                if x < t.triangle_count() {
                    for arc in sides(t, x) {
                        if !vertices.contains(&arc) {
                            vertices.push(arc);
                        }
                    }
                }
            }
        }
        refuted(
            Certificate::new(CertificateKind::OrientationUnsatisfiable, "triangle orientations cannot be made compatible")
                .with_classes(vertices.iter().map(|&a| classes[a].clone()).collect(), vertices.iter().map(|&a| images[a].clone()).collect()),
        )
    })?;

    // h carries src onto dst, so h^{-1}(T0) is src followed by the pulled-back path dst -> T0
    let mut inv = vec![0; n];
    for (j, &k) in pi.iter().enumerate() {
        inv[k] = j;
    }
    let back = FlipWord(dst.word().iter().rev().map(|&e| inv[e]).collect());
    let word = src.word().then(&back);
    let o = Orientation::from_bit(bits.first().copied().unwrap_or(0));
    let h = CombinatorialHomeo::from_arc_map(surface, word.clone(), &pi, Some(o))
        .or_else(|_| CombinatorialHomeo::from_arc_map(surface, word, &pi, Some(o.compose(Orientation::Reversing))))
        .map_err(|_| {
            refuted(
                Certificate::new(CertificateKind::OrientationUnsatisfiable, "no isomorphism realises the arc correspondence")
                    .with_classes(classes.to_vec(), images.clone()),
            )
        })?;

    for (j, c) in classes.iter().enumerate() {
        if h.apply(c)? != images[j] {
            return Err(refuted(
                Certificate::new(CertificateKind::Disagreement, "reconstructed homeomorphism misses an arc of the simplex")
                    .with_classes(vec![c.clone()], vec![images[j].clone()]),
            ));
        }
    }
    Ok(h)
}

/// Outcome of a successful [`verify_geometric`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Flips between top simplices whose image was confirmed to be the image flip.
    pub propagated: usize,
    pub vertices: usize,
}

fn disagreement(map: &SimplicialSelfMap, v: usize, expected: ArcClass, message: &str) -> Error {
    let d = map.domain();
    refuted(
        Certificate::new(CertificateKind::Disagreement, format!("{message} at vertex {v}: expected {expected}"))
            .with_classes(vec![d.vertex(v).clone()], vec![map.images()[v].clone()])
            .with_vertex(v),
    )
}

/// Confirms that `map` is induced by `h` on its whole domain.
///
/// Starting from the top simplex `start`, the image triangulation is carried
/// across every flip between top simplices of the domain and the image of
/// the new arc is compared with the flipped arc; then every vertex is
/// compared with its image under `h`.
pub fn verify_geometric(map: &SimplicialSelfMap, h: &CombinatorialHomeo, start: usize) -> Result<VerifyReport> {
    let d = map.domain();
    h.surface().require_same(&d.surface())?;
    let tops = d.maximal_simplices();
    let mut propagated = 0;
    if let Some(first) = tops.get(start) {
        if first.witness.is_some() {
            let images: Vec<ArcClass> = first.vertices.iter().map(|&v| map.images()[v].clone()).collect();
            let carried0 = arc::realize(&images).map_err(|_| {
                refuted(
                    Certificate::new(CertificateKind::NotSimplicial, "image of the start simplex is not a triangulation")
                        .with_classes(first.vertices.iter().map(|&v| d.vertex(v).clone()).collect(), images.clone()),
                )
            })?;
            let mut carried: Vec<Option<MarkedTriangulation>> = vec![None; tops.len()];
            carried[start] = Some(carried0);
            let mut queue = VecDeque::from([start]);
            while let Some(m) = queue.pop_front() {
                let cur = carried[m].clone().expect("queued simplices are carried");
                for n in d.maximal_neighbours(m) {
                    if carried[n].is_some() {
                        continue;
                    }
                    let x = *tops[m].vertices.iter().find(|v| !tops[n].vertices.contains(v)).expect("one vertex leaves");
                    let y = *tops[n].vertices.iter().find(|v| !tops[m].vertices.contains(v)).expect("one vertex enters");
                    let slot = cur.slot_of(&map.images()[x]).expect("carried triangulation holds the images");
                    let flipped = match cur.flip(slot) {
                        Ok(f) => f,
                        Err(Error::NotFlippable { .. }) => {
                            return Err(disagreement(map, y, h.apply(d.vertex(y))?, "image arc cannot be flipped"));
                        }
                        Err(e) => return Err(e),
                    };
                    if flipped.class(slot) != &map.images()[y] {
                        return Err(disagreement(map, y, flipped.class(slot).clone(), "image of a flip is not the flipped arc"));
                    }
                    propagated += 1;
                    carried[n] = Some(flipped);
                    queue.push_back(n);
                }
            }
        }
    }
    let expected: Vec<ArcClass> = d.vertices().par_iter().map(|c| h.apply(c)).collect::<Result<_>>()?;
    if let Some(v) = (0..d.len()).find(|&v| expected[v] != map.images()[v]) {
        return Err(disagreement(map, v, expected[v].clone(), "map differs from the homeomorphism"));
    }
    Ok(VerifyReport { propagated, vertices: d.len() })
}
