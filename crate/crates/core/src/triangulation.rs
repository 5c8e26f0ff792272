//! Ideal triangulations as labelled combinatorial maps.
//!
//! A triangulation with `n` arcs has `2n` *sides*: side `(arc, 0)` and side
//! `(arc, 1)` are the two copies of the arc that meet when the triangles are
//! glued. A side also records a direction: when a triangle is read in its
//! positive (counter-clockwise) cyclic order, copy 0 traverses the arc one way
//! and copy 1 the other way. Gluing a copy-0 side to a copy-1 side therefore
//! always identifies sides with opposite induced orientations, and every
//! well-formed map describes an oriented surface.
//!
//! Corner `i` of a triangle is the ideal vertex at the start of side `i`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::Surface;

/// One of the two copies of an arc, as it appears on the boundary of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub arc: usize,
    pub copy: u8,
}

impl Side {
    pub const fn new(arc: usize, copy: u8) -> Self {
        Side { arc, copy }
    }

    /// The glued partner of this side.
    pub const fn partner(self) -> Self {
        Side { arc: self.arc, copy: 1 - self.copy }
    }
}

/// Whether a triangle's three sides are distinct arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleClass {
    Embedded,
    /// `folded` is the arc appearing twice; `loop_arc` encloses the folded arc.
    SelfFolded { folded: usize, loop_arc: usize },
}

impl TriangleClass {
    pub fn is_embedded(&self) -> bool {
        matches!(self, TriangleClass::Embedded)
    }
}

/// An invariant violation found by [`TriangulationData::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    NotTriangulable,
    ArcCount { expected: usize, found: usize },
    TriangleCount { expected: usize, found: usize },
    ArcIndexOutOfRange { triangle: usize, arc: usize },
    BadCopy { triangle: usize, copy: u8 },
    ArcMultiplicity { arc: usize, count: usize },
    IncoherentOrientation { arc: usize },
    Disconnected,
    PunctureCount { expected: usize, found: usize },
    EulerCharacteristic { expected: i64, found: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotTriangulable => write!(f, "signature admits no triangulation"),
            Violation::ArcCount { expected, found } => {
                write!(f, "expected {expected} arcs, found {found}")
            }
            Violation::TriangleCount { expected, found } => {
                write!(f, "expected {expected} triangles, found {found}")
            }
            Violation::ArcIndexOutOfRange { triangle, arc } => {
                write!(f, "triangle {triangle} references arc {arc} out of range")
            }
            Violation::BadCopy { triangle, copy } => {
                write!(f, "triangle {triangle} uses copy index {copy}")
            }
            Violation::ArcMultiplicity { arc, count } => {
                write!(f, "arc {arc} appears {count} times (expected 2)")
            }
            Violation::IncoherentOrientation { arc } => {
                write!(f, "arc {arc} is glued with matching orientations")
            }
            Violation::Disconnected => write!(f, "glued surface is disconnected"),
            Violation::PunctureCount { expected, found } => {
                write!(f, "expected {expected} punctures, corner orbits give {found}")
            }
            Violation::EulerCharacteristic { expected, found } => {
                write!(f, "Euler characteristic {found}, expected {expected}")
            }
        }
    }
}

/// The list of violated invariants; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Unvalidated triangulation data, mirroring the JSON file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationData {
    pub genus: u32,
    pub boundary: u32,
    pub arcs: usize,
    pub triangles: Vec<[(usize, u8); 3]>,
}

impl TriangulationData {
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let surface = Surface { genus: self.genus, boundary: self.boundary };
        if !surface.triangulable() {
            out.push(Violation::NotTriangulable);
        } else {
            if self.arcs != surface.arc_count() {
                out.push(Violation::ArcCount { expected: surface.arc_count(), found: self.arcs });
            }
            if self.triangles.len() != surface.triangle_count() {
                out.push(Violation::TriangleCount {
                    expected: surface.triangle_count(),
                    found: self.triangles.len(),
                });
            }
        }

        let mut copies: Vec<Vec<u8>> = vec![Vec::new(); self.arcs];
        let mut structural = true;
        for (t, tri) in self.triangles.iter().enumerate() {
            for &(arc, copy) in tri {
                if arc >= self.arcs {
                    out.push(Violation::ArcIndexOutOfRange { triangle: t, arc });
                    structural = false;
                    continue;
                }
                if copy > 1 {
                    out.push(Violation::BadCopy { triangle: t, copy });
                    structural = false;
                    continue;
                }
                copies[arc].push(copy);
            }
        }
        for (arc, cs) in copies.iter().enumerate() {
            if cs.len() != 2 {
                out.push(Violation::ArcMultiplicity { arc, count: cs.len() });
                structural = false;
            } else if cs[0] == cs[1] {
                out.push(Violation::IncoherentOrientation { arc });
                structural = false;
            }
        }
        if !structural {
            return ValidationReport { violations: out };
        }

        let side_loc = side_locations(self.arcs, &self.triangles);
        if !triangles_connected(&self.triangles, &side_loc) {
            out.push(Violation::Disconnected);
        }
        let (_, punctures) = corner_punctures(self.arcs, &self.triangles);
        if punctures != self.boundary as usize {
            out.push(Violation::PunctureCount { expected: self.boundary as usize, found: punctures });
        }
        let euler = self.boundary as i64 - self.arcs as i64 + self.triangles.len() as i64;
        if euler != surface.closed_euler_characteristic() {
            out.push(Violation::EulerCharacteristic {
                expected: surface.closed_euler_characteristic(),
                found: euler,
            });
        }
        ValidationReport { violations: out }
    }
}

/// A validated ideal triangulation.
///
/// Values are immutable; operations such as flips return new triangulations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    surface: Surface,
    triangles: Vec<[Side; 3]>,
    side_loc: Vec<[(usize, usize); 2]>,
    corner_puncture: Vec<[usize; 3]>,
}

fn side_locations(arcs: usize, triangles: &[[(usize, u8); 3]]) -> Vec<[(usize, usize); 2]> {
    let mut loc = vec![[(usize::MAX, usize::MAX); 2]; arcs];
    for (t, tri) in triangles.iter().enumerate() {
        for (p, &(arc, copy)) in tri.iter().enumerate() {
            loc[arc][copy as usize] = (t, p);
        }
    }
    loc
}

fn triangles_connected(triangles: &[[(usize, u8); 3]], loc: &[[(usize, usize); 2]]) -> bool {
    if triangles.is_empty() {
        return false;
    }
    let mut seen = vec![false; triangles.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(t) = queue.pop_front() {
        for &(arc, copy) in &triangles[t] {
            let (u, _) = loc[arc][1 - copy as usize];
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Corner orbits. The tail of side `(a, c)` is node `2a + c`; its head is the
/// tail of `(a, 1 - c)`. Consecutive sides of a triangle share a vertex.
fn corner_punctures(arcs: usize, triangles: &[[(usize, u8); 3]]) -> (Vec<[usize; 3]>, usize) {
    let tail = |(a, c): (usize, u8)| 2 * a + c as usize;
    let head = |(a, c): (usize, u8)| 2 * a + 1 - c as usize;
    let mut parent: Vec<usize> = (0..2 * arcs).collect();
    for tri in triangles {
        for i in 0..3 {
            let prev = tri[(i + 2) % 3];
            let (x, y) = (find(&mut parent, tail(tri[i])), find(&mut parent, head(prev)));
            if x != y {
                parent[x] = y;
            }
        }
    }
    let mut label = vec![usize::MAX; 2 * arcs];
    let mut next = 0;
    let mut corners = Vec::with_capacity(triangles.len());
    for tri in triangles {
        let mut c = [0; 3];
        for i in 0..3 {
            let r = find(&mut parent, tail(tri[i]));
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            c[i] = label[r];
        }
        corners.push(c);
    }
    (corners, next)
}

impl Triangulation {
    /// Builds a triangulation from raw data, rejecting anything that fails validation.
    pub fn from_data(data: &TriangulationData) -> Result<Self> {
        let report = data.validate();
        if !report.is_empty() {
            return Err(Error::Validation(report));
        }
        Ok(Self::from_valid_parts(Surface { genus: data.genus, boundary: data.boundary }, &data.triangles))
    }

    fn from_valid_parts(surface: Surface, raw: &[[(usize, u8); 3]]) -> Self {
        let arcs = surface.arc_count();
        let side_loc = side_locations(arcs, raw);
        let (corner_puncture, _) = corner_punctures(arcs, raw);
        let triangles = raw
            .iter()
            .map(|t| [Side::new(t[0].0, t[0].1), Side::new(t[1].0, t[1].1), Side::new(t[2].0, t[2].1)])
            .collect();
        Triangulation { surface, triangles, side_loc, corner_puncture }
    }

    pub(crate) fn from_sides(surface: Surface, tris: &[[Side; 3]]) -> Self {
        let raw: Vec<[(usize, u8); 3]> = tris
            .iter()
            .map(|t| [(t[0].arc, t[0].copy), (t[1].arc, t[1].copy), (t[2].arc, t[2].copy)])
            .collect();
        debug_assert!(
            TriangulationData { genus: surface.genus, boundary: surface.boundary, arcs: surface.arc_count(), triangles: raw.clone() }
                .validate()
                .is_empty()
        );
        Self::from_valid_parts(surface, &raw)
    }

    /// The standard triangulation of a triangulable signature.
    ///
    /// Genus 0 starts from two triangles glued along their boundaries
    /// (a sphere with three punctures; arcs 0, 1, 2 join punctures 0-1, 1-2, 2-0).
    /// Genus `g >= 1` starts from the `4g`-gon with side word
    /// `a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1`, fan-triangulated from its first
    /// vertex; `ai` is arc `2i`, `bi` is arc `2i + 1` and the diagonals follow.
    /// Each remaining puncture is added by subdividing triangle `j` (for the
    /// `j`-th extra puncture) into three with three new arcs. The result is put
    /// in canonical form.
    pub fn new_standard(surface: Surface) -> Result<Self> {
        surface.require_triangulable()?;
        let (mut tris, mut next_arc, base_punctures) = if surface.genus == 0 {
            let tris = vec![
                [Side::new(0, 0), Side::new(1, 0), Side::new(2, 0)],
                [Side::new(2, 1), Side::new(1, 1), Side::new(0, 1)],
            ];
            (tris, 3usize, 3u32)
        } else {
            let g = surface.genus as usize;
            let m = 4 * g;
            let polygon_side = |j: usize| -> Side {
                let i = j / 4;
                match j % 4 {
                    0 => Side::new(2 * i, 0),
                    1 => Side::new(2 * i + 1, 0),
                    2 => Side::new(2 * i, 1),
                    _ => Side::new(2 * i + 1, 1),
                }
            };
            let diagonal = |k: usize| 2 * g + (k - 2);
            let mut tris = Vec::with_capacity(m - 2);
            for k in 1..=m - 2 {
                let first = if k == 1 { polygon_side(0) } else { Side::new(diagonal(k), 0) };
                let third = if k + 1 == m - 1 { polygon_side(m - 1) } else { Side::new(diagonal(k + 1), 1) };
                tris.push([first, polygon_side(k), third]);
            }
            (tris, 2 * g + (m - 3), 1u32)
        };
        for j in 0..(surface.boundary - base_punctures) as usize {
            let [s0, s1, s2] = tris[j];
            let (xa, xb, xc) = (next_arc, next_arc + 1, next_arc + 2);
            next_arc += 3;
            // spoke copy 0 runs from the old corner to the new puncture
            tris[j] = [s0, Side::new(xb, 0), Side::new(xa, 1)];
            tris.push([s1, Side::new(xc, 0), Side::new(xb, 1)]);
            tris.push([s2, Side::new(xa, 0), Side::new(xc, 1)]);
        }
        debug_assert_eq!(next_arc, surface.arc_count());
        let t = Triangulation::from_sides(surface, &tris);
        Ok(t.canonical())
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn arc_count(&self) -> usize {
        self.side_loc.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> Result<[Side; 3]> {
        self.triangles
            .get(t)
            .copied()
            .ok_or(Error::IndexOutOfRange { what: "triangle", index: t, len: self.triangles.len() })
    }

    /// `(triangle, position)` of a side.
    pub fn locate(&self, side: Side) -> (usize, usize) {
        self.side_loc[side.arc][side.copy as usize]
    }

    /// Puncture index at corner `i` of triangle `t` (the start of side `i`).
    pub fn corner_puncture(&self, t: usize, i: usize) -> usize {
        self.corner_puncture[t][i]
    }

    /// The two punctures joined by an arc, as `(tail of copy 0, head of copy 0)`.
    pub fn endpoints(&self, arc: usize) -> (usize, usize) {
        let (t, p) = self.side_loc[arc][0];
        (self.corner_puncture[t][p], self.corner_puncture[t][(p + 1) % 3])
    }

    pub(crate) fn check_arc(&self, arc: usize) -> Result<()> {
        if arc < self.arc_count() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { what: "arc", index: arc, len: self.arc_count() })
        }
    }

    pub fn to_data(&self) -> TriangulationData {
        TriangulationData {
            genus: self.surface.genus,
            boundary: self.surface.boundary,
            arcs: self.arc_count(),
            triangles: self
                .triangles
                .iter()
                .map(|t| [(t[0].arc, t[0].copy), (t[1].arc, t[1].copy), (t[2].arc, t[2].copy)])
                .collect(),
        }
    }

    /// Re-checks every invariant. Always empty for values of this type.
    pub fn validate(&self) -> ValidationReport {
        self.to_data().validate()
    }

    pub fn classify(&self, t: usize) -> Result<TriangleClass> {
        let [a, b, c] = self.triangle(t)?;
        Ok(classify_sides([a, b, c]))
    }

    /// The triangles holding copy 0 and copy 1 of an arc.
    pub fn adjacent_triangles(&self, arc: usize) -> Result<(usize, usize)> {
        self.check_arc(arc)?;
        let [(t0, _), (t1, _)] = self.side_loc[arc];
        Ok((t0, t1))
    }

    /// Index of a triangle whose sides are exactly the given arcs (as a multiset).
    pub fn find_triangle(&self, arcs: [usize; 3]) -> Option<usize> {
        let mut key = arcs;
        key.sort_unstable();
        self.triangles.iter().position(|t| {
            let mut k = [t[0].arc, t[1].arc, t[2].arc];
            k.sort_unstable();
            k == key
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_data()).expect("triangulation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let data: TriangulationData = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_data(&data)
    }

    /// Canonical representative with the same arc labels.
    ///
    /// Triangle order, the cyclic starting side of each triangle and the copy
    /// labels of each arc carry no geometric meaning; this fixes them by a
    /// breadth-first sweep seeded at a side of arc 0, taking the smaller of the
    /// two seeds. Two triangulations with equal arc labels describe the same
    /// labelled map iff their canonical forms are equal.
    pub fn canonical(&self) -> Self {
        let a = self.sweep(Side::new(0, 0));
        let b = self.sweep(Side::new(0, 1));
        let best = if a <= b { a } else { b };
        Triangulation::from_sides(self.surface, &best)
    }

    fn sweep(&self, seed: Side) -> Vec<[Side; 3]> {
        let n = self.arc_count();
        let mut flip_bit: Vec<Option<u8>> = vec![None; n];
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(self.triangles.len());
        let mut visited = vec![false; self.triangles.len()];
        let (t0, p0) = self.locate(seed);
        visited[t0] = true;
        order.push((t0, p0));
        let mut head = 0;
        while head < order.len() {
            let (t, rot) = order[head];
            head += 1;
            for k in 0..3 {
                let side = self.triangles[t][(rot + k) % 3];
                if flip_bit[side.arc].is_none() {
                    flip_bit[side.arc] = Some(side.copy);
                }
                let (u, q) = self.locate(side.partner());
                if !visited[u] {
                    visited[u] = true;
                    order.push((u, q));
                }
            }
        }
        order
            .iter()
            .map(|&(t, rot)| {
                let mut out = [Side::new(0, 0); 3];
                for (k, slot) in out.iter_mut().enumerate() {
                    let s = self.triangles[t][(rot + k) % 3];
                    *slot = Side::new(s.arc, s.copy ^ flip_bit[s.arc].unwrap_or(0));
                }
                out
            })
            .collect()
    }

    /// The two triangles are distinct and the diagonal can be exchanged.
    pub fn is_flippable(&self, arc: usize) -> Result<bool> {
        let (a, b) = self.adjacent_triangles(arc)?;
        Ok(a != b)
    }

    /// Exchanges `arc` for the other diagonal of its quadrilateral.
    ///
    /// With the triangles read as `(e0, a, b)` and `(e1, c, d)` the quadrilateral
    /// has sides `c, d, a, b` in positive order; the new triangles are
    /// `(e0, b, c)` and `(e1, d, a)`. The result is canonical, which makes the
    /// operation an exact involution on canonical triangulations.
    pub fn flipped(&self, arc: usize) -> Result<Self> {
        if !self.is_flippable(arc)? {
            return Err(Error::NotFlippable { arc });
        }
        let [(t1, p1), (t2, p2)] = self.side_loc[arc];
        let r1 = rotate(self.triangles[t1], p1);
        let r2 = rotate(self.triangles[t2], p2);
        let (a, b) = (r1[1], r1[2]);
        let (c, d) = (r2[1], r2[2]);
        let mut tris = self.triangles.clone();
        tris[t1] = [Side::new(arc, 0), b, c];
        tris[t2] = [Side::new(arc, 1), d, a];
        Ok(Triangulation::from_sides(self.surface, &tris).canonical())
    }

    /// The quadrilateral around a flippable arc: `[a, b, c, d]` with `a, c`
    /// and `b, d` opposite, as arc indices.
    pub fn quadrilateral(&self, arc: usize) -> Result<[usize; 4]> {
        if !self.is_flippable(arc)? {
            return Err(Error::NotFlippable { arc });
        }
        let [(t1, p1), (t2, p2)] = self.side_loc[arc];
        let r1 = rotate(self.triangles[t1], p1);
        let r2 = rotate(self.triangles[t2], p2);
        Ok([r1[1].arc, r1[2].arc, r2[1].arc, r2[2].arc])
    }
}

fn rotate(tri: [Side; 3], start: usize) -> [Side; 3] {
    [tri[start % 3], tri[(start + 1) % 3], tri[(start + 2) % 3]]
}

pub(crate) fn classify_sides(sides: [Side; 3]) -> TriangleClass {
    let [a, b, c] = sides.map(|s| s.arc);
    if a == b {
        TriangleClass::SelfFolded { folded: a, loop_arc: c }
    } else if b == c {
        TriangleClass::SelfFolded { folded: b, loop_arc: a }
    } else if a == c {
        TriangleClass::SelfFolded { folded: a, loop_arc: b }
    } else {
        TriangleClass::Embedded
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.surface)?;
        for (i, t) in self.triangles.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({}.{} {}.{} {}.{})", t[0].arc, t[0].copy, t[1].arc, t[1].copy, t[2].arc, t[2].copy)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: u32, b: u32) -> Surface {
        Surface::new(g, b).unwrap()
    }

    #[test]
    fn standard_counts() {
        let t = Triangulation::new_standard(s(0, 3)).unwrap();
        assert_eq!((t.arc_count(), t.triangle_count()), (3, 2));
        let t = Triangulation::new_standard(s(1, 2)).unwrap();
        assert_eq!((t.arc_count(), t.triangle_count()), (6, 4));
        assert!(t.validate().is_empty());
    }

    #[test]
    fn standard_rejects_disc_and_annulus() {
        assert_eq!(
            Triangulation::new_standard(s(0, 1)),
            Err(Error::NotTriangulable { genus: 0, boundary: 1 })
        );
        assert!(Triangulation::new_standard(s(0, 2)).is_err());
    }

    #[test]
    fn standard_is_valid_for_small_signatures() {
        for g in 0..=3 {
            for b in 1..=4 {
                let surf = s(g, b);
                if !surf.triangulable() {
                    continue;
                }
                let t = Triangulation::new_standard(surf).unwrap();
                assert_eq!(t.arc_count(), (6 * g + 3 * b - 6) as usize);
                assert_eq!(t.triangle_count(), (4 * g + 2 * b - 4) as usize);
                assert!(t.validate().is_empty(), "{surf}: {}", t.validate());
                assert_eq!(t, Triangulation::new_standard(surf).unwrap());
            }
        }
    }

    #[test]
    fn once_punctured_torus_triangles_embedded() {
        let t = Triangulation::new_standard(s(1, 1)).unwrap();
        for i in 0..2 {
            assert_eq!(t.classify(i).unwrap(), TriangleClass::Embedded);
        }
        for arc in 0..3 {
            let (a, b) = t.adjacent_triangles(arc).unwrap();
            assert_ne!(a, b);
        }
    }

    #[test]
    fn classify_repeated_side() {
        let sides = [Side::new(4, 0), Side::new(7, 0), Side::new(4, 1)];
        assert_eq!(classify_sides(sides), TriangleClass::SelfFolded { folded: 4, loop_arc: 7 });
    }

    #[test]
    fn classify_out_of_range() {
        let t = Triangulation::new_standard(s(0, 3)).unwrap();
        assert!(matches!(t.classify(2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(t.adjacent_triangles(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn arc_used_three_times_is_reported() {
        let data = TriangulationData {
            genus: 0,
            boundary: 3,
            arcs: 3,
            triangles: vec![[(0, 0), (1, 0), (0, 1)], [(2, 1), (1, 1), (0, 0)]],
        };
        let report = data.validate();
        assert!(report.violations.contains(&Violation::ArcMultiplicity { arc: 0, count: 3 }));
        assert!(report.violations.contains(&Violation::ArcMultiplicity { arc: 2, count: 1 }));
    }

    #[test]
    fn incoherent_orientation_is_reported() {
        let data = TriangulationData {
            genus: 0,
            boundary: 3,
            arcs: 3,
            triangles: vec![[(0, 0), (1, 0), (2, 0)], [(2, 1), (1, 1), (0, 0)]],
        };
        let report = data.validate();
        assert!(report.violations.contains(&Violation::IncoherentOrientation { arc: 0 }));
    }

    #[test]
    fn wrong_signature_is_reported() {
        // the (0,3) gluing declared as a once-punctured torus
        let data = TriangulationData {
            genus: 1,
            boundary: 1,
            arcs: 3,
            triangles: vec![[(0, 0), (1, 0), (2, 0)], [(2, 1), (1, 1), (0, 1)]],
        };
        let report = data.validate();
        assert!(report.violations.contains(&Violation::PunctureCount { expected: 1, found: 3 }));
    }

    #[test]
    fn adjacency_double_counts_triangles() {
        let t = Triangulation::new_standard(s(2, 1)).unwrap();
        let mut hits = vec![0; t.triangle_count()];
        for arc in 0..t.arc_count() {
            let (a, b) = t.adjacent_triangles(arc).unwrap();
            hits[a] += 1;
            hits[b] += 1;
        }
        assert!(hits.iter().all(|&h| h == 3));
    }

    #[test]
    fn json_round_trip() {
        let t = Triangulation::new_standard(s(0, 3)).unwrap();
        assert_eq!(Triangulation::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn json_rejects_mismatched_signature() {
        let text = r#"{"genus":0,"boundary":4,"arcs":3,"triangles":[[[0,0],[1,0],[2,0]],[[2,1],[1,1],[0,1]]]}"#;
        assert!(matches!(Triangulation::from_json(text), Err(Error::Validation(_))));
        assert!(matches!(Triangulation::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn canonical_is_idempotent() {
        let t = Triangulation::new_standard(s(1, 2)).unwrap();
        assert_eq!(t.canonical(), t);
        let mut data = t.to_data();
        data.triangles.reverse();
        for tri in data.triangles.iter_mut() {
            tri.rotate_left(1);
        }
        let shuffled = Triangulation::from_data(&data).unwrap();
        assert_ne!(shuffled, t);
        assert_eq!(shuffled.canonical(), t);
    }

    #[test]
    fn flip_is_an_involution() {
        let t = Triangulation::new_standard(s(2, 1)).unwrap();
        for e in 0..t.arc_count() {
            if t.is_flippable(e).unwrap() {
                let f = t.flipped(e).unwrap();
                assert!(f.validate().is_empty());
                assert_eq!(f.flipped(e).unwrap(), t);
            }
        }
    }

    #[test]
    fn pants_flip_creates_two_self_folded_triangles() {
        let t = Triangulation::new_standard(s(0, 3)).unwrap();
        let f = t.flipped(0).unwrap();
        let classes: Vec<_> = (0..2).map(|i| f.classify(i).unwrap()).collect();
        assert!(classes.iter().all(|c| matches!(c, TriangleClass::SelfFolded { loop_arc: 0, .. })));
        assert!(!f.is_flippable(1).unwrap());
        assert!(!f.is_flippable(2).unwrap());
        assert!(f.is_flippable(0).unwrap());
    }
}
