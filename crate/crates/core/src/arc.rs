//! Arc isotopy classes as integer coordinate vectors.
//!
//! An arc class is stored by its intersection numbers with the arcs of the
//! standard triangulation of its surface (see [`Triangulation::new_standard`]).
//! The class of an arc of that triangulation has no crossings at all, so it is
//! written as `-1` in its own slot and `0` elsewhere.
//!
//! Coordinates move across a flip by the tropical rule
//! `x_e' = max(x_a + x_c, x_b + x_d) - x_e` where `a, c` and `b, d` are the
//! opposite sides of the quadrilateral around `e`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flip::{FlipWord, MarkedTriangulation};
use crate::surface::Surface;
use crate::triangulation::Triangulation;

/// An isotopy class of essential arcs, in coordinates relative to the
/// standard triangulation of `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcClass {
    base: Surface,
    coords: Vec<i64>,
}

/// Geometric intersection number of two arc classes (interior crossings).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntersectionNumber(pub u64);

impl fmt::Display for IntersectionNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of the `-1` entry, if the vector marks an arc of the triangulation.
pub fn marked_slot(coords: &[i64]) -> Option<usize> {
    let mut slot = None;
    for (i, &x) in coords.iter().enumerate() {
        if x < 0 {
            if slot.is_some() {
                return None;
            }
            slot = Some(i);
        } else if x != 0 {
            return None;
        }
    }
    slot
}

/// Shape check: one `-1` with zeros elsewhere, or non-negative with a positive entry.
pub fn check_coordinates(coords: &[i64], len: usize) -> Result<()> {
    if coords.len() != len {
        return Err(Error::InvalidCoordinates(format!("expected {len} entries, found {}", coords.len())));
    }
    let negatives = coords.iter().filter(|&&x| x < 0).count();
    if coords.iter().any(|&x| x < -1) {
        return Err(Error::InvalidCoordinates("entries below -1".into()));
    }
    if negatives == 1 {
        if coords.iter().all(|&x| x <= 0) {
            return Ok(());
        }
        return Err(Error::InvalidCoordinates("a -1 entry must be the only non-zero entry".into()));
    }
    if negatives > 1 {
        return Err(Error::InvalidCoordinates("more than one -1 entry".into()));
    }
    if coords.iter().all(|&x| x == 0) {
        return Err(Error::InvalidCoordinates("all-zero vector".into()));
    }
    Ok(())
}

impl ArcClass {
    /// Builds a class from coordinates, checking their shape.
    ///
    /// Realisability is checked lazily: [`flatten`] fails on vectors that do
    /// not come from an arc.
    pub fn new(base: Surface, coords: Vec<i64>) -> Result<Self> {
        base.require_triangulable()?;
        check_coordinates(&coords, base.arc_count())?;
        Ok(ArcClass { base, coords })
    }

    /// The class of arc `slot` of the standard triangulation.
    pub fn standard_arc(base: Surface, slot: usize) -> Result<Self> {
        base.require_triangulable()?;
        let n = base.arc_count();
        if slot >= n {
            return Err(Error::IndexOutOfRange { what: "arc", index: slot, len: n });
        }
        let mut coords = vec![0; n];
        coords[slot] = -1;
        Ok(ArcClass { base, coords })
    }

    /// The single vertex of the annulus complex, which has no triangulation.
    pub(crate) fn annulus_arc(base: Surface) -> Self {
        ArcClass { base, coords: Vec::new() }
    }

    pub(crate) fn from_raw(base: Surface, coords: Vec<i64>) -> Self {
        ArcClass { base, coords }
    }

    pub fn base(&self) -> Surface {
        self.base
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Slot of the standard triangulation this class coincides with, if any.
    pub fn standard_slot(&self) -> Option<usize> {
        marked_slot(&self.coords)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("arc class serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            base: Surface,
            coords: Vec<i64>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        ArcClass::new(raw.base, raw.coords)
    }
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

thread_local! {
    static STANDARD: RefCell<HashMap<Surface, Triangulation>> = RefCell::new(HashMap::new());
}

/// Cached standard triangulation of a surface.
pub(crate) fn standard(surface: Surface) -> Result<Triangulation> {
    if let Some(t) = STANDARD.with(|c| c.borrow().get(&surface).cloned()) {
        return Ok(t);
    }
    let t = Triangulation::new_standard(surface)?;
    STANDARD.with(|c| c.borrow_mut().insert(surface, t.clone()));
    Ok(t)
}

/// Normal pieces of an arc inside one triangle with sides `s0, s1, s2`.
///
/// `cuts[i]` counts segments around corner `i` (between sides `i - 1` and
/// `i`); `ends[i]` counts segments from corner `i + 2` (opposite side `i`)
/// that end on side `i`. Ends appear only where the triangle inequality fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pieces {
    pub cuts: [i64; 3],
    pub ends: [i64; 3],
}

pub(crate) fn pieces(x: [i64; 3]) -> Result<Pieces> {
    let mut cuts = [0; 3];
    let mut ends = [0; 3];
    for i in 0..3 {
        let (p, q) = (x[(i + 1) % 3], x[(i + 2) % 3]);
        if x[i] > p + q {
            // ends sit at the opposite corner, which then has no cuts around it
            ends[i] = x[i] - p - q;
            if ends[i] > 2 {
                return Err(Error::InvalidCoordinates(format!("triangle weights {x:?} need {} arc ends", ends[i])));
            }
            cuts[(i + 1) % 3] = p;
            cuts[i] = q;
            return Ok(Pieces { cuts, ends });
        }
    }
    if (x[0] + x[1] + x[2]) % 2 != 0 {
        return Err(Error::InvalidCoordinates(format!("triangle weights {x:?} have odd sum and no arc end")));
    }
    for i in 0..3 {
        // corner i lies between sides i - 1 and i
        let (l, r, o) = (x[(i + 2) % 3], x[i], x[(i + 1) % 3]);
        cuts[i] = (l + r - o) / 2;
    }
    Ok(Pieces { cuts, ends })
}

fn overlap(a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.1.min(b.1) - a.0.max(b.0)).max(0)
}

/// Coordinates of the same arc after flipping `e` in `t`.
///
/// Both triangles at `e` are cut into normal pieces, the pieces are glued
/// along `e`, and the crossings with the new diagonal are counted.
pub fn transport(coords: &[i64], t: &Triangulation, e: usize) -> Result<Vec<i64>> {
    check_coordinates(coords, t.arc_count())?;
    if !t.is_flippable(e)? {
        return Err(Error::NotFlippable { arc: e });
    }
    let mut out = coords.to_vec();
    match marked_slot(coords) {
        Some(j) if j == e => {
            // the old diagonal crosses the new one once and nothing else
            out[e] = 1;
            return Ok(out);
        }
        Some(_) => {
            out[e] = 0;
            return Ok(out);
        }
        None => {}
    }
    let [a, b, c, d] = t.quadrilateral(e)?;
    let x = |i: usize| coords[i];
    // first triangle (e, a, b): corner 0 is bc, corner 1 is da, corner 2 is ab
    let p1 = pieces([x(e), x(a), x(b)])?;
    // second triangle (e, c, d): corner 0 is da, corner 1 is bc, corner 2 is cd
    let p2 = pieces([x(e), x(c), x(d)])?;
    // crossings of e listed from the bc end
    let n = x(e);
    let b1 = (0, p1.cuts[0]);
    let ab = (b1.1, b1.1 + p1.ends[0]);
    let a1 = (ab.1, n);
    let c2 = (0, p2.cuts[1]);
    let cd = (c2.1, c2.1 + p2.ends[0]);
    let d2 = (cd.1, n);
    if a1.0 + p1.cuts[1] != n || d2.0 + p2.cuts[0] != n {
        return Err(Error::InvalidCoordinates(format!("weights around arc {e} do not glue")));
    }
    if overlap(ab, cd) > 0 {
        // the arc runs corner to corner across e: it is the new diagonal
        if coords.iter().enumerate().any(|(i, &v)| i != e && v != 0) || n != 1 {
            return Err(Error::InvalidCoordinates(format!("arc crossing {e} corner to corner is not alone")));
        }
        out[e] = -1;
        return Ok(out);
    }
    let through = overlap(b1, d2) + overlap(a1, c2);
    let local = p1.cuts[2] + p1.ends[1] + p1.ends[2] + p2.cuts[2] + p2.ends[1] + p2.ends[2];
    out[e] = through + local;
    Ok(out)
}

/// Transports coordinates along a flip word; returns the final triangulation too.
pub fn transport_along(t: &Triangulation, word: &FlipWord, coords: &[i64]) -> Result<(Triangulation, Vec<i64>)> {
    let mut tri = t.clone();
    let mut x = coords.to_vec();
    for &e in word.iter() {
        x = transport(&x, &tri, e)?;
        tri = tri.flipped(e)?;
    }
    Ok((tri, x))
}

/// A flip word after which an arc class is an arc of the triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flattening {
    pub word: FlipWord,
    pub triangulation: Triangulation,
    pub slot: usize,
}

/// Next flip of the flattening descent: the flippable arc of largest
/// coordinate, lowest index first. Returns the slot and the new coordinates.
pub(crate) fn descent_step(t: &Triangulation, x: &[i64]) -> Result<Option<(usize, Vec<i64>)>> {
    let mut order: Vec<usize> = Vec::new();
    for e in 0..x.len() {
        if x[e] > 0 && t.is_flippable(e)? {
            order.push(e);
        }
    }
    // stable sort keeps lowest index first among equal coordinates
    order.sort_by_key(|&e| std::cmp::Reverse(x[e]));
    for e in order {
        let y = transport(x, t, e)?;
        if y[e] < x[e] {
            return Ok(Some((e, y)));
        }
    }
    Ok(None)
}

/// Flips the standard triangulation until the arc becomes one of its edges.
///
/// Each step flips the flippable arc of maximal coordinate (ties to the lowest
/// index), which strictly lowers that coordinate.
pub fn flatten(a: &ArcClass) -> Result<Flattening> {
    flatten_from(&standard(a.base)?, &a.coords)
}

pub(crate) fn flatten_from(start: &Triangulation, coords: &[i64]) -> Result<Flattening> {
    check_coordinates(coords, start.arc_count())?;
    let mut t = start.clone();
    let mut x = coords.to_vec();
    let mut word = Vec::new();
    let cap = x.iter().map(|v| v.unsigned_abs() as usize).sum::<usize>() + 2;
    for _ in 0..=cap {
        if let Some(slot) = marked_slot(&x) {
            return Ok(Flattening { word: FlipWord(word), triangulation: t, slot });
        }
        match descent_step(&t, &x)? {
            Some((e, y)) => {
                t = t.flipped(e)?;
                x = y;
                word.push(e);
            }
            None => return Err(Error::NonTermination { steps: word.len() }),
        }
    }
    Err(Error::NonTermination { steps: word.len() })
}

fn same_base(a: &ArcClass, b: &ArcClass) -> Result<()> {
    a.base.require_same(&b.base)
}

/// Geometric intersection number: flatten `a`, carry `b` along, read `a`'s slot.
pub fn intersection(a: &ArcClass, b: &ArcClass) -> Result<IntersectionNumber> {
    same_base(a, b)?;
    if a.coords.is_empty() {
        // the annulus has a single arc class
        return Ok(IntersectionNumber(0));
    }
    if a == b {
        return Ok(IntersectionNumber(0));
    }
    if let Some(j) = a.standard_slot() {
        return Ok(IntersectionNumber(b.coords[j].max(0) as u64));
    }
    let f = flatten(a)?;
    let (_, y) = transport_along(&standard(a.base)?, &f.word, &b.coords)?;
    Ok(IntersectionNumber(y[f.slot].max(0) as u64))
}

pub fn disjoint(a: &ArcClass, b: &ArcClass) -> Result<bool> {
    Ok(intersection(a, b)?.0 == 0)
}

/// A triangulation containing every given class, built by flattening the
/// classes one after another. The classes must be pairwise disjoint.
pub fn realize(classes: &[ArcClass]) -> Result<MarkedTriangulation> {
    let Some(first) = classes.first() else {
        return Err(Error::NotRealizable);
    };
    let mut m = MarkedTriangulation::standard(first.base)?;
    for c in classes {
        same_base(first, c)?;
        if m.slot_of(c).is_some() {
            continue;
        }
        let x = m.coordinates_of(c)?;
        let f = flatten_from(m.triangulation(), &x)?;
        // disjoint classes already present have coordinate 0 and are never flipped
        m = m.apply(&f.word)?;
        if m.slot_of(c) != Some(f.slot) {
            return Err(Error::NotRealizable);
        }
    }
    for c in classes {
        if m.slot_of(c).is_none() {
            return Err(Error::NotRealizable);
        }
    }
    Ok(m)
}

/// Slopes for the once-punctured torus.
///
/// An arc of the once-punctured torus closes up to a simple closed curve on
/// the torus through the puncture and is recorded by its primitive homology
/// class `p/q` up to sign. The standard triangulation's arcs 0, 1, 2 are the
/// slopes `0/1`, `1/0`, `1/1`. Flipping an arc whose triangle holds slopes
/// `u, v` replaces it by whichever of `u + v`, `u - v` it was not.
pub mod farey {
    use super::*;

    pub type Slope = (i64, i64);

    pub const BASE_SLOPES: [Slope; 3] = [(0, 1), (1, 0), (1, 1)];

    pub fn torus() -> Surface {
        Surface { genus: 1, boundary: 1 }
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    pub fn coprime(p: i64, q: i64) -> bool {
        gcd(p, q) == 1
    }

    /// Sign-normalised slope: `q > 0`, or `1/0`.
    pub fn normalize((p, q): Slope) -> Slope {
        if q < 0 || (q == 0 && p < 0) {
            (-p, -q)
        } else {
            (p, q)
        }
    }

    pub fn parse(text: &str) -> Result<Slope> {
        let (p, q) = text.split_once('/').ok_or_else(|| Error::Parse(format!("expected p/q, got {text:?}")))?;
        let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if !coprime(p, q) {
            return Err(Error::Parse(format!("{text} is not a reduced fraction")));
        }
        Ok(normalize((p, q)))
    }

    pub fn determinant((p, q): Slope, (r, s): Slope) -> i64 {
        p * s - q * r
    }

    /// Slope of each arc along a flip word from the standard triangulation.
    pub fn slopes_along(word: &FlipWord) -> [Slope; 3] {
        let mut s = BASE_SLOPES;
        for &k in word.iter() {
            s[k] = flipped_slope(s, k);
        }
        s
    }

    pub(crate) fn flipped_slope(s: [Slope; 3], k: usize) -> Slope {
        let u = s[(k + 1) % 3];
        let v = s[(k + 2) % 3];
        let plus = normalize((u.0 + v.0, u.1 + v.1));
        if plus == normalize(s[k]) {
            normalize((u.0 - v.0, u.1 - v.1))
        } else {
            plus
        }
    }

    /// Flip word from the standard triangulation to the first triangle
    /// containing `target`, walking the dual tree of the Farey tessellation.
    pub fn word_to_slope(target: Slope) -> Result<FlipWord> {
        let target = normalize(target);
        if !coprime(target.0, target.1) {
            return Err(Error::Parse(format!("{}/{} is not reduced", target.0, target.1)));
        }
        let mut s = BASE_SLOPES;
        let mut word = Vec::new();
        while !s.iter().any(|&x| normalize(x) == target) {
            // the target lies strictly inside one of the three arcs of the
            // projective line cut out by the triangle; flip the opposite vertex
            let k = (0..3)
                .find(|&k| separates(s[(k + 1) % 3], s[(k + 2) % 3], s[k], target))
                .expect("target lies in one complementary arc");
            s[k] = flipped_slope(s, k);
            word.push(k);
            if word.len() > 10_000 {
                return Err(Error::NonTermination { steps: word.len() });
            }
        }
        Ok(FlipWord(word))
    }

    // true iff `t` and `w` lie on different sides of the chord {u, v}
    fn separates(u: Slope, v: Slope, w: Slope, t: Slope) -> bool {
        between(u, v, t) != between(u, v, w)
    }

    // normalised slopes sit in the upper half-plane or on the ray 1/0, so
    // angular order is the sign of the determinant
    fn before(a: Slope, b: Slope) -> bool {
        determinant(normalize(a), normalize(b)) > 0
    }

    // whether `x` lies strictly between u and v, sweeping counter-clockwise from u
    fn between(u: Slope, v: Slope, x: Slope) -> bool {
        if before(u, v) {
            before(u, x) && before(x, v)
        } else {
            before(u, x) || before(x, v)
        }
    }

    /// The arc class of slope `p/q`.
    pub fn arc_from_slope(slope: Slope) -> Result<ArcClass> {
        let target = normalize(slope);
        let word = word_to_slope(target)?;
        let m = MarkedTriangulation::standard(torus())?.apply(&word)?;
        let slopes = slopes_along(&word);
        let k = (0..3).find(|&k| normalize(slopes[k]) == target).expect("word ends at the target");
        Ok(m.class(k).clone())
    }

    /// Reads the slope back from coordinates `(|p| - 1, |q| - 1, |p - q| - 1)`.
    pub fn slope_from_coords(c: &ArcClass) -> Result<Slope> {
        if c.base() != torus() {
            return Err(Error::Unsupported("slopes exist only on the once-punctured torus".into()));
        }
        let x = c.coords();
        let (p, q, d) = (x[0] + 1, x[1] + 1, x[2] + 1);
        let slope = if (p - q).abs() == d {
            (p, q)
        } else if p + q == d {
            (p, -q)
        } else {
            return Err(Error::InvalidCoordinates(format!("{x:?} is not a torus slope")));
        };
        if !coprime(slope.0, slope.1) {
            return Err(Error::InvalidCoordinates(format!("{x:?} decodes to a non-primitive class")));
        }
        Ok(normalize(slope))
    }
}

#[cfg(test)]
mod tests {
    use super::farey::*;
    use super::*;

    fn torus_arc(p: i64, q: i64) -> ArcClass {
        arc_from_slope((p, q)).unwrap()
    }

    #[test]
    fn half_slope_coordinates() {
        assert_eq!(torus_arc(1, 2).coords(), &[0, 1, 0]);
        assert_eq!(torus_arc(2, 1).coords(), &[1, 0, 0]);
        assert_eq!(torus_arc(-1, 1).coords(), &[0, 0, 1]);
        assert_eq!(torus_arc(0, 1).coords(), &[-1, 0, 0]);
    }

    #[test]
    fn flipping_the_diagonal_gives_minus_one() {
        let w = FlipWord(vec![2]);
        assert_eq!(normalize(slopes_along(&w)[2]), (-1, 1));
    }

    #[test]
    fn transport_marks_the_new_diagonal() {
        let t = Triangulation::new_standard(torus()).unwrap();
        // unit vector at e is the other diagonal of e's quadrilateral
        assert_eq!(transport(&[0, 0, 1], &t, 2).unwrap(), vec![0, 0, -1]);
        assert_eq!(transport(&[0, 0, -1], &t, 2).unwrap(), vec![0, 0, 1]);
        assert_eq!(transport(&[-1, 0, 0], &t, 2).unwrap(), vec![-1, 0, 0]);
    }

    #[test]
    fn transport_rejects_bad_input() {
        let t = Triangulation::new_standard(Surface::new(0, 3).unwrap()).unwrap();
        assert!(matches!(transport(&[0, 0], &t, 0), Err(Error::InvalidCoordinates(_))));
        let folded = t.flipped(0).unwrap();
        assert!(matches!(transport(&[1, 0, 0], &folded, 1), Err(Error::NotFlippable { .. })));
    }

    #[test]
    fn flatten_half_in_one_flip() {
        let f = flatten(&torus_arc(1, 2)).unwrap();
        assert_eq!(f.word.len(), 1);
        let f = flatten(&ArcClass::standard_arc(torus(), 1).unwrap()).unwrap();
        assert!(f.word.is_empty());
        assert_eq!(f.slot, 1);
    }

    #[test]
    fn torus_intersections_follow_determinants() {
        let zero = torus_arc(0, 1);
        assert_eq!(intersection(&zero, &torus_arc(1, 0)).unwrap().0, 0);
        assert_eq!(intersection(&zero, &torus_arc(1, 1)).unwrap().0, 0);
        assert_eq!(intersection(&zero, &torus_arc(2, 1)).unwrap().0, 1);
        assert_eq!(intersection(&zero, &zero).unwrap().0, 0);
        assert_eq!(intersection(&torus_arc(1, 2), &torus_arc(-1, 1)).unwrap().0, 2);
    }

    #[test]
    fn pants_self_arc_crosses_the_opposite_seam_only() {
        let s = Surface::new(0, 3).unwrap();
        // the seam opposite to puncture 2 is arc 0; its flip is the self-arc at puncture 2
        let self_arc = ArcClass::new(s, vec![1, 0, 0]).unwrap();
        let seams: Vec<_> = (0..3).map(|k| ArcClass::standard_arc(s, k).unwrap()).collect();
        assert!(!disjoint(&self_arc, &seams[0]).unwrap());
        assert!(disjoint(&self_arc, &seams[1]).unwrap());
        assert!(disjoint(&self_arc, &seams[2]).unwrap());
    }

    #[test]
    fn coordinates_shape() {
        let s = Surface::new(1, 1).unwrap();
        assert!(ArcClass::new(s, vec![0, 0, 0]).is_err());
        assert!(ArcClass::new(s, vec![-1, -1, 0]).is_err());
        assert!(ArcClass::new(s, vec![-1, 2, 0]).is_err());
        assert!(ArcClass::new(s, vec![1, 0]).is_err());
        assert!(ArcClass::new(s, vec![0, 1, 0]).is_ok());
    }

    #[test]
    fn slope_parser() {
        assert_eq!(parse("2/-3").unwrap(), (-2, 3));
        assert!(parse("2/4").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = torus_arc(3, 5);
        assert_eq!(ArcClass::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn realize_collects_disjoint_arcs() {
        let arcs = [torus_arc(2, 1), torus_arc(3, 2), torus_arc(1, 1)];
        let m = realize(&arcs).unwrap();
        for a in &arcs {
            assert!(m.slot_of(a).is_some());
        }
    }
}

