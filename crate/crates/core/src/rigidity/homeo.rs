//! Mapping classes as flip-and-relabel recipes.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arc::{self, farey, ArcClass};
use crate::error::{Error, Result};
use crate::flip::FlipWord;
use crate::iso::{find_isomorphism, isomorphisms, Isomorphism, Orientation};
use crate::surface::Surface;
use crate::triangulation::Triangulation;

/// A homeomorphism `h` given by a flip word `w` from the standard
/// triangulation `T0` and an isomorphism `T_w -> T0`; `h` sends `T_w` onto `T0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialHomeo {
    surface: Surface,
    word: FlipWord,
    iso: Isomorphism,
}

#[derive(Serialize, Deserialize)]
struct HomeoFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    surface: Option<Surface>,
    flip_word: Vec<usize>,
    arc_relabel: Vec<usize>,
    triangle_relabel: Vec<usize>,
    orientation: Orientation,
}

impl CombinatorialHomeo {
    pub fn new(surface: Surface, word: FlipWord, iso: Isomorphism) -> Result<Self> {
        let h = CombinatorialHomeo { surface, word, iso };
        h.validate()?;
        Ok(h)
    }

    /// Finds the isomorphism `T_w -> T0` with the given arc map and orientation.
    pub fn from_arc_map(surface: Surface, word: FlipWord, arc_map: &[usize], orientation: Option<Orientation>) -> Result<Self> {
        let t0 = arc::standard(surface)?;
        let tw = word.apply(&t0)?;
        if arc_map.len() != tw.arc_count() {
            return Err(Error::Precondition(format!("arc map has {} entries, expected {}", arc_map.len(), tw.arc_count())));
        }
        let iso = find_isomorphism(&tw, &t0, Some(arc_map), orientation)
            .ok_or_else(|| Error::Precondition("arc map is not induced by an isomorphism".into()))?;
        Ok(CombinatorialHomeo { surface, word, iso })
    }

    pub fn identity(surface: Surface) -> Result<Self> {
        let n = surface.arc_count();
        CombinatorialHomeo::from_arc_map(surface, FlipWord::new(), &(0..n).collect::<Vec<_>>(), Some(Orientation::Preserving))
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn word(&self) -> &FlipWord {
        &self.word
    }

    pub fn isomorphism(&self) -> &Isomorphism {
        &self.iso
    }

    pub fn orientation(&self) -> Orientation {
        self.iso.orientation
    }

    /// The triangulation `T_w` that `h` carries onto the standard one.
    pub fn source(&self) -> Result<Triangulation> {
        self.word.apply(&arc::standard(self.surface)?)
    }

    pub fn validate(&self) -> Result<()> {
        let t0 = arc::standard(self.surface)?;
        let tw = self.word.apply(&t0)?;
        if self.iso.is_valid(&tw, &t0) {
            Ok(())
        } else {
            Err(Error::Precondition("relabelling is not an isomorphism onto the standard triangulation".into()))
        }
    }

    /// Image of an arc class: carry it to `T_w`, then rename arcs by the isomorphism.
    pub fn apply(&self, c: &ArcClass) -> Result<ArcClass> {
        self.surface.require_same(&c.base())?;
        let (_, x) = arc::transport_along(&arc::standard(self.surface)?, &self.word, c.coords())?;
        let mut y = vec![0; x.len()];
        for (j, &v) in x.iter().enumerate() {
            y[self.iso.arc_map[j]] = v;
        }
        Ok(ArcClass::from_raw(self.surface, y))
    }

    pub fn inverse(&self) -> Result<Self> {
        // h maps the path T0 -> T_w onto a path h(T0) -> T0; walk it backwards
        let word = FlipWord(self.word.iter().rev().map(|&e| self.iso.arc_map[e]).collect());
        let mut inv = vec![0; self.iso.arc_map.len()];
        for (j, &k) in self.iso.arc_map.iter().enumerate() {
            inv[k] = j;
        }
        CombinatorialHomeo::from_arc_map(self.surface, word, &inv, Some(self.orientation()))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &CombinatorialHomeo) -> Result<Self> {
        self.surface.require_same(&other.surface)?;
        let n = self.iso.arc_map.len();
        let mut other_inv = vec![0; n];
        for (j, &k) in other.iso.arc_map.iter().enumerate() {
            other_inv[k] = j;
        }
        let word = other.word.then(&FlipWord(self.word.iter().map(|&e| other_inv[e]).collect()));
        let arc_map: Vec<usize> = (0..n).map(|j| self.iso.arc_map[other.iso.arc_map[j]]).collect();
        let o = self.orientation().compose(other.orientation());
        CombinatorialHomeo::from_arc_map(self.surface, word, &arc_map, Some(o))
    }

    /// A random mapping class: a random flip walk of at most `max_len` steps
    /// is cut at a triangulation combinatorially equivalent to the standard
    /// one, and a random equivalence is chosen.
    pub fn random<R: Rng + ?Sized>(surface: Surface, max_len: usize, rng: &mut R) -> Result<Self> {
        let t0 = arc::standard(surface)?;
        let mut best: Vec<(FlipWord, Vec<Isomorphism>)> = Vec::new();
        for _ in 0..64 {
            let mut t = t0.clone();
            let mut word = Vec::new();
            let len = rng.gen_range(0..=max_len);
            let mut hits = Vec::new();
            for _ in 0..len {
                let slots: Vec<usize> = (0..t.arc_count()).filter(|&e| t.is_flippable(e).unwrap_or(false)).collect();
                let e = *slots.choose(rng).expect("some arc is flippable");
                t = t.flipped(e)?;
                word.push(e);
                let isos = isomorphisms(&t, &t0, None, None);
                if !isos.is_empty() {
                    hits.push((FlipWord(word.clone()), isos));
                }
            }
            if !hits.is_empty() {
                best = hits;
                break;
            }
        }
        if best.is_empty() {
            best.push((FlipWord::new(), isomorphisms(&t0, &t0, None, None)));
        }
        let (word, isos) = best.choose(rng).expect("non-empty").clone();
        let iso = isos.choose(rng).expect("identity at least").clone();
        CombinatorialHomeo::new(surface, word, iso)
    }

    /// A symmetry of the standard triangulation inducing the given
    /// permutation of punctures.
    pub fn from_puncture_permutation(surface: Surface, perm: &[usize]) -> Result<Self> {
        let t0 = arc::standard(surface)?;
        for iso in isomorphisms(&t0, &t0, None, None) {
            let ok = (0..t0.triangle_count()).all(|t| {
                let u = iso.triangle_map[t];
                (0..3).all(|i| {
                    let side = t0.triangles()[t][i];
                    let img = iso.image_side(side);
                    let (uu, q) = t0.locate(img);
                    debug_assert_eq!(uu, u);
                    // the tail corner of a side goes to the tail or head corner
                    // of the image side depending on orientation
                    let q = if iso.orientation == Orientation::Preserving { q } else { (q + 1) % 3 };
                    perm.get(t0.corner_puncture(t, i)) == Some(&t0.corner_puncture(uu, q))
                })
            });
            if ok {
                return CombinatorialHomeo::new(surface, FlipWord::new(), iso);
            }
        }
        Err(Error::Precondition(format!("no symmetry of the standard triangulation permutes punctures as {perm:?}")))
    }

    /// The mapping class of the once-punctured torus acting on slopes by the
    /// integer matrix `[[a, b], [c, d]]`, `p/q -> (ap + bq)/(cp + dq)`.
    pub fn from_matrix(m: [[i64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() != 1 {
            return Err(Error::Precondition(format!("matrix {m:?} is not invertible over the integers")));
        }
        // inverse matrix sends base slopes to the slopes of T_w
        let inv = [[m[1][1] * det, -m[0][1] * det], [-m[1][0] * det, m[0][0] * det]];
        let slopes: Vec<farey::Slope> = farey::BASE_SLOPES
            .iter()
            .map(|&(p, q)| farey::normalize((inv[0][0] * p + inv[0][1] * q, inv[1][0] * p + inv[1][1] * q)))
            .collect();
        let classes: Vec<ArcClass> = slopes.iter().map(|&s| farey::arc_from_slope(s)).collect::<Result<_>>()?;
        let marked = arc::realize(&classes)?;
        let mut arc_map = vec![0; 3];
        for (j, c) in classes.iter().enumerate() {
            arc_map[marked.slot_of(c).expect("realised")] = j;
        }
        let orientation = if det == 1 { Orientation::Preserving } else { Orientation::Reversing };
        CombinatorialHomeo::from_arc_map(farey::torus(), marked.word().clone(), &arc_map, Some(orientation))
    }

    /// Twist about the curve of slope `1/0`.
    pub fn torus_twist_a() -> Result<Self> {
        CombinatorialHomeo::from_matrix([[1, 1], [0, 1]])
    }

    /// Twist about the curve of slope `0/1`.
    pub fn torus_twist_b() -> Result<Self> {
        CombinatorialHomeo::from_matrix([[1, 0], [-1, 1]])
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HomeoFile {
            surface: Some(self.surface),
            flip_word: self.word.0.clone(),
            arc_relabel: self.iso.arc_map.clone(),
            triangle_relabel: self.iso.triangle_map.clone(),
            orientation: self.iso.orientation,
        })
        .expect("homeo serializes")
    }

    /// Parses a homeo file; `surface` is used when the file has none.
    pub fn from_json(text: &str, surface: Option<Surface>) -> Result<Self> {
        let f: HomeoFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let surface = f.surface.or(surface).ok_or_else(|| Error::Parse("homeo file names no surface".into()))?;
        let h = CombinatorialHomeo::from_arc_map(surface, FlipWord(f.flip_word), &f.arc_relabel, Some(f.orientation))?;
        if h.iso.triangle_map != f.triangle_relabel {
            // a different triangle map is only possible for another valid isomorphism
            let tw = h.source()?;
            let t0 = arc::standard(surface)?;
            let alt = isomorphisms(&tw, &t0, Some(&f.arc_relabel), Some(f.orientation))
                .into_iter()
                .find(|i| i.triangle_map == f.triangle_relabel)
                .ok_or_else(|| Error::Parse("triangle relabelling does not match the arc relabelling".into()))?;
            return CombinatorialHomeo::new(surface, h.word, alt);
        }
        Ok(h)
    }
}
