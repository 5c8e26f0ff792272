//! Local arc patterns inside a triangulation, each with the auxiliary arc
//! obtained by one flip.

use serde::Serialize;

use crate::arc::ArcClass;
use crate::error::{Error, Result};
use crate::flip::MarkedTriangulation;
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "configuration", rename_all = "snake_case")]
pub enum Configuration {
    /// Embedded triangles `(a, b, e)` and `(c, d, e)`; flipping `e` to `f`
    /// leaves the embedded triangle `(a, c, f)`.
    Quadrilateral { a: ArcClass, b: ArcClass, c: ArcClass, d: ArcClass, e: ArcClass, f: ArcClass },
    /// Embedded triangles `(a, b, c)` and `(b, c, d)`; flipping `b` to `e`
    /// folds `c` inside the loop `e` and leaves the embedded triangle `(a, d, e)`.
    FoldablePair { a: ArcClass, b: ArcClass, c: ArcClass, d: ArcClass, e: ArcClass },
    /// Embedded triangles `(a, b, c)` and `(b, c, d)`; flipping `b` to `e`
    /// leaves the embedded triangles `(a, c, e)` and `(c, d, e)`.
    CrossedPair { a: ArcClass, b: ArcClass, c: ArcClass, d: ArcClass, e: ArcClass },
    None,
}

impl Configuration {
    pub fn name(&self) -> &'static str {
        match self {
            Configuration::Quadrilateral { .. } => "quadrilateral",
            Configuration::FoldablePair { .. } => "foldable_pair",
            Configuration::CrossedPair { .. } => "crossed_pair",
            Configuration::None => "none",
        }
    }
}

fn embedded_sides(t: &Triangulation, i: usize) -> Option<[usize; 3]> {
    let s = t.triangles()[i];
    let arcs = [s[0].arc, s[1].arc, s[2].arc];
    (arcs[0] != arcs[1] && arcs[1] != arcs[2] && arcs[0] != arcs[2]).then_some(arcs)
}

/// Matches the arc set against the known local patterns of `m`.
pub fn detect_configuration(m: &MarkedTriangulation, arcs: &[ArcClass]) -> Result<Configuration> {
    let mut slots = Vec::with_capacity(arcs.len());
    for c in arcs {
        let s = m.slot_of(c).ok_or(Error::NotRealizable)?;
        if slots.contains(&s) {
            return Err(Error::Precondition(format!("class {c} listed twice")));
        }
        slots.push(s);
    }
    let t = m.triangulation();
    let inside = |a: usize| slots.contains(&a);
    // embedded triangles spanned by the arcs
    let tris: Vec<[usize; 3]> = (0..t.triangle_count())
        .filter_map(|i| embedded_sides(t, i))
        .filter(|s| s.iter().all(|&a| inside(a)))
        .collect();
    let class = |a: usize| m.class(a).clone();

    match slots.len() {
        5 => {
            for &e in &slots {
                if !t.is_flippable(e)? {
                    continue;
                }
                let (t1, t2) = t.adjacent_triangles(e)?;
                if embedded_sides(t, t1).is_none() || embedded_sides(t, t2).is_none() {
                    continue;
                }
                // triangles (e, x, y) and (e, z, w); flipping gives (f, y, z) and (f, w, x)
                let [x, y, z, w] = t.quadrilateral(e)?;
                let mut four = [x, y, z, w];
                four.sort_unstable();
                if four.windows(2).any(|p| p[0] == p[1]) || !four.iter().all(|&a| inside(a)) {
                    continue;
                }
                let f = m.flip(e)?.class(e).clone();
                return Ok(Configuration::Quadrilateral { a: class(y), b: class(x), c: class(z), d: class(w), e: class(e), f });
            }
            Ok(Configuration::None)
        }
        4 => {
            let mut fallback = None;
            for (i, p) in tris.iter().enumerate() {
                for q in &tris[i + 1..] {
                    let shared: Vec<usize> = p.iter().copied().filter(|a| q.contains(a)).collect();
                    if shared.len() != 2 {
                        continue;
                    }
                    let a = *p.iter().find(|x| !shared.contains(x)).expect("third side");
                    let d = *q.iter().find(|x| !shared.contains(x)).expect("third side");
                    for (b, c) in [(shared[0], shared[1]), (shared[1], shared[0])] {
                        let flipped = m.flip(b)?;
                        let ft = flipped.triangulation();
                        let folded = (0..ft.triangle_count()).any(|k| embedded_sides(ft, k).is_none() && ft.find_triangle([c, c, b]) == Some(k));
                        let cfg_e = flipped.class(b).clone();
                        if folded {
                            if ft.find_triangle([a, d, b]).is_some() && fallback.is_none() {
                                fallback = Some(Configuration::FoldablePair { a: class(a), b: class(b), c: class(c), d: class(d), e: cfg_e });
                            }
                        } else if ft.find_triangle([a, c, b]).is_some() && ft.find_triangle([c, d, b]).is_some() {
                            return Ok(Configuration::CrossedPair { a: class(a), b: class(b), c: class(c), d: class(d), e: cfg_e });
                        }
                    }
                }
            }
            Ok(fallback.unwrap_or(Configuration::None))
        }
        _ => Ok(Configuration::None),
    }
}
