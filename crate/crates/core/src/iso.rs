//! Isomorphisms of labelled triangulations.
//!
//! An isomorphism sends arcs to arcs and triangles to triangles so that the
//! cyclic side structure is respected, either keeping the positive cyclic
//! order of every triangle (orientation preserving) or reversing all of them.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::triangulation::{Side, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn bit(self) -> u8 {
        match self {
            Orientation::Preserving => 0,
            Orientation::Reversing => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Self {
        if bit & 1 == 0 {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }

    pub fn compose(self, other: Orientation) -> Orientation {
        Orientation::from_bit(self.bit() ^ other.bit())
    }
}

/// A combinatorial isomorphism `src -> dst`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isomorphism {
    /// `arc_map[a]` is the image of arc `a`.
    pub arc_map: Vec<usize>,
    /// Side `(a, c)` maps to side `(arc_map[a], c ^ copy_flip[a] ^ orientation bit)`.
    pub copy_flip: Vec<u8>,
    pub triangle_map: Vec<usize>,
    pub orientation: Orientation,
}

impl Isomorphism {
    pub fn image_side(&self, side: Side) -> Side {
        Side::new(self.arc_map[side.arc], side.copy ^ self.copy_flip[side.arc] ^ self.orientation.bit())
    }

    /// Checks that this is a structure-preserving bijection `src -> dst`.
    pub fn is_valid(&self, src: &Triangulation, dst: &Triangulation) -> bool {
        let n = src.arc_count();
        if src.surface() != dst.surface()
            || self.arc_map.len() != n
            || self.copy_flip.len() != n
            || self.triangle_map.len() != src.triangle_count()
            || !is_permutation(&self.arc_map)
            || !is_permutation(&self.triangle_map)
        {
            return false;
        }
        for (t, tri) in src.triangles().iter().enumerate() {
            let image = tri.map(|s| self.image_side(s));
            let expected = match self.orientation {
                Orientation::Preserving => image,
                Orientation::Reversing => [image[2], image[1], image[0]],
            };
            if !same_cycle(expected, dst.triangles()[self.triangle_map[t]]) {
                return false;
            }
        }
        true
    }
}

fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    for &x in map {
        if x >= map.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn same_cycle(a: [Side; 3], b: [Side; 3]) -> bool {
    (0..3).any(|r| (0..3).all(|k| a[k] == b[(r + k) % 3]))
}

/// Attempts to extend the assignment `seed -> target` with the given orientation
/// to a full isomorphism, optionally forcing the arc map.
fn extend(
    src: &Triangulation,
    dst: &Triangulation,
    seed: Side,
    target: Side,
    orientation: Orientation,
    forced: Option<&[usize]>,
) -> Option<Isomorphism> {
    let n = src.arc_count();
    let o = orientation.bit();
    let sign: isize = if o == 0 { 1 } else { -1 };
    let mut arc_map = vec![usize::MAX; n];
    let mut copy_flip = vec![u8::MAX; n];
    let mut tri_map: Vec<Option<(usize, usize, usize)>> = vec![None; src.triangle_count()];
    let mut used = vec![false; dst.triangle_count()];

    let (t0, p0) = src.locate(seed);
    let (u0, q0) = dst.locate(target);
    let mut queue = VecDeque::new();
    tri_map[t0] = Some((u0, p0, q0));
    used[u0] = true;
    queue.push_back(t0);
    while let Some(t) = queue.pop_front() {
        let (u, p, q) = tri_map[t].unwrap();
        for k in 0..3isize {
            let sp = (p as isize + k).rem_euclid(3) as usize;
            let dq = (q as isize + sign * k).rem_euclid(3) as usize;
            let s = src.triangles()[t][sp];
            let d = dst.triangles()[u][dq];
            let flip = s.copy ^ d.copy ^ o;
            if arc_map[s.arc] == usize::MAX {
                if let Some(f) = forced {
                    if f[s.arc] != d.arc {
                        return None;
                    }
                }
                arc_map[s.arc] = d.arc;
                copy_flip[s.arc] = flip;
            } else if arc_map[s.arc] != d.arc || copy_flip[s.arc] != flip {
                return None;
            }
            let (t2, p2) = src.locate(s.partner());
            let (u2, q2) = dst.locate(d.partner());
            match tri_map[t2] {
                None => {
                    if used[u2] {
                        return None;
                    }
                    used[u2] = true;
                    tri_map[t2] = Some((u2, p2, q2));
                    queue.push_back(t2);
                }
                Some((uu, pp, qq)) => {
                    // positions must agree with the recorded alignment
                    let off = (p2 as isize - pp as isize).rem_euclid(3);
                    let expect = (qq as isize + sign * off).rem_euclid(3) as usize;
                    if uu != u2 || expect != q2 {
                        return None;
                    }
                }
            }
        }
    }
    if tri_map.iter().any(|m| m.is_none()) || arc_map.iter().any(|&a| a == usize::MAX) {
        return None;
    }
    let iso = Isomorphism {
        arc_map,
        copy_flip,
        triangle_map: tri_map.into_iter().map(|m| m.unwrap().0).collect(),
        orientation,
    };
    iso.is_valid(src, dst).then_some(iso)
}

/// All isomorphisms `src -> dst`, optionally restricted to an arc map and an
/// orientation type, in a deterministic order.
pub fn isomorphisms(
    src: &Triangulation,
    dst: &Triangulation,
    forced_arcs: Option<&[usize]>,
    orientation: Option<Orientation>,
) -> Vec<Isomorphism> {
    if src.surface() != dst.surface() || src.arc_count() == 0 {
        return Vec::new();
    }
    let orientations: Vec<Orientation> = match orientation {
        Some(o) => vec![o],
        None => vec![Orientation::Preserving, Orientation::Reversing],
    };
    let seed = Side::new(0, 0);
    let targets: Vec<Side> = match forced_arcs {
        Some(f) => vec![Side::new(f[0], 0), Side::new(f[0], 1)],
        None => (0..dst.arc_count()).flat_map(|a| [Side::new(a, 0), Side::new(a, 1)]).collect(),
    };
    let mut out = Vec::new();
    for &o in &orientations {
        for &target in &targets {
            if let Some(iso) = extend(src, dst, seed, target, o, forced_arcs) {
                if !out.contains(&iso) {
                    out.push(iso);
                }
            }
        }
    }
    out
}

/// The first isomorphism found, if any.
pub fn find_isomorphism(
    src: &Triangulation,
    dst: &Triangulation,
    forced_arcs: Option<&[usize]>,
    orientation: Option<Orientation>,
) -> Option<Isomorphism> {
    isomorphisms(src, dst, forced_arcs, orientation).into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Surface;

    #[test]
    fn identity_is_found() {
        let t = Triangulation::new_standard(Surface::new(1, 2).unwrap()).unwrap();
        let id: Vec<usize> = (0..t.arc_count()).collect();
        let iso = find_isomorphism(&t, &t, Some(&id), Some(Orientation::Preserving)).unwrap();
        assert_eq!(iso.arc_map, id);
        assert!(iso.is_valid(&t, &t));
    }

    #[test]
    fn pants_automorphisms_realise_all_arc_permutations() {
        // every permutation of the three seams is realised, with some orientation
        let t = Triangulation::new_standard(Surface::new(0, 3).unwrap()).unwrap();
        let all = isomorphisms(&t, &t, None, None);
        let mut perms: Vec<Vec<usize>> = all.iter().map(|i| i.arc_map.clone()).collect();
        perms.sort();
        perms.dedup();
        assert_eq!(perms.len(), 6);
    }

    #[test]
    fn torus_automorphisms() {
        let t = Triangulation::new_standard(Surface::new(1, 1).unwrap()).unwrap();
        let all = isomorphisms(&t, &t, None, None);
        // 6 arc permutations, each realised twice (the elliptic involution swaps the triangles)
        assert_eq!(all.len(), 12);
        for iso in &all {
            assert!(iso.is_valid(&t, &t));
        }
    }

    #[test]
    fn forced_map_rejects_non_isomorphism() {
        let t = Triangulation::new_standard(Surface::new(0, 4).unwrap()).unwrap();
        // the identity on arcs with the reversed orientation is not an automorphism here
        let id: Vec<usize> = (0..t.arc_count()).collect();
        assert!(find_isomorphism(&t, &t, Some(&id), Some(Orientation::Reversing)).is_none());
    }
}
