//! Finite pieces of the arc complex.
//!
//! A slice is the full subcomplex spanned by a finite set of arc classes.
//! Edges come from the intersection oracle, so the simplices are exactly the
//! cliques of the 1-skeleton.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde_json::json;

use crate::arc::{self, ArcClass};
use crate::error::{Error, Result};
use crate::flip::{self, BallOptions, FlipBall, MarkedTriangulation};
use crate::surface::Surface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Completeness {
    /// The whole complex.
    Full,
    /// Arc classes of a flip ball of the given radius.
    BallRadius(usize),
    /// An arbitrary finite vertex set.
    Subset,
}

/// A top-dimensional simplex, with a triangulation whose arcs are its vertices.
#[derive(Clone, Debug)]
pub struct MaximalSimplex {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// `None` only for the annulus, whose single arc triangulates nothing.
    pub witness: Option<MarkedTriangulation>,
    /// Flip distance from the ball centre when the witness lies in the ball.
    pub depth: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ArcComplexSlice {
    surface: Surface,
    vertices: Vec<ArcClass>,
    index: HashMap<ArcClass, usize>,
    adjacency: Vec<Vec<bool>>,
    maximal: Vec<MaximalSimplex>,
    maximal_index: HashMap<Vec<usize>, usize>,
    completeness: Completeness,
}

/// Vertex count of a top simplex: the arc count, or 1 for the annulus.
fn top_size(surface: Surface) -> usize {
    if surface.genus == 0 && surface.boundary == 2 {
        1
    } else {
        surface.arc_count()
    }
}

/// The whole arc complex; only the annulus and the pair of pants have finite ones.
pub fn full_complex(surface: Surface) -> Result<ArcComplexSlice> {
    match (surface.genus, surface.boundary) {
        (0, 2) => {
            let v = ArcClass::annulus_arc(surface);
            let mut slice = ArcComplexSlice::empty(surface, Completeness::Full);
            slice.push_vertex(v);
            slice.adjacency = vec![vec![false]];
            slice.add_maximal(MaximalSimplex { vertices: vec![0], witness: None, depth: None });
            Ok(slice)
        }
        (0, 3) => {
            // the three seams, then for each seam the arc replacing it, which
            // winds around the opposite boundary component
            let mut classes = Vec::new();
            for k in 0..3 {
                classes.push(ArcClass::standard_arc(surface, k)?);
            }
            let m = MarkedTriangulation::standard(surface)?;
            for k in 0..3 {
                classes.push(m.flip(k)?.class(k).clone());
            }
            let mut slice = ArcComplexSlice::from_vertices(surface, classes)?;
            slice.completeness = Completeness::Full;
            Ok(slice)
        }
        _ => Err(Error::NotFinite(surface.to_string())),
    }
}

/// Slice on the arc classes of the flip ball around the standard triangulation.
pub fn ball_complex(surface: Surface, radius: usize, cap: usize) -> Result<ArcComplexSlice> {
    ball_complex_around(&MarkedTriangulation::standard(surface)?, BallOptions { radius, cap, threads: None })
}

/// Slice on the arc classes of the flip ball around `center`.
pub fn ball_complex_around(center: &MarkedTriangulation, opts: BallOptions) -> Result<ArcComplexSlice> {
    let ball = flip::ball(center, opts)?;
    slice_of_ball(&ball)
}

pub fn slice_of_ball(ball: &FlipBall) -> Result<ArcComplexSlice> {
    let mut slice = ArcComplexSlice::empty(ball.surface, Completeness::BallRadius(ball.radius));
    for node in &ball.nodes {
        for c in node.marked.classes() {
            if !slice.index.contains_key(c) {
                slice.push_vertex(c.clone());
            }
        }
    }
    slice.adjacency = disjointness_table(&slice.vertices)?;
    for node in &ball.nodes {
        let mut vs: Vec<usize> = node.marked.classes().iter().map(|c| slice.index[c]).collect();
        vs.sort_unstable();
        slice.add_maximal(MaximalSimplex { vertices: vs, witness: Some(node.marked.clone()), depth: Some(node.depth) });
    }
    slice.witness_remaining_cliques()?;
    Ok(slice)
}

fn disjointness_table(vertices: &[ArcClass]) -> Result<Vec<Vec<bool>>> {
    let n = vertices.len();
    let rows: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| if j <= i { Ok(false) } else { arc::disjoint(&vertices[i], &vertices[j]) })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut adj = rows;
    for i in 0..n {
        for j in 0..i {
            adj[i][j] = adj[j][i];
        }
    }
    Ok(adj)
}

impl ArcComplexSlice {
    fn empty(surface: Surface, completeness: Completeness) -> Self {
        ArcComplexSlice {
            surface,
            vertices: Vec::new(),
            index: HashMap::new(),
            adjacency: Vec::new(),
            maximal: Vec::new(),
            maximal_index: HashMap::new(),
            completeness,
        }
    }

    fn push_vertex(&mut self, c: ArcClass) {
        self.index.insert(c.clone(), self.vertices.len());
        self.vertices.push(c);
    }

    fn add_maximal(&mut self, m: MaximalSimplex) {
        if !self.maximal_index.contains_key(&m.vertices) {
            self.maximal_index.insert(m.vertices.clone(), self.maximal.len());
            self.maximal.push(m);
        }
    }

    /// The full subcomplex on the given classes; every top simplex gets a witness.
    pub fn from_vertices(surface: Surface, classes: Vec<ArcClass>) -> Result<Self> {
        surface.require_triangulable()?;
        let mut slice = ArcComplexSlice::empty(surface, Completeness::Subset);
        for c in classes {
            surface.require_same(&c.base())?;
            if !slice.index.contains_key(&c) {
                slice.push_vertex(c);
            }
        }
        slice.adjacency = disjointness_table(&slice.vertices)?;
        slice.witness_remaining_cliques()?;
        Ok(slice)
    }

    // top-size cliques not yet witnessed get a triangulation from `realize`
    fn witness_remaining_cliques(&mut self) -> Result<()> {
        let k = top_size(self.surface);
        let mut found = Vec::new();
        self.cliques_of_size(k, &mut found);
        for vs in found {
            if self.maximal_index.contains_key(&vs) {
                continue;
            }
            let classes: Vec<ArcClass> = vs.iter().map(|&i| self.vertices[i].clone()).collect();
            let m = arc::realize(&classes)?;
            self.add_maximal(MaximalSimplex { vertices: vs, witness: Some(m), depth: None });
        }
        let mut order: Vec<usize> = (0..self.maximal.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&self.maximal[a], &self.maximal[b]);
            x.depth.unwrap_or(usize::MAX).cmp(&y.depth.unwrap_or(usize::MAX)).then(a.cmp(&b))
        });
        let maximal: Vec<MaximalSimplex> = order.iter().map(|&i| self.maximal[i].clone()).collect();
        self.maximal_index = maximal.iter().enumerate().map(|(i, m)| (m.vertices.clone(), i)).collect();
        self.maximal = maximal;
        Ok(())
    }

    fn cliques_of_size(&self, k: usize, out: &mut Vec<Vec<usize>>) {
        let mut cur = Vec::new();
        self.extend_cliques(0, k, &mut cur, out, &mut |_| {});
    }

    fn extend_cliques(
        &self,
        start: usize,
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if !cur.is_empty() {
            visit(cur);
        }
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..self.vertices.len() {
            if cur.iter().all(|&u| self.adjacency[u][v]) {
                cur.push(v);
                self.extend_cliques(v + 1, k, cur, out, visit);
                cur.pop();
            }
        }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn vertices(&self) -> &[ArcClass] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &ArcClass {
        &self.vertices[i]
    }

    pub fn index_of(&self, c: &ArcClass) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.adjacency[i][j]).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacency[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All simplices (non-empty cliques), in lexicographic order.
    pub fn simplices(&self) -> Vec<Vec<usize>> {
        let mut all = Vec::new();
        let mut sink = Vec::new();
        let mut cur = Vec::new();
        let k = top_size(self.surface);
        self.extend_cliques(0, k, &mut cur, &mut sink, &mut |s| all.push(s.to_vec()));
        all
    }

    /// Simplices with `dim + 1` vertices.
    pub fn simplices_of_dim(&self, dim: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.cliques_of_size(dim + 1, &mut out);
        out
    }

    pub fn is_simplex(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(a, &u)| vs[a + 1..].iter().all(|&v| u != v && self.adjacency[u][v]))
    }

    pub fn maximal_simplices(&self) -> &[MaximalSimplex] {
        &self.maximal
    }

    /// Index of the top simplex with these vertices, in any order.
    pub fn maximal_of(&self, vs: &[usize]) -> Option<usize> {
        let mut key = vs.to_vec();
        key.sort_unstable();
        self.maximal_index.get(&key).copied()
    }

    /// Index of the top simplex made of these classes.
    pub fn maximal_of_classes(&self, classes: &[ArcClass]) -> Option<usize> {
        let vs: Option<Vec<usize>> = classes.iter().map(|c| self.index_of(c)).collect();
        self.maximal_of(&vs?)
    }

    /// Top simplices sharing all but one vertex with `m`.
    pub fn maximal_neighbours(&self, m: usize) -> Vec<usize> {
        let a = &self.maximal[m].vertices;
        (0..self.maximal.len())
            .filter(|&o| o != m && shared(a, &self.maximal[o].vertices) + 1 == a.len())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let completeness = match self.completeness {
            Completeness::Full => json!("full"),
            Completeness::BallRadius(r) => json!({"ball_radius": r}),
            Completeness::Subset => json!("subset"),
        };
        let maximal: Vec<_> = self
            .maximal
            .iter()
            .map(|m| {
                json!({
                    "vertices": m.vertices,
                    "depth": m.depth,
                    "witness": m.witness.as_ref().map(|w| json!({
                        "flip_word": w.word(),
                        "triangulation": w.triangulation().to_data(),
                        "arcs": w.classes().iter().map(|c| self.index_of(c)).collect::<Vec<_>>(),
                    })),
                })
            })
            .collect();
        json!({
            "surface": self.surface,
            "completeness": completeness,
            "vertices": self.vertices.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
            "edges": self.edges(),
            "simplex_count": self.simplices().len(),
            "maximal_simplices": maximal,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph arcs {\n");
        for (i, c) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{c}\"];\n"));
        }
        for (i, j) in self.edges() {
            s.push_str(&format!("  v{i} -- v{j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn shared(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Top simplices from `from` to `to`, consecutive ones sharing a codimension-1
/// face, shortest within the slice.
pub fn maximal_simplex_chain(slice: &ArcComplexSlice, from: usize, to: usize) -> Result<Vec<usize>> {
    let n = slice.maximal.len();
    for &i in &[from, to] {
        if i >= n {
            return Err(Error::IndexOutOfRange { what: "maximal simplex", index: i, len: n });
        }
    }
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(m) = queue.pop_front() {
        if m == to {
            let mut chain = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                chain.push(cur);
            }
            chain.reverse();
            return Ok(chain);
        }
        for o in slice.maximal_neighbours(m) {
            if parent[o] == usize::MAX {
                parent[o] = m;
                queue.push_back(o);
            }
        }
    }
    Err(Error::NotConnectedWithinSlice)
}

/// A permutation of slice vertices preserving simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexAutomorphism {
    pub perm: Vec<usize>,
}

impl ComplexAutomorphism {
    pub fn identity(n: usize) -> Self {
        ComplexAutomorphism { perm: (0..n).collect() }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &ComplexAutomorphism) -> Self {
        ComplexAutomorphism { perm: other.perm.iter().map(|&v| self.perm[v]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        ComplexAutomorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn order(&self) -> usize {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = self.compose(&g);
            k += 1;
        }
        k
    }
}

/// Every simplex-preserving vertex permutation of the slice, sorted.
///
/// Searches for automorphisms of the 1-skeleton by backtracking, then checks
/// that the top simplices are permuted among themselves.
pub fn automorphisms(slice: &ArcComplexSlice, cap: usize) -> Result<Vec<ComplexAutomorphism>> {
    let n = slice.len();
    let degree: Vec<usize> = (0..n).map(|i| slice.neighbours(i).len()).collect();
    // visit vertices in breadth-first order so that constraints bite early
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in slice.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(slice, &order, &degree, 0, &mut image, &mut used, &mut out, cap)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    slice: &ArcComplexSlice,
    order: &[usize],
    degree: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<ComplexAutomorphism>,
    cap: usize,
) -> Result<()> {
    if depth == order.len() {
        let g = ComplexAutomorphism { perm: image.clone() };
        if preserves_maximal(slice, &g) {
            if out.len() >= cap {
                return Err(Error::ResourceLimit { cap });
            }
            out.push(g);
        }
        return Ok(());
    }
    let v = order[depth];
    for w in 0..slice.len() {
        if used[w] || degree[w] != degree[v] {
            continue;
        }
        let ok = order[..depth].iter().all(|&u| slice.adjacent(u, v) == slice.adjacent(image[u], w));
        if !ok {
            continue;
        }
        image[v] = w;
        used[w] = true;
        search(slice, order, degree, depth + 1, image, used, out, cap)?;
        used[w] = false;
        image[v] = usize::MAX;
    }
    Ok(())
}

fn preserves_maximal(slice: &ArcComplexSlice, g: &ComplexAutomorphism) -> bool {
    slice.maximal.iter().all(|m| {
        let img: Vec<usize> = m.vertices.iter().map(|&v| g.perm[v]).collect();
        slice.maximal_of(&img).is_some()
    })
}

/// Whether adjacent vertices have disjoint (or equal) images.
pub fn is_simplicial(domain: &ArcComplexSlice, images: &[Option<ArcClass>]) -> Result<bool> {
    let images = defined(domain, images)?;
    let edges = domain.edges();
    let bad = edges
        .par_iter()
        .map(|&(i, j)| arc::disjoint(images[i], images[j]).map(|d| !d))
        .collect::<Result<Vec<bool>>>()?;
    Ok(!bad.into_iter().any(|b| b))
}

pub fn is_injective(domain: &ArcComplexSlice, images: &[Option<ArcClass>]) -> Result<bool> {
    let images = defined(domain, images)?;
    let mut sorted: Vec<&ArcClass> = images.clone();
    sorted.sort();
    Ok(sorted.windows(2).all(|w| w[0] != w[1]))
}

fn defined<'a>(domain: &ArcComplexSlice, images: &'a [Option<ArcClass>]) -> Result<Vec<&'a ArcClass>> {
    (0..domain.len())
        .map(|i| images.get(i).and_then(|c| c.as_ref()).ok_or(Error::UndefinedVertex(i)))
        .collect()
}
