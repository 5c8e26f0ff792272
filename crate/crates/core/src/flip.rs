//! Flips, flip words and the flip graph.
//!
//! A vertex of the flip graph is a triangulation up to isotopy, that is a set
//! of arc classes. [`MarkedTriangulation`] tracks a labelled triangulation
//! together with the classes of its arcs, so vertices can be compared across
//! different labellings.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arc::{self, ArcClass};
use crate::error::{Error, Result};
use crate::surface::Surface;
use crate::triangulation::Triangulation;

/// Default bound on the number of explored flip-graph vertices.
pub const DEFAULT_CAP: usize = 1_000_000;

pub fn is_flippable(t: &Triangulation, arc: usize) -> Result<bool> {
    t.is_flippable(arc)
}

/// Flips `arc`; flipping the same label twice restores `t`.
pub fn flip(t: &Triangulation, arc: usize) -> Result<Triangulation> {
    t.flipped(arc)
}

/// A sequence of arc labels to flip in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlipWord(pub Vec<usize>);

impl FlipWord {
    pub fn new() -> Self {
        FlipWord(Vec::new())
    }

    /// Parses a comma or space separated list such as `"0,2,1"`.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad flip label {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(FlipWord)
    }

    pub fn reversed(&self) -> Self {
        FlipWord(self.0.iter().rev().copied().collect())
    }

    pub fn then(&self, other: &FlipWord) -> Self {
        FlipWord(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// Applies the word to `t`.
    pub fn apply(&self, t: &Triangulation) -> Result<Triangulation> {
        let mut cur = t.clone();
        for &e in &self.0 {
            cur = cur.flipped(e)?;
        }
        Ok(cur)
    }
}

impl Deref for FlipWord {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for FlipWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A labelled triangulation reached from the standard one by a flip word,
/// with the class of every arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedTriangulation {
    tri: Triangulation,
    word: FlipWord,
    // row j: coordinates of standard arc j relative to `tri`
    rows: Vec<Vec<i64>>,
    classes: Vec<ArcClass>,
}

/// Key of a flip-graph vertex: its arc classes in sorted order.
pub type VertexKey = Vec<ArcClass>;

impl MarkedTriangulation {
    pub fn standard(surface: Surface) -> Result<Self> {
        let tri = arc::standard(surface)?;
        let n = tri.arc_count();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut r = vec![0; n];
                r[j] = -1;
                r
            })
            .collect();
        let classes = columns(surface, &rows);
        Ok(MarkedTriangulation { tri, word: FlipWord::new(), rows, classes })
    }

    /// The standard triangulation followed by `word`.
    pub fn from_word(surface: Surface, word: &FlipWord) -> Result<Self> {
        MarkedTriangulation::standard(surface)?.apply(word)
    }

    pub fn surface(&self) -> Surface {
        self.tri.surface()
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    /// Flip word from the standard triangulation.
    pub fn word(&self) -> &FlipWord {
        &self.word
    }

    pub fn class(&self, slot: usize) -> &ArcClass {
        &self.classes[slot]
    }

    pub fn classes(&self) -> &[ArcClass] {
        &self.classes
    }

    pub fn slot_of(&self, class: &ArcClass) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn key(&self) -> VertexKey {
        let mut k = self.classes.clone();
        k.sort();
        k
    }

    pub fn flip(&self, slot: usize) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| arc::transport(r, &self.tri, slot))
            .collect::<Result<Vec<_>>>()?;
        let tri = self.tri.flipped(slot)?;
        let mut word = self.word.clone();
        word.0.push(slot);
        let classes = columns(self.surface(), &rows);
        Ok(MarkedTriangulation { tri, word, rows, classes })
    }

    pub fn apply(&self, word: &FlipWord) -> Result<Self> {
        let mut m = self.clone();
        for &e in word.iter() {
            m = m.flip(e)?;
        }
        Ok(m)
    }

    /// Coordinates of `class` relative to this triangulation.
    pub fn coordinates_of(&self, class: &ArcClass) -> Result<Vec<i64>> {
        self.surface().require_same(&class.base())?;
        if let Some(k) = self.slot_of(class) {
            let mut x = vec![0; self.classes.len()];
            x[k] = -1;
            return Ok(x);
        }
        let (_, x) = arc::transport_along(&arc::standard(self.surface())?, &self.word, class.coords())?;
        Ok(x)
    }

    /// Flippable slots in increasing order.
    pub fn flippable_slots(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&e| self.tri.is_flippable(e).unwrap_or(false)).collect()
    }
}

fn columns(surface: Surface, rows: &[Vec<i64>]) -> Vec<ArcClass> {
    let n = rows.len();
    (0..n).map(|k| ArcClass::from_raw(surface, (0..n).map(|j| rows[j][k]).collect())).collect()
}

/// A vertex of a flip ball.
#[derive(Clone, Debug)]
pub struct BallNode {
    pub marked: MarkedTriangulation,
    pub depth: usize,
}

/// A flip between two ball vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub removed: ArcClass,
    pub added: ArcClass,
}

/// The ball of given radius around a triangulation in the flip graph.
#[derive(Clone, Debug)]
pub struct FlipBall {
    pub surface: Surface,
    pub radius: usize,
    pub nodes: Vec<BallNode>,
    pub edges: Vec<BallEdge>,
    index: HashMap<VertexKey, usize>,
}

/// Options for [`ball`].
#[derive(Clone, Copy, Debug)]
pub struct BallOptions {
    pub radius: usize,
    pub cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl BallOptions {
    pub fn radius(radius: usize) -> Self {
        BallOptions { radius, cap: DEFAULT_CAP, threads: None }
    }
}

struct Expansion {
    neighbours: Vec<(usize, MarkedTriangulation, VertexKey)>,
}

fn expand(m: &MarkedTriangulation) -> Result<Expansion> {
    let mut neighbours = Vec::new();
    for e in m.flippable_slots() {
        let n = m.flip(e)?;
        let k = n.key();
        neighbours.push((e, n, k));
    }
    Ok(Expansion { neighbours })
}

/// Breadth-first ball in the flip graph. Node order is deterministic:
/// by depth, then by discovery through increasing flip labels.
pub fn ball(center: &MarkedTriangulation, opts: BallOptions) -> Result<FlipBall> {
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Unsupported(e.to_string()))?;
            pool.install(|| ball_inner(center, opts))
        }
        None => ball_inner(center, opts),
    }
}

fn ball_inner(center: &MarkedTriangulation, opts: BallOptions) -> Result<FlipBall> {
    let mut nodes = vec![BallNode { marked: center.clone(), depth: 0 }];
    let mut index = HashMap::new();
    index.insert(center.key(), 0usize);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut depth = 0;
    loop {
        let expansions: Vec<Expansion> = frontier
            .par_iter()
            .map(|&i| expand(&nodes[i].marked))
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (&i, ex) in frontier.iter().zip(expansions) {
            for (e, m, k) in ex.neighbours {
                let j = match index.get(&k) {
                    Some(&j) => j,
                    None if depth < opts.radius => {
                        if nodes.len() >= opts.cap {
                            return Err(Error::ResourceLimit { cap: opts.cap });
                        }
                        let j = nodes.len();
                        index.insert(k, j);
                        nodes.push(BallNode { marked: m.clone(), depth: depth + 1 });
                        next.push(j);
                        j
                    }
                    None => continue,
                };
                // every node is expanded, so each edge is seen from both ends
                if i < j {
                    edges.push(BallEdge {
                        from: i,
                        to: j,
                        removed: nodes[i].marked.class(e).clone(),
                        added: m.class(e).clone(),
                    });
                }
            }
        }
        if depth == opts.radius || next.is_empty() {
            break;
        }
        frontier = next;
        depth += 1;
    }
    edges.sort_by_key(|e| (e.from, e.to));
    edges.dedup_by_key(|e| (e.from, e.to));
    Ok(FlipBall { surface: center.surface(), radius: opts.radius, nodes, edges, index })
}

fn node_label(key: &VertexKey) -> String {
    // FNV-1a over the coordinates, stable across runs
    let mut h: u64 = 0xcbf29ce484222325;
    for c in key {
        for &x in c.coords() {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
    }
    format!("{h:016x}")
}

impl FlipBall {
    pub fn node_of(&self, key: &VertexKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| if e.from == i { Some(e.to) } else if e.to == i { Some(e.from) } else { None })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<_> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                json!({
                    "id": i,
                    "label": node_label(&n.marked.key()),
                    "depth": n.depth,
                    "word": n.marked.word(),
                    "arcs": n.marked.classes().iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| json!({"from": e.from, "to": e.to, "removed": e.removed.coords(), "added": e.added.coords()}))
            .collect();
        json!({"surface": self.surface, "radius": self.radius, "nodes": nodes, "edges": edges})
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph flips {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", node_label(&n.marked.key())));
        }
        for e in &self.edges {
            s.push_str(&format!("  n{} -- n{} [label=\"{} / {}\"];\n", e.from, e.to, e.removed, e.added));
        }
        s.push_str("}\n");
        s
    }
}

type Parents = HashMap<VertexKey, Option<(VertexKey, usize)>>;

struct Search {
    parents: Parents,
    nodes: HashMap<VertexKey, MarkedTriangulation>,
    frontier: Vec<VertexKey>,
}

impl Search {
    fn new(m: &MarkedTriangulation) -> Self {
        let k = m.key();
        let mut parents = HashMap::new();
        parents.insert(k.clone(), None);
        let mut nodes = HashMap::new();
        nodes.insert(k.clone(), m.clone());
        Search { parents, nodes, frontier: vec![k] }
    }

    // expands one layer; returns a key also reached by `other`
    fn step(&mut self, other: &Parents, budget: usize) -> Result<Option<VertexKey>> {
        let mut next = Vec::new();
        for k in std::mem::take(&mut self.frontier) {
            let m = self.nodes[&k].clone();
            for e in m.flippable_slots() {
                let n = m.flip(e)?;
                let nk = n.key();
                if self.parents.contains_key(&nk) {
                    continue;
                }
                self.parents.insert(nk.clone(), Some((k.clone(), e)));
                self.nodes.insert(nk.clone(), n);
                if other.contains_key(&nk) {
                    return Ok(Some(nk));
                }
                if self.parents.len() + other.len() > budget {
                    return Err(Error::ResourceLimit { cap: budget });
                }
                next.push(nk);
            }
        }
        self.frontier = next;
        Ok(None)
    }
}

/// Shortest flip word taking `from` to a triangulation with the same arc
/// classes as `to`, by bidirectional breadth-first search. The word uses the
/// labels of `from`.
pub fn path(from: &MarkedTriangulation, to: &MarkedTriangulation, cap: usize) -> Result<FlipWord> {
    from.surface().require_same(&to.surface())?;
    if from.key() == to.key() {
        return Ok(FlipWord::new());
    }
    let mut fwd = Search::new(from);
    let mut bwd = Search::new(to);
    loop {
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            return Err(Error::Inconclusive);
        }
        let meet = if fwd.frontier.len() <= bwd.frontier.len() {
            fwd.step(&bwd.parents, cap)?
        } else {
            bwd.step(&fwd.parents, cap)?
        };
        if let Some(meet) = meet {
            return splice(from, &fwd, &bwd, &meet, &to.key());
        }
    }
}

fn splice(from: &MarkedTriangulation, fwd: &Search, bwd: &Search, meet: &VertexKey, target: &VertexKey) -> Result<FlipWord> {
    // forward half: labels are those of `from` throughout
    let mut head = Vec::new();
    let mut k = meet.clone();
    while let Some(Some((p, e))) = fwd.parents.get(&k) {
        head.push(*e);
        k = p.clone();
    }
    head.reverse();
    let mut cur = from.apply(&FlipWord(head.clone()))?;
    let mut word = head;
    // backward half: undo each backward flip by removing the class it added
    let mut k = meet.clone();
    while let Some(Some((p, e))) = bwd.parents.get(&k) {
        let added = bwd.nodes[&k].class(*e).clone();
        let slot = cur.slot_of(&added).ok_or(Error::Inconclusive)?;
        cur = cur.flip(slot)?;
        word.push(slot);
        k = p.clone();
    }
    if &cur.key() != target {
        return Err(Error::Inconclusive);
    }
    Ok(FlipWord(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(g: u32, b: u32) -> Surface {
        Surface::new(g, b).unwrap()
    }

    #[test]
    fn word_parse_and_display() {
        let w = FlipWord::parse("0, 2 1").unwrap();
        assert_eq!(w.0, vec![0, 2, 1]);
        assert_eq!(w.to_string(), "0,2,1");
        assert!(FlipWord::parse("a").is_err());
    }

    #[test]
    fn marked_flip_is_involutive() {
        let m = MarkedTriangulation::standard(surf(1, 2)).unwrap();
        for e in m.flippable_slots() {
            let back = m.flip(e).unwrap().flip(e).unwrap();
            assert_eq!(back.triangulation(), m.triangulation());
            assert_eq!(back.classes(), m.classes());
        }
    }

    #[test]
    fn torus_ball_sizes() {
        // the flip graph of the once-punctured torus is the trivalent tree
        let m = MarkedTriangulation::standard(surf(1, 1)).unwrap();
        let b = ball(&m, BallOptions::radius(3)).unwrap();
        assert_eq!(b.len(), 1 + 3 + 6 + 12);
        assert_eq!(b.edges.len(), b.len() - 1);
    }

    #[test]
    fn pants_flip_graph_is_finite() {
        let m = MarkedTriangulation::standard(surf(0, 3)).unwrap();
        let b = ball(&m, BallOptions::radius(10)).unwrap();
        // four triangulations: the standard one and three with a folded triangle
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let m = MarkedTriangulation::standard(surf(1, 2)).unwrap();
        let opts = BallOptions { radius: 4, cap: 10, threads: None };
        assert!(matches!(ball(&m, opts), Err(Error::ResourceLimit { cap: 10 })));
    }

    #[test]
    fn ball_is_deterministic_across_thread_counts() {
        let m = MarkedTriangulation::standard(surf(0, 5)).unwrap();
        let a = ball(&m, BallOptions { radius: 2, cap: DEFAULT_CAP, threads: Some(1) }).unwrap();
        let b = ball(&m, BallOptions { radius: 2, cap: DEFAULT_CAP, threads: Some(4) }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn path_reaches_target() {
        let s = surf(0, 5);
        let a = MarkedTriangulation::standard(s).unwrap();
        let far = a.apply(&FlipWord(vec![0, 3, 5, 1])).unwrap();
        let w = path(&a, &far, DEFAULT_CAP).unwrap();
        assert!(w.len() <= 4);
        assert_eq!(a.apply(&w).unwrap().key(), far.key());
    }
}
