use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;

use super::{ArcId, LinkDiagram};
use crate::error::{Error, Result};

/// A vertex of the cube of resolutions, one bit per crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    bits: u32,
    len: usize,
}

impl Vertex {
    pub const MAX_LEN: usize = 32;

    pub fn new(bits: u32, len: usize) -> Self {
        assert!(len <= Self::MAX_LEN);
        debug_assert!(len == 32 || bits >> len == 0);
        Vertex { bits, len }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = 0u32;
        for (i, b) in bits.iter().enumerate() {
            if *b != 0 {
                v |= 1 << i;
            }
        }
        Vertex::new(v, bits.len())
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bit(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// `|v|`, the number of 1-smoothings.
    pub fn weight(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn with_bit(self, i: usize, b: bool) -> Vertex {
        let bits = if b { self.bits | 1 << i } else { self.bits & !(1 << i) };
        Vertex { bits, len: self.len }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// An edge `{0,1,*}^n` of the cube, stored as its 0-end and the starred slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: Vertex,
    pub star: usize,
}

impl Edge {
    pub fn new(tail: Vertex, star: usize) -> Result<Self> {
        if star >= tail.len() || tail.bit(star) {
            return Err(Error::MalformedEdge(format!("star {star} on vertex {tail}")));
        }
        Ok(Edge { tail, star })
    }

    pub fn head(&self) -> Vertex {
        self.tail.with_bit(self.star, true)
    }

    /// `w(e)`: the number of 1-coordinates after the star.
    pub fn weight_after_star(&self) -> usize {
        (self.tail.bits() >> (self.star + 1)).count_ones() as usize
    }
}

impl FromStr for Edge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        let mut star = None;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                '*' | '⋆' if star.is_none() => {
                    star = Some(i);
                    bits.push(0);
                }
                _ => return Err(Error::MalformedEdge(s.to_string())),
            }
        }
        let star = star.ok_or_else(|| Error::MalformedEdge(s.to_string()))?;
        Edge::new(Vertex::from_bits(&bits), star)
    }
}

/// The circles of one complete resolution.
///
/// Circles are ordered by their smallest arc, which gives every circle an
/// identity that is stable across resolutions sharing that arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedDiagram {
    circles: Vec<Vec<ArcId>>,
    circle_of: BTreeMap<ArcId, usize>,
}

impl ResolvedDiagram {
    pub fn circles(&self) -> &[Vec<ArcId>] {
        &self.circles
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of(&self, arc: ArcId) -> Option<usize> {
        self.circle_of.get(&arc).copied()
    }

    /// Smallest arc of a circle; used as the circle's id.
    pub fn circle_id(&self, idx: usize) -> ArcId {
        self.circles[idx][0]
    }
}

pub fn resolve(d: &LinkDiagram, v: Vertex) -> Result<ResolvedDiagram> {
    if v.len() != d.crossing_count() {
        return Err(Error::VertexLength { expected: d.crossing_count(), got: v.len() });
    }
    let arcs: Vec<ArcId> = d.arcs().into_iter().collect();
    let index = |a: ArcId| arcs.binary_search(&a).expect("arc belongs to the diagram");
    let mut uf = UnionFind::<usize>::new(arcs.len());
    for (i, x) in d.crossings().iter().enumerate() {
        for (p, q) in x.smoothing(v.bit(i)) {
            uf.union(index(x.arcs[p]), index(x.arcs[q]));
        }
    }
    for lp in d.free_loops() {
        for w in lp.windows(2) {
            uf.union(index(w[0]), index(w[1]));
        }
    }
    let mut by_root: BTreeMap<usize, Vec<ArcId>> = BTreeMap::new();
    for (i, a) in arcs.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().push(*a);
    }
    // arcs are visited in increasing order, so each class is already sorted
    let mut circles: Vec<Vec<ArcId>> = by_root.into_values().collect();
    circles.sort();
    let circle_of = circles.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |a| (*a, i))).collect();
    Ok(ResolvedDiagram { circles, circle_of })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergeOrSplit {
    /// Two source circles become one target circle.
    Merge { sources: (usize, usize), target: usize },
    /// One source circle becomes two target circles.
    Split { source: usize, targets: (usize, usize) },
}

/// What the saddle along one cube edge does to the circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeEffect {
    pub kind: MergeOrSplit,
    /// `carry[i]` is the target circle of source circle `i` when untouched.
    pub carry: Vec<Option<usize>>,
}

pub fn edge_effect(d: &LinkDiagram, e: Edge) -> Result<EdgeEffect> {
    if e.tail.len() != d.crossing_count() {
        return Err(Error::MalformedEdge(format!(
            "edge has {} coordinates, diagram has {} crossings",
            e.tail.len(),
            d.crossing_count()
        )));
    }
    let src = resolve(d, e.tail)?;
    let tgt = resolve(d, e.head())?;
    edge_effect_between(d, e.star, &src, &tgt)
}

/// Computes the edge effect from the two cached resolutions at its ends.
pub(crate) fn edge_effect_between(
    d: &LinkDiagram,
    crossing: usize,
    src: &ResolvedDiagram,
    tgt: &ResolvedDiagram,
) -> Result<EdgeEffect> {
    let arcs = d.crossings()[crossing].arcs;
    let s = |a: ArcId| src.circle_of(a).expect("arc in source resolution");
    let t = |a: ArcId| tgt.circle_of(a).expect("arc in target resolution");
    let (s0, s2) = (s(arcs[0]), s(arcs[2]));
    let kind = if s0 != s2 {
        MergeOrSplit::Merge { sources: (s0, s2), target: t(arcs[0]) }
    } else {
        let (t0, t1) = (t(arcs[0]), t(arcs[1]));
        if t0 == t1 {
            return Err(Error::PatternMismatch(format!(
                "crossing {crossing} neither merges nor splits (diagram is not planar)"
            )));
        }
        MergeOrSplit::Split { source: s0, targets: (t0, t1) }
    };
    let carry = src
        .circles()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let touched = match kind {
                MergeOrSplit::Merge { sources, .. } => i == sources.0 || i == sources.1,
                MergeOrSplit::Split { source, .. } => i == source,
            };
            (!touched).then(|| t(c[0]))
        })
        .collect();
    Ok(EdgeEffect { kind, carry })
}
