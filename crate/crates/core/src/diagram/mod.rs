//! Oriented link diagrams in PD notation.
//!
//! A crossing `X(a,b,c,d)` lists its four arcs counterclockwise starting at the
//! incoming under-strand, so the under-strand always runs `a -> c`. The
//! over-strand runs `d -> b` at a positive crossing and `b -> d` at a negative
//! one; the sign is therefore a function of the orientation and nothing else.
//!
//! Crossing-free components are kept as free loops. Each free loop is a cyclic
//! sequence of arcs, so that a saddle can name two distinct arcs of one loop.

mod moves;
mod planar;
mod r3;
mod resolve;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use moves::r2_bigon;
pub use moves::{apply_esi, apply_esi_traced, Esi, EsiTrace, R1Variant, R2Variant, R3Variant, TraceKind};
pub use planar::{faces, is_planar};
pub(crate) use resolve::edge_effect_between;
pub use resolve::{edge_effect, resolve, Edge, EdgeEffect, MergeOrSplit, ResolvedDiagram, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub u32);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [ArcId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(arcs: [u32; 4], sign: Sign) -> Self {
        Crossing { arcs: arcs.map(ArcId), sign }
    }

    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 1,
            Sign::Negative => 3,
        }
    }

    /// Slots where an arc ends (enters the crossing).
    pub fn in_slots(&self) -> [usize; 2] {
        [0, self.over_in_slot()]
    }

    /// Slots where an arc starts (leaves the crossing).
    pub fn out_slots(&self) -> [usize; 2] {
        [2, self.over_out_slot()]
    }

    pub fn is_in_slot(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// The out-slot reached by continuing straight through from an in-slot.
    pub fn through(&self, in_slot: usize) -> usize {
        if in_slot == 0 {
            2
        } else {
            self.over_out_slot()
        }
    }

    /// Slot pairs joined by the 0- or 1-smoothing.
    pub fn smoothing(&self, bit: bool) -> [(usize, usize); 2] {
        if bit {
            [(0, 3), (1, 2)]
        } else {
            [(0, 1), (2, 3)]
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X({a},{b},{c},{d})")
    }
}

#[derive(Clone, Debug, Default)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    loops: Vec<Vec<ArcId>>,
    next_id: u32,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.loops == other.loops
    }
}

impl Eq for LinkDiagram {}

impl LinkDiagram {
    pub fn empty() -> Self {
        LinkDiagram { crossings: Vec::new(), loops: Vec::new(), next_id: 1 }
    }

    /// Builds a diagram from already-oriented parts, checking arc incidences.
    pub fn from_parts(crossings: Vec<Crossing>, loops: Vec<Vec<ArcId>>) -> Result<Self> {
        let mut d = LinkDiagram { crossings, loops, next_id: 0 };
        d.canonicalize_loops();
        d.check()?;
        d.next_id = d.max_arc().map_or(1, |a| a.0 + 1);
        Ok(d)
    }

    pub(crate) fn from_parts_unchecked(crossings: Vec<Crossing>, loops: Vec<Vec<ArcId>>, next_id: u32) -> Self {
        let mut d = LinkDiagram { crossings, loops, next_id };
        d.canonicalize_loops();
        d.next_id = d.next_id.max(d.max_arc().map_or(1, |a| a.0 + 1));
        d
    }

    fn canonicalize_loops(&mut self) {
        for lp in &mut self.loops {
            if let Some(pos) = lp.iter().enumerate().min_by_key(|(_, a)| **a).map(|(i, _)| i) {
                lp.rotate_left(pos);
            }
        }
        self.loops.sort();
    }

    fn check(&self) -> Result<()> {
        let mut heads: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut tails: BTreeMap<ArcId, usize> = BTreeMap::new();
        for x in &self.crossings {
            for s in x.in_slots() {
                *heads.entry(x.arcs[s]).or_default() += 1;
            }
            for s in x.out_slots() {
                *tails.entry(x.arcs[s]).or_default() += 1;
            }
        }
        for arc in heads.keys().chain(tails.keys()) {
            let (h, t) = (heads.get(arc).copied().unwrap_or(0), tails.get(arc).copied().unwrap_or(0));
            if h + t != 2 {
                return Err(Error::ArcMultiplicity { arc: arc.0, count: h + t });
            }
            if h != 1 {
                return Err(Error::Orientation(format!("arc {arc} is not traversed head-to-tail")));
            }
        }
        let mut seen = BTreeSet::new();
        for lp in &self.loops {
            if lp.is_empty() {
                return Err(Error::Internal("empty free loop".into()));
            }
            for a in lp {
                if heads.contains_key(a) || !seen.insert(*a) {
                    return Err(Error::ArcMultiplicity { arc: a.0, count: 3 });
                }
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Free loops, each as a cyclic arc sequence starting at its smallest arc.
    pub fn free_loops(&self) -> &[Vec<ArcId>] {
        &self.loops
    }

    pub fn free_loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign == Sign::Negative).count()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.loops.is_empty()
    }

    /// True for a single crossing-free circle.
    pub fn is_unknot_circle(&self) -> bool {
        self.crossings.is_empty() && self.loops.len() == 1
    }

    pub fn arcs(&self) -> BTreeSet<ArcId> {
        let mut s: BTreeSet<ArcId> = self.crossings.iter().flat_map(|x| x.arcs).collect();
        s.extend(self.loops.iter().flatten().copied());
        s
    }

    pub fn max_arc(&self) -> Option<ArcId> {
        self.arcs().into_iter().next_back()
    }

    pub(crate) fn next_id(&self) -> u32 {
        self.next_id
    }

    /// Number of link components.
    pub fn component_count(&self) -> usize {
        let mut visited = BTreeSet::new();
        let mut count = self.loops.len();
        let succ = self.successors();
        for x in &self.crossings {
            for a in x.arcs {
                if visited.contains(&a) {
                    continue;
                }
                count += 1;
                let mut cur = a;
                while visited.insert(cur) {
                    cur = succ[&cur];
                }
            }
        }
        count
    }

    /// For each crossing arc, the arc that follows it along the orientation.
    pub fn successors(&self) -> BTreeMap<ArcId, ArcId> {
        let mut succ = BTreeMap::new();
        for x in &self.crossings {
            for s in x.in_slots() {
                succ.insert(x.arcs[s], x.arcs[x.through(s)]);
            }
        }
        for lp in &self.loops {
            for (i, a) in lp.iter().enumerate() {
                succ.insert(*a, lp[(i + 1) % lp.len()]);
            }
        }
        succ
    }

    /// The same diagram with every component's orientation reversed.
    pub fn reversed(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.arcs;
                Crossing { arcs: [c, d, a, b], sign: x.sign }
            })
            .collect();
        let loops = self.loops.iter().map(|lp| lp.iter().rev().copied().collect()).collect();
        LinkDiagram::from_parts_unchecked(crossings, loops, self.next_id)
    }

    /// The diagram with its crossings reordered so that `order[k]` becomes crossing `k`.
    pub fn with_crossing_order(&self, order: &[usize]) -> LinkDiagram {
        let crossings = order.iter().map(|&i| self.crossings[i]).collect();
        LinkDiagram { crossings, loops: self.loops.clone(), next_id: self.next_id }
    }

    /// Writes the diagram in PD notation; free loops become a single `L<k>` token.
    pub fn to_pd(&self) -> String {
        let mut parts: Vec<String> = self.crossings.iter().map(|x| x.to_string()).collect();
        if !self.loops.is_empty() {
            parts.push(format!("L{}", self.loops.len()));
        }
        parts.join(" ")
    }

    /// Same crossings and arc incidences, and the same number of free loops.
    pub fn is_equivalent(&self, other: &LinkDiagram) -> bool {
        self.crossings == other.crossings && self.loops.len() == other.loops.len()
    }

    /// Circle id of a free loop: its smallest arc.
    pub fn loop_id(lp: &[ArcId]) -> ArcId {
        *lp.iter().min().expect("free loops are nonempty")
    }

    /// Adds `k` free loops with fresh arcs (two arcs each).
    pub fn add_free_loops(&mut self, k: usize) {
        for _ in 0..k {
            let a = ArcId(self.next_id);
            let b = ArcId(self.next_id + 1);
            self.next_id += 2;
            self.loops.push(vec![a, b]);
        }
        self.canonicalize_loops();
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

impl std::str::FromStr for LinkDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

fn parse_token(tok: &str) -> Result<Option<[u32; 4]>> {
    let bad = || Error::MalformedToken(tok.to_string());
    let body = tok
        .strip_prefix('X')
        .and_then(|r| {
            r.strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| r.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        })
        .ok_or_else(bad)?;
    let nums: Vec<u32> = body.split(',').map(|n| n.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?;
    if nums.len() != 4 || nums.contains(&0) {
        return Err(bad());
    }
    Ok(Some([nums[0], nums[1], nums[2], nums[3]]))
}

/// Parses whitespace-separated `X(a,b,c,d)` and `L<k>` tokens.
///
/// The incoming under-strand fixes the direction of every component that
/// passes under somewhere. A component that only ever passes over is oriented
/// so that it enters its lowest-numbered crossing at slot `d`.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut raw = Vec::new();
    let mut free = 0usize;
    for tok in text.split_whitespace() {
        let tok = tok.trim_end_matches(',');
        if let Some(k) = tok.strip_prefix('L') {
            free += k.parse::<usize>().map_err(|_| Error::MalformedToken(tok.to_string()))?;
        } else if let Some(arcs) = parse_token(tok)? {
            raw.push(arcs);
        }
    }

    // occurrences of each arc label
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, arcs) in raw.iter().enumerate() {
        for (p, a) in arcs.iter().enumerate() {
            occ.entry(*a).or_default().push((c, p));
        }
    }
    for (a, v) in &occ {
        if v.len() != 2 {
            return Err(Error::ArcMultiplicity { arc: *a, count: v.len() });
        }
    }

    // 2-colour the slot occurrences: true = the arc ends here (head)
    let n = raw.len();
    let mut head: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
    let mut queue: VecDeque<(usize, usize, bool)> = VecDeque::new();
    for c in 0..n {
        queue.push_back((c, 0, true));
        queue.push_back((c, 2, false));
    }
    let mut next_seed = 0usize;
    loop {
        while let Some((c, p, h)) = queue.pop_front() {
            match head[c][p] {
                Some(v) if v == h => continue,
                Some(_) => {
                    return Err(Error::Orientation(format!(
                        "slot {p} of crossing {c} (arc {}) must be both incoming and outgoing",
                        raw[c][p]
                    )))
                }
                None => head[c][p] = Some(h),
            }
            if p % 2 == 1 {
                queue.push_back((c, 4 - p, !h));
            }
            for &(c2, p2) in &occ[&raw[c][p]] {
                if (c2, p2) != (c, p) {
                    queue.push_back((c2, p2, !h));
                }
            }
        }
        while next_seed < n && head[next_seed][1].is_some() {
            next_seed += 1;
        }
        if next_seed == n {
            break;
        }
        queue.push_back((next_seed, 3, true));
    }

    let crossings = raw
        .iter()
        .zip(&head)
        .map(|(arcs, h)| {
            let sign = if h[3] == Some(true) { Sign::Positive } else { Sign::Negative };
            Crossing::new(*arcs, sign)
        })
        .collect();
    let mut d = LinkDiagram::from_parts(crossings, Vec::new())?;
    d.add_free_loops(free);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hand trace of the three-crossing code used throughout: the under-strand
    /// at each crossing runs a->c with labels increasing, and the over-strand
    /// runs b->d (4->5, 6->1, 2->3), so each crossing has over-vector
    /// east->west against an upward under-vector: all three are negative.
    #[test]
    fn trefoil_signs_by_hand() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.n_minus(), 3);
        assert_eq!(d.n_plus(), 0);
        let mirror = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert_eq!(mirror.n_plus(), 3);
        assert_eq!(mirror.n_minus(), 0);
    }

    #[test]
    fn empty_and_loops() {
        let d = parse_pd("").unwrap();
        assert!(d.is_empty());
        assert_eq!(d.crossing_count(), 0);
        let u = parse_pd("L1").unwrap();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.free_loop_count(), 1);
        assert_eq!(parse_pd("L0").unwrap().free_loop_count(), 0);
        assert_eq!(parse_pd("L2").unwrap().free_loop_count(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_pd("X(1,2,3)"), Err(Error::MalformedToken(_))));
        assert!(matches!(parse_pd("Y(1,2,3,4)"), Err(Error::MalformedToken(_))));
        assert!(matches!(parse_pd("X(1,2,3,4)"), Err(Error::ArcMultiplicity { .. })));
        // arc 1 would be the incoming under-strand at both of its ends
        assert!(matches!(parse_pd("X(1,3,2,4) X(1,4,2,3)"), Err(Error::Orientation(_))));
    }

    #[test]
    fn hopf_and_figure_eight() {
        let hopf = parse_pd("X(4,1,3,2) X(2,3,1,4)").unwrap();
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.n_plus() + hopf.n_minus(), 2);
        assert_eq!(hopf.crossings()[0].sign, hopf.crossings()[1].sign);
        let fig8 = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        assert_eq!(fig8.n_plus(), 2);
        assert_eq!(fig8.n_minus(), 2);
        assert_eq!(fig8.component_count(), 1);
    }

    #[test]
    fn pd_roundtrip() {
        for s in ["", "L1", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "X(1,1,2,2) L2"] {
            let d = parse_pd(s).unwrap();
            let back = parse_pd(&d.to_pd()).unwrap();
            assert!(d.is_equivalent(&back), "{s}");
        }
    }

    #[test]
    fn reversal_keeps_signs() {
        for s in [
            "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
            "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
            "X(4,1,3,2) X(2,3,1,4)",
            "X(1,2,2,1)",
        ] {
            let d = parse_pd(s).unwrap();
            // re-infer orientation from the reversed PD text
            let r = parse_pd(&d.reversed().to_pd()).unwrap();
            let signs: Vec<_> = d.crossings().iter().map(|x| x.sign).collect();
            let rsigns: Vec<_> = r.crossings().iter().map(|x| x.sign).collect();
            assert_eq!(signs, rsigns, "{s}");
        }
    }
}
