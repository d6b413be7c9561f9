use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{is_planar, ArcId, Crossing, LinkDiagram, Sign};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R1Variant {
    AddPositive { arc: ArcId },
    AddNegative { arc: ArcId },
    Remove { crossing: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R2Variant {
    /// Push `over` across `under`, creating a bigon.
    Add {
        over: ArcId,
        under: ArcId,
    },
    Remove {
        crossings: [usize; 2],
    },
}

/// Oriented R3 configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R3Variant {
    /// Three strands running the same way, all crossings positive
    /// (`s1 s2 s1 -> s2 s1 s2` in braid form).
    BraidPositive,
    /// Any other tag; rejected.
    Other,
}

impl R3Variant {
    pub fn tag(self) -> &'static str {
        match self {
            R3Variant::BraidPositive => "braid_positive",
            R3Variant::Other => "other",
        }
    }
}

/// One elementary string interaction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Esi {
    Birth,
    Death { circle: ArcId },
    Saddle { arcs: [ArcId; 2] },
    R1(R1Variant),
    R2(R2Variant),
    R3 { crossings: [usize; 3], variant: R3Variant },
}

impl Esi {
    /// q-degree of the induced map: `chi` of the elementary cobordism.
    pub fn degree(&self) -> i64 {
        match self {
            Esi::Birth | Esi::Death { .. } => 1,
            Esi::Saddle { .. } => -1,
            _ => 0,
        }
    }

    pub fn is_reidemeister(&self) -> bool {
        matches!(self, Esi::R1(_) | Esi::R2(_) | Esi::R3 { .. })
    }
}

impl fmt::Display for Esi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Esi::Birth => write!(f, "birth"),
            Esi::Death { circle } => write!(f, "death(circle {circle})"),
            Esi::Saddle { arcs } => write!(f, "saddle({}, {})", arcs[0], arcs[1]),
            Esi::R1(R1Variant::AddPositive { arc }) => write!(f, "r1 add_pos(arc {arc})"),
            Esi::R1(R1Variant::AddNegative { arc }) => write!(f, "r1 add_neg(arc {arc})"),
            Esi::R1(R1Variant::Remove { crossing }) => write!(f, "r1 remove(crossing {crossing})"),
            Esi::R2(R2Variant::Add { over, under }) => write!(f, "r2 add(over {over}, under {under})"),
            Esi::R2(R2Variant::Remove { crossings }) => {
                write!(f, "r2 remove(crossings {}, {})", crossings[0], crossings[1])
            }
            Esi::R3 { crossings, variant } => {
                write!(f, "r3 {}(crossings {}, {}, {})", variant.tag(), crossings[0], crossings[1], crossings[2])
            }
        }
    }
}

/// Move-specific bookkeeping that the chain maps need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceKind {
    Birth {
        circle: ArcId,
    },
    Death {
        circle: ArcId,
    },
    Saddle {
        arcs: [ArcId; 2],
    },
    /// `crossing` is the new (last) crossing, `kink` the arc of the small loop.
    R1Add {
        crossing: usize,
        kink: ArcId,
    },
    R1Remove {
        crossing: usize,
        kink: ArcId,
    },
    /// `bigon` holds the over and under arcs between the two crossings.
    R2Add {
        crossings: [usize; 2],
        bigon: [ArcId; 2],
    },
    R2Remove {
        crossings: [usize; 2],
        bigon: [ArcId; 2],
    },
    /// Crossings of the top and middle, top and bottom, middle and bottom
    /// strands (same indices before and after), and the triangle's edge arcs
    /// on the top, middle and bottom strands.
    R3 {
        crossings: [usize; 3],
        edges: [ArcId; 3],
    },
}

#[derive(Clone, Debug)]
pub struct EsiTrace {
    /// Final id of every arc of the source diagram and of every fresh arc.
    pub arc_map: BTreeMap<ArcId, ArcId>,
    pub kind: TraceKind,
}

impl EsiTrace {
    pub fn map_arc(&self, a: ArcId) -> Option<ArcId> {
        self.arc_map.get(&a).copied()
    }
}

pub fn apply_esi(d: &LinkDiagram, event: &Esi) -> Result<LinkDiagram> {
    apply_esi_traced(d, event).map(|(d, _)| d)
}

pub fn apply_esi_traced(d: &LinkDiagram, event: &Esi) -> Result<(LinkDiagram, EsiTrace)> {
    let planar_before = is_planar(d);
    let (out, trace) = match *event {
        Esi::Birth => birth(d),
        Esi::Death { circle } => death(d, circle),
        Esi::Saddle { arcs } => saddle(d, arcs),
        Esi::R1(R1Variant::AddPositive { arc }) => r1_add(d, arc, Sign::Positive),
        Esi::R1(R1Variant::AddNegative { arc }) => r1_add(d, arc, Sign::Negative),
        Esi::R1(R1Variant::Remove { crossing }) => r1_remove(d, crossing),
        Esi::R2(R2Variant::Add { over, under }) => return r2_add(d, over, under),
        Esi::R2(R2Variant::Remove { crossings }) => r2_remove(d, crossings),
        Esi::R3 { crossings, variant } => super::r3::r3(d, crossings, variant),
    }?;
    if planar_before && !is_planar(&out) {
        return Err(Error::PatternMismatch(format!("{event} would leave the plane")));
    }
    Ok((out, trace))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Head {
    Slot(usize, usize),
    Joint(ArcId),
}

/// A diagram in the middle of surgery: crossings may be erased and arcs may
/// meet at 2-valent joints until `normalize` contracts them.
#[derive(Clone, Debug)]
pub(super) struct Net {
    pub(super) crossings: Vec<Option<Crossing>>,
    /// `joints[x] = y`: the head of `x` runs straight into the tail of `y`.
    pub(super) joints: BTreeMap<ArcId, ArcId>,
    next_id: u32,
    pub(super) fresh: Vec<ArcId>,
}

impl Net {
    pub(super) fn new(d: &LinkDiagram) -> Self {
        let mut joints = BTreeMap::new();
        for lp in d.free_loops() {
            for (i, a) in lp.iter().enumerate() {
                joints.insert(*a, lp[(i + 1) % lp.len()]);
            }
        }
        Net {
            crossings: d.crossings().iter().copied().map(Some).collect(),
            joints,
            next_id: d.next_id(),
            fresh: Vec::new(),
        }
    }

    pub(super) fn fresh(&mut self) -> ArcId {
        let a = ArcId(self.next_id);
        self.next_id += 1;
        self.fresh.push(a);
        a
    }

    fn head(&self, a: ArcId) -> Option<Head> {
        if let Some(n) = self.joints.get(&a) {
            return Some(Head::Joint(*n));
        }
        self.crossings.iter().enumerate().find_map(|(c, x)| {
            let x = x.as_ref()?;
            x.in_slots().into_iter().find(|&s| x.arcs[s] == a).map(|s| Head::Slot(c, s))
        })
    }

    fn set_head(&mut self, a: ArcId, h: Head) {
        match h {
            Head::Slot(c, s) => {
                self.crossings[c].as_mut().expect("live crossing").arcs[s] = a;
            }
            Head::Joint(n) => {
                self.joints.insert(a, n);
            }
        }
    }

    /// Cuts arc `a` just before its head: `a` now ends at the returned head,
    /// which the caller must reattach.
    fn detach_head(&mut self, a: ArcId) -> Result<Head> {
        let h = self.head(a).ok_or_else(|| Error::PatternMismatch(format!("arc {a} does not exist")))?;
        self.joints.remove(&a);
        Ok(h)
    }

    pub(super) fn push(&mut self, x: Crossing) -> usize {
        self.crossings.push(Some(x));
        self.crossings.len() - 1
    }

    /// Removes a crossing, joining each strand straight through it.
    pub(super) fn erase(&mut self, c: usize) {
        let x = self.crossings[c].take().expect("live crossing");
        self.joints.insert(x.arcs[0], x.arcs[2]);
        self.joints.insert(x.arcs[x.over_in_slot()], x.arcs[x.over_out_slot()]);
    }

    /// Contracts joint chains (keeping each chain's smallest id) and returns
    /// the diagram, the arc map and the new index of every surviving crossing.
    pub(super) fn normalize(mut self) -> Result<(LinkDiagram, BTreeMap<ArcId, ArcId>, Vec<Option<usize>>)> {
        let mut arc_map: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let prev: BTreeMap<ArcId, ArcId> = self.joints.iter().map(|(x, y)| (*y, *x)).collect();
        let mut in_chain = BTreeSet::new();
        let starts: Vec<ArcId> = self.joints.keys().filter(|a| !prev.contains_key(a)).copied().collect();
        for s in starts {
            let mut chain = vec![s];
            let mut cur = s;
            while let Some(n) = self.joints.get(&cur) {
                cur = *n;
                chain.push(cur);
            }
            let keep = *chain.iter().min().unwrap();
            let end = *chain.last().unwrap();
            for a in &chain {
                arc_map.insert(*a, keep);
                in_chain.insert(*a);
            }
            for x in self.crossings.iter_mut().flatten() {
                for slot in x.out_slots() {
                    if x.arcs[slot] == s {
                        x.arcs[slot] = keep;
                    }
                }
                for slot in x.in_slots() {
                    if x.arcs[slot] == end {
                        x.arcs[slot] = keep;
                    }
                }
            }
        }
        // what remains in `joints` off the chains are closed cycles
        let mut loops = Vec::new();
        let mut seen = BTreeSet::new();
        for &a in self.joints.keys() {
            if in_chain.contains(&a) || seen.contains(&a) {
                continue;
            }
            let mut lp = vec![a];
            seen.insert(a);
            let mut cur = self.joints[&a];
            while cur != a {
                seen.insert(cur);
                lp.push(cur);
                cur = self.joints[&cur];
            }
            for x in &lp {
                arc_map.insert(*x, *x);
            }
            loops.push(lp);
        }
        let mut index = Vec::with_capacity(self.crossings.len());
        let mut crossings = Vec::new();
        for x in self.crossings.iter() {
            match x {
                Some(x) => {
                    index.push(Some(crossings.len()));
                    crossings.push(*x);
                    for a in x.arcs {
                        arc_map.entry(a).or_insert(a);
                    }
                }
                None => index.push(None),
            }
        }
        let d = LinkDiagram::from_parts_unchecked(crossings, loops, self.next_id);
        d.check().map_err(|e| Error::Internal(format!("surgery produced a bad diagram: {e}")))?;
        Ok((d, arc_map, index))
    }
}

fn require_arc(d: &LinkDiagram, a: ArcId) -> Result<()> {
    if d.arcs().contains(&a) {
        Ok(())
    } else {
        Err(Error::PatternMismatch(format!("arc {a} does not exist")))
    }
}

fn require_crossing(d: &LinkDiagram, c: usize) -> Result<()> {
    if c < d.crossing_count() {
        Ok(())
    } else {
        Err(Error::PatternMismatch(format!("crossing {c} does not exist")))
    }
}

fn finish(net: Net, old: &LinkDiagram) -> Result<(LinkDiagram, BTreeMap<ArcId, ArcId>, Vec<Option<usize>>)> {
    let (d, mut map, index) = net.normalize()?;
    for a in old.arcs() {
        map.entry(a).or_insert(a);
    }
    Ok((d, map, index))
}

fn birth(d: &LinkDiagram) -> Result<(LinkDiagram, EsiTrace)> {
    let mut net = Net::new(d);
    let x = net.fresh();
    let y = net.fresh();
    net.joints.insert(x, y);
    net.joints.insert(y, x);
    let (out, arc_map, _) = finish(net, d)?;
    Ok((out, EsiTrace { kind: TraceKind::Birth { circle: arc_map[&x] }, arc_map }))
}

fn death(d: &LinkDiagram, circle: ArcId) -> Result<(LinkDiagram, EsiTrace)> {
    let lp = d.free_loops().iter().find(|lp| LinkDiagram::loop_id(lp) == circle).ok_or_else(|| {
        if d.arcs().contains(&circle) {
            Error::PatternMismatch(format!("circle {circle} is not a crossing-free circle"))
        } else {
            Error::PatternMismatch(format!("no free loop with id {circle}"))
        }
    })?;
    let mut net = Net::new(d);
    for a in lp {
        net.joints.remove(a);
    }
    let (out, mut arc_map, _) = finish(net, d)?;
    for a in lp {
        arc_map.remove(a);
    }
    Ok((out, EsiTrace { kind: TraceKind::Death { circle }, arc_map }))
}

fn saddle(d: &LinkDiagram, arcs: [ArcId; 2]) -> Result<(LinkDiagram, EsiTrace)> {
    let [a, b] = arcs;
    if a == b {
        return Err(Error::PatternMismatch(format!("saddle needs two distinct arcs, got {a} twice")));
    }
    require_arc(d, a)?;
    require_arc(d, b)?;
    let mut net = Net::new(d);
    let ha = net.detach_head(a)?;
    let hb = net.detach_head(b)?;
    net.set_head(a, hb);
    net.set_head(b, ha);
    let (out, arc_map, _) = finish(net, d)?;
    Ok((out, EsiTrace { kind: TraceKind::Saddle { arcs }, arc_map }))
}

fn r1_add(d: &LinkDiagram, a: ArcId, sign: Sign) -> Result<(LinkDiagram, EsiTrace)> {
    require_arc(d, a)?;
    let mut net = Net::new(d);
    let h = net.detach_head(a)?;
    let k = net.fresh();
    let a2 = net.fresh();
    let arcs = match sign {
        Sign::Positive => [a, a2, k, k],
        Sign::Negative => [a, k, k, a2],
    };
    let c = net.push(Crossing { arcs, sign });
    net.set_head(a2, h);
    let (out, arc_map, index) = finish(net, d)?;
    let crossing = index[c].expect("new crossing survives");
    Ok((out, EsiTrace { kind: TraceKind::R1Add { crossing, kink: arc_map[&k] }, arc_map }))
}

/// An arc that leaves and re-enters crossing `c` through adjacent slots.
pub(super) fn kink_arc(x: &Crossing) -> Option<ArcId> {
    let mut best: Option<ArcId> = None;
    for s in x.in_slots() {
        let k = x.arcs[s];
        for t in x.out_slots() {
            if x.arcs[t] == k && (s + 4 - t) % 4 != 2 {
                best = Some(best.map_or(k, |b| b.min(k)));
            }
        }
    }
    best
}

fn r1_remove(d: &LinkDiagram, c: usize) -> Result<(LinkDiagram, EsiTrace)> {
    require_crossing(d, c)?;
    let x = d.crossings()[c];
    let kink = kink_arc(&x).ok_or_else(|| Error::PatternMismatch(format!("crossing {c} is not a kink")))?;
    let mut net = Net::new(d);
    net.erase(c);
    let (out, arc_map, _) = finish(net, d)?;
    Ok((out, EsiTrace { kind: TraceKind::R1Remove { crossing: c, kink }, arc_map }))
}

fn r2_add(d: &LinkDiagram, over: ArcId, under: ArcId) -> Result<(LinkDiagram, EsiTrace)> {
    if over == under {
        return Err(Error::PatternMismatch(format!("r2 needs two distinct arcs, got {over} twice")));
    }
    require_arc(d, over)?;
    require_arc(d, under)?;
    let planar_before = is_planar(d);
    let mut last_err = None;
    for forward in [true, false] {
        for s1 in [Sign::Positive, Sign::Negative] {
            let attempt = r2_add_variant(d, over, under, forward, s1);
            match attempt {
                Ok((out, trace)) if !planar_before || is_planar(&out) => return Ok((out, trace)),
                Ok(_) => {}
                Err(e) => last_err = Some(e),
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::PatternMismatch(format!("arcs {over} and {under} do not share a face"))))
}

fn r2_add_variant(d: &LinkDiagram, a: ArcId, b: ArcId, forward: bool, s1: Sign) -> Result<(LinkDiagram, EsiTrace)> {
    let mut net = Net::new(d);
    let ha = net.detach_head(a)?;
    let hb = net.detach_head(b)?;
    let a1 = net.fresh();
    let a2 = net.fresh();
    let b1 = net.fresh();
    let b2 = net.fresh();
    let (c1_over, c2_over) = if forward { ((a, a1), (a1, a2)) } else { ((a1, a2), (a, a1)) };
    let place = |under_in: ArcId, under_out: ArcId, (o_in, o_out): (ArcId, ArcId), sign: Sign| {
        let mut arcs = [under_in, o_out, under_out, o_in];
        if sign == Sign::Negative {
            arcs.swap(1, 3);
        }
        Crossing { arcs, sign }
    };
    let c1 = net.push(place(b, b1, c1_over, s1));
    let c2 = net.push(place(b1, b2, c2_over, s1.flip()));
    net.set_head(a2, ha);
    net.set_head(b2, hb);
    let (out, arc_map, index) = finish(net, d)?;
    let crossings = [index[c1].unwrap(), index[c2].unwrap()];
    let bigon = [arc_map[&a1], arc_map[&b1]];
    Ok((out, EsiTrace { kind: TraceKind::R2Add { crossings, bigon }, arc_map }))
}

/// Finds the bigon of a removable R2 pair: an over-arc and an under-arc joining
/// the two crossings that close into a small circle in some local smoothing.
/// Returns the bigon arcs and the local bits `(b1, b2)` of that smoothing.
pub(crate) fn r2_bigon(x1: &Crossing, x2: &Crossing) -> Option<([ArcId; 2], (bool, bool))> {
    if x1.sign == x2.sign {
        return None;
    }
    let over = |x: &Crossing| [x.arcs[x.over_in_slot()], x.arcs[x.over_out_slot()]];
    let under = |x: &Crossing| [x.arcs[0], x.arcs[2]];
    let joins = |p: [ArcId; 2], q: [ArcId; 2]| -> Vec<ArcId> {
        // an arc leaving one crossing and entering the other
        let mut v = Vec::new();
        if p[1] == q[0] {
            v.push(p[1]);
        }
        if q[1] == p[0] && !v.contains(&q[1]) {
            v.push(q[1]);
        }
        v
    };
    let alphas = joins(over(x1), over(x2));
    let betas = joins(under(x1), under(x2));
    let mut found: Option<([ArcId; 2], (bool, bool))> = None;
    for &al in &alphas {
        for &be in &betas {
            let pairs_at = |x: &Crossing, bit: bool| {
                x.smoothing(bit).iter().any(|&(p, q)| {
                    let s = [x.arcs[p], x.arcs[q]];
                    (s == [al, be]) || (s == [be, al])
                })
            };
            for (b1, b2) in [(true, false), (false, true)] {
                if pairs_at(x1, b1) && pairs_at(x2, b2) {
                    let cand = ([al, be], (b1, b2));
                    if found.as_ref().is_none_or(|f| cand.0 > f.0) {
                        found = Some(cand);
                    }
                }
            }
        }
    }
    found
}

fn r2_remove(d: &LinkDiagram, crossings: [usize; 2]) -> Result<(LinkDiagram, EsiTrace)> {
    let [c1, c2] = crossings;
    require_crossing(d, c1)?;
    require_crossing(d, c2)?;
    if c1 == c2 {
        return Err(Error::PatternMismatch("r2 removal needs two distinct crossings".into()));
    }
    let (x1, x2) = (d.crossings()[c1], d.crossings()[c2]);
    let (bigon, _) = r2_bigon(&x1, &x2)
        .ok_or_else(|| Error::PatternMismatch(format!("crossings {c1} and {c2} do not form a bigon")))?;
    let mut net = Net::new(d);
    net.erase(c1);
    net.erase(c2);
    let (out, arc_map, _) = finish(net, d)?;
    Ok((out, EsiTrace { kind: TraceKind::R2Remove { crossings, bigon }, arc_map }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, resolve, Vertex};

    #[test]
    fn birth_then_death_is_identity() {
        for s in ["", "L1", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"] {
            let d = parse_pd(s).unwrap();
            let (b, t) = apply_esi_traced(&d, &Esi::Birth).unwrap();
            assert_eq!(b.free_loop_count(), d.free_loop_count() + 1);
            let TraceKind::Birth { circle } = t.kind else { panic!() };
            let back = apply_esi(&b, &Esi::Death { circle }).unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn empty_birth_and_death() {
        let e = LinkDiagram::empty();
        let one = apply_esi(&e, &Esi::Birth).unwrap();
        assert_eq!(one.free_loop_count(), 1);
        let id = LinkDiagram::loop_id(&one.free_loops()[0]);
        assert!(apply_esi(&one, &Esi::Death { circle: id }).unwrap().is_empty());
        assert!(apply_esi(&e, &Esi::Death { circle: ArcId(1) }).is_err());
    }

    #[test]
    fn split_and_merge_a_loop() {
        let one = apply_esi(&LinkDiagram::empty(), &Esi::Birth).unwrap();
        let lp = one.free_loops()[0].clone();
        assert_eq!(lp.len(), 2);
        let two = apply_esi(&one, &Esi::Saddle { arcs: [lp[0], lp[1]] }).unwrap();
        assert_eq!(two.free_loop_count(), 2);
        let back = apply_esi(&two, &Esi::Saddle { arcs: [lp[0], lp[1]] }).unwrap();
        assert_eq!(back, one);
        assert!(apply_esi(&one, &Esi::Saddle { arcs: [lp[0], lp[0]] }).is_err());
    }

    #[test]
    fn r1_kinks_on_free_loop() {
        let one = apply_esi(&LinkDiagram::empty(), &Esi::Birth).unwrap();
        let a = one.free_loops()[0][0];
        let pos = apply_esi(&one, &Esi::R1(R1Variant::AddPositive { arc: a })).unwrap();
        assert_eq!(pos.crossing_count(), 1);
        assert_eq!(pos.n_plus(), 1);
        assert_eq!(pos.free_loop_count(), 0);
        // oriented smoothing of a kink splits off the small loop
        assert_eq!(resolve(&pos, Vertex::new(0, 1)).unwrap().circle_count(), 2);
        assert_eq!(resolve(&pos, Vertex::new(1, 1)).unwrap().circle_count(), 1);
        let neg = apply_esi(&one, &Esi::R1(R1Variant::AddNegative { arc: a })).unwrap();
        assert_eq!(neg.n_minus(), 1);
        assert_eq!(resolve(&neg, Vertex::new(1, 1)).unwrap().circle_count(), 2);
        for d in [pos, neg] {
            let back = apply_esi(&d, &Esi::R1(R1Variant::Remove { crossing: 0 })).unwrap();
            assert!(back.is_unknot_circle());
        }
    }

    #[test]
    fn r1_on_trefoil_arc_and_back() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        for arc in 1..=6 {
            for esi in [
                Esi::R1(R1Variant::AddPositive { arc: ArcId(arc) }),
                Esi::R1(R1Variant::AddNegative { arc: ArcId(arc) }),
            ] {
                let k = apply_esi(&d, &esi).unwrap();
                assert_eq!(k.crossing_count(), 4);
                let back = apply_esi(&k, &Esi::R1(R1Variant::Remove { crossing: 3 })).unwrap();
                assert_eq!(back, d, "{esi}");
            }
        }
        assert!(apply_esi(&d, &Esi::R1(R1Variant::Remove { crossing: 0 })).is_err());
    }

    #[test]
    fn r2_detour_on_two_loops() {
        let one = apply_esi(&LinkDiagram::empty(), &Esi::Birth).unwrap();
        let lp = one.free_loops()[0].clone();
        let two = apply_esi(&one, &Esi::Saddle { arcs: [lp[0], lp[1]] }).unwrap();
        let (x, t) = apply_esi_traced(&two, &Esi::R2(R2Variant::Add { over: lp[0], under: lp[1] })).unwrap();
        assert_eq!(x.crossing_count(), 2);
        assert_eq!(x.n_plus(), 1);
        assert_eq!(x.n_minus(), 1);
        assert!(is_planar(&x));
        assert!(matches!(t.kind, TraceKind::R2Add { crossings: [0, 1], .. }));
        let back = apply_esi(&x, &Esi::R2(R2Variant::Remove { crossings: [0, 1] })).unwrap();
        assert_eq!(back.crossing_count(), 0);
        assert_eq!(back.free_loop_count(), 2);
    }

    #[test]
    fn r2_on_trefoil_faces() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let mut ok = 0;
        for a in 1..=6u32 {
            for b in 1..=6u32 {
                if a == b {
                    continue;
                }
                if let Ok(x) = apply_esi(&d, &Esi::R2(R2Variant::Add { over: ArcId(a), under: ArcId(b) })) {
                    ok += 1;
                    assert!(is_planar(&x));
                    let back = apply_esi(&x, &Esi::R2(R2Variant::Remove { crossings: [3, 4] })).unwrap();
                    assert_eq!(back, d, "over {a} under {b}");
                }
            }
        }
        assert!(ok > 0);
    }

    #[test]
    fn r2_remove_rejects_non_bigons() {
        let hopf = parse_pd("X(4,1,3,2) X(2,3,1,4)").unwrap();
        assert!(apply_esi(&hopf, &Esi::R2(R2Variant::Remove { crossings: [0, 1] })).is_err());
    }
}
