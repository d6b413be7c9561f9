//! Local formulas for the chain maps of elementary string interactions.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::chain_map::{ChainMap, MapKind};
use crate::algebra::{comultiply, multiply, Label, TPoly, Theory};
use crate::complex::{BuildOptions, CochainElement, CubeComplex, Generator};
use crate::diagram::{
    apply_esi_traced, r2_bigon, ArcId, Edge, Esi, LinkDiagram, ResolvedDiagram, Sign, TraceKind, Vertex,
};
use crate::error::{Error, Result};

pub(crate) type ArcMap = Arc<BTreeMap<ArcId, ArcId>>;

#[derive(Clone)]
pub(crate) enum Rule {
    Identity,
    Compose(Vec<ChainMap>),
    Birth {
        arcs: ArcMap,
    },
    /// `circle` is an arc of the dying loop in the source.
    Death {
        arcs: ArcMap,
        circle: ArcId,
    },
    Saddle {
        arcs: ArcMap,
        pair: [ArcId; 2],
    },
    /// The new crossing is the last one of the target.
    R1Add {
        arcs: ArcMap,
        kink: ArcId,
        sign: Sign,
    },
    /// The removed crossing is the last one of the source.
    R1Remove {
        arcs: ArcMap,
        kink: ArcId,
        sign: Sign,
    },
    /// The new crossings are the last two of the target, in the order `p, q`,
    /// where the small circle `{alpha, beta}` appears at local vertex `10`.
    R2Add {
        arcs: ArcMap,
        bigon: [ArcId; 2],
    },
    /// Mirror image of `R2Add` on the source side.
    R2Remove {
        arcs: ArcMap,
        bigon: [ArcId; 2],
    },
    /// Source crossing `i` is target crossing `perm[i]`.
    Reorder {
        perm: Vec<usize>,
    },
    /// Both sides list their triangle crossings last, see `r3`.
    R3(super::r3::R3Data),
}

/// For each circle of `src`, the circle of `tgt` holding the image of its
/// first usable arc.
pub(super) fn circle_map<F>(
    src: &ResolvedDiagram,
    tgt: &ResolvedDiagram,
    rename: F,
    skip: &[ArcId],
) -> Vec<Option<usize>>
where
    F: Fn(ArcId) -> Option<ArcId>,
{
    src.circles()
        .iter()
        .map(|c| c.iter().filter(|a| !skip.contains(a)).find_map(|a| rename(*a).and_then(|b| tgt.circle_of(b))))
        .collect()
}

/// Moves the label bits of the mapped circles; unmapped circles are dropped.
pub(super) fn carry(labels: u64, map: &[Option<usize>]) -> u64 {
    let mut out = 0;
    for (i, m) in map.iter().enumerate() {
        if let Some(j) = m {
            if labels >> i & 1 == 1 {
                out |= 1 << j;
            }
        }
    }
    out
}

fn bit(l: Label, at: usize) -> u64 {
    if l == Label::Minus {
        1 << at
    } else {
        0
    }
}

fn label_at(labels: u64, at: usize) -> Label {
    if labels >> at & 1 == 1 {
        Label::Minus
    } else {
        Label::Plus
    }
}

pub(super) fn parity_sign(k: usize) -> TPoly {
    TPoly::constant(if k.is_multiple_of(2) { 1 } else { -1 })
}

fn lookup(arcs: &ArcMap) -> impl Fn(ArcId) -> Option<ArcId> + '_ {
    move |a| arcs.get(&a).copied()
}

pub(super) fn same(a: ArcId) -> Option<ArcId> {
    Some(a)
}

pub(super) fn bijective(map: &[Option<usize>], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n
        && map.iter().all(|m| match m {
            Some(j) if !seen[*j] => {
                seen[*j] = true;
                true
            }
            _ => false,
        })
}

/// Multiplies the label of circle `at` by `v-`.
fn times_minus(labels: u64, at: usize, th: Theory) -> Vec<(TPoly, u64)> {
    multiply(label_at(labels, at), Label::Minus, th)
        .into_iter()
        .map(|(c, l)| (c, labels & !(1 << at) | bit(l, at)))
        .collect()
}

impl Rule {
    pub(crate) fn apply(&self, src: &CubeComplex, tgt: &CubeComplex, g: &Generator) -> CochainElement {
        let th = src.theory();
        let v = g.vertex;
        let mut out = CochainElement::zero();
        match self {
            Rule::Identity => out.add_term(*g, TPoly::one()),
            Rule::Compose(parts) => {
                let mut x = CochainElement::generator(*g);
                for p in parts {
                    x = p.apply(&x);
                }
                return x;
            }
            Rule::Birth { arcs } => {
                let w = tgt.vertex(v.bits());
                let map = circle_map(src.resolution(v), tgt.resolution(w), lookup(arcs), &[]);
                out.add_term(Generator { vertex: w, labels: carry(g.labels, &map) }, TPoly::one());
            }
            Rule::Death { arcs, circle } => {
                let sres = src.resolution(v);
                let dc = sres.circle_of(*circle).expect("dying loop is a circle");
                if g.label(dc) == Label::Minus {
                    let w = tgt.vertex(v.bits());
                    let mut map = circle_map(sres, tgt.resolution(w), lookup(arcs), &[]);
                    map[dc] = None;
                    out.add_term(Generator { vertex: w, labels: carry(g.labels, &map) }, TPoly::one());
                }
            }
            Rule::Saddle { arcs, pair: [a, b] } => {
                let (sres, w) = (src.resolution(v), tgt.vertex(v.bits()));
                let tres = tgt.resolution(w);
                let (ca, cb) = (sres.circle_of(*a).unwrap(), sres.circle_of(*b).unwrap());
                let mut map = circle_map(sres, tres, lookup(arcs), &[]);
                map[ca] = None;
                map[cb] = None;
                let base = carry(g.labels, &map);
                let ta = tres.circle_of(arcs[a]).unwrap();
                let tb = tres.circle_of(arcs[b]).unwrap();
                if ca != cb {
                    assert_eq!(ta, tb, "merging saddle must produce one circle");
                    for (c, l) in multiply(g.label(ca), g.label(cb), th) {
                        out.add_term(Generator { vertex: w, labels: base | bit(l, ta) }, c);
                    }
                } else {
                    assert_ne!(ta, tb, "saddle on one circle must split it");
                    for (c, l0, l1) in comultiply(g.label(ca), th) {
                        out.add_term(Generator { vertex: w, labels: base | bit(l0, ta) | bit(l1, tb) }, c);
                    }
                }
            }
            Rule::R1Add { arcs, kink, sign } => {
                let n = src.crossing_count();
                let layer = *sign == Sign::Negative;
                let w = tgt.vertex(v.bits() | (layer as u32) << n);
                let tres = tgt.resolution(w);
                let kc = tres.circle_of(*kink).unwrap();
                let map = circle_map(src.resolution(v), tres, lookup(arcs), &[]);
                let base = carry(g.labels, &map);
                match sign {
                    Sign::Positive => {
                        out.add_term(Generator { vertex: w, labels: base | 1 << kc }, TPoly::one());
                        let strand = tres.circle_of(tgt.diagram().crossings()[n].arcs[0]).unwrap();
                        for (c, labels) in times_minus(base, strand, th) {
                            out.add_term(Generator { vertex: w, labels }, -c);
                        }
                    }
                    Sign::Negative => {
                        out.add_term(Generator { vertex: w, labels: base }, parity_sign(v.weight()));
                    }
                }
            }
            Rule::R1Remove { arcs, kink, sign } => {
                let n = tgt.crossing_count();
                let layer = v.bit(n);
                if layer != (*sign == Sign::Negative) {
                    return out;
                }
                let amb = tgt.vertex(v.bits() & !(1 << n));
                let (sres, tres) = (src.resolution(v), tgt.resolution(amb));
                let kc = sres.circle_of(*kink).unwrap();
                let mut map = circle_map(sres, tres, lookup(arcs), &[*kink]);
                map[kc] = None;
                let base = carry(g.labels, &map);
                match sign {
                    Sign::Positive => {
                        if g.label(kc) == Label::Minus {
                            out.add_term(Generator { vertex: amb, labels: base }, TPoly::one());
                        }
                    }
                    Sign::Negative => {
                        let s = parity_sign(amb.weight());
                        if g.label(kc) == Label::Plus {
                            out.add_term(Generator { vertex: amb, labels: base }, s);
                        } else {
                            let strand_arc = arcs[&src.diagram().crossings()[n].arcs[0]];
                            let strand = tres.circle_of(strand_arc).unwrap();
                            for (c, labels) in times_minus(base, strand, th) {
                                out.add_term(Generator { vertex: amb, labels }, -(&c * &s));
                            }
                        }
                    }
                }
            }
            Rule::R2Add { arcs, bigon } => {
                let n = src.crossing_count();
                let (p, q) = (n, n + 1);
                let s = parity_sign(v.weight());
                let v01 = tgt.vertex(v.bits() | 1 << q);
                let v10 = tgt.vertex(v.bits() | 1 << p);
                let v11 = tgt.vertex(v.bits() | 1 << p | 1 << q);
                let map = circle_map(src.resolution(v), tgt.resolution(v01), lookup(arcs), &[]);
                assert!(bijective(&map, tgt.circle_count(v01)), "identity resolution of an R2 pair");
                let z01 = Generator { vertex: v01, labels: carry(g.labels, &map) };
                out.add_term(z01, s.clone());
                let up = tgt.edge_map(Edge { tail: v01, star: p }, &z01);
                let back = circle_map(tgt.resolution(v11), tgt.resolution(v10), same, bigon);
                for (h, c) in up.terms() {
                    out.add_term(Generator { vertex: v10, labels: carry(h.labels, &back) }, c * &s);
                }
            }
            Rule::R2Remove { arcs, bigon } => {
                let n = tgt.crossing_count();
                let (p, q) = (n, n + 1);
                let amb = tgt.vertex(v.bits() & !(1 << p | 1 << q));
                let s = parity_sign(amb.weight());
                let to_d = |vertex: Vertex| {
                    let m = circle_map(src.resolution(vertex), tgt.resolution(amb), lookup(arcs), bigon);
                    assert!(bijective(&m, tgt.circle_count(amb)), "identity resolution of an R2 pair");
                    m
                };
                match (v.bit(p), v.bit(q)) {
                    (false, true) => {
                        let m = to_d(v);
                        out.add_term(Generator { vertex: amb, labels: carry(g.labels, &m) }, s);
                    }
                    (true, false) => {
                        let sres = src.resolution(v);
                        let x = sres.circle_of(bigon[0]).unwrap();
                        if g.label(x) == Label::Plus {
                            return out;
                        }
                        let v00 = src.vertex(amb.bits());
                        let v01 = src.vertex(amb.bits() | 1 << q);
                        let mut down = circle_map(sres, src.resolution(v00), same, bigon);
                        down[x] = None;
                        let y = Generator { vertex: v00, labels: carry(g.labels, &down) };
                        let m = to_d(v01);
                        for (h, c) in src.edge_map(Edge { tail: v00, star: q }, &y).terms() {
                            out.add_term(Generator { vertex: amb, labels: carry(h.labels, &m) }, -(c * &s));
                        }
                    }
                    _ => {}
                }
            }
            Rule::Reorder { perm } => {
                let mut bits = 0u32;
                let mut inversions = 0;
                for i in 0..perm.len() {
                    if v.bit(i) {
                        bits |= 1 << perm[i];
                        inversions += (0..i).filter(|&j| v.bit(j) && perm[j] > perm[i]).count();
                    }
                }
                out.add_term(Generator { vertex: tgt.vertex(bits), labels: g.labels }, parity_sign(inversions));
            }
            Rule::R3(data) => return data.apply(src, tgt, g),
        }
        out
    }
}

pub(super) fn build(d: &LinkDiagram, th: Theory) -> Result<Arc<CubeComplex>> {
    let opts = BuildOptions { cap: Vertex::MAX_LEN - 1, workers: 1 };
    Ok(Arc::new(CubeComplex::build_with(d, th, opts)?))
}

/// Chain isomorphism to the same diagram with crossings listed as `order`.
pub(super) fn reorder(src: &Arc<CubeComplex>, order: &[usize]) -> Result<ChainMap> {
    let d = src.diagram().with_crossing_order(order);
    let tgt = build(&d, src.theory())?;
    let mut perm = vec![0; order.len()];
    for (k, &i) in order.iter().enumerate() {
        perm[i] = k;
    }
    Ok(ChainMap::new(MapKind::Reorder, 0, src.clone(), tgt, Rule::Reorder { perm }))
}

pub(super) fn to_cube(
    src: &Arc<CubeComplex>,
    d: &LinkDiagram,
    tgt: Option<&Arc<CubeComplex>>,
) -> Result<Arc<CubeComplex>> {
    match tgt {
        Some(t) if t.diagram() == d && t.theory() == src.theory() => Ok(t.clone()),
        Some(_) => Err(Error::PatternMismatch("target complex does not match the rewritten diagram".into())),
        None => build(d, src.theory()),
    }
}

/// The chain map induced by one event, from the complex of `src`'s diagram
/// to the complex of the rewritten diagram (built unless `tgt` is given).
pub fn esi_chain_map(event: &Esi, src: &Arc<CubeComplex>, tgt: Option<&Arc<CubeComplex>>) -> Result<ChainMap> {
    let d = src.diagram();
    let (out, trace) = apply_esi_traced(d, event)?;
    let arcs: ArcMap = Arc::new(trace.arc_map.clone());
    let th = src.theory();
    let n = d.crossing_count();
    let map = match trace.kind {
        TraceKind::Birth { .. } => {
            let t = to_cube(src, &out, tgt)?;
            ChainMap::new(MapKind::Birth, 1, src.clone(), t, Rule::Birth { arcs })
        }
        TraceKind::Death { circle } => {
            let t = to_cube(src, &out, tgt)?;
            ChainMap::new(MapKind::Death, 1, src.clone(), t, Rule::Death { arcs, circle })
        }
        TraceKind::Saddle { arcs: pair } => {
            let t = to_cube(src, &out, tgt)?;
            ChainMap::new(MapKind::Saddle, -1, src.clone(), t, Rule::Saddle { arcs, pair })
        }
        TraceKind::R1Add { kink, crossing } => {
            if crossing != n {
                return Err(Error::Internal("new kink is not the last crossing".into()));
            }
            let t = to_cube(src, &out, tgt)?;
            let sign = out.crossings()[crossing].sign;
            ChainMap::new(MapKind::R1Add, 0, src.clone(), t, Rule::R1Add { arcs, kink, sign })
        }
        TraceKind::R1Remove { crossing, kink } => {
            let sign = d.crossings()[crossing].sign;
            let order: Vec<usize> = (0..n).filter(|&i| i != crossing).chain([crossing]).collect();
            let first = reorder(src, &order)?;
            let t = to_cube(src, &out, tgt)?;
            let rm = ChainMap::new(MapKind::R1Remove, 0, first.target_arc(), t, Rule::R1Remove { arcs, kink, sign });
            let mut m = first.then(rm);
            m.kind = MapKind::R1Remove;
            m
        }
        TraceKind::R2Add { crossings: [c1, c2], .. } => {
            let (bigon, (b1, _)) = r2_bigon(&out.crossings()[c1], &out.crossings()[c2])
                .ok_or_else(|| Error::Internal("new R2 pair has no bigon".into()))?;
            let t = to_cube(src, &out, tgt)?;
            let m = out.crossing_count();
            let (p, q) = if b1 { (c1, c2) } else { (c2, c1) };
            if (p, q) == (m - 2, m - 1) {
                ChainMap::new(MapKind::R2Add, 0, src.clone(), t, Rule::R2Add { arcs, bigon })
            } else {
                // build the map with p, q last, then move them back
                let order: Vec<usize> = (0..m).filter(|&i| i != p && i != q).chain([p, q]).collect();
                let staged = build(&out.with_crossing_order(&order), th)?;
                let f = ChainMap::new(MapKind::R2Add, 0, src.clone(), staged.clone(), Rule::R2Add { arcs, bigon });
                let mut perm = vec![0; m];
                for (k, &i) in order.iter().enumerate() {
                    perm[k] = i;
                }
                let r = ChainMap::new(MapKind::Reorder, 0, staged, t, Rule::Reorder { perm });
                let mut c = f.then(r);
                c.kind = MapKind::R2Add;
                c
            }
        }
        TraceKind::R2Remove { crossings: [c1, c2], .. } => {
            let (bigon, (b1, _)) = r2_bigon(&d.crossings()[c1], &d.crossings()[c2])
                .ok_or_else(|| Error::Internal("removed R2 pair has no bigon".into()))?;
            let (p, q) = if b1 { (c1, c2) } else { (c2, c1) };
            let order: Vec<usize> = (0..n).filter(|&i| i != p && i != q).chain([p, q]).collect();
            let first = reorder(src, &order)?;
            let t = to_cube(src, &out, tgt)?;
            let rm = ChainMap::new(MapKind::R2Remove, 0, first.target_arc(), t, Rule::R2Remove { arcs, bigon });
            let mut m = first.then(rm);
            m.kind = MapKind::R2Remove;
            m
        }
        TraceKind::R3 { crossings, edges } => super::r3::r3_map(src, &out, crossings, edges, tgt)?,
    };
    Ok(map)
}
