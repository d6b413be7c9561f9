use super::moves::{EsiTrace, R3Variant, TraceKind};
use super::{is_planar, ArcId, Crossing, LinkDiagram, Sign};
use crate::error::{Error, Result};

/// One strand passing through a crossing.
#[derive(Clone, Copy, Debug)]
struct Pass {
    crossing: usize,
    over: bool,
    inc: ArcId,
    out: ArcId,
}

fn passes(d: &LinkDiagram, c: usize) -> [Pass; 2] {
    let x = &d.crossings()[c];
    [
        Pass { crossing: c, over: false, inc: x.arcs[0], out: x.arcs[2] },
        Pass { crossing: c, over: true, inc: x.arcs[x.over_in_slot()], out: x.arcs[x.over_out_slot()] },
    ]
}

/// A strand of the triangle: enters at `first`, runs along the edge arc,
/// leaves through `second`.
#[derive(Clone, Copy, Debug)]
struct Side {
    first: Pass,
    second: Pass,
}

impl Side {
    fn edge(&self) -> ArcId {
        self.first.out
    }
}

/// The strands of a triangle ordered top, middle, bottom.
fn classify(sides: [Side; 3]) -> Option<[Side; 3]> {
    let over_count = |s: &Side| s.first.over as u8 + s.second.over as u8;
    let find = |k: u8| sides.iter().copied().find(|s| over_count(s) == k);
    Some([find(2)?, find(1)?, find(0)?])
}

fn shares(s: &Side, c: usize) -> bool {
    s.first.crossing == c || s.second.crossing == c
}

fn meeting(s: &Side, t: &Side) -> Option<usize> {
    [s.first.crossing, s.second.crossing].into_iter().find(|&c| shares(t, c))
}

/// Every way of reading the three crossings as a triangle of three strands.
fn triangles(d: &LinkDiagram, cs: [usize; 3]) -> Vec<[Side; 3]> {
    let all: Vec<Pass> = cs.iter().flat_map(|&c| passes(d, c)).collect();
    let mut sides = Vec::new();
    for p in &all {
        for q in &all {
            if p.crossing != q.crossing && p.out == q.inc {
                sides.push(Side { first: *p, second: *q });
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..sides.len() {
        for j in i + 1..sides.len() {
            for k in j + 1..sides.len() {
                let tri = [sides[i], sides[j], sides[k]];
                let mut used: Vec<(usize, bool)> =
                    tri.iter().flat_map(|s| [s.first, s.second]).map(|p| (p.crossing, p.over)).collect();
                used.sort();
                used.dedup();
                if used.len() == 6 {
                    out.push(tri);
                }
            }
        }
    }
    out
}

/// Slides the bottom strand of a positive braid-like triangle across the
/// crossing of the other two. Crossing indices and arc ids are kept; each
/// strand meets its two crossings in the opposite order afterwards.
pub(super) fn r3(d: &LinkDiagram, cs: [usize; 3], variant: R3Variant) -> Result<(LinkDiagram, EsiTrace)> {
    if variant != R3Variant::BraidPositive {
        return Err(Error::UnimplementedVariant(format!("r3 variant {}", variant.tag())));
    }
    let n = d.crossing_count();
    if cs.iter().any(|&c| c >= n) || cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
        return Err(Error::PatternMismatch(format!("r3 needs three distinct crossings below {n}")));
    }
    if cs.iter().any(|&c| d.crossings()[c].sign != Sign::Positive) {
        return Err(Error::PatternMismatch("braid_positive r3 needs three positive crossings".into()));
    }
    let planar = is_planar(d);
    let mut reason = "the crossings do not bound a triangle";
    let mut cyclic = false;
    for tri in triangles(d, cs) {
        let Some([a, b, c]) = classify(tri) else {
            reason = "no strand passes over both others";
            continue;
        };
        let (tm, tb, mb) = (meeting(&a, &b).unwrap(), meeting(&a, &c).unwrap(), meeting(&b, &c).unwrap());
        let starts = |x: usize| tri.iter().filter(|s| s.first.crossing == x).count();
        let braid_like = (starts(tm) == 2 && starts(mb) == 0) || (starts(mb) == 2 && starts(tm) == 0);
        if !braid_like {
            cyclic |= [tm, tb, mb].iter().all(|&x| starts(x) == 1);
            reason = "the triangle is not braid-like";
            continue;
        }
        let mut crossings = d.crossings().to_vec();
        let mut new_pass: Vec<Vec<(bool, ArcId, ArcId)>> = vec![Vec::new(); n];
        for s in [a, b, c] {
            let e = s.edge();
            new_pass[s.first.crossing].push((s.first.over, e, s.second.out));
            new_pass[s.second.crossing].push((s.second.over, s.first.inc, e));
        }
        for &x in &[tm, tb, mb] {
            let (o, u) = match (new_pass[x][0], new_pass[x][1]) {
                (p, q) if p.0 => (p, q),
                (p, q) => (q, p),
            };
            crossings[x] = Crossing { arcs: [u.1, o.2, u.2, o.1], sign: Sign::Positive };
        }
        let out = LinkDiagram::from_parts_unchecked(crossings, d.free_loops().to_vec(), d.next_id());
        if planar && !is_planar(&out) {
            reason = "the triangle is not a face";
            continue;
        }
        let arc_map = d.arcs().into_iter().map(|x| (x, x)).collect();
        let kind = TraceKind::R3 { crossings: [tm, tb, mb], edges: [a.edge(), b.edge(), c.edge()] };
        return Ok((out, EsiTrace { arc_map, kind }));
    }
    if cyclic {
        return Err(Error::UnimplementedVariant("cyclic r3".into()));
    }
    Err(Error::PatternMismatch(format!("crossings {cs:?}: {reason}")))
}
