//! Chain map of the braid-like positive R3 move.
//!
//! Both diagrams list their triangle crossings last as `p, q, x`, where `x`
//! joins the middle and bottom strands and `p, q` form an R2 pair once `x` is
//! given its 1-smoothing, with the small circle at local vertex `10`. The
//! 0-faces of `x` are the same diagram; the 1-faces reduce by R2 to the same
//! diagram. The map is `(a, b) -> (a, f' g b + h' d_x a)`, with `f', h'` the
//! R2 inclusion and homotopy on the target and `g` the R2 projection on the
//! source.

use std::sync::Arc;

use super::chain_map::{ChainMap, MapKind};
use super::rules::{bijective, build, carry, circle_map, parity_sign, reorder, same, to_cube, Rule};
use crate::algebra::{Label, TPoly};
use crate::complex::{CochainElement, CubeComplex, Generator};
use crate::diagram::{ArcId, Edge, LinkDiagram, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct R3Data {
    /// The triangle's edge arcs; the same ids on both sides.
    local: [ArcId; 3],
    /// Whether the 0-face identification exchanges `p` and `q`.
    swap: bool,
}

impl R3Data {
    fn circle_map(&self, a: &CubeComplex, va: Vertex, b: &CubeComplex, vb: Vertex) -> Vec<Option<usize>> {
        let m = circle_map(a.resolution(va), b.resolution(vb), same, &self.local);
        assert!(bijective(&m, b.circle_count(vb)), "r3 faces match circle for circle");
        m
    }

    /// Drops the small circle at a `10` vertex (counit) and moves to `00`.
    fn counit(&self, c: &CubeComplex, g: &Generator, p: usize) -> Option<Generator> {
        let x = c.resolution(g.vertex).circle_of(self.local[0]).expect("small circle");
        if g.label(x) == Label::Plus {
            return None;
        }
        let v00 = c.vertex(g.vertex.bits() & !(1 << p));
        let mut down = circle_map(c.resolution(g.vertex), c.resolution(v00), same, &self.local);
        down[x] = None;
        Some(Generator { vertex: v00, labels: carry(g.labels, &down) })
    }

    /// Moves from `11` to `10`, giving the small circle the unit label.
    fn unit(&self, c: &CubeComplex, g: &Generator, q: usize) -> Generator {
        let v10 = c.vertex(g.vertex.bits() & !(1 << q));
        let m = circle_map(c.resolution(g.vertex), c.resolution(v10), same, &self.local);
        Generator { vertex: v10, labels: carry(g.labels, &m) }
    }

    pub(super) fn apply(&self, src: &CubeComplex, tgt: &CubeComplex, g: &Generator) -> CochainElement {
        let n = src.crossing_count();
        let (p, q, x) = (n - 3, n - 2, n - 1);
        let v = g.vertex;
        let amb = v.bits() & !(1 << p | 1 << q | 1 << x);
        let mut out = CochainElement::zero();
        if !v.bit(x) {
            let (bp, bq) = (v.bit(p), v.bit(q));
            let (tp, tq) = if self.swap { (bq, bp) } else { (bp, bq) };
            let vt = tgt.vertex(amb | (tp as u32) << p | (tq as u32) << q);
            let s = parity_sign(usize::from(self.swap && bp && bq));
            let z = Generator { vertex: vt, labels: carry(g.labels, &self.circle_map(src, v, tgt, vt)) };
            out.add_term(z, s.clone());
            for (y, c) in tgt.edge_map(Edge { tail: vt, star: x }, &z).terms() {
                let h = match (tp, tq) {
                    (true, false) => self.counit(tgt, y, p),
                    (true, true) => Some(self.unit(tgt, y, q)),
                    _ => None,
                };
                if let Some(h) = h {
                    out.add_term(h, c * &s);
                }
            }
            return out;
        }
        let mut mid = CochainElement::zero();
        match (v.bit(p), v.bit(q)) {
            (false, true) => mid.add_term(*g, -TPoly::one()),
            (true, false) => {
                if let Some(w) = self.counit(src, g, p) {
                    for (z, c) in src.edge_map(Edge { tail: w.vertex, star: q }, &w).terms() {
                        mid.add_term(*z, c.clone());
                    }
                }
            }
            _ => {}
        }
        let v01 = tgt.vertex(amb | 1 << q | 1 << x);
        for (z, c) in mid.terms() {
            let z = Generator { vertex: v01, labels: carry(z.labels, &self.circle_map(src, z.vertex, tgt, v01)) };
            out.add_term(z, c.clone());
            for (y, c2) in tgt.edge_map(Edge { tail: v01, star: p }, &z).terms() {
                out.add_term(self.unit(tgt, y, q), c * c2);
            }
        }
        out
    }
}

/// Local vertex of the R2 pair `(tm, tb)` in the 1-face of `mb` holding the
/// small circle made of the three edge arcs, as `(p, q)`.
fn r2_pair(c: &CubeComplex, [tm, tb, mb]: [usize; 3], edges: &[ArcId; 3]) -> Result<(usize, usize)> {
    for (p, q) in [(tm, tb), (tb, tm)] {
        let res = c.resolution(c.vertex(1 << p | 1 << mb));
        let circle = res.circle_of(edges[0]).map(|i| &res.circles()[i]);
        if circle.is_some_and(|arcs| arcs.len() == 3 && edges.iter().all(|e| arcs.contains(e))) {
            return Ok((p, q));
        }
    }
    Err(Error::Internal("r3 triangle has no R2 bigon after smoothing".into()))
}

pub(super) fn r3_map(
    src: &Arc<CubeComplex>,
    out: &LinkDiagram,
    crossings: [usize; 3],
    edges: [ArcId; 3],
    tgt: Option<&Arc<CubeComplex>>,
) -> Result<ChainMap> {
    let t = to_cube(src, out, tgt)?;
    let n = src.crossing_count();
    let [tm, tb, mb] = crossings;
    let (p, q) = r2_pair(src, crossings, &edges)?;
    let (p2, q2) = r2_pair(&t, crossings, &edges)?;
    let amb = (0..n).filter(|i| !crossings.contains(i));
    let order: Vec<usize> = amb.clone().chain([p, q, mb]).collect();
    let order2: Vec<usize> = amb.chain([p2, q2, mb]).collect();
    // the top strand meets its crossings in the other order on the far side
    let partner = |c: usize| if c == tm { tb } else { tm };
    let data = R3Data { local: edges, swap: partner(p) == q2 };
    let first = reorder(src, &order)?;
    let staged = build(&out.with_crossing_order(&order2), src.theory())?;
    let main = ChainMap::new(MapKind::R3, 0, first.target_arc(), staged.clone(), Rule::R3(data));
    let mut perm = vec![0; n];
    for (k, &i) in order2.iter().enumerate() {
        perm[k] = i;
    }
    let back = ChainMap::new(MapKind::Reorder, 0, staged, t, Rule::Reorder { perm });
    let mut m = first.then(main).then(back);
    m.kind = MapKind::R3;
    Ok(m)
}
