//! The cube of modules of a diagram and its signed differential.

mod element;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

pub use element::{CochainElement, Generator};

use crate::algebra::{comultiply, multiply, Label, TPoly, Theory, T_DEGREE};
use crate::diagram::{resolve, Edge, EdgeEffect, LinkDiagram, MergeOrSplit, ResolvedDiagram, Vertex};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 16;

/// Labels fit in a `u64` bitmask with room for the generator count.
pub const MAX_CIRCLES: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub cap: usize,
    /// Threads used to resolve vertices; 0 or 1 means single-threaded.
    pub workers: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { cap: DEFAULT_CAP, workers: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    diagram: LinkDiagram,
    theory: Theory,
    n: usize,
    n_plus: usize,
    n_minus: usize,
    resolutions: Vec<ResolvedDiagram>,
    /// Indexed by `vertex * n + star` for edges leaving `vertex`.
    edges: Vec<Option<EdgeEffect>>,
    flipped: BTreeSet<(u32, usize)>,
}

/// Outcome of an exhaustive check over the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub violation: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl CubeComplex {
    pub fn build(d: &LinkDiagram, th: Theory) -> Result<Self> {
        Self::build_with(d, th, BuildOptions::default())
    }

    pub fn build_with(d: &LinkDiagram, th: Theory, opts: BuildOptions) -> Result<Self> {
        let n = d.crossing_count();
        if n > opts.cap {
            return Err(Error::CapExceeded { crossings: n, cap: opts.cap });
        }
        if n >= Vertex::MAX_LEN {
            return Err(Error::CapExceeded { crossings: n, cap: Vertex::MAX_LEN - 1 });
        }
        let count = 1usize << n;
        let resolutions = par_map(count, opts.workers, |v| resolve(d, Vertex::new(v as u32, n)))?;
        if let Some(r) = resolutions.iter().find(|r| r.circle_count() > MAX_CIRCLES) {
            return Err(Error::TooManyCircles(r.circle_count()));
        }
        let edges = par_map(count * n.max(1), opts.workers, |k| {
            if n == 0 {
                return Ok(None);
            }
            let (v, star) = (k / n, k % n);
            if v >> star & 1 == 1 {
                return Ok(None);
            }
            let w = v | 1 << star;
            crate::diagram::edge_effect_between(d, star, &resolutions[v], &resolutions[w]).map(Some)
        })?;
        Ok(CubeComplex {
            diagram: d.clone(),
            theory: th,
            n,
            n_plus: d.n_plus(),
            n_minus: d.n_minus(),
            resolutions,
            edges,
            flipped: BTreeSet::new(),
        })
    }

    /// The same complex with the sign of one edge reversed. Only useful for
    /// checking that the verifiers notice a broken cube.
    pub fn with_flipped_sign(mut self, e: Edge) -> Self {
        self.flipped.insert((e.tail.bits(), e.star));
        self
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn crossing_count(&self) -> usize {
        self.n
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn vertex_count(&self) -> usize {
        self.resolutions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    pub fn vertex(&self, bits: u32) -> Vertex {
        Vertex::new(bits, self.n)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.resolutions.len() as u32).map(|b| self.vertex(b))
    }

    pub fn resolution(&self, v: Vertex) -> &ResolvedDiagram {
        &self.resolutions[v.bits() as usize]
    }

    pub fn circle_count(&self, v: Vertex) -> usize {
        self.resolution(v).circle_count()
    }

    pub fn edge(&self, e: Edge) -> &EdgeEffect {
        self.edges[e.tail.bits() as usize * self.n + e.star].as_ref().expect("edge leaves its tail")
    }

    pub fn edge_sign(&self, e: Edge) -> i64 {
        let s = if e.weight_after_star().is_multiple_of(2) { 1 } else { -1 };
        if self.flipped.contains(&(e.tail.bits(), e.star)) {
            -s
        } else {
            s
        }
    }

    pub fn edges_from(&self, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).filter(move |&s| !v.bit(s)).map(move |star| Edge { tail: v, star })
    }

    pub fn generators_at(&self, v: Vertex) -> impl Iterator<Item = Generator> {
        let k = self.circle_count(v);
        (0..1u64 << k).map(move |labels| Generator { vertex: v, labels })
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.vertices().flat_map(|v| self.generators_at(v))
    }

    pub fn generator_count(&self) -> usize {
        self.resolutions.iter().map(|r| 1usize << r.circle_count()).sum()
    }

    pub fn contains(&self, g: &Generator) -> bool {
        g.vertex.len() == self.n
            && (g.vertex.bits() as usize) < self.resolutions.len()
            && g.labels >> self.circle_count(g.vertex) == 0
    }

    /// `(i, q)` of a generator.
    pub fn degrees(&self, g: &Generator) -> (i64, i64) {
        let w = g.vertex.weight() as i64 - self.n_minus as i64;
        let q = g.label_degree(self.circle_count(g.vertex)) + w + self.n_plus as i64 - self.n_minus as i64;
        (w, q)
    }

    /// The common `(i, q)` of all terms, with `t^k` lowering q by 4k; `None`
    /// for zero or inhomogeneous elements.
    pub fn homogeneous_degree(&self, x: &CochainElement) -> Option<(i64, i64)> {
        let mut out: Option<(i64, i64)> = None;
        for (g, c) in x.terms() {
            let (i, q) = self.degrees(g);
            for (k, _) in c.terms() {
                let d = (i, q + T_DEGREE * k as i64);
                match out {
                    None => out = Some(d),
                    Some(o) if o != d => return None,
                    _ => {}
                }
            }
        }
        out
    }

    /// The circle-level map of one edge, without sign.
    pub fn edge_map(&self, e: Edge, g: &Generator) -> CochainElement {
        let eff = self.edge(e);
        let head = e.head();
        let mut base = 0u64;
        for (i, c) in eff.carry.iter().enumerate() {
            if let Some(j) = c {
                if g.labels >> i & 1 == 1 {
                    base |= 1 << j;
                }
            }
        }
        let bit = |l: Label, at: usize| if l == Label::Minus { 1u64 << at } else { 0 };
        let mut out = CochainElement::zero();
        match eff.kind {
            MergeOrSplit::Merge { sources: (a, b), target } => {
                for (c, l) in multiply(g.label(a), g.label(b), self.theory) {
                    out.add_term(Generator { vertex: head, labels: base | bit(l, target) }, c);
                }
            }
            MergeOrSplit::Split { source, targets: (t0, t1) } => {
                for (c, l0, l1) in comultiply(g.label(source), self.theory) {
                    let labels = base | bit(l0, t0) | bit(l1, t1);
                    out.add_term(Generator { vertex: head, labels }, c);
                }
            }
        }
        out
    }

    pub fn d_generator(&self, g: &Generator) -> CochainElement {
        let mut out = CochainElement::zero();
        for e in self.edges_from(g.vertex) {
            let img = self.edge_map(e, g);
            let img = if self.edge_sign(e) < 0 { -&img } else { img };
            out.add_assign(&img);
        }
        out
    }

    pub fn differential(&self, x: &CochainElement) -> Result<CochainElement> {
        if x.terms().any(|(g, _)| !self.contains(g)) {
            return Err(Error::ForeignGenerator);
        }
        Ok(x.map_linear(|g| self.d_generator(g)))
    }

    /// `d(d(g)) = 0` for every basis generator.
    pub fn check_d_squared(&self) -> CheckReport {
        let mut checked = 0;
        for g in self.generators() {
            checked += 1;
            let dd = self.d_generator(&g).map_linear(|h| self.d_generator(h));
            if !dd.is_zero() {
                return CheckReport { checked, violation: Some(format!("d(d({g})) = {dd}")) };
            }
        }
        CheckReport { checked, violation: None }
    }

    /// Every square face commutes before signs and anticommutes after.
    pub fn check_faces(&self) -> CheckReport {
        let mut checked = 0;
        for v in self.vertices() {
            for i in 0..self.n {
                for j in i + 1..self.n {
                    if v.bit(i) || v.bit(j) {
                        continue;
                    }
                    let ei = Edge { tail: v, star: i };
                    let ej = Edge { tail: v, star: j };
                    let ej_after = Edge { tail: v.with_bit(i, true), star: j };
                    let ei_after = Edge { tail: v.with_bit(j, true), star: i };
                    for g in self.generators_at(v) {
                        checked += 1;
                        let a = self.edge_map(ei, &g).map_linear(|h| self.edge_map(ej_after, h));
                        let b = self.edge_map(ej, &g).map_linear(|h| self.edge_map(ei_after, h));
                        if a != b {
                            return CheckReport {
                                checked,
                                violation: Some(format!("face {v} ({i},{j}) does not commute on {g}")),
                            };
                        }
                        let s = self.edge_sign(ei) * self.edge_sign(ej_after)
                            + self.edge_sign(ej) * self.edge_sign(ei_after);
                        if s != 0 && !a.is_zero() {
                            return CheckReport {
                                checked,
                                violation: Some(format!("face {v} ({i},{j}) is not anticommutative after signs")),
                            };
                        }
                    }
                }
            }
        }
        CheckReport { checked, violation: None }
    }

    /// Generators grouped by `(i, q)`; for Lee theory only `i` is meaningful
    /// and every generator of a given `i` shares the key `(i, 0)`.
    pub fn blocks(&self) -> BTreeMap<(i64, i64), Vec<Generator>> {
        let mut out: BTreeMap<(i64, i64), Vec<Generator>> = BTreeMap::new();
        for g in self.generators() {
            let (i, q) = self.degrees(&g);
            let key = if self.theory == Theory::Lee { (i, 0) } else { (i, q) };
            out.entry(key).or_default().push(g);
        }
        out
    }

    /// Ranks of the cochain groups per `(i, q)`.
    pub fn chain_ranks(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for g in self.generators() {
            *out.entry(self.degrees(&g)).or_insert(0) += 1;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<_> = self
            .vertices()
            .map(|v| {
                let r = self.resolution(v);
                json!({
                    "vertex": v.to_string(),
                    "weight": v.weight(),
                    "circles": r.circle_count(),
                    "circle_ids": (0..r.circle_count()).map(|c| r.circle_id(c).0).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut edges = Vec::new();
        for v in self.vertices() {
            for e in self.edges_from(v) {
                let name: String = (0..self.n)
                    .map(|k| {
                        if k == e.star {
                            '*'
                        } else if v.bit(k) {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect();
                let (kind, detail) = match self.edge(e).kind {
                    MergeOrSplit::Merge { sources, target } => {
                        ("merge", json!({"sources": [sources.0, sources.1], "target": target}))
                    }
                    MergeOrSplit::Split { source, targets } => {
                        ("split", json!({"source": source, "targets": [targets.0, targets.1]}))
                    }
                };
                edges.push(json!({"edge": name, "kind": kind, "sign": self.edge_sign(e), "circles": detail}));
            }
        }
        json!({
            "diagram": self.diagram.to_pd(),
            "theory": self.theory.to_string(),
            "crossings": self.n,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "vertices": vertices,
            "edges": edges,
        })
    }

    /// Unit element of the complex of a crossingless diagram with every circle
    /// labeled `v+`; the starting point of closed movies when empty.
    pub fn empty_generator(&self) -> Generator {
        Generator::all_plus(self.vertex(0))
    }

    pub fn scalar(&self, c: TPoly) -> CochainElement {
        CochainElement::term(self.empty_generator(), c)
    }
}

/// Evaluates `f(0..count)` in order, spreading the work over `workers` threads.
fn par_map<T, F>(count: usize, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    if workers <= 1 || count < 64 {
        return (0..count).map(&f).collect();
    }
    let chunk = count.div_ceil(workers);
    let f = &f;
    let parts: Vec<Result<Vec<T>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = (w * chunk).min(count);
                let hi = ((w + 1) * chunk).min(count);
                s.spawn(move || (lo..hi).map(f).collect::<Result<Vec<T>>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(count);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}
