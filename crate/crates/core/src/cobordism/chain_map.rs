use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Theory;
use crate::complex::{CheckReport, CochainElement, CubeComplex, Generator};
use crate::error::Result;
use crate::homology::BlockComplex;

use super::rules::Rule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Identity,
    Birth,
    Death,
    Saddle,
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    Reorder,
    Composite,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapKind::Identity => "identity",
            MapKind::Birth => "birth",
            MapKind::Death => "death",
            MapKind::Saddle => "saddle",
            MapKind::R1Add => "r1 add",
            MapKind::R1Remove => "r1 remove",
            MapKind::R2Add => "r2 add",
            MapKind::R2Remove => "r2 remove",
            MapKind::R3 => "r3",
            MapKind::Reorder => "reorder",
            MapKind::Composite => "composite",
        };
        f.write_str(s)
    }
}

/// A chain map between two cube complexes of the same theory.
///
/// Images are computed generator by generator from a local rule, so a map on
/// a large cube costs nothing until it is applied.
#[derive(Clone)]
pub struct ChainMap {
    pub kind: MapKind,
    /// Shift of the q-grading; the cohomological degree is always preserved.
    pub degree: i64,
    source: Arc<CubeComplex>,
    target: Arc<CubeComplex>,
    rule: Rule,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({}, {} -> {})", self.kind, self.source.diagram(), self.target.diagram())
    }
}

impl ChainMap {
    pub(crate) fn new(
        kind: MapKind,
        degree: i64,
        source: Arc<CubeComplex>,
        target: Arc<CubeComplex>,
        rule: Rule,
    ) -> Self {
        ChainMap { kind, degree, source, target, rule }
    }

    pub fn identity(c: Arc<CubeComplex>) -> Self {
        ChainMap::new(MapKind::Identity, 0, c.clone(), c, Rule::Identity)
    }

    pub fn source(&self) -> &CubeComplex {
        &self.source
    }

    pub fn target(&self) -> &CubeComplex {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<CubeComplex> {
        self.source.clone()
    }

    pub fn target_arc(&self) -> Arc<CubeComplex> {
        self.target.clone()
    }

    pub fn theory(&self) -> Theory {
        self.source.theory()
    }

    pub fn apply_generator(&self, g: &Generator) -> CochainElement {
        self.rule.apply(&self.source, &self.target, g)
    }

    pub fn apply(&self, x: &CochainElement) -> CochainElement {
        x.map_linear(|g| self.apply_generator(g))
    }

    /// `then ∘ self`.
    pub fn then(self, then: ChainMap) -> ChainMap {
        assert_eq!(self.target.diagram(), then.source.diagram(), "composing maps with mismatched ends");
        let degree = self.degree + then.degree;
        let (source, target) = (self.source.clone(), then.target.clone());
        let mut parts = Vec::new();
        for m in [self, then] {
            match m.rule {
                Rule::Compose(ps) => parts.extend(ps),
                Rule::Identity => {}
                _ => parts.push(m),
            }
        }
        ChainMap::new(MapKind::Composite, degree, source, target, Rule::Compose(parts))
    }

    /// Images of every basis generator of the source, zero images omitted.
    pub fn table(&self) -> BTreeMap<Generator, CochainElement> {
        self.source.generators().map(|g| (g, self.apply_generator(&g))).filter(|(_, x)| !x.is_zero()).collect()
    }

    /// `d ∘ f = f ∘ d` on every source generator.
    pub fn check_chain_law(&self) -> CheckReport {
        let mut checked = 0;
        for g in self.source.generators() {
            checked += 1;
            let lhs = self.apply_generator(&g).map_linear(|h| self.target.d_generator(h));
            let rhs = self.apply(&self.source.d_generator(&g));
            if lhs != rhs {
                return CheckReport {
                    checked,
                    violation: Some(format!("{}: d f({g}) = {lhs} but f d({g}) = {rhs}", self.kind)),
                };
            }
        }
        CheckReport { checked, violation: None }
    }

    /// Every nonzero image is homogeneous of degree `(i, q + degree)`.
    /// Lee theory is not q-graded and passes trivially.
    pub fn check_degree(&self) -> CheckReport {
        let mut checked = 0;
        if self.theory() == Theory::Lee {
            return CheckReport { checked, violation: None };
        }
        for g in self.source.generators() {
            let img = self.apply_generator(&g);
            if img.is_zero() {
                continue;
            }
            checked += 1;
            let (i, q) = self.source.degrees(&g);
            let got = self.target.homogeneous_degree(&img);
            if got != Some((i, q + self.degree)) {
                return CheckReport {
                    checked,
                    violation: Some(format!("{}: {g} of degree {:?} maps to degree {got:?}", self.kind, (i, q))),
                };
            }
        }
        CheckReport { checked, violation: None }
    }
}

/// Whether `back ∘ forth` induces the identity on cohomology of the source of
/// `forth`: every cocycle `z` has `back(forth(z)) - z` a coboundary.
///
/// Only defined over the integers (Khovanov or Lee theory).
pub fn induces_identity(forth: &ChainMap, back: &ChainMap) -> Result<CheckReport> {
    let blocks = BlockComplex::new(forth.source())?;
    let mut checked = 0;
    let keys: Vec<_> = blocks.keys().collect();
    for k in keys {
        for z in blocks.cocycle_basis(k) {
            checked += 1;
            let diff = &back.apply(&forth.apply(&z)) - &z;
            if !blocks.is_coboundary(&diff)? {
                return Ok(CheckReport {
                    checked,
                    violation: Some(format!("class of {z} in block {k:?} is not preserved")),
                });
            }
        }
    }
    Ok(CheckReport { checked, violation: None })
}
