//! Integral cohomology of the cube complex, graded Euler characteristic, and
//! an independent Jones polynomial.

mod jones;
mod laurent;
mod matrix;
mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use jones::{kauffman_jones, JONES_CAP};
pub use laurent::LaurentPoly;
pub use matrix::IntegerMatrix;
pub use snf::{smith, SmithForm};

use crate::algebra::{TPoly, Theory};
use crate::complex::{CochainElement, CubeComplex, Generator};
use crate::error::{Error, Result};

/// `Z^free_rank` plus cyclic torsion summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Invariant factors, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Block key: `(i, Some(q))` for Khovanov, `(i, None)` for Lee.
pub type Bidegree = (i64, Option<i64>);

/// One nonzero group, in the shape the renderers use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub i: i64,
    pub q: Option<i64>,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub theory: Theory,
    pub groups: BTreeMap<Bidegree, HomologyGroup>,
}

impl Homology {
    pub fn get(&self, i: i64, q: Option<i64>) -> HomologyGroup {
        self.groups.get(&(i, q)).cloned().unwrap_or_default()
    }

    pub fn rows(&self) -> Vec<HomologyRow> {
        self.groups
            .iter()
            .map(|((i, q), g)| HomologyRow {
                i: *i,
                q: *q,
                free_rank: g.free_rank,
                torsion: g.torsion.iter().map(|t| t.to_string()).collect(),
            })
            .collect()
    }

    /// `sum (-1)^i q^j rank H^{i,j}`; only meaningful for Khovanov.
    pub fn euler(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for ((i, q), g) in &self.groups {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            p.add_term(q.unwrap_or(0), BigInt::from(sign * g.free_rank as i64));
        }
        p
    }
}

fn key_of(c: &CubeComplex, g: &Generator) -> Bidegree {
    let (i, q) = c.degrees(g);
    if c.theory() == Theory::Lee {
        (i, None)
    } else {
        (i, Some(q))
    }
}

fn t_value(th: Theory) -> i64 {
    match th {
        Theory::Lee => 1,
        _ => 0,
    }
}

/// The differential cut into blocks, with Smith forms of every block map.
///
/// Supports deciding whether a cocycle is a coboundary, which is what the
/// homology-level checks of chain maps need.
pub struct BlockComplex<'a> {
    cube: &'a CubeComplex,
    basis: BTreeMap<Bidegree, Vec<Generator>>,
    index: BTreeMap<Generator, (Bidegree, usize)>,
    /// Smith form of `d` leaving each block.
    outgoing: BTreeMap<Bidegree, SmithForm>,
}

impl<'a> BlockComplex<'a> {
    pub fn new(cube: &'a CubeComplex) -> Result<Self> {
        if cube.theory() == Theory::BarNatan {
            return Err(Error::TheoryUnsupported);
        }
        let mut basis: BTreeMap<Bidegree, Vec<Generator>> = BTreeMap::new();
        for g in cube.generators() {
            basis.entry(key_of(cube, &g)).or_default().push(g);
        }
        let mut index = BTreeMap::new();
        for (k, gs) in &basis {
            for (j, g) in gs.iter().enumerate() {
                index.insert(*g, (*k, j));
            }
        }
        let mut me = BlockComplex { cube, basis, index, outgoing: BTreeMap::new() };
        let keys: Vec<Bidegree> = me.basis.keys().copied().collect();
        for k in keys {
            let s = me.block_matrix(k).smith();
            me.outgoing.insert(k, s);
        }
        Ok(me)
    }

    fn next(k: Bidegree) -> Bidegree {
        (k.0 + 1, k.1)
    }

    fn prev(k: Bidegree) -> Bidegree {
        (k.0 - 1, k.1)
    }

    pub fn keys(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.basis.keys().copied()
    }

    pub fn rank(&self, k: Bidegree) -> usize {
        self.basis.get(&k).map_or(0, |b| b.len())
    }

    /// Matrix of `d` from block `k` to the block above it.
    pub fn block_matrix(&self, k: Bidegree) -> IntegerMatrix {
        let src = &self.basis[&k];
        let rows = self.rank(Self::next(k));
        let tv = t_value(self.cube.theory());
        let mut m = IntegerMatrix::zeros(rows, src.len());
        for (j, g) in src.iter().enumerate() {
            for (h, c) in self.cube.d_generator(g).terms() {
                let (hk, i) = self.index[h];
                debug_assert_eq!(hk, Self::next(k));
                m.add(i, j, c.specialize(tv));
            }
        }
        m
    }

    pub fn group(&self, k: Bidegree) -> HomologyGroup {
        let dim = self.rank(k);
        let out_rank = self.outgoing.get(&k).map_or(0, |s| s.rank());
        let incoming = self.outgoing.get(&Self::prev(k));
        let in_rank = incoming.map_or(0, |s| s.rank());
        HomologyGroup {
            free_rank: dim - out_rank - in_rank,
            torsion: incoming.map(|s| s.torsion()).unwrap_or_default(),
        }
    }

    /// A basis of the cocycles in block `k`.
    pub fn cocycle_basis(&self, k: Bidegree) -> Vec<CochainElement> {
        let Some(s) = self.outgoing.get(&k) else { return Vec::new() };
        let gens = &self.basis[&k];
        s.kernel_basis()
            .into_iter()
            .map(|col| {
                gens.iter()
                    .zip(col)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(g, x)| (*g, TPoly::from_terms([(0u32, x)])))
                    .collect()
            })
            .collect()
    }

    fn vectors(&self, x: &CochainElement) -> Result<BTreeMap<Bidegree, Vec<BigInt>>> {
        let tv = t_value(self.cube.theory());
        let mut out: BTreeMap<Bidegree, Vec<BigInt>> = BTreeMap::new();
        for (g, c) in x.terms() {
            let (k, j) = *self.index.get(g).ok_or(Error::ForeignGenerator)?;
            let v = out.entry(k).or_insert_with(|| vec![BigInt::zero(); self.rank(k)]);
            v[j] += c.specialize(tv);
        }
        Ok(out)
    }

    /// Whether `x` is `d` of some integral cochain.
    pub fn is_coboundary(&self, x: &CochainElement) -> Result<bool> {
        for (k, v) in self.vectors(x)? {
            if v.iter().all(|a| a.is_zero()) {
                continue;
            }
            match self.outgoing.get(&Self::prev(k)) {
                Some(s) if s.in_image(&v) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    pub fn is_cocycle(&self, x: &CochainElement) -> Result<bool> {
        let dx = self.cube.differential(x)?;
        Ok(self.vectors(&dx)?.values().all(|v| v.iter().all(|a| a.is_zero())))
    }

    pub fn homology(&self) -> Homology {
        let groups = self.keys().map(|k| (k, self.group(k))).filter(|(_, g)| !g.is_zero()).collect();
        Homology { theory: self.cube.theory(), groups }
    }
}

/// Blockwise integral cohomology. Khovanov groups are bigraded; Lee groups
/// are graded by `i` only. Bar-Natan theory is refused.
pub fn homology(c: &CubeComplex) -> Result<Homology> {
    Ok(BlockComplex::new(c)?.homology())
}

/// Graded Euler characteristic from the ranks of the cochain groups.
pub fn graded_euler(c: &CubeComplex) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for ((i, q), r) in c.chain_ranks() {
        let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
        p.add_term(q, BigInt::from(sign * r as i64));
    }
    p
}

pub fn render_human(rows: &[HomologyRow]) -> String {
    let mut out = format!("{:>4} {:>5} {:>5}  {}\n", "i", "q", "rank", "torsion");
    for r in rows {
        let q = r.q.map_or("-".to_string(), |q| q.to_string());
        let t = if r.torsion.is_empty() { "-".to_string() } else { r.torsion.join(" ") };
        out += &format!("{:>4} {:>5} {:>5}  {}\n", r.i, q, r.free_rank, t);
    }
    out
}

pub fn render_csv(rows: &[HomologyRow]) -> String {
    let mut out = String::from("i,q,free_rank,torsion\n");
    for r in rows {
        let q = r.q.map_or(String::new(), |q| q.to_string());
        out += &format!("{},{},{},{}\n", r.i, q, r.free_rank, r.torsion.join(" "));
    }
    out
}

/// Poincare-style summary such as `Z[0,1] + Z[0,-1]`; handy in test output.
pub fn summary(h: &Homology) -> String {
    if h.groups.is_empty() {
        return "0".into();
    }
    h.groups
        .iter()
        .map(|((i, q), g)| match q {
            Some(q) => format!("({g})[{i},{q}]"),
            None => format!("({g})[{i}]"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests;
