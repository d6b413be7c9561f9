use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{Label, TPoly};
use crate::diagram::Vertex;

/// A basis element of the cochain groups: a cube vertex and a labeling of the
/// circles of its resolution.
///
/// Bit `j` of `labels` is set when circle `j` (circles ordered by smallest
/// arc) carries `v-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub vertex: Vertex,
    pub labels: u64,
}

impl Generator {
    pub fn new(vertex: Vertex, labels: &[Label]) -> Self {
        let mut bits = 0u64;
        for (j, l) in labels.iter().enumerate() {
            if *l == Label::Minus {
                bits |= 1 << j;
            }
        }
        Generator { vertex, labels: bits }
    }

    /// The generator of the empty resolution of a crossingless diagram with
    /// all circles labeled `v+`.
    pub fn all_plus(vertex: Vertex) -> Self {
        Generator { vertex, labels: 0 }
    }

    pub fn label(&self, circle: usize) -> Label {
        if self.labels >> circle & 1 == 1 {
            Label::Minus
        } else {
            Label::Plus
        }
    }

    pub fn with_label(self, circle: usize, l: Label) -> Self {
        let labels = match l {
            Label::Plus => self.labels & !(1 << circle),
            Label::Minus => self.labels | 1 << circle,
        };
        Generator { labels, ..self }
    }

    /// Sum of the label degrees over `circles` circles.
    pub fn label_degree(&self, circles: usize) -> i64 {
        circles as i64 - 2 * self.labels.count_ones() as i64
    }

    pub fn labels(&self, circles: usize) -> Vec<Label> {
        (0..circles).map(|j| self.label(j)).collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:", self.vertex)?;
        let mut l = self.labels;
        let mut j = 0;
        // labels beyond the highest v- are v+ and are not printed
        while l != 0 {
            write!(f, "{}", if l & 1 == 1 { '-' } else { '+' })?;
            l >>= 1;
            j += 1;
        }
        if j == 0 {
            f.write_str("+")?;
        }
        f.write_str("]")
    }
}

/// A sparse `Z[t]`-combination of generators.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct CochainElement {
    terms: BTreeMap<Generator, TPoly>,
}

impl CochainElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(g, TPoly::one())
    }

    pub fn term(g: Generator, c: TPoly) -> Self {
        let mut x = Self::zero();
        x.add_term(g, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &TPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Generator) -> TPoly {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, g: Generator, c: TPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_assign(&mut self, other: &CochainElement) {
        for (g, c) in &other.terms {
            self.add_term(*g, c.clone());
        }
    }

    pub fn scale(&self, c: &TPoly) -> CochainElement {
        let mut out = CochainElement::zero();
        for (g, x) in &self.terms {
            out.add_term(*g, x * c);
        }
        out
    }

    /// Applies `f` to every generator and sums the scaled images.
    pub fn map_linear<F>(&self, mut f: F) -> CochainElement
    where
        F: FnMut(&Generator) -> CochainElement,
    {
        let mut out = CochainElement::zero();
        for (g, c) in &self.terms {
            out.add_assign(&f(g).scale(c));
        }
        out
    }

    pub fn specialized(&self, t_value: i64) -> CochainElement {
        let mut out = CochainElement::zero();
        for (g, c) in &self.terms {
            out.add_term(*g, c.specialized(t_value));
        }
        out
    }

    /// The coefficient of the only generator of a one-generator complex
    /// (the empty diagram), or of `g` in general.
    pub fn scalar(&self) -> TPoly {
        match self.terms.iter().next() {
            None => TPoly::zero(),
            Some((_, c)) if self.terms.len() == 1 => c.clone(),
            Some(_) => panic!("scalar() on an element with several generators"),
        }
    }
}

impl fmt::Debug for CochainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CochainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){g}")?;
        }
        Ok(())
    }
}

impl Add for &CochainElement {
    type Output = CochainElement;
    fn add(self, rhs: &CochainElement) -> CochainElement {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &CochainElement {
    type Output = CochainElement;
    fn sub(self, rhs: &CochainElement) -> CochainElement {
        self + &(-rhs)
    }
}

impl Neg for &CochainElement {
    type Output = CochainElement;
    fn neg(self) -> CochainElement {
        CochainElement { terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect() }
    }
}

impl FromIterator<(Generator, TPoly)> for CochainElement {
    fn from_iter<I: IntoIterator<Item = (Generator, TPoly)>>(iter: I) -> Self {
        let mut out = CochainElement::zero();
        for (g, c) in iter {
            out.add_term(g, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_drops_terms() {
        let g = Generator::new(Vertex::new(0, 0), &[Label::Minus]);
        let x = CochainElement::generator(g);
        assert!((&x - &x).is_zero());
        assert_eq!((&x + &x).coeff(&g), TPoly::constant(2));
    }

    #[test]
    fn labels_roundtrip() {
        let ls = [Label::Plus, Label::Minus, Label::Minus];
        let g = Generator::new(Vertex::new(1, 2), &ls);
        assert_eq!(g.labels(3), ls);
        assert_eq!(g.label_degree(3), -1);
        assert_eq!(g.with_label(1, Label::Plus).labels(3), [Label::Plus, Label::Plus, Label::Minus]);
        assert_eq!(g.to_string(), "[10:+--]");
    }
}
