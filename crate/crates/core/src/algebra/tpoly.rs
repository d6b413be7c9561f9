use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A polynomial in `t` with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty map
/// and structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl TPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: u32) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Returns `(c, k)` when the polynomial is the single term `c t^k`.
    pub fn as_monomial(&self) -> Option<(&BigInt, u32)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// Coefficient-wise absolute value; used for sign normalization of monomials.
    pub fn abs(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, a)| (*e, a.abs())).collect() }
    }

    /// Evaluates at an integer value of `t`.
    pub fn specialize(&self, t_value: i64) -> BigInt {
        let t = BigInt::from(t_value);
        self.coeffs
            .iter()
            .map(|(e, c)| c * num_traits::pow(t.clone(), *e as usize))
            .fold(BigInt::zero(), |acc, x| acc + x)
    }

    /// Replaces `t` by an integer, keeping the result as a constant polynomial.
    pub fn specialized(&self, t_value: i64) -> Self {
        Self::constant(self.specialize(t_value))
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if *e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for TPoly {
    type Err = Error;

    /// Parses the canonical rendering produced by `Display`, and the more
    /// literal `c0 + c1*t + c2*t^2` form with signed coefficients.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::MalformedToken(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with(['+', '-', '*']) {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut p = TPoly::zero();
        for term in terms {
            let mut body = term.as_str();
            let mut sign = BigInt::one();
            while let Some(rest) = body.strip_prefix(['+', '-']) {
                if body.starts_with('-') {
                    sign = -sign;
                }
                body = rest;
            }
            let (coef, exp) = match body.split_once('t') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some((c, e)) => {
                    let coef = match c.strip_suffix('*') {
                        Some(c) => c.parse::<BigInt>().map_err(|_| bad())?,
                        None if c.is_empty() => BigInt::one(),
                        None => return Err(bad()),
                    };
                    let exp = match e.strip_prefix('^') {
                        Some(e) => e.parse::<u32>().map_err(|_| bad())?,
                        None if e.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (coef, exp)
                }
            };
            p.add_term(exp, sign * coef);
        }
        Ok(p)
    }
}

impl From<i64> for TPoly {
    fn from(c: i64) -> Self {
        TPoly::constant(c)
    }
}

impl AddAssign<&TPoly> for TPoly {
    fn add_assign(&mut self, rhs: &TPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for TPoly {
    type Output = TPoly;
    fn add(mut self, rhs: TPoly) -> TPoly {
        self += &rhs;
        self
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -&self
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        self + &(-rhs)
    }
}

impl Sub for TPoly {
    type Output = TPoly;
    fn sub(self, rhs: TPoly) -> TPoly {
        &self - &rhs
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for TPoly {
    type Output = TPoly;
    fn mul(self, rhs: TPoly) -> TPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn specialize_examples() {
        assert_eq!(TPoly::constant(2).specialize(0), BigInt::from(2));
        assert_eq!(TPoly::monomial(8, 1).specialize(0), BigInt::from(0));
        assert_eq!(TPoly::monomial(8, 1).specialize(1), BigInt::from(8));
    }

    #[test]
    fn display_canonical() {
        assert_eq!(TPoly::zero().to_string(), "0");
        assert_eq!(TPoly::monomial(8, 1).to_string(), "8*t");
        assert_eq!(TPoly::monomial(32, 2).to_string(), "32*t^2");
        assert_eq!(TPoly::from_terms([(0, 2), (1, -3), (3, 1)]).to_string(), "2 - 3*t + t^3");
        assert_eq!(TPoly::monomial(-1, 1).to_string(), "-t");
    }

    #[test]
    fn no_stored_zeros() {
        let p = TPoly::from_terms([(1, 3), (1, -3)]);
        assert!(p.is_zero());
        assert_eq!(p, TPoly::zero());
    }

    #[test]
    fn parse_literal_form() {
        let p: TPoly = "1 + -2*t + 0*t^2 + 5*t^3".parse().unwrap();
        assert_eq!(p, TPoly::from_terms([(0, 1), (1, -2), (3, 5)]));
        assert!("2*x".parse::<TPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = TPoly> {
        prop::collection::vec((0u32..6, -50i64..50), 0..6).prop_map(TPoly::from_terms)
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(p in arb_poly()) {
            let back: TPoly = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn specialize_is_ring_hom(a in arb_poly(), b in arb_poly(), t in -3i64..4) {
            prop_assert_eq!((&a * &b).specialize(t), a.specialize(t) * b.specialize(t));
            prop_assert_eq!((&a + &b).specialize(t), a.specialize(t) + b.specialize(t));
        }
    }
}
