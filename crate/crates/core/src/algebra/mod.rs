//! The rank-two Frobenius algebra `V = Z[t]<v+, v->` and its specializations.
//!
//! One family covers all three theories: Bar-Natan keeps `t` as a variable of
//! q-degree -4, Khovanov sets `t = 0`, Lee sets `t = 1`.

mod tpoly;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use tpoly::TPoly;

use crate::error::Error;

/// q-degree carried by one power of `t`.
pub const T_DEGREE: i64 = -4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "v+")]
    Plus,
    #[serde(rename = "v-")]
    Minus,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::Plus, Label::Minus];

    pub fn q_degree(self) -> i64 {
        match self {
            Label::Plus => 1,
            Label::Minus => -1,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Plus => "v+",
            Label::Minus => "v-",
        })
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "v+" | "+" | "plus" => Ok(Label::Plus),
            "v-" | "-" | "minus" => Ok(Label::Minus),
            _ => Err(Error::MalformedToken(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    Khovanov,
    BarNatan,
    Lee,
}

impl Theory {
    pub const ALL: [Theory; 3] = [Theory::Khovanov, Theory::BarNatan, Theory::Lee];

    /// The value `t` takes in this theory, or `None` when it is zero.
    pub fn t(self) -> Option<TPoly> {
        match self {
            Theory::Khovanov => None,
            Theory::BarNatan => Some(TPoly::t()),
            Theory::Lee => Some(TPoly::one()),
        }
    }

    /// Whether coefficients may carry powers of `t` (and so shift q-degree).
    pub fn is_graded_in_t(self) -> bool {
        self == Theory::BarNatan
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Khovanov => "khovanov",
            Theory::BarNatan => "bar-natan",
            Theory::Lee => "lee",
        })
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "khovanov" | "kh" => Ok(Theory::Khovanov),
            "bar-natan" | "bar_natan" | "bn" => Ok(Theory::BarNatan),
            "lee" => Ok(Theory::Lee),
            _ => Err(Error::MalformedToken(s.to_string())),
        }
    }
}

/// q-degree of the term `c t^k x`, counting `deg t = -4`.
pub fn term_q_degree(coef: &TPoly, label_degree: i64) -> Option<i64> {
    let (_, k) = coef.as_monomial()?;
    Some(label_degree + T_DEGREE * k as i64)
}

pub fn multiply(x: Label, y: Label, th: Theory) -> Vec<(TPoly, Label)> {
    use Label::*;
    match (x, y) {
        (Plus, Plus) => vec![(TPoly::one(), Plus)],
        (Plus, Minus) | (Minus, Plus) => vec![(TPoly::one(), Minus)],
        (Minus, Minus) => th.t().map(|t| vec![(t, Plus)]).unwrap_or_default(),
    }
}

pub fn comultiply(x: Label, th: Theory) -> Vec<(TPoly, Label, Label)> {
    use Label::*;
    match x {
        Plus => vec![(TPoly::one(), Plus, Minus), (TPoly::one(), Minus, Plus)],
        Minus => {
            let mut out = vec![(TPoly::one(), Minus, Minus)];
            if let Some(t) = th.t() {
                out.push((t, Plus, Plus));
            }
            out
        }
    }
}

pub fn unit(_th: Theory) -> Label {
    Label::Plus
}

pub fn counit(x: Label, _th: Theory) -> TPoly {
    match x {
        Label::Plus => TPoly::zero(),
        Label::Minus => TPoly::one(),
    }
}

/// `m ∘ Δ`, the genus-adding map on one circle.
pub fn tube(x: Label, th: Theory) -> Vec<(TPoly, Label)> {
    let mut acc: std::collections::BTreeMap<Label, TPoly> = Default::default();
    for (c, a, b) in comultiply(x, th) {
        for (c2, z) in multiply(a, b, th) {
            *acc.entry(z).or_default() += &(&c * &c2);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(l, c)| (c, l)).collect()
}
