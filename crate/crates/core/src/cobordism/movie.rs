use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::chain_map::ChainMap;
use super::rules::esi_chain_map;
use crate::algebra::{Label, TPoly, Theory};
use crate::complex::{BuildOptions, CochainElement, CubeComplex, Generator};
use crate::diagram::{apply_esi, parse_pd, ArcId, Esi, LinkDiagram, R1Variant, R2Variant, R3Variant};
use crate::error::{Error, Result};

/// Where a movie starts and stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MovieEnd {
    /// Empty diagram to empty diagram.
    Closed,
    /// Empty diagram to a crossingless unknot.
    FromEmpty,
    /// The unknot `L1` to the empty diagram.
    ToEmpty,
}

impl MovieEnd {
    fn starts_at_unknot(self) -> bool {
        self == MovieEnd::ToEmpty
    }

    fn ends_at_unknot(self) -> bool {
        self == MovieEnd::FromEmpty
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Movie {
    pub events: Vec<Esi>,
    pub end: MovieEnd,
}

/// Result of replaying a movie.
#[derive(Clone, Debug)]
pub struct Report {
    /// Every still reached, starting with the first.
    pub stills: Vec<LinkDiagram>,
    /// 1-based event index and reason of the first failure; index
    /// `events.len() + 1` flags a bad final still.
    pub failure: Option<(usize, String)>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn into_result(self) -> Result<Vec<LinkDiagram>> {
        match self.failure {
            None => Ok(self.stills),
            Some((index, reason)) => Err(Error::InvalidMovie { index, reason }),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "valid ({} stills)", self.stills.len()),
            Some((i, r)) => write!(f, "invalid at event {i}: {r}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
enum EventFile {
    Birth,
    Death {
        circle: u32,
    },
    Saddle {
        arcs: [u32; 2],
    },
    R1 {
        variant: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arc: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        crossing: Option<usize>,
    },
    R2 {
        variant: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arcs: Option<[u32; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        crossings: Option<[usize; 2]>,
    },
    R3 {
        crossings: [usize; 3],
        variant: String,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MovieFile {
    #[serde(default)]
    start: Option<String>,
    #[serde(default)]
    end: Option<String>,
    movie: Vec<EventFile>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::MovieFormat(msg.into())
}

impl EventFile {
    fn into_esi(self) -> Result<Esi> {
        Ok(match self {
            EventFile::Birth => Esi::Birth,
            EventFile::Death { circle } => Esi::Death { circle: ArcId(circle) },
            EventFile::Saddle { arcs: [a, b] } => Esi::Saddle { arcs: [ArcId(a), ArcId(b)] },
            EventFile::R1 { variant, arc, crossing } => {
                let v = match (variant.as_str(), arc, crossing) {
                    ("add_pos", Some(a), None) => R1Variant::AddPositive { arc: ArcId(a) },
                    ("add_neg", Some(a), None) => R1Variant::AddNegative { arc: ArcId(a) },
                    ("remove", None, Some(c)) => R1Variant::Remove { crossing: c },
                    _ => return Err(bad(format!("r1 {variant} needs an arc (add) or a crossing (remove)"))),
                };
                Esi::R1(v)
            }
            EventFile::R2 { variant, arcs, crossings } => {
                let v = match (variant.as_str(), arcs, crossings) {
                    ("add", Some([a, b]), None) => R2Variant::Add { over: ArcId(a), under: ArcId(b) },
                    ("remove", None, Some(c)) => R2Variant::Remove { crossings: c },
                    _ => return Err(bad(format!("r2 {variant} needs arcs (add) or crossings (remove)"))),
                };
                Esi::R2(v)
            }
            EventFile::R3 { crossings, variant } => {
                let variant = match variant.as_str() {
                    "braid_positive" => R3Variant::BraidPositive,
                    _ => R3Variant::Other,
                };
                Esi::R3 { crossings, variant }
            }
        })
    }

    fn from_esi(e: &Esi) -> EventFile {
        match *e {
            Esi::Birth => EventFile::Birth,
            Esi::Death { circle } => EventFile::Death { circle: circle.0 },
            Esi::Saddle { arcs: [a, b] } => EventFile::Saddle { arcs: [a.0, b.0] },
            Esi::R1(v) => {
                let (variant, arc, crossing) = match v {
                    R1Variant::AddPositive { arc } => ("add_pos", Some(arc.0), None),
                    R1Variant::AddNegative { arc } => ("add_neg", Some(arc.0), None),
                    R1Variant::Remove { crossing } => ("remove", None, Some(crossing)),
                };
                EventFile::R1 { variant: variant.into(), arc, crossing }
            }
            Esi::R2(R2Variant::Add { over, under }) => {
                EventFile::R2 { variant: "add".into(), arcs: Some([over.0, under.0]), crossings: None }
            }
            Esi::R2(R2Variant::Remove { crossings }) => {
                EventFile::R2 { variant: "remove".into(), arcs: None, crossings: Some(crossings) }
            }
            Esi::R3 { crossings, variant } => EventFile::R3 { crossings, variant: variant.tag().into() },
        }
    }
}

fn unknot() -> LinkDiagram {
    parse_pd("L1").expect("L1 parses")
}

impl Movie {
    pub fn new(events: Vec<Esi>, end: MovieEnd) -> Self {
        Movie { events, end }
    }

    /// Parses `{"movie": [...]}`, with optional `"start": "unknot"` or
    /// `"end": "unknot"` for punctured movies.
    pub fn from_json(text: &str) -> Result<Movie> {
        let file: MovieFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let is_unknot = |s: &Option<String>| -> Result<bool> {
            match s.as_deref() {
                None | Some("empty") => Ok(false),
                Some("unknot") => Ok(true),
                Some(other) => Err(bad(format!("unknown endpoint {other:?}"))),
            }
        };
        let end = match (is_unknot(&file.start)?, is_unknot(&file.end)?) {
            (false, false) => MovieEnd::Closed,
            (false, true) => MovieEnd::FromEmpty,
            (true, false) => MovieEnd::ToEmpty,
            (true, true) => return Err(bad("a movie cannot both start and end at the unknot")),
        };
        let events = file.movie.into_iter().map(EventFile::into_esi).collect::<Result<_>>()?;
        Ok(Movie { events, end })
    }

    /// One event per line, which keeps hand-edited files readable.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        if self.end.starts_at_unknot() {
            out += "  \"start\": \"unknot\",\n";
        }
        if self.end.ends_at_unknot() {
            out += "  \"end\": \"unknot\",\n";
        }
        let events: Vec<String> = self
            .events
            .iter()
            .map(|e| format!("    {}", serde_json::to_string(&EventFile::from_esi(e)).expect("event serializes")))
            .collect();
        if events.is_empty() {
            out += "  \"movie\": []\n}";
        } else {
            out += &format!("  \"movie\": [\n{}\n  ]\n}}", events.join(",\n"));
        }
        out
    }

    pub fn start_diagram(&self) -> LinkDiagram {
        if self.end.starts_at_unknot() {
            unknot()
        } else {
            LinkDiagram::empty()
        }
    }

    /// Sum of the event degrees: the Euler characteristic of the surface.
    pub fn euler_characteristic(&self) -> i64 {
        self.events.iter().map(Esi::degree).sum()
    }

    /// The punctured movie `self` followed by `other`, which must start where
    /// `self` stops.
    pub fn concat(&self, other: &Movie) -> Result<Movie> {
        let end = match (self.end, other.end) {
            (MovieEnd::FromEmpty, MovieEnd::ToEmpty) => MovieEnd::Closed,
            _ => {
                return Err(Error::Endpoint(
                    "concatenation needs an empty-to-unknot then an unknot-to-empty movie".into(),
                ))
            }
        };
        let last = validate_movie(self).into_result()?.pop().expect("at least one still");
        if last != unknot() {
            return Err(Error::Endpoint(format!("first movie stops at {last}, not at L1")));
        }
        let events = self.events.iter().chain(&other.events).copied().collect();
        Ok(Movie { events, end })
    }
}

/// Replays the movie, stopping at the first event that does not apply.
pub fn validate_movie(m: &Movie) -> Report {
    let mut stills = vec![m.start_diagram()];
    for (i, e) in m.events.iter().enumerate() {
        match apply_esi(stills.last().unwrap(), e) {
            Ok(d) => stills.push(d),
            Err(err) => return Report { stills, failure: Some((i + 1, format!("{e}: {err}"))) },
        }
    }
    let last = stills.last().unwrap();
    let ok = if m.end.ends_at_unknot() {
        last.crossing_count() == 0 && last.free_loop_count() == 1
    } else {
        last.is_empty()
    };
    let failure = (!ok).then(|| {
        let want = if m.end.ends_at_unknot() { "a crossingless unknot" } else { "the empty diagram" };
        (m.events.len() + 1, format!("final still {last} is not {want}"))
    });
    Report { stills, failure }
}

/// The chain maps of all events, each built on the previous target.
pub fn movie_maps(m: &Movie, th: Theory, opts: BuildOptions) -> Result<Vec<ChainMap>> {
    let stills = validate_movie(m).into_result()?;
    let mut cur = Arc::new(CubeComplex::build_with(&stills[0], th, opts)?);
    let mut maps = Vec::with_capacity(m.events.len());
    for (i, e) in m.events.iter().enumerate() {
        let next = Arc::new(CubeComplex::build_with(&stills[i + 1], th, opts)?);
        let f = esi_chain_map(e, &cur, Some(&next))
            .map_err(|err| Error::InvalidMovie { index: i + 1, reason: err.to_string() })?;
        cur = next;
        maps.push(f);
    }
    Ok(maps)
}

fn start_element(m: &Movie, th: Theory, x: Option<Label>, opts: BuildOptions) -> Result<CochainElement> {
    let c = CubeComplex::build_with(&m.start_diagram(), th, opts)?;
    Ok(match (m.end.starts_at_unknot(), x) {
        (false, _) => c.scalar(TPoly::one()),
        (true, Some(l)) => CochainElement::generator(Generator::all_plus(c.vertex(0)).with_label(0, l)),
        (true, None) => return Err(Error::Endpoint("a movie starting at the unknot needs a starting label".into())),
    })
}

/// Threads the starting element through every event: `1` for movies that
/// start empty, `x` on the unknot otherwise.
pub fn eval_movie(m: &Movie, th: Theory, x: Option<Label>) -> Result<CochainElement> {
    eval_movie_with(m, th, x, BuildOptions::default())
}

pub fn eval_movie_with(m: &Movie, th: Theory, x: Option<Label>, opts: BuildOptions) -> Result<CochainElement> {
    let mut z = start_element(m, th, x, opts)?;
    for f in movie_maps(m, th, opts)? {
        z = f.apply(&z);
    }
    Ok(z)
}

fn require_closed(m: &Movie) -> Result<()> {
    if m.end != MovieEnd::Closed {
        return Err(Error::Endpoint("expected a closed movie".into()));
    }
    Ok(())
}

/// Zero or `|a| t^k`; anything else contradicts the degree argument.
pub fn normalize_sign(p: &TPoly) -> Result<TPoly> {
    if p.is_zero() {
        return Ok(TPoly::zero());
    }
    match p.as_monomial() {
        Some((c, k)) => Ok(TPoly::monomial(c.abs(), k)),
        None => Err(Error::Internal(format!("surface value {p} is not a monomial"))),
    }
}

/// The sign-normalized value of a closed movie: `|psi_F(1)|` for Bar-Natan
/// theory, `|phi_F(1)|` for Khovanov theory, and the value at `t = 1` for Lee.
pub fn closed_value(m: &Movie, th: Theory, opts: BuildOptions) -> Result<TPoly> {
    require_closed(m)?;
    let raw = eval_movie_with(m, th, None, opts)?.scalar();
    let raw = match th {
        Theory::BarNatan => raw,
        Theory::Khovanov => raw.specialized(0),
        Theory::Lee => raw.specialized(1),
    };
    normalize_sign(&raw)
}

/// `|psi_F(1)|` in `Z[t]`.
pub fn bn_invariant(m: &Movie) -> Result<TPoly> {
    closed_value(m, Theory::BarNatan, BuildOptions::default())
}

/// `|phi_F(1)|`, computed in Khovanov theory and cross-checked against the
/// Bar-Natan value at `t = 0`.
pub fn kj_number(m: &Movie) -> Result<BigInt> {
    let kj = closed_value(m, Theory::Khovanov, BuildOptions::default())?.specialize(0);
    let bn = bn_invariant(m)?.specialize(0);
    if kj != bn {
        return Err(Error::Internal(format!("Khovanov value {kj} differs from Bar-Natan value {bn} at t = 0")));
    }
    Ok(kj)
}

/// The closed-movie value in Lee theory, up to sign.
pub fn lee_number(m: &Movie) -> Result<BigInt> {
    Ok(closed_value(m, Theory::Lee, BuildOptions::default())?.specialize(1))
}

/// Value of a punctured movie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Punctured {
    /// Unknot to empty: a scalar.
    Scalar(TPoly),
    /// Empty to unknot: coefficients of `v+` and `v-` on the final loop.
    Element { plus: TPoly, minus: TPoly },
}

impl fmt::Display for Punctured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Punctured::Scalar(p) => write!(f, "{p}"),
            Punctured::Element { plus, minus } => match (plus.is_zero(), minus.is_zero()) {
                (true, true) => f.write_str("0"),
                (false, true) => write!(f, "({plus})*v+"),
                (true, false) => write!(f, "({minus})*v-"),
                _ => write!(f, "({plus})*v+ + ({minus})*v-"),
            },
        }
    }
}

/// `psi^(o->0)(x)` for a movie starting at the unknot, or `psi^(0->o)(1)`
/// for one ending there (`x` is then ignored).
pub fn punctured_eval(m: &Movie, x: Label, th: Theory) -> Result<Punctured> {
    match m.end {
        MovieEnd::ToEmpty => Ok(Punctured::Scalar(eval_movie(m, th, Some(x))?.scalar())),
        MovieEnd::FromEmpty => {
            let z = eval_movie(m, th, None)?;
            let (mut plus, mut minus) = (TPoly::zero(), TPoly::zero());
            for (g, c) in z.terms() {
                match g.label(0) {
                    Label::Plus => plus += c,
                    Label::Minus => minus += c,
                }
            }
            Ok(Punctured::Element { plus, minus })
        }
        MovieEnd::Closed => Err(Error::Endpoint("punctured evaluation needs a movie with an unknot end".into())),
    }
}

/// `psi_{F1 # F2} = psi_{F2}^(o->0) o psi_{F1}^(0->o)`, sign-normalized.
pub fn connected_sum(m1: &Movie, m2: &Movie, th: Theory) -> Result<TPoly> {
    if m1.end != MovieEnd::FromEmpty || m2.end != MovieEnd::ToEmpty {
        return Err(Error::Endpoint("connected sum needs an empty-to-unknot and an unknot-to-empty movie".into()));
    }
    let Punctured::Element { plus, minus } = punctured_eval(m1, Label::Plus, th)? else { unreachable!() };
    let mut total = TPoly::zero();
    for (c, l) in [(plus, Label::Plus), (minus, Label::Minus)] {
        if c.is_zero() {
            continue;
        }
        let Punctured::Scalar(s) = punctured_eval(m2, l, th)? else { unreachable!() };
        total += &(&c * &s);
    }
    let total = match th {
        Theory::Khovanov => total.specialized(0),
        _ => total,
    };
    normalize_sign(&total)
}
