//! Small standard diagrams and the trivial-surface movies used by tests,
//! benchmarks and the command line.

use crate::cobordism::{Movie, MovieEnd};
use crate::diagram::{apply_esi, parse_pd, ArcId, Crossing, Esi, LinkDiagram, R1Variant, R2Variant, Sign};

pub const UNKNOT: &str = "L1";
pub const UNLINK2: &str = "L2";
pub const POSITIVE_KINK: &str = "X(1,1,2,2)";
pub const NEGATIVE_KINK: &str = "X(1,2,2,1)";
pub const HOPF: &str = "X(4,1,3,2) X(2,3,1,4)";
/// Three negative crossings in the slot convention used here.
pub const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
/// Three positive crossings.
pub const TREFOIL_MIRROR: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
pub const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

fn pd(s: &str) -> LinkDiagram {
    parse_pd(s).expect("corpus PD code parses")
}

fn step(d: &LinkDiagram, e: Esi) -> LinkDiagram {
    apply_esi(d, &e).expect("corpus move applies")
}

/// The unknot with one positive and one negative kink on the same strand.
pub fn unknot_two_kinks() -> LinkDiagram {
    let d = pd(UNKNOT);
    let a = d.free_loops()[0][0];
    let d = step(&d, Esi::R1(R1Variant::AddPositive { arc: a }));
    step(&d, Esi::R1(R1Variant::AddNegative { arc: a }))
}

/// Two unlinked circles pushed over each other by one R2 move.
pub fn r2_unlink() -> LinkDiagram {
    let d = pd(UNLINK2);
    let (a, b) = (d.free_loops()[0][0], d.free_loops()[1][0]);
    step(&d, Esi::R2(R2Variant::Add { over: a, under: b }))
}

/// Closure of a braid on `strands` strands, strands running upward. Letter
/// `i` is the positive generator crossing strands `i` and `i + 1` (1-based),
/// `-i` its inverse. Strands no letter touches close into free loops.
pub fn braid_closure(strands: usize, word: &[i32]) -> LinkDiagram {
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        assert!(i >= 1 && i < strands, "generator {g} on {strands} strands");
        let (left, right) = (cur[i - 1], cur[i]);
        let (l_new, r_new) = (next, next + 1);
        next += 2;
        crossings.push(if g > 0 {
            Crossing::new([right, r_new, l_new, left], Sign::Positive)
        } else {
            Crossing::new([left, right, r_new, l_new], Sign::Negative)
        });
        cur[i - 1] = l_new;
        cur[i] = r_new;
    }
    let rename: Vec<(u32, u32)> =
        cur.iter().enumerate().map(|(j, &a)| (a, j as u32 + 1)).filter(|(a, b)| a != b).collect();
    for x in &mut crossings {
        for a in &mut x.arcs {
            if let Some(&(_, b)) = rename.iter().find(|(from, _)| *from == a.0) {
                *a = ArcId(b);
            }
        }
    }
    let mut d = LinkDiagram::from_parts(crossings, Vec::new()).expect("braid closures are valid");
    d.add_free_loops(strands - rename.len());
    d
}

/// Named diagrams covering both crossing signs and a few components counts.
pub fn diagrams() -> Vec<(&'static str, LinkDiagram)> {
    let mut tref_loop = pd(TREFOIL);
    tref_loop.add_free_loops(1);
    vec![
        ("empty", LinkDiagram::empty()),
        ("unknot", pd(UNKNOT)),
        ("unlink2", pd(UNLINK2)),
        ("positive kink", pd(POSITIVE_KINK)),
        ("negative kink", pd(NEGATIVE_KINK)),
        ("two kinks", unknot_two_kinks()),
        ("r2 unlink", r2_unlink()),
        ("hopf", pd(HOPF)),
        ("trefoil", pd(TREFOIL)),
        ("mirror trefoil", pd(TREFOIL_MIRROR)),
        ("figure eight", pd(FIGURE_EIGHT)),
        ("trefoil and loop", tref_loop),
        ("braid s1 s2 s1", braid_closure(3, &[1, 2, 1])),
        ("braid s2 s1 s2", braid_closure(3, &[2, 1, 2])),
        ("braid (s1 s2)^2", braid_closure(3, &[1, 2, 1, 2])),
    ]
}

/// Birth and a split saddle leave the canonical pair of loops; a merge along
/// the same arcs returns to the canonical single loop.
const CANONICAL_LOOP: [u32; 2] = [1, 2];

fn tube(events: &mut Vec<Esi>) {
    let arcs = [ArcId(CANONICAL_LOOP[0]), ArcId(CANONICAL_LOOP[1])];
    events.push(Esi::Saddle { arcs });
    events.push(Esi::Saddle { arcs });
}

/// The unknotted closed surface of genus `g`: birth, `g` tubes, death.
pub fn trivial_surface(g: usize) -> Movie {
    let mut events = vec![Esi::Birth];
    for _ in 0..g {
        tube(&mut events);
    }
    events.push(Esi::Death { circle: ArcId(CANONICAL_LOOP[0]) });
    Movie::new(events, MovieEnd::Closed)
}

/// The genus-`g` surface with one disk removed, running from the empty
/// diagram to the unknot.
pub fn punctured_from_empty(g: usize) -> Movie {
    let mut events = vec![Esi::Birth];
    for _ in 0..g {
        tube(&mut events);
    }
    Movie::new(events, MovieEnd::FromEmpty)
}

/// The genus-`g` surface with one disk removed, running from the unknot
/// `L1` to the empty diagram.
pub fn punctured_to_empty(g: usize) -> Movie {
    let mut events = Vec::new();
    for _ in 0..g {
        tube(&mut events);
    }
    events.push(Esi::Death { circle: ArcId(CANONICAL_LOOP[0]) });
    Movie::new(events, MovieEnd::ToEmpty)
}

/// The trivial torus with an R2 detour: after the split the two loops are
/// pushed across each other and pulled apart again before they merge.
pub fn torus_with_r2_detour() -> Movie {
    let a = ArcId(CANONICAL_LOOP[0]);
    let b = ArcId(CANONICAL_LOOP[1]);
    Movie::new(
        vec![
            Esi::Birth,
            Esi::Saddle { arcs: [a, b] },
            Esi::R2(R2Variant::Add { over: a, under: b }),
            Esi::R2(R2Variant::Remove { crossings: [0, 1] }),
            Esi::Saddle { arcs: [a, b] },
            Esi::Death { circle: a },
        ],
        MovieEnd::Closed,
    )
}

/// Files shipped with the command line, by name.
pub fn named_movies() -> Vec<(String, Movie)> {
    let mut out = vec![("sphere".to_string(), trivial_surface(0)), ("torus".to_string(), trivial_surface(1))];
    for g in 2..=5 {
        out.push((format!("genus{g}"), trivial_surface(g)));
    }
    out.push(("torus_r2_detour".to_string(), torus_with_r2_detour()));
    out
}
