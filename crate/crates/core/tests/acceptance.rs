//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use khoval::algebra::tube;
use khoval::cobordism::{
    bn_invariant, connected_sum, esi_chain_map, induces_identity, kj_number, lee_number, normalize_sign,
    punctured_eval, validate_movie, Movie, Punctured,
};
use khoval::corpus;
use khoval::diagram::{apply_esi, apply_esi_traced, Esi, R1Variant, R2Variant, R3Variant, TraceKind};
use khoval::homology::{graded_euler, kauffman_jones};
use khoval::{CubeComplex, Label, LinkDiagram, TPoly, Theory};

type Outcome = Result<(), String>;

const THEORIES: [Theory; 3] = [Theory::Khovanov, Theory::BarNatan, Theory::Lee];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> TPoly {
    s.parse().expect("literal polynomial")
}

fn bn(m: &Movie) -> Result<TPoly, String> {
    bn_invariant(m).map_err(|e| e.to_string())
}

/// Corpus diagrams plus every still of every shipped movie.
fn all_diagrams() -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> = corpus::diagrams().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    for (name, m) in corpus::named_movies() {
        for (i, d) in validate_movie(&m).stills.into_iter().enumerate() {
            out.push((format!("{name} still {i}"), d));
        }
    }
    out
}

fn theorem_one() -> Outcome {
    let want = ["0", "2", "0", "8*t", "0", "32*t^2"];
    for (g, w) in want.iter().enumerate() {
        let got = bn(&corpus::trivial_surface(g))?;
        ensure(got == poly(w), || format!("genus {g}: BN = {got}, expected {w}"))?;
    }
    Ok(())
}

fn corollary() -> Outcome {
    for (g, want) in [(1, 2), (0, 0), (2, 0)] {
        let kj = kj_number(&corpus::trivial_surface(g)).map_err(|e| e.to_string())?;
        ensure(kj == want.into(), || format!("genus {g}: KJ = {kj}, expected {want}"))?;
    }
    Ok(())
}

fn tube_identities() -> Outcome {
    let th = Theory::BarNatan;
    ensure(tube(Label::Plus, th) == vec![(poly("2"), Label::Minus)], || "tube(v+) is not 2 v-".into())?;
    ensure(tube(Label::Minus, th) == vec![(poly("2*t"), Label::Plus)], || "tube(v-) is not 2t v+".into())?;
    for (m, want) in [(0, "1"), (1, "4*t"), (2, "16*t^2")] {
        let p = punctured_eval(&corpus::punctured_to_empty(2 * m), Label::Minus, th).map_err(|e| e.to_string())?;
        let Punctured::Scalar(p) = p else { return Err("expected a scalar".into()) };
        let n = normalize_sign(&p).map_err(|e| e.to_string())?;
        ensure(n == poly(want), || format!("genus {}: psi(v-) = {p}, expected +-{want}", 2 * m))?;
    }
    Ok(())
}

fn connected_sums() -> Outcome {
    let th = Theory::BarNatan;
    let torus = corpus::punctured_from_empty(1);
    let cs = |to: &Movie| connected_sum(&torus, to, th).map_err(|e| e.to_string());
    let tt = cs(&corpus::punctured_to_empty(1))?;
    let g2 = bn(&corpus::trivial_surface(2))?;
    ensure(tt == g2 && tt.is_zero(), || format!("T # T = {tt}, genus 2 = {g2}"))?;
    let tg = cs(&corpus::punctured_to_empty(2))?;
    ensure(tg == poly("8*t"), || format!("T # genus 2 = {tg}, expected 8*t"))?;
    for g in 0..=3 {
        let from = corpus::punctured_from_empty(g);
        let f = bn(&corpus::trivial_surface(g))?;
        let with_sphere = connected_sum(&from, &corpus::punctured_to_empty(0), th).map_err(|e| e.to_string())?;
        ensure(with_sphere == f, || format!("genus {g} # sphere = {with_sphere}, expected {f}"))?;
    }
    Ok(())
}

fn d_squared() -> Outcome {
    for (name, d) in all_diagrams() {
        for th in THEORIES {
            let c = CubeComplex::build(&d, th).map_err(|e| e.to_string())?;
            let r = c.check_d_squared();
            ensure(r.passed(), || format!("{name} {th}: {}", r.violation.clone().unwrap_or_default()))?;
            let r = c.check_faces();
            ensure(r.passed(), || format!("{name} {th} faces: {}", r.violation.clone().unwrap_or_default()))?;
        }
    }
    Ok(())
}

fn jones() -> Outcome {
    for (name, d) in all_diagrams() {
        let c = CubeComplex::build(&d, Theory::Khovanov).map_err(|e| e.to_string())?;
        let chi = graded_euler(&c);
        let j = kauffman_jones(&d).map_err(|e| e.to_string())?;
        ensure(chi == j, || format!("{name}: chi = {chi}, Jones = {j}"))?;
    }
    Ok(())
}

fn r_instances(d: &LinkDiagram) -> Vec<Esi> {
    let arcs: Vec<_> = d.arcs().into_iter().collect();
    let mut out = Vec::new();
    for &a in &arcs {
        out.push(Esi::R1(R1Variant::AddPositive { arc: a }));
        out.push(Esi::R1(R1Variant::AddNegative { arc: a }));
        for &b in &arcs {
            out.push(Esi::R2(R2Variant::Add { over: a, under: b }));
        }
    }
    let n = d.crossing_count();
    for c in 0..n {
        out.push(Esi::R1(R1Variant::Remove { crossing: c }));
        for c2 in c + 1..n {
            out.push(Esi::R2(R2Variant::Remove { crossings: [c, c2] }));
            for c3 in c2 + 1..n {
                out.push(Esi::R3 { crossings: [c, c2, c3], variant: R3Variant::BraidPositive });
            }
        }
    }
    out.retain(|e| apply_esi(d, e).is_ok());
    out
}

fn r_moves() -> Outcome {
    let mut maps = 0;
    let mut pairs = 0;
    let mut r3s = 0;
    for (name, d) in corpus::diagrams() {
        let src = Arc::new(CubeComplex::build(&d, Theory::Khovanov).map_err(|e| e.to_string())?);
        for e in r_instances(&d) {
            let f = esi_chain_map(&e, &src, None).map_err(|err| format!("{name} {e}: {err}"))?;
            let r = f.check_chain_law();
            ensure(r.passed(), || format!("{name} {e}: {}", r.violation.clone().unwrap_or_default()))?;
            let r = f.check_degree();
            r3s += usize::from(matches!(e, Esi::R3 { .. }));
            ensure(r.passed() && f.degree == 0, || format!("{name} {e}: {}", r.violation.clone().unwrap_or_default()))?;
            maps += 1;
            let (mid, trace) = apply_esi_traced(&d, &e).map_err(|err| err.to_string())?;
            // pair each addition with the removal of what it created
            let back = match trace.kind {
                TraceKind::R1Add { crossing, .. } => Esi::R1(R1Variant::Remove { crossing }),
                TraceKind::R2Add { crossings, .. } => Esi::R2(R2Variant::Remove { crossings }),
                TraceKind::R3 { .. } => e,
                _ => continue,
            };
            if apply_esi(&mid, &back).ok().as_ref() != Some(&d) {
                continue;
            }
            let g = esi_chain_map(&back, &f.target_arc(), Some(&src)).map_err(|err| err.to_string())?;
            for (x, y, dir) in [(&f, &g, "g f"), (&g, &f, "f g")] {
                let r = induces_identity(x, y).map_err(|err| err.to_string())?;
                ensure(r.passed(), || format!("{name} {e}: {dir} {}", r.violation.clone().unwrap_or_default()))?;
            }
            pairs += 1;
        }
    }
    ensure(maps > 0 && pairs > 0 && r3s > 0, || "no instances".into())?;
    println!("    {maps} maps ({r3s} r3), {pairs} inverse pairs");
    Ok(())
}

fn specialization() -> Outcome {
    for (name, m) in corpus::named_movies() {
        let kj = kj_number(&m).map_err(|e| format!("{name}: {e}"))?;
        let at0 = bn(&m)?.specialize(0);
        ensure(kj == at0, || format!("{name}: KJ = {kj}, BN(0) = {at0}"))?;
    }
    let lee = lee_number(&corpus::trivial_surface(1)).map_err(|e| e.to_string())?;
    ensure(lee == 2.into(), || format!("Lee torus value {lee}"))
}

fn sign_robustness() -> Outcome {
    let detour = bn(&corpus::torus_with_r2_detour())?;
    let plain = bn(&corpus::trivial_surface(1))?;
    ensure(detour == poly("2") && detour == plain, || format!("detour {detour}, plain {plain}"))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        ("trivial surfaces of genus 0..5", theorem_one, Duration::from_secs(1)),
        ("KJ of sphere, torus, genus 2", corollary, Duration::from_secs(1)),
        ("tube identities and punctured genus 2m", tube_identities, Duration::from_secs(10)),
        ("connected-sum law", connected_sums, Duration::from_secs(10)),
        ("d^2 = 0 and face anticommutativity", d_squared, Duration::from_secs(10)),
        ("graded Euler characteristic equals Jones", jones, Duration::from_secs(10)),
        ("R-move contract suite", r_moves, Duration::from_secs(60)),
        ("specialization law", specialization, Duration::from_secs(10)),
        ("sign robustness under an R2 detour", sign_robustness, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS {} {name} ({took:.2?}, budget {budget:?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
