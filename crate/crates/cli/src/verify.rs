use std::sync::Arc;

use serde::Serialize;

use khoval::cobordism::{closed_value, esi_chain_map, validate_movie};
use khoval::complex::BuildOptions;
use khoval::corpus;
use khoval::diagram::{apply_esi, Esi, R1Variant, R2Variant, R3Variant};
use khoval::homology::{graded_euler, kauffman_jones, JONES_CAP};
use khoval::{CubeComplex, LinkDiagram, TPoly, Theory};

use crate::{Format, Output};

#[derive(Serialize)]
struct Suite {
    suite: &'static str,
    passed: bool,
    detail: String,
}

const THEORIES: [Theory; 3] = [Theory::Khovanov, Theory::BarNatan, Theory::Lee];

fn diagrams(opts: BuildOptions) -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> = corpus::diagrams().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    for (name, m) in corpus::named_movies() {
        for (i, d) in validate_movie(&m).stills.into_iter().enumerate() {
            out.push((format!("{name} still {i}"), d));
        }
    }
    out.retain(|(_, d)| d.crossing_count() <= opts.cap);
    out
}

fn differential(opts: BuildOptions) -> Result<String, String> {
    let ds = diagrams(opts);
    let mut checked = 0;
    for (name, d) in &ds {
        for th in THEORIES {
            let c = CubeComplex::build_with(d, th, opts).map_err(|e| format!("{name}: {e}"))?;
            for r in [c.check_d_squared(), c.check_faces()] {
                if let Some(v) = r.violation {
                    return Err(format!("{name} ({th}): {v}"));
                }
                checked += r.checked;
            }
        }
    }
    Ok(format!("{} diagrams, {checked} checks", ds.len()))
}

fn jones(opts: BuildOptions) -> Result<String, String> {
    let mut ds = diagrams(opts);
    ds.retain(|(_, d)| d.crossing_count() <= JONES_CAP);
    for (name, d) in &ds {
        let c = CubeComplex::build_with(d, Theory::Khovanov, opts).map_err(|e| e.to_string())?;
        let (chi, j) = (graded_euler(&c), kauffman_jones(d).map_err(|e| e.to_string())?);
        if chi != j {
            return Err(format!("{name}: graded euler {chi}, Jones {j}"));
        }
    }
    Ok(format!("{} diagrams", ds.len()))
}

fn surfaces(opts: BuildOptions) -> Result<String, String> {
    let want = ["0", "2", "0", "8*t", "0", "32*t^2"];
    for (g, w) in want.iter().enumerate() {
        let m = corpus::trivial_surface(g);
        let bn = closed_value(&m, Theory::BarNatan, opts).map_err(|e| e.to_string())?;
        let kj = closed_value(&m, Theory::Khovanov, opts).map_err(|e| e.to_string())?;
        let w: TPoly = w.parse().expect("literal");
        if bn != w || kj != w.specialized(0) {
            return Err(format!("genus {g}: BN = {bn}, KJ = {kj}"));
        }
    }
    let detour = closed_value(&corpus::torus_with_r2_detour(), Theory::BarNatan, opts).map_err(|e| e.to_string())?;
    if detour != TPoly::constant(2) {
        return Err(format!("torus with R2 detour: BN = {detour}"));
    }
    Ok("genus 0..5 and the R2 detour".into())
}

fn r_moves(opts: BuildOptions) -> Result<String, String> {
    let mut maps = 0;
    for (name, d) in corpus::diagrams() {
        if d.crossing_count() + 2 > opts.cap {
            continue;
        }
        let src = Arc::new(CubeComplex::build_with(&d, Theory::Khovanov, opts).map_err(|e| e.to_string())?);
        let arcs: Vec<_> = d.arcs().into_iter().collect();
        let mut events = Vec::new();
        for &a in &arcs {
            events.push(Esi::R1(R1Variant::AddPositive { arc: a }));
            events.push(Esi::R1(R1Variant::AddNegative { arc: a }));
            events.extend(arcs.iter().map(|&b| Esi::R2(R2Variant::Add { over: a, under: b })));
        }
        for c in 0..d.crossing_count() {
            events.push(Esi::R1(R1Variant::Remove { crossing: c }));
            for c2 in c + 1..d.crossing_count() {
                events.push(Esi::R2(R2Variant::Remove { crossings: [c, c2] }));
                events.extend(
                    (c2 + 1..d.crossing_count())
                        .map(|c3| Esi::R3 { crossings: [c, c2, c3], variant: R3Variant::BraidPositive }),
                );
            }
        }
        for e in events.into_iter().filter(|e| apply_esi(&d, e).is_ok()) {
            let f = esi_chain_map(&e, &src, None).map_err(|err| format!("{name} {e}: {err}"))?;
            for r in [f.check_chain_law(), f.check_degree()] {
                if let Some(v) = r.violation {
                    return Err(format!("{name} {e}: {v}"));
                }
            }
            maps += 1;
        }
    }
    Ok(format!("{maps} maps"))
}

pub fn run(opts: BuildOptions, fmt: Format) -> Output {
    let suites: [(&'static str, fn(BuildOptions) -> Result<String, String>); 4] =
        [("differential", differential), ("jones", jones), ("surfaces", surfaces), ("reidemeister", r_moves)];
    let results: Vec<Suite> = suites
        .iter()
        .map(|(suite, f)| match f(opts) {
            Ok(detail) => Suite { suite, passed: true, detail },
            Err(detail) => Suite { suite, passed: false, detail },
        })
        .collect();
    let ok = results.iter().all(|s| s.passed);
    let text = match fmt {
        Format::Human => results
            .iter()
            .map(|s| format!("{} {}: {}\n", if s.passed { "PASS" } else { "FAIL" }, s.suite, s.detail))
            .collect(),
        Format::Csv => {
            let mut out = String::from("suite,passed,detail\n");
            for s in &results {
                out += &format!("{},{},\"{}\"\n", s.suite, s.passed, s.detail);
            }
            out
        }
        Format::Json => serde_json::to_string_pretty(&results).expect("output serializes") + "\n",
    };
    Output { text, ok, error: None }
}
