use anyhow::Result;
use serde::Serialize;
use serde_json::json;

use khoval::cobordism::{closed_value, punctured_eval, validate_movie, MovieEnd};
use khoval::complex::BuildOptions;
use khoval::homology::{graded_euler, homology as compute_homology, kauffman_jones, render_csv, render_human};
use khoval::{CubeComplex, Error, Label, LinkDiagram, Movie, Sign, Theory};

use crate::{ensure_theory, Format, Output};

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

pub fn homology(text: &str, th: Theory, opts: BuildOptions, fmt: Format) -> Result<Output> {
    ensure_theory(th)?;
    let d: LinkDiagram = text.trim().parse()?;
    let c = CubeComplex::build_with(&d, th, opts)?;
    let rows = compute_homology(&c)?.rows();
    Ok(Output::ok(match fmt {
        Format::Human => render_human(&rows),
        Format::Csv => render_csv(&rows),
        Format::Json => json_line(&rows),
    }))
}

pub fn jones(text: &str, opts: BuildOptions, fmt: Format) -> Result<Output> {
    let d: LinkDiagram = text.trim().parse()?;
    let c = CubeComplex::build_with(&d, Theory::Khovanov, opts)?;
    let euler = graded_euler(&c);
    let bracket = kauffman_jones(&d)?;
    let agree = euler == bracket;
    let text = match fmt {
        Format::Human => format!(
            "graded euler:  {euler}\nkauffman:      {bracket}\nagree:         {}\n",
            if agree { "yes" } else { "no" }
        ),
        Format::Csv => format!("graded_euler,kauffman,agree\n{euler},{bracket},{agree}\n"),
        Format::Json => json_line(&json!({ "graded_euler": euler, "kauffman": bracket, "agree": agree })),
    };
    Ok(Output { text, ok: agree, error: None })
}

fn invariant_name(th: Theory) -> &'static str {
    match th {
        Theory::BarNatan => "BN",
        Theory::Khovanov => "KJ",
        Theory::Lee => "Lee",
    }
}

pub fn movie(text: &str, th: Theory, punctured: Option<Label>, opts: BuildOptions, fmt: Format) -> Result<Output> {
    let m = Movie::from_json(text)?;
    if punctured.is_none() && m.end != MovieEnd::Closed {
        return Err(Error::Endpoint("the movie has an unknot end; evaluate it with --punctured".into()).into());
    }
    let (name, value) = match punctured {
        None => (invariant_name(th).to_string(), closed_value(&m, th, opts)?.to_string()),
        Some(x) => {
            let name = if m.end == MovieEnd::ToEmpty { format!("psi({x})") } else { "psi(1)".to_string() };
            (name, punctured_eval(&m, x, th)?.to_string())
        }
    };
    let text = match fmt {
        Format::Human => format!("{name} = {value}\n"),
        Format::Csv => format!("invariant,theory,value\n{name},{th},{value}\n"),
        Format::Json => json_line(&json!({ "invariant": name, "theory": th.to_string(), "value": value })),
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct StillCrossing {
    id: usize,
    arcs: [u32; 4],
    sign: &'static str,
}

#[derive(Serialize)]
struct Still {
    index: usize,
    event: Option<String>,
    pd: String,
    crossings: Vec<StillCrossing>,
    loops: Vec<Vec<u32>>,
    components: usize,
}

fn describe(index: usize, event: Option<String>, d: &LinkDiagram) -> Still {
    let crossings = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(id, x)| StillCrossing {
            id,
            arcs: x.arcs.map(|a| a.0),
            sign: if x.sign == Sign::Positive { "+" } else { "-" },
        })
        .collect();
    let loops = d.free_loops().iter().map(|lp| lp.iter().map(|a| a.0).collect()).collect();
    Still { index, event, pd: d.to_pd(), crossings, loops, components: d.component_count() }
}

fn render_still(s: &Still) -> String {
    let mut out = match &s.event {
        None => format!("still {}\n", s.index),
        Some(e) => format!("still {} after {e}\n", s.index),
    };
    if s.pd.is_empty() {
        out += "  empty\n";
        return out;
    }
    out += &format!("  pd: {}\n", s.pd);
    for x in &s.crossings {
        let [a, b, c, d] = x.arcs;
        out += &format!("  crossing {} X({a},{b},{c},{d}) {}\n", x.id, x.sign);
    }
    for lp in &s.loops {
        let ids: Vec<String> = lp.iter().map(u32::to_string).collect();
        out += &format!("  loop {} arcs {}\n", lp.iter().min().unwrap_or(&0), ids.join(" "));
    }
    out += &format!("  components: {}\n", s.components);
    out
}

/// Dumps every still reached; an invalid movie is reported after the dump.
pub fn stills(text: &str, fmt: Format) -> Result<Output> {
    let m = Movie::from_json(text)?;
    let report = validate_movie(&m);
    let stills: Vec<Still> = report
        .stills
        .iter()
        .enumerate()
        .map(|(i, d)| describe(i, i.checked_sub(1).map(|j| m.events[j].to_string()), d))
        .collect();
    let text = match fmt {
        Format::Human => stills.iter().map(render_still).collect(),
        Format::Csv => {
            let mut out = String::from("index,event,pd,crossings,loops,components\n");
            for s in &stills {
                let event = s.event.clone().unwrap_or_default();
                out += &format!(
                    "{},\"{event}\",{},{},{},{}\n",
                    s.index,
                    s.pd,
                    s.crossings.len(),
                    s.loops.len(),
                    s.components
                );
            }
            out
        }
        Format::Json => json_line(&stills),
    };
    let error = report.failure.map(|(index, reason)| Error::InvalidMovie { index, reason }.into());
    Ok(Output { text, ok: true, error })
}
