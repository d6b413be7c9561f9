use std::path::PathBuf;
use std::process::{Command, Output};

use khoval::homology::HomologyRow;
use khoval::{corpus, Movie};

fn khoval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khoval"))
        .args(args)
        .env_remove("KHOVAL_THEORY")
        .env_remove("KHOVAL_FORMAT")
        .env_remove("KHOVAL_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn movie_file(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "movies", &format!("{name}.json")].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn homology_tables() {
    let o = khoval(&["homology", "L1", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "i,q,free_rank,torsion\n0,-1,1,\n0,1,1,\n");
    let o = khoval(&["homology", "", "--format", "csv"]);
    assert_eq!(stdout(&o), "i,q,free_rank,torsion\n0,0,1,\n");
    let human = stdout(&khoval(&["homology", "L1"]));
    assert_eq!(human.lines().count(), 3);
}

#[test]
fn json_matches_csv() {
    let pd = corpus::TREFOIL;
    let rows: Vec<HomologyRow> = serde_json::from_str(&stdout(&khoval(&["homology", pd, "--format", "json"]))).unwrap();
    assert_eq!(rows.len(), 5);
    let csv = stdout(&khoval(&["homology", pd, "--format", "csv"]));
    assert_eq!(khoval::homology::render_csv(&rows), csv);
    let human = stdout(&khoval(&["homology", pd]));
    assert_eq!(khoval::homology::render_human(&rows), human);
}

#[test]
fn diagram_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trefoil.pd");
    std::fs::write(&path, format!("{}\n", corpus::TREFOIL_MIRROR)).unwrap();
    let o = khoval(&["homology", path.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3,7,0,2\n"));
}

#[test]
fn jones_agrees() {
    let o = khoval(&["jones", "L1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("q^-1 + q"));
    assert!(s.contains("agree:         yes"));
    assert!(stdout(&khoval(&["jones", "L2"])).contains("q^-2 + 2 + q^2"));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&khoval(&["jones", corpus::TREFOIL, "--format", "json"]))).unwrap();
    assert_eq!(v["agree"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(khoval(&["homology", "X(1,2"]).status.code(), Some(2));
    assert_eq!(khoval(&["homology", "L1", "--theory", "bar-natan"]).status.code(), Some(3));
    assert_eq!(khoval(&["homology", corpus::TREFOIL, "--cap", "2"]).status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"movie":[{"op":"death","circle":1}]}"#).unwrap();
    assert_eq!(khoval(&["movie", path.to_str().unwrap()]).status.code(), Some(5));
    assert_eq!(khoval(&["movie", &movie_file("punctured_torus_from_empty")]).status.code(), Some(5));
}

#[test]
fn movie_values() {
    for (name, theory, want) in [
        ("torus", "bar-natan", "BN = 2\n"),
        ("torus", "khovanov", "KJ = 2\n"),
        ("torus", "lee", "Lee = 2\n"),
        ("genus3", "bar-natan", "BN = 8*t\n"),
        ("genus3", "khovanov", "KJ = 0\n"),
        ("genus5", "bar-natan", "BN = 32*t^2\n"),
        ("sphere", "bar-natan", "BN = 0\n"),
        ("torus_r2_detour", "bar-natan", "BN = 2\n"),
    ] {
        let o = khoval(&["movie", &movie_file(name), "--theory", theory]);
        assert!(o.status.success(), "{name}");
        assert_eq!(stdout(&o), want, "{name} {theory}");
    }
}

#[test]
fn movie_is_deterministic_and_env_driven() {
    let f = movie_file("genus3");
    assert_eq!(khoval(&["movie", &f]).stdout, khoval(&["movie", &f]).stdout);
    let o = Command::new(env!("CARGO_BIN_EXE_khoval"))
        .args(["movie", &f])
        .env("KHOVAL_THEORY", "khovanov")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "KJ = 0\n");
}

#[test]
fn punctured_movies() {
    let o = khoval(&["movie", &movie_file("punctured_genus2_to_empty"), "--punctured", "--label", "v-"]);
    assert_eq!(stdout(&o), "psi(v-) = 4*t\n");
    let o = khoval(&["movie", &movie_file("punctured_genus2_to_empty"), "--punctured", "--label", "v+"]);
    assert_eq!(stdout(&o), "psi(v+) = 0\n");
    let o = khoval(&["movie", &movie_file("punctured_torus_from_empty"), "--punctured"]);
    assert_eq!(stdout(&o), "psi(1) = (2)*v-\n");
}

#[test]
fn stills_of_the_torus() {
    let o = khoval(&["stills", &movie_file("torus"), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let loops: Vec<usize> = v.as_array().unwrap().iter().map(|s| s["loops"].as_array().unwrap().len()).collect();
    assert_eq!(loops, [0, 1, 2, 1, 0]);
    let human = stdout(&khoval(&["stills", &movie_file("torus")]));
    assert!(human.starts_with("still 0\n  empty\nstill 1 after birth\n"), "{human}");
}

#[test]
fn stills_stop_at_the_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"movie":[{"op":"birth"},{"op":"saddle","arcs":[1,1]},{"op":"death","circle":1}]}"#)
        .unwrap();
    let o = khoval(&["stills", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    let s = stdout(&o);
    assert!(s.contains("still 1") && !s.contains("still 2"), "{s}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("event 2"));
}

#[test]
fn shipped_movies_match_the_corpus() {
    for (name, m) in corpus::named_movies() {
        let text = std::fs::read_to_string(movie_file(&name)).unwrap();
        assert_eq!(Movie::from_json(&text).unwrap(), m, "{name}");
        assert_eq!(text, m.to_json() + "\n", "{name}");
    }
}

#[test]
fn verify_passes() {
    let o = khoval(&["verify"]);
    let s = stdout(&o);
    assert!(o.status.success(), "{s}");
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{s}");
}
