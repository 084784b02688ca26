use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pants(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pants")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn write_surface(dir: &Path, name: &str, seed: u64) -> String {
    let p = dir.join(name);
    let o = pants(&[
        "random-surface", "--genus", "2", "--min", "2.4", "--max", "3.6", "--seed", &seed.to_string(),
        "--out", p.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    p.to_str().unwrap().to_string()
}

#[test]
fn bounds_rows() {
    let o = pants(&["bounds", "--genus", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for v in ["3.438214", "2.081868", "2.673133", "20.893842"] {
        assert!(out.contains(v), "{out}");
    }
    assert_eq!(out.lines().count(), 4);

    assert_eq!(code(&pants(&["bounds", "--genus", "1"])), 1);

    let out = stdout(&pants(&["bounds", "--genus", "100"]));
    let row = |label: &str| -> f64 {
        out.lines()
            .find(|l| l.split_whitespace().next() == Some(label))
            .and_then(|l| l.split_whitespace().nth(1))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!(row("r_g") < row("r_g_rough"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&pants(&["bounds"])), 1);
    assert_eq!(code(&pants(&["no-such-command"])), 1);
    assert_eq!(code(&pants(&["systole", "--bolza", "--budget", "10"])), 1);
    assert_eq!(code(&pants(&["systole", "--bolza", "--tol-det", "-1"])), 1);
    assert_eq!(code(&pants(&["systole", "--bolza", "--base-point", "0,-1"])), 1);
    assert_eq!(code(&pants(&["systole", "--input", "/nonexistent/surface.json"])), 1);
    assert_eq!(code(&pants(&["--help"])), 0);
}

#[test]
fn systole_of_bolza() {
    let o = pants(&["systole", "--bolza"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("length 3.057141"));
}

#[test]
fn random_surfaces_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_surface(dir.path(), "a.json", 7);
    let b = write_surface(dir.path(), "b.json", 7);
    let c = write_surface(dir.path(), "c.json", 8);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let o = pants(&["random-surface", "--genus", "3", "--min", "1.8", "--max", "4", "--seed", "1", "--shape", "linear"]);
    let s: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(s["graph"].as_array().unwrap().len(), 6);
    for (l, t) in s["lengths"].as_array().unwrap().iter().zip(s["twists"].as_array().unwrap()) {
        let (l, t) = (l.as_f64().unwrap(), t.as_f64().unwrap());
        assert!((1.8..=4.0).contains(&l));
        assert!((0.0..=l).contains(&t));
    }
    assert_ne!(json(Path::new(&a))["twists"], json(Path::new(&c))["twists"]);

    assert_eq!(code(&pants(&["random-surface", "--genus", "2", "--min", "3", "--max", "2"])), 1);
    assert_eq!(code(&pants(&["random-surface", "--genus", "2", "--min", "0", "--max", "2"])), 1);
}

#[test]
fn surface_files_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let good = r#"{"genus":2,"graph":[[0,1,1,0],[1,1,0,0],[0,2,1,2]],"lengths":[3,3,3],"twists":[0,0,0]}"#;
    let cases = [
        r#"{"genus":2,"graph":[[0,1,1,0],[1,1,0,0],[0,2,1,2]],"lengths":[3,-1,3],"twists":[0,0,0]}"#,
        r#"{"genus":2,"graph":[[0,1,1,0],[1,1,0,0],[0,2,1,2]],"lengths":[3,0,3],"twists":[0,0,0]}"#,
        r#"{"genus":2,"graph":[[0,1,1,0],[1,1,0,0]],"lengths":[3,3],"twists":[0,0]}"#,
        r#"{"genus":2,"graph":[[0,1,1,0],[1,1,0,0],[0,1,1,2]],"lengths":[3,3,3],"twists":[0,0,0]}"#,
        r#"{"genus":2,"graph":[[0,1,1,0],[1,1,0,0],[0,2,1,2]],"lengths":[3,3,3]}"#,
        r#"not json"#,
    ];
    let out = dir.path().join("d.json");
    for (k, text) in cases.iter().enumerate() {
        let p = dir.path().join(format!("bad{k}.json"));
        fs::write(&p, text).unwrap();
        let o = pants(&["decompose", "--input", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 1, "case {k}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!out.exists());
    }
    let p = dir.path().join("good.json");
    fs::write(&p, good).unwrap();
    assert_eq!(code(&pants(&["systole", "--input", p.to_str().unwrap()])), 0);
}

#[test]
fn decompose_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let s = write_surface(dir.path(), "s.json", 3);
    let d = dir.path().join("d.json");
    let o = pants(&["decompose", "--input", &s, "--out", d.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let dec = json(&d);
    assert_eq!(dec["genus"], 2);
    assert_eq!(dec["curves"].as_array().unwrap().len(), 3);
    assert_eq!(dec["pants"].as_array().unwrap().len(), 2);
    let cert = &dec["certificate"];
    assert!(cert["max_length"].as_f64().unwrap() <= cert["bers_bound"].as_f64().unwrap());

    let trace = json(&dir.path().join("d.json.trace.json"));
    let steps = trace.as_array().unwrap();
    assert_eq!(steps[0]["kind"], "INIT");
    let added: usize = steps.iter().map(|r| r["new_curves"].as_array().unwrap().len()).sum();
    assert!(added >= 3);

    let o = pants(&["verify", "--input", &s, "--decomposition", d.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("disjoint_ok     true"));

    let again = dir.path().join("again.json");
    let trace2 = dir.path().join("again-trace.json");
    let o = pants(&[
        "decompose", "--input", &s, "--out", again.to_str().unwrap(), "--trace", trace2.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(&d).unwrap(), fs::read(&again).unwrap());
    assert_eq!(
        fs::read(dir.path().join("d.json.trace.json")).unwrap(),
        fs::read(&trace2).unwrap()
    );
}

#[test]
fn verify_rejects_bad_decompositions() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.json");
    assert_eq!(code(&pants(&["decompose", "--bolza", "--out", d.to_str().unwrap()])), 0);
    let dec = json(&d);

    let mut tampered = dec.clone();
    tampered["curves"][0]["word"] = dec["curves"][1]["word"].clone();
    let t = dir.path().join("t.json");
    fs::write(&t, tampered.to_string()).unwrap();
    let o = pants(&["verify", "--bolza", "--decomposition", t.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("disjoint_ok     false"));

    let mut genus = dec.clone();
    genus["genus"] = 3.into();
    fs::write(&t, genus.to_string()).unwrap();
    assert_eq!(code(&pants(&["verify", "--bolza", "--decomposition", t.to_str().unwrap()])), 1);

    let mut letter = dec;
    letter["curves"][0]["word"] = serde_json::json!([1, 9]);
    fs::write(&t, letter.to_string()).unwrap();
    assert_eq!(code(&pants(&["verify", "--bolza", "--decomposition", t.to_str().unwrap()])), 1);

    fs::write(&t, "{").unwrap();
    assert_eq!(code(&pants(&["verify", "--bolza", "--decomposition", t.to_str().unwrap()])), 1);
}

#[test]
fn forced_holonomy_failure() {
    let dir = tempfile::tempdir().unwrap();
    let s = write_surface(dir.path(), "s.json", 5);
    let d = dir.path().join("d.json");
    let o = pants(&["decompose", "--input", &s, "--out", d.to_str().unwrap(), "--tol-rel", "1e-30"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("holonomy construction failed"));
    assert!(!d.exists());
    assert!(!dir.path().join("d.json.trace.json").exists());
}

#[test]
fn render_svg() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.json");
    assert_eq!(code(&pants(&["decompose", "--bolza", "--out", d.to_str().unwrap()])), 0);
    let svg = dir.path().join("b.svg");
    let o = pants(&["render", "--bolza", "--decomposition", d.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    let paths: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("path")).collect();
    let curves: Vec<_> = paths
        .iter()
        .filter(|n| n.attribute("id").is_some_and(|i| i.starts_with("curve")))
        .collect();
    assert_eq!(curves.len(), 3);
    let mut strokes: Vec<_> = curves.iter().map(|n| n.attribute("stroke").unwrap()).collect();
    strokes.dedup();
    assert_eq!(strokes.len(), 3);
    assert!(text.contains("length 3.057142"));

    let empty = dir.path().join("empty.json");
    fs::write(&empty, "").unwrap();
    let o = pants(&["render", "--bolza", "--decomposition", empty.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let ids: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("path"))
        .map(|n| n.attribute("id").unwrap().to_string())
        .collect();
    assert_eq!(ids, ["domain"]);

    fs::write(&empty, "[1, 2").unwrap();
    let o = pants(&["render", "--bolza", "--decomposition", empty.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}
