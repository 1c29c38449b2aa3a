use std::io::Write;
use std::process::{Command, Output, Stdio};

use lbkit::diagrams::half_twist_tangle;
use lbkit::kirby::{build_xpq, KirbyDiagram};
use serde_json::Value;

fn lbkit(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lbkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = lbkit(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn build(p: i64, q: i64) -> String {
    stdout(&lbkit(&["build", "--p", &p.to_string(), "--q", &q.to_string()], None))
}

#[test]
fn build_emits_the_family_diagram() {
    let v = ok_json(&["build", "--p", "3", "--q", "-1"], None);
    let d: KirbyDiagram = serde_json::from_value(v).unwrap();
    assert_eq!(d, build_xpq(3, -1));
    let v = ok_json(&["build", "--p", "0", "--q", "0", "--double"], None);
    assert_eq!(v["h3"], 1);
    assert_eq!(v["h4"], 1);
}

#[test]
fn cover_of_the_two_five_diagram() {
    let v = ok_json(&["cover", "--degree", "2", "-"], Some(&build(2, 5)));
    let mut f: Vec<i64> = v["total"]["two_handles"].as_array().unwrap().iter().map(|h| h["framing"].as_i64().unwrap()).collect();
    f.sort_unstable();
    assert_eq!(f, vec![0, 0, 3, 3, 4, 4]);
    assert_eq!(v["map"].as_array().unwrap().len(), 6);
    assert_eq!(v["deck"].as_array().unwrap().len(), 6);
}

#[test]
fn homology_and_boundary() {
    let input = build(1, 1);
    assert_eq!(ok_json(&["homology"], Some(&input)), serde_json::json!({"free_rank": 0, "torsion": [2]}));
    let b = ok_json(&["boundary", "-"], Some(&input));
    assert!(b["free_rank"].is_u64() && b["torsion"].is_array());
}

#[test]
fn slide_moves_the_framing() {
    let v = ok_json(&["slide", "--handle", "gamma_minus", "--over", "mu", "--sign", "-1"], Some(&build(0, 5)));
    let h = v["two_handles"].as_array().unwrap().iter().find(|h| h["id"] == "gamma_minus").unwrap().clone();
    assert_eq!(h["framing"], 3);
}

#[test]
fn classify_and_table() {
    let v = ok_json(&["classify", "--i", "0", "--j", "2"], None);
    assert_eq!(v["topologically_concordant"], false);
    assert_eq!(v["equivalent"], true);
    let out = lbkit(&["table", "--range", "-2:2"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,j,equivalent,homotopic,concordant,isotopic");
    assert_eq!(lines.len(), 26);
    assert!(lines.contains(&"0,2,true,true,false,false"));
    assert!(lines.contains(&"-2,2,true,true,true,true"));
}

#[test]
fn obstruct_and_homotopy_class() {
    let v = ok_json(&["obstruct", "--i", "0", "--j", "2", "--closed"], None);
    assert_eq!(v["parity"], 1);
    assert!(v["lk_L"].is_i64());
    let v = ok_json(&["homotopy-class", "--i", "-2", "--j", "0"], None);
    assert_eq!(v["class"], serde_json::json!({"x": 1}));
    assert_eq!(v["lightbulb"], false);
}

#[test]
fn render_formats() {
    let t = serde_json::to_string(&half_twist_tangle(2)).unwrap();
    let out = lbkit(&["render", "--format", "text"], Some(&t));
    assert_eq!(stdout(&out), "-\\-\\-\n-/-/-\n");
    let svg = stdout(&lbkit(&["render", "--format", "svg"], Some(&build(0, 0))));
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<ellipse").count(), 3);
    assert_eq!(svg.matches("class=\"dotted\"").count(), 1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["build", "--p", "1"],
        vec!["build", "--p", "1", "--q", "1", "--bogus"],
        vec!["table", "--range", "3"],
        vec!["table", "--range", "4:1"],
        vec!["slide", "--handle", "a", "--over", "b", "--sign", "2"],
        vec!["classify", "--i", "0", "--j", "2", "--format", "png"],
    ] {
        let out = lbkit(&args, Some(""));
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn domain_errors_exit_one_with_json() {
    let doubled = stdout(&lbkit(&["build", "--p", "0", "--q", "0", "--double"], None));
    let cases: Vec<(Vec<&str>, Option<String>)> = vec![
        (vec!["obstruct", "--i", "0", "--j", "1"], None),
        (vec!["homotopy-class", "--i", "0", "--j", "1"], None),
        (vec!["homology"], Some("{not json".into())),
        (vec!["boundary"], Some(doubled)),
        (vec!["render", "--format", "csv"], Some(build(0, 0))),
        (vec!["build", "--p", "0", "--q", "0", "--format", "svg"], None),
        (vec!["slide", "--handle", "gamma_plus", "--over", "nope"], Some(build(0, 0))),
        (vec!["homology", "/nonexistent/file.json"], None),
    ];
    for (args, input) in cases {
        let out = lbkit(&args, input.as_deref());
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v["error"].is_string(), "{args:?}");
    }
}

#[test]
fn identical_arguments_give_identical_bytes() {
    for args in [vec!["build", "--p", "2", "--q", "-3"], vec!["table", "--range", "-1:1", "--closed"], vec!["classify", "--i", "1", "--j", "5"]] {
        assert_eq!(lbkit(&args, None).stdout, lbkit(&args, None).stdout);
    }
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("lbkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.json");
    let out = lbkit(&["build", "--p", "1", "--q", "2", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let d: KirbyDiagram = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d, build_xpq(1, 2));
    std::fs::remove_dir_all(&dir).unwrap();
}
