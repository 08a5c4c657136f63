use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Toy {
    dir: TempDir,
}

impl Toy {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let files = [
            ("u.json", r#"{"atoms": ["p", "q"], "formulas": ["true", "false", "p", "q", "p & q"]}"#),
            ("no_bot.json", r#"{"atoms": ["p", "q"], "formulas": ["true", "p", "q", "p & q"]}"#),
            ("lex.json", r#"{"words": {"w1": {"s1": 1.0}, "w2": {"s2": 1.0}, "w0": {}}}"#),
            (
                "interp.json",
                r#"{"aspects": ["s1", "s2"], "delta": {"s1": "p", "s2": "q", "s1 s2": "p & q"}}"#,
            ),
            ("lang.json", r#"{"alphabet": ["a", "b"], "entries": {"a b": 1.0}}"#),
            ("pairs.json", r#"{"pairs": [["p", "q"], ["p & q", "p"]]}"#),
            (
                "gamma.json",
                r#"{"sentences": {"<s> cat </s>": "p", "<s> dog </s>": "q", "<s> pet </s>": "true"}}"#,
            ),
            ("glex.json", r#"{"words": {"cat_": {"cat": 1.0}, "pet_": {"pet": 1.0}, "bos": {"<s>": 1.0}, "eos": {"</s>": 1.0}}}"#),
        ];
        for (name, body) in files {
            fs::write(dir.path().join(name), body).unwrap();
        }
        Toy { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_contextalg"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }

    fn json(&self, args: &[&str]) -> Value {
        let out = self.run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    }
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const MODEL: [&str; 6] = ["--universe", "u.json", "--lexicon", "lex.json", "--interp", "interp.json"];

fn degree_args<'a>(x: &'a str, y: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["degree"];
    v.extend(MODEL);
    v.extend(extra);
    v.extend([x, y]);
    v
}

#[test]
fn check_reports_exact_identities() {
    let t = Toy::new();
    let r = t.json(&["check", "--universe", "u.json"]);
    assert_eq!(r["conj_exact"], true);
    assert_eq!(r["top_exact"], true);
    // ~p has no member and is undecided on true and q
    assert_eq!(r["neg_defects"]["p"], serde_json::json!([0, 3]));
    assert_eq!(r["disj_defects"].as_array().unwrap().len(), 15);
}

#[test]
fn check_with_pairs_file() {
    let t = Toy::new();
    let r = t.json(&["check", "--universe", "u.json", "--pairs", "pairs.json"]);
    let d = r["disj_defects"].as_array().unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(d[0]["u"], "p");
    assert_eq!(d[0]["v"], "q");
}

#[test]
fn check_input_errors_exit_2() {
    let t = Toy::new();
    let out = t.run(&["check", "--universe", "missing.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.json"));

    let out = t.run(&["check", "--universe", "no_bot.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("false"));
}

#[test]
fn entail_matches_order() {
    let t = Toy::new();
    for (u, v, want) in [("p & q", "p", true), ("p", "q", false), ("p", "true", true), ("false", "q", true)] {
        let r = t.json(&["entail", "--universe", "u.json", u, v]);
        assert_eq!(r["entails"], want, "{u} |- {v}");
        assert_eq!(r["op_leq"], want, "{u} |- {v}");
    }
    let r = t.json(&["entail", "--universe", "u.json", "p & q", "p"]);
    assert_eq!(r["down_set_u"], 2);
    assert_eq!(r["down_set_v"], 3);
}

#[test]
fn entail_rejects_bad_formulas() {
    let t = Toy::new();
    assert_eq!(code(&t.run(&["entail", "--universe", "u.json", "p &", "q"])), 2);
    assert_eq!(code(&t.run(&["entail", "--universe", "u.json", "r", "q"])), 2);
    assert_eq!(code(&t.run(&["entail", "--universe", "u.json", "~p", "q"])), 2);
}

#[test]
fn degree_exact_toy_values() {
    let t = Toy::new();
    let r = t.json(&degree_args("w1 w2", "w1", &["--mode", "exact"]));
    assert_eq!(r["degree"].as_f64().unwrap(), 1.0);
    assert_eq!(r["mode"], "exact");
    let r = t.json(&degree_args("w1", "w1 w2", &[]));
    assert_eq!(format!("{:.4}", r["degree"].as_f64().unwrap()), "0.6667");
    assert!(r.get("stderr").is_none());
}

#[test]
fn degree_mc_is_close_and_reproducible() {
    let t = Toy::new();
    let args = degree_args("w1", "w1 w2", &["--mode", "mc", "--samples", "50000", "--seed", "42"]);
    let a = t.json(&args);
    assert!((a["degree"].as_f64().unwrap() - 2.0 / 3.0).abs() <= 0.02);
    assert!(a["stderr"].as_f64().unwrap() > 0.0);
    assert_eq!(a["samples"], 50000);
    assert_eq!(t.json(&args), a);

    let mut threaded = args.clone();
    threaded.splice(1..1, ["--threads", "4"]);
    assert_eq!(t.json(&threaded), a);
}

#[test]
fn degree_errors() {
    let t = Toy::new();
    assert_eq!(code(&t.run(&degree_args("w0", "w1", &[]))), 3);
    assert_eq!(code(&t.run(&degree_args("w0", "w1", &["--mode", "mc", "--samples", "100"]))), 3);
    assert_eq!(code(&t.run(&degree_args("w9", "w1", &[]))), 2);
    assert_eq!(code(&t.run(&degree_args("", "w1", &[]))), 2);
    assert_eq!(code(&t.run(&degree_args("w1", "w1", &["--dist", "missing.json"]))), 2);
}

#[test]
fn degree_with_distribution_file() {
    let t = Toy::new();
    fs::write(t.path("dist.json"), r#"{"probs": {"p & q": 0.5, "p": 0.5}}"#).unwrap();
    let r = t.json(&degree_args("w1", "w1 w2", &["--dist", "dist.json"]));
    assert_eq!(r["degree"].as_f64().unwrap(), 0.5);

    fs::write(t.path("bad.json"), r#"{"probs": {"p": 1.5}}"#).unwrap();
    assert_eq!(code(&t.run(&degree_args("w1", "w1", &["--dist", "bad.json"]))), 2);
}

#[test]
fn compose_prints_operator() {
    let t = Toy::new();
    let mut args = vec!["compose"];
    args.extend(MODEL);
    args.push("w1 w2");
    let r = t.json(&args);
    assert_eq!(r["diag"], serde_json::json!([0.0, 1.0, 0.0, 0.0, 1.0]));
    assert_eq!(r["universe_hash"].as_str().unwrap().len(), 16);
}

#[test]
fn gamma_source() {
    let t = Toy::new();
    let base = ["--universe", "u.json", "--lexicon", "glex.json", "--gamma", "gamma.json"];
    let mut args = vec!["degree"];
    args.extend(base);
    args.extend(["bos cat_ eos", "bos pet_ eos"]);
    assert_eq!(t.json(&args)["degree"].as_f64().unwrap(), 1.0);

    let mut args = vec!["degree"];
    args.extend(base);
    args.extend(["bos pet_ eos", "bos cat_ eos"]);
    assert!((t.json(&args)["degree"].as_f64().unwrap() - 0.6).abs() < 1e-12);
}

#[test]
fn algebra_subcommands() {
    let t = Toy::new();
    let r = t.json(&["algebra", "--language", "lang.json", "info"]);
    assert_eq!(r["dimension"], 4);
    assert_eq!(r["strings"], 4);
    assert_eq!(r["basis"], serde_json::json!(["", "a", "b", "a b"]));

    let r = t.json(&["algebra", "--language", "lang.json", "mul", "a", "b"]);
    assert_eq!(r, serde_json::json!({"coeffs": {"a b": 1.0}, "support": [["", ""]]}));

    let r = t.json(&["algebra", "--language", "lang.json", "order", "a", "b"]);
    assert_eq!(r, serde_json::json!({"leq": false, "geq": false}));

    let r = t.json(&["algebra", "--language", "lang.json", "order", "a b", "a b"]);
    assert_eq!(r, serde_json::json!({"leq": true, "geq": true}));

    assert_eq!(code(&t.run(&["algebra", "--language", "lang.json", "mul", "a", "c"])), 2);
    assert_eq!(code(&t.run(&["algebra", "--language", "lang.json", "--tol", "-1", "info"])), 2);
}

#[test]
fn text_format() {
    let t = Toy::new();
    let out = t.run(&["--format", "text", "entail", "--universe", "u.json", "p & q", "p"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("p & q |- p: true"));
    assert!(serde_json::from_str::<Value>(&s).is_err());
}

#[test]
fn absolute_paths() {
    let t = Toy::new();
    let abs = t.path("u.json");
    let r = t.json(&["entail", "--universe", abs.to_str().unwrap(), "p", "p"]);
    assert_eq!(r["entails"], true);
}
