use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupcover")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("groupcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn sigma_document_fields() {
    let out = run(&["sigma", "catalog:Sym(4)", "--json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["sigma"], 4);
    assert_eq!(doc["order"], 24);
    assert_eq!(doc["group"], "catalog:Sym(4)");
    assert_eq!(doc["cover"].as_array().unwrap().len(), 4);
    assert!(doc.get("interval").is_none());
}

#[test]
fn cyclic_groups_have_no_cover() {
    let out = run(&["sigma", "catalog:Cyclic(12)", "--json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["sigma"], "infinity");
    assert!(doc["cover"].as_array().unwrap().is_empty());
}

#[test]
fn computed_cover_verifies() {
    let out_path = scratch("pgammal28.json", "");
    let out = run(&["sigma", "catalog:PGammaL2(8)", "--enumerate-all", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["sigma"], 29);
    assert_eq!(doc["unique"], true);
    assert_eq!(doc["optimal_count"], 1);
    let verify = run(&["verify", "catalog:PGammaL2(8)", out_path.to_str().unwrap()]);
    assert_eq!(code(&verify), 0, "{}", String::from_utf8_lossy(&verify.stdout));

    // the bare cover array is accepted too
    let bare = scratch("pgammal28-bare.json", &doc["cover"].to_string());
    assert_eq!(code(&run(&["verify", "catalog:PGammaL2(8)", bare.to_str().unwrap()])), 0);
}

#[test]
fn documents_do_not_depend_on_thread_count() {
    let one = run(&["sigma", "catalog:Alt(6)", "--enumerate-all", "--json", "--threads", "1"]);
    let four = run(&["sigma", "catalog:Alt(6)", "--enumerate-all", "--json", "--threads", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn klein_covers() {
    // the regular Klein four-group; the catalog's ElemAbelian(2,2) acts on two orbits instead
    let klein = scratch("klein-regular.group", "degree 4\ngen (1 2)(3 4)\ngen (1 3)(2 4)\n");
    let klein = klein.to_str().unwrap();
    let good = scratch("klein-good.json", r#"[["(1 2)(3 4)"], ["(1 3)(2 4)"], ["(1 4)(2 3)"]]"#);
    let out = run(&["verify", klein, good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let short = scratch("klein-short.json", r#"{"cover": [["(1 2)(3 4)"], ["(1 3)(2 4)"]]}"#);
    let out = run(&["verify", klein, short.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("(1 4)(2 3)"));

    let whole = scratch("klein-whole.json", r#"[["(1 2)(3 4)", "(1 3)(2 4)"]]"#);
    assert_eq!(code(&run(&["verify", klein, whole.to_str().unwrap()])), 1);

    let stranger = scratch("klein-stranger.json", r#"[["(1 2)"]]"#);
    assert_eq!(code(&run(&["verify", klein, stranger.to_str().unwrap()])), 1);
}

#[test]
fn group_files() {
    let file = scratch("klein.group", "# Klein four-group\ndegree 4\ngen (1 2)(3 4)\ngen (1 3)(2 4)\n");
    let out = run(&["sigma", file.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["sigma"], 3);

    let catalog = scratch("alt5.group", "catalog: Alt(5)\n");
    assert_eq!(json(&run(&["sigma", catalog.to_str().unwrap(), "--json"]))["sigma"], 10);

    let broken = scratch("broken.group", "gen (1 2)\n");
    let out = run(&["sigma", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["sigma", "catalog:Foo(3)"])), 2);
    assert_eq!(code(&run(&["sigma", "catalog:Sym(9)"])), 3);
    assert_eq!(code(&run(&["sigma", "catalog:Sym(5)", "--cap", "100"])), 3);
    assert_eq!(code(&run(&["sigma", "/nonexistent/group.txt"])), 2);
    assert_eq!(code(&run(&["sigma", "catalog:Sym(4)", "--threads", "0"])), 2);

    let out = run(&["sigma", "catalog:PSL2(8)", "--node-budget", "1", "--json"]);
    assert_eq!(code(&out), 3);
    let doc = json(&out);
    assert!(doc["sigma"].is_null());
    let [lo, hi] = [doc["interval"][0].as_u64().unwrap(), doc["interval"][1].as_u64().unwrap()];
    assert!(lo <= 36 && 36 <= hi);
}

#[test]
fn elementary_verdicts() {
    let out = run(&["elementary", "catalog:Sym(4)", "--json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["is_elementary"], false);
    assert_eq!(doc["sigma"], 4);
    assert_eq!(doc["witness"]["normal_order"], 4);

    let doc = json(&run(&["elementary", "catalog:Alt(5)", "--json"]));
    assert_eq!(doc["is_elementary"], true);
    assert_eq!(doc["sigma"], 10);
}

#[test]
fn small_table() {
    let out = run(&["table", "--max-sum", "6", "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out);
    assert_eq!(doc["mismatches"], 0);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
}
