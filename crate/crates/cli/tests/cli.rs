use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

const LOOP: &str = r#"{"schema":{"R":2},"facts":[["R","a","a"]]}"#;
const EDGE: &str = r#"{"schema":{"R":2},"facts":[["R","a","b"]]}"#;
const PATH2: &str = r#"{"schema":{"R":2},"facts":[["R","a","b"],["R","b","c"]]}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn homquery(args: &[&std::ffi::OsStr]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homquery"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> (i32, Value) {
    let args: Vec<&std::ffi::OsStr> = args.iter().map(|a| a.as_ref()).collect();
    let (code, stdout) = homquery(&args);
    (code, serde_json::from_str(&stdout).unwrap_or(Value::Null))
}

#[test]
fn reflexive_loop_algorithm_accepts_loop() {
    let ws = Workspace::new();
    let alg = ws.file(
        "alg.json",
        &json!({
            "semiring": "nat",
            "queries": [serde_json::from_str::<Value>(LOOP).unwrap(), serde_json::from_str::<Value>(EDGE).unwrap()],
            "answers": {"kind": "boxes", "boxes": [[{"op": "eq", "v": 1}, {"op": "eq", "v": 1}]]}
        })
        .to_string(),
    );
    let d = ws.file("loop.json", LOOP);
    assert_eq!(run(&[&"eval", &alg, &d]), (0, json!({"accepted": true})));
    let two = ws.file(
        "two.json",
        r#"{"schema":{"R":2},"facts":[["R","a","a"],["R","a","b"]]}"#,
    );
    assert_eq!(run(&[&"eval", &alg, &two]), (0, json!({"accepted": false})));
}

#[test]
fn collide_edge_and_path() {
    let ws = Workspace::new();
    let f = ws.file("f.json", &format!("[{EDGE}]"));
    let a = ws.file("a.json", EDGE);
    let b = ws.file("b.json", PATH2);
    let (code, out) = run(&[&"collide", &f, &a, &b]);
    assert_eq!(code, 0);
    assert_eq!(out["profile"], json!([2]));
    assert_eq!(
        out["b_prime"],
        serde_json::from_str::<Value>(
            &r#"{"schema":{"R":2},"elements":["a","b","c"],"facts":[["R","a","b"],["R","b","c"]]}"#
                .to_string()
        )
        .unwrap()
    );
    assert_eq!(
        out["a_prime"]["elements"],
        json!(["0.a", "0.b", "1.a", "1.b"])
    );
}

#[test]
fn schema_mismatch_is_a_domain_error() {
    let ws = Workspace::new();
    let a = ws.file("a.json", EDGE);
    let b = ws.file("b.json", r#"{"schema":{"S":1},"facts":[["S","a"]]}"#);
    let (code, out) = run(&[&"count", &a, &b]);
    assert_eq!(code, 1);
    assert_eq!(out["kind"], "schema_mismatch");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _) = homquery(&["count".as_ref()]);
    assert_eq!(code, 2);
    let (code, _) = homquery(&["no-such-command".as_ref()]);
    assert_eq!(code, 2);
}

#[test]
fn counting_commands() {
    let ws = Workspace::new();
    let k3 = ws.file(
        "k3.json",
        r#"{"schema":{"R":2},"facts":[["R","a","b"],["R","b","a"],["R","b","c"],["R","c","b"],["R","a","c"],["R","c","a"]]}"#,
    );
    assert_eq!(run(&[&"count", &k3, &k3]), (0, json!({"count": 6})));
    assert_eq!(
        run(&[&"count", &k3, &k3, &"--semiring", &"bool"]),
        (0, json!({"count": 1}))
    );
    assert_eq!(run(&[&"sur", &k3, &k3]), (0, json!({"count": 6})));
    let edge = ws.file("edge.json", EDGE);
    let path = ws.file("path.json", PATH2);
    assert_eq!(run(&[&"sur", &path, &edge]), (0, json!({"count": 0})));
    let f = ws.file("f.json", &format!("[{LOOP},{EDGE}]"));
    let (code, out) = run(&[&"profile", &"--left", &f, &path]);
    assert_eq!((code, out["values"].clone()), (0, json!([0, 2])));
    let (code, out) = run(&[&"profile", &"--right", &f, &edge, &"--semiring", &"bool"]);
    assert_eq!((code, out["values"].clone()), (0, json!([1, 1])));
    let (code, _) = run(&[&"profile", &f, &edge]);
    assert_eq!(code, 2);
}

#[test]
fn structure_commands() {
    let ws = Workspace::new();
    let lp = ws.file("loop.json", LOOP);
    let edge = ws.file("edge.json", EDGE);
    assert_eq!(run(&[&"girth", &lp]), (0, json!({"girth": 1})));
    assert_eq!(run(&[&"girth", &edge]), (0, json!({"girth": "infinity"})));
    let (_, sum) = run(&[&"sum", &edge, &edge]);
    let two = ws.file("two.json", &sum.to_string());
    let (code, core) = run(&[&"core", &two]);
    assert_eq!(code, 0);
    assert_eq!(core["elements"], json!(["0.a", "0.b"]));
    let (_, parts) = run(&[&"components", &two]);
    assert_eq!(parts.as_array().unwrap().len(), 2);
    let (_, product) = run(&[&"product", &lp, &edge]);
    assert_eq!(
        product["facts"],
        json!([["R", r#"["a","a"]"#, r#"["a","b"]"#]])
    );
    let (_, power) = run(&[&"power", &edge, &lp]);
    assert_eq!(power["elements"].as_array().unwrap().len(), 2);
}

#[test]
fn polysolve_and_lovasz() {
    let ws = Workspace::new();
    let t = ws.file("t.json", "[[1,2]]");
    let b = ws.file("b.json", "[2,-2]");
    assert_eq!(
        run(&[&"polysolve", &t, &b]),
        (0, json!({"a": [1], "u": [1, 2], "c": 2, "e": [5, -3]}))
    );
    let odd = ws.file("odd.json", "[1,1]");
    let (code, out) = run(&[&"polysolve", &t, &odd]);
    assert_eq!((code, out["kind"].clone()), (1, json!("divisibility")));

    let edge = ws.file("edge.json", EDGE);
    let path = ws.file("path.json", PATH2);
    let (code, out) = run(&[&"lovasz", &edge, &path]);
    assert_eq!(code, 0);
    assert_eq!(out["subset"], json!(["a", "b"]));
    let (code, out) = run(&[&"lovasz", &edge, &edge]);
    assert_eq!((code, out["kind"].clone()), (1, json!("surjection_exists")));
}

#[test]
fn algorithm_translations() {
    let ws = Workspace::new();
    let alg = ws.file(
        "alg.json",
        &format!(r#"{{"semiring":"bool","queries":[{EDGE}],"answers":{{"kind":"bitset","vectors":[[1]]}}}}"#),
    );
    let (code, lifted) = run(&[&"lift", &alg]);
    assert_eq!(code, 0);
    assert_eq!(
        lifted["answers"],
        json!({"kind": "boxes", "boxes": [[{"op": "pos"}]]})
    );
    let (code, formula) = run(&[&"to-formula", &alg]);
    assert_eq!(code, 0);
    assert!(formula.get("cq").is_some());
    let formula_file = ws.file("formula.json", &formula.to_string());
    let (code, back) = run(&[&"to-algorithm", &formula_file]);
    assert_eq!(code, 0);
    assert_eq!(back["answers"], json!({"kind": "bitset", "vectors": [[1]]}));
    let (code, norm) = run(&[&"normalize", &alg]);
    assert_eq!(code, 0);
    assert_eq!(norm["queries"].as_array().unwrap().len(), 1);
}

#[test]
fn duality_and_search() {
    let ws = Workspace::new();
    let pair = ws.file(
        "pair.json",
        &format!(r#"{{"F":[{EDGE}],"D":[{{"schema":{{"R":2}},"elements":["x"],"facts":[]}}]}}"#),
    );
    assert_eq!(
        run(&[&"verify-duality", &pair, &"--bound", &"3"]),
        (
            0,
            json!({"verdict": "holds_up_to_bound", "bound": 3, "checked": 117})
        )
    );
    let f = ws.file("f.json", &format!("[{LOOP}]"));
    let class = ws.file(
        "class.json",
        &format!(r#"{{"kind":"members","instances":[{LOOP}]}}"#),
    );
    let (code, out) = run(&[
        &"search-collision",
        &f,
        &class,
        &"--bound",
        &"2",
        &"--semiring",
        &"nat",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out["collision"]["q"]["elements"], json!(["v0", "v1"]));
    let (code, out) = run(&[&"enumerate", &"--schema", &"R:2", &"--max", &"2"]);
    assert_eq!((code, out.as_array().unwrap().len()), (0, 18));
    let (_, out) = run(&[
        &"enumerate",
        &"--schema",
        &r#"{"R":2}"#,
        &"--max",
        &"2",
        &"--dedup",
    ]);
    assert_eq!(out.as_array().unwrap().len(), 12);
}

#[test]
fn output_is_deterministic() {
    let ws = Workspace::new();
    let f = ws.file("f.json", &format!("[{EDGE},{LOOP}]"));
    let a = ws.file("a.json", LOOP);
    let b = ws.file(
        "b.json",
        r#"{"schema":{"R":2},"facts":[["R","a","a"],["R","a","b"],["R","b","a"]]}"#,
    );
    let args: Vec<&std::ffi::OsStr> = vec![
        "collide".as_ref(),
        f.as_os_str(),
        a.as_os_str(),
        b.as_os_str(),
    ];
    let first = homquery(&args);
    assert_eq!(first.0, 0, "{}", first.1);
    assert_eq!(first, homquery(&args));
}
