use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn golodlab(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_golodlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn golodlab");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("single JSON document")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

const CYCLE_FACETS: &str = r#"{"version":1,"m":4,"facets":[[1,2],[2,3],[3,4],[1,4]]}"#;
const CYCLE_MNF: &str = r#"{"version":1,"m":4,"minimal_non_faces":[[1,3],[2,4]],"name":"square"}"#;

#[test]
fn mnf_examples() {
    let out = golodlab(&["mnf"], CYCLE_FACETS);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out), json!([[1, 3], [2, 4]]));

    let out = golodlab(&["mnf"], r#"{"version":1,"m":3,"facets":[[1,2,3]]}"#);
    assert_eq!(json_out(&out), json!([]));

    let out = golodlab(&["mnf"], r#"{"version":1,"m":3,"facets":[[0,1]]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex 0"));
}

#[test]
fn input_errors_exit_2() {
    for bad in [
        "{",
        r#"{"version":2,"m":2,"facets":[[1]]}"#,
        r#"{"version":1,"m":2,"facets":[[2,1]]}"#,
        r#"{"version":1,"m":2,"facets":[[1,1]]}"#,
        r#"{"version":1,"m":2}"#,
        r#"{"version":1,"m":2,"facets":[[1]],"minimal_non_faces":[[2]]}"#,
        r#"{"version":1,"m":3,"minimal_non_faces":[[1],[1,2]]}"#,
        r#"{"version":1,"m":2,"facets":[[1]],"colour":"red"}"#,
    ] {
        let out = golodlab(&["mnf"], bad);
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
    assert_eq!(golodlab(&["zk", "--ring", "F4"], CYCLE_MNF).status.code(), Some(2));
    assert_eq!(golodlab(&["verify", "--exhaustive", "6"], "").status.code(), Some(2));
    assert_eq!(golodlab(&["frobnicate"], "").status.code(), Some(2));
}

#[test]
fn taylor_examples() {
    let out = golodlab(
        &["taylor", "--check-minimal"],
        r#"{"version":1,"m":3,"minimal_non_faces":[[1,2],[2,3],[1,3]]}"#,
    );
    let v = json_out(&out);
    assert_eq!(v["minimal"], json!(false));
    assert_eq!(v["witness"], json!(1));
    assert_eq!(v["scan_minimal"], json!(false));

    let out = golodlab(&["taylor"], r#"{"version":1,"m":2,"minimal_non_faces":[[1,2]]}"#);
    let v = json_out(&out);
    assert_eq!(v["minimal"], json!(true));
    assert_eq!(
        v["betti"],
        json!([{"l":0,"I":[],"beta":1},{"l":1,"I":[1,2],"beta":1}])
    );

    let out = golodlab(&["taylor"], r#"{"version":1,"m":2,"minimal_non_faces":[]}"#);
    let v = json_out(&out);
    assert_eq!(v["minimal"], json!(true));
    assert_eq!(v["betti"], json!([{"l":0,"I":[],"beta":1}]));
}

#[test]
fn zk_examples() {
    let out = golodlab(&["zk"], r#"{"version":1,"m":2,"minimal_non_faces":[[1,2]]}"#);
    let v = json_out(&out);
    assert_eq!(v["dims"], json!({"0":1,"3":1}));
    assert_eq!(v["products"]["trivial"], json!(true));
    assert_eq!(v["ring"], json!("Q"));

    for ring in ["Z", "Q", "F2", "F3", "F5"] {
        let out = golodlab(&["zk", "--ring", ring, "--with-real-oracle"], CYCLE_MNF);
        assert_eq!(out.status.code(), Some(0));
        let v = json_out(&out);
        assert_eq!(v["dims"], json!({"0":1,"3":2,"6":1}), "{ring}");
        assert_eq!(v["products"]["trivial"], json!(false));
        assert_eq!(v["real_oracle"]["agrees"], json!(true));
    }

    let out = golodlab(&["zk"], r#"{"version":1,"m":3,"facets":[[1,2,3]]}"#);
    assert_eq!(json_out(&out)["dims"], json!({"0":1}));
}

#[test]
fn verify_examples() {
    let out = golodlab(&["verify", "--exhaustive", "4"], "");
    assert_eq!(out.status.code(), Some(0));
    let l = lines(&out);
    let summary = &l.last().unwrap()["summary"];
    assert_eq!(summary["inconsistent"], json!(0));
    assert_eq!(summary["instances"], json!(167));

    let out = golodlab(&["verify"], CYCLE_MNF);
    let l = lines(&out);
    assert_eq!(l[0]["name"], json!("square"));
    assert_eq!(l[0]["join_obstruction"]["certified"], json!(true));
    let summary = &l[1]["summary"];
    assert_eq!(summary["golod"], json!(0));
    assert_eq!(summary["non_golod"], json!(1));

    // several records in one stream
    let two = format!("{CYCLE_MNF}\n{}", r#"{"version":1,"m":4,"minimal_non_faces":[[1,2,3],[1,4]]}"#);
    let l = lines(&golodlab(&["verify"], &two));
    assert_eq!(l.last().unwrap()["summary"]["golod"], json!(1));
    assert_eq!(l[1]["wedge_certificate"], json!(true));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--random", "10", "--seed", "7"];
    let a = golodlab(&args, "");
    let b = golodlab(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut one_thread = Command::new(env!("CARGO_BIN_EXE_golodlab"));
    let c = one_thread
        .args(args)
        .env("GOLODLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
    let other = golodlab(&["verify", "--random", "10", "--seed", "8"], "");
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn verify_from_file() {
    let dir = std::env::temp_dir().join(format!("golodlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.json");
    std::fs::write(&path, CYCLE_MNF).unwrap();
    let out = golodlab(&["verify", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).len(), 2);
    let missing = golodlab(&["verify", dir.join("nope.json").to_str().unwrap()], "");
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn kn_examples() {
    let out = golodlab(
        &["kn", "--verify-homotopy"],
        r#"{"version":1,"W":2,"entries":[[1],[2]]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["complex"]["minimal_non_faces"], json!([[1, 3], [2, 4]]));
    assert_eq!(v["homotopy"]["covers"], json!(true));
    assert_eq!(v["homotopy"]["homology"]["degrees"]["1"]["betti"], json!(1));

    let out = golodlab(&["kn", "--verify-homotopy"], r#"{"version":1,"W":2,"entries":[[1]]}"#);
    let v = json_out(&out);
    assert_eq!(v["homotopy"]["covers"], json!(false));
    assert_eq!(v["homotopy"]["passed"], json!(true));

    let out = golodlab(&["kn", "--verify-homotopy"], r#"{"version":1,"W":0,"entries":[]}"#);
    let v = json_out(&out);
    assert_eq!(v["complex"]["m"], json!(0));
    assert_eq!(v["homotopy"]["homology"]["degrees"]["-1"]["betti"], json!(1));

    let out = golodlab(&["kn"], r#"{"version":1,"W":2,"entries":[[3]]}"#);
    assert_eq!(out.status.code(), Some(2));
}
