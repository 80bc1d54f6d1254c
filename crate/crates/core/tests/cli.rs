use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/specs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_presentcert")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_1331_is_certified() {
    let out = run(&["check", path(&spec("1331.spec"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "certified");
    assert_eq!(v["input"]["blocks"], serde_json::json!([1, 3, 3, 1]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("certified"));
}

#[test]
fn check_three_blocks_is_not_established() {
    let out = run(&["check", path(&spec("131.spec"))]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "not_established");
    // the zero-weight slice also carries H2 classes (e_{0,1j}∧e_{1j,2} differences)
    assert_eq!(v["result"]["failed"], serde_json::json!(["iii", "iv"]));
    assert_eq!(v["result"]["conditions"]["iv"]["note"], "full dominant-weight form not evaluated");
}

#[test]
fn nonhopf_and_prime_override() {
    let out = run(&["nonhopf", path(&spec("1331.spec")), "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["kernel_size"], 2);
    let out = run(&["nonhopf", path(&spec("1331.spec")), "--prime", "3", "--samples", "50"]);
    assert_eq!(json(&out)["result"]["kernel_size"], 3);
}

#[test]
fn outer_and_cohopf_need_no_spec() {
    let out = run(&["outer", "--n", "4", "--m", "2", "--g", "-1,0,0,-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "inner");
    let out = run(&["outer", "--n", "3", "--m", "2", "--g", "0,1,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "outer");
    let out = run(&["cohopf", "--n", "3", "--m", "3", "--k", "2", "--samples", "50"]);
    assert_eq!(json(&out)["result"]["index"], 512);
}

#[test]
fn input_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("presentcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.spec");
    std::fs::write(&bad, "blocks = 1 3\nkinds = id sl sl id\n").unwrap();
    let out = run(&["check", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["error"]["location"]["line"], 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 1"));

    let missing = dir.join("missing.spec");
    for args in [
        vec!["check", path(&missing)],
        vec!["bogus", path(&spec("1331.spec"))],
        vec!["outer", "--n", "3", "--m", "2", "--g", "1,x"],
        vec!["cohopf", "--n", "3", "--m", "1", "--k", "-2"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json(&out)["verdict"], "input_error", "{args:?}");
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn reports_are_byte_stable_across_concurrent_runs() {
    let p = path(&spec("2332.spec")).to_string();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let p = p.clone();
            std::thread::spawn(move || run(&["homology", &p]).stdout)
        })
        .collect();
    let outs: Vec<Vec<u8>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
    let v: Value = serde_json::from_slice(&outs[0]).unwrap();
    assert_eq!((v["result"]["h1_dim"].as_u64(), v["result"]["h2_dim"].as_u64()), (Some(21), Some(198)));
}

#[test]
fn ungraded_flag_agrees_with_graded() {
    let graded = json(&run(&["homology", path(&spec("1331.spec"))]));
    let plain = json(&run(&["homology", path(&spec("1331.spec")), "--ungraded"]));
    assert_eq!(plain["result"]["mode"], "ungraded");
    assert_eq!(graded["result"]["h2_dim"], plain["result"]["h2_dim"]);
    assert_eq!(graded["result"]["h1_dim"], plain["result"]["h1_dim"]);
}

#[test]
fn weights_carry_mod_p_flag() {
    let v = json(&run(&["weights", path(&spec("1331.spec"))]));
    let basis = v["result"]["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 22);
    assert!(basis.iter().all(|b| b["mod_P_zero"].is_boolean() && b["weight"].is_array()));
}
