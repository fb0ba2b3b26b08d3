use std::process::{Command, Output};

use serde_json::Value;

fn autoseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autoseq"))
        .args(args)
        .env_remove("AUTOSEQ_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn generate_examples() {
    let o = autoseq(&["generate", "--seq", "thue-morse", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "01101001");
    let o = autoseq(&["generate", "--seq", "legendre:7", "--n", "7"]);
    assert_eq!(stdout(&o), "1001011");
    let o = autoseq(&[
        "generate",
        "--seq",
        "rudin-shapiro",
        "--n",
        "8",
        "--format",
        "json",
    ]);
    let v = json(&o);
    assert_eq!(v["bits"], "00010010");
    assert_eq!(v["N"], 8);
}

#[test]
fn generate_rejects_bad_input() {
    assert_eq!(
        autoseq(&["generate", "--seq", "thue-morse", "--n", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        autoseq(&["generate", "--seq", "fibonacci", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        autoseq(&["generate", "--seq", "legendre:9", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(autoseq(&["generate", "--n", "5"]).status.code(), Some(2));
    assert_eq!(autoseq(&["frobnicate"]).status.code(), Some(2));
    let o = autoseq(&["generate", "--automaton", "/nonexistent/a.json", "--n", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn automaton_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tm.json");
    std::fs::write(
        &path,
        r#"{"k":2,"states":["A","B"],"initial":"A",
            "transitions":{"A":["A","B"],"B":["B","A"]},"outputs":{"A":0,"B":1}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = autoseq(&["generate", "--automaton", p, "--n", "16"]);
    assert_eq!(stdout(&o), "0110100110010110");
    let o = autoseq(&[
        "verify-bounds",
        "--theorem",
        "thm4",
        "--automaton",
        p,
        "--n",
        "600",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["witness_sum"], 128);

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"k":2,"states":["A"],"initial":"B","transitions":{},"outputs":{}}"#,
    )
    .unwrap();
    let o = autoseq(&["generate", "--automaton", bad.to_str().unwrap(), "--n", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_functional_exit_codes() {
    let o = autoseq(&[
        "verify-functional",
        "--seq",
        "baum-sweet",
        "--n",
        "4096",
        "--poly",
        "y^4+x*y^2+y",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["ok"], true);
    let o = autoseq(&[
        "verify-functional",
        "--seq",
        "thue-morse",
        "--n",
        "4096",
        "--poly",
        "y^4+x*y^2+y",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["first_nonzero"].is_u64());
    let o = autoseq(&[
        "verify-functional",
        "--seq",
        "thue-morse",
        "--n",
        "64",
        "--poly",
        "(x+1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn classify_output() {
    let o = autoseq(&["classify", "--poly", "(x+1)^3y^2+(x+1)^2y+x"]);
    let v = json(&o);
    assert_eq!(v["classification"]["form"]["tag"], "Thm2");
    assert_eq!(v["classification"]["form"]["ell"], 1);
}

#[test]
fn measure_output_shape() {
    let o = autoseq(&["measure", "--measure", "wd", "--bits", "0110"]);
    let v = json(&o);
    assert_eq!(v["measure"], "wd");
    assert_eq!(v["N"], 4);
    assert_eq!(v["value"], 2);
    assert_eq!(v["method"], "optimized");
    assert_eq!(v["witness"], serde_json::json!({"a": 1, "b": 1, "t": 2}));
    let o = autoseq(&[
        "measure",
        "--measure",
        "corrk",
        "--k",
        "3",
        "--bits",
        "00000",
        "--method",
        "oracle",
    ]);
    assert_eq!(json(&o)["value"], 3);
    let o = autoseq(&[
        "measure",
        "--measure",
        "corrk",
        "--k",
        "3",
        "--bits",
        "00000",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = autoseq(&[
        "measure",
        "--measure",
        "lincomp",
        "--seq",
        "thue-morse",
        "--n",
        "8",
        "--profile",
    ]);
    assert_eq!(
        json(&o)["profile"],
        serde_json::json!([0, 2, 2, 2, 2, 4, 4, 4])
    );
}

#[test]
fn oracle_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_autoseq"))
            .args([
                "measure",
                "--measure",
                "wd",
                "--seq",
                "thue-morse",
                "--n",
                "64",
                "--method",
                "oracle",
            ])
            .env("AUTOSEQ_ORACLE_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("wd=32").status.code(), Some(2));
    assert_eq!(run("wd=64").status.code(), Some(0));
    assert_eq!(run("16").status.code(), Some(2));
    assert_eq!(run("wd=").status.code(), Some(2));
}

#[test]
fn bound_reports_exit_on_verdict() {
    let o = autoseq(&["verify-bounds", "--theorem", "eq5", "--n", "2048"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["theorem"], "Eq5");
    assert_eq!(v["witness"], serde_json::json!({"a": 2, "b": 4, "t": 512}));
    let o = autoseq(&[
        "verify-bounds",
        "--theorem",
        "thm2",
        "--seq",
        "rudin-shapiro",
        "--n",
        "64",
        "--ell",
        "1",
        "--a0",
        "1",
        "--a1",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = autoseq(&[
        "verify-bounds",
        "--theorem",
        "thm2",
        "--seq",
        "thue-morse",
        "--n",
        "6",
        "--ell",
        "1",
        "--a0",
        "1",
        "--a1",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = autoseq(&[
        "verify-bounds",
        "--theorem",
        "thm1",
        "--seq",
        "three-squares",
        "--n",
        "512",
        "--poly",
        "(x^8+1)y^4+(x^8+1)y+x^6+x^5+x^3+x^2+x",
    ]);
    assert_eq!(json(&o)["theorem"], "Thm1-8");
    let o = autoseq(&[
        "verify-bounds",
        "--theorem",
        "legendre",
        "--p",
        "101",
        "--n",
        "50",
    ]);
    let v = json(&o);
    assert_eq!(v["theorem"], "Legendre");
    assert!(v["details"]["ratio"].is_f64());
}

#[test]
fn state_complexity_dump_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("rs.json");
    let o = autoseq(&[
        "state-complexity",
        "--seq",
        "rudin-shapiro",
        "--n",
        "256",
        "--k",
        "2",
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["upper"].as_u64().unwrap() <= 4);
    assert!(v["lower_conflict"].as_u64().unwrap() <= v["upper"].as_u64().unwrap());
    let regenerated = autoseq(&[
        "generate",
        "--automaton",
        dump.to_str().unwrap(),
        "--n",
        "256",
    ]);
    let direct = autoseq(&["generate", "--seq", "rudin-shapiro", "--n", "256"]);
    assert_eq!(stdout(&regenerated), stdout(&direct));
}

#[test]
fn batch_streams() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let o = autoseq(&["batch", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());

    let mixed = dir.path().join("mixed.json");
    std::fs::write(
        &mixed,
        r#"[["generate","--seq","thue-morse","--n","4"],
            ["generate","--seq","no-such-seq","--n","4"],
            ["verify-bounds","--theorem","w","--n","40"]]"#,
    )
    .unwrap();
    let o = autoseq(&["batch", mixed.to_str().unwrap(), "--jobs", "3", "--timing"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["result"], "0110");
    assert_eq!(lines[1]["exit"], 2);
    assert!(lines[1]["error"].as_str().unwrap().contains("no-such-seq"));
    assert_eq!(lines[2]["result"]["theorem"], "Cor-w");
    assert!(lines.iter().all(|l| l["timing_ms"].is_number()));
    assert!(lines[0]["tool"].as_str().unwrap().starts_with("autoseq "));

    let o = autoseq(&["batch", mixed.to_str().unwrap()]);
    assert!(!stdout(&o).contains("timing_ms"));
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{not json").unwrap();
    assert_eq!(
        autoseq(&["batch", broken.to_str().unwrap()]).status.code(),
        Some(3)
    );
}
