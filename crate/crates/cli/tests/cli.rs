use std::io::Write;
use std::process::{Command, Output, Stdio};

use lrc_forge_cli::CodeDescriptor;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lrc-forge"))
}

fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .env_remove("LRC_FORGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn construct(args: &[&str]) -> String {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const EX1: &[&str] = &[
    "--q", "11", "--n", "5", "--r", "3", "--delta", "3", "--kind", "t1",
];
const EX3: &[&str] = &[
    "--q", "7", "--n", "30", "--r", "4", "--delta", "3", "--kind", "t3",
];

#[test]
fn construct_q11_n5() {
    let d = CodeDescriptor::parse(&construct(EX1)).unwrap();
    assert_eq!(
        (d.k, d.d_exact, d.singleton_bound, d.optimal),
        (2, Some(4), 4, true)
    );
    assert_eq!(d.construction, "t1");
    assert!(d.locality.defining_set.holds && d.locality.direct);
    assert_eq!(d.repair_groups, vec![vec![0, 1, 2, 3, 4]]);
}

#[test]
fn construct_rejections_exit_2() {
    let o = run(&[
        "construct",
        "--q",
        "5",
        "--n",
        "12",
        "--r",
        "4",
        "--delta",
        "3",
        "--kind",
        "t4",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n must be odd"), "{}", stderr(&o));
    let o = run(&[
        "construct",
        "--q",
        "11",
        "--n",
        "11",
        "--r",
        "3",
        "--delta",
        "3",
        "--kind",
        "t1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gcd(n,q) ≠ 1"), "{}", stderr(&o));
    let o = run(&[
        "construct",
        "--q",
        "7",
        "--n",
        "30",
        "--r",
        "4",
        "--delta",
        "3",
        "--kind",
        "remark3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "construct",
        "--q",
        "7",
        "--n",
        "30",
        "--r",
        "4",
        "--delta",
        "3",
        "--kind",
        "t9",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "construct",
        "--q",
        "6",
        "--n",
        "5",
        "--r",
        "3",
        "--delta",
        "3",
        "--kind",
        "t1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("prime power"));
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    assert_eq!(run(&["construct", "--q", "11"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "construct",
            "--q",
            "x",
            "--n",
            "5",
            "--r",
            "3",
            "--delta",
            "3",
            "--kind",
            "t1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("simulate"));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = bin()
        .args(["construct"])
        .args(EX3)
        .env("LRC_FORGE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("rank tests"), "{}", stderr(&o));
    let o = bin()
        .args(["construct"])
        .args(EX1)
        .env("LRC_FORGE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn descriptor_round_trip_and_verify() {
    let text = construct(EX3);
    let d = CodeDescriptor::parse(&text).unwrap();
    assert_eq!(d.to_json_string() + "\n", text);
    let file = write_temp(&text);
    let o = run(&["verify", "--in", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS]"));
    assert!(!stdout(&o).contains("MISMATCH"));
    let o = run_stdin(&["verify", "--in", "-", "--json"], &text);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["ok"], true);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["ok"] == true));
}

#[test]
fn construct_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex1.json");
    let o = run(&[&["construct"], EX1, &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let d = CodeDescriptor::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d.k, 2);
}

#[test]
fn verify_detects_tampering() {
    let text = construct(EX3);
    let tampered = text.replace("\"d_exact\": 6", "\"d_exact\": 5");
    assert_ne!(tampered, text);
    let o = run_stdin(&["verify", "--in", "-"], &tampered);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    let row = out.lines().find(|l| l.starts_with("d_exact")).unwrap();
    assert!(row.contains("MISMATCH"), "{out}");
    assert!(stderr(&o).contains("d_exact"));

    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["generator"][0] = Value::from(1);
    let o = run_stdin(&["verify", "--in", "-"], &v.to_string());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("divides x^n - 1"));

    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["locality"]["defining_set"]["witness"]["step"] = Value::from(7);
    let o = run_stdin(&["verify", "--in", "-"], &v.to_string());
    assert_eq!(o.status.code(), Some(2));

    let o = run_stdin(&["verify", "--in", "-"], "{\"q\": 7}");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--in", "/nonexistent/descriptor.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_gf19_n27() {
    let o = run(&[
        "verify", "--q", "19", "--n", "27", "--r", "4", "--delta", "6", "--kind", "t2", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = |name: &str| {
        report["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["check"] == name)
            .unwrap()
            .clone()
    };
    assert_eq!(row("d_exact")["recomputed"], 8);
    assert_eq!(row("singleton_bound")["recomputed"], 8);
    assert_eq!(row("k")["recomputed"], 10);
}

fn search_json(args: &[&str]) -> Vec<Value> {
    let o = run(&[&["search", "--json"], args].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str::<Vec<Value>>(&stdout(&o)).unwrap()
}

#[test]
fn search_listings() {
    let rows = search_json(&[
        "--q",
        "11",
        "--n-max",
        "30",
        "--r-range",
        "3",
        "--delta-range",
        "3",
    ]);
    let t1: Vec<u64> = rows
        .iter()
        .filter(|r| r["kind"] == "t1")
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(t1, vec![5, 10, 15, 20, 25, 30]);
    let ns: Vec<u64> = rows.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));

    let rows = search_json(&[
        "--q",
        "7",
        "--n-max",
        "30",
        "--r-range",
        "4",
        "--delta-range",
        "3",
    ]);
    for n in [6, 30] {
        assert!(
            rows.iter().any(|r| r["n"] == n && r["kind"] == "t3"),
            "n = {n} missing"
        );
    }

    assert!(search_json(&["--q", "2", "--n-max", "3"]).is_empty());
    let table = stdout(&run(&["search", "--q", "2", "--n-max", "3"]));
    assert_eq!(table.lines().count(), 1);
    assert_eq!(
        run(&["search", "--q", "7", "--n-max", "9", "--r-range", "4-x"])
            .status
            .code(),
        Some(2)
    );
}

fn simulate(desc: &str, extra: &[&str]) -> (i32, Value) {
    let o = run_stdin(&[&["simulate", "--in", "-"], extra].concat(), desc);
    let code = o.status.code().unwrap();
    let v = serde_json::from_str(&stdout(&o)).unwrap_or(Value::Null);
    (code, v)
}

#[test]
fn simulate_local_and_global() {
    let desc = construct(EX3);
    let (code, v) = simulate(&desc, &["--erasures", "local:2", "--trials", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(v["successes"], 1000);
    assert_eq!(v["paths"]["local"], 1000);
    assert!(v["contact_set"]["max"].as_u64().unwrap() <= 5);

    let (code, v) = simulate(&desc, &["--erasures", "global:5", "--trials", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(v["successes"], 1000);
    assert_eq!(v["paths"]["global"], 1000);

    let (code, v) = simulate(&desc, &["--erasures", "local:0", "--trials", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["paths"]["untouched"], 20);

    // Two erasures in each of two groups: local repair still applies.
    let (code, v) = simulate(&desc, &["--erasures", "0,5,1,6", "--trials", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["paths"]["local"], 50);
    // Three in one group forces the global path.
    let (code, v) = simulate(&desc, &["--erasures", "0,5,10", "--trials", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["paths"]["global"], 50);
}

#[test]
fn simulate_capability_and_input_errors() {
    let desc = construct(EX3);
    assert_eq!(simulate(&desc, &["--erasures", "local:3"]).0, 3);
    assert_eq!(simulate(&desc, &["--erasures", "global:6"]).0, 3);
    assert_eq!(simulate(&desc, &["--erasures", "0,5,10,15,20,25"]).0, 3);
    assert_eq!(simulate(&desc, &["--erasures", "local:7"]).0, 2);
    assert_eq!(simulate(&desc, &["--erasures", "0,30"]).0, 2);
    assert_eq!(simulate(&desc, &["--erasures", "burst:3"]).0, 2);
    let (code, v) = simulate(
        &desc,
        &[
            "--erasures",
            "global:13",
            "--trials",
            "50",
            "--allow-failures",
        ],
    );
    assert_eq!(code, 0);
    assert_eq!(v["trials"], 50);
    assert!(v["failures"].as_u64().unwrap() > 0);
}

#[test]
fn simulate_is_deterministic() {
    let desc = construct(EX3);
    let args = [
        "--erasures",
        "global:12",
        "--trials",
        "300",
        "--seed",
        "42",
        "--allow-failures",
    ];
    let (_, a) = simulate(&desc, &args);
    let (_, b) = simulate(&desc, &args);
    let (_, c) = simulate(&desc, &[&args[..], &["--sequential"]].concat());
    assert_eq!(a, b);
    assert_eq!(a, c);
    let (_, other) = simulate(
        &desc,
        &[
            "--erasures",
            "global:12",
            "--trials",
            "300",
            "--seed",
            "43",
            "--allow-failures",
        ],
    );
    assert_eq!(other["trials"], 300);
}
