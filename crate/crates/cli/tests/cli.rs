use std::path::PathBuf;
use std::process::Command;

use rldg::jn::gen_p;
use rldg::Alphabet;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn rldg_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rldg"));
    for var in ["RLDG_P", "RLDG_Q", "RLDG_N", "RLDG_FORMAT", "RLDG_BUDGET", "RLDG_SEED"] {
        cmd.env_remove(var);
    }
    cmd.envs(env.iter().copied()).args(args);
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn rldg(args: &[&str]) -> Run {
    rldg_with_env(args, &[])
}

fn ok(args: &[&str]) -> String {
    let r = rldg(args);
    assert_eq!(r.code, 0, "rldg {args:?} failed: {}", r.stderr);
    r.stdout
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

/// Parses one line of json output and validates it against its schema.
fn checked_json(kind: &str, line: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(format!("{kind}.v1.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let value: Value = serde_json::from_str(line).unwrap_or_else(|e| panic!("{kind}: not json ({e}): {line}"));
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{kind} output fails its schema: {errors:?}\n{line}");
    // round trip
    let again: Value = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(again, value);
    value
}

fn last_line(s: &str) -> &str {
    s.lines().last().unwrap_or("")
}

#[test]
fn decode_reproduces_the_three_level_example() {
    let text = ok(&["--p", "3", "--q", "2", "decode", "--starts", "2,3,2", "--lengths", "1,2"]);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect::<Vec<_>>()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][1..], ["1", "2"]);
    assert_eq!(rows[1][3..], ["2", "3", "3"]);
    assert_eq!(rows[2][3..], ["3", "3", "2", "2", "2", "3", "3", "3"]);
    let bottom: String = rows[3][3..].concat();
    assert_eq!(bottom, "222333223322333222333");

    let json = ok(&["--p", "3", "--q", "2", "--format", "json", "decode", "--starts", "2,3,2", "--lengths", "1,2"]);
    let v = checked_json("decode", json.trim());
    assert_eq!(v["levels"][0], serde_json::json!([2, 3, 3]));
    assert_eq!(v["levels"][1], serde_json::json!([3, 3, 2, 2, 2, 3, 3, 3]));
    assert_eq!(v["levels"][2].as_array().unwrap().len(), 21);
}

#[test]
fn decode_edge_cases() {
    let json = ok(&["--format", "json", "decode", "--starts", "2,1,2"]);
    let v = checked_json("decode", json.trim());
    assert_eq!(v["levels"], serde_json::json!([[], [], []]));

    let r = rldg(&["--n", "2", "decode", "--starts", "2,1,2", "--lengths", "1"]);
    assert_eq!(r.code, 2);
    let r = rldg(&["decode", "--starts", "2,3", "--lengths", "1"]);
    assert_eq!(r.code, 2, "3 is not a letter of {{1, 2}}");
    let r = rldg(&["decode", "--starts", "2", "--lengths", "1,0"]);
    assert_eq!(r.code, 2);
    let r = rldg(&["decode", "--starts", "2", "--format", "dot"]);
    assert_eq!(r.code, 2);
}

#[test]
fn equal_parity_alphabets_are_rejected_at_parse_time() {
    let r = rldg(&["--p", "1", "--q", "3", "automaton"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("p + q must be odd"), "{}", r.stderr);
    assert_eq!(rldg(&["--p", "2", "--q", "2", "automaton"]).code, 2);
    assert_eq!(rldg(&["--p", "0", "--q", "3", "automaton"]).code, 2);
}

#[test]
fn automaton_formats() {
    let dot = ok(&["--n", "3", "--format", "dot", "automaton"]);
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count(), 8);
    assert_eq!(dot.matches("->").count(), 16);

    for n in 1..=4u32 {
        let csv = ok(&["--n", &n.to_string(), "--format", "csv", "automaton"]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("state,symbol,next"));
        assert_eq!(lines.count(), 1 << (n + 1));
    }
    let csv = ok(&["--n", "3", "--format", "csv", "automaton"]);
    // the first transition of the worked example: 212 on 1 goes to 122
    assert!(csv.lines().any(|l| l == "212,1,122"));
    assert!(csv.lines().any(|l| l == "122,2,222"));
    assert!(csv.lines().any(|l| l == "222,1,112"));

    let json = ok(&["--n", "2", "--format", "json", "automaton"]);
    let v = checked_json("automaton", json.trim());
    assert_eq!(v["transitions"].as_array().unwrap().len(), 8);

    let text = ok(&["--n", "2", "automaton"]);
    assert_eq!(text.lines().count(), 5);

    assert_eq!(rldg(&["--n", "21", "automaton"]).code, 3);
}

#[test]
fn orbits_of_single_letters() {
    let text = ok(&["--n", "3", "orbits", "--word", "1"]);
    assert!(text.contains("cycle type  4^2"), "{text}");
    assert!(text.contains("max count   2"), "{text}");
    let text = ok(&["--n", "3", "orbits", "--word", "2"]);
    assert!(text.contains("cycle type  2^4"), "{text}");
    assert!(text.contains("max count   0"), "{text}");

    let json = ok(&["--n", "3", "--format", "json", "orbits", "--word", "1"]);
    let v = checked_json("orbits", json.trim());
    assert_eq!(v["cycle_type"], serde_json::json!([{ "length": 4, "count": 2 }]));
    assert_eq!(v["max_count"], 2);
    assert_eq!(v["agrees"], true);

    let json = ok(&["--n", "4", "--format", "json", "orbits", "--word", "1"]);
    let v = checked_json("orbits", json.trim());
    assert_eq!(v["agrees"], Value::Null);
    let text = ok(&["--n", "4", "orbits", "--word", "1"]);
    assert!(text.contains("not asserted"));

    assert_eq!(rldg(&["orbits", "--word", ""]).code, 2);
    assert_eq!(rldg(&["orbits", "--word", "1,5"]).code, 2);
}

fn order_row(p: &str, q: &str) -> Vec<u64> {
    let out = ok(&["--p", p, "--q", q, "--format", "json", "order", "--n-max", "12"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    let report = checked_json("order", lines[0]);
    let summary = checked_json("summary", lines[1]);
    assert_eq!(summary["status"], "pass");
    assert_eq!(report["all_agree"], true);
    let a = Alphabet::new(p.parse().unwrap(), q.parse().unwrap()).unwrap();
    assert_eq!(report["generators"][0], gen_p(&a, 12).to_hex());
    let member = ok(&["--p", p, "--q", q, "member", report["generators"][1].as_str().unwrap()]);
    assert!(member.contains("member    yes"), "{member}");
    report["rows"].as_array().unwrap().iter().map(|r| r["k_exponent"].as_u64().unwrap()).collect()
}

#[test]
fn order_table_for_one_two() {
    assert_eq!(order_row("1", "2"), vec![1, 2, 3, 5, 8, 14, 25, 47, 90, 176, 347, 689]);
}

#[test]
fn order_table_for_two_three() {
    assert_eq!(order_row("2", "3"), vec![1, 2, 3, 5, 8, 14, 25, 47, 90, 176, 347, 689]);
}

#[test]
fn order_small_and_limits() {
    let text = ok(&["order", "--n-max", "1"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["1", "1", "1", "yes", "yes"]);
    assert!(last_line(&text).starts_with("summary command=order"));
    assert!(last_line(&text).ends_with("status=pass"));

    let csv = ok(&["--format", "csv", "order", "--n-max", "3"]);
    assert_eq!(csv.lines().next(), Some("n,k_exponent,j_formula_exponent,equal,containment_checked,containment_ok"));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 4);
    assert!(last_line(&csv).starts_with("# summary"));

    assert_eq!(rldg(&["order", "--n-max", "15"]).code, 3);
    assert_eq!(rldg(&["--budget", "10", "order", "--n-max", "6"]).code, 3);
    assert_eq!(rldg(&["order", "--n-max", "0"]).code, 2);
}

#[test]
fn member_verdicts() {
    let a = Alphabet::new(1, 2).unwrap();
    let hex = gen_p(&a, 4).to_hex();
    let text = ok(&["member", &hex]);
    assert!(text.contains("member    yes"), "{text}");
    assert!(text.contains("psi       1 mod 4"), "{text}");
    assert!(text.contains("delta     (1, 3 mod 4)"), "{text}");
    let json = ok(&["--format", "json", "member", &hex]);
    let v = checked_json("member", json.trim());
    assert_eq!(v["psi"], serde_json::json!({ "value": 1, "modulus": 4 }));
    assert_eq!(v["delta"], serde_json::json!({ "flip": 1, "x": { "value": 3, "modulus": 4 } }));

    let json = ok(&["--format", "json", "member", "4:0000"]);
    let v = checked_json("member", json.trim());
    assert_eq!(v["member"], true);
    assert_eq!(v["psi"]["value"], 0);
    assert_eq!(v["delta"], serde_json::json!({ "flip": 0, "x": { "value": 0, "modulus": 4 } }));

    // one flip below the left child at n = 3: the left section's halves differ
    let json = ok(&["--format", "json", "member", "3:10"]);
    let v = checked_json("member", json.trim());
    assert_eq!(v["member"], false);
    assert_eq!(v["violation"]["path"], "L");
    assert_eq!(v["violation"]["kind"], "sections_differ");
    let text = ok(&["member", "3:10"]);
    assert!(text.contains("violation  at L"), "{text}");

    assert_eq!(rldg(&["member", "3:zz"]).code, 2);
    assert_eq!(rldg(&["member", "3:1"]).code, 2);
    assert_eq!(rldg(&["member", "nonsense"]).code, 2);
    assert_eq!(rldg(&["--n", "5", "member", "3:00"]).code, 2);
}

#[test]
fn sweeps_end_with_a_summary() {
    let text = ok(&["--n", "5", "sweep", "--max-len", "6"]);
    assert_eq!(last_line(&text), "summary command=sweep p=1 q=2 n=5 checked=126 failures=0 asserted=true status=pass");

    let json = ok(&["--n", "5", "--format", "json", "sweep", "--max-len", "5"]);
    let lines: Vec<&str> = json.lines().collect();
    let report = checked_json("sweep", lines[0]);
    assert_eq!(report["mode"], "exhaustive");
    assert_eq!(report["words_checked"], 62);
    let summary = checked_json("summary", lines[1]);
    assert_eq!(summary["checked"], 62);

    let even = ok(&["--n", "4", "--format", "json", "sweep", "--max-len", "4"]);
    let report = checked_json("sweep", even.lines().next().unwrap());
    assert_eq!(report["mode"], "tabulate");
    assert_eq!(report["asserted"], false);
    assert!(report["rows"].as_array().unwrap().iter().all(|r| r["agree"].is_null()));

    let csv = ok(&["--n", "3", "--format", "csv", "sweep", "--max-len", "3"]);
    assert_eq!(csv.lines().count(), 1 + 14 + 1);
    assert!(last_line(&csv).starts_with("# summary"));

    assert_eq!(rldg(&["--n", "1", "sweep"]).code, 2);
    assert_eq!(rldg(&["--n", "5", "sweep", "--max-len", "25"]).code, 3);
    assert_eq!(rldg(&["--n", "5", "--budget", "100", "sweep", "--max-len", "6"]).code, 3);
}

#[test]
fn sampled_sweeps_are_seeded() {
    let args = |seed: &'static str| {
        ["--n", "7", "--seed", seed, "--format", "json", "sweep", "--sample", "40", "--max-len", "200"]
    };
    let one = ok(&args("3"));
    let two = ok(&args("3"));
    let other = ok(&args("4"));
    assert_eq!(one, two);
    assert_ne!(one, other);
    let report = checked_json("sweep", one.lines().next().unwrap());
    assert_eq!(report["mode"], "sample");
    assert_eq!(report["seed"], 3);
    assert_eq!(report["words_checked"], 40);
    assert_eq!(checked_json("summary", last_line(&one))["status"], "pass");

    let from_env = rldg_with_env(
        &["--n", "7", "--format", "json", "sweep", "--sample", "40", "--max-len", "200"],
        &[("RLDG_SEED", "3")],
    );
    assert_eq!(from_env.stdout, one);
}

#[test]
fn flags_override_environment() {
    let env = [("RLDG_P", "2"), ("RLDG_Q", "3"), ("RLDG_N", "2"), ("RLDG_FORMAT", "csv")];
    let r = rldg_with_env(&["automaton"], &env);
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().any(|l| l == "22,3,33"), "{}", r.stdout);
    assert!(r.stdout.lines().any(|l| l == "22,2,32"), "{}", r.stdout);
    assert_eq!(r.stdout.lines().count(), 1 + 8);

    let r = rldg_with_env(&["--n", "1", "--format", "json", "automaton"], &env);
    let v = checked_json("automaton", r.stdout.trim());
    assert_eq!((v["p"].as_u64(), v["q"].as_u64(), v["n"].as_u64()), (Some(2), Some(3), Some(1)));

    let r = rldg_with_env(&["--p", "1", "--q", "2", "--n", "1", "automaton"], &env);
    assert!(r.stdout.starts_with("state,symbol,next\n1,1,2"), "{}", r.stdout);

    let r = rldg_with_env(&["order", "--n-max", "4"], &[("RLDG_BUDGET", "5")]);
    assert_eq!(r.code, 3);
    assert_eq!(rldg_with_env(&["automaton"], &[("RLDG_FORMAT", "xml")]).code, 2);
}

#[test]
fn help_is_not_an_error() {
    let r = rldg(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("decode"));
    assert_eq!(rldg(&[]).code, 2);
    assert_eq!(rldg(&["frobnicate"]).code, 2);
}
