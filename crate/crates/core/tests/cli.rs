use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use museum_pass::cli::{run, Outcome, EXIT_AXIOM_FAIL, EXIT_DOMAIN, EXIT_INPUT, EXIT_OK};
use museum_pass::Rational;
use serde_json::Value;
use tempfile::TempDir;

const EXAMPLE_ONE: &str = r#"{
  "museums": [1, 2, 3],
  "holders": [1, 2, 3, 4, 5],
  "price": "1",
  "entrance": [[1,0,0],[1,1,0],[0,1,0],[0,1,0],[0,0,0]]
}"#;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("museum-pass").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = cli(&full);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout)))
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn exact(v: &Value) -> Vec<Rational> {
    v["exact"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().parse().unwrap()).collect()
}

#[test]
fn allocate_example_one() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex1.json", EXAMPLE_ONE);

    let out = cli(&["allocate", "uniform", "--input", &input]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("allocation: 5/3, 5/3, 5/3"), "{}", out.stdout);

    let (code, report) = json(&["allocate", "--rule", "ea", "-i", &input]);
    assert_eq!(code, EXIT_OK);
    let shares = exact(&report["results"]["allocation"]);
    assert_eq!(shares, vec![Rational::new(11, 6), Rational::new(17, 6), Rational::new(1, 3)]);
    assert_eq!(report["inputs_digest"].as_str().unwrap().len(), 64);

    let out = cli(&["allocate", "shapley", "-i", &input]);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert!(out.stderr.contains("reduced domain"), "{}", out.stderr);
}

#[test]
fn digest_is_stable() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex1.json", EXAMPLE_ONE);
    let (_, a) = json(&["allocate", "uniform", "-i", &input]);
    let (_, b) = json(&["allocate", "uniform", "-i", &input]);
    assert_eq!(a["inputs_digest"], b["inputs_digest"]);
}

#[test]
fn compare_lists_every_rule() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex1.json", EXAMPLE_ONE);
    let (code, report) = json(&["compare", "-i", &input]);
    assert_eq!(code, EXIT_OK);
    let rows = report["results"]["rules"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for row in rows {
        if row["rule"] == "shapley" {
            assert!(row["error"].as_str().unwrap().contains("reduced domain"));
        } else {
            let total: Rational = exact(&row["allocation"]).into_iter().sum();
            assert_eq!(total, Rational::from_int(5), "{}", row["rule"]);
        }
    }
}

#[test]
fn csv_ingest() {
    let dir = TempDir::new().unwrap();
    let log = write(&dir, "visits.csv", "holder,museum\n1,1\n2,1\n2,2\n3,2\n4,2\n");
    let (code, report) =
        json(&["allocate", "pa", "-i", &log, "--museums", "1-3", "--holders", "1-5", "--price", "1"]);
    assert_eq!(code, EXIT_OK);
    let shares = exact(&report["results"]["allocation"]);
    assert_eq!(shares, vec![Rational::new(19, 10), Rational::new(31, 10), Rational::zero()]);

    let empty = write(&dir, "empty.csv", "");
    let (code, report) =
        json(&["allocate", "uniform", "-i", &empty, "--museums", "1,2", "--holders", "1,2", "--price", "1/2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["results"]["problem"]["entrance"], serde_json::json!([[0, 0], [0, 0]]));

    assert_eq!(cli(&["allocate", "uniform", "-i", &log, "--museums", "1-3", "--holders", "1-5"]).code, EXIT_INPUT);
    assert_eq!(cli(&["allocate", "uniform", "-i", &log, "--museums", "1-3", "--holders", "1-3", "--price", "1"]).code, EXIT_INPUT);
}

#[test]
fn audits() {
    let (code, report) = json(&["audit", "r1", "ete"]);
    assert_eq!(code, EXIT_AXIOM_FAIL);
    let witness = &report["results"]["witness"];
    assert_eq!(witness["problems"][0]["holders"].as_array().unwrap().len(), 1);
    assert_eq!(report["verdicts"][0]["status"], "fail");

    assert_eq!(cli(&["audit", "cea", "ete", "--domain", "enlarged"]).code, EXIT_OK);
    assert_eq!(cli(&["audit", "convex:1/3:sh", "tau-opd:1/2", "--n", "2"]).code, EXIT_OK);
    assert_eq!(cli(&["audit", "--rule", "convex:1/3:sh", "--axiom", "opd", "--tau", "1/2", "--n-max", "2"]).code, EXIT_OK);
    assert_eq!(cli(&["audit", "convex:2/5:sh", "tau-opd:1/2", "--n", "2", "--m-max", "3"]).code, EXIT_OK);
    assert_eq!(cli(&["audit", "uniform", "ete", "--m-max", "3", "--n-max", "3", "--budget", "100"]).code, EXIT_INPUT);
    assert_eq!(cli(&["audit", "shapley", "dummy", "--domain", "enlarged"]).code, EXIT_DOMAIN);
}

#[test]
fn lab_commands() {
    let out = cli(&["certify", "1/2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("gap = 1/3"), "{}", out.stdout);
    assert_eq!(out.stdout.matches("Problem(").count(), 3);
    let (_, report) = json(&["certify", "1/2"]);
    assert_eq!(report["results"]["gap"], "1/3");
    assert_eq!(cli(&["certify", "3/2"]).code, EXIT_INPUT);

    assert_eq!(cli(&["bound", "1/2", "2"]).stdout.lines().next(), Some("1/3"));
    let (_, report) = json(&["bound", "1/2", "2", "--beta", "103/300"]);
    let w = &report["results"]["witness"];
    assert!(w["gap"].as_str().unwrap().parse::<Rational>().unwrap().is_positive());

    let out = cli(&["synthesize", "ete,dummy", "--domain", "enlarged"]);
    assert!(out.stdout.starts_with("INFEASIBLE: pattern E=0"), "{}", out.stdout);
    let (_, report) = json(&["synthesize", "ete,ivd", "--m", "2", "--domain", "enlarged"]);
    assert_eq!(report["results"]["kind"], "unique");
    assert_eq!(cli(&["synthesize", "dummy"]).code, EXIT_INPUT);

    let (code, report) = json(&["decompose", "--rule", "convex:1/4:sh"]);
    assert_eq!(code, EXIT_OK);
    for b in report["results"]["patterns"].as_array().unwrap() {
        if b["determined"] == true {
            assert_eq!(b["beta"], "1/4");
        }
    }
}

#[test]
fn report_strings_reparse_exactly() {
    fn walk(v: &Value, found: &mut usize) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    if matches!(k.as_str(), "price" | "lhs" | "rhs" | "gap" | "tau" | "bound" | "beta" | "alpha") {
                        if let Some(s) = x.as_str() {
                            let q: Rational = s.parse().unwrap();
                            assert_eq!(q.to_string(), s);
                            *found += 1;
                        }
                    }
                    walk(x, found);
                }
            }
            Value::Array(xs) => xs.iter().for_each(|x| walk(x, found)),
            _ => {}
        }
    }
    let mut found = 0;
    for args in [
        vec!["certify", "1/4"],
        vec!["bound", "3/4", "2", "--beta", "1"],
        vec!["audit", "proportional", "additivity"],
        vec!["decompose", "--rule", "r2", "--domain", "enlarged", "--base", "ea"],
    ] {
        let (_, report) = json(&args);
        walk(&report, &mut found);
    }
    assert!(found > 10);
}

#[test]
fn binary_reads_stdin_and_sets_exit_status() {
    let bin = Path::new(env!("CARGO_BIN_EXE_museum-pass"));
    let mut child = Command::new(bin)
        .args(["allocate", "r1", "--input", "-", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(EXAMPLE_ONE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("allocation: 7/3, 7/3, 1/3"));

    let status = Command::new(bin).args(["audit", "r2", "opd"]).output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_AXIOM_FAIL));
    let status = Command::new(bin).args(["bound", "2", "2"]).output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_INPUT));
}
