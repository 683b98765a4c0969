use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_adjstring"));
    cmd.args(args).env_remove("ADJSTRING_WINDOW");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// A fresh file under the system temp directory.
fn temp_file(name: &str, contents: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "adjstring-cli-{}-{}",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::SeqCst)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const TRUNCATED_D: &str =
    r#"{"ring": "Q[d]", "generators": [0], "relations": [[[[[1, 1], {"d": 2}]]]]}"#;

/// Rows of the trailing `degree,dim` table.
fn csv_rows(text: &str) -> Vec<(i64, usize)> {
    let table = text.split("degree,dim\n").nth(1).expect("csv table");
    table
        .lines()
        .map(|l| {
            let (n, d) = l.split_once(',').unwrap();
            (n.parse().unwrap(), d.parse().unwrap())
        })
        .collect()
}

#[test]
fn catalog_list_and_show() {
    let o = run(&["catalog", "list"], &[]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert!(names.len() >= 5);
    assert!(names.contains(&"so3_o2".to_string()));

    let o = run(&["catalog", "show", "so3_o2"], &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("d ↦ c^2"), "{}", stdout(&o));

    let o = run(&["catalog", "show", "so3_o2", "--json"], &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["shift"], 2);
}

#[test]
fn unknown_entry_is_a_usage_error() {
    let o = run(&["catalog", "show", "nope"], &[]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("so3_o2"));
}

#[test]
fn apply_lower_star_to_truncated_d() {
    let m = temp_file("m.json", TRUNCATED_D);
    let o = run(
        &[
            "apply",
            "--entry",
            "so3_o2",
            "--functor",
            "theta_lower_star",
            "--module",
            m.to_str().unwrap(),
            "--window",
            "-8:0",
        ],
        &[],
    );
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("relation: (c^4)*g0 = 0"), "{text}");
    let support: Vec<i64> = csv_rows(&text)
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .map(|(n, _)| n)
        .collect();
    assert_eq!(support, vec![-6, -4, -2, 0]);
}

#[test]
fn apply_with_identity_entry_echoes_the_input() {
    let input = r#"{"ring": "Q[c]", "generators": [0, -4], "relations": [[[[[1, 1], {"c": 4}]], [[[2, 1], {"c": 2}]]]]}"#;
    let m = temp_file("m.json", input);
    let o = run(
        &[
            "apply",
            "--entry",
            "g_g",
            "--functor",
            "theta_lower_star",
            "--module",
            m.to_str().unwrap(),
            "--json",
        ],
        &[],
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let given: Value = serde_json::from_str(input).unwrap();
    for key in ["ring", "generators", "relations"] {
        assert_eq!(v["module"][key], given[key], "{key}");
    }
}

#[test]
fn single_degree_window() {
    let m = temp_file(
        "free.json",
        r#"{"ring": "Q[d]", "generators": [0], "relations": []}"#,
    );
    let args = [
        "apply",
        "--entry",
        "so3_so2",
        "--functor",
        "theta_lower_star",
        "--module",
        m.to_str().unwrap(),
        "--window",
        "0:0",
    ];
    let o = run(&args, &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(csv_rows(&stdout(&o)), vec![(0, 1)]);
    // Output is deterministic.
    assert_eq!(stdout(&run(&args, &[])), stdout(&o));
}

#[test]
fn window_from_environment() {
    let m = temp_file("m.json", TRUNCATED_D);
    let args = [
        "apply",
        "--entry",
        "so3_o2",
        "--functor",
        "theta_lower_star",
        "--module",
        m.to_str().unwrap(),
    ];
    let o = run(&args, &[("ADJSTRING_WINDOW", "-2:0")]);
    assert_eq!(code(&o), 0);
    assert_eq!(csv_rows(&stdout(&o)), vec![(-2, 1), (-1, 0), (0, 1)]);
    let rows = csv_rows(&stdout(&run(&args, &[])));
    assert_eq!(rows.first().unwrap().0, -40);
    assert_eq!(rows.last().unwrap().0, 8);
    let o = run(&args, &[("ADJSTRING_WINDOW", "oops")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn apply_rejects_bad_input() {
    let m = temp_file("m.json", TRUNCATED_D);
    let path = m.to_str().unwrap();
    let base = ["apply", "--entry", "so3_o2", "--module", path];
    let o = run(&[&base[..], &["--functor", "theta_sideways"]].concat(), &[]);
    assert_eq!(code(&o), 2);
    // A Q[d]-module handed to a functor on Q[c]-modules.
    let o = run(
        &[&base[..], &["--functor", "theta_upper_star"]].concat(),
        &[],
    );
    assert_eq!(code(&o), 2);
    let broken = temp_file("broken.json", "{\"ring\": ");
    let o = run(
        &[
            "apply",
            "--entry",
            "so3_o2",
            "--functor",
            "theta_lower_star",
            "--module",
            broken.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn check_identity_entry_passes() {
    let o = run(&["check", "--entry", "g_g"], &[]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn check_single_pair_as_json() {
    let o = run(
        &[
            "check",
            "--entry",
            "so3_o2",
            "--pair",
            "theta_lower_star",
            "--json",
        ],
        &[],
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    let o = run(
        &["check", "--entry", "so3_o2", "--pair", "theta_shriek_upper"],
        &[],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn corrupted_entry_file_fails_verification() {
    let o = run(&["catalog", "show", "so3_o2", "--json"], &[]);
    let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["shift"] = Value::from(3);
    let bad = temp_file("bad.json", &v.to_string());
    let o = run(&["check", "--entry", bad.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("shift 3"));

    v["shift"] = Value::from(2);
    let good = temp_file("good.json", &v.to_string());
    let o = run(
        &[
            "check",
            "--entry",
            good.to_str().unwrap(),
            "--pair",
            "theta_dagger",
        ],
        &[],
    );
    assert_eq!(code(&o), 0);

    let garbled = temp_file("garbled.json", "{not json");
    let o = run(&["check", "--entry", garbled.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 2);
}

#[test]
fn reproduce_example_passes() {
    let o = run(&["reproduce-example"], &[]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("pass"));
    assert!(!text.contains("FAIL"));
    let o = run(&["reproduce-example", "--json"], &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn dualizing_report() {
    let o = run(&["dualizing", "--entry", "so3_o2", "--window", "-4:2"], &[]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("generator degree: 2"), "{text}");
    assert!(text.contains("w: -1"), "{text}");
    assert!(text.contains("comparison: validated"));
    assert_eq!(
        csv_rows(&text),
        vec![(-4, 1), (-3, 0), (-2, 1), (-1, 0), (0, 1), (1, 0), (2, 1)]
    );
    let o = run(&["dualizing", "--entry", "g_g", "--json"], &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generator_degree"], 0);
}
