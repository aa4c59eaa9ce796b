//! End-to-end command-line flows through `cli::dispatch`.

use std::path::PathBuf;
use winset::cli::dispatch;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = dispatch(args);
    (out.exit_code, out.stdout, out.stderr)
}

struct TempFile(PathBuf);

impl TempFile {
    fn new(name: &str) -> Self {
        let mut p = std::env::temp_dir();
        p.push(format!("winset-it-{}-{name}", std::process::id()));
        TempFile(p)
    }

    fn path(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        std::fs::remove_file(&self.0).ok();
    }
}

#[test]
fn gen_families_produce_parseable_profiles() {
    for (name, args) in [
        ("cyclic", vec!["--family", "cyclic", "--m", "6"]),
        (
            "product",
            vec!["--family", "cycle-product", "--s", "3", "--t", "5"],
        ),
        ("minimal", vec!["--family", "minimal-dim3"]),
        (
            "impartial",
            vec![
                "--family",
                "impartial",
                "--n",
                "9",
                "--m",
                "5",
                "--seed",
                "4",
            ],
        ),
        ("factorial", vec!["--family", "factorial", "--m", "4"]),
    ] {
        let file = TempFile::new(&format!("gen-{name}.profile"));
        let mut argv = vec!["gen"];
        argv.extend(args);
        argv.extend(["--out", file.path()]);
        let (code, stdout, stderr) = run(&argv);
        assert_eq!(code, 0, "{name}: {stderr}");
        let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(v["command"], "gen");
        let text = std::fs::read_to_string(file.path()).unwrap();
        winset::profiles::parse_election(&text).unwrap();
    }
}

#[test]
fn gen_missing_family_args_exit_2() {
    let file = TempFile::new("gen-bad.profile");
    let (code, _, stderr) = run(&["gen", "--family", "cyclic", "--out", file.path()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--m"), "{stderr}");
}

#[test]
fn check_rejects_malformed_inputs() {
    let file = TempFile::new("check-bad.profile");
    std::fs::write(&file.0, "3 2\n1 2 3\n1 1 3\n").unwrap();
    let (code, _, stderr) = run(&[
        "check",
        "--profile",
        file.path(),
        "--committee",
        "1",
        "--alpha",
        "1/2",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 3"), "{stderr}");

    std::fs::write(&file.0, "3 1\n1 2 3\n").unwrap();
    let (code, _, stderr) = run(&[
        "check",
        "--profile",
        file.path(),
        "--committee",
        "1",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(code, 2, "float alpha must be rejected");
    assert!(stderr.contains("P/Q"), "{stderr}");
}

#[test]
fn dim_budget_exhaustion_exits_3() {
    let file = TempFile::new("dim-budget.profile");
    run(&[
        "gen",
        "--family",
        "cyclic",
        "--m",
        "6",
        "--out",
        file.path(),
    ]);
    let (code, _, stderr) = run(&["dim", "--profile", file.path(), "--budget", "2"]);
    assert_eq!(code, 3, "{stderr}");
}

#[test]
fn lottery_reports_certified_value() {
    let file = TempFile::new("lottery.profile");
    run(&[
        "gen",
        "--family",
        "cyclic",
        "--m",
        "6",
        "--out",
        file.path(),
    ]);
    let (code, stdout, stderr) = run(&[
        "lottery",
        "--profile",
        file.path(),
        "--k",
        "1",
        "--alpha",
        "1/1",
        "--g",
        "identity",
    ]);
    assert_eq!(code, 0, "{stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let achieved = v["result"]["achieved_value"].as_f64().unwrap();
    let target = v["result"]["target_value"].as_f64().unwrap();
    assert!(achieved <= target + 1e-4);
    assert_eq!(v["result"]["weights"].as_array().unwrap().len(), 6);
    // Exact fractions accompany float renderings in the echoed inputs.
    assert_eq!(v["inputs"]["alpha"]["num"], 1);
    assert_eq!(v["inputs"]["alpha"]["value"], 1.0);
}

#[test]
fn search_output_feeds_back_into_check() {
    let file = TempFile::new("feedback.profile");
    run(&[
        "gen",
        "--family",
        "impartial",
        "--n",
        "20",
        "--m",
        "8",
        "--seed",
        "1",
        "--out",
        file.path(),
    ]);
    for strategy in ["brute", "greedy", "lottery", "recursive"] {
        let (code, stdout, stderr) = run(&[
            "search",
            "--profile",
            file.path(),
            "--k",
            "6",
            "--alpha",
            "1/2",
            "--strategy",
            strategy,
            "--seed",
            "3",
        ]);
        if code == 1 {
            continue; // absent is a legal outcome; nothing to feed back
        }
        assert_eq!(code, 0, "{strategy}: {stderr}");
        let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        let members: Vec<String> = v["result"]["committee"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap().to_string())
            .collect();
        let (code, stdout, _) = run(&[
            "check",
            "--profile",
            file.path(),
            "--committee",
            &members.join(","),
            "--alpha",
            "1/2",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(
            v["result"]["undominated"], true,
            "{strategy} committee failed the feedback check"
        );
    }
}

#[test]
fn bounds_formats() {
    let (code, csv, _) = run(&["bounds", "--k-max", "6", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("k,lower,thm1,thm4,thm4_t,dp\n"));
    assert_eq!(csv.lines().count(), 7);

    let (code, figure, _) = run(&["bounds", "--k-max", "6", "--format", "figure"]);
    assert_eq!(code, 0);
    assert!(figure.starts_with("k,thm4,lower,jiang\n"));

    let (code, json, _) = run(&["bounds", "--k-max", "6", "--base", "thm4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_failure_paths() {
    // Unknown suite name is a usage error.
    let (code, _, _) = run(&["verify", "--suite", "nope"]);
    assert_eq!(code, 2);
    // Budget exhaustion maps to exit 3.
    let (code, _, _) = run(&[
        "verify", "--suite", "thm6", "--k", "2", "--t", "5", "--budget", "3",
    ]);
    assert_eq!(code, 3);
    // Missing suite parameter.
    let (code, _, stderr) = run(&["verify", "--suite", "thm6", "--k", "2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--t"), "{stderr}");
}

#[test]
fn help_and_version_exit_clean() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("winset"));
    let (code, stdout, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("winset"));
}
