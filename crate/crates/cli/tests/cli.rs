use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use distrat::Score;
use tempfile::TempDir;

fn distrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distrat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn plurality_winners_line() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.txt", "candidates: a b c\n2: a>b>c\n1: b>c>a\n");
    let o = distrat(&["winners", s(&f), "--consensus", "wunam", "--metric", "hamming", "--norm", "l1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next().unwrap(), "winners: a; scores a=1 b=2 c=3");
}

#[test]
fn oracle_winners() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.txt", "candidates: a b c\n2: a>b>c\n1: b>c>a\n");
    let o = distrat(&["winners", s(&f), "--rule", "borda", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["winners"], serde_json::json!(["a", "b"]));
}

#[test]
fn lp_scores_show_sum_and_root() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.txt", "candidates: a b c\n2: a>b>c\n1: b>c>a\n");
    let o = distrat(&["score", s(&f), "--consensus", "sunam", "--metric", "kendall", "--norm", "l2", "--outcome", "a>b>c"]);
    assert_eq!(o.status.code(), Some(0));
    // two votes at distance 0, one at distance 2
    assert!(stdout(&o).contains("abc  4 (root ~2)"), "{}", stdout(&o));
}

#[test]
fn json_scores_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.txt", "candidates: a b c\n3: a>b>c\n2: c>b>a\n2: b>c>a\n");
    for metric in ["kendall", "spearman", "deletion", "tournament"] {
        let o = distrat(&["score", s(&f), "--consensus", "cond", "--metric", metric, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{metric}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let text = stdout(&distrat(&["score", s(&f), "--consensus", "cond", "--metric", metric, "--format", "tsv"]));
        let tsv: Vec<Score> = text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
        let json: Vec<Score> = v["scores"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| serde_json::from_value::<Score>(x["score"].clone()).unwrap())
            .collect();
        assert_eq!(json, tsv, "{metric}");
        let again: Vec<String> = json.iter().map(|x| serde_json::to_value(x).unwrap().as_str().unwrap().to_string()).collect();
        let orig: Vec<String> = v["scores"].as_array().unwrap().iter().map(|x| x["score"].as_str().unwrap().to_string()).collect();
        assert_eq!(again, orig);
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.txt", "candidates: a b\n1: a>b\n");
    let f = s(&f);
    for args in [
        vec!["winners", f, "--rule", "borda", "--consensus", "wunam"],
        vec!["winners", f],
        vec!["winners", f, "--consensus", "wunam"],
        vec!["winners", f, "--consensus", "wunam", "--metric", "hamming", "--p", "3"],
        vec!["winners", f, "--consensus", "wunam", "--metric", "hamming", "--norm", "lp"],
        vec!["winners", f, "--consensus", "wunam", "--metric", "deletion", "--norm", "l2"],
        vec!["winners", f, "--consensus", "sunam", "--metric", "hamming", "--alpha", "2/3"],
        vec!["winners", f, "--consensus", "maj", "--metric", "hamming", "--alpha", "1/3"],
        vec!["winners", f, "--rule", "nosuchrule"],
        vec!["score", f, "--rule", "borda"],
        vec!["verify-table", "--bound", "m3"],
        vec!["counterexample", "uniqueness", "--n", "5"],
        vec!["nosuchcommand"],
    ] {
        assert_eq!(distrat(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.txt", "candidates: a b\n# fine\n2: a>a>b\n");
    let o = distrat(&["winners", s(&f), "--rule", "plurality"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3") && err.contains("'a' appears twice"), "{err}");
}

#[test]
fn fishburn_table() {
    let o = distrat(&["counterexample", "fishburn", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next().unwrap(), "x:7 a1..a7:6");
    assert!(out.contains("winners: a1 a2 a3 a4 a5 a6 a7"));
    assert!(out.contains("crossover: x is the unique winner from k = "));
}

#[test]
fn cmp_failure_rows() {
    let o = distrat(&["counterexample", "cmp-failure", "--format", "tsv"]);
    let out = stdout(&o);
    for d in ["hamming/l1", "kendall/l1"] {
        assert!(out.contains(&format!("{d}\tE\ta\t1\n")), "{out}");
        assert!(out.contains(&format!("{d}\t3E\ta\t2\n")), "{out}");
    }
}

#[test]
fn emd_example() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.txt", "candidates: a b c\n2: a>b>c\n3: b>a>c\n");
    let y = write(&dir, "y.txt", "candidates: a b c\n2: b>a>c\n3: c>b>a\n");
    let h = stdout(&distrat(&["emd", s(&x), s(&y), "--metric", "hamming"]));
    assert_eq!(h.lines().next().unwrap(), "distance: 3");
    let k = stdout(&distrat(&["emd", s(&x), s(&y), "--metric", "kendall", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&k).unwrap();
    assert_eq!(v["distance"], "8");
    assert_eq!(v["matching"].as_array().unwrap().len(), 5);
}

#[test]
fn check_reports_witness_and_exit_code() {
    let holds = distrat(&["check", "--axiom", "consistency", "--rule", "borda", "--bound", "m3n2"]);
    assert_eq!(holds.status.code(), Some(0));
    assert!(stdout(&holds).starts_with("consistency: holds-on-space"));
    let broken = distrat(&["check", "--axiom", "consistency", "--consensus", "wunam", "--metric", "kendall", "--norm", "linf"]);
    assert_eq!(broken.status.code(), Some(1));
    let out = stdout(&broken);
    assert!(out.starts_with("consistency: violated") && out.contains("witness:"), "{out}");
}

#[test]
fn check_over_enumerated_files() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("space");
    let o = distrat(&["enumerate", "--m", "3", "--n", "2", "--out-dir", s(&out)]);
    assert_eq!(stdout(&o).lines().count(), 21);
    let mut files: Vec<String> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().path().to_str().unwrap().to_string()).collect();
    files.sort();
    let mut args = vec!["check", "--axiom", "neutrality", "--rule", "copeland"];
    args.extend(files.iter().map(String::as_str));
    let o = distrat(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("elections: 21"));
}

#[test]
fn sampled_checks_are_deterministic() {
    let args = ["check", "--axiom", "homogeneity", "--rule", "borda", "--bound", "m4n3", "--samples", "10", "--seed", "7", "--format", "json"];
    let a = distrat(&args);
    let b = distrat(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_distrat")).args(args).env("DISTRAT_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn verify_table_lists_every_cell() {
    let o = distrat(&["verify-table", "--bound", "m3n2", "--samples", "5", "--format", "tsv"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 23);
    let failing = out.lines().skip(1).filter(|l| l.contains("\tmismatch\t") || l.contains("\tnot-trivial\t")).count();
    assert_eq!(o.status.code(), Some(u8::from(failing > 0) as i32));
    assert!(out.contains("(sunam, insertion)\ttrivial"));
}
