use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kedp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kedp"))
        .args(args)
        .output()
        .expect("run kedp")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_single_edge() {
    let f = write("single.txt", "2 1 1 0 1\n0 1 5\n");
    let out = kedp(&["solve", "-i", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\npower 10\n"), "{text}");
    assert!(text.contains("\ncost 5\n"));
    assert!(text.contains("guarantee 8k=8 power^2=100"));
}

#[test]
fn solve_csv_lists_edges() {
    let f = write("csv.txt", "3 3 1 0 2\n0 1 1\n1 2 1\n0 2 3\n");
    let out = kedp(&["solve", "-i", path_str(&f), "--format", "csv"]);
    assert_eq!(stdout(&out), "u,v,cost\n0,1,1\n1,2,1\n");
}

#[test]
fn malformed_file_reports_line() {
    let f = write("bad.txt", "3 2 1 0 2\n0 1 1\n1 x 1\n");
    let out = kedp(&["solve", "-i", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn missing_file_is_exit_2() {
    let out = kedp(&["solve", "-i", "/nonexistent/instance.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infeasible_is_exit_3() {
    let f = write("path.txt", "3 2 1 0 2\n0 1 1\n1 2 1\n");
    for cmd in ["solve", "exact", "prune", "order", "verify"] {
        let out = kedp(&[cmd, "-i", path_str(&f), "--k", "2"]);
        assert_eq!(out.status.code(), Some(3), "{cmd}");
    }
}

#[test]
fn oracle_limit_is_exit_5() {
    let gen = kedp(&[
        "gen", "random", "--seed", "1", "--n", "8", "--m", "24", "--k", "1",
    ]);
    let f = write("big.txt", &stdout(&gen));
    let out = kedp(&["exact", "-i", path_str(&f)]);
    assert_eq!(out.status.code(), Some(5));
    let out = kedp(&["exact", "-i", path_str(&f), "--max-oracle-edges", "24"]);
    assert_eq!(out.status.code(), Some(0));
    let out = kedp(&["verify", "-i", path_str(&f), "--oracle"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn verify_path_instance_passes() {
    let f = write("path_ok.txt", "3 2 1 0 2\n0 1 1\n1 2 1\n");
    let out = kedp(&["verify", "-i", path_str(&f), "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("result PASS\n"));
}

#[test]
fn tight_example_solve_and_order() {
    let gen = kedp(&["gen", "tight", "--ell", "2", "--q", "12"]);
    assert_eq!(gen.status.code(), Some(0));
    let text = stdout(&gen);
    assert!(text.starts_with("# tight example ell=2 q=12 k=3"));
    let f = write("tight2.txt", &text);
    let out = kedp(&["solve", "-i", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\npaths 3\n"));

    let gen = kedp(&["gen", "tight", "--ell", "3", "--q", "6"]);
    let f = write("tight3.txt", &stdout(&gen));
    let out = kedp(&["verify", "-i", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let out = kedp(&["order", "-i", path_str(&f)]);
    let text = stdout(&out);
    let d_out = text
        .lines()
        .find(|l| l.starts_with("prefix d_out"))
        .unwrap();
    assert!(
        d_out["prefix d_out".len()..]
            .split_whitespace()
            .all(|d| d == "6"),
        "{d_out}"
    );
}

#[test]
fn gen_rejects_bad_parameters() {
    assert_eq!(
        kedp(&["gen", "tight", "--ell", "3", "--q", "4"])
            .status
            .code(),
        Some(2)
    );
    let out = kedp(&[
        "gen", "random", "--seed", "1", "--n", "4", "--p", "1.5", "--k", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("gen_out.txt");
    let _ = std::fs::remove_file(&target);
    let out = kedp(&[
        "gen",
        "tight",
        "--ell",
        "1",
        "--q",
        "2",
        "-o",
        path_str(&target),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(
        written,
        stdout(&kedp(&["gen", "tight", "--ell", "1", "--q", "2"]))
    );
}

#[test]
fn prune_output_is_an_instance() {
    let gen = kedp(&[
        "gen", "random", "--seed", "4", "--n", "8", "--p", "0.6", "--k", "2",
    ]);
    let f = write("prune_in.txt", &stdout(&gen));
    let pruned = kedp(&["prune", "-i", path_str(&f)]);
    assert_eq!(pruned.status.code(), Some(0));
    let g = write("prune_out.txt", &stdout(&pruned));
    let again = kedp(&["verify", "-i", path_str(&g)]);
    assert_eq!(again.status.code(), Some(0));
}

#[test]
fn experiment_oracle_off_leaves_ratios_blank() {
    let cfg = write(
        "exp_off.toml",
        "seed_start = 0\nseeds = 30\nn_min = 5\nn_max = 10\nk_min = 1\nk_max = 2\n",
    );
    let out = kedp(&["experiment", "-i", path_str(&cfg), "--threads", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# kedp-experiment-csv v1"));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let opt = header.iter().position(|&h| h == "opt_power").unwrap();
    let rows: Vec<&str> = lines.clone().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 30);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(&cells[opt..opt + 4], ["", "", "", ""]);
    }
    let summary = text.lines().last().unwrap();
    assert!(summary.starts_with("# summary instances=30 "), "{summary}");
    assert!(summary.contains(" oracle_runs=0 "), "{summary}");
    assert!(summary.ends_with(" violations=0"), "{summary}");
}

#[test]
fn experiment_config_errors_are_exit_2() {
    let cfg = write("exp_bad.toml", "seeds = 3\nbogus = 1\n");
    assert_eq!(
        kedp(&["experiment", "-i", path_str(&cfg)]).status.code(),
        Some(2)
    );
}
