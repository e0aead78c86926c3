use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxdensity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_maxdensity"))
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

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn last_line(out: &Output) -> String {
    stdout(out).lines().last().unwrap_or("").to_string()
}

#[test]
fn gcat_fasta() {
    let f = data("gcat.fa");
    let out = run(&[
        "solve",
        "--wmin",
        "2",
        "--wmax",
        "3",
        "--format",
        "fasta",
        f.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\t2\t2\t2/2\t1.000000000\n");
}

#[test]
fn infeasible_exits_3() {
    let f = data("gcat.fa");
    let out = run(&[
        "solve",
        "--wmin",
        "10",
        "--format",
        "fasta",
        f.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_errors_exit_2() {
    let out = run_stdin(&["solve", "--wmin", "1"], "1\nx\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = run_stdin(&["solve", "--wmin", "1", "--format", "fasta"], ">s\nGCQ\n");
    assert_eq!(out.status.code(), Some(2));

    let out = run_stdin(&["solve", "--wmin", "1", "--format", "rle"], "1\t4\n2\t3\n");
    assert_eq!(out.status.code(), Some(2));

    let out = run_stdin(&["solve", "--wmin", "3", "--wmax", "2"], "1\n");
    assert_eq!(out.status.code(), Some(2));

    let out = run_stdin(&["solve", "--wmin", "1", "--algorithm", "sparse"], "1\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn brute_and_linear_agree() {
    let f = data("pairs.tsv");
    let path = f.to_str().unwrap();
    for (lo, hi) in [("1", "2"), ("2", "4"), ("0.5", "7.5"), ("3", "11")] {
        let brute = run(&[
            "solve",
            "--wmin",
            lo,
            "--wmax",
            hi,
            "--algorithm",
            "brute",
            path,
        ]);
        let linear = run(&[
            "solve",
            "--wmin",
            lo,
            "--wmax",
            hi,
            "--algorithm",
            "linear",
            path,
        ]);
        assert_eq!(brute.status.code(), Some(0));
        assert_eq!(stdout(&brute), stdout(&linear), "bounds [{lo}, {hi}]");
    }
}

#[test]
fn stream_prints_batch_line() {
    let f = data("pairs.tsv");
    let path = f.to_str().unwrap();
    for bounds in [
        ["--wmin", "2", "--wmax", "4"],
        ["--wmin", "1.5", "--wmax", "3.5"],
    ] {
        let mut batch_args = vec!["solve"];
        batch_args.extend(bounds);
        batch_args.push(path);
        let batch = run(&batch_args);
        let mut stream_args = batch_args.clone();
        stream_args.insert(1, "--stream");
        let stream = run(&stream_args);
        assert_eq!(last_line(&batch), last_line(&stream));
    }
    // unbounded stream equals the batch default of the total width
    let batch = run(&["solve", "--wmin", "3", path]);
    let stream = run(&["solve", "--wmin", "3", "--stream", path]);
    assert_eq!(last_line(&batch), last_line(&stream));

    let fa = data("gcat.fa");
    let args = ["solve", "--wmin", "2", "--wmax", "3", "--format", "fasta"];
    let batch = run(&[&args[..], &[fa.to_str().unwrap()]].concat());
    let stream = run(&[&args[..], &["--stream", fa.to_str().unwrap()]].concat());
    assert_eq!(last_line(&batch), last_line(&stream));
}

#[test]
fn stream_and_batch_list_the_same_candidates() {
    let f = data("pairs.tsv");
    let path = f.to_str().unwrap();
    let sorted = |out: Output| {
        let mut lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
        lines.sort();
        lines
    };
    let batch = run(&["solve", "--all", "--wmin", "2", "--wmax", "4", path]);
    let stream = run(&[
        "solve", "--all", "--stream", "--wmin", "2", "--wmax", "4", path,
    ]);
    assert_eq!(sorted(batch), sorted(stream));
}

#[test]
fn json_matches_text() {
    let f = data("pairs.tsv");
    let path = f.to_str().unwrap();
    let text = last_line(&run(&["solve", "--wmin", "2", "--wmax", "4", path]));
    let json = stdout(&run(&[
        "solve", "--json", "--wmin", "2", "--wmax", "4", path,
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let fields: Vec<&str> = text.split('\t').collect();
    let (num, den) = fields[3].split_once('/').unwrap();
    assert_eq!(v["i"].to_string(), fields[0]);
    assert_eq!(v["j"].to_string(), fields[1]);
    assert_eq!(v["num"], num);
    assert_eq!(v["den"], den);

    let all = stdout(&run(&[
        "solve", "--json", "--all", "--wmin", "2", "--wmax", "4", path,
    ]));
    let v: serde_json::Value = serde_json::from_str(&all).unwrap();
    assert_eq!(v["best"]["num"], num);
    assert!(!v["events"].as_array().unwrap().is_empty());
}

#[test]
fn verify_fixtures() {
    for (name, format, bounds) in [
        ("pairs.tsv", "pairs", ["--wmin", "2", "--wmax", "4"]),
        ("gcat.fa", "fasta", ["--wmin", "2", "--wmax", "3"]),
        ("gcat.rle", "rle", ["--wmin", "2", "--wmax", "3"]),
        ("runs.rle", "rle", ["--wmin", "3", "--wmax", "7"]),
    ] {
        let f = data(name);
        let mut args = vec!["verify", "--format", format];
        args.extend(bounds);
        args.push(f.to_str().unwrap());
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
        assert_eq!(last_line(&out), "ok");
        if format == "rle" {
            assert!(stdout(&out).contains("sparse\t"));
        }
    }
}

#[test]
fn verify_reports_divergence() {
    let f = data("pairs.tsv");
    let out = run(&[
        "verify",
        "--inject-fault",
        "--wmin",
        "2",
        "--wmax",
        "4",
        f.to_str().unwrap(),
    ]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("divergence: linear"));
}

#[test]
fn verify_guard_exits_4() {
    let input = "1\n".repeat(20_000);
    let out = run_stdin(&["verify", "--wmin", "1"], &input);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sparse_matches_expanded_linear() {
    let f = data("runs.rle");
    let path = f.to_str().unwrap();
    for (lo, hi) in [("1", "1"), ("2.5", "6.5"), ("4", "22"), ("7", "9")] {
        let sparse = run(&["solve", "--format", "rle", "--wmin", lo, "--wmax", hi, path]);
        let linear = run(&[
            "solve",
            "--format",
            "rle",
            "--algorithm",
            "linear",
            "--wmin",
            lo,
            "--wmax",
            hi,
            path,
        ]);
        assert_eq!(sparse.status.code(), Some(0));
        assert_eq!(stdout(&sparse), stdout(&linear), "bounds [{lo}, {hi}]");
    }
}

#[test]
fn bench_reports_each_size() {
    let out = run(&["bench", "--sizes", "1000,2000", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert!(row["per_element"].as_f64().unwrap() < 12.0);
    }
}
