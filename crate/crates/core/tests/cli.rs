use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_double-circle"))
}

fn run(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn generate_then_verify() {
    let gen = run(&["generate", "--n", "3", "--method", "doublecircle", "--format", "points"], b"");
    assert!(gen.status.success());
    let text = String::from_utf8(gen.stdout.clone()).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
    assert!(text.starts_with("# n=3 method=doublecircle N=6"));
    let ver = run(&["verify"], &gen.stdout);
    assert_eq!(ver.status.code(), Some(0));
    assert_eq!(String::from_utf8(ver.stdout).unwrap(), "PASS n=3 N=6\n");
}

#[test]
fn verify_reports_failures_and_parse_errors() {
    let jarnik = run(&["jarnik", "--q", "1"], b"");
    let ver = run(&["verify"], &jarnik.stdout);
    assert_eq!(ver.status.code(), Some(1));
    assert!(String::from_utf8(ver.stdout).unwrap().starts_with("FAIL hull-count"));

    let bad = run(&["verify"], b"a b\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn usage_errors_exit_with_two_and_domain_errors_with_one() {
    assert_eq!(run(&["generate", "--n", "many"], b"").status.code(), Some(2));
    let small = run(&["generate", "--n", "2"], b"");
    assert_eq!(small.status.code(), Some(1));
    assert!(String::from_utf8(small.stderr).unwrap().contains("error"));
    assert_eq!(run(&["jarnik", "--q", "0"], b"").status.code(), Some(1));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("double-circle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("six.svg");
    let res = run(&["generate", "--n", "6", "--format", "svg", "--out", path.to_str().unwrap()], b"");
    assert!(res.status.success());
    assert!(res.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 12);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bench_n_column_is_deterministic() {
    let args = ["bench", "--n", "1000,2000,4000", "--repeats", "1"];
    let column = |o: Output| -> Vec<String> {
        String::from_utf8(o.stdout).unwrap().lines().skip(1).map(|l| l.split(',').nth(2).unwrap().to_string()).collect()
    };
    let first = column(run(&args, b""));
    assert_eq!(first.len(), 3);
    assert_eq!(first, column(run(&args, b"")));
}
