#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap()
}

/// Runs the binary from inside the golden directory.
pub fn genhuber(args: &[&str], stdin: Option<&str>) -> Outcome {
    let mut child = Command::new(env!("CARGO_BIN_EXE_genhuber"))
        .args(args)
        .current_dir(golden_dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn genhuber");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// (args, golden stdout file) for successful runs.
pub const GOLDEN_RUNS: &[(&[&str], &str)] = &[
    (&["inputs/two.csv", "--mode", "pair"], "pair_log_exp.json"),
    (
        &["inputs/single.csv", "--loss", "quadratic"],
        "quadratic_single.json",
    ),
    (
        &["inputs/even.csv", "--loss", "absolute"],
        "absolute_even.json",
    ),
    (
        &[
            "inputs/two_cols.csv",
            "--loss",
            "quadratic",
            "--columns",
            "1,0",
            "--format",
            "text",
        ],
        "quadratic_two_cols.txt",
    ),
];

/// (args, expected exit code, golden stderr file) for failing runs.
pub const GOLDEN_FAILURES: &[(&[&str], i32, &str)] = &[
    (&["inputs/bad_cell.csv"], 2, "err_bad_cell.txt"),
    (&["inputs/ragged.csv"], 2, "err_ragged.txt"),
    (&["inputs/nan.csv"], 2, "err_nan.txt"),
    (&["inputs/empty.csv"], 2, "err_empty.txt"),
    (&["inputs/two.csv", "--columns", "4"], 2, "err_column.txt"),
    (&["inputs/two.csv", "--b", "-0.5"], 3, "err_nonconvex.txt"),
    (&["inputs/two.csv", "--epsilon", "0"], 3, "err_epsilon.txt"),
];

pub const JSON_COLUMN_KEYS: [&str; 7] = [
    "index",
    "n",
    "estimate",
    "pair",
    "loss",
    "grad_evals",
    "normalize",
];
pub const JSON_TOP_KEYS: [&str; 3] = ["columns", "loss_kind", "params"];
