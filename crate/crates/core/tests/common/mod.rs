#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `deltaq` binary from the crate directory.
pub fn deltaq<S: AsRef<str>>(args: &[S]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_deltaq"))
        .args(args.iter().map(AsRef::as_ref))
        .current_dir(crate_dir())
        .output()
        .expect("binary runs");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 output"),
    }
}

pub struct GoldenCase {
    pub name: String,
    pub args: Vec<String>,
}

impl GoldenCase {
    pub fn path(&self) -> PathBuf {
        crate_dir()
            .join("tests/golden")
            .join(format!("{}.csv", self.name))
    }
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let text =
        std::fs::read_to_string(crate_dir().join("tests/golden/cases.tsv")).expect("case list");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut fields = l.split('\t').map(String::from);
            let name = fields.next().expect("case name");
            GoldenCase {
                name,
                args: fields.collect(),
            }
        })
        .collect()
}

/// Compares every case with its frozen output. With `DELTAQ_BLESS=1` the
/// goldens are rewritten instead.
pub fn check_goldens() -> Vec<String> {
    let bless = std::env::var("DELTAQ_BLESS").is_ok_and(|v| v == "1");
    let mut failures = Vec::new();
    for case in golden_cases() {
        let out = deltaq(&case.args);
        if out.code != 0 {
            failures.push(format!(
                "{}: exit {} ({})",
                case.name,
                out.code,
                out.stderr.trim()
            ));
            continue;
        }
        if bless {
            std::fs::write(case.path(), &out.stdout).expect("write golden");
            continue;
        }
        match std::fs::read_to_string(case.path()) {
            Ok(expected) if expected == out.stdout => {}
            Ok(_) => failures.push(format!("{}: output differs from golden", case.name)),
            Err(e) => failures.push(format!("{}: {e}", case.name)),
        }
    }
    failures
}
