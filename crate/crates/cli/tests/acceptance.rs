//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use d4plus_core::verify::find;

const CRITERIA: [&str; 12] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "A11", "A12"];

/// Runs `d4plus dims` at N = 4 and checks every row has rank at most the count.
fn dims_from_the_binary() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_d4plus"))
        .args(["dims", "--N", "4", "--max-points", "6"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let text = String::from_utf8_lossy(&out.stdout);
    let mut rows = Vec::new();
    for line in text.lines().skip(2) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        let [k, count, rank, ..] = cols[..] else { return Err(format!("bad row {line:?}")) };
        let (count, rank): (usize, usize) = (count.parse().map_err(|_| line)?, rank.parse().map_err(|_| line)?);
        if rank > count {
            return Err(format!("k = {k}: rank {rank} exceeds count {count}"));
        }
        rows.push(format!("k={k} {rank}/{count}"));
    }
    if rows.len() != 3 {
        return Err(format!("expected rows for k = 2, 4, 6, got {}", rows.len()));
    }
    Ok(rows.join(", "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    for id in CRITERIA {
        let mut result = find(id).expect("criterion is catalogued").run();
        if id == "A12" {
            match dims_from_the_binary() {
                Ok(rows) => result.detail = format!("{}; d4plus dims: {rows}", result.detail),
                Err(e) => {
                    result.passed = false;
                    result.detail = format!("{}; d4plus dims failed: {e}", result.detail);
                }
            }
        }
        if !result.passed {
            failed += 1;
        }
        println!("{result}");
    }
    println!("acceptance: {} passed, {failed} failed in {:.1?}", CRITERIA.len() - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
