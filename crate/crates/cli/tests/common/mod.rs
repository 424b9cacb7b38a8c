//! Documented invocations with their golden outputs, shared by the golden
//! and acceptance targets.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Invocation {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const INVOCATIONS: [Invocation; 10] = [
    Invocation { name: "germ_cusp", args: &["germ", "analyze", "y^2 - x^3"], exit: 0 },
    Invocation { name: "germ_non_isolated", args: &["germ", "analyze", "x^2*y^2"], exit: 1 },
    Invocation { name: "strata_k3", args: &["strata", "expdim", "--surface", "k3", "--g", "4", "--kappa", "2"], exit: 0 },
    Invocation {
        name: "strata_p2_csv",
        args: &["strata", "expdim", "--surface", "p2", "--d", "3", "--delta", "0", "--kappa", "1", "--format", "csv"],
        exit: 0,
    },
    Invocation {
        name: "family_collision",
        args: &["family", "scan", "--spec", "fixtures/collision.json", "--samples", "1,1/2,0"],
        exit: 0,
    },
    Invocation {
        name: "family_discriminant_csv",
        args: &["family", "scan", "--discriminant", "--samples", "-1,0,1/2", "--format", "csv"],
        exit: 0,
    },
    Invocation { name: "defmap_rank", args: &["defmap", "rank", "--spec", "fixtures/cusps.json"], exit: 0 },
    Invocation {
        name: "defmap_realize",
        args: &["defmap", "realize", "--spec", "fixtures/cusps.json", "--target", "1,0,1"],
        exit: 0,
    },
    Invocation {
        name: "tropical_conics",
        args: &["tropical", "count", "--d", "2", "--delta", "1", "--algorithm", "both"],
        exit: 0,
    },
    Invocation {
        name: "tropical_contract",
        args: &["tropical", "contract", "--curve", "fixtures/conic.json", "--edges", "e0,e1"],
        exit: 0,
    },
];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn golden_path(name: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{name}.out"))
}

/// Runs the binary from the tests directory; returns (exit code, stdout, stderr).
pub fn run_binary(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_severi-lab"))
        .args(args)
        .current_dir(tests_dir())
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

/// Numeric tokens written with a decimal point or an exponent.
pub fn float_tokens(text: &str) -> Vec<String> {
    let b = text.as_bytes();
    let mut found = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let starts_number = b[i].is_ascii_digit() && (i == 0 || !(b[i - 1].is_ascii_alphanumeric() || b[i - 1] == b'.'));
        if !starts_number {
            i += 1;
            continue;
        }
        let start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let digit_at = |k: usize| k < b.len() && b[k].is_ascii_digit();
        let is_float = match b.get(i) {
            Some(b'.') => digit_at(i + 1),
            Some(b'e' | b'E') => digit_at(i + 1) || (matches!(b.get(i + 1), Some(b'+' | b'-')) && digit_at(i + 2)),
            _ => false,
        };
        if is_float {
            let mut end = i + 1;
            while end < b.len() && (b[end].is_ascii_digit() || matches!(b[end], b'+' | b'-')) {
                end += 1;
            }
            found.push(String::from_utf8_lossy(&b[start..end]).into_owned());
        }
    }
    found
}

/// Compares every invocation with its golden file. With `UPDATE_GOLDEN`
/// set, rewrites the files instead.
pub fn check_goldens() -> Result<(), String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for inv in &INVOCATIONS {
        let (code, stdout, _) = run_binary(inv.args);
        if code != inv.exit {
            return Err(format!("{}: exit {code}, expected {}", inv.name, inv.exit));
        }
        let text = String::from_utf8(stdout).map_err(|_| format!("{}: output is not UTF-8", inv.name))?;
        let floats = float_tokens(&text);
        if !floats.is_empty() {
            return Err(format!("{}: floating-point tokens {floats:?}", inv.name));
        }
        let path = golden_path(inv.name);
        if update {
            std::fs::write(&path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            continue;
        }
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if expected != text {
            return Err(format!("{}: output differs from {}", inv.name, path.display()));
        }
        let (_, again, _) = run_binary(inv.args);
        if again != text.as_bytes() {
            return Err(format!("{}: second run differs", inv.name));
        }
    }
    Ok(())
}
