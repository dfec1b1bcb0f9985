//! Frozen regression tables. Set `SQFLUOR_UPDATE_GOLDEN=1` to rewrite them
//! after a change has been verified by hand.

mod common;

use std::fs;
use std::path::Path;

use common::{fixture, read_csv, sqfluor};

const REL_TOL: f64 = 1e-9;

fn check(command: &str, config: &str, golden: &str) {
    let out = sqfluor(&[command, "--config", fixture(config).to_str().unwrap(), "--reproducible", "--jobs", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(golden);
    if std::env::var_os("SQFLUOR_UPDATE_GOLDEN").is_some() {
        fs::write(&path, &text).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let (h_got, got) = read_csv(&text);
    let (h_want, want) = read_csv(&want);
    assert_eq!(h_got, h_want);
    assert_eq!(got.len(), want.len());
    for (k, (g, w)) in got.iter().zip(&want).enumerate() {
        for (j, (a, b)) in g.iter().zip(w).enumerate() {
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(x), Ok(y)) if !(x.is_nan() && y.is_nan()) => assert!(
                    (x - y).abs() <= REL_TOL * y.abs(),
                    "{golden} row {k} column {}: {x} vs {y}",
                    h_want[j]
                ),
                _ => assert_eq!(a, b, "{golden} row {k} column {}", h_want[j]),
            }
        }
    }
}

#[test]
fn cw_small() {
    check("cw-sweep", "cw_small.json", "cw_small.csv");
}

#[test]
fn pulsed_small() {
    check("pulsed-sweep", "pulsed_small.json", "pulsed_small.csv");
}

#[test]
fn aeff() {
    check("aeff", "cw_small.json", "aeff.csv");
}

#[test]
fn schmidt_small() {
    check("schmidt", "pulsed_small.json", "schmidt_small.csv");
}
