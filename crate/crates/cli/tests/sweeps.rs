//! Invariants of the sweep tables, checked through the library API.

mod common;

use common::fixture;
use sqfluor_cli::commands::sweep;
use sqfluor_cli::load_config;
use sqfluor_cli::table::{Cell, Table};

fn num(t: &Table, row: usize, name: &str) -> f64 {
    t.rows[row][t.column(name).unwrap()].as_f64().unwrap()
}

#[test]
fn cw_rows_are_consistent() {
    let cfg = load_config(&fixture("cw_small.json")).unwrap();
    let (out, _) = sweep(&cfg, true).unwrap();
    assert!(out.errors.is_empty());
    let t = &out.table;
    for k in 0..t.rows.len() {
        let (coh, inc, tot) = (num(t, k, "r_sq_coherent"), num(t, k, "r_sq_incoherent"), num(t, k, "r_sq_total"));
        assert_eq!(tot, coh + inc);
        if num(t, k, "beta_bar") == 0.0 {
            for c in ["photon_rate_per_s", "r_classical", "r_sq_total", "R_fluor_classical", "R_fluor_sq_total"] {
                assert_eq!(num(t, k, c), 0.0, "{c}");
            }
            assert_eq!(t.rows[k][t.column("validity").unwrap()], Cell::Text("pass".into()));
        } else {
            let ratio = num(t, k, "ratio_sq_over_cl");
            assert!((ratio - tot / num(t, k, "r_classical")).abs() <= 1e-12 * ratio);
        }
    }
}

#[test]
fn pulsed_rows_are_consistent() {
    let cfg = load_config(&fixture("pulsed_small.json")).unwrap();
    let (out, _) = sweep(&cfg, false).unwrap();
    assert!(out.errors.is_empty());
    let t = &out.table;
    assert_eq!(t.rows.len(), 4 * 9);
    for k in 0..t.rows.len() {
        let (coh, inc, tot) = (num(t, k, "p_sq_coherent"), num(t, k, "p_sq_incoherent"), num(t, k, "p_sq_total"));
        assert_eq!(tot, coh + inc);
        assert_eq!(num(t, k, "detect_line"), 1e-4);
    }
}

#[test]
fn separable_panel_follows_the_two_plus_one_over_n_law() {
    let cfg = load_config(&fixture("pulsed_small.json")).unwrap();
    let (out, _) = sweep(&cfg, false).unwrap();
    let t = &out.table;
    for k in 0..t.rows.len() {
        if num(t, k, "sigma_c_over_sigma_p") != 1.0 {
            continue;
        }
        let n = num(t, k, "photons_per_pulse");
        let r = num(t, k, "p_sq_total") / num(t, k, "p_classical");
        assert!((r / (2.0 + 1.0 / n) - 1.0).abs() < 1e-2, "N={n}: {r}");
        let flag = &t.rows[k][t.column("crossover").unwrap()];
        assert_eq!(*flag, Cell::Flag((n - 1.0).abs() < 1e-12), "N={n}");
    }
}

/// The correlated panel with sigma_p = 0.1 Gamma_b and sigma_c = Gamma_b:
/// the squeezed count reaches the detection line at a lower photon number
/// than the classical one, and squeezed light wins everywhere on the axis.
#[test]
fn correlated_panel_reaches_detection_first() {
    let cfg = load_config(&fixture("pulsed_small.json")).unwrap();
    let (out, _) = sweep(&cfg, false).unwrap();
    let t = &out.table;
    let rows: Vec<usize> = (0..t.rows.len())
        .filter(|&k| num(t, k, "sigma_p_over_gamma_b") == 0.1 && num(t, k, "sigma_c_over_sigma_p") == 10.0)
        .collect();
    let first_above = |col: &str| rows.iter().position(|&k| num(t, k, col) >= num(t, k, "detect_line"));
    let sq = first_above("n_fluor_sq_total").unwrap();
    let cl = first_above("n_fluor_classical").unwrap();
    assert!(sq < cl, "{sq} {cl}");
    let ratio: Vec<f64> = rows
        .iter()
        .map(|&k| num(t, k, "n_fluor_sq_total") / num(t, k, "n_fluor_classical"))
        .collect();
    assert!(ratio.iter().all(|r| *r > 1.0), "{ratio:?}");
    assert!(ratio[0] > 1e4, "{ratio:?}");
}
