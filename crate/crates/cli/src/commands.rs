//! Subcommand bodies. Each returns a table plus the comment lines that
//! describe how it was produced.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};

use sqfluor_core::excitation::{TIME_POINTS, NESTED_REL_TOL};
use sqfluor_core::geometry::{AEFF_POINTS, AEFF_REL_TOL};
use sqfluor_core::sources::{write_jsi_csv, MAX_LATTICE_POINTS};
use sqfluor_core::spectral::SpectralGrid;

use crate::config::{Rayleigh, RunConfig, SourceConfig};
use crate::sweep::{panel_basis, panel_source, run_cw_sweep, run_pulsed_sweep, SweepOutput};
use crate::table::{Cell, Table};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output destination and run-level flags shared by every subcommand.
pub struct RunOptions {
    pub out: Option<PathBuf>,
    pub reproducible: bool,
}

/// The comment block written ahead of every CSV.
pub fn comments(cfg: &RunConfig, command: &str, opts: &RunOptions, a_eff: Option<f64>) -> Vec<String> {
    let mut c = vec![
        format!("sqfluor {VERSION} {command}"),
        format!("config_sha256 {}", cfg.hash),
    ];
    if !opts.reproducible {
        c.push(format!("generated {}", chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)));
    }
    c.push(format!(
        "quadrature nested_rel_tol={NESTED_REL_TOL:e} trunc_tol={:e} lattice_max_points={MAX_LATTICE_POINTS} \
         aeff_points={AEFF_POINTS} aeff_rel_tol={AEFF_REL_TOL:e} time_points={TIME_POINTS}",
        cfg.trunc_tol
    ));
    if let Some(a) = a_eff {
        c.push(format!("a_eff_m2 {a:.12e}"));
    }
    c.extend(cfg.provenance.iter().map(|p| format!("provenance {p}")));
    c
}

/// Writes the table as CSV to the chosen path (or stdout) and, if asked,
/// a JSON mirror next to it.
pub fn emit(table: &Table, comments: &[String], cfg: &RunConfig, opts: &RunOptions) -> Result<()> {
    let path = opts.out.clone().or_else(|| cfg.output.csv.clone());
    match &path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(f);
            table.write_csv(&mut w, comments)?;
            w.flush()?;
            if cfg.output.json {
                let jp = p.with_extension("json");
                let f = File::create(&jp).with_context(|| format!("creating {}", jp.display()))?;
                let mut w = BufWriter::new(f);
                table.write_json(&mut w, comments)?;
                writeln!(w)?;
            }
        }
        None => {
            table.write_csv(io::stdout().lock(), comments)?;
            if cfg.output.json {
                eprintln!("output.json ignored: no output path");
            }
        }
    }
    Ok(())
}

pub fn aeff_table(cfg: &RunConfig) -> Result<Table> {
    let mut t = Table::new(&["rayleigh", "w0_m", "cloud_sigma_m", "a_eff_m2", "a_eff_um2", "achieved_rel_err", "configured"]);
    let mut choices = vec![Rayleigh::Ba, Rayleigh::Cb, Rayleigh::PerBeam];
    if let Rayleigh::Fixed(_) = cfg.geometry.rayleigh {
        choices.push(cfg.geometry.rayleigh);
    }
    for r in choices {
        let g = crate::config::GeometryConfig { rayleigh: r, ..cfg.geometry.clone() };
        let a = g.effective_area(&cfg.system)?;
        let name = match r {
            Rayleigh::Ba => "ba".to_string(),
            Rayleigh::Cb => "cb".to_string(),
            Rayleigh::PerBeam => "per_beam".to_string(),
            Rayleigh::Fixed(z) => format!("fixed {z:e} m"),
        };
        t.rows.push(vec![
            Cell::Text(name),
            Cell::Num(g.w0),
            Cell::Num(g.cloud.sigma),
            Cell::Num(a.a_eff),
            Cell::Num(a.a_eff * 1e12),
            Cell::Num(a.achieved_rel_err),
            Cell::Flag(r == cfg.geometry.rayleigh),
        ]);
    }
    Ok(t)
}

pub fn sweep(cfg: &RunConfig, expect_cw: bool) -> Result<(SweepOutput, f64)> {
    let a_eff = cfg.geometry.effective_area(&cfg.system)?.a_eff;
    let out = match (&cfg.source, expect_cw) {
        (Some(SourceConfig::Cw(cw)), true) => run_cw_sweep(cfg, cw, a_eff)?,
        (Some(SourceConfig::Pulsed(pc)), false) => run_pulsed_sweep(cfg, pc, a_eff)?,
        (None, _) => bail!("config has no `source` section"),
        (_, true) => bail!("cw-sweep needs source.regime = \"cw\""),
        (_, false) => bail!("pulsed-sweep needs source.regime = \"pulsed\""),
    };
    Ok((out, a_eff))
}

/// Schmidt weights of every panel next to the geometric law. With
/// `output.jsi` set, the JSI of each panel goes to `<stem>_jsi_<k>.csv`.
pub fn schmidt_table(cfg: &RunConfig, jsi_stem: Option<&Path>) -> Result<Table> {
    let Some(SourceConfig::Pulsed(pc)) = &cfg.source else {
        bail!("schmidt needs source.regime = \"pulsed\"");
    };
    let mut t = Table::new(&["sigma_p_over_gamma_b", "sigma_c_over_sigma_p", "n", "p_n", "p_geometric", "cumulative"]);
    let mut panel = 0;
    for &sp in &pc.sigma_p_over_gamma_b {
        for &sc in &pc.sigma_c_over_sigma_p {
            let src = panel_source(&cfg.system, sp, sc, pc.phase)?;
            let basis = panel_basis(&src, cfg.trunc_tol)?;
            let mu = ((sc - 1.0) / (sc + 1.0)).powi(2);
            let mut cum = 0.0;
            for (n, p) in basis.p().iter().enumerate() {
                cum += p;
                t.rows.push(vec![
                    Cell::Num(sp),
                    Cell::Num(sc),
                    Cell::Int(n),
                    Cell::Num(*p),
                    Cell::Num((1.0 - mu) * mu.powi(n as i32)),
                    Cell::Num(cum),
                ]);
            }
            if let (true, Some(stem)) = (cfg.output.jsi, jsi_stem) {
                let w = sqfluor_core::sources::marginal_width(src.sigma_p, src.sigma_c);
                let g = SpectralGrid::new(0.0, 4.0 * w, 101)?;
                let name = format!("{}_jsi_{panel}.csv", stem.display());
                let f = File::create(&name).with_context(|| format!("creating {name}"))?;
                let mut bw = BufWriter::new(f);
                write_jsi_csv(&mut bw, &src, &g, &g)?;
                bw.flush()?;
            }
            panel += 1;
        }
    }
    Ok(t)
}

/// Human-readable summary of a loaded config.
pub fn describe(cfg: &RunConfig) -> Result<Vec<String>> {
    let s = &cfg.system;
    let a = cfg.geometry.effective_area(s)?;
    let mut lines = vec![
        format!("preset            {}", cfg.preset),
        format!("gamma_b           {:.6e} 1/s", s.gamma_b()),
        format!("gamma_c           {:.6e} 1/s", s.gamma_c()),
        format!("gamma_d           {:.6e} 1/s", s.gamma_d()),
        format!("gamma_b/gamma_c   {:.4}", s.gamma_b() / s.gamma_c()),
        format!("branching c->d    {:.6}", s.branching_cd()),
        format!("radiative d->a    {:.6}", s.radiative_fraction_da()?),
        format!("eta               {:.6e}", cfg.eta()?.eta),
        format!("a_eff             {:.6e} m^2 ({:.1} um^2)", a.a_eff, a.a_eff * 1e12),
        format!("n_atoms           {:e}", cfg.n_atoms()),
    ];
    match &cfg.source {
        Some(SourceConfig::Cw(c)) => lines.push(format!(
            "cw sweep          {} columns x {} points",
            c.sigma_c_over_gamma_b.len(),
            c.axis.len()
        )),
        Some(SourceConfig::Pulsed(p)) => lines.push(format!(
            "pulsed sweep      {} x {} panels x {} points",
            p.sigma_p_over_gamma_b.len(),
            p.sigma_c_over_sigma_p.len(),
            p.photons_per_pulse.len()
        )),
        None => lines.push("no source section".into()),
    }
    lines.extend(cfg.provenance.iter().map(|p| format!("provenance        {p}")));
    Ok(lines)
}
