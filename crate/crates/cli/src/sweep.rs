//! CW and pulsed parameter sweeps.
//!
//! Rows are independent and computed in parallel on the current rayon
//! pool; collection keeps the configured order, so the output does not
//! depend on the thread count.

use std::sync::Arc;

use rayon::prelude::*;

use sqfluor_core::excitation::{
    classical_cw_matched, classical_pulsed_matched, fluorescence, max_intermediate_population, p_classical_pulsed,
    p_squeezed_pulsed, rate_classical_cw, rate_squeezed_cw, ExcitationOutcome, ModeResponse, PopulationSource,
    Validity,
};
use sqfluor_core::sources::{
    beta_bar_for_photon_rate, beta_for_photon_number, photon_number_pulsed, photon_rate_cw, schmidt_basis,
    schmidt_lattice, Band, SchmidtBasis, SchmidtDecomposition, SqueezedCW, SqueezedPulsed,
};
use sqfluor_core::system::one_photon_prefactor;
use sqfluor_core::{CrossSectionPrefactor, FourLevelSystem, Result};

use crate::config::{CwAxis, CwConfig, PulsedConfig, RunConfig};
use crate::table::{Cell, Table};

pub const CW_COLUMNS: [&str; 14] = [
    "sigma_c_over_gamma_b",
    "beta_bar",
    "photon_rate_per_s",
    "r_classical",
    "r_sq_coherent",
    "r_sq_incoherent",
    "r_sq_total",
    "R_fluor_classical",
    "R_fluor_sq_total",
    "ratio_sq_over_cl",
    "ratio_coh_over_incoh",
    "crossover",
    "validity",
    "detect_line",
];

pub const PULSED_COLUMNS: [&str; 15] = [
    "sigma_p_over_gamma_b",
    "sigma_c_over_sigma_p",
    "beta",
    "photons_per_pulse",
    "p_classical",
    "p_sq_coherent",
    "p_sq_incoherent",
    "p_sq_total",
    "n_fluor_classical",
    "n_fluor_sq_coherent",
    "n_fluor_sq_incoherent",
    "n_fluor_sq_total",
    "crossover",
    "validity",
    "detect_line",
];

/// Everything a row needs besides its own coordinates.
struct Context<'a> {
    sys: &'a FourLevelSystem,
    eta: CrossSectionPrefactor,
    kappa: f64,
    a_eff: f64,
    n_atoms: f64,
    centers: (f64, f64),
}

impl<'a> Context<'a> {
    fn new(cfg: &'a RunConfig, a_eff: f64) -> Result<Self> {
        let centers = cfg.centers();
        Ok(Self {
            sys: &cfg.system,
            eta: cfg.eta()?,
            kappa: one_photon_prefactor(centers.0, &cfg.coupling),
            a_eff,
            n_atoms: cfg.n_atoms(),
            centers,
        })
    }
}

/// A failed row: numeric cells are NaN and `validity` reads `error`.
pub struct RowError {
    pub row: usize,
    pub message: String,
}

pub struct SweepOutput {
    pub table: Table,
    pub errors: Vec<RowError>,
}

fn validity_cell(v: Validity) -> Cell {
    Cell::Text(if v.pass { "pass" } else { "fail" }.into())
}

/// Index of the value nearest to 1 on a log scale, per group of rows.
fn nearest_to_one(values: &[f64]) -> Option<usize> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > 0.0)
        .min_by(|a, b| a.1.ln().abs().total_cmp(&b.1.ln().abs()))
        .map(|(i, _)| i)
}

struct CwRow {
    beta_bar: f64,
    photon_rate: f64,
    classical: ExcitationOutcome,
    squeezed: ExcitationOutcome,
    fluor_cl: f64,
    fluor_sq: f64,
    validity: Validity,
}

fn cw_row(ctx: &Context<'_>, base: &SqueezedCW, beta_bar: f64) -> Result<CwRow> {
    let src = base.with_beta(beta_bar);
    let photon_rate = photon_rate_cw(&src, Band::I)?;
    let cl_src = classical_cw_matched(&src, ctx.a_eff)?;
    let classical = rate_classical_cw(&cl_src, ctx.sys, &ctx.eta)?;
    let squeezed = rate_squeezed_cw(&src, ctx.sys, &ctx.eta, ctx.a_eff)?;
    let pop_sq = max_intermediate_population(PopulationSource::SqueezedCw(&src), ctx.sys, ctx.kappa, ctx.a_eff)?;
    let pop_cl = max_intermediate_population(PopulationSource::ClassicalCw(&cl_src), ctx.sys, ctx.kappa, ctx.a_eff)?;
    Ok(CwRow {
        beta_bar,
        photon_rate,
        fluor_cl: fluorescence(&classical, ctx.sys, ctx.n_atoms)?.total,
        fluor_sq: fluorescence(&squeezed, ctx.sys, ctx.n_atoms)?.total,
        classical,
        squeezed,
        validity: Validity::from_population(pop_sq.max(pop_cl)),
    })
}

pub fn run_cw_sweep(cfg: &RunConfig, cw: &CwConfig, a_eff: f64) -> Result<SweepOutput> {
    let ctx = Context::new(cfg, a_eff)?;
    let gb = ctx.sys.gamma_b();
    let (ci, cii) = ctx.centers;
    let jobs: Vec<(f64, usize)> = cw
        .sigma_c_over_gamma_b
        .iter()
        .flat_map(|&r| (0..cw.axis.len()).map(move |k| (r, k)))
        .collect();
    let results: Vec<(f64, Result<CwRow>)> = jobs
        .par_iter()
        .map(|&(ratio, k)| {
            let row = SqueezedCW::new(0.0, cw.theta, ratio * gb, ci, cii).and_then(|base| {
                let beta = match &cw.axis {
                    CwAxis::BetaBar(v) => v[k],
                    CwAxis::PhotonRate(v) => beta_bar_for_photon_rate(&base, v[k])?,
                };
                cw_row(&ctx, &base, beta)
            });
            (ratio, row)
        })
        .collect();

    let mut table = Table::new(&CW_COLUMNS);
    let mut errors = Vec::new();
    let n = cw.axis.len();
    for (col, chunk) in results.chunks(n.max(1)).enumerate() {
        let betas: Vec<f64> = chunk
            .iter()
            .map(|(_, r)| r.as_ref().map_or(f64::NAN, |r| r.beta_bar))
            .collect();
        let cross = nearest_to_one(&betas);
        for (k, (ratio, row)) in chunk.iter().enumerate() {
            let detect = Cell::Num(cfg.output.detect_counts_per_s);
            let cells = match row {
                Ok(r) => vec![
                    Cell::Num(*ratio),
                    Cell::Num(r.beta_bar),
                    Cell::Num(r.photon_rate),
                    Cell::Num(r.classical.total),
                    Cell::Num(r.squeezed.coherent),
                    Cell::Num(r.squeezed.incoherent),
                    Cell::Num(r.squeezed.total),
                    Cell::Num(r.fluor_cl),
                    Cell::Num(r.fluor_sq),
                    Cell::Num(r.squeezed.total / r.classical.total),
                    Cell::Num(r.squeezed.ratio()),
                    Cell::Flag(cross == Some(k)),
                    validity_cell(r.validity),
                    detect,
                ],
                Err(e) => {
                    errors.push(RowError {
                        row: col * n + k,
                        message: e.to_string(),
                    });
                    let mut cells = vec![Cell::Num(*ratio)];
                    cells.extend((0..10).map(|_| Cell::Num(f64::NAN)));
                    cells.extend([Cell::Flag(false), Cell::Text("error".into()), detect]);
                    cells
                }
            };
            table.rows.push(cells);
        }
    }
    Ok(SweepOutput { table, errors })
}

/// Quantities shared by every row of one `(sigma_p, sigma_c)` panel.
pub struct Panel {
    pub sigma_p_over_gamma_b: f64,
    pub sigma_c_over_sigma_p: f64,
    pub template: SqueezedPulsed,
    pub basis: Arc<SchmidtBasis>,
    response: ModeResponse,
    /// Classical probability and peak population for one photon per pulse;
    /// both scale with the photon numbers.
    classical_unit: f64,
    classical_pop_unit: f64,
}

pub fn panel_source(sys: &FourLevelSystem, sp_ratio: f64, sc_ratio: f64, phase: f64) -> Result<SqueezedPulsed> {
    let sigma_p = sp_ratio * sys.gamma_b();
    SqueezedPulsed::new(1.0, phase, sigma_p, sc_ratio * sigma_p, sys.omega_ba(), sys.omega_cb())
}

/// Schmidt basis on the default lattice.
pub fn panel_basis(src: &SqueezedPulsed, trunc_tol: f64) -> Result<SchmidtBasis> {
    let lattice = schmidt_lattice(src.sigma_p, src.sigma_c)?;
    schmidt_basis(src, &lattice, &lattice, trunc_tol)
}

fn build_panel(ctx: &Context<'_>, pc: &PulsedConfig, sp: f64, sc: f64, trunc_tol: f64) -> Result<Panel> {
    let template = panel_source(ctx.sys, sp, sc, pc.phase)?;
    let basis = Arc::new(panel_basis(&template, trunc_tol)?);
    let response = ModeResponse::for_basis(&basis, ctx.sys, template.center_i)?;
    let unit = SqueezedPulsed {
        beta: beta_for_photon_number(&basis, 1.0)?,
        ..template
    };
    let cl = classical_pulsed_matched(&SchmidtDecomposition::new(basis.clone(), &unit))?;
    let n = cl.n_photons_i;
    let p = p_classical_pulsed(&cl, ctx.sys, &ctx.eta, ctx.a_eff)?.total;
    let pop = max_intermediate_population(PopulationSource::ClassicalPulsed(&cl), ctx.sys, ctx.kappa, ctx.a_eff)?;
    Ok(Panel {
        sigma_p_over_gamma_b: sp,
        sigma_c_over_sigma_p: sc,
        template,
        basis,
        response,
        classical_unit: p / (n * n),
        classical_pop_unit: pop / n,
    })
}

struct PulsedRow {
    beta: f64,
    photons: f64,
    classical: f64,
    squeezed: ExcitationOutcome,
    per_atom: f64,
    validity: Validity,
    x0: f64,
}

fn pulsed_row(ctx: &Context<'_>, panel: &Panel, n: f64) -> Result<PulsedRow> {
    let beta = beta_for_photon_number(&panel.basis, n)?;
    let src = SqueezedPulsed { beta, ..panel.template };
    let dec = SchmidtDecomposition::new(panel.basis.clone(), &src);
    let photons = photon_number_pulsed(&dec);
    let squeezed = p_squeezed_pulsed(&dec, ctx.sys, &ctx.eta, ctx.a_eff)?;
    let classical = panel.classical_unit * photons * photons;
    let pop = panel
        .response
        .population(&dec, ctx.kappa, ctx.a_eff)
        .max(panel.classical_pop_unit * photons);
    let one = ExcitationOutcome::classical(1.0, squeezed.regime)?;
    Ok(PulsedRow {
        beta,
        photons,
        classical,
        squeezed,
        per_atom: fluorescence(&one, ctx.sys, ctx.n_atoms)?.total,
        validity: Validity::from_population(pop),
        x0: beta * panel.basis.p()[0].sqrt(),
    })
}

pub fn run_pulsed_sweep(cfg: &RunConfig, pc: &PulsedConfig, a_eff: f64) -> Result<SweepOutput> {
    let ctx = Context::new(cfg, a_eff)?;
    let coords: Vec<(f64, f64)> = pc
        .sigma_p_over_gamma_b
        .iter()
        .flat_map(|&sp| pc.sigma_c_over_sigma_p.iter().map(move |&sc| (sp, sc)))
        .collect();
    let panels: Vec<Result<Panel>> = coords
        .par_iter()
        .map(|&(sp, sc)| build_panel(&ctx, pc, sp, sc, cfg.trunc_tol))
        .collect();
    let n = pc.photons_per_pulse.len();
    let jobs: Vec<(usize, usize)> = (0..coords.len()).flat_map(|p| (0..n).map(move |k| (p, k))).collect();
    let results: Vec<Result<PulsedRow>> = jobs
        .par_iter()
        .map(|&(p, k)| match &panels[p] {
            Ok(panel) => pulsed_row(&ctx, panel, pc.photons_per_pulse[k]),
            Err(e) => Err(e.clone()),
        })
        .collect();

    let detect = cfg.output.detect_counts_per_s / pc.repetition_rate;
    let mut table = Table::new(&PULSED_COLUMNS);
    let mut errors = Vec::new();
    for (p, chunk) in results.chunks(n.max(1)).enumerate() {
        let (sp, sc) = coords[p];
        let xs: Vec<f64> = chunk.iter().map(|r| r.as_ref().map_or(f64::NAN, |r| r.x0)).collect();
        let cross = nearest_to_one(&xs);
        for (k, row) in chunk.iter().enumerate() {
            let cells = match row {
                Ok(r) => vec![
                    Cell::Num(sp),
                    Cell::Num(sc),
                    Cell::Num(r.beta),
                    Cell::Num(r.photons),
                    Cell::Num(r.classical),
                    Cell::Num(r.squeezed.coherent),
                    Cell::Num(r.squeezed.incoherent),
                    Cell::Num(r.squeezed.total),
                    Cell::Num(r.classical * r.per_atom),
                    Cell::Num(r.squeezed.coherent * r.per_atom),
                    Cell::Num(r.squeezed.incoherent * r.per_atom),
                    Cell::Num(r.squeezed.total * r.per_atom),
                    Cell::Flag(cross == Some(k)),
                    validity_cell(r.validity),
                    Cell::Num(detect),
                ],
                Err(e) => {
                    errors.push(RowError {
                        row: p * n + k,
                        message: e.to_string(),
                    });
                    let mut cells = vec![Cell::Num(sp), Cell::Num(sc)];
                    cells.extend((0..10).map(|_| Cell::Num(f64::NAN)));
                    cells.extend([Cell::Flag(false), Cell::Text("error".into()), Cell::Num(detect)]);
                    cells
                }
            };
            table.rows.push(cells);
        }
    }
    Ok(SweepOutput { table, errors })
}
