//! JSON run configuration.
//!
//! Every dimensional entry is a string with an explicit unit suffix, and
//! every default the loader fills in is recorded in the provenance log.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use sqfluor_core::geometry::{fwhm_to_sigma, waist_fwhm_to_w0};
use sqfluor_core::system::{dipole_from_rate, omega_from_wavelength};
use sqfluor_core::{
    cs_preset, effective_area, effective_area_equal, eta_prefactor, AtomCloud, BeamProfile, CrossSectionPrefactor,
    CsRates, DipoleCoupling, EffectiveArea, FourLevelSystem, RateTable,
};

use crate::units::{parse, Kind, UnitError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("`{key}`: {reason}")]
    Invalid { key: String, reason: String },
    #[error(transparent)]
    Model(#[from] sqfluor_core::Error),
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.into(),
        reason: reason.into(),
    }
}

pub const DEFAULT_POINTS: usize = 60;
pub const DEFAULT_DETECT_COUNTS: f64 = 100.0;
pub const DEFAULT_REPETITION_HZ: f64 = 1e6;
pub const DEFAULT_CW_COLUMNS: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];
pub const DEFAULT_SIGMA_P: [f64; 3] = [0.1, 1.0, 10.0];
pub const DEFAULT_SIGMA_RATIOS: [f64; 3] = [1.0, 10.0, 100.0];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(rename = "comment")]
    _comment: Option<String>,
    system: Option<RawSystem>,
    geometry: Option<RawGeometry>,
    source: Option<RawSource>,
    numerics: Option<RawNumerics>,
    output: Option<RawOutput>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    preset: Option<String>,
    provenance: Option<String>,
    rates: Option<RawTransitions>,
    nonradiative: Option<RawTransitions>,
    wavelengths: Option<RawTransitions>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawTransitions {
    ba: Option<String>,
    cb: Option<String>,
    cd: Option<String>,
    da: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    #[serde(rename = "comment")]
    _comment: Option<String>,
    n_atoms: Option<f64>,
    cloud_fwhm: Option<String>,
    beam_fwhm: Option<String>,
    beam_waist: Option<String>,
    rayleigh: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    min: Option<Value>,
    max: Option<Value>,
    points: Option<usize>,
    values: Option<Vec<Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSource {
    #[serde(rename = "comment")]
    _comment: Option<String>,
    regime: Option<String>,
    // cw
    sigma_c_over_gamma_b: Option<Vec<f64>>,
    beta_bar: Option<RawAxis>,
    photon_rate: Option<RawAxis>,
    theta: Option<f64>,
    detuning_i: Option<String>,
    detuning_ii: Option<String>,
    // pulsed
    sigma_p_over_gamma_b: Option<Vec<f64>>,
    sigma_c_over_sigma_p: Option<Vec<f64>>,
    photons_per_pulse: Option<RawAxis>,
    phase: Option<f64>,
    repetition_rate: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNumerics {
    trunc_tol: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    csv: Option<PathBuf>,
    json: Option<bool>,
    jsi: Option<bool>,
    detect_counts_per_s: Option<f64>,
}

/// Which wavelength sets the Rayleigh range of the beams.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rayleigh {
    /// Both beams from the a-b wavelength.
    Ba,
    /// Both beams from the b-c wavelength.
    Cb,
    /// Each beam from its own transition.
    PerBeam,
    Fixed(f64),
}

#[derive(Clone, Debug)]
pub struct GeometryConfig {
    pub w0: f64,
    pub cloud: AtomCloud,
    pub rayleigh: Rayleigh,
}

impl GeometryConfig {
    pub fn beams(&self, sys: &FourLevelSystem) -> sqfluor_core::Result<(BeamProfile, BeamProfile)> {
        let lambda = |omega: f64| 2.0 * std::f64::consts::PI * sqfluor_core::system::SPEED_OF_LIGHT / omega;
        let (l_ba, l_cb) = (lambda(sys.omega_ba()), lambda(sys.omega_cb()));
        Ok(match self.rayleigh {
            Rayleigh::Ba => {
                let b = BeamProfile::from_wavelength(self.w0, l_ba)?;
                (b, b)
            }
            Rayleigh::Cb => {
                let b = BeamProfile::from_wavelength(self.w0, l_cb)?;
                (b, b)
            }
            Rayleigh::PerBeam => (
                BeamProfile::from_wavelength(self.w0, l_ba)?,
                BeamProfile::from_wavelength(self.w0, l_cb)?,
            ),
            Rayleigh::Fixed(z) => {
                let b = BeamProfile::new(self.w0, z)?;
                (b, b)
            }
        })
    }

    pub fn effective_area(&self, sys: &FourLevelSystem) -> sqfluor_core::Result<EffectiveArea> {
        let (a, b) = self.beams(sys)?;
        if a == b {
            effective_area_equal(&a, &self.cloud)
        } else {
            effective_area(&a, &b, &self.cloud)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CwAxis {
    BetaBar(Vec<f64>),
    /// Photons per second per band; each column gets its own `beta_bar`.
    PhotonRate(Vec<f64>),
}

impl CwAxis {
    pub fn len(&self) -> usize {
        match self {
            CwAxis::BetaBar(v) | CwAxis::PhotonRate(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct CwConfig {
    pub sigma_c_over_gamma_b: Vec<f64>,
    pub axis: CwAxis,
    pub theta: f64,
    pub detuning_i: f64,
    pub detuning_ii: f64,
}

#[derive(Clone, Debug)]
pub struct PulsedConfig {
    pub sigma_p_over_gamma_b: Vec<f64>,
    pub sigma_c_over_sigma_p: Vec<f64>,
    pub photons_per_pulse: Vec<f64>,
    pub phase: f64,
    pub repetition_rate: f64,
}

#[derive(Clone, Debug)]
pub enum SourceConfig {
    Cw(CwConfig),
    Pulsed(PulsedConfig),
}

#[derive(Clone, Debug)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub json: bool,
    pub jsi: bool,
    pub detect_counts_per_s: f64,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub preset: String,
    pub system: FourLevelSystem,
    pub coupling: DipoleCoupling,
    pub geometry: GeometryConfig,
    pub source: Option<SourceConfig>,
    pub trunc_tol: f64,
    pub output: OutputConfig,
    /// One line per default filled in, plus any provenance notes.
    pub provenance: Vec<String>,
    /// SHA-256 of the config file bytes.
    pub hash: String,
}

impl RunConfig {
    /// Band centres: the two one-photon resonances plus any detunings.
    pub fn centers(&self) -> (f64, f64) {
        let (di, dii) = match &self.source {
            Some(SourceConfig::Cw(c)) => (c.detuning_i, c.detuning_ii),
            _ => (0.0, 0.0),
        };
        (self.system.omega_ba() + di, self.system.omega_cb() + dii)
    }

    pub fn eta(&self) -> sqfluor_core::Result<CrossSectionPrefactor> {
        let (ci, cii) = self.centers();
        eta_prefactor(&self.coupling, ci, cii)
    }

    pub fn n_atoms(&self) -> f64 {
        self.geometry.cloud.n_atoms
    }
}

/// Reads and validates a config file.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let bytes = fs::read(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&bytes)
}

pub fn parse_config(bytes: &[u8]) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_slice(bytes).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let mut log = Vec::new();
    let hash = hex::encode(Sha256::digest(bytes));

    let sys_raw = raw.system.ok_or_else(|| ConfigError::MissingKey("system".into()))?;
    if let Some(p) = &sys_raw.provenance {
        log.push(format!("system.provenance: {p}"));
    }
    let (preset, system, coupling) = build_system(&sys_raw, &mut log)?;

    let geo = raw.geometry.ok_or_else(|| ConfigError::MissingKey("geometry".into()))?;
    let geometry = build_geometry(&geo, &mut log)?;

    let source = match raw.source {
        Some(s) => Some(build_source(&s, &mut log)?),
        None => None,
    };

    let trunc_tol = match raw.numerics.and_then(|n| n.trunc_tol) {
        Some(t) if t > 0.0 && t < 1.0 => t,
        Some(t) => return Err(invalid("numerics.trunc_tol", format!("must lie in (0, 1), got {t}"))),
        None => {
            log.push(format!("default numerics.trunc_tol = {:e}", sqfluor_core::sources::DEFAULT_TRUNC_TOL));
            sqfluor_core::sources::DEFAULT_TRUNC_TOL
        }
    };

    let out = raw.output.unwrap_or(RawOutput {
        csv: None,
        json: None,
        jsi: None,
        detect_counts_per_s: None,
    });
    let detect = match out.detect_counts_per_s {
        Some(d) if d > 0.0 => d,
        Some(d) => return Err(invalid("output.detect_counts_per_s", format!("must be > 0, got {d}"))),
        None => {
            log.push(format!("default output.detect_counts_per_s = {DEFAULT_DETECT_COUNTS}"));
            DEFAULT_DETECT_COUNTS
        }
    };
    let output = OutputConfig {
        csv: out.csv,
        json: out.json.unwrap_or(false),
        jsi: out.jsi.unwrap_or(false),
        detect_counts_per_s: detect,
    };

    Ok(RunConfig {
        preset,
        system,
        coupling,
        geometry,
        source,
        trunc_tol,
        output,
        provenance: log,
        hash,
    })
}

fn rate(v: &Option<String>, key: &str) -> Result<Option<f64>, ConfigError> {
    v.as_deref().map(|s| parse(s, Kind::Rate, key)).transpose().map_err(Into::into)
}

fn build_system(
    raw: &RawSystem,
    log: &mut Vec<String>,
) -> Result<(String, FourLevelSystem, DipoleCoupling), ConfigError> {
    let preset = raw.preset.clone().unwrap_or_else(|| {
        log.push("default system.preset = \"custom\"".into());
        "custom".into()
    });
    let rates = raw
        .rates
        .as_ref()
        .ok_or_else(|| ConfigError::MissingKey("system.rates".into()))?;
    let need = |v: &Option<String>, t: &str| -> Result<f64, ConfigError> {
        let key = format!("system.rates.{t}");
        rate(v, &key)?.ok_or(ConfigError::MissingKey(key))
    };
    let gamma_r = RateTable {
        ba: need(&rates.ba, "ba")?,
        cb: need(&rates.cb, "cb")?,
        cd: need(&rates.cd, "cd")?,
        da: need(&rates.da, "da")?,
    };
    match preset.as_str() {
        "cs" => {
            if raw.wavelengths.is_some() || raw.nonradiative.is_some() {
                return Err(invalid("system", "the cs preset fixes wavelengths and has no non-radiative decay"));
            }
            let (sys, c) = cs_preset(&CsRates {
                gamma_r_ba: Some(gamma_r.ba),
                gamma_r_cb: Some(gamma_r.cb),
                gamma_r_cd: Some(gamma_r.cd),
                gamma_r_da: Some(gamma_r.da),
            })?;
            Ok((preset, sys, c))
        }
        "custom" => {
            let wl = raw
                .wavelengths
                .as_ref()
                .ok_or_else(|| ConfigError::MissingKey("system.wavelengths".into()))?;
            let omega = |v: &Option<String>, t: &str| -> Result<f64, ConfigError> {
                let key = format!("system.wavelengths.{t}");
                let s = v.as_deref().ok_or_else(|| ConfigError::MissingKey(key.clone()))?;
                Ok(omega_from_wavelength(parse(s, Kind::Length, &key)?))
            };
            let nr = raw.nonradiative.as_ref();
            let none = RawTransitions::default();
            let nr = nr.unwrap_or_else(|| {
                log.push("default system.nonradiative = 0 for every transition".into());
                &none
            });
            let zero = |v: &Option<String>, t: &str| -> Result<f64, ConfigError> {
                Ok(rate(v, &format!("system.nonradiative.{t}"))?.unwrap_or(0.0))
            };
            let gamma_nr = RateTable {
                ba: zero(&nr.ba, "ba")?,
                cb: zero(&nr.cb, "cb")?,
                cd: zero(&nr.cd, "cd")?,
                da: zero(&nr.da, "da")?,
            };
            let (w_ba, w_cb) = (omega(&wl.ba, "ba")?, omega(&wl.cb, "cb")?);
            let sys = FourLevelSystem::new(
                w_ba,
                w_cb,
                omega(&wl.cd, "cd")?,
                omega(&wl.da, "da")?,
                gamma_r,
                gamma_nr,
            )?;
            let c = DipoleCoupling::new(dipole_from_rate(gamma_r.ba, w_ba), dipole_from_rate(gamma_r.cb, w_cb))?;
            Ok((preset, sys, c))
        }
        other => Err(invalid("system.preset", format!("unknown preset `{other}` (known: cs, custom)"))),
    }
}

fn build_geometry(raw: &RawGeometry, log: &mut Vec<String>) -> Result<GeometryConfig, ConfigError> {
    let n_atoms = raw.n_atoms.ok_or_else(|| ConfigError::MissingKey("geometry.n_atoms".into()))?;
    let cloud_fwhm = raw
        .cloud_fwhm
        .as_deref()
        .ok_or_else(|| ConfigError::MissingKey("geometry.cloud_fwhm".into()))?;
    let cloud = AtomCloud::new(fwhm_to_sigma(parse(cloud_fwhm, Kind::Length, "geometry.cloud_fwhm")?), n_atoms)?;
    let w0 = match (&raw.beam_fwhm, &raw.beam_waist) {
        (Some(f), None) => waist_fwhm_to_w0(parse(f, Kind::Length, "geometry.beam_fwhm")?),
        (None, Some(w)) => parse(w, Kind::Length, "geometry.beam_waist")?,
        (None, None) => return Err(ConfigError::MissingKey("geometry.beam_fwhm".into())),
        (Some(_), Some(_)) => return Err(invalid("geometry", "give beam_fwhm or beam_waist, not both")),
    };
    let rayleigh = match raw.rayleigh.as_deref() {
        None => {
            log.push("default geometry.rayleigh = \"ba\" (z_R from the a-b wavelength)".into());
            Rayleigh::Ba
        }
        Some("ba") => Rayleigh::Ba,
        Some("cb") => Rayleigh::Cb,
        Some("per_beam") => Rayleigh::PerBeam,
        Some(s) => Rayleigh::Fixed(parse(s, Kind::Length, "geometry.rayleigh")?),
    };
    Ok(GeometryConfig { w0, cloud, rayleigh })
}

fn number(v: &Value, key: &str) -> Result<f64, ConfigError> {
    v.as_f64().ok_or_else(|| invalid(key, format!("expected a number, got {v}")))
}

fn photon_rate_value(v: &Value, key: &str) -> Result<f64, ConfigError> {
    match v {
        Value::String(s) => Ok(parse(s, Kind::Frequency, key)?),
        _ => Err(invalid(key, format!("expected a rate string such as \"1e4 1/s\", got {v}"))),
    }
}

/// `points` values log-spaced from `min` to `max`, both included.
pub fn log_space(min: f64, max: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![min];
    }
    let (a, b) = (min.ln(), max.ln());
    (0..points)
        .map(|k| {
            if k == points - 1 {
                max
            } else {
                (a + (b - a) * k as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

fn axis<F>(raw: &RawAxis, key: &str, value: F, log: &mut Vec<String>) -> Result<Vec<f64>, ConfigError>
where
    F: Fn(&Value, &str) -> Result<f64, ConfigError>,
{
    let out = if let Some(vals) = &raw.values {
        if raw.min.is_some() || raw.max.is_some() || raw.points.is_some() {
            return Err(invalid(key, "give either `values` or `min`/`max`/`points`"));
        }
        vals.iter()
            .enumerate()
            .map(|(i, v)| value(v, &format!("{key}.values[{i}]")))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let min_key = format!("{key}.min");
        let max_key = format!("{key}.max");
        let min = value(raw.min.as_ref().ok_or_else(|| ConfigError::MissingKey(min_key.clone()))?, &min_key)?;
        let max = value(raw.max.as_ref().ok_or_else(|| ConfigError::MissingKey(max_key.clone()))?, &max_key)?;
        if !(min > 0.0 && max >= min && max.is_finite()) {
            return Err(invalid(key, format!("need 0 < min <= max, got {min} and {max}")));
        }
        let points = raw.points.unwrap_or_else(|| {
            log.push(format!("default {key}.points = {DEFAULT_POINTS}"));
            DEFAULT_POINTS
        });
        if points == 0 {
            return Err(invalid(&format!("{key}.points"), "must be >= 1"));
        }
        log_space(min, max, points)
    };
    if out.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(invalid(key, "values must be finite and >= 0"));
    }
    Ok(out)
}

fn positive_list(v: &Option<Vec<f64>>, key: &str, default: &[f64], log: &mut Vec<String>) -> Result<Vec<f64>, ConfigError> {
    let list = match v {
        Some(l) => l.clone(),
        None => {
            log.push(format!("default {key} = {default:?}"));
            default.to_vec()
        }
    };
    if list.is_empty() || list.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(invalid(key, "must be a non-empty list of positive numbers"));
    }
    Ok(list)
}

fn build_source(raw: &RawSource, log: &mut Vec<String>) -> Result<SourceConfig, ConfigError> {
    let regime = raw
        .regime
        .as_deref()
        .ok_or_else(|| ConfigError::MissingKey("source.regime".into()))?;
    let reject = |present: bool, key: &str| -> Result<(), ConfigError> {
        if present {
            Err(invalid(key, format!("not used by the `{regime}` regime")))
        } else {
            Ok(())
        }
    };
    match regime {
        "cw" => {
            reject(raw.sigma_p_over_gamma_b.is_some(), "source.sigma_p_over_gamma_b")?;
            reject(raw.sigma_c_over_sigma_p.is_some(), "source.sigma_c_over_sigma_p")?;
            reject(raw.photons_per_pulse.is_some(), "source.photons_per_pulse")?;
            reject(raw.phase.is_some(), "source.phase")?;
            reject(raw.repetition_rate.is_some(), "source.repetition_rate")?;
            let cols = positive_list(&raw.sigma_c_over_gamma_b, "source.sigma_c_over_gamma_b", &DEFAULT_CW_COLUMNS, log)?;
            let axis = match (&raw.beta_bar, &raw.photon_rate) {
                (Some(b), None) => CwAxis::BetaBar(axis(b, "source.beta_bar", number, log)?),
                (None, Some(r)) => CwAxis::PhotonRate(axis(r, "source.photon_rate", photon_rate_value, log)?),
                (None, None) => {
                    log.push(format!("default source.beta_bar = 1e-3 .. 1e2 over {DEFAULT_POINTS} points"));
                    CwAxis::BetaBar(log_space(1e-3, 1e2, DEFAULT_POINTS))
                }
                (Some(_), Some(_)) => return Err(invalid("source", "give beta_bar or photon_rate, not both")),
            };
            let theta = raw.theta.unwrap_or_else(|| {
                log.push("default source.theta = 0".into());
                0.0
            });
            let det = |v: &Option<String>, key: &str, log: &mut Vec<String>| -> Result<f64, ConfigError> {
                match v {
                    Some(s) => Ok(parse(s, Kind::Rate, key)?),
                    None => {
                        log.push(format!("default {key} = 0 rad/s (resonant)"));
                        Ok(0.0)
                    }
                }
            };
            Ok(SourceConfig::Cw(CwConfig {
                sigma_c_over_gamma_b: cols,
                axis,
                theta,
                detuning_i: det(&raw.detuning_i, "source.detuning_i", log)?,
                detuning_ii: det(&raw.detuning_ii, "source.detuning_ii", log)?,
            }))
        }
        "pulsed" => {
            reject(raw.sigma_c_over_gamma_b.is_some(), "source.sigma_c_over_gamma_b")?;
            reject(raw.beta_bar.is_some(), "source.beta_bar")?;
            reject(raw.photon_rate.is_some(), "source.photon_rate")?;
            reject(raw.theta.is_some(), "source.theta")?;
            reject(raw.detuning_i.is_some() || raw.detuning_ii.is_some(), "source.detuning_i")?;
            let sp = positive_list(&raw.sigma_p_over_gamma_b, "source.sigma_p_over_gamma_b", &DEFAULT_SIGMA_P, log)?;
            let ratios = positive_list(&raw.sigma_c_over_sigma_p, "source.sigma_c_over_sigma_p", &DEFAULT_SIGMA_RATIOS, log)?;
            if let Some(r) = ratios.iter().find(|r| **r < 1.0) {
                return Err(invalid("source.sigma_c_over_sigma_p", format!("entries must be >= 1, got {r}")));
            }
            let photons = match &raw.photons_per_pulse {
                Some(a) => axis(a, "source.photons_per_pulse", number, log)?,
                None => {
                    log.push(format!("default source.photons_per_pulse = 1e-4 .. 1e4 over {DEFAULT_POINTS} points"));
                    log_space(1e-4, 1e4, DEFAULT_POINTS)
                }
            };
            let repetition_rate = match &raw.repetition_rate {
                Some(s) => parse(s, Kind::Frequency, "source.repetition_rate")?,
                None => {
                    log.push(format!("default source.repetition_rate = {DEFAULT_REPETITION_HZ:e} Hz"));
                    DEFAULT_REPETITION_HZ
                }
            };
            Ok(SourceConfig::Pulsed(PulsedConfig {
                sigma_p_over_gamma_b: sp,
                sigma_c_over_sigma_p: ratios,
                photons_per_pulse: photons,
                phase: raw.phase.unwrap_or(0.0),
                repetition_rate,
            }))
        }
        other => Err(invalid("source.regime", format!("unknown regime `{other}` (known: cw, pulsed)"))),
    }
}
