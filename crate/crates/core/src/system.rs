//! The four-level emitter |a> -> |b> -> |c> -> |d> -> |a>.
//!
//! Photon I drives a-b, photon II drives b-c, and fluorescence is
//! collected on d-a. Levels are closed by construction: the sum of the
//! two pump transitions equals the sum of the two relay transitions.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{invalid, non_negative, positive, Error, Result};
use crate::spectral::{green, lorentzian, GreenFunctionParams, LorentzianLineshape};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const EPSILON_0: f64 = 8.854_187_8128e-12;

/// Relative tolerance for the energy-loop closure check.
pub const LOOP_CLOSURE_TOL: f64 = 1e-9;

/// Angular frequency of vacuum wavelength `lambda` (m).
pub fn omega_from_wavelength(lambda: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / lambda
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transition {
    Ba,
    Cb,
    Cd,
    Da,
}

impl Transition {
    pub const ALL: [Transition; 4] = [Transition::Ba, Transition::Cb, Transition::Cd, Transition::Da];

    pub fn key(self) -> &'static str {
        match self {
            Transition::Ba => "ba",
            Transition::Cb => "cb",
            Transition::Cd => "cd",
            Transition::Da => "da",
        }
    }

    /// The level the transition decays from.
    pub fn upper(self) -> Level {
        match self {
            Transition::Ba => Level::B,
            Transition::Cb | Transition::Cd => Level::C,
            Transition::Da => Level::D,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    A,
    B,
    C,
    D,
}

/// One non-negative rate (rad/s) per transition.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RateTable {
    pub ba: f64,
    pub cb: f64,
    pub cd: f64,
    pub da: f64,
}

impl RateTable {
    pub fn get(&self, t: Transition) -> f64 {
        match t {
            Transition::Ba => self.ba,
            Transition::Cb => self.cb,
            Transition::Cd => self.cd,
            Transition::Da => self.da,
        }
    }

    fn validate(&self, name: &'static str) -> Result<()> {
        for t in Transition::ALL {
            non_negative(name, self.get(t))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourLevelSystem {
    omega_ba: f64,
    omega_cb: f64,
    omega_cd: f64,
    omega_da: f64,
    gamma_r: RateTable,
    gamma_nr: RateTable,
}

impl FourLevelSystem {
    /// Validates loop closure, rate signs and finite Green functions.
    pub fn new(
        omega_ba: f64,
        omega_cb: f64,
        omega_cd: f64,
        omega_da: f64,
        gamma_r: RateTable,
        gamma_nr: RateTable,
    ) -> Result<Self> {
        positive("omega_ba", omega_ba)?;
        positive("omega_cb", omega_cb)?;
        non_negative("omega_cd", omega_cd)?;
        positive("omega_da", omega_da)?;
        gamma_r.validate("gamma_r")?;
        gamma_nr.validate("gamma_nr")?;
        let lhs = omega_ba + omega_cb;
        let rhs = omega_cd + omega_da;
        if (lhs - rhs).abs() > LOOP_CLOSURE_TOL * lhs {
            return Err(invalid(
                "omega",
                format!("loop not closed: ba + cb = {lhs:e} but cd + da = {rhs:e}"),
            ));
        }
        let sys = Self {
            omega_ba,
            omega_cb,
            omega_cd,
            omega_da,
            gamma_r,
            gamma_nr,
        };
        if sys.gamma_b() <= 0.0 {
            return Err(Error::ZeroWidth("gamma_b must be > 0"));
        }
        if sys.gamma_c() <= 0.0 {
            return Err(Error::ZeroWidth("gamma_c must be > 0"));
        }
        Ok(sys)
    }

    pub fn omega(&self, t: Transition) -> f64 {
        match t {
            Transition::Ba => self.omega_ba,
            Transition::Cb => self.omega_cb,
            Transition::Cd => self.omega_cd,
            Transition::Da => self.omega_da,
        }
    }

    pub fn omega_ba(&self) -> f64 {
        self.omega_ba
    }
    pub fn omega_cb(&self) -> f64 {
        self.omega_cb
    }
    pub fn omega_cd(&self) -> f64 {
        self.omega_cd
    }
    pub fn omega_da(&self) -> f64 {
        self.omega_da
    }
    pub fn omega_ca(&self) -> f64 {
        self.omega_ba + self.omega_cb
    }

    pub fn gamma_r(&self, t: Transition) -> f64 {
        self.gamma_r.get(t)
    }
    pub fn gamma_nr(&self, t: Transition) -> f64 {
        self.gamma_nr.get(t)
    }
    pub fn radiative_rates(&self) -> &RateTable {
        &self.gamma_r
    }
    pub fn nonradiative_rates(&self) -> &RateTable {
        &self.gamma_nr
    }

    /// Total rate of one channel, radiative plus non-radiative.
    pub fn gamma(&self, t: Transition) -> f64 {
        self.gamma_r.get(t) + self.gamma_nr.get(t)
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma(Transition::Ba)
    }
    pub fn gamma_c(&self) -> f64 {
        self.gamma(Transition::Cb) + self.gamma(Transition::Cd)
    }
    pub fn gamma_d(&self) -> f64 {
        self.gamma(Transition::Da)
    }

    /// Total decay rate out of `level`. The ground state does not decay.
    pub fn level_width(&self, level: Level) -> f64 {
        match level {
            Level::A => 0.0,
            Level::B => self.gamma_b(),
            Level::C => self.gamma_c(),
            Level::D => self.gamma_d(),
        }
    }

    /// Fraction of |c> decays that go to |d>.
    pub fn branching_cd(&self) -> f64 {
        self.gamma(Transition::Cd) / self.gamma_c()
    }

    /// Fraction of |d> decays that emit a d-a photon.
    pub fn radiative_fraction_da(&self) -> Result<f64> {
        let gd = self.gamma_d();
        if gd <= 0.0 {
            return Err(Error::ZeroWidth("gamma_d must be > 0"));
        }
        Ok(self.gamma_r(Transition::Da) / gd)
    }

    /// G_ba, with the ground state taken as stable.
    pub fn green_ba(&self) -> GreenFunctionParams {
        GreenFunctionParams {
            transition_frequency: self.omega_ba,
            gamma_upper: self.gamma_b(),
            gamma_lower: 0.0,
        }
    }

    /// Two-photon lineshape of the a-c resonance.
    pub fn lineshape_ca(&self) -> LorentzianLineshape {
        LorentzianLineshape {
            center: self.omega_ca(),
            fwhm: self.gamma_c(),
        }
    }
}

/// Projected squared dipole moments |e.mu|^2 in C^2 m^2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DipoleCoupling {
    pub mu_sq_ba: f64,
    pub mu_sq_cb: f64,
}

impl DipoleCoupling {
    pub fn new(mu_sq_ba: f64, mu_sq_cb: f64) -> Result<Self> {
        positive("mu_sq_ba", mu_sq_ba)?;
        positive("mu_sq_cb", mu_sq_cb)?;
        Ok(Self { mu_sq_ba, mu_sq_cb })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossSectionPrefactor {
    pub eta: f64,
}

impl CrossSectionPrefactor {
    pub fn new(eta: f64) -> Result<Self> {
        positive("eta", eta)?;
        Ok(Self { eta })
    }
}

/// Spontaneous emission rate for total squared dipole `mu_sq_total`.
pub fn radiative_rate(omega: f64, mu_sq_total: f64) -> f64 {
    omega.powi(3) * mu_sq_total / (3.0 * PI * EPSILON_0 * SPEED_OF_LIGHT.powi(3) * HBAR)
}

/// Squared dipole projected on a linear polarisation: one third of the
/// total that reproduces `gamma_r`.
pub fn dipole_from_rate(gamma_r: f64, omega: f64) -> f64 {
    gamma_r * 3.0 * PI * EPSILON_0 * SPEED_OF_LIGHT.powi(3) * HBAR / (3.0 * omega.powi(3))
}

/// `2 pi w_I w_II mu_cb mu_ba / (2 eps0 c hbar)^2`, without validation.
pub fn eta_from_moments(omega_bar_i: f64, omega_bar_ii: f64, mu_sq_cb: f64, mu_sq_ba: f64) -> f64 {
    let d = 2.0 * EPSILON_0 * SPEED_OF_LIGHT * HBAR;
    2.0 * PI * omega_bar_i * omega_bar_ii * mu_sq_cb * mu_sq_ba / (d * d)
}

pub fn eta_prefactor(
    coupling: &DipoleCoupling,
    omega_bar_i: f64,
    omega_bar_ii: f64,
) -> Result<CrossSectionPrefactor> {
    positive("omega_bar_I", omega_bar_i)?;
    positive("omega_bar_II", omega_bar_ii)?;
    CrossSectionPrefactor::new(eta_from_moments(
        omega_bar_i,
        omega_bar_ii,
        coupling.mu_sq_cb,
        coupling.mu_sq_ba,
    ))
}

/// Resonant pump frequencies: photon I on a-b, photon II on b-c.
pub fn eta_resonant(system: &FourLevelSystem, coupling: &DipoleCoupling) -> Result<CrossSectionPrefactor> {
    eta_prefactor(coupling, system.omega_ba(), system.omega_cb())
}

/// Two-photon cross-section `eta L(w_I + w_II) |G_ba(w_I)|^2`.
pub fn cross_section(
    omega_i: f64,
    omega_ii: f64,
    system: &FourLevelSystem,
    eta: &CrossSectionPrefactor,
) -> Result<f64> {
    let g = green(omega_i, &system.green_ba())?;
    Ok(eta.eta * lorentzian(omega_i + omega_ii, &system.lineshape_ca()) * g.norm_sqr())
}

/// One-photon coupling `w |e.mu_ba|^2 / (2 eps0 c hbar)` used by the
/// intermediate-population estimate.
pub fn one_photon_prefactor(omega_bar_i: f64, coupling: &DipoleCoupling) -> f64 {
    omega_bar_i * coupling.mu_sq_ba / (2.0 * EPSILON_0 * SPEED_OF_LIGHT * HBAR)
}

pub const CS_LAMBDA_BA: f64 = 895e-9;
pub const CS_LAMBDA_CB: f64 = 1360e-9;
pub const CS_LAMBDA_CD: f64 = 1469.9e-9;

/// Radiative rates for the cesium preset. Any missing entry is an error.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CsRates {
    pub gamma_r_ba: Option<f64>,
    pub gamma_r_cb: Option<f64>,
    pub gamma_r_cd: Option<f64>,
    pub gamma_r_da: Option<f64>,
}

/// Cesium 6S1/2 -> 6P1/2 -> 7S1/2, relaying through 6P3/2.
///
/// Wavelengths are fixed; the rates come from the caller. Non-radiative
/// rates are zero, as for atoms in an isolated trap.
pub fn cs_preset(rates: &CsRates) -> Result<(FourLevelSystem, DipoleCoupling)> {
    let need = |v: Option<f64>, key: &str| v.ok_or_else(|| Error::MissingRate(key.to_string()));
    let gamma_r = RateTable {
        ba: need(rates.gamma_r_ba, "ba")?,
        cb: need(rates.gamma_r_cb, "cb")?,
        cd: need(rates.gamma_r_cd, "cd")?,
        da: need(rates.gamma_r_da, "da")?,
    };
    let omega_ba = omega_from_wavelength(CS_LAMBDA_BA);
    let omega_cb = omega_from_wavelength(CS_LAMBDA_CB);
    let omega_cd = omega_from_wavelength(CS_LAMBDA_CD);
    let omega_da = omega_ba + omega_cb - omega_cd;
    let sys = FourLevelSystem::new(
        omega_ba,
        omega_cb,
        omega_cd,
        omega_da,
        gamma_r,
        RateTable::default(),
    )?;
    let coupling = DipoleCoupling::new(
        dipole_from_rate(gamma_r.ba, omega_ba),
        dipole_from_rate(gamma_r.cb, omega_cb),
    )?;
    Ok((sys, coupling))
}
