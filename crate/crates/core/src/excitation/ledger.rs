//! Fluorescence counts and the scattered/absorbed energy bookkeeping.

use std::collections::BTreeMap;

use super::outcome::ExcitationOutcome;
use crate::error::{non_negative, Result};
use crate::system::{FourLevelSystem, Level, Transition, HBAR};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluorescenceResult {
    pub per_atom_coherent: f64,
    pub per_atom_incoherent: f64,
    pub per_atom_total: f64,
    pub total_coherent: f64,
    pub total_incoherent: f64,
    pub total: f64,
    pub branching_cd: f64,
    pub radiative_fraction_da: f64,
    pub n_atoms: f64,
}

/// d-a photons from every atom: `p (Gamma_cd/Gamma_c) (Gamma^r_da/Gamma_d) N`.
pub fn fluorescence(outcome: &ExcitationOutcome, sys: &FourLevelSystem, n_atoms: f64) -> Result<FluorescenceResult> {
    non_negative("n_atoms", n_atoms)?;
    let b_cd = sys.branching_cd();
    let b_da = sys.radiative_fraction_da()?;
    let per_atom = b_cd * b_da;
    let factor = per_atom * n_atoms;
    Ok(FluorescenceResult {
        per_atom_coherent: outcome.coherent * per_atom,
        per_atom_incoherent: outcome.incoherent * per_atom,
        per_atom_total: outcome.total * per_atom,
        total_coherent: outcome.coherent * factor,
        total_incoherent: outcome.incoherent * factor,
        total: outcome.total * factor,
        branching_cd: b_cd,
        radiative_fraction_da: b_da,
        n_atoms,
    })
}

/// Time-integrated populations `int <sigma_pp> dt` in seconds.
pub type PopulationIntegrals = BTreeMap<Level, f64>;

/// Populations left behind by an excitation probability `p` as |c> cascades
/// back to the ground state through |b> and |d>.
pub fn cascade_populations(p: f64, sys: &FourLevelSystem) -> PopulationIntegrals {
    let gc = sys.gamma_c();
    let to_b = p * sys.gamma(Transition::Cb) / gc;
    let to_d = p * sys.gamma(Transition::Cd) / gc;
    let mut m = PopulationIntegrals::new();
    m.insert(Level::C, p / gc);
    m.insert(Level::B, to_b / sys.gamma_b());
    m.insert(Level::D, if sys.gamma_d() > 0.0 { to_d / sys.gamma_d() } else { 0.0 });
    m
}

/// Energies in joules, one entry per transition.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyLedger {
    pub scattered: BTreeMap<Transition, f64>,
    pub absorbed: BTreeMap<Transition, f64>,
    pub extinction: f64,
}

impl EnergyLedger {
    pub fn scattered_total(&self) -> f64 {
        Transition::ALL.iter().map(|t| self.scattered[t]).sum()
    }

    pub fn absorbed_total(&self) -> f64 {
        Transition::ALL.iter().map(|t| self.absorbed[t]).sum()
    }

    /// `extinction - scattered - absorbed`.
    pub fn residual(&self) -> f64 {
        self.extinction - (self.scattered_total() + self.absorbed_total())
    }

    /// Photons emitted on one transition.
    pub fn photons(&self, t: Transition, sys: &FourLevelSystem) -> f64 {
        self.scattered[&t] / (HBAR * sys.omega(t))
    }
}

/// `S_pq = hbar w_pq Gamma^r_pq int <sigma_pp> dt`, and `A_pq` likewise
/// with the non-radiative rate. Missing levels count as empty.
pub fn energy_ledger(populations: &PopulationIntegrals, sys: &FourLevelSystem) -> Result<EnergyLedger> {
    for v in populations.values() {
        non_negative("population_integral", *v)?;
    }
    let mut scattered = BTreeMap::new();
    let mut absorbed = BTreeMap::new();
    for t in Transition::ALL {
        let pop = populations.get(&t.upper()).copied().unwrap_or(0.0);
        let quantum = HBAR * sys.omega(t) * pop;
        scattered.insert(t, quantum * sys.gamma_r(t));
        absorbed.insert(t, quantum * sys.gamma_nr(t));
    }
    let mut ledger = EnergyLedger {
        scattered,
        absorbed,
        extinction: 0.0,
    };
    ledger.extinction = ledger.scattered_total() + ledger.absorbed_total();
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::excitation::outcome::Regime;
    use crate::testkit::cs;
    use approx::assert_relative_eq;

    #[test]
    fn fluorescence_applies_both_branchings() {
        let (sys, _, _) = cs();
        let o = ExcitationOutcome::new(1e-3, 2e-3, Regime::PulsedSqueezed).unwrap();
        let f = fluorescence(&o, &sys, 1e6).unwrap();
        assert_relative_eq!(f.branching_cd, 2.0 / 3.0, max_relative = 1e-12);
        assert_eq!(f.radiative_fraction_da, 1.0);
        assert_relative_eq!(f.total, 3e-3 * 2.0 / 3.0 * 1e6, max_relative = 1e-12);
        assert_relative_eq!(f.total, f.total_coherent + f.total_incoherent, max_relative = 1e-15);
    }

    #[test]
    fn ledger_closes_and_counts_match() {
        let (sys, _, _) = cs();
        let p = 1e-4;
        let pops = cascade_populations(p, &sys);
        let l = energy_ledger(&pops, &sys).unwrap();
        assert_eq!(l.residual(), 0.0);
        assert_eq!(l.absorbed_total(), 0.0);
        let o = ExcitationOutcome::classical(p, Regime::PulsedClassical).unwrap();
        let n = fluorescence(&o, &sys, 1.0).unwrap().total;
        assert_relative_eq!(l.photons(Transition::Da, &sys), n, max_relative = 1e-12);
        // Every excitation returns one photon on either c-b-a or c-d-a.
        let back = l.photons(Transition::Ba, &sys) + l.photons(Transition::Da, &sys);
        assert_relative_eq!(back, p, max_relative = 1e-12);
    }

    #[test]
    fn rejects_negative_inputs() {
        let (sys, _, _) = cs();
        let mut pops = PopulationIntegrals::new();
        pops.insert(Level::B, -1.0);
        assert!(energy_ledger(&pops, &sys).is_err());
        let o = ExcitationOutcome::classical(1.0, Regime::CwClassical).unwrap();
        assert!(fluorescence(&o, &sys, -1.0).is_err());
    }
}
