use crate::error::{non_negative, Result};

/// Populations at or above this make the perturbative expansion suspect.
pub const VALIDITY_THRESHOLD: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    CwClassical,
    CwSqueezed,
    PulsedClassical,
    PulsedSqueezed,
}

impl Regime {
    pub fn is_cw(self) -> bool {
        matches!(self, Regime::CwClassical | Regime::CwSqueezed)
    }

    pub fn is_squeezed(self) -> bool {
        matches!(self, Regime::CwSqueezed | Regime::PulsedSqueezed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Validity {
    pub max_population: f64,
    pub pass: bool,
}

impl Validity {
    pub fn from_population(max_population: f64) -> Self {
        Self {
            max_population,
            pass: max_population < VALIDITY_THRESHOLD,
        }
    }
}

/// Probability per pulse (pulsed) or rate in 1/s (CW), split into the
/// pair-correlated and the thermal-like channel. Classical light only
/// has the first, so its `incoherent` is zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcitationOutcome {
    pub coherent: f64,
    pub incoherent: f64,
    pub total: f64,
    pub regime: Regime,
    pub validity: Option<Validity>,
}

impl ExcitationOutcome {
    pub fn new(coherent: f64, incoherent: f64, regime: Regime) -> Result<Self> {
        non_negative("coherent", coherent)?;
        non_negative("incoherent", incoherent)?;
        Ok(Self {
            coherent,
            incoherent,
            total: coherent + incoherent,
            regime,
            validity: None,
        })
    }

    pub fn classical(value: f64, regime: Regime) -> Result<Self> {
        Self::new(value, 0.0, regime)
    }

    pub fn with_validity(mut self, validity: Validity) -> Self {
        self.validity = Some(validity);
        self
    }

    /// `coherent / incoherent`. Infinite when only the incoherent part
    /// vanishes and NaN when both do.
    pub fn ratio(&self) -> f64 {
        self.coherent / self.incoherent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_is_sum_and_rejects_negative() {
        let o = ExcitationOutcome::new(0.25, 0.5, Regime::CwSqueezed).unwrap();
        assert_eq!(o.total, 0.75);
        assert_eq!(o.ratio(), 0.5);
        assert!(ExcitationOutcome::new(-1.0, 0.0, Regime::CwSqueezed).is_err());
        assert!(ExcitationOutcome::new(0.0, f64::NAN, Regime::CwSqueezed).is_err());
    }

    #[test]
    fn validity_threshold() {
        assert!(Validity::from_population(0.099).pass);
        assert!(!Validity::from_population(0.1).pass);
        let o = ExcitationOutcome::classical(1.0, Regime::PulsedClassical).unwrap();
        assert_eq!(o.incoherent, 0.0);
        assert!(o.with_validity(Validity::from_population(0.5)).validity.is_some());
        assert!(Regime::PulsedSqueezed.is_squeezed() && !Regime::PulsedSqueezed.is_cw());
    }
}
