//! Quantities written as `"<number> <unit>"` strings.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitError {
    #[error("`{key}`: unknown unit `{token}` for a {kind}")]
    Unknown { key: String, token: String, kind: &'static str },
    #[error("`{key}`: `{text}` has no unit suffix; {kind}s need one")]
    Missing { key: String, text: String, kind: &'static str },
    #[error("`{key}`: cannot read a number from `{text}`")]
    Number { key: String, text: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Length,
    /// Decay or angular rates in rad/s.
    Rate,
    /// Cycles per second, as for a repetition rate.
    Frequency,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Length => "length",
            Kind::Rate => "rate",
            Kind::Frequency => "frequency",
        }
    }
}

fn scale(kind: Kind, unit: &str) -> Option<Conversion> {
    use Conversion::*;
    let v = match (kind, unit) {
        (Kind::Length, "m") => Times(1.0),
        (Kind::Length, "cm") => Times(1e-2),
        (Kind::Length, "mm") => Times(1e-3),
        (Kind::Length, "um" | "μm" | "µm") => Times(1e-6),
        (Kind::Length, "nm") => Times(1e-9),
        (Kind::Rate, "rad/s" | "1/s" | "s^-1") => Times(1.0),
        // A linewidth quoted in Hz is Gamma / 2pi.
        (Kind::Rate, "Hz") => Times(2.0 * PI),
        (Kind::Rate, "kHz") => Times(2.0 * PI * 1e3),
        (Kind::Rate, "MHz") => Times(2.0 * PI * 1e6),
        (Kind::Rate, "GHz") => Times(2.0 * PI * 1e9),
        // A lifetime tau stands for the rate 1/tau.
        (Kind::Rate, "s") => Inverse(1.0),
        (Kind::Rate, "ms") => Inverse(1e-3),
        (Kind::Rate, "us" | "μs" | "µs") => Inverse(1e-6),
        (Kind::Rate, "ns") => Inverse(1e-9),
        (Kind::Frequency, "Hz" | "1/s" | "s^-1") => Times(1.0),
        (Kind::Frequency, "kHz") => Times(1e3),
        (Kind::Frequency, "MHz") => Times(1e6),
        (Kind::Frequency, "GHz") => Times(1e9),
        _ => return None,
    };
    Some(v)
}

#[derive(Clone, Copy)]
enum Conversion {
    Times(f64),
    Inverse(f64),
}

/// Parses `text` as a quantity of `kind` in SI units. `key` names the
/// config entry in error messages.
pub fn parse(text: &str, kind: Kind, key: &str) -> Result<f64, UnitError> {
    let text = text.trim();
    let (num, unit) = match text.find(char::is_whitespace) {
        Some(i) => (&text[..i], text[i..].trim()),
        None => {
            return Err(UnitError::Missing {
                key: key.into(),
                text: text.into(),
                kind: kind.name(),
            })
        }
    };
    let value: f64 = num.parse().map_err(|_| UnitError::Number {
        key: key.into(),
        text: text.into(),
    })?;
    let conv = scale(kind, unit).ok_or_else(|| UnitError::Unknown {
        key: key.into(),
        token: unit.into(),
        kind: kind.name(),
    })?;
    Ok(match conv {
        Conversion::Times(f) => value * f,
        Conversion::Inverse(f) => 1.0 / (value * f),
    })
}
