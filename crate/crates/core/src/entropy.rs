//! Quantum Rényi α-entropies and the conditional-entropy inequality battery.
//!
//! All entropies are in nats.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::state::{reduce, BellSpectrum, DensityMatrix, QubitState, Subsystem};

/// Eigenvalues in `[−CLIP, 0)` are treated as zero.
pub const CLIP: f64 = 1e-10;
/// A conditional entropy counts as negative only below `−MARGIN`.
pub const MARGIN: f64 = 1e-9;

/// Rényi order: a finite `α ≥ 1` or the min-entropy limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Finite(f64),
    Infinity,
}

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_infinite() && alpha > 0.0 {
            return Ok(Alpha::Infinity);
        }
        if !alpha.is_finite() || alpha < 1.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Alpha::Finite(alpha))
    }

    pub fn value(&self) -> f64 {
        match self {
            Alpha::Finite(a) => *a,
            Alpha::Infinity => f64::INFINITY,
        }
    }

    fn validate(self) -> Result<Self> {
        match self {
            Alpha::Finite(a) => Alpha::new(a),
            Alpha::Infinity => Ok(self),
        }
    }

    /// `{1, 1.5, 2, 5, 10, 50, ∞}`.
    pub fn default_scan() -> Vec<Alpha> {
        [1.0, 1.5, 2.0, 5.0, 10.0, 50.0]
            .into_iter()
            .map(Alpha::Finite)
            .chain(std::iter::once(Alpha::Infinity))
            .collect()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(a) => write!(f, "{a}"),
            Alpha::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Alpha::Infinity);
        }
        let v: f64 = s.parse().map_err(|_| Error::InvalidAlpha(f64::NAN))?;
        Alpha::new(v)
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Alpha::Finite(a) => serializer.serialize_f64(*a),
            Alpha::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Alpha::new(x).map_err(serde::de::Error::custom),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Anything with a finite spectrum.
pub trait Spectral {
    fn eigenvalues(&self) -> Vec<f64>;
}

impl Spectral for DensityMatrix {
    fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum().to_vec()
    }
}

impl Spectral for QubitState {
    fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum().to_vec()
    }
}

impl Spectral for BellSpectrum {
    fn eigenvalues(&self) -> Vec<f64> {
        self.weights().to_vec()
    }
}

fn clipped(values: &[f64]) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&x| {
            if x < -CLIP {
                Err(Error::NotPositive(x))
            } else {
                Ok(x.max(0.0))
            }
        })
        .collect()
}

/// Rényi entropy of a probability vector.
pub fn renyi_from_spectrum(values: &[f64], alpha: Alpha) -> Result<f64> {
    let alpha = alpha.validate()?;
    let p = clipped(values)?;
    let max = p.iter().copied().fold(0.0, f64::max);
    Ok(match alpha {
        Alpha::Infinity => -max.ln(),
        Alpha::Finite(1.0) => -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>(),
        Alpha::Finite(a) => {
            // ln Σ pᵅ = α ln p_max + ln Σ (p/p_max)ᵅ, stable for large α.
            let rest: f64 = p.iter().map(|&x| (x / max).powf(a)).sum();
            (a * max.ln() + rest.ln()) / (1.0 - a)
        }
    })
}

pub fn renyi<S: Spectral + ?Sized>(state: &S, alpha: Alpha) -> Result<f64> {
    renyi_from_spectrum(&state.eigenvalues(), alpha)
}

/// `S_α(1|2) = S_α(ρ) − S_α(ρ₂)` for `Subsystem::First`, and the mirror
/// `S_α(2|1) = S_α(ρ) − S_α(ρ₁)` for `Subsystem::Second`.
pub fn conditional(rho: &DensityMatrix, alpha: Alpha, which: Subsystem) -> Result<f64> {
    let conditioning = match which {
        Subsystem::First => Subsystem::Second,
        Subsystem::Second => Subsystem::First,
    };
    Ok(renyi(rho, alpha)? - renyi(&reduce(rho, conditioning), alpha)?)
}

/// Outcome of `S_α(ρ) ≥ max_i S_α(ρ_i)` for one α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaEntropyVerdict {
    pub alpha: Alpha,
    pub s_total: f64,
    pub s_sub1: f64,
    pub s_sub2: f64,
    pub conditional_1given2: f64,
    pub conditional_2given1: f64,
    pub satisfied: bool,
}

pub fn check_inequality(rho: &DensityMatrix, alpha: Alpha) -> Result<AlphaEntropyVerdict> {
    let alpha = alpha.validate()?;
    let s_total = renyi(rho, alpha)?;
    let s_sub1 = renyi(&reduce(rho, Subsystem::First), alpha)?;
    let s_sub2 = renyi(&reduce(rho, Subsystem::Second), alpha)?;
    let conditional_1given2 = s_total - s_sub2;
    let conditional_2given1 = s_total - s_sub1;
    Ok(AlphaEntropyVerdict {
        alpha,
        s_total,
        s_sub1,
        s_sub2,
        conditional_1given2,
        conditional_2given1,
        satisfied: conditional_1given2 >= -MARGIN && conditional_2given1 >= -MARGIN,
    })
}

/// The inequality for a T-state from its Bell weights alone:
/// `Σ p_iᵅ ≤ 2^{1−α}` (α > 1), `−Σ p_i ln p_i ≥ ln 2` (α = 1),
/// `p_max ≤ ½` (α = ∞), each with the same margin as [`check_inequality`].
pub fn tstate_inequality(p: &BellSpectrum, alpha: Alpha) -> Result<bool> {
    let alpha = alpha.validate()?;
    let p = BellSpectrum::new(p.weights())?.weights();
    let ln2 = std::f64::consts::LN_2;
    Ok(match alpha {
        Alpha::Infinity => {
            let max = p.iter().copied().fold(0.0, f64::max);
            max.ln() <= -ln2 + MARGIN
        }
        Alpha::Finite(1.0) => {
            let h = -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>();
            h >= ln2 - MARGIN
        }
        Alpha::Finite(a) => {
            let max = p.iter().copied().fold(0.0, f64::max);
            let log_sum = a * max.ln() + p.iter().map(|&x| (x / max).powf(a)).sum::<f64>().ln();
            // Σ pᵅ ≤ 2^{1−α}, in logs, widened by the entropy margin.
            log_sum <= (1.0 - a) * ln2 + (a - 1.0) * MARGIN
        }
    })
}

/// Verdicts for each requested α, with α = ∞ appended when absent.
pub fn violation_scan(rho: &DensityMatrix, alphas: &[Alpha]) -> Result<Vec<AlphaEntropyVerdict>> {
    let mut list: Vec<Alpha> = alphas.to_vec();
    if !list.contains(&Alpha::Infinity) {
        list.push(Alpha::Infinity);
    }
    list.into_iter().map(|a| check_inequality(rho, a)).collect()
}
