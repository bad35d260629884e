//! Physical parameter model.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::from_hz;

/// Mechanical quality factor below which the delta-correlated Brownian
/// noise approximation is considered questionable.
pub const MIN_QUALITY_FACTOR: f64 = 1e3;

/// How the magnomechanical coupling is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Drive {
    /// The effective coupling 𝒢 is given directly (real, ≥ 0). The
    /// single-magnon coupling is optional and only used to report the
    /// implied amplitudes.
    Effective { coupling_g: f64, g0: Option<f64> },
    /// 𝒢 follows from the drive amplitude through the self-consistent
    /// steady state.
    Microscopic {
        g0: f64,
        epsilon_l: f64,
        delta_m_bare: f64,
    },
}

/// All rates and detunings in rad/s, temperature in kelvin, phase in rad.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub omega_n: f64,
    pub omega_b: f64,
    pub kappa_n: f64,
    pub kappa_m: f64,
    pub gamma_b: f64,
    pub coupling_j: f64,
    pub delta_n: f64,
    pub delta_m_eff: f64,
    pub delta_b: f64,
    pub chi: f64,
    pub beta: f64,
    pub temperature: f64,
    pub drive: Drive,
}

impl SystemParams {
    /// The experimentally motivated working point: ω_b/2π = 10 MHz,
    /// κ_n = κ_m = 2π·1 MHz, γ_b = 2π·100 Hz, 𝒥/2π = 3.2 MHz,
    /// 𝒢/2π = 4.8 MHz, T = 10 mK, χ = 0.6 κ_n, β = π.
    ///
    /// Detunings default to Δ_n = −ω_b, Δ̃_m = ω_b and Δ_B = 0.
    pub fn reference() -> Self {
        let omega_b = from_hz(10e6);
        let kappa_n = from_hz(1e6);
        SystemParams {
            omega_n: from_hz(10e9),
            omega_b,
            kappa_n,
            kappa_m: from_hz(1e6),
            gamma_b: from_hz(100.0),
            coupling_j: from_hz(3.2e6),
            delta_n: -omega_b,
            delta_m_eff: omega_b,
            delta_b: 0.0,
            chi: 0.6 * kappa_n,
            beta: PI,
            temperature: 0.010,
            drive: Drive::Effective {
                coupling_g: from_hz(4.8e6),
                g0: Some(from_hz(0.2)),
            },
        }
    }

    /// Reference point driven microscopically: g/2π = 0.2 Hz and
    /// ε_l = 7.1·10¹⁴ s⁻¹, with Δ_n = ω_b and bare Δ_m = 0.9 ω_b.
    pub fn reference_microscopic() -> Self {
        let base = Self::reference();
        SystemParams {
            delta_n: base.omega_b,
            drive: Drive::Microscopic {
                g0: from_hz(0.2),
                epsilon_l: 7.1e14,
                delta_m_bare: 0.9 * base.omega_b,
            },
            ..base
        }
    }

    pub fn quality_factor(&self) -> f64 {
        self.omega_b / self.gamma_b
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("omega_n", self.omega_n),
            ("omega_b", self.omega_b),
            ("kappa_n", self.kappa_n),
            ("kappa_m", self.kappa_m),
            ("gamma_b", self.gamma_b),
            ("coupling_j", self.coupling_j),
            ("delta_n", self.delta_n),
            ("delta_m_eff", self.delta_m_eff),
            ("delta_b", self.delta_b),
            ("chi", self.chi),
            ("beta", self.beta),
            ("temperature", self.temperature),
        ];
        for (name, v) in all {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite")));
            }
        }
        for (name, v) in [
            ("kappa_n", self.kappa_n),
            ("kappa_m", self.kappa_m),
            ("gamma_b", self.gamma_b),
            ("omega_b", self.omega_b),
        ] {
            if v <= 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.chi < 0.0 {
            return Err(Error::InvalidParams(format!(
                "chi must be >= 0, got {}",
                self.chi
            )));
        }
        if self.temperature < 0.0 {
            return Err(Error::InvalidParams(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        match self.drive {
            Drive::Effective { coupling_g, g0 } => {
                if !(coupling_g >= 0.0 && coupling_g.is_finite()) {
                    return Err(Error::InvalidParams(format!(
                        "coupling_g must be finite and >= 0, got {coupling_g}"
                    )));
                }
                if let Some(g) = g0 {
                    if !(g > 0.0 && g.is_finite()) {
                        return Err(Error::InvalidParams(format!("g0 must be > 0, got {g}")));
                    }
                }
            }
            Drive::Microscopic {
                g0,
                epsilon_l,
                delta_m_bare,
            } => {
                if !(g0 >= 0.0 && g0.is_finite()) {
                    return Err(Error::InvalidParams(format!("g0 must be >= 0, got {g0}")));
                }
                if !epsilon_l.is_finite() || !delta_m_bare.is_finite() {
                    return Err(Error::InvalidParams(
                        "epsilon_l and delta_m_bare must be finite".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Non-fatal diagnostics (currently only the mechanical Q check).
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let q = self.quality_factor();
        if q < MIN_QUALITY_FACTOR {
            out.push(format!(
                "mechanical quality factor {q:.3e} is below {MIN_QUALITY_FACTOR:e}; \
                 the white-noise Brownian bath is a poor approximation"
            ));
        }
        out
    }

    pub fn get(&self, p: Parameter) -> Option<f64> {
        Some(match p {
            Parameter::DeltaN => self.delta_n,
            Parameter::DeltaMEff => self.delta_m_eff,
            Parameter::DeltaB => self.delta_b,
            Parameter::Chi => self.chi,
            Parameter::Beta => self.beta,
            Parameter::Temperature => self.temperature,
            Parameter::CouplingG => match self.drive {
                Drive::Effective { coupling_g, .. } => coupling_g,
                Drive::Microscopic { .. } => return None,
            },
        })
    }

    /// Sets a sweepable parameter. Fails if the parameter does not exist
    /// for the current drive mode.
    pub fn set(&mut self, p: Parameter, value: f64) -> Result<()> {
        match p {
            Parameter::DeltaN => self.delta_n = value,
            Parameter::DeltaMEff => match self.drive {
                Drive::Effective { .. } => self.delta_m_eff = value,
                Drive::Microscopic { .. } => {
                    return Err(Error::InvalidSpec(
                        "delta_m_eff is derived in microscopic drive mode".into(),
                    ))
                }
            },
            Parameter::DeltaB => self.delta_b = value,
            Parameter::Chi => self.chi = value,
            Parameter::Beta => self.beta = value,
            Parameter::Temperature => self.temperature = value,
            Parameter::CouplingG => match &mut self.drive {
                Drive::Effective { coupling_g, .. } => *coupling_g = value,
                Drive::Microscopic { .. } => {
                    return Err(Error::InvalidSpec(
                        "coupling_G can only be swept in effective drive mode".into(),
                    ))
                }
            },
        }
        Ok(())
    }
}

/// Parameters a sweep axis may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parameter {
    #[serde(rename = "delta_n")]
    DeltaN,
    #[serde(rename = "delta_m_eff")]
    DeltaMEff,
    #[serde(rename = "delta_B")]
    DeltaB,
    #[serde(rename = "chi")]
    Chi,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "coupling_G")]
    CouplingG,
    #[serde(rename = "temperature")]
    Temperature,
}

impl Parameter {
    pub const ALL: [Parameter; 7] = [
        Parameter::DeltaN,
        Parameter::DeltaMEff,
        Parameter::DeltaB,
        Parameter::Chi,
        Parameter::Beta,
        Parameter::CouplingG,
        Parameter::Temperature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::DeltaN => "delta_n",
            Parameter::DeltaMEff => "delta_m_eff",
            Parameter::DeltaB => "delta_B",
            Parameter::Chi => "chi",
            Parameter::Beta => "beta",
            Parameter::CouplingG => "coupling_G",
            Parameter::Temperature => "temperature",
        }
    }

    /// True for quantities stored in rad/s.
    pub fn is_frequency(self) -> bool {
        !matches!(self, Parameter::Beta | Parameter::Temperature)
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parameter::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSpec(format!("unknown sweep parameter `{s}`")))
    }
}
