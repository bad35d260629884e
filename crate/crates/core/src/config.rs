//! Parameter-file representation.
//!
//! Files quote frequencies as `<field>_over_2pi_hz`, angles in radians and
//! temperature in kelvin. Missing fields fall back to
//! [`SystemParams::reference`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Drive, Parameter, SystemParams};
use crate::units::{from_hz, to_hz};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_n_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_b_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_n_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_m_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_b_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling_j_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_n_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_m_eff_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_b_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    /// `"effective"` or `"microscopic"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drive_mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling_g_over_2pi_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g0_over_2pi_hz: Option<f64>,
    /// Drive amplitude in s⁻¹.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_m_bare_over_2pi_hz: Option<f64>,
}

impl ParamsFile {
    /// Fully populated file describing `p`.
    pub fn from_params(p: &SystemParams) -> Self {
        let mut f = ParamsFile {
            omega_n_over_2pi_hz: Some(to_hz(p.omega_n)),
            omega_b_over_2pi_hz: Some(to_hz(p.omega_b)),
            kappa_n_over_2pi_hz: Some(to_hz(p.kappa_n)),
            kappa_m_over_2pi_hz: Some(to_hz(p.kappa_m)),
            gamma_b_over_2pi_hz: Some(to_hz(p.gamma_b)),
            coupling_j_over_2pi_hz: Some(to_hz(p.coupling_j)),
            delta_n_over_2pi_hz: Some(to_hz(p.delta_n)),
            delta_m_eff_over_2pi_hz: Some(to_hz(p.delta_m_eff)),
            delta_b_over_2pi_hz: Some(to_hz(p.delta_b)),
            chi_over_2pi_hz: Some(to_hz(p.chi)),
            beta: Some(p.beta),
            temperature: Some(p.temperature),
            ..Default::default()
        };
        match p.drive {
            Drive::Effective { coupling_g, g0 } => {
                f.drive_mode = Some("effective".into());
                f.coupling_g_over_2pi_hz = Some(to_hz(coupling_g));
                f.g0_over_2pi_hz = g0.map(to_hz);
            }
            Drive::Microscopic {
                g0,
                epsilon_l,
                delta_m_bare,
            } => {
                f.drive_mode = Some("microscopic".into());
                f.g0_over_2pi_hz = Some(to_hz(g0));
                f.epsilon_l = Some(epsilon_l);
                f.delta_m_bare_over_2pi_hz = Some(to_hz(delta_m_bare));
            }
        }
        f
    }

    /// Resolves against the reference parameter set.
    pub fn resolve(&self) -> Result<SystemParams> {
        self.resolve_onto(SystemParams::reference())
    }

    pub fn resolve_onto(&self, mut p: SystemParams) -> Result<SystemParams> {
        let hz = |v: Option<f64>, dst: &mut f64| {
            if let Some(v) = v {
                *dst = from_hz(v);
            }
        };
        hz(self.omega_n_over_2pi_hz, &mut p.omega_n);
        hz(self.omega_b_over_2pi_hz, &mut p.omega_b);
        hz(self.kappa_n_over_2pi_hz, &mut p.kappa_n);
        hz(self.kappa_m_over_2pi_hz, &mut p.kappa_m);
        hz(self.gamma_b_over_2pi_hz, &mut p.gamma_b);
        hz(self.coupling_j_over_2pi_hz, &mut p.coupling_j);
        hz(self.delta_n_over_2pi_hz, &mut p.delta_n);
        hz(self.delta_m_eff_over_2pi_hz, &mut p.delta_m_eff);
        hz(self.delta_b_over_2pi_hz, &mut p.delta_b);
        hz(self.chi_over_2pi_hz, &mut p.chi);
        if let Some(b) = self.beta {
            p.beta = b;
        }
        if let Some(t) = self.temperature {
            p.temperature = t;
        }
        if let Some(mode) = &self.drive_mode {
            set_mode(&mut p, mode)?;
        }
        match &mut p.drive {
            Drive::Effective { coupling_g, g0 } => {
                if let Some(v) = self.coupling_g_over_2pi_hz {
                    *coupling_g = from_hz(v);
                }
                if let Some(v) = self.g0_over_2pi_hz {
                    *g0 = Some(from_hz(v));
                }
                if self.epsilon_l.is_some() || self.delta_m_bare_over_2pi_hz.is_some() {
                    return Err(Error::InvalidParams(
                        "epsilon_l / delta_m_bare need drive_mode = \"microscopic\"".into(),
                    ));
                }
            }
            Drive::Microscopic {
                g0,
                epsilon_l,
                delta_m_bare,
            } => {
                if self.coupling_g_over_2pi_hz.is_some() {
                    return Err(Error::InvalidParams(
                        "coupling_g needs drive_mode = \"effective\"".into(),
                    ));
                }
                if let Some(v) = self.g0_over_2pi_hz {
                    *g0 = from_hz(v);
                }
                if let Some(v) = self.epsilon_l {
                    *epsilon_l = v;
                }
                if let Some(v) = self.delta_m_bare_over_2pi_hz {
                    *delta_m_bare = from_hz(v);
                }
            }
        }
        p.validate()?;
        Ok(p)
    }
}

fn set_mode(p: &mut SystemParams, mode: &str) -> Result<()> {
    let reference = SystemParams::reference_microscopic();
    p.drive = match (mode, p.drive) {
        ("effective", d @ Drive::Effective { .. }) => d,
        ("microscopic", d @ Drive::Microscopic { .. }) => d,
        ("effective", Drive::Microscopic { g0, .. }) => Drive::Effective {
            coupling_g: SystemParams::reference()
                .get(Parameter::CouplingG)
                .unwrap_or(0.0),
            g0: Some(g0),
        },
        ("microscopic", Drive::Effective { g0, .. }) => match reference.drive {
            Drive::Microscopic {
                g0: g_ref,
                epsilon_l,
                ..
            } => Drive::Microscopic {
                g0: g0.unwrap_or(g_ref),
                epsilon_l,
                delta_m_bare: p.delta_m_eff,
            },
            Drive::Effective { .. } => unreachable!(),
        },
        (other, _) => {
            return Err(Error::InvalidParams(format!(
                "drive_mode must be \"effective\" or \"microscopic\", got `{other}`"
            )))
        }
    };
    Ok(())
}

/// Applies a single `key=value` override.
///
/// Frequency fields accept three spellings: `<field>` (rad/s),
/// `<field>_over_2pi_hz` and `<field>_over_omega_b` (multiples of the
/// current ω_b); `chi` additionally accepts `chi_over_kappa_n`. `beta`
/// is in radians and may be written `beta_over_pi`.
pub fn apply_override(p: &mut SystemParams, key: &str, value: &str) -> Result<()> {
    let key = key.trim().to_ascii_lowercase();
    let value = value.trim();
    if key == "drive_mode" {
        set_mode(p, value)?;
        return p.validate();
    }
    let x: f64 = value
        .parse()
        .map_err(|_| Error::InvalidParams(format!("`{key}`: `{value}` is not a number")))?;

    let (field, factor) = if let Some(f) = key.strip_suffix("_over_2pi_hz") {
        (f, from_hz(1.0))
    } else if let Some(f) = key.strip_suffix("_over_omega_b") {
        (f, p.omega_b)
    } else if let Some(f) = key.strip_suffix("_over_kappa_n") {
        (f, p.kappa_n)
    } else if let Some(f) = key.strip_suffix("_over_pi") {
        (f, std::f64::consts::PI)
    } else {
        (key.as_str(), 1.0)
    };
    let v = x * factor;
    let scaled = factor != 1.0;

    match field {
        "omega_n" => p.omega_n = v,
        "omega_b" => p.omega_b = v,
        "kappa_n" => p.kappa_n = v,
        "kappa_m" => p.kappa_m = v,
        "gamma_b" => p.gamma_b = v,
        "coupling_j" => p.coupling_j = v,
        "delta_n" => p.delta_n = v,
        "delta_m_eff" => p.delta_m_eff = v,
        "delta_b" => p.delta_b = v,
        "chi" => p.chi = v,
        "beta" => p.beta = v,
        "temperature" if !scaled => p.temperature = v,
        "epsilon_l" if !scaled => match &mut p.drive {
            Drive::Microscopic { epsilon_l, .. } => *epsilon_l = v,
            Drive::Effective { .. } => {
                return Err(Error::InvalidParams(
                    "epsilon_l needs microscopic drive".into(),
                ))
            }
        },
        "coupling_g" => match &mut p.drive {
            Drive::Effective { coupling_g, .. } => *coupling_g = v,
            Drive::Microscopic { .. } => {
                return Err(Error::InvalidParams(
                    "coupling_g needs effective drive".into(),
                ))
            }
        },
        "g0" => match &mut p.drive {
            Drive::Effective { g0, .. } => *g0 = Some(v),
            Drive::Microscopic { g0, .. } => *g0 = v,
        },
        "delta_m_bare" => match &mut p.drive {
            Drive::Microscopic { delta_m_bare, .. } => *delta_m_bare = v,
            Drive::Effective { .. } => {
                return Err(Error::InvalidParams(
                    "delta_m_bare needs microscopic drive".into(),
                ))
            }
        },
        _ => return Err(Error::InvalidParams(format!("unknown parameter `{key}`"))),
    }
    p.validate()
}
