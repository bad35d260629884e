//! Parameter files, sidecars, sweep-spec files and axis flags.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use cmm_core::units::from_hz;
use cmm_core::{
    apply_override, Axis, Parameter, ParamsFile, SweepSpec, SystemParams, DEFAULT_POINTS,
};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::output::Sidecar;

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))
}

fn is_sidecar(v: &Value) -> bool {
    v.get("spec").is_some() && v.get("tool").is_some()
}

fn sidecar(path: &Path, v: Value) -> CliResult<Sidecar> {
    serde_json::from_value(v).map_err(|e| CliError::parse(path, format!("bad sidecar: {e}")))
}

/// Flat `*_over_2pi_hz` file, or a `.meta.json` sidecar whose exact
/// resolved base parameters are reused.
pub fn load_params(path: &Path) -> CliResult<SystemParams> {
    let v = read_json(path)?;
    if is_sidecar(&v) {
        return Ok(sidecar(path, v)?.spec.base);
    }
    let file: ParamsFile = serde_json::from_value(v)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(file.resolve()?)
}

/// A sidecar or a bare serialized [`SweepSpec`].
pub fn load_spec(path: &Path) -> CliResult<SweepSpec> {
    let v = read_json(path)?;
    if is_sidecar(&v) {
        return Ok(sidecar(path, v)?.spec);
    }
    serde_json::from_value(v).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn apply_overrides(p: &mut SystemParams, sets: &[String]) -> CliResult<()> {
    for s in sets {
        let (key, value) = s
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set expects key=value, got `{s}`")))?;
        apply_override(p, key, value)?;
    }
    Ok(())
}

/// `<name>[_over_2pi_hz|_over_omega_b|_over_kappa_n|_over_pi]=start:stop[:count]`.
/// Bare frequency names are in rad/s, temperature in kelvin.
pub fn parse_axis(text: &str, base: &SystemParams) -> CliResult<Axis> {
    let bad = |why: &str| CliError::Config(format!("axis `{text}`: {why}"));
    let (key, range) = text
        .split_once('=')
        .ok_or_else(|| bad("expected name=start:stop[:count]"))?;
    let key = key.trim().to_ascii_lowercase();
    let (name, factor) = if let Some(f) = key.strip_suffix("_over_2pi_hz") {
        (f, from_hz(1.0))
    } else if let Some(f) = key.strip_suffix("_over_omega_b") {
        (f, base.omega_b)
    } else if let Some(f) = key.strip_suffix("_over_kappa_n") {
        (f, base.kappa_n)
    } else if let Some(f) = key.strip_suffix("_over_pi") {
        (f, PI)
    } else {
        (key.as_str(), 1.0)
    };
    let parameter: Parameter = name.parse()?;
    if factor != 1.0 && parameter == Parameter::Temperature {
        return Err(bad("temperature is given in kelvin"));
    }

    let parts: Vec<&str> = range.split(':').collect();
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad("bounds must be numbers"))
    };
    let (start, stop, count) = match parts.as_slice() {
        [a, b] => (num(a)?, num(b)?, DEFAULT_POINTS),
        [a, b, n] => (
            num(a)?,
            num(b)?,
            n.trim()
                .parse()
                .map_err(|_| bad("count must be an integer"))?,
        ),
        _ => return Err(bad("expected start:stop[:count]")),
    };
    Ok(Axis::linear(
        parameter,
        start * factor,
        stop * factor,
        count,
    ))
}
