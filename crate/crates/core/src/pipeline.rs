//! Point evaluation: steady state → 𝒜, 𝒟 → 𝒱 → three bipartite negativities.

use serde::Serialize;

use crate::error::{Branch, Error, Result};
use crate::lyapunov::{solve_lyapunov, stability_margin, CovarianceMatrix};
use crate::matrices::{build_diffusion, build_drift, DiffusionMatrix, DriftMatrix};
use crate::negativity::{contrast_ratio, log_negativity, reduce_to_pair, PairSelector};
use crate::params::SystemParams;
use crate::steady::{solve_steady_state, SteadyState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairResult {
    pub e_nm: f64,
    pub e_mb: f64,
    pub e_nb: f64,
    pub nu_nm: f64,
    pub nu_mb: f64,
    pub nu_nb: f64,
}

impl PairResult {
    pub fn e(&self, pair: PairSelector) -> f64 {
        match pair {
            PairSelector::Nm => self.e_nm,
            PairSelector::Mb => self.e_mb,
            PairSelector::Nb => self.e_nb,
        }
    }

    pub fn nu_min(&self, pair: PairSelector) -> f64 {
        match pair {
            PairSelector::Nm => self.nu_nm,
            PairSelector::Mb => self.nu_mb,
            PairSelector::Nb => self.nu_nb,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonrecipResult {
    pub n_nm: f64,
    pub n_mb: f64,
    pub n_nb: f64,
    pub plus: PairResult,
    pub minus: PairResult,
}

impl NonrecipResult {
    pub fn n(&self, pair: PairSelector) -> f64 {
        match pair {
            PairSelector::Nm => self.n_nm,
            PairSelector::Mb => self.n_mb,
            PairSelector::Nb => self.n_nb,
        }
    }
}

/// Everything computed along the way for a single parameter point.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub steady: SteadyState,
    pub drift: DriftMatrix,
    pub diffusion: DiffusionMatrix,
    pub margin: f64,
    pub covariance: CovarianceMatrix,
    pub pairs: PairResult,
}

/// Runs the full chain and keeps the intermediates. The covariance is
/// checked for physicality before the negativities are taken.
pub fn evaluate(params: &SystemParams) -> Result<Evaluation> {
    let steady = solve_steady_state(params)?;
    let drift = build_drift(params, &steady);
    let diffusion = build_diffusion(params);
    let margin = stability_margin(&drift)?;
    if margin >= 0.0 {
        return Err(Error::Unstable {
            margin,
            branch: None,
        });
    }
    let covariance = solve_lyapunov(&drift, &diffusion)?;
    covariance.check_physical()?;
    let pairs = pair_negativities(&covariance)?;
    Ok(Evaluation {
        steady,
        drift,
        diffusion,
        margin,
        covariance,
        pairs,
    })
}

pub fn pair_negativities(v: &CovarianceMatrix) -> Result<PairResult> {
    let [nm, mb, nb] = PairSelector::ALL.map(|p| log_negativity(&reduce_to_pair(v, p)));
    let (nm, mb, nb) = (nm?, mb?, nb?);
    Ok(PairResult {
        e_nm: nm.e,
        e_mb: mb.e,
        e_nb: nb.e,
        nu_nm: nm.nu_min,
        nu_mb: mb.nu_min,
        nu_nb: nb.nu_min,
    })
}

pub fn entangle_all(params: &SystemParams) -> Result<PairResult> {
    evaluate(params).map(|e| e.pairs)
}

/// Evaluates both Barnett-shift directions with everything else fixed.
pub fn nonrecip_evaluate(
    params: &SystemParams,
    delta_b_magnitude: f64,
) -> Result<(Evaluation, Evaluation)> {
    let magnitude = delta_b_magnitude.abs();
    let plus = evaluate(&SystemParams {
        delta_b: magnitude,
        ..*params
    })
    .map_err(|e| e.on_branch(Branch::Plus))?;
    let minus = evaluate(&SystemParams {
        delta_b: -magnitude,
        ..*params
    })
    .map_err(|e| e.on_branch(Branch::Minus))?;
    Ok((plus, minus))
}

pub fn nonrecip_all(params: &SystemParams, delta_b_magnitude: f64) -> Result<NonrecipResult> {
    let (plus, minus) = nonrecip_evaluate(params, delta_b_magnitude)?;
    Ok(combine(plus.pairs, minus.pairs))
}

pub(crate) fn combine(plus: PairResult, minus: PairResult) -> NonrecipResult {
    NonrecipResult {
        n_nm: contrast_ratio(plus.e_nm, minus.e_nm),
        n_mb: contrast_ratio(plus.e_mb, minus.e_mb),
        n_nb: contrast_ratio(plus.e_nb, minus.e_nb),
        plus,
        minus,
    }
}
