//! Drift and diffusion matrices of the linearized quadrature dynamics.
//!
//! Quadrature order throughout: (X_n, Y_n, X_m, Y_m, q, p).

use nalgebra::{Matrix6, Vector6};

use crate::params::SystemParams;
use crate::steady::SteadyState;
use crate::units::thermal_occupancy;

/// Coefficient matrix 𝒜 of du/dt = 𝒜u + f, entries in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix(pub Matrix6<f64>);

/// Diagonal noise-correlation matrix 𝒟.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix(pub Vector6<f64>);

impl DriftMatrix {
    pub fn as_matrix(&self) -> &Matrix6<f64> {
        &self.0
    }
}

impl DiffusionMatrix {
    pub fn diagonal(&self) -> &Vector6<f64> {
        &self.0
    }

    pub fn to_matrix(&self) -> Matrix6<f64> {
        Matrix6::from_diagonal(&self.0)
    }
}

/// Assembles 𝒜 from the parameters and the linearization point.
///
/// The magnon detuning enters only as Δ̃_m + Δ_B and the coupling only
/// through |𝒢|.
pub fn build_drift(params: &SystemParams, steady: &SteadyState) -> DriftMatrix {
    let kn = params.kappa_n;
    let km = params.kappa_m;
    let j = params.coupling_j;
    let dn = params.delta_n;
    let dm = steady.delta_m_eff + params.delta_b;
    let g = steady.coupling_magnitude();
    let wb = params.omega_b;
    let gb = params.gamma_b;
    let (s, c) = params.beta.sin_cos();
    let opa_c = 2.0 * params.chi * c;
    let opa_s = 2.0 * params.chi * s;

    #[rustfmt::skip]
    let a = Matrix6::new(
        -kn + opa_c,  dn + opa_s,  0.0,  j,    0.0,  0.0,
        -dn + opa_s, -kn - opa_c, -j,    0.0,  0.0,  0.0,
         0.0,         j,          -km,   dm,  -g,    0.0,
        -j,           0.0,        -dm,  -km,   0.0,  0.0,
         0.0,         0.0,         0.0,  0.0,  0.0,  wb,
         0.0,         0.0,         0.0,  g,   -wb,  -gb,
    );
    DriftMatrix(a)
}

/// 𝒟 = diag(κ_n, κ_n, κ_m, κ_m, 0, γ_b(2N_b + 1)). Cavity and magnon baths
/// are vacuum; temperature enters only through the phonon bath.
pub fn build_diffusion(params: &SystemParams) -> DiffusionMatrix {
    let nb = thermal_occupancy(params.omega_b, params.temperature);
    DiffusionMatrix(Vector6::new(
        params.kappa_n,
        params.kappa_n,
        params.kappa_m,
        params.kappa_m,
        0.0,
        params.gamma_b * (2.0 * nb + 1.0),
    ))
}
