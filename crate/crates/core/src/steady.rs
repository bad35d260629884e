//! Classical steady-state amplitudes around which the fluctuations are
//! linearized.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Drive, SystemParams};

/// Fixed-point controls for the microscopic magnon/displacement loop.
#[derive(Debug, Clone, Copy)]
pub struct FixedPointOptions {
    /// Convergence threshold on successive displacement updates, relative to
    /// `max(1, |q_s|)`.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        FixedPointOptions {
            tol: 1e-12,
            max_iterations: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyState {
    /// Magnon amplitude. `None` in effective mode when no single-magnon
    /// coupling is known.
    pub m_s: Option<Complex64>,
    /// Cavity amplitude, evaluated from the closed-form expression in terms
    /// of `m_s`. `None` when `m_s` is unknown or the expression is singular
    /// (Δ_n² = 4χ²).
    pub n_s: Option<Complex64>,
    pub q_s: f64,
    pub p_s: f64,
    /// 𝒢 = √2 i g m_s, or the supplied real coupling in effective mode.
    pub coupling_g_eff: Complex64,
    pub delta_m_eff: f64,
    pub iterations: usize,
}

impl SteadyState {
    /// Coupling strength entering the drift matrix. The phase of 𝒢 is
    /// dropped: in the working regime m_s is nearly purely imaginary.
    pub fn coupling_magnitude(&self) -> f64 {
        self.coupling_g_eff.norm()
    }

    /// Relative residual of the magnon amplitude equation
    /// `m_s [𝒥² + (iΔ_n + κ_n)(iΔ̃_m + iΔ_B + κ_m)] = ε_l (iΔ_n + κ_n)`
    /// together with the displacement relation. Zero in effective mode.
    pub fn residual(&self, params: &SystemParams) -> f64 {
        let Drive::Microscopic { g0, epsilon_l, .. } = params.drive else {
            return 0.0;
        };
        let m = self.m_s.unwrap_or_default();
        let cav = Complex64::new(params.kappa_n, params.delta_n);
        let mag = Complex64::new(params.kappa_m, self.delta_m_eff + params.delta_b);
        let lhs = m * (params.coupling_j * params.coupling_j + cav * mag);
        let rhs = epsilon_l * cav;
        let scale = rhs.norm().max(f64::MIN_POSITIVE);
        let amp = (lhs - rhs).norm() / scale;
        let q_expected = -g0 * m.norm_sqr() / params.omega_b;
        let disp = (self.q_s - q_expected).abs() / q_expected.abs().max(1.0);
        amp.max(disp)
    }
}

pub fn solve_steady_state(params: &SystemParams) -> Result<SteadyState> {
    solve_steady_state_with(params, FixedPointOptions::default())
}

pub fn solve_steady_state_with(
    params: &SystemParams,
    opts: FixedPointOptions,
) -> Result<SteadyState> {
    params.validate()?;
    match params.drive {
        Drive::Effective { coupling_g, g0 } => {
            let m_s = g0.map(|g| Complex64::new(0.0, -coupling_g / (2f64.sqrt() * g)));
            let q_s = match (m_s, g0) {
                (Some(m), Some(g)) => -g * m.norm_sqr() / params.omega_b,
                _ => 0.0,
            };
            Ok(SteadyState {
                m_s,
                n_s: m_s.and_then(|m| cavity_amplitude(params, m)),
                q_s,
                p_s: 0.0,
                coupling_g_eff: Complex64::new(coupling_g, 0.0),
                delta_m_eff: params.delta_m_eff,
                iterations: 0,
            })
        }
        Drive::Microscopic {
            g0,
            epsilon_l,
            delta_m_bare,
        } => {
            let magnon = |q: f64| {
                let cav = Complex64::new(params.kappa_n, params.delta_n);
                let mag = Complex64::new(params.kappa_m, delta_m_bare + g0 * q + params.delta_b);
                epsilon_l * cav / (params.coupling_j * params.coupling_j + cav * mag)
            };

            let mut q = 0.0;
            let mut prev_step = 0.0f64;
            let mut relax = 1.0;
            let mut iterations = 0;
            let mut last_step = f64::INFINITY;
            let mut converged = false;
            while iterations < opts.max_iterations {
                iterations += 1;
                let m = magnon(q);
                let step = -g0 * m.norm_sqr() / params.omega_b - q;
                // Oscillating, non-shrinking updates: switch to under-relaxation.
                if step * prev_step < 0.0 && step.abs() >= prev_step.abs() {
                    relax = 0.5;
                }
                q += relax * step;
                last_step = step.abs();
                prev_step = step;
                if !q.is_finite() {
                    break;
                }
                if last_step < opts.tol * q.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NonConvergence {
                    iterations,
                    last_step,
                });
            }

            let m_s = magnon(q);
            let q_s = -g0 * m_s.norm_sqr() / params.omega_b;
            Ok(SteadyState {
                m_s: Some(m_s),
                n_s: cavity_amplitude(params, m_s),
                q_s,
                p_s: 0.0,
                coupling_g_eff: Complex64::new(0.0, 2f64.sqrt() * g0) * m_s,
                delta_m_eff: delta_m_bare + g0 * q_s,
                iterations,
            })
        }
    }
}

// Printed closed form: n_s = −𝒥 m_s (Δ_n + 2iχ e^{iβ}) / (Δ_n² − 4χ²).
// It carries no κ_n; nothing downstream depends on it.
fn cavity_amplitude(params: &SystemParams, m_s: Complex64) -> Option<Complex64> {
    let denom = params.delta_n * params.delta_n - 4.0 * params.chi * params.chi;
    if denom == 0.0 {
        return None;
    }
    let opa = Complex64::new(0.0, 2.0 * params.chi) * Complex64::from_polar(1.0, params.beta);
    Some(-params.coupling_j * m_s * (params.delta_n + opa) / denom)
}
