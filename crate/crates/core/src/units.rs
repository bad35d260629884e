//! Physical constants and unit conversions.
//!
//! Every frequency inside the crate is an angular frequency in rad/s. The
//! helpers here convert between that representation and the "/2π Hz" form
//! used in parameter files.

use std::f64::consts::PI;

/// Reduced Planck constant, J·s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K (CODATA 2018, exact).
pub const K_B: f64 = 1.380_649e-23;

/// Electron gyromagnetic ratio used for the YIG magnon, rad/(s·T).
pub const GYROMAGNETIC_RATIO: f64 = 2.0 * PI * 28.0e9;

/// Converts a frequency quoted as `value / 2π` in Hz to rad/s.
#[inline]
pub fn from_hz(value_over_2pi_hz: f64) -> f64 {
    2.0 * PI * value_over_2pi_hz
}

/// Converts rad/s to the `/2π` Hz form.
#[inline]
pub fn to_hz(angular: f64) -> f64 {
    angular / (2.0 * PI)
}

/// Bose–Einstein occupation of a bosonic mode of angular frequency `omega`
/// in equilibrium with a bath at `temperature` kelvin.
///
/// The zero-temperature limit is returned as exactly zero.
pub fn thermal_occupancy(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega / (K_B * temperature);
    // expm1 keeps precision in the classical limit x → 0; overflow to ∞ gives 0.
    1.0 / x.exp_m1()
}

/// Magnon angular frequency set by a bias field, ω = γ H.
pub fn field_to_frequency(field_tesla: f64) -> f64 {
    GYROMAGNETIC_RATIO * field_tesla
}

/// Effective field associated with a rotation-induced magnon shift, H = Δ/γ.
pub fn barnett_field(delta_b: f64) -> f64 {
    delta_b / GYROMAGNETIC_RATIO
}
