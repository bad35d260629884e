//! Steady-state Gaussian entanglement of a cavity magnomechanical system
//! (microwave cavity with an intracavity OPA, coupled to the magnon and
//! phonon modes of a spinning YIG sphere).
//!
//! The pipeline for one parameter point is
//! [`solve_steady_state`] → [`build_drift`] / [`build_diffusion`] →
//! [`solve_lyapunov`] → [`log_negativity`] per bipartition, wrapped by
//! [`entangle_all`]. [`nonrecip_all`] evaluates both Barnett-shift
//! directions and forms the contrast ratio; [`run_sweep`] does the same
//! over 1-D and 2-D grids (in parallel with the `parallel` feature).

pub mod config;
pub mod error;
pub mod lyapunov;
pub mod matrices;
pub mod negativity;
pub mod params;
pub mod pipeline;
pub mod presets;
pub mod steady;
pub mod sweep;
pub mod units;

pub use config::{apply_override, ParamsFile};
pub use error::{Branch, Error, Result};
pub use lyapunov::{solve_lyapunov, stability_margin, CovarianceMatrix};
pub use matrices::{build_diffusion, build_drift, DiffusionMatrix, DriftMatrix};
pub use negativity::{contrast_ratio, log_negativity, reduce_to_pair, Negativity, PairSelector};
pub use params::{Drive, Parameter, SystemParams};
pub use pipeline::{entangle_all, evaluate, nonrecip_all, Evaluation, NonrecipResult, PairResult};
pub use presets::{figure_preset, figure_preset_by_name, FigureId};
pub use steady::{solve_steady_state, SteadyState};
pub use sweep::{
    run_sweep, run_sweep_with, Axis, Execution, PointStatus, Quantity, SweepResult, SweepRow,
    SweepSpec, DEFAULT_POINTS,
};
pub use units::{barnett_field, field_to_frequency, thermal_occupancy};
