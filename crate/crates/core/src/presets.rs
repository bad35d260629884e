//! Named sweep presets, one per figure panel.
//!
//! Baseline: [`SystemParams::reference`] with Δ̃_m = ω_b. Where a panel's
//! fixed detunings or axis ranges are not pinned down, the defaults below
//! are reconstructions:
//!
//! * fig1a: Δ_n ∈ [−2, 2]ω_b at Δ̃_m = ω_b, Δ_B = 0.
//! * fig1b: Δ̃_m ∈ [−2, 2]ω_b at Δ_n = −ω_b.
//! * fig2*: Δ_n = −1.3ω_b. (a) β ∈ [0, 2π]; (b) Δ_B ∈ [−0.5, 0.5]ω_b;
//!   (c) χ ∈ [0, 0.9]κ_n paired at |Δ_B| = 0.3ω_b; (d) β ∈ [0, 2π] paired
//!   at |Δ_B| = 0.3ω_b.
//! * fig3*: 𝒢 ∈ [0, 2]𝒥 at Δ_B = 0.3ω_b, Δ_n = −1.3ω_b; panel a is
//!   entanglement, b–d the three contrast ratios.
//! * fig4*: Δ_n ∈ [−2, 2]ω_b, paired, second axis |Δ_B| ∈ {0.1, 0.2, 0.3}ω_b.
//! * fig5*: T ∈ [0.01, 2] K, paired, second axis |Δ_B| ∈ {0.1, 0.2, 0.3}ω_b,
//!   Δ_n = −1.3ω_b.
//! * fig6*: T ∈ [0.01, 2] K, second axis Δ_B ∈ {−0.2, 0, 0.2}ω_b,
//!   Δ_n = −1.3ω_b.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Parameter, SystemParams};
use crate::sweep::{Axis, Quantity, SweepSpec, DEFAULT_POINTS};

macro_rules! figures {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum FigureId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl FigureId {
            pub const ALL: &'static [FigureId] = &[$(FigureId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(FigureId::$variant => $name,)*
                }
            }
        }
    };
}

figures! {
    Fig1a => "fig1a", Fig1b => "fig1b",
    Fig2a => "fig2a", Fig2b => "fig2b", Fig2c => "fig2c", Fig2d => "fig2d",
    Fig3a => "fig3a", Fig3b => "fig3b", Fig3c => "fig3c", Fig3d => "fig3d",
    Fig4a => "fig4a", Fig4b => "fig4b", Fig4c => "fig4c",
    Fig5a => "fig5a", Fig5b => "fig5b", Fig5c => "fig5c",
    Fig6a => "fig6a", Fig6b => "fig6b", Fig6c => "fig6c",
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

/// Figure lookup by name.
pub fn figure_preset_by_name(id: &str) -> Result<SweepSpec> {
    Ok(figure_preset(id.parse()?))
}

pub fn figure_preset(id: FigureId) -> SweepSpec {
    use FigureId::*;
    use Parameter as P;

    let base = SystemParams::reference();
    let wb = base.omega_b;
    let n = DEFAULT_POINTS;
    let ent = Quantity::ENTANGLEMENT.to_vec();
    let all_n = Quantity::NONRECIPROCITY.to_vec();
    let fig2 = SystemParams {
        delta_n: -1.3 * wb,
        ..base
    };
    let shifted = SystemParams {
        delta_b: 0.3 * wb,
        ..fig2
    };
    let g_max = 2.0 * base.coupling_j;
    let barnett_family = Some(Axis::linear(P::DeltaB, 0.1 * wb, 0.3 * wb, 3));
    let signed_family = Some(Axis::linear(P::DeltaB, -0.2 * wb, 0.2 * wb, 3));
    let temperatures = Axis::linear(P::Temperature, 0.01, 2.0, n);

    let spec = |base, axis1, axis2, quantities, nonrecip_pairing| SweepSpec {
        base,
        axis1,
        axis2,
        quantities,
        nonrecip_pairing,
    };

    match id {
        Fig1a => spec(
            base,
            Axis::linear(P::DeltaN, -2.0 * wb, 2.0 * wb, n),
            None,
            ent,
            false,
        ),
        Fig1b => spec(
            SystemParams {
                delta_n: -wb,
                ..base
            },
            Axis::linear(P::DeltaMEff, -2.0 * wb, 2.0 * wb, n),
            None,
            ent,
            false,
        ),
        Fig2a => spec(
            fig2,
            Axis::linear(P::Beta, 0.0, 2.0 * PI, n),
            None,
            ent,
            false,
        ),
        Fig2b => spec(
            fig2,
            Axis::linear(P::DeltaB, -0.5 * wb, 0.5 * wb, n),
            None,
            ent,
            false,
        ),
        Fig2c => spec(
            shifted,
            Axis::linear(P::Chi, 0.0, 0.9 * base.kappa_n, n),
            None,
            all_n,
            true,
        ),
        Fig2d => spec(
            shifted,
            Axis::linear(P::Beta, 0.0, 2.0 * PI, n),
            None,
            all_n,
            true,
        ),
        Fig3a => spec(
            shifted,
            Axis::linear(P::CouplingG, 0.0, g_max, n),
            None,
            ent,
            false,
        ),
        Fig3b | Fig3c | Fig3d => {
            let q = match id {
                Fig3b => Quantity::NNm,
                Fig3c => Quantity::NMb,
                _ => Quantity::NNb,
            };
            spec(
                shifted,
                Axis::linear(P::CouplingG, 0.0, g_max, n),
                None,
                vec![q],
                true,
            )
        }
        Fig4a | Fig4b | Fig4c => {
            let q = match id {
                Fig4a => Quantity::NNm,
                Fig4b => Quantity::NMb,
                _ => Quantity::NNb,
            };
            spec(
                base,
                Axis::linear(P::DeltaN, -2.0 * wb, 2.0 * wb, n),
                barnett_family,
                vec![q],
                true,
            )
        }
        Fig5a | Fig5b | Fig5c => {
            let q = match id {
                Fig5a => Quantity::NNm,
                Fig5b => Quantity::NMb,
                _ => Quantity::NNb,
            };
            spec(fig2, temperatures, barnett_family, vec![q], true)
        }
        Fig6a | Fig6b | Fig6c => {
            let q = match id {
                Fig6a => Quantity::ENm,
                Fig6b => Quantity::EMb,
                _ => Quantity::ENb,
            };
            spec(fig2, temperatures, signed_family, vec![q], false)
        }
    }
}
