//! Grid evaluation of entanglement and nonreciprocity.
//!
//! Every grid point is an independent pure computation, so the result table
//! does not depend on evaluation order or worker count. Rows are laid out
//! row-major with axis 1 as the slow index.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::negativity::PairSelector;
use crate::params::{Parameter, SystemParams};
use crate::pipeline::{combine, evaluate, NonrecipResult, PairResult};

/// Grid density used by the figure presets.
pub const DEFAULT_POINTS: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub parameter: Parameter,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Axis {
    pub fn linear(parameter: Parameter, start: f64, stop: f64, count: usize) -> Self {
        Axis {
            parameter,
            start,
            stop,
            count,
            scale: Scale::Linear,
        }
    }

    /// Grid values; both endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64) / ((n - 1) as f64)
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidSpec(format!(
                "axis `{}` needs at least 2 points, got {}",
                self.parameter, self.count
            )));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "axis `{}` has non-finite bounds",
                self.parameter
            )));
        }
        Ok(())
    }
}

/// Output quantities, in canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    ENm,
    EMb,
    ENb,
    NNm,
    NMb,
    NNb,
    StabilityMargin,
}

impl Quantity {
    pub const ALL: [Quantity; 7] = [
        Quantity::ENm,
        Quantity::EMb,
        Quantity::ENb,
        Quantity::NNm,
        Quantity::NMb,
        Quantity::NNb,
        Quantity::StabilityMargin,
    ];
    pub const ENTANGLEMENT: [Quantity; 3] = [Quantity::ENm, Quantity::EMb, Quantity::ENb];
    pub const NONRECIPROCITY: [Quantity; 3] = [Quantity::NNm, Quantity::NMb, Quantity::NNb];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::ENm => "e_nm",
            Quantity::EMb => "e_mb",
            Quantity::ENb => "e_nb",
            Quantity::NNm => "n_nm",
            Quantity::NMb => "n_mb",
            Quantity::NNb => "n_nb",
            Quantity::StabilityMargin => "stability_margin",
        }
    }

    pub fn pair(self) -> Option<PairSelector> {
        match self {
            Quantity::ENm | Quantity::NNm => Some(PairSelector::Nm),
            Quantity::EMb | Quantity::NMb => Some(PairSelector::Mb),
            Quantity::ENb | Quantity::NNb => Some(PairSelector::Nb),
            Quantity::StabilityMargin => None,
        }
    }

    pub fn is_nonrecip(self) -> bool {
        matches!(self, Quantity::NNm | Quantity::NMb | Quantity::NNb)
    }

    pub fn is_entanglement(self) -> bool {
        matches!(self, Quantity::ENm | Quantity::EMb | Quantity::ENb)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown quantity `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub quantities: Vec<Quantity>,
    /// Evaluate each point at ±|Δ_B| and report contrast ratios.
    pub nonrecip_pairing: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.base
            .validate()
            .map_err(|e| Error::InvalidSpec(format!("base parameters: {e}")))?;
        if self.quantities.is_empty() {
            return Err(Error::InvalidSpec("empty quantity set".into()));
        }
        let axes = std::iter::once(&self.axis1).chain(self.axis2.as_ref());
        for axis in axes {
            axis.validate()?;
            // Rejects parameters that do not exist in this drive mode.
            let mut probe = self.base;
            probe.set(axis.parameter, axis.start)?;
        }
        if let Some(a2) = &self.axis2 {
            if a2.parameter == self.axis1.parameter {
                return Err(Error::InvalidSpec(format!(
                    "both axes sweep `{}`",
                    a2.parameter
                )));
            }
        }
        if !self.nonrecip_pairing {
            if let Some(q) = self.quantities.iter().find(|q| q.is_nonrecip()) {
                return Err(Error::InvalidSpec(format!(
                    "`{q}` requires nonrecip_pairing"
                )));
            }
        }
        Ok(())
    }

    /// Requested output quantities in canonical order, without duplicates and
    /// without the always-present stability margin.
    pub fn output_quantities(&self) -> Vec<Quantity> {
        let mut q: Vec<Quantity> = self
            .quantities
            .iter()
            .copied()
            .filter(|q| *q != Quantity::StabilityMargin)
            .collect();
        q.sort();
        q.dedup();
        q
    }

    pub fn len(&self) -> usize {
        self.axis1.count * self.axis2.map_or(1, |a| a.count)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameters at the flat grid index `index` (row-major, axis 1 slow).
    pub fn point(&self, index: usize, axis1: &[f64], axis2: Option<&[f64]>) -> Result<SweepPoint> {
        let n2 = axis2.map_or(1, |v| v.len());
        let (i1, i2) = (index / n2, index % n2);
        let mut params = self.base;
        params.set(self.axis1.parameter, axis1[i1])?;
        let x2 = match (&self.axis2, axis2) {
            (Some(a), Some(values)) => {
                params.set(a.parameter, values[i2])?;
                Some(values[i2])
            }
            _ => None,
        };
        Ok(SweepPoint {
            axis1: axis1[i1],
            axis2: x2,
            params,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepPoint {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub params: SystemParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Ok,
    Unstable,
    Nonconverged,
}

impl PointStatus {
    pub fn name(self) -> &'static str {
        match self {
            PointStatus::Ok => "ok",
            PointStatus::Unstable => "unstable",
            PointStatus::Nonconverged => "nonconverged",
        }
    }
}

impl FromStr for PointStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ok" => Ok(PointStatus::Ok),
            "unstable" => Ok(PointStatus::Unstable),
            "nonconverged" => Ok(PointStatus::Nonconverged),
            other => Err(Error::InvalidSpec(format!("unknown status `{other}`"))),
        }
    }
}

/// Results at one grid point. Quantities are only present for `Ok` rows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub status: PointStatus,
    /// Worst margin over the evaluated branches; `None` if the steady state
    /// never converged.
    pub stability_margin: Option<f64>,
    /// Unpaired sweeps: entanglement at the point's own Δ_B.
    pub entanglement: Option<PairResult>,
    /// Paired sweeps: both branches and their contrast ratios.
    pub nonrecip: Option<NonrecipResult>,
}

impl SweepRow {
    /// Value of `q` at this point; entanglement of a paired row refers to the
    /// +|Δ_B| branch.
    pub fn value(&self, q: Quantity) -> Option<f64> {
        if q == Quantity::StabilityMargin {
            return self.stability_margin;
        }
        let pair = q.pair()?;
        if q.is_nonrecip() {
            return self.nonrecip.map(|n| n.n(pair));
        }
        self.entanglement
            .or(self.nonrecip.map(|n| n.plus))
            .map(|r| r.e(pair))
    }

    /// Entanglement on the −|Δ_B| branch of a paired row.
    pub fn value_minus(&self, q: Quantity) -> Option<f64> {
        let pair = q.pair()?;
        if !q.is_entanglement() {
            return None;
        }
        self.nonrecip.map(|n| n.minus.e(pair))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub axis1_values: Vec<f64>,
    pub axis2_values: Option<Vec<f64>>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Rows of the curve at the `i2`-th axis-2 value (all rows if there is
    /// no second axis), in axis-1 order.
    pub fn curve(&self, i2: usize) -> Vec<&SweepRow> {
        let n2 = self.axis2_values.as_ref().map_or(1, Vec::len);
        self.rows.iter().skip(i2).step_by(n2).collect()
    }

    pub fn column(&self, q: Quantity) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.value(q)).collect()
    }
}

/// How the grid is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon worker pool; `None` uses the global pool.
    #[cfg(feature = "parallel")]
    Parallel {
        workers: Option<usize>,
    },
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel { workers: None }
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Worker-count request from a CLI flag; `Some(1)` forces sequential.
    pub fn with_workers(workers: Option<usize>) -> Self {
        match workers {
            Some(1) => Execution::Sequential,
            #[cfg(feature = "parallel")]
            w => Execution::Parallel { workers: w },
            #[cfg(not(feature = "parallel"))]
            _ => Execution::Sequential,
        }
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_sweep_with(spec, Execution::default())
}

pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<SweepResult> {
    spec.validate()?;
    let axis1 = spec.axis1.values();
    let axis2 = spec.axis2.map(|a| a.values());
    let n = spec.len();
    let eval = |i: usize| -> Result<SweepRow> {
        let point = spec.point(i, &axis1, axis2.as_deref())?;
        evaluate_row(&point, spec.nonrecip_pairing)
    };

    let rows: Result<Vec<SweepRow>> = match exec {
        Execution::Sequential => (0..n).map(eval).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel { workers } => {
            use rayon::prelude::*;
            let go = || (0..n).into_par_iter().map(eval).collect();
            match workers {
                None => go(),
                Some(w) => rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Error::InvalidSpec(format!("worker pool: {e}")))?
                    .install(go),
            }
        }
    };

    Ok(SweepResult {
        axis1_values: axis1,
        axis2_values: axis2,
        rows: rows?,
    })
}

enum Outcome {
    Ok { margin: f64, pairs: PairResult },
    Unstable { margin: f64 },
    Nonconverged,
}

fn outcome(params: &SystemParams) -> Result<Outcome> {
    match evaluate(params) {
        Ok(e) => Ok(Outcome::Ok {
            margin: e.margin,
            pairs: e.pairs,
        }),
        Err(Error::Unstable { margin, .. }) => Ok(Outcome::Unstable { margin }),
        Err(Error::NonConvergence { .. }) => Ok(Outcome::Nonconverged),
        Err(e) => Err(e),
    }
}

/// Evaluates a single grid point into a row.
pub fn evaluate_row(point: &SweepPoint, paired: bool) -> Result<SweepRow> {
    let mut row = SweepRow {
        axis1: point.axis1,
        axis2: point.axis2,
        status: PointStatus::Ok,
        stability_margin: None,
        entanglement: None,
        nonrecip: None,
    };
    if !paired {
        match outcome(&point.params)? {
            Outcome::Ok { margin, pairs } => {
                row.stability_margin = Some(margin);
                row.entanglement = Some(pairs);
            }
            Outcome::Unstable { margin } => {
                row.status = PointStatus::Unstable;
                row.stability_margin = Some(margin);
            }
            Outcome::Nonconverged => row.status = PointStatus::Nonconverged,
        }
        return Ok(row);
    }

    let magnitude = point.params.delta_b.abs();
    let plus = outcome(&SystemParams {
        delta_b: magnitude,
        ..point.params
    })?;
    let minus = outcome(&SystemParams {
        delta_b: -magnitude,
        ..point.params
    })?;
    match (plus, minus) {
        (
            Outcome::Ok {
                margin: mp,
                pairs: p,
            },
            Outcome::Ok {
                margin: mm,
                pairs: m,
            },
        ) => {
            row.stability_margin = Some(mp.max(mm));
            row.nonrecip = Some(combine(p, m));
        }
        (Outcome::Nonconverged, _) | (_, Outcome::Nonconverged) => {
            row.status = PointStatus::Nonconverged;
        }
        (a, b) => {
            let margin = |o: &Outcome| match o {
                Outcome::Ok { margin, .. } | Outcome::Unstable { margin } => *margin,
                Outcome::Nonconverged => f64::NAN,
            };
            row.status = PointStatus::Unstable;
            row.stability_margin = Some(margin(&a).max(margin(&b)));
        }
    }
    Ok(row)
}
