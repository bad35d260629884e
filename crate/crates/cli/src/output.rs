//! Table, sidecar and report serialization.

use std::io::Write;

use cmm_core::{
    NonrecipResult, PairResult, ParamsFile, Quantity, SteadyState, SweepResult, SweepSpec,
    SystemParams,
};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const TOOL: &str = "cmm";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

/// Provenance document written next to every table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub tool: String,
    pub version: String,
    pub preset: Option<String>,
    pub columns: Vec<String>,
    /// Resolved base parameters, rad/s.
    pub params: SystemParams,
    pub params_over_2pi_hz: ParamsFile,
    /// Exact spec that produced the table; reloading it reproduces the table.
    pub spec: SweepSpec,
}

impl Sidecar {
    pub fn new(spec: &SweepSpec, preset: Option<&str>) -> Self {
        Sidecar {
            tool: TOOL.into(),
            version: VERSION.into(),
            preset: preset.map(str::to_string),
            columns: columns(spec),
            params: spec.base,
            params_over_2pi_hz: ParamsFile::from_params(&spec.base),
            spec: spec.clone(),
        }
    }
}

pub fn columns(spec: &SweepSpec) -> Vec<String> {
    let mut cols = vec![spec.axis1.parameter.name().to_string()];
    if let Some(a) = &spec.axis2 {
        cols.push(a.parameter.name().to_string());
    }
    cols.push("status".into());
    cols.push(Quantity::StabilityMargin.name().into());
    cols.extend(
        spec.output_quantities()
            .iter()
            .map(|q| q.name().to_string()),
    );
    cols
}

/// 17 significant digits: exact round trip for doubles.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn write_table(
    out: &mut dyn Write,
    spec: &SweepSpec,
    result: &SweepResult,
    format: Format,
) -> std::io::Result<()> {
    let quantities = spec.output_quantities();
    let cols = columns(spec);
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&cols)?;
            for row in &result.rows {
                let mut rec = vec![fmt_f64(row.axis1)];
                if spec.axis2.is_some() {
                    rec.push(cell(row.axis2));
                }
                rec.push(row.status.name().to_string());
                rec.push(cell(row.stability_margin));
                rec.extend(quantities.iter().map(|&q| cell(row.value(q))));
                w.write_record(&rec)?;
            }
            w.flush()
        }
        Format::Jsonl => {
            for row in &result.rows {
                let mut m = Map::new();
                let num = |x: Option<f64>| x.map_or(Value::Null, Value::from);
                m.insert(cols[0].clone(), Value::from(row.axis1));
                if spec.axis2.is_some() {
                    m.insert(cols[1].clone(), num(row.axis2));
                }
                m.insert("status".into(), Value::from(row.status.name()));
                m.insert(
                    Quantity::StabilityMargin.name().into(),
                    num(row.stability_margin),
                );
                for &q in &quantities {
                    m.insert(q.name().into(), num(row.value(q)));
                }
                serde_json::to_writer(&mut *out, &Value::Object(m))?;
                writeln!(out)?;
            }
            out.flush()
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PointReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub params_over_2pi_hz: ParamsFile,
    pub steady_state: SteadyState,
    pub stability_margin: f64,
    pub negativity: PairResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonreciprocity: Option<NonrecipReport>,
}

#[derive(Debug, Serialize)]
pub struct NonrecipReport {
    pub delta_b_magnitude: f64,
    #[serde(flatten)]
    pub result: NonrecipResult,
}

pub fn write_json_line(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    out.flush()
}
