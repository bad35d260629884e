//! Peak and plateau extraction from a sweep table.

use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Peak {
    pub quantity: String,
    /// Second-axis value of the curve, when the table has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2: Option<f64>,
    pub argmax: Option<f64>,
    pub max: Option<f64>,
    /// Contiguous axis-1 interval around the argmax where the value stays
    /// within 1% of the maximum.
    pub window: Option<[f64; 2]>,
}

type Row = Vec<Option<f64>>;

struct Table {
    axis2: bool,
    quantities: Vec<(usize, String)>,
    rows: Vec<Row>,
}

fn read_table(path: &Path) -> CliResult<Table> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| match e.kind() {
        csv::ErrorKind::Io(_) => match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::io(path, io),
            _ => unreachable!(),
        },
        _ => CliError::parse(path, e),
    })?;
    let header = rdr.headers().map_err(|e| CliError::parse(path, e))?.clone();
    let status = header
        .iter()
        .position(|h| h == "status")
        .ok_or_else(|| CliError::parse(path, "no `status` column"))?;
    if !(1..=2).contains(&status) {
        return Err(CliError::parse(
            path,
            "expected one or two axis columns before `status`",
        ));
    }
    let quantities = header
        .iter()
        .enumerate()
        .skip(status + 1)
        .filter(|(_, h)| *h != "stability_margin")
        .map(|(i, h)| (i, h.to_string()))
        .collect();

    let mut rows = Vec::new();
    for (n, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::parse(path, e))?;
        let row = rec
            .iter()
            .enumerate()
            .map(|(i, field)| {
                if i == status || field.is_empty() {
                    return Ok(None);
                }
                field.parse::<f64>().map(Some).map_err(|_| {
                    CliError::parse(path, format!("row {}: `{field}` is not a number", n + 1))
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        if row[0].is_none() || (status == 2 && row[1].is_none()) {
            return Err(CliError::parse(
                path,
                format!("row {}: missing axis value", n + 1),
            ));
        }
        rows.push(row);
    }
    Ok(Table {
        axis2: status == 2,
        quantities,
        rows,
    })
}

pub fn peaks_of_file(path: &Path) -> CliResult<Vec<Peak>> {
    let table = read_table(path)?;
    let mut curves: Vec<(Option<f64>, Vec<&Row>)> = Vec::new();
    for row in &table.rows {
        let key = if table.axis2 { row[1] } else { None };
        match curves.iter_mut().find(|(k, _)| *k == key) {
            Some((_, rows)) => rows.push(row),
            None => curves.push((key, vec![row])),
        }
    }

    let mut out = Vec::new();
    for (col, name) in &table.quantities {
        for (axis2, rows) in &curves {
            let points: Vec<(f64, Option<f64>)> = rows
                .iter()
                .map(|r| (r[0].unwrap_or(f64::NAN), r[*col]))
                .collect();
            let (argmax, max, window) = match peak(&points) {
                Some((x, m, w)) => (Some(x), Some(m), Some(w)),
                None => (None, None, None),
            };
            out.push(Peak {
                quantity: name.clone(),
                axis2: *axis2,
                argmax,
                max,
                window,
            });
        }
    }
    Ok(out)
}

/// (argmax, max, window) of a curve with gaps; the first maximum wins.
pub fn peak(points: &[(f64, Option<f64>)]) -> Option<(f64, f64, [f64; 2])> {
    let (i_max, m) = points
        .iter()
        .enumerate()
        .filter_map(|(i, (_, v))| v.map(|v| (i, v)))
        .fold(None, |best: Option<(usize, f64)>, (i, v)| match best {
            Some((_, b)) if b >= v => best,
            _ => Some((i, v)),
        })?;
    let threshold = m - 0.01 * m.abs();
    let inside = |i: usize| points[i].1.is_some_and(|v| v >= threshold);
    let mut lo = i_max;
    while lo > 0 && inside(lo - 1) {
        lo -= 1;
    }
    let mut hi = i_max;
    while hi + 1 < points.len() && inside(hi + 1) {
        hi += 1;
    }
    Some((points[i_max].0, m, [points[lo].0, points[hi].0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaps_bound_the_window() {
        let pts = [
            (0.0, Some(1.0)),
            (1.0, None),
            (2.0, Some(1.0)),
            (3.0, Some(0.995)),
        ];
        assert_eq!(peak(&pts), Some((0.0, 1.0, [0.0, 0.0])));
        let pts = [
            (0.0, Some(0.5)),
            (1.0, Some(1.0)),
            (2.0, Some(0.995)),
            (3.0, Some(0.2)),
        ];
        assert_eq!(peak(&pts), Some((1.0, 1.0, [1.0, 2.0])));
        assert_eq!(peak(&[(0.0, None)]), None);
    }
}
