//! CSV data files and atomic output.

use std::fs;
use std::path::Path;

use smt_core::forward::{CenterGrid, SphereData};
use smt_core::numerics::{Grid1D, SampledFn};

use crate::error::{CliError, CliResult};

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `bytes` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".tmp");
    let tmp = path.with_file_name(name);
    fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::io(path, e)
    })
}

/// Two-column CSV with the given header, e.g. `t,value` or `r,value`.
pub fn two_column_csv(header: &str, s: &SampledFn<f64>) -> String {
    let mut out = String::with_capacity(40 * (s.len() + 1));
    out.push_str(header);
    out.push('\n');
    for (x, v) in s.iter() {
        out.push_str(&fmt_num(x));
        out.push(',');
        out.push_str(&fmt_num(v));
        out.push('\n');
    }
    out
}

/// `theta,phi,t,value`, centre-major.
pub fn sphere_csv(d: &SphereData<f64>) -> String {
    let ts = d.t_grid.points();
    let mut out = String::with_capacity(80 * (d.values.len() + 1));
    out.push_str("theta,phi,t,value\n");
    for (c, (theta, phi, _)) in d.centers.nodes().enumerate() {
        for (i, &t) in ts.iter().enumerate() {
            let row = [theta, phi, t, d.at(c, i)].map(fmt_num);
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

/// Contents of a data file.
#[derive(Debug)]
pub enum DataFile {
    Radial(SampledFn<f64>),
    Sphere(SphereData<f64>),
}

fn parse_rows(text: &str, path: &Path, width: usize) -> CliResult<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != width {
            return Err(CliError::Data(format!(
                "{}:{}: expected {width} fields, found {}",
                path.display(),
                ln + 1,
                fields.len()
            )));
        }
        let row: Result<Vec<f64>, _> = fields.iter().map(|f| f.trim().parse::<f64>()).collect();
        let row = row.map_err(|e| CliError::Data(format!("{}:{}: {e}", path.display(), ln + 1)))?;
        if row.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Data(format!("{}:{}: non-finite value", path.display(), ln + 1)));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn data_err(path: &Path, msg: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}: {msg}", path.display()))
}

pub fn read_data(path: &Path) -> CliResult<DataFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let header = text.lines().next().unwrap_or("").trim();
    match header {
        "t,value" => {
            let rows = parse_rows(&text, path, 2)?;
            let grid = Grid1D::from_points(rows.iter().map(|r| r[0]).collect()).map_err(|e| data_err(path, e))?;
            let s = SampledFn::new(grid, rows.iter().map(|r| r[1]).collect(), "g").map_err(|e| data_err(path, e))?;
            Ok(DataFile::Radial(s))
        }
        "theta,phi,t,value" => read_sphere(&text, path).map(DataFile::Sphere),
        other => Err(data_err(path, format!("unrecognized header `{other}` (expected `t,value` or `theta,phi,t,value`)"))),
    }
}

fn distinct(vals: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for v in vals {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn read_sphere(text: &str, path: &Path) -> CliResult<SphereData<f64>> {
    let rows = parse_rows(text, path, 4)?;
    let thetas = distinct(rows.iter().map(|r| r[0]));
    let phis = distinct(rows.iter().map(|r| r[1]));
    let ts = distinct(rows.iter().map(|r| r[2]));
    let centers = CenterGrid::<f64>::new(thetas.len(), phis.len()).map_err(|e| data_err(path, e))?;
    if rows.len() != centers.len() * ts.len() {
        return Err(data_err(path, format!("{} rows do not fill a {}x{}x{} grid", rows.len(), thetas.len(), phis.len(), ts.len())));
    }
    let grid = Grid1D::from_points(ts.clone()).map_err(|e| data_err(path, e))?;
    let nt = ts.len();
    for (c, (theta, phi, _)) in centers.nodes().enumerate() {
        for (i, &t) in ts.iter().enumerate() {
            let r = &rows[c * nt + i];
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12;
            if !(close(r[0], theta) && close(r[1], phi) && r[2] == t) {
                return Err(data_err(
                    path,
                    "full-sphere data must lie on a Gauss-Legendre x uniform centre grid, centre-major",
                ));
            }
        }
    }
    SphereData::new(centers, grid, rows.iter().map(|r| r[3]).collect()).map_err(|e| data_err(path, e))
}
