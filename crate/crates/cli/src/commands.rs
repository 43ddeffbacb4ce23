//! The six subcommands, as library functions.

use std::path::{Path, PathBuf};
use std::time::Instant;

use smt_core::forward::{DataKind, SmtData};
use smt_core::inversion::ReconstructionResult;
use smt_core::specfun::ode_coeffs;

use crate::config::{Kind, RunConfig};
use crate::error::{CliError, CliResult};
use crate::identities::{self, IdentityReport};
use crate::io::{read_data, sphere_csv, two_column_csv, write_atomic, DataFile};
use crate::phantoms;
use crate::pipeline::{self, metrics_on, truth_for, truth_samples};
use crate::report::{gnuplot_script, DataSummary, DecompositionCheck, NearOriginReport, ProfileReport, Report, Timing};

pub const DATA_FILE: &str = "data.csv";
pub const REPORT_FILE: &str = "report.json";
pub const PLOT_FILE: &str = "plot.gp";

pub fn phantoms() -> String {
    phantoms::listing()
}

/// Writes `data.csv` into the output directory.
pub fn simulate(cfg: &RunConfig) -> CliResult<PathBuf> {
    let text = match cfg.kind {
        Kind::Radial => two_column_csv("t,value", &pipeline::simulate_radial_data(cfg)?.samples),
        Kind::Modes => sphere_csv(&pipeline::simulate_sphere_data(cfg)?),
    };
    let path = cfg.out.join(DATA_FILE);
    write_atomic(&path, text.as_bytes())?;
    Ok(path)
}

fn suffix(mode: Option<(usize, usize)>) -> String {
    match mode {
        Some((q, s)) => format!("_q{q}_s{s}"),
        None => String::new(),
    }
}

/// Files to write, kept in memory until every step has succeeded.
struct Pending(Vec<(PathBuf, String)>);

impl Pending {
    fn push(&mut self, dir: &Path, name: &str, text: String) -> String {
        self.0.push((dir.join(name), text));
        name.to_string()
    }

    fn flush(self) -> CliResult<Vec<String>> {
        let mut names = Vec::new();
        for (path, text) in self.0 {
            write_atomic(&path, text.as_bytes())?;
            names.push(path.display().to_string());
        }
        Ok(names)
    }
}

fn profile_reports(
    cfg: &RunConfig,
    results: &[ReconstructionResult<f64>],
    with_truth_files: bool,
    pending: &mut Pending,
) -> CliResult<Vec<ProfileReport>> {
    let mut out = Vec::new();
    for res in results {
        let truth = truth_for(cfg, res.mode)?;
        let metrics = cfg
            .report
            .intervals
            .iter()
            .map(|&[a, b]| metrics_on(&res.profile, truth.as_ref(), a, b))
            .collect::<CliResult<Vec<_>>>()?;
        let near_origin = match &cfg.report.near_origin {
            Some(n) => {
                let m = metrics_on(&res.profile, truth.as_ref(), n.interval[0], n.interval[1])?;
                let degraded = m.rel_l2.map_or(m.abs_l2 > n.tolerance, |r| r > n.tolerance);
                Some(NearOriginReport {
                    interval: m.interval,
                    rel_l2: m.rel_l2,
                    abs_l2: m.abs_l2,
                    tolerance: n.tolerance,
                    degraded,
                })
            }
            None => None,
        };
        let sfx = suffix(res.mode);
        let profile_file = pending.push(&cfg.out, &format!("profile{sfx}.csv"), two_column_csv("r,value", &res.profile));
        let truth_file = if with_truth_files {
            let t = truth_samples(&res.profile, truth.as_ref())?;
            Some(pending.push(&cfg.out, &format!("truth{sfx}.csv"), two_column_csv("r,value", &t)))
        } else {
            None
        };
        out.push(ProfileReport {
            mode: res.mode,
            method: res.method,
            eps_prime: res.eps_prime,
            truth: truth.as_ref().map_or_else(|| "zero".to_string(), |f| f.label().to_string()),
            metrics,
            near_origin,
            profile_file,
            truth_file,
        });
    }
    Ok(out)
}

fn radial_summary(d: &SmtData<f64>) -> DataSummary {
    let g = d.samples.grid();
    DataSummary { layout: "radial", nodes: g.len(), t_min: g.first(), t_max: g.last(), centers: None, noise: d.noise.clone() }
}

fn sphere_summary(d: &smt_core::forward::SphereData<f64>, cfg: &RunConfig) -> DataSummary {
    let g = &d.t_grid;
    let noise = (cfg.noise.amplitude > 0.0).then(|| smt_core::forward::NoiseMeta {
        distribution: "uniform".into(),
        amplitude: cfg.noise.amplitude,
        seed: cfg.noise.seed,
    });
    DataSummary {
        layout: "full-sphere",
        nodes: g.len(),
        t_min: g.first(),
        t_max: g.last(),
        centers: Some(d.centers.len()),
        noise,
    }
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

/// Inverts a data file; writes profile CSVs and `report.json`.
pub fn invert(cfg: &RunConfig, data_path: &Path) -> CliResult<Report> {
    let start = Instant::now();
    let file = read_data(data_path)?;
    let (results, data) = match file {
        DataFile::Radial(samples) => {
            if cfg.kind != Kind::Radial {
                return Err(CliError::Data(format!("{}: radial data, but kind = \"modes\"", data_path.display())));
            }
            let data = SmtData::new(cfg.dim, DataKind::Radial, samples)?;
            (vec![pipeline::invert_radial_data(cfg, &data)?], radial_summary(&data))
        }
        DataFile::Sphere(sphere) => {
            if cfg.kind != Kind::Modes {
                return Err(CliError::Data(format!("{}: full-sphere data needs kind = \"modes\"", data_path.display())));
            }
            let modes = pipeline::decompose_sphere_data(cfg, &sphere)?;
            (pipeline::invert_mode_data(cfg, &modes)?, sphere_summary(&sphere, cfg))
        }
    };
    let invert_s = secs(start);
    let mut pending = Pending(Vec::new());
    let profiles = profile_reports(cfg, &results, false, &mut pending)?;
    finish(cfg, "invert", data, profiles, Vec::new(), pending, Timing { simulate_s: None, invert_s: Some(invert_s), total_s: 0.0 }, start, false)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    cfg: &RunConfig,
    command: &'static str,
    data: DataSummary,
    profiles: Vec<ProfileReport>,
    decomposition: Vec<DecompositionCheck>,
    mut pending: Pending,
    mut timing: Timing,
    start: Instant,
    plot: bool,
) -> CliResult<Report> {
    if plot {
        pending.push(&cfg.out, PLOT_FILE, gnuplot_script(&cfg.name, &profiles));
    }
    let mut report = Report {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        config: cfg.clone(),
        data,
        profiles,
        decomposition,
        outputs: Vec::new(),
        timing: Timing::default(),
    };
    report.outputs = pending.0.iter().map(|(p, _)| p.display().to_string()).collect();
    report.outputs.push(cfg.out.join(REPORT_FILE).display().to_string());
    pending.flush()?;
    timing.total_s = secs(start);
    report.timing = timing;
    write_atomic(&cfg.out.join(REPORT_FILE), report.to_json().as_bytes())?;
    Ok(report)
}

/// Simulate, add noise, invert and score; writes data, truth and profile
/// CSVs, a gnuplot script and `report.json`.
pub fn roundtrip(cfg: &RunConfig) -> CliResult<Report> {
    let start = Instant::now();
    let mut pending = Pending(Vec::new());
    let mut timing = Timing::default();
    let (results, data, decomposition) = match cfg.kind {
        Kind::Radial => {
            let data = pipeline::simulate_radial_data(cfg)?;
            timing.simulate_s = Some(secs(start));
            pending.push(&cfg.out, DATA_FILE, two_column_csv("t,value", &data.samples));
            let t = Instant::now();
            let res = pipeline::invert_radial_data(cfg, &data)?;
            timing.invert_s = Some(secs(t));
            (vec![res], radial_summary(&data), Vec::new())
        }
        Kind::Modes => {
            let sphere = pipeline::simulate_sphere_data(cfg)?;
            timing.simulate_s = Some(secs(start));
            pending.push(&cfg.out, DATA_FILE, sphere_csv(&sphere));
            let t = Instant::now();
            let modes = pipeline::decompose_sphere_data(cfg, &sphere)?;
            let results = pipeline::invert_mode_data(cfg, &modes)?;
            timing.invert_s = Some(secs(t));
            let kinds: Vec<DataKind> = modes.iter().map(|m| m.kind).collect();
            let reference = pipeline::reference_mode_data(cfg, &kinds)?;
            let checks = modes
                .iter()
                .zip(&reference)
                .map(|(m, r)| {
                    let DataKind::Mode { q, s } = m.kind else { unreachable!("decompose yields modes") };
                    let err = m.samples.values().iter().zip(r.values()).fold(0.0f64, |e, (a, b)| e.max((a - b).abs()));
                    DecompositionCheck { mode: (q, s), max_abs_error: err }
                })
                .collect();
            (results, sphere_summary(&sphere, cfg), checks)
        }
    };
    let profiles = profile_reports(cfg, &results, true, &mut pending)?;
    finish(cfg, "roundtrip", data, profiles, decomposition, pending, timing, start, true)
}

/// Runs both identity suites; writes `identities.json` into `out` if given.
pub fn identities(max_k: usize, max_q: usize, out: Option<&Path>) -> CliResult<IdentityReport> {
    let report = identities::run(max_k, max_q)?;
    if let Some(dir) = out {
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        write_atomic(&dir.join("identities.json"), text.as_bytes())?;
    }
    Ok(report)
}

/// Coefficient table of the order-(q+k) equation for dimension n.
pub fn coeffs(n: u32, q: usize) -> CliResult<serde_json::Value> {
    if n < 3 || n % 2 == 0 {
        return Err(CliError::Usage(format!("dimension must be an odd integer >= 3, got {n}")));
    }
    let k = ((n - 3) / 2) as usize;
    let mut v = ode_coeffs(q + k).to_json(Some((q, k)));
    v["n"] = n.into();
    v["q"] = q.into();
    v["k"] = k.into();
    if q > 0 {
        if let Some(obj) = v.as_object_mut() {
            obj.remove("prefactor_radial");
        }
    }
    Ok(v)
}
