//! Run configuration: TOML files, built-in presets and flag overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use smt_core::inversion::{EpsPrime, InversionOptions};
use smt_core::numerics::DiffMethod;

use crate::error::{CliError, CliResult};
use crate::phantoms::PhantomSpec;

/// Radial data, or full-sphere data split into spherical-harmonic modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Radial,
    Modes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Ode,
    Analytic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub nodes: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { t_min: 0.0001, t_max: 0.9999, nodes: 150 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseSpec {
    pub amplitude: f64,
    pub seed: u64,
}

/// Detector centres and the surface rule used to synthesize full-sphere data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SphereSpec {
    pub centers_polar: usize,
    pub centers_azimuth: usize,
    pub rule_polar: usize,
    pub rule_azimuth: usize,
}

impl Default for SphereSpec {
    fn default() -> Self {
        Self { centers_polar: 4, centers_azimuth: 8, rule_polar: 64, rule_azimuth: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NearOrigin {
    pub interval: [f64; 2],
    /// Relative L2 above this marks the interval as degraded.
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReportSpec {
    /// Radius intervals on which metrics are computed.
    pub intervals: Vec<[f64; 2]>,
    pub near_origin: Option<NearOrigin>,
}

impl Default for ReportSpec {
    fn default() -> Self {
        Self { intervals: vec![[0.05, 0.95]], near_origin: None }
    }
}

/// `"auto"` or a number in config files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EpsPrimeRepr", into = "EpsPrimeRepr")]
pub struct EpsPrimeSpec(pub EpsPrime);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EpsPrimeRepr {
    Value(f64),
    Word(String),
}

impl TryFrom<EpsPrimeRepr> for EpsPrimeSpec {
    type Error = String;
    fn try_from(r: EpsPrimeRepr) -> Result<Self, String> {
        match r {
            EpsPrimeRepr::Value(v) => Ok(EpsPrimeSpec(EpsPrime::Value(v))),
            EpsPrimeRepr::Word(w) => EpsPrimeSpec::parse(&w),
        }
    }
}

impl From<EpsPrimeSpec> for EpsPrimeRepr {
    fn from(e: EpsPrimeSpec) -> Self {
        match e.0 {
            EpsPrime::Auto => EpsPrimeRepr::Word("auto".into()),
            EpsPrime::Value(v) => EpsPrimeRepr::Value(v),
        }
    }
}

impl EpsPrimeSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        if s.trim() == "auto" {
            return Ok(EpsPrimeSpec(EpsPrime::Auto));
        }
        s.trim()
            .parse::<f64>()
            .map(|v| EpsPrimeSpec(EpsPrime::Value(v)))
            .map_err(|_| format!("eps_prime must be `auto` or a number, got `{s}`"))
    }
}

impl Default for EpsPrimeSpec {
    fn default() -> Self {
        EpsPrimeSpec(EpsPrime::Auto)
    }
}

/// Everything a simulate / invert / roundtrip run needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub name: String,
    pub dim: u32,
    pub kind: Kind,
    pub q_max: usize,
    pub method: Method,
    pub phantom: PhantomSpec,
    pub grid: GridSpec,
    pub quad_order: usize,
    pub diff: DiffMethod,
    pub eps: f64,
    pub eps_prime: EpsPrimeSpec,
    pub support_threshold_rel: f64,
    pub noise: NoiseSpec,
    pub sphere: SphereSpec,
    pub report: ReportSpec,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let inv = InversionOptions::default();
        Self {
            name: "custom".into(),
            dim: 3,
            kind: Kind::Radial,
            q_max: 1,
            method: Method::Ode,
            phantom: PhantomSpec::default(),
            grid: GridSpec::default(),
            quad_order: 64,
            diff: inv.diff,
            eps: inv.eps,
            eps_prime: EpsPrimeSpec(inv.eps_prime),
            support_threshold_rel: inv.support_threshold_rel,
            noise: NoiseSpec::default(),
            sphere: SphereSpec::default(),
            report: ReportSpec::default(),
            out: PathBuf::from("out"),
        }
    }
}

/// Built-in presets, one per figure setup.
pub const PRESETS: [(&str, &str); 9] = [
    ("fig1", include_str!("../presets/fig1.toml")),
    ("fig2", include_str!("../presets/fig2.toml")),
    ("fig3", include_str!("../presets/fig3.toml")),
    ("fig4", include_str!("../presets/fig4.toml")),
    ("fig5", include_str!("../presets/fig5.toml")),
    ("fig6", include_str!("../presets/fig6.toml")),
    ("fig7", include_str!("../presets/fig7.toml")),
    ("fig8", include_str!("../presets/fig8.toml")),
    ("fig9", include_str!("../presets/fig9.toml")),
];

/// Flag overrides shared by the run commands.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct Overrides {
    /// Preset name (fig1 … fig9) or path to a TOML config file.
    #[arg(long)]
    pub config: Option<String>,
    /// Odd space dimension n ≥ 3.
    #[arg(long)]
    pub dim: Option<u32>,
    /// Phantom as `id[:key=value,...]`.
    #[arg(long)]
    pub phantom: Option<String>,
    #[arg(long)]
    pub tmin: Option<f64>,
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long = "quad-order")]
    pub quad_order: Option<usize>,
    /// Derivative estimator as `method[:key=value,...]`
    /// (auto, stencil, polyfit, smoothed, trailing, causal).
    #[arg(long)]
    pub diff: Option<String>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// `auto` or a t value where the solve starts.
    #[arg(long = "eps-prime")]
    pub eps_prime: Option<String>,
    /// Uniform noise amplitude.
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long)]
    pub qmax: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `method[:key=value,...]` into a [`DiffMethod`].
pub fn parse_diff(s: &str) -> CliResult<DiffMethod> {
    let (name, rest) = s.split_once(':').unwrap_or((s, ""));
    let method = match name.trim() {
        "auto" => "auto",
        "stencil" | "central-stencil" => "central-stencil",
        "polyfit" | "local-polyfit" => "local-polyfit",
        "smoothed" => "smoothed",
        "trailing" => "trailing",
        "causal" => "causal",
        other => return Err(CliError::Usage(format!("unknown differentiation method `{other}`"))),
    };
    let mut map = serde_json::Map::new();
    map.insert("method".into(), method.into());
    for kv in rest.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("diff parameter `{kv}` is not key=value")))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("diff parameter `{k}` must be a non-negative integer")))?;
        map.insert(k.trim().to_string(), v.into());
    }
    serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| CliError::Usage(format!("diff `{s}`: {e}")))
}

impl RunConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    /// Loads a preset by name, or a file by path.
    pub fn load(name_or_path: &str) -> CliResult<Self> {
        if let Some((_, text)) = PRESETS.iter().find(|(n, _)| *n == name_or_path) {
            return Self::from_toml(text);
        }
        let path = Path::new(name_or_path);
        if !path.exists() {
            let names: Vec<&str> = PRESETS.iter().map(|p| p.0).collect();
            return Err(CliError::Usage(format!(
                "config `{name_or_path}` is neither a file nor a preset ({})",
                names.join(", ")
            )));
        }
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text)
    }

    /// Base config (preset, file or defaults) with flag overrides applied, validated.
    pub fn resolve(o: &Overrides) -> CliResult<Self> {
        let mut c = match &o.config {
            Some(s) => Self::load(s)?,
            None => Self::default(),
        };
        if let Some(v) = o.dim {
            c.dim = v;
        }
        if let Some(p) = &o.phantom {
            c.phantom = PhantomSpec::parse(p)?;
        }
        if let Some(v) = o.tmin {
            c.grid.t_min = v;
        }
        if let Some(v) = o.tmax {
            c.grid.t_max = v;
        }
        if let Some(v) = o.nodes {
            c.grid.nodes = v;
        }
        if let Some(v) = o.quad_order {
            c.quad_order = v;
        }
        if let Some(d) = &o.diff {
            c.diff = parse_diff(d)?;
        }
        if let Some(v) = o.eps {
            c.eps = v;
        }
        if let Some(e) = &o.eps_prime {
            c.eps_prime = EpsPrimeSpec::parse(e).map_err(CliError::Usage)?;
        }
        if let Some(v) = o.noise {
            c.noise.amplitude = v;
        }
        if let Some(v) = o.seed {
            c.noise.seed = v;
        }
        if let Some(v) = o.method {
            c.method = v;
        }
        if let Some(v) = o.kind {
            c.kind = v;
        }
        if let Some(v) = o.qmax {
            c.q_max = v;
        }
        if let Some(v) = &o.out {
            c.out = v.clone();
        }
        c.validate()?;
        Ok(c)
    }

    pub fn k(&self) -> usize {
        ((self.dim.max(3) - 3) / 2) as usize
    }

    /// Order of the highest data derivative the inversion needs.
    pub fn highest_derivative(&self) -> usize {
        let q = match self.kind {
            Kind::Radial => 0,
            Kind::Modes => self.q_max,
        };
        q + 2 * self.k() + 1
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Usage(m));
        if self.dim < 3 || self.dim % 2 == 0 {
            return bad(format!("dimension must be an odd integer >= 3, got {}", self.dim));
        }
        let g = &self.grid;
        if !(g.t_min > 0.0 && g.t_min < g.t_max && g.t_max < 1.0) {
            return bad(format!("grid needs 0 < t_min < t_max < 1, got [{}, {}]", g.t_min, g.t_max));
        }
        let need = 10 * self.highest_derivative();
        if g.nodes < need {
            return bad(format!(
                "{} nodes cannot support derivatives of order {}; need at least {need}",
                g.nodes,
                self.highest_derivative()
            ));
        }
        if self.quad_order == 0 {
            return bad("quad_order must be at least 1".into());
        }
        if !(0.0..1.0).contains(&self.eps) {
            return bad(format!("eps must lie in [0, 1), got {}", self.eps));
        }
        if let EpsPrime::Value(v) = self.eps_prime.0 {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("eps_prime must be a non-negative radius, got {v}"));
            }
        }
        if !(self.support_threshold_rel > 0.0 && self.support_threshold_rel < 1.0) {
            return bad(format!("support_threshold_rel must lie in (0, 1), got {}", self.support_threshold_rel));
        }
        if !(self.noise.amplitude.is_finite() && self.noise.amplitude >= 0.0) {
            return bad(format!("noise amplitude must be finite and >= 0, got {}", self.noise.amplitude));
        }
        match self.kind {
            Kind::Radial => {
                if !self.phantom.is_radial() {
                    return bad(format!("phantom `{}` needs kind = \"modes\"", self.phantom.id()));
                }
            }
            Kind::Modes => {
                if self.dim != 3 {
                    return bad(format!("mode data is supported in three dimensions only, got n = {}", self.dim));
                }
                if self.method != Method::Ode {
                    return bad("mode data is inverted with the ODE back-end only".into());
                }
                let s = &self.sphere;
                if s.centers_polar < self.q_max + 1 || s.centers_azimuth < 2 * self.q_max + 1 {
                    return bad(format!(
                        "a {}x{} centre grid cannot resolve degree {}",
                        s.centers_polar, s.centers_azimuth, self.q_max
                    ));
                }
                if s.rule_polar == 0 || s.rule_azimuth == 0 {
                    return bad("sphere rule needs positive node counts".into());
                }
            }
        }
        for &[a, b] in self.all_intervals().iter() {
            if !(0.0 <= a && a < b && b <= 1.0) {
                return bad(format!("report interval [{a}, {b}] must satisfy 0 <= a < b <= 1"));
            }
        }
        Ok(())
    }

    fn all_intervals(&self) -> Vec<[f64; 2]> {
        let mut v = self.report.intervals.clone();
        if let Some(n) = &self.report.near_origin {
            v.push(n.interval);
        }
        v
    }

    pub fn inversion_options(&self) -> InversionOptions {
        InversionOptions {
            diff: self.diff,
            eps: self.eps,
            eps_prime: self.eps_prime.0,
            support_threshold_rel: self.support_threshold_rel,
        }
    }
}
