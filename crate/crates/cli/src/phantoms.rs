//! Built-in phantoms.

use serde::{Deserialize, Serialize};
use smt_core::forward::{ModeField, ModePhantom, RadialPhantom, Shape};

use crate::error::{CliError, CliResult};

/// A named phantom with its parameters; unspecified parameters take the
/// registry defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PhantomSpec {
    Gaussian {
        #[serde(default = "half")]
        center: f64,
        #[serde(default = "default_width")]
        width: f64,
        #[serde(default = "half")]
        amplitude: f64,
    },
    Bump {
        #[serde(default = "bump_a")]
        a: f64,
        #[serde(default = "bump_b")]
        b: f64,
    },
    Triangle {
        #[serde(default = "quarter")]
        a: f64,
        #[serde(default = "half")]
        peak: f64,
        #[serde(default = "three_quarters")]
        c: f64,
    },
    Cosine {
        #[serde(default = "default_freq")]
        freq: f64,
    },
    /// cos(freq r) in mode (0,1) plus a Gaussian in mode (1,2).
    TwoMode {
        #[serde(default = "default_freq")]
        freq: f64,
        #[serde(default = "two_mode_center")]
        center: f64,
        #[serde(default = "default_width")]
        width: f64,
        #[serde(default = "half")]
        amplitude: f64,
    },
}

fn half() -> f64 {
    0.5
}
fn quarter() -> f64 {
    0.25
}
fn three_quarters() -> f64 {
    0.75
}
fn default_width() -> f64 {
    0.05
}
fn bump_a() -> f64 {
    0.3
}
fn bump_b() -> f64 {
    0.6
}
fn default_freq() -> f64 {
    50.0
}
fn two_mode_center() -> f64 {
    0.7
}

impl Default for PhantomSpec {
    fn default() -> Self {
        PhantomSpec::Gaussian { center: half(), width: default_width(), amplitude: half() }
    }
}

/// One registry row: id, parameters with defaults, description.
pub struct RegistryEntry {
    pub id: &'static str,
    pub params: Vec<(&'static str, f64)>,
    pub description: &'static str,
}

pub fn registry() -> Vec<RegistryEntry> {
    vec![
        RegistryEntry {
            id: "gaussian",
            params: vec![("center", half()), ("width", default_width()), ("amplitude", half())],
            description: "amplitude * exp(-(r-center)^2 / (2 width^2)), radial",
        },
        RegistryEntry {
            id: "bump",
            params: vec![("a", bump_a()), ("b", bump_b())],
            description: "r^2 (1-r)^2 on (a, b), zero elsewhere, radial",
        },
        RegistryEntry {
            id: "triangle",
            params: vec![("a", quarter()), ("peak", half()), ("c", three_quarters())],
            description: "hat rising from a to 1 at peak, back to 0 at c, radial",
        },
        RegistryEntry {
            id: "cosine",
            params: vec![("freq", default_freq())],
            description: "cos(freq r) on [0, 1], radial",
        },
        RegistryEntry {
            id: "two-mode",
            params: vec![("freq", default_freq()), ("center", two_mode_center()), ("width", default_width()), ("amplitude", half())],
            description: "cos(freq r) Y_(0,1) + gaussian(center, width, amplitude) Y_(1,2), three dimensions only",
        },
    ]
}

/// Plain-text listing printed by `smt phantoms`.
pub fn listing() -> String {
    let mut out = String::new();
    for e in registry() {
        let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("{:<10} {:<48} {}\n", e.id, params.join(","), e.description));
    }
    out
}

impl PhantomSpec {
    pub fn id(&self) -> &'static str {
        match self {
            PhantomSpec::Gaussian { .. } => "gaussian",
            PhantomSpec::Bump { .. } => "bump",
            PhantomSpec::Triangle { .. } => "triangle",
            PhantomSpec::Cosine { .. } => "cosine",
            PhantomSpec::TwoMode { .. } => "two-mode",
        }
    }

    /// Parses `id[:key=value,...]`, e.g. `gaussian:center=0.6`.
    pub fn parse(s: &str) -> CliResult<Self> {
        let (id, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut map = serde_json::Map::new();
        map.insert("id".into(), serde_json::Value::String(id.trim().to_string()));
        for kv in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("phantom parameter `{kv}` is not key=value")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("phantom parameter `{k}` has non-numeric value `{v}`")))?;
            let num = serde_json::Number::from_f64(v)
                .ok_or_else(|| CliError::Usage(format!("phantom parameter `{k}` must be finite")))?;
            map.insert(k.trim().to_string(), serde_json::Value::Number(num));
        }
        serde_json::from_value(serde_json::Value::Object(map))
            .map_err(|e| CliError::Usage(format!("phantom `{s}`: {e}")))
    }

    /// True if the phantom is a radial function.
    pub fn is_radial(&self) -> bool {
        !matches!(self, PhantomSpec::TwoMode { .. })
    }

    pub fn radial(&self) -> CliResult<RadialPhantom<f64>> {
        let shape = match *self {
            PhantomSpec::Gaussian { center, width, amplitude } => Shape::Gaussian { center, width, amplitude },
            PhantomSpec::Bump { a, b } => Shape::Bump { a, b },
            PhantomSpec::Triangle { a, peak, c } => Shape::Triangle { a, peak, c },
            PhantomSpec::Cosine { freq } => Shape::Cosine { freq },
            PhantomSpec::TwoMode { .. } => {
                return Err(CliError::Usage("two-mode phantom is not radial; use kind = \"modes\"".into()))
            }
        };
        Ok(RadialPhantom::new(shape)?)
    }

    /// Mode content in three dimensions; a radial phantom f becomes the
    /// single mode (0,1) with profile f.
    pub fn modes(&self) -> CliResult<Vec<ModePhantom<f64>>> {
        match *self {
            PhantomSpec::TwoMode { freq, center, width, amplitude } => Ok(vec![
                ModePhantom::new(0, 1, RadialPhantom::new(Shape::Cosine { freq })?)?,
                ModePhantom::new(1, 2, RadialPhantom::gaussian(center, width, amplitude)?)?,
            ]),
            _ => Ok(vec![ModePhantom::new(0, 1, self.radial()?)?]),
        }
    }

    pub fn field(&self) -> CliResult<ModeField<f64>> {
        Ok(ModeField::new(self.modes()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_has_every_id() {
        let l = listing();
        for id in ["gaussian", "bump", "triangle", "cosine", "two-mode"] {
            assert!(l.contains(id));
        }
    }

    #[test]
    fn defaults() {
        assert_eq!(PhantomSpec::parse("triangle").unwrap(), PhantomSpec::Triangle { a: 0.25, peak: 0.5, c: 0.75 });
        assert_eq!(PhantomSpec::parse("bump").unwrap(), PhantomSpec::Bump { a: 0.3, b: 0.6 });
    }

    #[test]
    fn parse_overrides_and_rejects() {
        let p = PhantomSpec::parse("gaussian:center=0.6, width=0.05").unwrap();
        assert_eq!(p, PhantomSpec::Gaussian { center: 0.6, width: 0.05, amplitude: 0.5 });
        assert!(PhantomSpec::parse("gaussian:centre=0.6").is_err());
        assert!(PhantomSpec::parse("square").is_err());
        assert!(PhantomSpec::parse("bump:a=x").is_err());
    }

    #[test]
    fn radial_field_matches_profile() {
        let p = PhantomSpec::default();
        let f = p.radial().unwrap();
        let field = p.field().unwrap();
        for r in [0.3, 0.48, 0.55] {
            let y00 = 1.0 / (4.0 * std::f64::consts::PI).sqrt();
            assert!((field.eval([0.0, r, 0.0]) - y00 * f.eval(r)).abs() < 1e-14);
        }
    }
}
