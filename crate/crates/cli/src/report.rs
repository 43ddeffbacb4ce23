//! JSON run reports and gnuplot scripts.

use serde::Serialize;
use smt_core::forward::NoiseMeta;
use smt_core::inversion::{Backend, Metrics};

use crate::config::RunConfig;

#[derive(Clone, Debug, Serialize)]
pub struct DataSummary {
    pub layout: &'static str,
    pub nodes: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub centers: Option<usize>,
    pub noise: Option<NoiseMeta>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NearOriginReport {
    pub interval: (f64, f64),
    pub rel_l2: Option<f64>,
    pub abs_l2: f64,
    pub tolerance: f64,
    pub degraded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileReport {
    /// (q, s) for mode reconstructions.
    pub mode: Option<(usize, usize)>,
    pub method: Backend,
    pub eps_prime: f64,
    pub truth: String,
    pub metrics: Vec<Metrics>,
    pub near_origin: Option<NearOriginReport>,
    pub profile_file: String,
    pub truth_file: Option<String>,
}

/// Largest deviation of decomposed mode data from directly simulated mode data.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    pub mode: (usize, usize),
    pub max_abs_error: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub simulate_s: Option<f64>,
    pub invert_s: Option<f64>,
    pub total_s: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: RunConfig,
    pub data: DataSummary,
    pub profiles: Vec<ProfileReport>,
    pub decomposition: Vec<DecompositionCheck>,
    pub outputs: Vec<String>,
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// True if any near-origin interval is flagged degraded.
    pub fn degraded_near_origin(&self) -> bool {
        self.profiles.iter().any(|p| p.near_origin.as_ref().is_some_and(|n| n.degraded))
    }
}

/// gnuplot script overlaying truth and reconstruction for every profile.
pub fn gnuplot_script(title: &str, profiles: &[ProfileReport]) -> String {
    let mut s = String::new();
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str(&format!("set output '{title}.png'\n"));
    s.push_str("set datafile separator ','\n");
    s.push_str("set xlabel 'r'\nset key top right\nset grid\n");
    if profiles.len() > 1 {
        s.push_str(&format!("set multiplot layout {},1 title '{title}'\n", profiles.len()));
    } else {
        s.push_str(&format!("set title '{title}'\n"));
    }
    for p in profiles {
        let label = match p.mode {
            Some((q, s)) => format!("mode ({q},{s})"),
            None => "f".into(),
        };
        let mut parts = Vec::new();
        if let Some(t) = &p.truth_file {
            parts.push(format!("'{t}' every ::1 using 1:2 with lines lw 2 title '{label} truth'"));
        }
        parts.push(format!("'{}' every ::1 using 1:2 with points pt 7 ps 0.5 title '{label} reconstruction'", p.profile_file));
        s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    }
    if profiles.len() > 1 {
        s.push_str("unset multiplot\n");
    }
    s
}
