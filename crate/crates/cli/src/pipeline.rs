//! Simulation and inversion glue between a [`RunConfig`] and the core library.

use smt_core::forward::{
    add_noise, decompose, simulate_full_sphere, simulate_mode, simulate_radial, CenterGrid, DataKind, RadialPhantom,
    SmtData, SphereData, SphereRule,
};
use smt_core::inversion::{analytic_invert, invert_modes, invert_radial, Metrics, ReconstructionResult};
use smt_core::numerics::{gauss_legendre, Grid1D, SampledFn};

use crate::config::{Kind, Method, RunConfig};
use crate::error::{CliError, CliResult};

pub fn t_grid(cfg: &RunConfig) -> CliResult<Grid1D<f64>> {
    Ok(Grid1D::uniform(cfg.grid.t_min, cfg.grid.t_max, cfg.grid.nodes)?)
}

/// Radial data of the configured phantom, with noise if requested.
pub fn simulate_radial_data(cfg: &RunConfig) -> CliResult<SmtData<f64>> {
    let rule = gauss_legendre(cfg.quad_order)?;
    let f = cfg.phantom.radial()?;
    let data = simulate_radial(&f, cfg.dim, &t_grid(cfg)?, &rule)?;
    Ok(data.with_noise(cfg.noise.amplitude, cfg.noise.seed)?)
}

pub fn centers(cfg: &RunConfig) -> CliResult<CenterGrid<f64>> {
    Ok(CenterGrid::new(cfg.sphere.centers_polar, cfg.sphere.centers_azimuth)?)
}

/// Full-sphere data by surface quadrature. Each centre gets its own noise
/// stream, seeded `seed + centre index`.
pub fn simulate_sphere_data(cfg: &RunConfig) -> CliResult<SphereData<f64>> {
    let field = cfg.phantom.field()?;
    let (lo, hi, breaks) = field.support_hint();
    let rule = SphereRule::new(cfg.sphere.rule_polar, cfg.sphere.rule_azimuth)?.with_support(lo, hi, &breaks);
    let grid = t_grid(cfg)?;
    let mut data = simulate_full_sphere(&field, &centers(cfg)?, &grid, &rule)?;
    if cfg.noise.amplitude > 0.0 {
        let nt = grid.len();
        for c in 0..data.centers.len() {
            let row = SampledFn::new(grid.clone(), data.values[c * nt..(c + 1) * nt].to_vec(), "g")?;
            let noisy = add_noise(&row, cfg.noise.amplitude, cfg.noise.seed.wrapping_add(c as u64))?;
            data.values[c * nt..(c + 1) * nt].copy_from_slice(noisy.values());
        }
    }
    Ok(data)
}

pub fn invert_radial_data(cfg: &RunConfig, data: &SmtData<f64>) -> CliResult<ReconstructionResult<f64>> {
    let opts = cfg.inversion_options();
    Ok(match cfg.method {
        Method::Ode => invert_radial(data, &opts)?,
        Method::Analytic => analytic_invert(data, &opts)?,
    })
}

pub fn decompose_sphere_data(cfg: &RunConfig, data: &SphereData<f64>) -> CliResult<Vec<SmtData<f64>>> {
    Ok(decompose(data, cfg.q_max)?)
}

pub fn invert_mode_data(cfg: &RunConfig, modes: &[SmtData<f64>]) -> CliResult<Vec<ReconstructionResult<f64>>> {
    Ok(invert_modes(modes, &cfg.inversion_options())?)
}

/// Per-mode data computed directly from the phantom's mode profiles; modes
/// absent from the phantom are zero.
pub fn reference_mode_data(cfg: &RunConfig, kinds: &[DataKind]) -> CliResult<Vec<SampledFn<f64>>> {
    let rule = gauss_legendre(cfg.quad_order)?;
    let grid = t_grid(cfg)?;
    let modes = cfg.phantom.modes()?;
    kinds
        .iter()
        .map(|kind| {
            let found = modes.iter().find(|m| DataKind::Mode { q: m.q, s: m.s } == *kind);
            match found {
                Some(m) => Ok(simulate_mode(m, 3, &grid, &rule)?.samples),
                None => Ok(SampledFn::new(grid.clone(), vec![0.0; grid.len()], "zero")?),
            }
        })
        .collect()
}

/// Truth for a reconstruction: the radial phantom, or the matching mode profile (zero if absent).
pub fn truth_for(cfg: &RunConfig, mode: Option<(usize, usize)>) -> CliResult<Option<RadialPhantom<f64>>> {
    match (cfg.kind, mode) {
        (Kind::Radial, _) | (_, None) => Ok(Some(cfg.phantom.radial()?)),
        (Kind::Modes, Some((q, s))) => {
            Ok(cfg.phantom.modes()?.into_iter().find(|m| m.q == q && m.s == s).map(|m| m.profile))
        }
    }
}

/// Metrics on [a, b] clipped to the reconstructed radii.
pub fn metrics_on(profile: &SampledFn<f64>, truth: Option<&RadialPhantom<f64>>, a: f64, b: f64) -> CliResult<Metrics> {
    let g = profile.grid();
    let (lo, hi) = (a.max(g.first()), b.min(g.last()));
    if !(lo < hi) {
        return Err(CliError::Usage(format!(
            "interval [{a}, {b}] does not meet the reconstructed radii [{}, {}]",
            g.first(),
            g.last()
        )));
    }
    let eval = |r: f64| truth.map_or(0.0, |f| f.eval(r));
    Ok(smt_core::inversion::error_metrics(profile, eval, lo, hi)?)
}

/// Truth sampled on the reconstruction radii.
pub fn truth_samples(profile: &SampledFn<f64>, truth: Option<&RadialPhantom<f64>>) -> CliResult<SampledFn<f64>> {
    Ok(SampledFn::from_fn(profile.grid().clone(), |r| truth.map_or(0.0, |f| f.eval(r)), "truth")?)
}
