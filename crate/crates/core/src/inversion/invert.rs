//! Recovery of radial profiles and mode profiles from partial radial data.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{error_metrics, Metrics};
use super::ode::{cumulative_integral, OdeProblem};
use super::rhs::{assemble_rhs, detect_support_gap};
use crate::error::{Error, Result};
use crate::forward::operators::{mode_scale, radial_scale};
use crate::forward::{DataKind, SmtData};
use crate::numerics::{differentiate, DiffMethod, Grid1D, SampledFn};
use crate::scalar::Real;
use crate::specfun::{mode_prefactor, ode_coeffs, radial_prefactor};

/// How ε′ is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsPrime {
    /// Largest grid point below which |h| ≤ threshold · max |h|.
    Auto,
    /// Supplied value; the solve starts at the last grid point not above it.
    Value(f64),
}

/// Which solver produced a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Ode,
    AnalyticK0,
    AnalyticK1,
    AnalyticK2,
}

/// Options shared by all inversion back-ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InversionOptions {
    pub diff: DiffMethod,
    /// Profiles are reported on radii r ≥ eps (t ≤ 1 − eps).
    pub eps: f64,
    pub eps_prime: EpsPrime,
    /// Relative threshold for automatic ε′ detection.
    pub support_threshold_rel: f64,
}

impl Default for InversionOptions {
    fn default() -> Self {
        Self { diff: DiffMethod::Auto, eps: 0.0, eps_prime: EpsPrime::Auto, support_threshold_rel: 1e-14 }
    }
}

/// A recovered profile f(r) (or f_{q,s}(r)) on radii 1 − t_i.
#[derive(Clone, Debug)]
pub struct ReconstructionResult<T> {
    pub profile: SampledFn<T>,
    pub eps_prime: T,
    pub method: Backend,
    pub mode: Option<(usize, usize)>,
    pub metrics: Vec<Metrics>,
}

impl<T: Real> ReconstructionResult<T> {
    /// Appends metrics against `truth` on [a, b].
    pub fn evaluate(&mut self, truth: impl Fn(T) -> T, a: T, b: T) -> Result<&Metrics> {
        let m = error_metrics(&self.profile, truth, a, b)?;
        self.metrics.push(m);
        Ok(self.metrics.last().expect("just pushed"))
    }
}

/// Data grid, scaled h samples and the IVP window.
struct Prepared<T> {
    h: SampledFn<T>,
    start: usize,
    end: usize,
    eps_prime: T,
    zero: bool,
}

fn prepare<T: Real>(data: &SmtData<T>, opts: &InversionOptions, scale: impl Fn(T) -> Result<T>) -> Result<Prepared<T>> {
    let grid = data.samples.grid();
    let ts = grid.points();
    let values = data.samples.iter().map(|(t, g)| Ok(g * scale(t)?)).collect::<Result<Vec<T>>>()?;
    let h = SampledFn::new(grid.clone(), values, format!("h {}", data.samples.label()))?;
    let max = h.max_abs();
    let n = ts.len();

    let t_end = T::one() - T::lit(opts.eps);
    let slack = T::lit(1e-12);
    let end = match ts.iter().rposition(|&t| t <= t_end + slack) {
        Some(i) => i,
        None => {
            return Err(Error::EmptyWindow { eps_prime: ts[0].to_f64().unwrap_or(f64::NAN), t_end: t_end.to_f64().unwrap_or(f64::NAN) })
        }
    };
    if max == T::zero() {
        return Ok(Prepared { h, start: end, end, eps_prime: ts[end], zero: true });
    }
    let (start, eps_prime) = match opts.eps_prime {
        EpsPrime::Auto => {
            let e = detect_support_gap(&h, T::lit(opts.support_threshold_rel) * max);
            let i = ts.iter().position(|&t| t == e).expect("grid point");
            (i, e)
        }
        EpsPrime::Value(v) => {
            let v = T::lit(v);
            if !(v > T::zero() && v < T::one()) {
                return Err(Error::InvalidParameter(format!("eps' must lie in (0, 1), got {v}")));
            }
            let i = grid.floor_index(v).unwrap_or(0).min(n - 1);
            (i, v)
        }
    };
    if start >= end {
        return Err(Error::EmptyWindow {
            eps_prime: eps_prime.to_f64().unwrap_or(f64::NAN),
            t_end: ts[end].to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(Prepared { h, start, end, eps_prime, zero: false })
}

/// Turns y(t) = f(1−t) on t-grid indices 0..=end into a profile on ascending radii.
fn to_profile<T: Real>(ts: &[T], y: &[T], end: usize, q: usize, label: String) -> Result<SampledFn<T>> {
    let mut radii = Vec::with_capacity(end + 1);
    let mut vals = Vec::with_capacity(end + 1);
    for i in (0..=end).rev() {
        let r = T::one() - ts[i];
        radii.push(r);
        vals.push(y[i] * r.powi(q as i32));
    }
    SampledFn::new(Grid1D::from_points(radii)?, vals, label)
}

fn zero_result<T: Real>(p: &Prepared<T>, q: usize, mode: Option<(usize, usize)>, method: Backend) -> Result<ReconstructionResult<T>> {
    let ts = p.h.grid().points();
    let y = vec![T::zero(); ts.len()];
    Ok(ReconstructionResult {
        profile: to_profile(ts, &y, p.end, q, "reconstruction".into())?,
        eps_prime: p.eps_prime,
        method,
        mode,
        metrics: Vec::new(),
    })
}

fn ode_path<T: Real>(
    data: &SmtData<T>,
    opts: &InversionOptions,
    q: usize,
    mode: Option<(usize, usize)>,
) -> Result<ReconstructionResult<T>> {
    let n = data.n;
    let k = data.k();
    let (p, prefactor) = match mode {
        None => (prepare(data, opts, |t| radial_scale(n, t))?, radial_prefactor(k)),
        Some(_) => (prepare(data, opts, |t| mode_scale(n, t))?, mode_prefactor(q, k)),
    };
    if p.zero {
        return zero_result(&p, q, mode, Backend::Ode);
    }
    let order = q + k;
    let rhs = assemble_rhs(&p.h, q + 2 * k, opts.diff)?;
    let coeffs = ode_coeffs(order).compile::<T>(&prefactor);
    let y = OdeProblem::new(coeffs, rhs, p.start, p.end)?.solve()?;
    let ts = p.h.grid().points();
    Ok(ReconstructionResult {
        profile: to_profile(ts, &y, p.end, q, "reconstruction".into())?,
        eps_prime: p.eps_prime,
        method: Backend::Ode,
        mode,
        metrics: Vec::new(),
    })
}

/// Radial profile from radial data by the order-k ODE.
pub fn invert_radial<T: Real>(data: &SmtData<T>, opts: &InversionOptions) -> Result<ReconstructionResult<T>> {
    if data.kind != DataKind::Radial {
        return Err(Error::InvalidParameter("invert_radial needs radial data".into()));
    }
    ode_path(data, opts, 0, None)
}

/// Mode profile f_{q,s} from mode data g_{q,s} by the order-(q+k) ODE.
pub fn invert_mode<T: Real>(data: &SmtData<T>, opts: &InversionOptions) -> Result<ReconstructionResult<T>> {
    let DataKind::Mode { q, s } = data.kind else {
        return Err(Error::InvalidParameter("invert_mode needs mode data".into()));
    };
    ode_path(data, opts, q, Some((q, s)))
}

/// Inverts several independent mode data sets concurrently.
pub fn invert_modes<T: Real>(data: &[SmtData<T>], opts: &InversionOptions) -> Result<Vec<ReconstructionResult<T>>> {
    data.par_iter().map(|d| invert_mode(d, opts)).collect()
}

/// Homogeneous solution t e^{−t}/(1−t)³ of the five-dimensional equation.
pub fn n5_homogeneous<T: Real>(t: T) -> T {
    t * (-t).exp() / (T::one() - t).powi(3)
}

/// Fundamental pair (f₁, f₂) of the seven-dimensional homogeneous equation.
pub fn n7_pair<T: Real>(t: T) -> (T, T) {
    let s3 = T::lit(3.0).sqrt();
    let w = s3 * t / T::lit(2.0);
    let a = t - T::lit(2.0) * t * t;
    let b = s3 * t;
    let env = (T::lit(-1.5) * t).exp() / (T::one() - t).powi(5);
    let (sn, cs) = w.sin_cos();
    (env * (a * cs + b * sn), env * (b * cs - a * sn))
}

/// f₁ f₂′ − f₁′ f₂ = 2√3 t³ e^{−3t} / (1−t)⁹.
pub fn n7_wronskian<T: Real>(t: T) -> T {
    T::lit(2.0) * T::lit(3.0).sqrt() * t.powi(3) * (T::lit(-3.0) * t).exp() / (T::one() - t).powi(9)
}

/// Closed-form back-ends for n ∈ {3, 5, 7}.
pub fn analytic_invert<T: Real>(data: &SmtData<T>, opts: &InversionOptions) -> Result<ReconstructionResult<T>> {
    if data.kind != DataKind::Radial {
        return Err(Error::InvalidParameter("closed-form inversion needs radial data".into()));
    }
    let n = data.n;
    if !matches!(n, 3 | 5 | 7) {
        return Err(Error::AnalyticUnavailable(n));
    }
    let p = prepare(data, opts, |t| radial_scale(n, t))?;
    let method = match n {
        3 => Backend::AnalyticK0,
        5 => Backend::AnalyticK1,
        _ => Backend::AnalyticK2,
    };
    if p.zero {
        return zero_result(&p, 0, None, method);
    }
    let ts = p.h.grid().points();
    let nt = ts.len();
    let one = T::one();
    let mut y = vec![T::zero(); nt];
    match n {
        3 => {
            let d = differentiate(&p.h, 1, opts.diff)?;
            for i in p.start..=p.end {
                y[i] = d.values()[i] / (one - ts[i]);
            }
        }
        5 => {
            let l = assemble_rhs(&p.h, 2, opts.diff)?;
            let integrand: Vec<T> =
                (0..nt).map(|i| if i < p.start { T::zero() } else { (one - ts[i]) * ts[i].exp() * l.values()[i] }).collect();
            let acc = cumulative_integral(ts, &integrand, p.start);
            for i in p.start..=p.end {
                let t = ts[i];
                y[i] = t * (-t).exp() / (T::lit(8.0) * (one - t).powi(3)) * acc[i];
            }
        }
        _ => {
            let l = assemble_rhs(&p.h, 4, opts.diff)?;
            let mut i1 = vec![T::zero(); nt];
            let mut i2 = vec![T::zero(); nt];
            for i in p.start..nt {
                let t = ts[i];
                let g = l.values()[i] * t * t / (T::lit(128.0) * (one - t).powi(3));
                let (f1, f2) = n7_pair(t);
                let w = n7_wronskian(t);
                i1[i] = f2 * g / w;
                i2[i] = f1 * g / w;
            }
            let a = cumulative_integral(ts, &i1, p.start);
            let b = cumulative_integral(ts, &i2, p.start);
            for i in p.start..=p.end {
                let (f1, f2) = n7_pair(ts[i]);
                y[i] = -f1 * a[i] + f2 * b[i];
            }
        }
    }
    Ok(ReconstructionResult {
        profile: to_profile(ts, &y, p.end, 0, "reconstruction".into())?,
        eps_prime: p.eps_prime,
        method,
        mode: None,
        metrics: Vec::new(),
    })
}
