//! Forward operators for radial profiles and single spherical-harmonic modes.

use rayon::prelude::*;

use super::data::{check_dimension, DataKind, SmtData};
use super::phantom::{ModePhantom, RadialPhantom};
use crate::error::{Error, Result};
use crate::numerics::{Grid1D, QuadratureRule, SampledFn};
use crate::scalar::{rational_to_real, Real};
use crate::specfun::special::gegenbauer_unchecked;
use crate::specfun::{gegenbauer_at_one, omega};

/// Q(t, u) = ((1+t)² − u²)(u² − (1−t)²).
pub fn q_kernel<T: Real>(t: T, u: T) -> T {
    let a = T::one() + t;
    let b = T::one() - t;
    (a * a - u * u) * (u * u - b * b)
}

fn check_t<T: Real>(t: T) -> Result<()> {
    if t > T::zero() && t < T::one() {
        Ok(())
    } else {
        Err(Error::OutOfDomain { x: t.to_f64().unwrap_or(f64::NAN), lo: 0.0, hi: 1.0 })
    }
}

/// h_k(t) = ∫_{1−t}^{1} u f(u) Q(t,u)^k du.
pub fn forward_radial_h<T: Real>(f: &RadialPhantom<T>, k: usize, t: T, rule: &QuadratureRule<T>) -> Result<T> {
    g_moments(k, 0, f, t, rule)
}

/// G_{i,j}(t) = ∫_{1−t}^{1} u f(u) Q(t,u)^i (u² + 1 − t²)^j du.
pub fn g_moments<T: Real>(i: usize, j: usize, f: &RadialPhantom<T>, t: T, rule: &QuadratureRule<T>) -> Result<T> {
    check_t(t)?;
    let breaks = f.panels(T::one() - t, T::one());
    let c = T::one() - t * t;
    Ok(rule.integrate_panels(
        |u| u * f.eval(u) * q_kernel(t, u).powi(i as i32) * (u * u + c).powi(j as i32),
        &breaks,
    ))
}

/// 4^k ω_{n−1} t^{n−2} / ω_{n−2}, the factor with h_k = factor · Rf.
pub fn radial_scale<T: Real>(n: u32, t: T) -> Result<T> {
    check_dimension(n)?;
    if !(t > T::zero()) {
        return Err(Error::InvalidParameter(format!("scaling needs t > 0, got {t}")));
    }
    let k = (n - 3) / 2;
    Ok(T::lit(4.0).powi(k as i32) * mode_scale_unchecked(n, t))
}

/// ω_{n−1} t^{n−2} / ω_{n−2}, the factor with h_{q,s} = factor · g_{q,s}.
pub fn mode_scale<T: Real>(n: u32, t: T) -> Result<T> {
    check_dimension(n)?;
    if !(t > T::zero()) {
        return Err(Error::InvalidParameter(format!("scaling needs t > 0, got {t}")));
    }
    Ok(mode_scale_unchecked(n, t))
}

fn mode_scale_unchecked<T: Real>(n: u32, t: T) -> T {
    let n = n as usize;
    omega::<T>(n - 1) * t.powi(n as i32 - 2) / omega::<T>(n - 2)
}

/// Spherical mean from h_k.
pub fn smt_from_h<T: Real>(h: T, n: u32, t: T) -> Result<T> {
    Ok(h / radial_scale(n, t)?)
}

/// h_k from the spherical mean.
pub fn h_from_smt<T: Real>(g: T, n: u32, t: T) -> Result<T> {
    Ok(g * radial_scale(n, t)?)
}

/// Spherical mean of a radial profile by the Funk–Hecke reduction:
/// (ω_{n−2}/ω_{n−1}) ∫_{t/2}^{1} f(√(1+t²−2st)) (1−s²)^{(n−3)/2} ds.
pub fn funk_hecke_oracle<T: Real>(f: &RadialPhantom<T>, n: u32, t: T, rule: &QuadratureRule<T>) -> Result<T> {
    check_dimension(n)?;
    check_t(t)?;
    let k = ((n - 3) / 2) as i32;
    let two_t = T::lit(2.0) * t;
    let to_s = |u: T| (T::one() + t * t - u * u) / two_t;
    let mut breaks: Vec<T> = f.panels(T::one() - t, T::one()).into_iter().map(to_s).collect();
    breaks.reverse();
    let integrand = |s: T| {
        let u2 = (T::one() + t * t - two_t * s).max(T::zero());
        f.eval(u2.sqrt()) * (T::one() - s * s).max(T::zero()).powi(k)
    };
    let nn = n as usize;
    Ok(omega::<T>(nn - 2) / omega::<T>(nn - 1) * rule.integrate_panels(integrand, &breaks))
}

/// g_{q,s}(t) of a single mode by the Gegenbauer-kernel integral.
pub fn forward_mode<T: Real>(phantom: &ModePhantom<T>, n: u32, t: T, rule: &QuadratureRule<T>) -> Result<T> {
    check_dimension(n)?;
    check_t(t)?;
    let q = phantom.q;
    let nn = n as usize;
    let k = ((n - 3) / 2) as i32;
    let lam = T::lit((n as f64 - 2.0) / 2.0);
    let c1: T = rational_to_real(&gegenbauer_at_one(q, n as i64)?);
    let f = &phantom.profile;
    let breaks = f.panels(T::one() - t, T::one());
    let c = T::one() - t * t;
    let integrand = |u: T| {
        let x = (u * u + c) / (T::lit(2.0) * u);
        u.powi(nn as i32 - 2) * f.eval(u) * gegenbauer_unchecked(q, lam, x) * (T::one() - x * x).max(T::zero()).powi(k)
    };
    let pre = omega::<T>(nn - 2) / (t.powi(nn as i32 - 2) * omega::<T>(nn - 1) * c1);
    Ok(pre * rule.integrate_panels(integrand, &breaks))
}

fn sweep<T: Real>(grid: &Grid1D<T>, f: impl Fn(T) -> Result<T> + Sync) -> Result<Vec<T>> {
    grid.points().par_iter().map(|&t| f(t)).collect()
}

/// Spherical means of a radial phantom on a radius grid.
pub fn simulate_radial<T: Real>(
    f: &RadialPhantom<T>,
    n: u32,
    grid: &Grid1D<T>,
    rule: &QuadratureRule<T>,
) -> Result<SmtData<T>> {
    check_dimension(n)?;
    let k = ((n - 3) / 2) as usize;
    let values = sweep(grid, |t| smt_from_h(forward_radial_h(f, k, t, rule)?, n, t))?;
    SmtData::new(n, DataKind::Radial, SampledFn::new(grid.clone(), values, f.label())?)
}

/// Mode coefficients g_{q,s}(t) of a single-mode phantom on a radius grid.
pub fn simulate_mode<T: Real>(
    phantom: &ModePhantom<T>,
    n: u32,
    grid: &Grid1D<T>,
    rule: &QuadratureRule<T>,
) -> Result<SmtData<T>> {
    let values = sweep(grid, |t| forward_mode(phantom, n, t, rule))?;
    let kind = DataKind::Mode { q: phantom.q, s: phantom.s };
    SmtData::new(n, kind, SampledFn::new(grid.clone(), values, phantom.profile.label())?)
}
