//! Direct surface quadrature in three dimensions, full-sphere data and its
//! spherical-harmonic decomposition.

use rayon::prelude::*;

use super::data::{DataKind, SmtData};
use super::phantom::ModePhantom;
use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, Grid1D, QuadratureRule, SampledFn};
use crate::scalar::Real;
use crate::specfun::real_sph_harm;

pub type Vec3<T> = [T; 3];

fn dot<T: Real>(a: Vec3<T>, b: Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn scale<T: Real>(a: Vec3<T>, s: T) -> Vec3<T> {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Unit vector with polar angle θ (from the z-axis) and azimuth φ.
pub fn unit_vector<T: Real>(theta: T, phi: T) -> Vec3<T> {
    let st = theta.sin();
    [st * phi.cos(), st * phi.sin(), theta.cos()]
}

/// Polar and azimuthal angles of a non-zero vector.
pub fn angles<T: Real>(x: Vec3<T>) -> (T, T) {
    let r = dot(x, x).sqrt();
    if r == T::zero() {
        return (T::zero(), T::zero());
    }
    let theta = (x[2] / r).max(-T::one()).min(T::one()).acos();
    let mut phi = x[1].atan2(x[0]);
    if phi < T::zero() {
        phi = phi + T::lit(2.0) * T::PI();
    }
    (theta, phi)
}

/// Product rule on the integration sphere, set up in a frame whose pole is
/// the direction of the center: Gauss–Legendre in the cosine of the polar
/// angle times the trapezoid rule in azimuth.
///
/// A radial support hint lets the polar integral be clipped to the shell
/// where the integrand lives and split where it has kinks.
#[derive(Clone, Debug)]
pub struct SphereRule<T> {
    polar: QuadratureRule<T>,
    n_azimuth: usize,
    support: Option<(T, T)>,
    breaks: Vec<T>,
}

impl<T: Real> SphereRule<T> {
    pub fn new(polar_order: usize, n_azimuth: usize) -> Result<Self> {
        if polar_order == 0 || n_azimuth == 0 {
            return Err(Error::InvalidGrid(format!(
                "sphere rule needs positive node counts (polar {polar_order}, azimuth {n_azimuth})"
            )));
        }
        Ok(Self { polar: gauss_legendre(polar_order)?, n_azimuth, support: None, breaks: Vec::new() })
    }

    /// Declares that the integrand vanishes unless r₀ ≤ |x| ≤ r₁, with kinks at `breaks`.
    pub fn with_support(mut self, r0: T, r1: T, breaks: &[T]) -> Self {
        self.support = Some((r0, r1));
        self.breaks = breaks.to_vec();
        self
    }
}

/// Average of `field` over the sphere of radius t centered at p.
pub fn sphere_quadrature_smt<T: Real>(
    field: impl Fn(Vec3<T>) -> T,
    p: Vec3<T>,
    t: T,
    rule: &SphereRule<T>,
) -> Result<T> {
    if !(t > T::zero()) {
        return Err(Error::InvalidParameter(format!("sphere radius must be positive, got {t}")));
    }
    let rho = dot(p, p).sqrt();
    let e3 = if rho > T::zero() { scale(p, T::one() / rho) } else { [T::zero(), T::zero(), T::one()] };
    let helper = if e3[0].abs() < T::lit(0.9) { [T::one(), T::zero(), T::zero()] } else { [T::zero(), T::one(), T::zero()] };
    let e1 = {
        let v = add(helper, scale(e3, -dot(helper, e3)));
        scale(v, T::one() / dot(v, v).sqrt())
    };
    let e2 = cross(e3, e1);

    let one = T::one();
    let mut breaks = vec![-one, one];
    if let (Some((r0, r1)), true) = (rule.support, rho > T::zero()) {
        // |x|² = ρ² + t² + 2tρc
        let to_c = |u: T| (u * u - rho * rho - t * t) / (T::lit(2.0) * t * rho);
        let lo = to_c(r0).max(-one);
        let hi = to_c(r1).min(one);
        if !(lo < hi) {
            return Ok(T::zero());
        }
        breaks = vec![lo];
        let mut inner: Vec<T> = rule.breaks.iter().map(|&b| to_c(b)).filter(|c| *c > lo && *c < hi).collect();
        inner.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        breaks.extend(inner);
        breaks.push(hi);
    }

    let na = rule.n_azimuth;
    let dphi = T::lit(2.0) * T::PI() / T::from_usize_lossy(na);
    let trig: Vec<(T, T)> = (0..na).map(|j| (T::from_usize_lossy(j) * dphi).sin_cos()).collect();
    let ring = |c: T| {
        let s = (one - c * c).max(T::zero()).sqrt();
        let axial = add(p, scale(e3, t * c));
        trig.iter()
            .map(|&(sn, cs)| field(add(axial, scale(add(scale(e1, cs), scale(e2, sn)), t * s))))
            .sum::<T>()
            * dphi
    };
    Ok(rule.polar.integrate_panels(ring, &breaks) / (T::lit(4.0) * T::PI()))
}

/// Gauss–Legendre in cos θ × uniform azimuth grid of detector centers on S².
#[derive(Clone, Debug, PartialEq)]
pub struct CenterGrid<T> {
    thetas: Vec<T>,
    polar_weights: Vec<T>,
    n_azimuth: usize,
}

impl<T: Real> CenterGrid<T> {
    pub fn new(n_polar: usize, n_azimuth: usize) -> Result<Self> {
        if n_polar == 0 || n_azimuth == 0 {
            return Err(Error::InvalidGrid("angular grid needs at least one node per direction".into()));
        }
        let rule = gauss_legendre::<T>(n_polar)?;
        // descending cos θ gives ascending θ
        let mut pairs: Vec<(T, T)> = rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| (x.acos(), w)).collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        Ok(Self {
            thetas: pairs.iter().map(|p| p.0).collect(),
            polar_weights: pairs.iter().map(|p| p.1).collect(),
            n_azimuth,
        })
    }

    pub fn n_polar(&self) -> usize {
        self.thetas.len()
    }

    pub fn n_azimuth(&self) -> usize {
        self.n_azimuth
    }

    pub fn len(&self) -> usize {
        self.thetas.len() * self.n_azimuth
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// (θ, φ, weight) of node `idx` (polar-major ordering).
    pub fn node(&self, idx: usize) -> (T, T, T) {
        let (i, j) = (idx / self.n_azimuth, idx % self.n_azimuth);
        let dphi = T::lit(2.0) * T::PI() / T::from_usize_lossy(self.n_azimuth);
        (self.thetas[i], T::from_usize_lossy(j) * dphi, self.polar_weights[i] * dphi)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        (0..self.len()).map(move |i| self.node(i))
    }

    /// Largest degree q for which the grid integrates Y_q Y_q' exactly (q, q' ≤ degree).
    pub fn max_degree(&self) -> usize {
        let by_polar = self.n_polar() - 1;
        let by_azimuth = (self.n_azimuth - 1) / 2;
        by_polar.min(by_azimuth)
    }
}

/// Σ f_{q,s}(|x|) Y_{q,s}(x/|x|): a function on ℝ³ with finitely many modes.
#[derive(Clone, Debug)]
pub struct ModeField<T> {
    pub modes: Vec<ModePhantom<T>>,
}

impl<T: Real> ModeField<T> {
    pub fn new(modes: Vec<ModePhantom<T>>) -> Self {
        Self { modes }
    }

    pub fn eval(&self, x: Vec3<T>) -> T {
        let r = dot(x, x).sqrt();
        let (theta, phi) = angles(x);
        self.modes
            .iter()
            .map(|m| {
                let f = m.profile.eval(r);
                if f == T::zero() {
                    T::zero()
                } else {
                    f * real_sph_harm(m.q, m.s, theta, phi).expect("validated mode")
                }
            })
            .sum()
    }

    /// Union of the mode supports and all breakpoints.
    pub fn support_hint(&self) -> (T, T, Vec<T>) {
        let mut lo = T::one();
        let mut hi = T::zero();
        let mut breaks = Vec::new();
        for m in &self.modes {
            let (a, b) = m.profile.support();
            lo = lo.min(a);
            hi = hi.max(b);
            breaks.push(a);
            breaks.push(b);
            breaks.extend_from_slice(m.profile.breaks());
        }
        (lo, hi, breaks)
    }
}

/// Spherical means g(p, t) for centers p on a [`CenterGrid`] and radii t on a grid.
#[derive(Clone, Debug)]
pub struct SphereData<T> {
    pub centers: CenterGrid<T>,
    pub t_grid: Grid1D<T>,
    /// values[c · n_t + i] = g(p_c, t_i)
    pub values: Vec<T>,
}

impl<T: Real> SphereData<T> {
    pub fn new(centers: CenterGrid<T>, t_grid: Grid1D<T>, values: Vec<T>) -> Result<Self> {
        let expected = centers.len() * t_grid.len();
        if values.len() != expected {
            return Err(Error::LengthMismatch { expected, got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { centers, t_grid, values })
    }

    pub fn at(&self, center: usize, ti: usize) -> T {
        self.values[center * self.t_grid.len() + ti]
    }
}

/// Simulates full-sphere data of a mode field by direct surface quadrature.
pub fn simulate_full_sphere<T: Real>(
    field: &ModeField<T>,
    centers: &CenterGrid<T>,
    t_grid: &Grid1D<T>,
    rule: &SphereRule<T>,
) -> Result<SphereData<T>> {
    let nt = t_grid.len();
    let values: Result<Vec<T>> = (0..centers.len() * nt)
        .into_par_iter()
        .map(|idx| {
            let (theta, phi, _) = centers.node(idx / nt);
            let t = t_grid.points()[idx % nt];
            sphere_quadrature_smt(|x| field.eval(x), unit_vector(theta, phi), t, rule)
        })
        .collect();
    SphereData::new(centers.clone(), t_grid.clone(), values?)
}

/// Projects full-sphere data onto real spherical harmonics of degree ≤ q_max.
pub fn decompose<T: Real>(data: &SphereData<T>, q_max: usize) -> Result<Vec<SmtData<T>>> {
    let c = &data.centers;
    if c.n_polar() < q_max + 1 {
        return Err(Error::InsufficientResolution {
            degree: q_max,
            reason: format!("{} polar nodes, need at least {}", c.n_polar(), q_max + 1),
        });
    }
    if c.n_azimuth() < 2 * q_max + 1 {
        return Err(Error::InsufficientResolution {
            degree: q_max,
            reason: format!("{} azimuthal nodes, need at least {}", c.n_azimuth(), 2 * q_max + 1),
        });
    }
    let nt = data.t_grid.len();
    let mut out = Vec::new();
    for q in 0..=q_max {
        for s in 1..=2 * q + 1 {
            let mut acc = vec![T::zero(); nt];
            for (ci, (theta, phi, w)) in c.nodes().enumerate() {
                let wy = w * real_sph_harm(q, s, theta, phi)?;
                for (ti, a) in acc.iter_mut().enumerate() {
                    *a = *a + wy * data.at(ci, ti);
                }
            }
            let samples = SampledFn::new(data.t_grid.clone(), acc, format!("g_{{{q},{s}}}"))?;
            out.push(SmtData::new(3, DataKind::Mode { q, s }, samples)?);
        }
    }
    Ok(out)
}
