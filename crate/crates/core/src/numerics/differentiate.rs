//! High-order derivative estimation from samples.
//!
//! Two estimators share the same window logic: interior points use a window
//! centred on the point, points near either end use the nearest full window
//! inside the grid (one-sided, same formal order). Nothing is extrapolated.
//! The trailing estimator always uses the window ending at the point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::grid::SampledFn;
use crate::scalar::Real;

/// Derivative estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum DiffMethod {
    /// Local polynomial fit of degree `d + 4` over `2d + 9` points.
    Auto,
    /// Finite-difference stencil over `width` consecutive points (uniform grids).
    CentralStencil { width: usize },
    /// Least-squares polynomial of `degree` over `window` consecutive points.
    LocalPolyfit { degree: usize, window: usize },
    /// As `Auto`, with the window widened by `extra` points on each side.
    Smoothed { extra: usize },
    /// Least-squares polynomial over the `window` points ending at the
    /// evaluation point, so no later sample is used.
    Trailing { degree: usize, window: usize },
    /// Trailing fit of degree `d + 6` over `2d + 13` points.
    Causal,
}

impl Default for DiffMethod {
    fn default() -> Self {
        DiffMethod::Auto
    }
}

impl DiffMethod {
    /// Concrete estimator used for a derivative of order `d`.
    pub fn resolve(self, d: usize) -> DiffMethod {
        match self {
            DiffMethod::Auto => DiffMethod::LocalPolyfit { degree: d + 4, window: 2 * d + 9 },
            DiffMethod::Smoothed { extra } => DiffMethod::LocalPolyfit { degree: d + 4, window: 2 * d + 9 + 2 * extra },
            DiffMethod::Causal => DiffMethod::Trailing { degree: d + 6, window: 2 * d + 13 },
            other => other,
        }
    }

    fn window(self) -> usize {
        match self {
            DiffMethod::CentralStencil { width } => width,
            DiffMethod::LocalPolyfit { window, .. } | DiffMethod::Trailing { window, .. } => window,
            DiffMethod::Auto | DiffMethod::Smoothed { .. } | DiffMethod::Causal => unreachable!("resolve first"),
        }
    }

    fn check(self, d: usize, n: usize, uniform: bool) -> Result<()> {
        let unsupported = |reason: String| Err(Error::UnsupportedDerivative { order: d, reason });
        if d == 0 {
            return unsupported("derivative order must be at least 1".into());
        }
        match self {
            DiffMethod::CentralStencil { width } => {
                if !uniform {
                    return Err(Error::NonUniformGrid("central-stencil differentiation"));
                }
                if width < d + 1 {
                    return unsupported(format!("stencil width {width} < {}", d + 1));
                }
            }
            DiffMethod::LocalPolyfit { degree, window } | DiffMethod::Trailing { degree, window } => {
                if degree < d {
                    return unsupported(format!("fit degree {degree} < derivative order"));
                }
                if window < degree + 1 {
                    return unsupported(format!("window {window} too small for degree {degree}"));
                }
            }
            DiffMethod::Auto | DiffMethod::Smoothed { .. } | DiffMethod::Causal => unreachable!(),
        }
        let w = self.window();
        if w > n {
            return unsupported(format!("window of {w} points exceeds grid of {n}"));
        }
        Ok(())
    }
}

/// `d`-th derivative samples of `s` on the same grid.
pub fn differentiate<T: Real>(s: &SampledFn<T>, d: usize, method: DiffMethod) -> Result<SampledFn<T>> {
    let method = method.resolve(d);
    let grid = s.grid();
    let n = grid.len();
    method.check(d, n, grid.is_uniform())?;
    let w = method.window();
    let t = grid.points();
    let y = s.values();

    let weights_for = |i: usize, lo: usize| -> Vec<T> {
        let xs = &t[lo..lo + w];
        match method {
            DiffMethod::CentralStencil { .. } => fornberg_weights(xs, t[i], d),
            DiffMethod::LocalPolyfit { degree, .. } | DiffMethod::Trailing { degree, .. } => {
                polyfit_weights(xs, t[i], degree, d)
            }
            DiffMethod::Auto | DiffMethod::Smoothed { .. } | DiffMethod::Causal => unreachable!(),
        }
    };

    // On a uniform grid the weights depend only on the point's position in
    // its window, so interior points share one stencil.
    let mut interior: Option<Vec<T>> = None;
    let hw = match method {
        DiffMethod::Trailing { .. } => w - 1,
        _ => w / 2,
    };
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = i.saturating_sub(hw).min(n - w);
        let is_interior = lo + hw == i;
        let wts = if grid.is_uniform() && is_interior {
            interior.get_or_insert_with(|| weights_for(i, lo)).clone()
        } else {
            weights_for(i, lo)
        };
        let v: T = wts.iter().zip(&y[lo..lo + w]).map(|(&a, &b)| a * b).sum();
        out.push(v);
    }
    SampledFn::new(grid.clone(), out, format!("d{d}/dt{d} {}", s.label()))
}

/// Weights of the derivative of order `d` at `x0` of the least-squares
/// polynomial of `degree` through the points `xs`.
///
/// Uses discrete orthogonal polynomials generated by the Stieltjes
/// recurrence, which stays well conditioned for the degrees used here.
pub fn polyfit_weights<T: Real>(xs: &[T], x0: T, degree: usize, d: usize) -> Vec<T> {
    let w = xs.len();
    let scale = xs.iter().fold(T::zero(), |m, &x| m.max((x - x0).abs()));
    let z: Vec<T> = xs.iter().map(|&x| (x - x0) / scale).collect();

    // p_k at the window points, and the first d derivatives of p_k at z = 0.
    let mut p_prev = vec![T::zero(); w];
    let mut p_cur = vec![T::one(); w];
    let mut dp_prev = vec![T::zero(); d + 1];
    let mut dp_cur = vec![T::zero(); d + 1];
    dp_cur[0] = T::one();
    let mut norm_prev = T::one();
    let mut weights = vec![T::zero(); w];

    for k in 0..=degree {
        let norm: T = p_cur.iter().map(|&p| p * p).sum();
        let coef = dp_cur[d] / norm;
        for (wt, &p) in weights.iter_mut().zip(&p_cur) {
            *wt = *wt + coef * p;
        }
        if k == degree {
            break;
        }
        let alpha = p_cur.iter().zip(&z).map(|(&p, &zz)| zz * p * p).sum::<T>() / norm;
        let beta = if k == 0 { T::zero() } else { norm / norm_prev };
        let p_next: Vec<T> = (0..w)
            .map(|j| (z[j] - alpha) * p_cur[j] - beta * p_prev[j])
            .collect();
        // derivatives at z0 = 0: D^m p_{k+1} = (0 - α) D^m p_k + m D^{m-1} p_k − β D^m p_{k-1}
        let mut dp_next = vec![T::zero(); d + 1];
        for m in 0..=d {
            let lower = if m > 0 { T::from_usize_lossy(m) * dp_cur[m - 1] } else { T::zero() };
            dp_next[m] = -alpha * dp_cur[m] + lower - beta * dp_prev[m];
        }
        p_prev = std::mem::replace(&mut p_cur, p_next);
        dp_prev = std::mem::replace(&mut dp_cur, dp_next);
        norm_prev = norm;
    }
    let factor = scale.powi(d as i32);
    weights.iter().map(|&v| v / factor).collect()
}

/// Finite-difference weights for the `d`-th derivative at `x0` (Fornberg).
pub fn fornberg_weights<T: Real>(xs: &[T], x0: T, d: usize) -> Vec<T> {
    let n = xs.len();
    let mut c = vec![vec![T::zero(); d + 1]; n];
    let mut c1 = T::one();
    let mut c4 = xs[0] - x0;
    c[0][0] = T::one();
    for i in 1..n {
        let mn = i.min(d);
        let mut c2 = T::one();
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 = c2 * c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (T::from_usize_lossy(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - T::from_usize_lossy(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[d]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::Grid1D;
    use crate::numerics::interpolate::interpolate;

    fn sample(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> SampledFn<f64> {
        SampledFn::from_fn(Grid1D::uniform(a, b, n).unwrap(), f, "f").unwrap()
    }

    #[test]
    fn linear_has_constant_slope() {
        let s = sample(0.1, 1.0, 40, |t| 2.0 * t + 1.0);
        for m in [
            DiffMethod::Auto,
            DiffMethod::CentralStencil { width: 5 },
            DiffMethod::LocalPolyfit { degree: 3, window: 9 },
        ] {
            let d = differentiate(&s, 1, m).unwrap();
            assert!(d.values().iter().all(|v| (v - 2.0).abs() < 1e-10), "{m:?}");
        }
    }

    #[test]
    fn cubic_second_derivative_at_midpoint() {
        let s = sample(0.1, 0.9, 200, |t| t.powi(3));
        let d2 = differentiate(&s, 2, DiffMethod::Auto).unwrap();
        let v = interpolate(&d2, 0.5).unwrap();
        assert!((v - 3.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn sine_third_derivative_central9() {
        let s = sample(0.005, 1.0, 200, |t| (5.0 * t).sin());
        let d3 = differentiate(&s, 3, DiffMethod::CentralStencil { width: 9 }).unwrap();
        let v = interpolate(&d3, 0.5).unwrap();
        let exact = -125.0 * 2.5f64.cos();
        assert!((v - exact).abs() < 1e-4, "{v} vs {exact}");
    }

    #[test]
    fn polyfit_matches_savitzky_golay_first_derivative() {
        // quadratic fit over 5 equispaced points: weights (-2,-1,0,1,2)/10h
        let xs: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.5];
        let w = polyfit_weights(&xs, 0.3, 2, 1);
        let expect = [-0.2, -0.1, 0.0, 0.1, 0.2].map(|v| v / 0.1);
        for (a, b) in w.iter().zip(expect) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn fornberg_reproduces_classical_stencils() {
        let xs: [f64; 3] = [-1.0, 0.0, 1.0];
        let w = fornberg_weights(&xs, 0.0, 2);
        assert!((w[0] - 1.0).abs() < 1e-14 && (w[1] + 2.0).abs() < 1e-14 && (w[2] - 1.0).abs() < 1e-14);
        let w = fornberg_weights(&[0.0f64, 1.0, 2.0], 0.0, 1);
        assert!((w[0] + 1.5).abs() < 1e-14 && (w[1] - 2.0).abs() < 1e-14 && (w[2] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn errors_on_unsupported_requests() {
        let s = sample(0.1, 1.0, 12, |t| t);
        assert!(differentiate(&s, 0, DiffMethod::Auto).is_err());
        // Auto at d=2 wants 13 points
        assert!(differentiate(&s, 2, DiffMethod::Auto).is_err());
        assert!(differentiate(&s, 3, DiffMethod::CentralStencil { width: 3 }).is_err());
        assert!(differentiate(&s, 3, DiffMethod::LocalPolyfit { degree: 2, window: 7 }).is_err());
        assert!(differentiate(&s, 1, DiffMethod::LocalPolyfit { degree: 6, window: 5 }).is_err());
        let nonuni = SampledFn::new(
            Grid1D::from_points(vec![0.1, 0.2, 0.4, 0.5, 0.9]).unwrap(),
            vec![0.0; 5],
            "x",
        )
        .unwrap();
        assert_eq!(
            differentiate(&nonuni, 1, DiffMethod::CentralStencil { width: 3 }),
            Err(Error::NonUniformGrid("central-stencil differentiation"))
        );
        assert!(differentiate(&nonuni, 1, DiffMethod::LocalPolyfit { degree: 2, window: 4 }).is_ok());
    }

    #[test]
    fn trailing_window_ignores_later_samples() {
        let s = sample(0.05, 0.95, 80, |t| (4.0 * t).cos());
        let m = DiffMethod::Trailing { degree: 6, window: 15 };
        let full = differentiate(&s, 2, m).unwrap();
        let cut = differentiate(&s.slice(0..50).unwrap(), 2, m).unwrap();
        assert_eq!(&full.values()[..50], cut.values());
        for (t, v) in full.iter().skip(20) {
            assert!((v + 16.0 * (4.0 * t).cos()).abs() < 1e-2, "t={t}");
        }
    }

    #[test]
    fn causal_default_is_trailing() {
        assert_eq!(DiffMethod::Causal.resolve(3), DiffMethod::Trailing { degree: 9, window: 19 });
        let s = sample(0.05, 0.95, 120, |t| (3.0 * t).sin());
        let full = differentiate(&s, 3, DiffMethod::Causal).unwrap();
        let cut = differentiate(&s.slice(0..70).unwrap(), 3, DiffMethod::Causal).unwrap();
        assert_eq!(&full.values()[..70], cut.values());
    }

    #[test]
    fn boundary_points_keep_polynomial_exactness() {
        let s = sample(0.05, 0.95, 60, |t| 3.0 * t.powi(4) - t.powi(2) + 0.5);
        let d = differentiate(&s, 2, DiffMethod::Auto).unwrap();
        for (t, v) in d.iter() {
            let exact = 36.0 * t * t - 2.0;
            assert!((v - exact).abs() < 1e-7, "t={t}: {v} vs {exact}");
        }
    }

    #[test]
    fn repeated_first_derivatives_agree_with_direct() {
        // f = Im exp((3i − 1)t), so f^(d) = Im (3i − 1)^d exp((3i − 1)t)
        let exact = |d: i32, t: f64| {
            let (r, th) = (10f64.sqrt(), (3.0f64).atan2(-1.0));
            r.powi(d) * (-t).exp() * (3.0 * t + d as f64 * th).sin()
        };
        let s = sample(0.01, 1.0, 400, |t| exact(0, t));
        let n = s.len();
        for d in 2..=3usize {
            let direct = differentiate(&s, d, DiffMethod::Auto).unwrap();
            let margin = 2 * d + 9;
            let tol = (margin..n - margin)
                .map(|i| (direct.values()[i] - exact(d as i32, s.grid().points()[i])).abs())
                .fold(1e-12, f64::max);
            let mut nested = s.clone();
            for _ in 0..d {
                nested = differentiate(&nested, 1, DiffMethod::Auto).unwrap();
            }
            for i in margin..n - margin {
                let diff = (direct.values()[i] - nested.values()[i]).abs();
                assert!(diff <= 10.0 * tol, "d={d} i={i}: {diff} vs single-application tol {tol}");
            }
        }
    }
}
