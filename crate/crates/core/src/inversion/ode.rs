//! Linear initial-value problems in the substituted variable y(t) = f(1−t).

use crate::error::{Error, Result};
use crate::numerics::interpolate::lagrange;
use crate::numerics::SampledFn;
use crate::scalar::Real;
use crate::specfun::CompiledCoeffs;

/// Σ_m (−1)^m a_m(t) y^{(m)}(t) = L(t), y^{(i)}(t_start) = 0 for i < K.
#[derive(Clone, Debug)]
pub struct OdeProblem<T> {
    coeffs: CompiledCoeffs<T>,
    rhs: SampledFn<T>,
    start: usize,
    end: usize,
}

/// Value at the midpoint of [t_i, t_{i+1}] of the cubic through nodes
/// i−2..=i+1 (shifted forward only where fewer than two nodes precede i).
/// Only samples up to t_{i+1} enter, so a step never looks ahead.
pub(crate) fn causal_midpoint<T: Real>(ts: &[T], ys: &[T], i: usize) -> T {
    let n = ts.len();
    let m = n.min(4);
    let lo = i.saturating_sub(2).min(n - m);
    let x = (ts[i] + ts[i + 1]) / T::lit(2.0);
    lagrange(&ts[lo..lo + m], &ys[lo..lo + m], x)
}

/// ∫_{t_start}^{t_i} of the sampled integrand for every i ≥ start (zero before),
/// integrating the same causal local cubic exactly on each interval.
pub(crate) fn cumulative_integral<T: Real>(ts: &[T], ys: &[T], start: usize) -> Vec<T> {
    let n = ts.len();
    let m = n.min(4);
    let g = T::one() / T::lit(3.0).sqrt();
    let half = T::lit(0.5);
    let mut out = vec![T::zero(); n];
    for i in start..n.saturating_sub(1) {
        let lo = i.saturating_sub(2).min(n - m);
        let (a, b) = (ts[i], ts[i + 1]);
        let c = (a + b) * half;
        let h = (b - a) * half;
        let xs = &ts[lo..lo + m];
        let v = &ys[lo..lo + m];
        let piece = h * (lagrange(xs, v, c - h * g) + lagrange(xs, v, c + h * g));
        out[i + 1] = out[i] + piece;
    }
    out
}

impl<T: Real> OdeProblem<T> {
    /// `start`/`end` are grid indices into `rhs` (t_start = ε′, t_end = 1 − ε).
    pub fn new(coeffs: CompiledCoeffs<T>, rhs: SampledFn<T>, start: usize, end: usize) -> Result<Self> {
        let ts = rhs.grid().points();
        if !(start < end && end < ts.len()) {
            return Err(Error::EmptyWindow {
                eps_prime: ts.get(start).and_then(|v| v.to_f64()).unwrap_or(f64::NAN),
                t_end: ts.get(end).and_then(|v| v.to_f64()).unwrap_or(f64::NAN),
            });
        }
        if !(ts[start] > T::zero() && ts[end] < T::one()) {
            return Err(Error::InvalidGrid("IVP window must lie inside (0, 1)".into()));
        }
        Ok(Self { coeffs, rhs, start, end })
    }

    pub fn order(&self) -> usize {
        self.coeffs.order()
    }

    /// Coefficient of y^{(m)} after the substitution: (−1)^m a_m(t).
    fn b(&self, m: usize, t: T) -> T {
        let a = self.coeffs.eval(m, t);
        if m % 2 == 0 {
            a
        } else {
            -a
        }
    }

    fn leading(&self, t: T) -> Result<T> {
        let k = self.order();
        let b = self.b(k, t);
        if b == T::zero() || !b.is_finite() {
            return Err(Error::SingularLeadingCoefficient(t.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(b)
    }

    fn field(&self, t: T, l: T, y: &[T], out: &mut [T]) -> Result<()> {
        let k = self.order();
        for i in 0..k - 1 {
            out[i] = y[i + 1];
        }
        let mut acc = l;
        for (m, &ym) in y.iter().enumerate().take(k) {
            acc = acc - self.b(m, t) * ym;
        }
        out[k - 1] = acc / self.leading(t)?;
        Ok(())
    }

    /// y on every grid point (zero before the start index, NaN-free), solved with
    /// classical fourth-order Runge–Kutta at the grid step.
    pub fn solve(&self) -> Result<Vec<T>> {
        let ts = self.rhs.grid().points();
        let ls = self.rhs.values();
        let n = ts.len();
        let k = self.order();
        let mut y_out = vec![T::zero(); n];
        if k == 0 {
            for i in self.start..=self.end {
                y_out[i] = ls[i] / self.leading(ts[i])?;
            }
            return Ok(y_out);
        }
        let mut y = vec![T::zero(); k];
        let (mut k1, mut k2, mut k3, mut k4) = (vec![T::zero(); k], vec![T::zero(); k], vec![T::zero(); k], vec![T::zero(); k]);
        let mut tmp = vec![T::zero(); k];
        let two = T::lit(2.0);
        let six = T::lit(6.0);
        for i in self.start..self.end {
            let (t0, t1) = (ts[i], ts[i + 1]);
            let h = t1 - t0;
            let tm = t0 + h / two;
            let lm = causal_midpoint(ts, ls, i);
            self.field(t0, ls[i], &y, &mut k1)?;
            for j in 0..k {
                tmp[j] = y[j] + h / two * k1[j];
            }
            self.field(tm, lm, &tmp, &mut k2)?;
            for j in 0..k {
                tmp[j] = y[j] + h / two * k2[j];
            }
            self.field(tm, lm, &tmp, &mut k3)?;
            for j in 0..k {
                tmp[j] = y[j] + h * k3[j];
            }
            self.field(t1, ls[i + 1], &tmp, &mut k4)?;
            for j in 0..k {
                y[j] = y[j] + h / six * (k1[j] + two * k2[j] + two * k3[j] + k4[j]);
            }
            y_out[i + 1] = y[0];
        }
        Ok(y_out)
    }
}
