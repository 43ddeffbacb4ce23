//! Error metrics of a reconstruction against a known profile.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{interpolate, SampledFn};
use crate::scalar::Real;

/// Trapezoid-weighted error norms over an interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metrics {
    pub interval: (f64, f64),
    /// ‖rec − truth‖₂ / ‖truth‖₂; absent when the truth vanishes on the interval.
    pub rel_l2: Option<f64>,
    pub abs_l2: f64,
    pub truth_l2: f64,
    pub max_abs: f64,
}

/// Compares `rec` with `truth` on [a, b]; interval ends are interpolated.
pub fn error_metrics<T: Real>(rec: &SampledFn<T>, truth: impl Fn(T) -> T, a: T, b: T) -> Result<Metrics> {
    if !(a < b) {
        return Err(Error::InvalidInterval { a: a.to_f64().unwrap_or(f64::NAN), b: b.to_f64().unwrap_or(f64::NAN) });
    }
    let mut xs = vec![a];
    xs.extend(rec.grid().points().iter().copied().filter(|x| *x > a && *x < b));
    xs.push(b);
    let mut errs = Vec::with_capacity(xs.len());
    let mut tru = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = interpolate(rec, x)?;
        let tv = truth(x);
        errs.push((v - tv).to_f64().unwrap_or(f64::NAN));
        tru.push(tv.to_f64().unwrap_or(f64::NAN));
    }
    let xs: Vec<f64> = xs.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let trap = |v: &[f64]| -> f64 {
        xs.windows(2).zip(v.windows(2)).map(|(x, y)| (x[1] - x[0]) * (y[0] * y[0] + y[1] * y[1]) / 2.0).sum::<f64>().sqrt()
    };
    let abs_l2 = trap(&errs);
    let truth_l2 = trap(&tru);
    Ok(Metrics {
        interval: (xs[0], xs[xs.len() - 1]),
        rel_l2: (truth_l2 > 0.0).then(|| abs_l2 / truth_l2),
        abs_l2,
        truth_l2,
        max_abs: errs.iter().fold(0.0f64, |m, e| m.max(e.abs())),
    })
}
