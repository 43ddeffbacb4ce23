//! Right-hand side of the reconstruction ODE from sampled data.

use crate::error::Result;
use crate::numerics::{differentiate, DiffMethod, SampledFn};
use crate::scalar::{rational_to_real, Real};
use crate::specfun::d_weights;

/// Derivatives h^{(1)}, …, h^{(max)} (index 0 holds h itself).
fn derivatives<T: Real>(h: &SampledFn<T>, max: usize, method: DiffMethod) -> Result<Vec<SampledFn<T>>> {
    let mut out = vec![h.clone()];
    for d in 1..=max {
        out.push(differentiate(h, d, method)?);
    }
    Ok(out)
}

fn weights<T: Real>(r: usize) -> Result<Vec<T>> {
    Ok(d_weights(r)?.iter().map(rational_to_real).collect())
}

/// D^r h with D = t^{-1} d/dt, via D^r h = Σ_j w_{r,j} h^{(j)} / t^{2r−j}.
pub fn apply_d_power<T: Real>(h: &SampledFn<T>, r: usize, method: DiffMethod) -> Result<SampledFn<T>> {
    if r == 0 {
        return Ok(h.clone());
    }
    let der = derivatives(h, r, method)?;
    let w = weights::<T>(r)?;
    let ts = h.grid().points();
    let values = (0..h.len())
        .map(|i| {
            let t = ts[i];
            (1..=r).map(|j| w[j - 1] * der[j].values()[i] / t.powi((2 * r - j) as i32)).sum()
        })
        .collect();
    SampledFn::new(h.grid().clone(), values, format!("D^{r} {}", h.label()))
}

/// L = d/dt D^r h, expanded by the product rule:
/// Σ_j w_{r,j} [h^{(j+1)}/t^{2r−j} − (2r−j) h^{(j)}/t^{2r−j+1}].
pub fn assemble_rhs<T: Real>(h: &SampledFn<T>, r: usize, method: DiffMethod) -> Result<SampledFn<T>> {
    if r == 0 {
        return differentiate(h, 1, method);
    }
    let der = derivatives(h, r + 1, method)?;
    let w = weights::<T>(r)?;
    let ts = h.grid().points();
    let values = (0..h.len())
        .map(|i| {
            let t = ts[i];
            (1..=r)
                .map(|j| {
                    let p = (2 * r - j) as i32;
                    w[j - 1]
                        * (der[j + 1].values()[i] / t.powi(p)
                            - T::from_usize_lossy(2 * r - j) * der[j].values()[i] / t.powi(p + 1))
                })
                .sum()
        })
        .collect();
    SampledFn::new(h.grid().clone(), values, format!("d/dt D^{r} {}", h.label()))
}

/// Largest grid point ε′ with max |h| ≤ threshold on (0, ε′]; the first grid
/// point when the very first sample already exceeds the threshold.
pub fn detect_support_gap<T: Real>(h: &SampledFn<T>, threshold: T) -> T {
    let pts = h.grid().points();
    match h.values().iter().position(|v| v.abs() > threshold) {
        None => pts[pts.len() - 1],
        Some(0) => pts[0],
        Some(i) => pts[i - 1],
    }
}
