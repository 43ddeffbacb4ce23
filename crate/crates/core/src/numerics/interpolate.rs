use crate::error::{Error, Result};
use crate::numerics::grid::SampledFn;
use crate::scalar::Real;

/// Value of the local cubic interpolant of `s` at `t`.
///
/// The four nodes bracket `t` (two on each side where possible); fewer nodes
/// are used only on grids shorter than four points.
pub fn interpolate<T: Real>(s: &SampledFn<T>, t: T) -> Result<T> {
    let pts = s.grid().points();
    let n = pts.len();
    let (lo, hi) = (pts[0], pts[n - 1]);
    if !(t >= lo && t <= hi) {
        return Err(Error::OutOfDomain {
            x: t.to_f64().unwrap_or(f64::NAN),
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let i = s.grid().floor_index(t).unwrap_or(0);
    if pts[i] == t {
        return Ok(s.values()[i]);
    }
    let m = n.min(4);
    let start = i.saturating_sub(1).min(n - m);
    Ok(lagrange(&pts[start..start + m], &s.values()[start..start + m], t))
}

/// Lagrange interpolation through `(xs, ys)` evaluated at `x`.
pub(crate) fn lagrange<T: Real>(xs: &[T], ys: &[T], x: T) -> T {
    let mut acc = T::zero();
    for (j, (&xj, &yj)) in xs.iter().zip(ys).enumerate() {
        let mut w = T::one();
        for (k, &xk) in xs.iter().enumerate() {
            if k != j {
                w = w * (x - xk) / (xj - xk);
            }
        }
        acc = acc + w * yj;
    }
    acc
}
