//! Reassembly of a three-dimensional field from recovered mode profiles.

use super::invert::ReconstructionResult;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::real_sph_harm;

/// f(rθ) on radii × directions, row-major by radius.
#[derive(Clone, Debug)]
pub struct FieldSamples<T> {
    pub radii: Vec<T>,
    pub directions: Vec<(T, T)>,
    pub values: Vec<T>,
}

impl<T: Real> FieldSamples<T> {
    pub fn at(&self, ri: usize, di: usize) -> T {
        self.values[ri * self.directions.len() + di]
    }
}

/// f(rθ) = Σ f_{q,s}(r) Y_{q,s}(θ) over the supplied modes.
pub fn recombine<T: Real>(modes: &[ReconstructionResult<T>], directions: &[(T, T)]) -> Result<FieldSamples<T>> {
    let Some(first) = modes.first() else {
        return Err(Error::InvalidParameter("no modes to recombine".into()));
    };
    let radii = first.profile.grid().points().to_vec();
    for m in modes {
        if m.profile.grid().points() != radii.as_slice() {
            return Err(Error::InvalidGrid("mode profiles live on different radial grids".into()));
        }
        if m.mode.is_none() {
            return Err(Error::InvalidParameter("recombine needs mode reconstructions".into()));
        }
    }
    let nd = directions.len();
    let mut values = vec![T::zero(); radii.len() * nd];
    for m in modes {
        let (q, s) = m.mode.expect("checked");
        let ys: Vec<T> = directions.iter().map(|&(th, ph)| real_sph_harm(q, s, th, ph)).collect::<Result<_>>()?;
        for (ri, &f) in m.profile.values().iter().enumerate() {
            for (di, &y) in ys.iter().enumerate() {
                values[ri * nd + di] = values[ri * nd + di] + f * y;
            }
        }
    }
    Ok(FieldSamples { radii, directions: directions.to_vec(), values })
}
