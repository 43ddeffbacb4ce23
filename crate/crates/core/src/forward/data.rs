//! Sampled transform data and noise injection.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::SampledFn;
use crate::scalar::Real;

/// Which quantity a data set samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DataKind {
    /// Spherical means of a radial function (independent of the center).
    Radial,
    /// The (q, s) spherical-harmonic coefficient g_{q,s}(t) of the means.
    Mode { q: usize, s: usize },
}

/// Provenance of additive noise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseMeta {
    pub distribution: String,
    pub amplitude: f64,
    pub seed: u64,
}

/// Spherical-mean samples g(t) on a radius grid inside (0, 1).
#[derive(Clone, Debug)]
pub struct SmtData<T> {
    pub n: u32,
    pub kind: DataKind,
    pub samples: SampledFn<T>,
    pub noise: Option<NoiseMeta>,
}

pub(crate) fn check_dimension(n: u32) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        Err(Error::InvalidDimension(n as i64))
    } else {
        Ok(())
    }
}

impl<T: Real> SmtData<T> {
    pub fn new(n: u32, kind: DataKind, samples: SampledFn<T>) -> Result<Self> {
        check_dimension(n)?;
        let g = samples.grid();
        if g.last() >= T::one() {
            return Err(Error::InvalidGrid(format!("data radii must lie in (0, 1), last point is {}", g.last())));
        }
        Ok(Self { n, kind, samples, noise: None })
    }

    /// k = (n − 3)/2.
    pub fn k(&self) -> usize {
        ((self.n - 3) / 2) as usize
    }

    /// Adds seeded uniform noise; amplitude 0 leaves the data untouched.
    pub fn with_noise(mut self, amplitude: f64, seed: u64) -> Result<Self> {
        self.samples = add_noise(&self.samples, amplitude, seed)?;
        if amplitude > 0.0 {
            self.noise = Some(NoiseMeta { distribution: "uniform".into(), amplitude, seed });
        }
        Ok(self)
    }
}

/// Perturbs every sample by an independent uniform(−amplitude, amplitude) draw.
pub fn add_noise<T: Real>(s: &SampledFn<T>, amplitude: f64, seed: u64) -> Result<SampledFn<T>> {
    if !(amplitude >= 0.0) || !amplitude.is_finite() {
        return Err(Error::InvalidParameter(format!("noise amplitude must be >= 0, got {amplitude}")));
    }
    if amplitude == 0.0 {
        return Ok(s.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Uniform::new_inclusive(-amplitude, amplitude);
    let values = s.values().iter().map(|&v| v + T::lit(dist.sample(&mut rng))).collect();
    SampledFn::new(s.grid().clone(), values, s.label())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Grid1D;

    fn zeros(n: usize) -> SampledFn<f64> {
        SampledFn::new(Grid1D::uniform(0.01, 0.99, n).unwrap(), vec![0.0; n], "z").unwrap()
    }

    #[test]
    fn zero_amplitude_is_identity() {
        let s = zeros(50).map(|t, _| t.sin()).unwrap();
        assert_eq!(add_noise(&s, 0.0, 7).unwrap().values(), s.values());
    }

    #[test]
    fn seeded_noise_is_deterministic_and_bounded() {
        let s = zeros(10_000);
        let a = add_noise(&s, 1e-7, 42).unwrap();
        let b = add_noise(&s, 1e-7, 42).unwrap();
        assert_eq!(a.values(), b.values());
        let c = add_noise(&s, 1e-7, 43).unwrap();
        assert_ne!(a.values(), c.values());
        assert!(a.values().iter().all(|v| v.abs() <= 1e-7));
        let n = a.len() as f64;
        let mean = a.values().iter().sum::<f64>() / n;
        // uniform(−a, a) has standard deviation a/√3
        let se = 1e-7 / 3f64.sqrt() / n.sqrt();
        assert!(mean.abs() <= 3.0 * se);
    }

    #[test]
    fn negative_amplitude_rejected() {
        assert!(add_noise(&zeros(10), -1.0, 0).is_err());
    }

    #[test]
    fn data_validation() {
        let s = zeros(10);
        assert!(SmtData::new(4, DataKind::Radial, s.clone()).is_err());
        let g = Grid1D::uniform(0.5, 1.0, 10).unwrap();
        let s1 = SampledFn::new(g, vec![0.0; 10], "x").unwrap();
        assert!(SmtData::new(3, DataKind::Radial, s1).is_err());
        let d = SmtData::new(7, DataKind::Radial, s).unwrap().with_noise(1e-3, 1).unwrap();
        assert_eq!(d.k(), 2);
        assert_eq!(d.noise.as_ref().unwrap().amplitude, 1e-3);
    }
}
