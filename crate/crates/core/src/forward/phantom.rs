//! Analytic radial profiles with declared support.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::harmonic_count;

/// Closed-form radial shapes.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape<T> {
    /// amplitude · exp(−(r−center)²/(2 width²)), cut at center ± 10 width.
    Gaussian { center: T, width: T, amplitude: T },
    /// r²(1−r)² on the open interval (a, b), zero elsewhere.
    Bump { a: T, b: T },
    /// Piecewise linear hat: 0 at a, 1 at peak, 0 at c.
    Triangle { a: T, peak: T, c: T },
    /// cos(freq · r) on [0, 1].
    Cosine { freq: T },
    /// Constant on [0, 1].
    Constant { value: T },
}

/// A radial profile r ↦ f(r) that vanishes outside `support`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialPhantom<T> {
    shape: Shape<T>,
    support: (T, T),
    breaks: Vec<T>,
    label: String,
}

/// Gaussian cut-off in units of the width.
const GAUSSIAN_CUTOFF: f64 = 10.0;

impl<T: Real> RadialPhantom<T> {
    pub fn new(shape: Shape<T>) -> Result<Self> {
        let zero = T::zero();
        let one = T::one();
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        let (support, breaks, label) = match &shape {
            Shape::Gaussian { center, width, amplitude } => {
                if !(*width > zero) || !center.is_finite() || !amplitude.is_finite() {
                    return bad("gaussian needs a positive width and finite center/amplitude");
                }
                let cut = T::lit(GAUSSIAN_CUTOFF) * *width;
                let lo = (*center - cut).max(zero);
                let hi = (*center + cut).min(one);
                if !(lo < hi) {
                    return bad("gaussian support does not meet the unit ball");
                }
                ((lo, hi), vec![], format!("gaussian(center={center}, width={width}, amplitude={amplitude})"))
            }
            Shape::Bump { a, b } => {
                if !(zero <= *a && *a < *b && *b <= one) {
                    return bad("bump needs 0 <= a < b <= 1");
                }
                ((*a, *b), vec![], format!("bump(a={a}, b={b})"))
            }
            Shape::Triangle { a, peak, c } => {
                if !(zero <= *a && *a < *peak && *peak < *c && *c <= one) {
                    return bad("triangle needs 0 <= a < peak < c <= 1");
                }
                ((*a, *c), vec![*peak], format!("triangle(a={a}, peak={peak}, c={c})"))
            }
            Shape::Cosine { freq } => {
                if !freq.is_finite() {
                    return bad("cosine frequency must be finite");
                }
                ((zero, one), vec![], format!("cosine(freq={freq})"))
            }
            Shape::Constant { value } => {
                if !value.is_finite() {
                    return bad("constant must be finite");
                }
                ((zero, one), vec![], format!("constant(value={value})"))
            }
        };
        Ok(Self { shape, support, breaks, label })
    }

    pub fn gaussian(center: T, width: T, amplitude: T) -> Result<Self> {
        Self::new(Shape::Gaussian { center, width, amplitude })
    }

    pub fn shape(&self) -> &Shape<T> {
        &self.shape
    }

    /// Closed interval [r₀, r₁] outside of which the profile is zero.
    pub fn support(&self) -> (T, T) {
        self.support
    }

    /// Interior points where the profile or one of its derivatives jumps.
    pub fn breaks(&self) -> &[T] {
        &self.breaks
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn inside(&self, r: T) -> bool {
        r >= self.support.0 && r <= self.support.1
    }

    pub fn eval(&self, r: T) -> T {
        self.derivative(0, r)
    }

    /// m-th derivative at r, taken piecewise (one-sided at breakpoints).
    pub fn derivative(&self, m: usize, r: T) -> T {
        let zero = T::zero();
        if !self.inside(r) {
            return zero;
        }
        match &self.shape {
            Shape::Gaussian { center, width, amplitude } => {
                let z = (r - *center) / *width;
                let g = *amplitude * (-(z * z) / T::lit(2.0)).exp();
                // d^m/dr^m e^{−z²/2} = (−1/σ)^m He_m(z) e^{−z²/2}
                let (mut h0, mut h1) = (T::one(), z);
                let he = match m {
                    0 => h0,
                    1 => h1,
                    _ => {
                        for j in 1..m {
                            let h2 = z * h1 - T::from_usize_lossy(j) * h0;
                            h0 = h1;
                            h1 = h2;
                        }
                        h1
                    }
                };
                let s = (-T::one() / *width).powi(m as i32);
                s * he * g
            }
            Shape::Bump { a, b } => {
                if r <= *a || r >= *b {
                    return zero;
                }
                // r² − 2r³ + r⁴
                let c = [zero, zero, T::one(), T::lit(-2.0), T::one()];
                poly_derivative(&c, m, r)
            }
            Shape::Triangle { a, peak, c } => {
                let rising = r < *peak;
                match m {
                    0 if rising => (r - *a) / (*peak - *a),
                    0 => (*c - r) / (*c - *peak),
                    1 if rising => T::one() / (*peak - *a),
                    1 => -T::one() / (*c - *peak),
                    _ => zero,
                }
            }
            Shape::Cosine { freq } => {
                let phase = T::from_usize_lossy(m % 4) * T::FRAC_PI_2();
                freq.powi(m as i32) * (*freq * r + phase).cos()
            }
            Shape::Constant { value } => {
                if m == 0 {
                    *value
                } else {
                    zero
                }
            }
        }
    }

    /// Panel boundaries covering [lo, hi] ∩ support, split at interior breaks.
    pub fn panels(&self, lo: T, hi: T) -> Vec<T> {
        let a = lo.max(self.support.0);
        let b = hi.min(self.support.1);
        if !(a < b) {
            return Vec::new();
        }
        let mut out = vec![a];
        out.extend(self.breaks.iter().copied().filter(|x| *x > a && *x < b));
        out.push(b);
        out
    }
}

fn poly_derivative<T: Real>(c: &[T], m: usize, r: T) -> T {
    c.iter()
        .enumerate()
        .skip(m)
        .map(|(p, &cp)| {
            let fall = (0..m).fold(T::one(), |f, i| f * T::from_usize_lossy(p - i));
            cp * fall * r.powi((p - m) as i32)
        })
        .sum()
}

/// A single spherical-harmonic channel f_{q,s}(r) Y_{q,s}(θ) on S².
#[derive(Clone, Debug, PartialEq)]
pub struct ModePhantom<T> {
    pub q: usize,
    pub s: usize,
    pub profile: RadialPhantom<T>,
}

impl<T: Real> ModePhantom<T> {
    pub fn new(q: usize, s: usize, profile: RadialPhantom<T>) -> Result<Self> {
        let count = harmonic_count(q, 3)? as usize;
        if s < 1 || s > count {
            return Err(Error::InvalidMode { q: q as i64, s: s as i64 });
        }
        Ok(Self { q, s, profile })
    }
}
