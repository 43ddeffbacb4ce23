//! Surface areas, Gegenbauer polynomials and real spherical harmonics on S².

use crate::error::{Error, Result};
use crate::scalar::Real;

/// ω_m, the area of the unit sphere S^m ⊂ ℝ^{m+1}.
///
/// Γ((m+1)/2) is taken exactly at integer and half-integer arguments.
pub fn omega<T: Real>(m: usize) -> T {
    let pi = T::PI();
    let two = T::lit(2.0);
    if m % 2 == 1 {
        let j = (m + 1) / 2;
        let fact: T = (1..j).map(T::from_usize_lossy).fold(T::one(), |a, b| a * b);
        two * pi.powi(j as i32) / fact
    } else {
        // 2 π^j 4^j j! / (2j)!
        let j = m / 2;
        let mut ratio = T::one();
        for i in 1..=j {
            ratio = ratio * T::lit(4.0) * T::from_usize_lossy(i)
                / (T::from_usize_lossy(2 * i - 1) * T::from_usize_lossy(2 * i));
        }
        two * pi.powi(j as i32) * ratio
    }
}

/// ω_m with a range check on m.
pub fn surface_area<T: Real>(m: i64) -> Result<T> {
    if m < 0 {
        return Err(Error::InvalidDimension(m));
    }
    Ok(omega(m as usize))
}

/// C_q^λ(x) by the three-term recurrence.
pub fn gegenbauer<T: Real>(q: usize, lam: T, x: T) -> Result<T> {
    if !(lam > T::zero()) {
        return Err(Error::InvalidParameter(format!("Gegenbauer parameter must be positive, got {lam}")));
    }
    Ok(gegenbauer_unchecked(q, lam, x))
}

pub(crate) fn gegenbauer_unchecked<T: Real>(q: usize, lam: T, x: T) -> T {
    let two = T::lit(2.0);
    let mut c0 = T::one();
    if q == 0 {
        return c0;
    }
    let mut c1 = two * lam * x;
    for j in 2..=q {
        let jj = T::from_usize_lossy(j);
        let c2 = (two * x * (jj + lam - T::one()) * c1 - (jj + two * lam - two) * c0) / jj;
        c0 = c1;
        c1 = c2;
    }
    c1
}

/// Legendre polynomial P_q(x).
pub fn legendre<T: Real>(q: usize, x: T) -> T {
    gegenbauer_unchecked(q, T::lit(0.5), x)
}

/// Fully normalized associated Legendre values P̄_l^m(x), l = m..=q, for fixed m ≥ 0,
/// scaled so that P̄_l^m(cos θ)·{1, √2 cos mφ, √2 sin mφ} is orthonormal on S².
fn normalized_assoc_legendre<T: Real>(q: usize, m: usize, x: T) -> T {
    let four_pi = T::lit(4.0) * T::PI();
    let sin = (T::one() - x * x).max(T::zero()).sqrt();
    let mut pmm = (T::one() / four_pi).sqrt();
    for i in 1..=m {
        let i = T::from_usize_lossy(i);
        pmm = pmm * sin * ((T::lit(2.0) * i + T::one()) / (T::lit(2.0) * i)).sqrt();
    }
    if q == m {
        return pmm;
    }
    let mf = T::from_usize_lossy(m);
    let mut p_prev = pmm;
    let mut p = (T::lit(2.0) * mf + T::lit(3.0)).sqrt() * x * pmm;
    for l in (m + 2)..=q {
        let lf = T::from_usize_lossy(l);
        let a = ((T::lit(4.0) * lf * lf - T::one()) / (lf * lf - mf * mf)).sqrt();
        let lm1 = lf - T::one();
        let b = ((lm1 * lm1 - mf * mf) / (T::lit(4.0) * lm1 * lm1 - T::one())).sqrt();
        let next = a * (x * p - b * p_prev);
        p_prev = p;
        p = next;
    }
    p
}

/// Real orthonormal spherical harmonic Y_{q,s}(θ, φ) on S², s = 1..=2q+1.
///
/// Order m = s − q − 1 ∈ [−q, q]; m = 0 (s = q+1) is zonal, m > 0 carries
/// √2 cos(mφ) and m < 0 carries √2 sin(|m|φ). θ is the polar angle.
pub fn real_sph_harm<T: Real>(q: usize, s: usize, theta: T, phi: T) -> Result<T> {
    if s < 1 || s > 2 * q + 1 {
        return Err(Error::InvalidMode { q: q as i64, s: s as i64 });
    }
    let m = s as i64 - q as i64 - 1;
    let p = normalized_assoc_legendre(q, m.unsigned_abs() as usize, theta.cos());
    let sqrt2 = T::SQRT_2();
    let mf = T::lit(m.unsigned_abs() as f64);
    Ok(match m.signum() {
        0 => p,
        1 => sqrt2 * p * (mf * phi).cos(),
        _ => sqrt2 * p * (mf * phi).sin(),
    })
}
