//! Exact combinatorial coefficients.
//!
//! Everything here is computed with arbitrary-precision integers and reduced
//! rationals; conversion to floating point happens only at evaluation time.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// n! for n ≥ 0.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// 2^e as an exact rational; `e` may be negative.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// (−1)^e.
pub fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn binomial_nonneg(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient C(a, b) extended to all integers.
///
/// For a ≥ 0 this is zero whenever b < 0 or b > a. A negative upper index
/// uses the Gamma-limit extension: (−1)^b C(b−a−1, b) for b ≥ 0,
/// (−1)^{a−b} C(−b−1, a−b) for b ≤ a, and zero for a < b < 0.
pub fn binomial_ext(a: i64, b: i64) -> BigInt {
    if a >= 0 {
        if b < 0 || b > a {
            BigInt::zero()
        } else {
            binomial_nonneg(a as u64, b as u64)
        }
    } else if b >= 0 {
        sign(b) * binomial_nonneg((b - a - 1) as u64, b as u64)
    } else if b <= a {
        sign(a - b) * binomial_nonneg((-b - 1) as u64, (a - b) as u64)
    } else {
        BigInt::zero()
    }
}

/// Binomial coefficient, zero whenever b < 0 or b > a.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        BigInt::zero()
    } else {
        binomial_nonneg(a as u64, b as u64)
    }
}

fn fact_i(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    factorial(n as u64)
}

/// Weights w_{r,j}, j = 1..=r, with D^r f = Σ_j w_{r,j} f^{(j)} / t^{2r−j}
/// for D = t^{-1} d/dt. Index 0 of the result holds j = 1.
pub fn d_weights(r: usize) -> Result<Vec<Rational>> {
    if r < 1 {
        return Err(Error::InvalidParameter("d_weights needs r >= 1".into()));
    }
    let r = r as i64;
    Ok((1..=r)
        .map(|j| {
            let num = sign(r - j) * fact_i(2 * r - 1 - j);
            let den = fact_i(r - j) * fact_i(j - 1);
            Rational::new(num, den) * pow2(-(r - j))
        })
        .collect())
}

/// Closed form E_{n,m,l} = (l−1)!/(2^{n−m} m!) · C(l+1, n+2) · C(l−1+n−m, n−m).
///
/// Defined for l ≥ 1 and m ≥ 0; any n is accepted, out-of-range binomials
/// vanish (so E_{m−1,m,l} = 0).
pub fn coeff_e(n: i64, m: i64, l: i64) -> Result<Rational> {
    if l < 1 || m < 0 {
        return Err(Error::InvalidParameter(format!("E_{{{n},{m},{l}}} needs l >= 1, m >= 0")));
    }
    let b = binomial(l + 1, n + 2) * binomial(l - 1 + n - m, n - m);
    if b.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(fact_i(l - 1) * b, fact_i(m)) * pow2(-(n - m)))
}

/// The pre-Abel–Aigner defining sum of E_{n,m,l}, valid for m ≥ 1.
pub fn coeff_e_defining_sum(n: i64, m: i64, l: i64) -> Result<Rational> {
    if l < 1 || m < 1 || n < m {
        return Err(Error::InvalidParameter(format!("defining sum needs l >= 1, 1 <= m <= n (got n={n}, m={m}, l={l})")));
    }
    let outer = binomial(l + 1, l - 1 - n);
    let mut acc = Rational::zero();
    for p in m..=n {
        let num = fact_i(l - 1) * fact_i(2 * p - 1 - m) * &outer * binomial(l - 1 + n - 2 * p, n - p);
        let den = fact_i(p) * fact_i(p - m) * fact_i(m - 1);
        acc += Rational::new(num, den) * pow2(-(n - m));
    }
    Ok(acc)
}

/// Both sides of Σ_{j=0}^{k−l} 2^{k−j}(2j)!(k−j)!/j!·C(k−1+j, k−1−j) = 2^l (2k−l)!/(k−l)!.
pub fn inner_sum_check(k: usize, l: usize) -> Result<(Rational, Rational)> {
    inner_sum_with(k, l, binomial_ext)
}

pub(crate) fn inner_sum_with(
    k: usize,
    l: usize,
    binom: impl Fn(i64, i64) -> BigInt,
) -> Result<(Rational, Rational)> {
    if l > k {
        return Err(Error::InvalidParameter(format!("inner sum needs l <= k (l={l}, k={k})")));
    }
    let (k, l) = (k as i64, l as i64);
    let mut lhs = BigInt::zero();
    for j in 0..=(k - l) {
        let term = (BigInt::one() << (k - j) as usize) * fact_i(2 * j) * fact_i(k - j) / fact_i(j)
            * binom(k - 1 + j, k - 1 - j);
        lhs += term;
    }
    let rhs = (BigInt::one() << l as usize) * fact_i(2 * k - l) / fact_i(k - l);
    Ok((Rational::from_integer(lhs), Rational::from_integer(rhs)))
}

fn check_odd_dimension(n: i64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        Err(Error::InvalidDimension(n))
    } else {
        Ok(())
    }
}

/// C_q^{(n−2)/2}(1) = (n−3+q)! / ((n−3)! q!).
pub fn gegenbauer_at_one(q: usize, n: i64) -> Result<Rational> {
    check_odd_dimension(n)?;
    let q = q as i64;
    Ok(Rational::new(fact_i(n - 3 + q), fact_i(n - 3) * fact_i(q)))
}

/// Dimension of degree-q spherical harmonics on S^{n−1}:
/// (2q+n−2)·(n+q−3)! / (q!·(n−2)!).
pub fn harmonic_count(q: usize, n: i64) -> Result<u64> {
    check_odd_dimension(n)?;
    let q = q as i64;
    let v = BigInt::from(2 * q + n - 2) * fact_i(n + q - 3) / (fact_i(q) * fact_i(n - 2));
    Ok(u64::try_from(v).expect("harmonic count fits in u64"))
}

/// Coefficients of D^l {(1−t)^{p+1}/t}:
/// (−1)^l l! Σ_s 2^{−s} C(p+1, l−s) C(l+s, s) (1−t)^{p−l+s+1} / t^{l+s+1}.
///
/// Returned as (coefficient, power of (1−t), power of 1/t) for s = 0..=l.
pub fn d_power_of_one_minus_t_over_t(l: usize, p: usize) -> Vec<(Rational, i64, i64)> {
    let (l, p) = (l as i64, p as i64);
    (0..=l)
        .map(|s| {
            let c = Rational::from_integer(sign(l) * fact_i(l) * binomial(p + 1, l - s) * binomial(l + s, s))
                * pow2(-s);
            (c, p - l + s + 1, l + s + 1)
        })
        .collect()
}

/// Tests whether `x` is an exact integer.
pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one() || x.denom().abs().is_one()
}
