//! Exact Laurent polynomials in t with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::exact::{binomial, Rational};
use crate::scalar::Field;

/// Σ_e c_e t^e with finitely many non-zero c_e, e ∈ ℤ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// (1−t)^p for p ≥ 0.
    pub fn one_minus_t_pow(p: u32) -> Self {
        let mut out = Self::zero();
        for i in 0..=p as i64 {
            let c = binomial(p as i64, i) * if i % 2 == 0 { 1 } else { -1 };
            out.add_term(i, Rational::from_integer(c));
        }
        out
    }

    /// c · (1−t)^a / t^b.
    pub fn term(c: Rational, a: u32, b: i64) -> Self {
        Self::one_minus_t_pow(a).shift(-b).scale(&c)
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    /// Multiply by t^s.
    pub fn shift(&self, s: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect() }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e - 1, c * Rational::from_integer((*e).into()));
        }
        out
    }

    /// D p = t^{-1} p′.
    pub fn apply_d(&self) -> Self {
        self.derivative().shift(-1)
    }

    pub fn apply_d_pow(&self, r: usize) -> Self {
        (0..r).fold(self.clone(), |p, _| p.apply_d())
    }

    pub fn eval<F: Field>(&self, t: &F) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut pw = F::one();
            for _ in 0..e.unsigned_abs() {
                pw = pw * t.clone();
            }
            let pw = if *e < 0 { F::one() / pw } else { pw };
            acc = acc + F::from_rational(c) * pw;
        }
        acc
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})t^{e}")?;
        }
        Ok(())
    }
}
