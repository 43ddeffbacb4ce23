//! Coefficient tables of the reconstruction ODE.
//!
//! The ODE reads d/dt D^r h(t) = Σ_{m=0}^{K} a_m(t) f^{(m)}(1−t) with
//! a_m(t) = prefactor · Σ_{n=m}^{K} Σ_{l=n}^{K} c(m,n,l) (1−t)^{n+1} / t^{l+n−m}.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::exact::{binomial, factorial, pow2, sign, Rational};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalar::{rational_to_real, Field, Real};

/// Exact table c(m,n,l) for 0 ≤ m ≤ n ≤ l ≤ K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    order: usize,
    entries: BTreeMap<(usize, usize, usize), Rational>,
}

/// 2^{l+m−n} (2K−l)! / ((K−l)! m!) · C(l+1, n+1) · C(l+n−m, n−m).
pub fn table_entry(k: usize, m: usize, n: usize, l: usize) -> Rational {
    let (mi, ni, li) = ( m as i64, n as i64, l as i64);
    let num = factorial((2 * k - l) as u64) * binomial(li + 1, ni + 1) * binomial(li + ni - mi, ni - mi);
    let den = factorial((k - l) as u64) * factorial(m as u64);
    Rational::new(num, den) * pow2(li + mi - ni)
}

/// Builds the table for ODE order K.
pub fn ode_coeffs(k: usize) -> CoeffTable {
    let mut entries = BTreeMap::new();
    for l in 0..=k {
        for n in 0..=l {
            for m in 0..=n {
                entries.insert((m, n, l), table_entry(k, m, n, l));
            }
        }
    }
    CoeffTable { order: k, entries }
}

/// (−1)^K K! 4^K, the prefactor of the radial ODE with K = k.
pub fn radial_prefactor(k: usize) -> Rational {
    Rational::from_integer(sign(k as i64) * factorial(k as u64)) * pow2(2 * k as i64)
}

/// (−1)^{q+k} k! / 2^q, the prefactor of the mode-(q, s) ODE with K = q + k.
pub fn mode_prefactor(q: usize, k: usize) -> Rational {
    Rational::from_integer(sign((q + k) as i64) * factorial(k as u64)) * pow2(-(q as i64))
}

#[derive(Serialize)]
struct JsonEntry {
    m: usize,
    n: usize,
    l: usize,
    num: String,
    den: String,
}

impl CoeffTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, m: usize, n: usize, l: usize) -> Option<&Rational> {
        self.entries.get(&(m, n, l))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Rational)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_m(&self, m: usize) -> Result<()> {
        if m > self.order {
            return Err(Error::InvalidParameter(format!(
                "coefficient index m = {m} exceeds ODE order {}",
                self.order
            )));
        }
        Ok(())
    }

    /// a_m(t)/prefactor as terms (c, power of (1−t), power of 1/t).
    pub fn terms(&self, m: usize) -> Result<Vec<(Rational, u32, i64)>> {
        self.check_m(m)?;
        let k = self.order;
        let mut out = Vec::new();
        for n in m..=k {
            for l in n..=k {
                let c = &self.entries[&(m, n, l)];
                if !c.is_zero() {
                    out.push((c.clone(), (n + 1) as u32, (l + n - m) as i64));
                }
            }
        }
        Ok(out)
    }

    /// a_m(t) as an exact Laurent polynomial.
    pub fn laurent(&self, m: usize, prefactor: &Rational) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for (c, a, b) in self.terms(m)? {
            acc = &acc + &LaurentPoly::term(c * prefactor, a, b);
        }
        Ok(acc)
    }

    /// Evaluates a_m(t) in any field, exact or floating.
    pub fn eval<F: Field>(&self, m: usize, t: &F, prefactor: &Rational) -> Result<F> {
        self.check_m(m)?;
        if !(*t > F::zero() && *t < F::one()) {
            return Err(Error::InvalidParameter("coefficient evaluation needs 0 < t < 1".into()));
        }
        let omt = F::one() - t.clone();
        let mut acc = F::zero();
        for (c, a, b) in self.terms(m)? {
            let mut v = F::from_rational(&c);
            for _ in 0..a {
                v = v * omt.clone();
            }
            for _ in 0..b {
                v = v / t.clone();
            }
            acc = acc + v;
        }
        Ok(acc * F::from_rational(prefactor))
    }

    /// Pre-converts the table into a fast floating-point evaluator.
    pub fn compile<T: Real>(&self, prefactor: &Rational) -> CompiledCoeffs<T> {
        let k = self.order;
        let pf: T = rational_to_real(prefactor);
        let rows = (0..=k)
            .map(|m| {
                self.terms(m)
                    .expect("m in range")
                    .into_iter()
                    .map(|(c, a, b)| (rational_to_real::<T>(&c) * pf, a as i32, b as i32))
                    .collect()
            })
            .collect();
        CompiledCoeffs { rows }
    }

    /// JSON dump with the radial prefactor and, if given, the mode prefactor for (q, k).
    pub fn to_json(&self, mode: Option<(usize, usize)>) -> serde_json::Value {
        let entries: Vec<JsonEntry> = self
            .entries
            .iter()
            .map(|((m, n, l), v)| JsonEntry {
                m: *m,
                n: *n,
                l: *l,
                num: v.numer().to_string(),
                den: v.denom().to_string(),
            })
            .collect();
        let mut obj = serde_json::json!({
            "K": self.order,
            "prefactor_radial": radial_prefactor(self.order).to_string(),
            "entries": entries,
        });
        if let Some((q, k)) = mode {
            obj[format!("prefactor_mode({q},{k})")] = serde_json::Value::String(mode_prefactor(q, k).to_string());
        }
        obj
    }
}

/// Floating-point view of a_m(t) for all m, prefactor folded in.
#[derive(Clone, Debug)]
pub struct CompiledCoeffs<T> {
    rows: Vec<Vec<(T, i32, i32)>>,
}

impl<T: Real> CompiledCoeffs<T> {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn eval(&self, m: usize, t: T) -> T {
        let omt = T::one() - t;
        self.rows[m].iter().map(|&(c, a, b)| c * omt.powi(a) / t.powi(b)).sum()
    }

    /// All coefficients a_0..a_K at t.
    pub fn eval_all(&self, t: T, out: &mut [T]) {
        for (m, o) in out.iter_mut().enumerate().take(self.rows.len()) {
            *o = self.eval(m, t);
        }
    }
}

/// P_{m,l}(t) = Σ_{n=m}^{l−1} E_{n,m,l} (1−t)^{n+2} / t^{n+l−m}.
pub fn p_ml(m: usize, l: usize) -> Result<LaurentPoly> {
    if l < 1 || m >= l {
        return Err(Error::InvalidParameter(format!("P_{{m,l}} needs 0 <= m < l (m={m}, l={l})")));
    }
    let mut acc = LaurentPoly::zero();
    for n in m..l {
        let e = super::exact::coeff_e(n as i64, m as i64, l as i64)?;
        acc = &acc + &LaurentPoly::term(e, (n + 2) as u32, (n + l - m) as i64);
    }
    Ok(acc)
}

/// D^{r}{(1−t)^{p+1}/t} computed by repeated exact differentiation.
pub fn d_pow_one_minus_t_over_t(r: usize, p: u32) -> LaurentPoly {
    LaurentPoly::term(Rational::one(), p + 1, 1).apply_d_pow(r)
}
