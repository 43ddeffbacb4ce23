//! Identity suites: exact combinatorial checks and numeric checks of the
//! moment relations G_{i,j} on a Gaussian phantom.
//!
//! D = t⁻¹ d/dt is applied to truncated Taylor series of G in t, so high
//! powers of D carry quadrature error only.

use std::ops::{Add, Mul, Sub};

use serde::Serialize;
use smt_core::forward::RadialPhantom;
use smt_core::numerics::{gauss_legendre, QuadratureRule};
use smt_core::specfun::exact::pow2;
use smt_core::specfun::{
    coeff_e, coeff_e_defining_sum, inner_sum_check, mode_prefactor, ode_coeffs, radial_prefactor, LaurentPoly,
};

use crate::error::CliResult;

/// Truncated Taylor series Σ c_m δ^m around a base point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet(pub Vec<f64>);

impl Jet {
    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Jet(c)
    }

    /// x0 + δ.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut j = Self::constant(x0, order);
        if order > 0 {
            j.0[1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    pub fn scale(&self, s: f64) -> Self {
        Jet(self.0.iter().map(|c| c * s).collect())
    }

    pub fn powi(&self, p: usize) -> Self {
        (0..p).fold(Self::constant(1.0, self.order()), |acc, _| &acc * self)
    }

    /// 1/x; the base value must be nonzero.
    pub fn recip(&self) -> Self {
        let a = &self.0;
        let mut b = vec![0.0; a.len()];
        b[0] = 1.0 / a[0];
        for m in 1..a.len() {
            let s: f64 = (1..=m).map(|j| a[j] * b[m - j]).sum();
            b[m] = -s / a[0];
        }
        Jet(b)
    }

    /// d/dδ; the top coefficient is lost, so the order drops by one.
    pub fn derivative(&self) -> Self {
        Jet((1..self.0.len()).map(|m| m as f64 * self.0[m]).collect())
    }

    /// D = t⁻¹ d/dt with `t` the jet of the independent variable.
    pub fn d(&self, t: &Jet) -> Self {
        let d = self.derivative();
        let inv = Jet(t.0[..d.0.len()].to_vec()).recip();
        &d * &inv
    }

    pub fn d_pow(&self, t: &Jet, r: usize) -> Self {
        (0..r).fold(self.clone(), |acc, _| acc.d(t))
    }

    /// f(u0 + slope·δ) from the derivatives f^{(m)}(u0).
    fn compose_linear(slope: f64, derivs: impl Fn(usize) -> f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        let mut fact = 1.0;
        let mut pow = 1.0;
        for (m, cm) in c.iter_mut().enumerate() {
            if m > 0 {
                fact *= m as f64;
                pow *= slope;
            }
            *cm = derivs(m) * pow / fact;
        }
        Jet(c)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let n = self.0.len().min(o.0.len());
        Jet((0..n).map(|i| self.0[i] + o.0[i]).collect())
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let n = self.0.len().min(o.0.len());
        Jet((0..n).map(|i| self.0[i] - o.0[i]).collect())
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.0.len().min(o.0.len());
        let mut c = vec![0.0; n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(c)
    }
}

/// G_{i,j} around t0 via G(t) = t ∫₀¹ F(t, 1 − t s) ds.
pub struct MomentJets<'a> {
    f: &'a RadialPhantom<f64>,
    rule: QuadratureRule<f64>,
    panels: usize,
    order: usize,
}

impl<'a> MomentJets<'a> {
    pub fn new(f: &'a RadialPhantom<f64>, order: usize) -> CliResult<Self> {
        Ok(Self { f, rule: gauss_legendre(24)?, panels: 24, order })
    }

    pub fn t(&self, t0: f64) -> Jet {
        Jet::variable(t0, self.order)
    }

    pub fn g(&self, i: usize, j: usize, t0: f64) -> Jet {
        let n = self.order;
        let t = self.t(t0);
        let one = Jet::constant(1.0, n);
        let opt = &one + &t;
        let omt = &one - &t;
        let opt2 = &opt * &opt;
        let omt2 = &omt * &omt;
        let c = &one - &(&t * &t);
        let mut acc = Jet::constant(0.0, n);
        let w = 1.0 / self.panels as f64;
        for p in 0..self.panels {
            let (a, b) = (p as f64 * w, (p + 1) as f64 * w);
            for (&x, &wx) in self.rule.nodes.iter().zip(&self.rule.weights) {
                let s = 0.5 * (a + b) + 0.5 * (b - a) * x;
                let weight = 0.5 * (b - a) * wx;
                let u0 = 1.0 - t0 * s;
                if self.f.eval(u0) == 0.0 && self.f.derivative(1, u0) == 0.0 {
                    continue;
                }
                let mut u = Jet::constant(u0, n);
                if n > 0 {
                    u.0[1] = -s;
                }
                let fu = Jet::compose_linear(-s, |m| self.f.derivative(m, u0), n);
                let u2 = &u * &u;
                let q = &(&opt2 - &u2) * &(&u2 - &omt2);
                let wv = &u2 + &c;
                let term = &(&(&u * &fu) * &q.powi(i)) * &wv.powi(j);
                acc = &acc + &term.scale(weight);
            }
        }
        &t * &acc
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactCheck {
    pub identity: String,
    pub index: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericCheck {
    pub identity: String,
    pub index: String,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub max_k: usize,
    pub max_q: usize,
    pub phantom: String,
    pub exact: Vec<ExactCheck>,
    pub numeric: Vec<NumericCheck>,
    pub exact_passed: bool,
    pub numeric_passed: bool,
    pub passed: bool,
}

/// Relative tolerance of the numeric suite.
pub const NUMERIC_TOL: f64 = 1e-4;
/// Evaluation points of the numeric suite.
pub const SAMPLE_T: [f64; 4] = [0.35, 0.5, 0.65, 0.8];

fn exact(identity: &str, index: String, lhs: impl ToString, rhs: impl ToString) -> ExactCheck {
    let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
    ExactCheck { identity: identity.into(), index, pass: lhs == rhs, lhs, rhs }
}

/// Abel–Aigner form of E_{n,m,l} against its defining sum, the inner-sum
/// identity, and the leading-coefficient law of the coefficient tables.
pub fn exact_suite(max_k: usize, max_q: usize) -> CliResult<Vec<ExactCheck>> {
    let mut out = Vec::new();
    let kk = max_k as i64;
    for l in 1..=kk {
        for n in 1..=l {
            for m in 1..=n {
                out.push(exact(
                    "abel-aigner",
                    format!("n={n},m={m},l={l}"),
                    coeff_e(n, m, l)?,
                    coeff_e_defining_sum(n, m, l)?,
                ));
            }
        }
    }
    for k in 0..=max_k {
        for l in 0..=k {
            let (lhs, rhs) = inner_sum_check(k, l)?;
            out.push(exact("inner-sum", format!("k={k},l={l}"), lhs, rhs));
        }
    }
    for k in 0..=max_k {
        for q in 0..=max_q {
            let order = q + k;
            let table = ode_coeffs(order);
            let pf = if q == 0 { radial_prefactor(k) } else { mode_prefactor(q, k) };
            let lead = table.laurent(order, &pf)?;
            let want = LaurentPoly::term(&pf * pow2(order as i64), (order + 1) as u32, order as i64);
            out.push(exact("leading-coefficient", format!("q={q},k={k}"), lead, want));
        }
    }
    Ok(out)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn numeric(identity: &str, index: String, t: f64, lhs: f64, rhs: f64) -> NumericCheck {
    let scale = lhs.abs().max(rhs.abs());
    let rel_err = if scale > 0.0 { (lhs - rhs).abs() / scale } else { 0.0 };
    NumericCheck { identity: identity.into(), index, t, lhs, rhs, rel_err, tol: NUMERIC_TOL, pass: rel_err <= NUMERIC_TOL }
}

/// The Gaussian the numeric suite runs on.
pub fn suite_phantom() -> CliResult<RadialPhantom<f64>> {
    Ok(RadialPhantom::gaussian(0.5, 0.05, 0.5)?)
}

/// Moment relations for indices up to `max_k`, the G_{m,r} lemma for r ≤ min(max_k, 3)
/// and m ≤ 2, and the D^{2k} h_k expansion for k ≤ min(max_k, 2).
pub fn numeric_suite(max_k: usize) -> CliResult<Vec<NumericCheck>> {
    let mut out = Vec::new();
    if max_k == 0 {
        return Ok(out);
    }
    let f = suite_phantom()?;
    let jets = MomentJets::new(&f, 5)?;
    for &t0 in &SAMPLE_T {
        let t = jets.t(t0);
        let d1 = |g: &Jet| g.d(&t).value();
        let omt = 1.0 - t0;
        out.push(numeric("dG00", String::new(), t0, jets.g(0, 0, t0).derivative().value(), omt * f.eval(omt)));
        for i in 1..=max_k {
            let lhs = d1(&jets.g(i, 0, t0));
            out.push(numeric("DG_i0", format!("i={i}"), t0, lhs, 4.0 * i as f64 * jets.g(i - 1, 1, t0).value()));
            for j in 1..=max_k {
                let lhs = d1(&jets.g(i, j, t0));
                let rhs = 4.0 * i as f64 * jets.g(i - 1, j + 1, t0).value() - 2.0 * j as f64 * jets.g(i, j - 1, t0).value();
                out.push(numeric("DG_ij", format!("i={i},j={j}"), t0, lhs, rhs));
            }
        }
        for j in 1..=max_k {
            let tj = omt.powi(j as i32 + 1) * f.eval(omt) / t0;
            let lhs = d1(&jets.g(0, j, t0));
            let rhs = 2f64.powi(j as i32) * tj - 2.0 * j as f64 * jets.g(0, j - 1, t0).value();
            out.push(numeric("DG_0j", format!("j={j}"), t0, lhs, rhs));
        }
        for r in 1..=max_k.min(3) {
            for m in 0..=2usize {
                let mut lhs = 0.0;
                for l in 0..=r / 2 {
                    let w = 4f64.powi(l as i32) * factorial(r) / (factorial(l) * factorial(r - 2 * l))
                        * factorial(m + r)
                        / factorial(m + r - l);
                    lhs += w * jets.g(m + r - l, 0, t0).d_pow(&t, r - 2 * l).value();
                }
                let rising: f64 = (m + 1..=m + r).map(|v| v as f64).product();
                let rhs = 4f64.powi(r as i32) * rising * jets.g(m, r, t0).value();
                out.push(numeric("G_mr-lemma", format!("m={m},r={r}"), t0, lhs, rhs));
            }
        }
        for k in 1..=max_k.min(2) {
            let lhs = jets.g(k, 0, t0).d_pow(&t, 2 * k).value();
            let mut sum = 0.0;
            for j in 0..k {
                let c = (-1f64).powi(j as i32) * factorial(k - 1 + j) / (factorial(k - 1 - j) * factorial(j));
                sum += c * jets.g(0, k - j, t0).d_pow(&t, k - j).value();
            }
            let rhs = factorial(k) * 4f64.powi(k as i32) * sum;
            out.push(numeric("D2k-h_k", format!("k={k}"), t0, lhs, rhs));
        }
    }
    Ok(out)
}

pub fn run(max_k: usize, max_q: usize) -> CliResult<IdentityReport> {
    let exact = exact_suite(max_k, max_q)?;
    let numeric = numeric_suite(max_k)?;
    let exact_passed = exact.iter().all(|c| c.pass);
    let numeric_passed = numeric.iter().all(|c| c.pass);
    Ok(IdentityReport {
        max_k,
        max_q,
        phantom: suite_phantom()?.label().to_string(),
        exact,
        numeric,
        exact_passed,
        numeric_passed,
        passed: exact_passed && numeric_passed,
    })
}
