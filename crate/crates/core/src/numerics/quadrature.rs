use crate::error::{Error, Result};
use crate::scalar::Real;

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub order: usize,
}

/// Legendre P_n(x) and P_{n-1}(x) by the three-term recurrence.
fn legendre_pair<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::from_usize_lossy(k);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Nodes and weights of the `order`-point Gauss–Legendre rule, ascending.
pub fn gauss_legendre<T: Real>(order: usize) -> Result<QuadratureRule<T>> {
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let n = order;
    let nf = T::from_usize_lossy(n);
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, refined by Newton.
        let mut x = (T::PI() * (T::from_usize_lossy(i) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, pm1) = legendre_pair(n, x);
            dp = nf * (x * p - pm1) / (x * x - T::one());
            let dx = p / dp;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) {
                let (p, pm1) = legendre_pair(n, x);
                dp = nf * (x * p - pm1) / (x * x - T::one());
                break;
            }
        }
        if n % 2 == 1 && i == half - 1 {
            x = T::zero();
            let (_, pm1) = legendre_pair(n, x);
            dp = nf * (-pm1) / (-T::one());
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok(QuadratureRule { nodes, weights, order })
}

impl<T: Real> QuadratureRule<T> {
    /// Estimate of ∫ₐᵇ f by affine mapping of the rule.
    pub fn integrate(&self, f: impl Fn(T) -> T, a: T, b: T) -> Result<T> {
        if !(a < b) {
            return Err(Error::InvalidInterval {
                a: a.to_f64().unwrap_or(f64::NAN),
                b: b.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.integrate_unchecked(&f, a, b))
    }

    pub(crate) fn integrate_unchecked(&self, f: &impl Fn(T) -> T, a: T, b: T) -> T {
        let half = (b - a) * T::lit(0.5);
        let mid = (b + a) * T::lit(0.5);
        let s: T = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        s * half
    }

    /// Sum of the rule over consecutive panels `[breaks[i], breaks[i+1]]`.
    /// Degenerate panels contribute nothing.
    pub fn integrate_panels(&self, f: impl Fn(T) -> T, breaks: &[T]) -> T {
        breaks
            .windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| self.integrate_unchecked(&f, w[0], w[1]))
            .sum()
    }
}

/// Free-function form of [`QuadratureRule::integrate`].
pub fn integrate<T: Real>(f: impl Fn(T) -> T, a: T, b: T, rule: &QuadratureRule<T>) -> Result<T> {
    rule.integrate(f, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders_match_textbook() {
        let r1 = gauss_legendre::<f64>(1).unwrap();
        assert_eq!(r1.nodes, vec![0.0]);
        assert_eq!(r1.weights, vec![2.0]);
        let r2 = gauss_legendre::<f64>(2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r2.nodes[0] + x).abs() < 1e-15 && (r2.nodes[1] - x).abs() < 1e-15);
        assert!((r2.weights[0] - 1.0).abs() < 1e-15 && (r2.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(gauss_legendre::<f64>(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn quartic_with_three_points() {
        let r = gauss_legendre::<f64>(3).unwrap();
        let v = r.integrate(|x| x.powi(4), -1.0, 1.0).unwrap();
        assert!((v - 0.4).abs() < 1e-14);
    }

    #[test]
    fn integrate_examples() {
        let r = gauss_legendre::<f64>(16).unwrap();
        assert!((integrate(|_| 1.0, 0.0, 1.0, &r).unwrap() - 1.0).abs() < 1e-15);
        let r1 = gauss_legendre::<f64>(1).unwrap();
        assert!((integrate(|u| u, 0.0, 1.0, &r1).unwrap() - 0.5).abs() < 1e-14);
        let e = integrate(f64::exp, 0.0, 1.0, &r).unwrap();
        assert!((e - (std::f64::consts::E - 1.0)).abs() < 1e-12);
        assert!(integrate(|u| u, 1.0, 1.0, &r).is_err());
    }

    #[test]
    fn exactness_and_weight_sum_up_to_order_128() {
        for order in (1..=40).chain([64, 96, 128]) {
            let r = gauss_legendre::<f64>(order).unwrap();
            let wsum: f64 = r.weights.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-12, "order {order}: {wsum}");
            assert!(r.nodes.iter().all(|&x| x > -1.0 && x < 1.0));
            assert!(r.weights.iter().all(|&w| w > 0.0));
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            // monomials up to degree 2·order − 1; high powers are tiny for
            // large orders, so cap to keep the comparison meaningful
            for p in 0..(2 * order).min(60) {
                let v = r.integrate(|x| x.powi(p as i32), -1.0, 1.0).unwrap();
                let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
                assert!((v - exact).abs() < 1e-12, "order {order} degree {p}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn single_precision_rule() {
        let r = gauss_legendre::<f32>(8).unwrap();
        let v = r.integrate(|x| x * x, -1.0, 1.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn panels_skip_degenerate() {
        let r = gauss_legendre::<f64>(4).unwrap();
        let v = r.integrate_panels(|x| x, &[0.0, 0.5, 0.5, 1.0]);
        assert!((v - 0.5).abs() < 1e-15);
    }
}
