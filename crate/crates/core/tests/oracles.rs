//! Independent oracles for forward operators, coefficient tables and the
//! closed-form solution kernels.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smt_core::forward::{forward_radial_h, funk_hecke_oracle, radial_scale, simulate_radial, RadialPhantom};
use smt_core::inversion::{assemble_rhs, detect_support_gap, error_metrics, n5_homogeneous, n7_pair, n7_wronskian};
use smt_core::numerics::{gauss_legendre, DiffMethod, Grid1D, SampledFn};
use smt_core::specfun::{harmonic_count, ode_coeffs, radial_prefactor};

fn fig1() -> RadialPhantom<f64> {
    RadialPhantom::gaussian(0.5, 0.05, 0.5).unwrap()
}

/// Exponent vectors of all degree-`q` monomials in `n` variables.
fn monomials(n: usize, q: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![q]];
    }
    let mut out = Vec::new();
    for a in 0..=q {
        for mut rest in monomials(n - 1, q - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// dim ker(Δ: P_q → P_{q−2}) by exact elimination.
fn harmonic_dimension(n: usize, q: usize) -> usize {
    let src = monomials(n, q);
    if q < 2 {
        return src.len();
    }
    let dst = monomials(n, q - 2);
    let index: HashMap<Vec<usize>, usize> = dst.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = vec![vec![BigRational::zero(); src.len()]; dst.len()];
    for (col, m) in src.iter().enumerate() {
        for i in 0..n {
            if m[i] >= 2 {
                let mut e = m.clone();
                e[i] -= 2;
                let c = BigInt::from(m[i] * (m[i] - 1));
                mat[index[&e]][col] += BigRational::from_integer(c);
            }
        }
    }
    src.len() - rank(mat)
}

#[test]
fn harmonic_count_matches_laplacian_kernel_dimension() {
    for n in [3usize, 5, 7] {
        for q in 0..=4 {
            assert_eq!(harmonic_count(q, n as i64).unwrap() as usize, harmonic_dimension(n, q), "n={n} q={q}");
        }
    }
    assert_eq!(harmonic_dimension(5, 2), 14);
}

#[test]
fn sphere_average_monte_carlo() {
    let f = fig1();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = 1_000_000;
    let t = 0.5;
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..samples {
        // Marsaglia: uniform direction from the rejection-sampled disc
        let (x1, x2) = loop {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(-1.0..1.0);
            if a * a + b * b < 1.0 {
                break (a, b);
            }
        };
        let s = x1 * x1 + x2 * x2;
        let w = [2.0 * x1 * (1.0 - s).sqrt(), 2.0 * x2 * (1.0 - s).sqrt(), 1.0 - 2.0 * s];
        let x = [t * w[0], t * w[1], 1.0 + t * w[2]];
        let v = f.eval((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt());
        sum += v;
        sum2 += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let se = ((sum2 / n - mean * mean) / n).sqrt();
    let value = funk_hecke_oracle(&f, 3, t, &gauss_legendre(64).unwrap()).unwrap();
    assert!((value - mean).abs() <= 3.0 * se, "{value} vs {mean} ± {se}");
}

/// h(t) = ∫_{1−t}^1 u f(u) du for the Fig-1 Gaussian, via erf.
fn gaussian_h0(t: f64) -> f64 {
    let (c, w, amp) = (0.5, 0.05, 0.5);
    let s2 = std::f64::consts::SQRT_2 * w;
    let anti = |u: f64| {
        let z = (u - c) / s2;
        amp * (c * w * (std::f64::consts::PI / 2.0).sqrt() * libm::erf(z) - w * w * (-z * z).exp())
    };
    anti(1.0) - anti(1.0 - t)
}

#[test]
fn support_gap_against_closed_form_data() {
    let grid = Grid1D::uniform(0.0001, 0.9999, 150).unwrap();
    let data = simulate_radial(&fig1(), 3, &grid, &gauss_legendre(64).unwrap()).unwrap();
    let h = SampledFn::from_fn(grid.clone(), |t| data_h(&data.samples, t), "h").unwrap();
    let threshold = 1e-9;
    let found = detect_support_gap(&h, threshold);
    let exact: Vec<f64> = grid.points().iter().map(|&t| gaussian_h0(t)).collect();
    let first = exact.iter().position(|v| v.abs() > threshold).unwrap();
    let expected = grid.points()[first - 1];
    let spacing = grid.spacing().unwrap();
    assert!((found - expected).abs() <= spacing, "{found} vs {expected}");
    assert!((found - 0.22).abs() < 0.01);
}

fn data_h(g: &SampledFn<f64>, t: f64) -> f64 {
    let i = g.grid().points().iter().position(|&x| x == t).unwrap();
    g.values()[i] * radial_scale(3, t).unwrap()
}

#[test]
fn kernel_form_h0_matches_erf_oracle() {
    let rule = gauss_legendre(64).unwrap();
    for t in [0.3, 0.45, 0.5, 0.62, 0.9] {
        let got = forward_radial_h(&fig1(), 0, t, &rule).unwrap();
        assert!((got - gaussian_h0(t)).abs() < 1e-13, "t={t}");
    }
}

#[test]
fn rhs_of_simulated_data_matches_coefficient_expansion() {
    let rule = gauss_legendre(64).unwrap();
    let f = RadialPhantom::gaussian(0.5, 0.1, 1.0).unwrap();
    let grid = Grid1D::uniform(0.02, 0.98, 600).unwrap();
    for k in [1usize, 2] {
        let n = 2 * k as u32 + 3;
        let h = SampledFn::from_fn(grid.clone(), |t| forward_radial_h(&f, k, t, &rule).unwrap(), "h").unwrap();
        // a wide high-degree fit keeps round-off in the fifth derivative below the tolerance
        let l = assemble_rhs(&h, 2 * k, DiffMethod::LocalPolyfit { degree: 12, window: 31 }).unwrap();
        let table = ode_coeffs(k);
        let pf = radial_prefactor(k);
        let expect: Vec<(f64, f64)> = grid
            .points()
            .iter()
            .filter(|&&t| (0.1..=0.9).contains(&t))
            .map(|&t| {
                let v: f64 = (0..=k).map(|m| table.eval(m, &t, &pf).unwrap() * f.derivative(m, 1.0 - t)).sum();
                (t, v)
            })
            .collect();
        let scale = expect.iter().fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        for (t, v) in expect {
            let i = grid.floor_index(t).unwrap();
            let got = l.values()[i];
            assert!((got - v).abs() <= 1e-5 * scale, "n={n} t={t}: {got} vs {v}");
        }
    }
}

fn d1(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
}

fn d2(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (-f(t - 2.0 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h * h)
}

#[test]
fn five_dim_kernel_solves_homogeneous_equation() {
    let table = ode_coeffs(1);
    let pf = radial_prefactor(1);
    for i in 1..20 {
        let t = 0.05 + 0.045 * i as f64;
        let y = n5_homogeneous(t);
        let dy = d1(n5_homogeneous, t, 1e-4);
        assert!((dy - (1.0 + t + t * t) / (t * (1.0 - t)) * y).abs() <= 1e-8 * dy.abs(), "t={t}");
        // substituted equation: a_0 y − a_1 y′ = 0
        let res = table.eval(0, &t, &pf).unwrap() * y - table.eval(1, &t, &pf).unwrap() * dy;
        assert!(res.abs() <= 1e-8 * (table.eval(0, &t, &pf).unwrap() * y).abs());
        let mu = t.exp() * (1.0 - t).powi(3) / t;
        assert!((mu * y - 1.0).abs() < 1e-12);
    }
}

#[test]
fn seven_dim_pair_wronskian_and_homogeneous_equation() {
    let table = ode_coeffs(2);
    let pf = radial_prefactor(2);
    let f1 = |t: f64| n7_pair(t).0;
    let f2 = |t: f64| n7_pair(t).1;
    for i in 0..20 {
        let t = 0.1 + 0.8 * i as f64 / 19.0;
        let w = f1(t) * d1(f2, t, 1e-4) - d1(f1, t, 1e-4) * f2(t);
        assert!((w - n7_wronskian(t)).abs() <= 1e-8 * n7_wronskian(t).abs(), "t={t}: {w}");
        let a: Vec<f64> = (0..=2).map(|m| table.eval(m, &t, &pf).unwrap()).collect();
        for g in [&f1 as &dyn Fn(f64) -> f64, &f2] {
            let terms = [a[0] * g(t), -a[1] * d1(g, t, 1e-4), a[2] * d2(g, t, 1e-3)];
            let scale = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let res: f64 = terms.iter().sum();
            assert!(res.abs() <= 1e-6 * scale, "t={t}: residual {res} vs {scale}");
        }
    }
}

#[test]
fn relative_error_of_disjoint_profiles() {
    let grid = Grid1D::uniform(0.01, 0.99, 2001).unwrap();
    let bump = |c: f64, r: f64| if (r - c).abs() < 0.1 { (1.0 - ((r - c) / 0.1).powi(2)).powi(3) } else { 0.0 };
    let rec = SampledFn::from_fn(grid, |r| 0.5 * bump(0.2, r), "rec").unwrap();
    let m = error_metrics(&rec, |r| bump(0.7, r), 0.05, 0.95).unwrap();
    // ‖rec − truth‖² = ‖rec‖² + ‖truth‖² for disjoint supports
    let expected = (1.0f64 + 0.25).sqrt();
    assert!((m.rel_l2.unwrap() - expected).abs() < 1e-6, "{m:?}");
}
