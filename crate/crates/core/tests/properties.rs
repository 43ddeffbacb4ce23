use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use smt_core::forward::{add_noise, forward_radial_h, h_from_smt, q_kernel, simulate_radial, smt_from_h, RadialPhantom, SmtData};
use smt_core::inversion::{invert_radial, EpsPrime, InversionOptions};
use smt_core::numerics::{gauss_legendre, interpolate, DiffMethod, Grid1D, SampledFn};
use smt_core::specfun::exact::pow2;
use smt_core::specfun::{ode_coeffs, radial_prefactor};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smt_scaling_round_trip(x in -1e3f64..1e3, t in 1e-3f64..0.999, k in 0u32..4) {
        let n = 2 * k + 3;
        let back = h_from_smt(smt_from_h(x, n, t).unwrap(), n, t).unwrap();
        prop_assert!((back - x).abs() <= 1e-14 * x.abs().max(1e-300));
    }

    #[test]
    fn quadrature_is_exact_on_monomials(order in 1usize..48, frac in 0.0f64..1.0) {
        let rule = gauss_legendre::<f64>(order).unwrap();
        let p = ((2 * order - 1) as f64 * frac) as i32;
        let got = rule.integrate(|x| x.powi(p), -1.0, 1.0).unwrap();
        let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
        prop_assert!((got - exact).abs() < 1e-12, "order={} p={}", order, p);
    }

    #[test]
    fn interpolation_reproduces_cubics(
        c in prop::array::uniform4(-5.0f64..5.0),
        x in 0.1f64..0.9,
    ) {
        let cubic = |t: f64| c[0] + t * (c[1] + t * (c[2] + t * c[3]));
        let s = SampledFn::from_fn(Grid1D::uniform(0.1, 0.9, 37).unwrap(), cubic, "p").unwrap();
        prop_assert!((interpolate(&s, x).unwrap() - cubic(x)).abs() < 1e-12);
    }

    #[test]
    fn kernel_vanishes_at_inner_radius(t in 0.0f64..1.0) {
        prop_assert!(q_kernel(t, 1.0 - t).abs() < 1e-15);
    }

    #[test]
    fn forward_vanishes_out_of_reach(center in 0.2f64..0.6, width in 0.005f64..0.03, frac in 0.0f64..1.0, k in 0usize..3) {
        let f = RadialPhantom::gaussian(center, width, 1.0).unwrap();
        let reach = 1.0 - f.support().1;
        let t = (reach * frac).max(1e-6);
        let h = forward_radial_h(&f, k, t, &gauss_legendre(32).unwrap()).unwrap();
        prop_assert!(h.abs() <= 1e-12);
    }

    #[test]
    fn noise_is_bounded(amplitude in 0.0f64..1e-3, seed in any::<u64>()) {
        let s = SampledFn::from_fn(Grid1D::uniform(0.01, 0.99, 200).unwrap(), |t: f64| t.sin(), "s").unwrap();
        let noisy = add_noise(&s, amplitude, seed).unwrap();
        for (a, b) in s.values().iter().zip(noisy.values()) {
            prop_assert!((a - b).abs() <= amplitude);
        }
    }

    #[test]
    fn leading_coefficient_law_at_rational_points(k in 0usize..6, num in 1i64..97) {
        let t = BigRational::new(BigInt::from(num), BigInt::from(97));
        let pf = radial_prefactor(k);
        let table = ode_coeffs(k);
        let got = table.eval(k, &t, &pf).unwrap();
        let one = BigRational::from_integer(1.into());
        let mut expect = &pf * &pow2(k as i64);
        for _ in 0..=k {
            expect = &expect * &(&one - &t);
        }
        for _ in 0..k {
            expect = &expect / &t;
        }
        prop_assert_eq!(got, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn causal_inversion_ignores_dropped_data(center in 0.35f64..0.7, k in 0u32..3, r0 in 0.25f64..0.6) {
        let n = 2 * k + 3;
        let f = RadialPhantom::gaussian(center, 0.05, 0.5).unwrap();
        let grid = Grid1D::uniform(0.05, 0.95, 200).unwrap();
        let data = simulate_radial(&f, n, &grid, &gauss_legendre(64).unwrap()).unwrap();
        let opts = InversionOptions { diff: DiffMethod::Causal, eps_prime: EpsPrime::Value(0.06), ..Default::default() };
        let full = invert_radial(&data, &opts).unwrap();
        let keep = grid.points().iter().filter(|&&t| t <= 1.0 - r0).count();
        let cut = SmtData::new(n, data.kind, data.samples.slice(0..keep).unwrap()).unwrap();
        let part = invert_radial(&cut, &opts).unwrap();
        let offset = full.profile.len() - part.profile.len();
        prop_assert_eq!(part.profile.values(), &full.profile.values()[offset..]);
    }
}
