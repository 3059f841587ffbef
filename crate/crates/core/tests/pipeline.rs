//! End-to-end checks through the public API: a slice function goes through
//! the Fueter map, is evaluated, paired with kernels and written to CSV.

use fueter_core::appell::{appell_q, t_values};
use fueter_core::kernels::{evaluate, fock_fueter_kernel, Form, KernelName, KernelSpec};
use fueter_core::operators::{fueter_series, laplacian_fd, OperatorTable, FD_STEP};
use fueter_core::quadrature::{gauss_hermite, slice_gauss};
use fueter_core::scalar::rational;
use fueter_core::series::{qq_eval, qq_eval_f64, read_coeffs_csv, regular_eval, regular_eval_exact, write_coeffs_csv};
use fueter_core::transforms::{
    bargmann_fock_fueter, coefficient_inner_product, fock_fueter_transform, g_coefficients, regular_to_slice,
    segal_bargmann, slice_to_regular, Signal, SpaceTag,
};
use fueter_core::{ImaginaryUnit, QQbarPoly, Quaternion, Rational, RegularSeries, SliceSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn sample_slice() -> SliceSeries {
    SliceSeries::new(vec![
        Quaternion::new(0.3, -0.1, 0.2, 0.0),
        Quaternion::new(-0.4, 0.5, 0.0, 0.1),
        Quaternion::new(1.0, 0.0, -0.3, 0.2),
        Quaternion::new(0.0, 0.7, 0.1, -0.5),
        Quaternion::new(0.2, 0.2, 0.2, 0.2),
    ])
}

#[test]
fn fueter_image_three_ways() {
    let f = sample_slice();
    let g = fueter_series(&f);
    let q = Quaternion::new(0.2, -0.3, 0.4, 0.1);
    let series = regular_eval(&g, &q);
    let fd = laplacian_fd(|x| f.eval(x), &q, FD_STEP);
    assert!(series.dist(&fd) < 1e-6);
    let rule = slice_gauss(&ImaginaryUnit::from_vector(0.0, 1.0, 1.0).unwrap(), 80).unwrap();
    let quad = fock_fueter_transform(&f, &q, &rule, 300, 1e-8).unwrap().value;
    assert!(series.dist(&quad) < 1e-12);
}

#[test]
fn exact_laplacian_agrees_with_coefficient_map() {
    let table = OperatorTable::new(8);
    let cs: Vec<Quaternion<Rational>> =
        (0..6).map(|k| Quaternion::new(rational(k, 3), rational(1 - k, 2), rational(2, k + 1), rational(-k, 5))).collect();
    let g = RegularSeries::new(slice_to_regular(&cs));
    let basis: Vec<QQbarPoly<Rational>> = (0..6).map(appell_q).collect();
    let q = Quaternion::new(rational(1, 2), rational(-1, 3), rational(1, 4), rational(2, 7));
    let direct = cs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let m = table.laplacian_apply(&QQbarPoly::monomial(k as u32, 0, rational(1, 1))).unwrap();
            qq_eval(&m, &q) * c.clone()
        })
        .fold(Quaternion::real(rational(0, 1)), |a, b| a + b);
    assert_eq!(direct, regular_eval_exact(&g, &basis, &q).unwrap());
}

#[test]
fn kernel_evaluation_through_spec() {
    let q = Quaternion::new(0.1, 0.4, -0.2, 0.3);
    let p = Quaternion::new(-0.3, 0.0, 0.5, 0.2);
    let spec = KernelSpec { name: KernelName::parse("fock_fueter", 1).unwrap(), truncation: 300, form: Form::Series };
    let v = evaluate(&spec, &q, &p).unwrap();
    assert_eq!(v.value, fock_fueter_kernel(&q, &p, 300).value);
    let closed = KernelSpec { name: KernelName::parse("bergman_ball", 1).unwrap(), truncation: 300, form: Form::Closed };
    let series = KernelSpec { form: Form::Series, ..closed };
    let a = evaluate(&closed, &q, &p).unwrap().value;
    let b = evaluate(&series, &q, &p).unwrap().value;
    assert!(a.dist(&b) < 1e-12);
    assert!(evaluate(&closed, &q, &Quaternion::real(2.0)).is_err());
}

#[test]
fn hermite_signal_to_fueter_image() {
    // A Hermite coefficient vector, sent through Segal–Bargmann and then the
    // Fueter map, matches the direct Bargmann–Fock–Fueter transform.
    let a: Vec<Quaternion<f64>> = (0..7).map(|k| Quaternion::new(1.0 / (k as f64 + 1.0), 0.1 * k as f64, 0.0, -0.2)).collect();
    let q = Quaternion::new(0.3, 0.2, -0.1, 0.4);
    let gh = gauss_hermite(80).unwrap();
    let sb: Vec<Quaternion<f64>> = (0..a.len())
        .map(|n| {
            let mut e = vec![Quaternion::zero(); n + 1];
            e[n] = Quaternion::one();
            // At q = 1 the transform of xi_n is 1/sqrt(n!), the slice coefficient.
            a[n] * segal_bargmann(Signal::Coefficients(&e), &Quaternion::one(), &gh, 1e-8).unwrap().value.w
        })
        .collect();
    let g = RegularSeries::new(slice_to_regular(&sb));
    assert!(regular_eval(&g, &q).dist(&bargmann_fock_fueter(&a, &q)) < 1e-12);
    let t = t_values(&q, 4);
    let direct: Quaternion<f64> = (2..7).map(|n| t[n - 2] * a[n] * -2.0).fold(Quaternion::zero(), |s, v| s + v);
    assert!(direct.dist(&bargmann_fock_fueter(&a, &q)) < 1e-12);
}

#[test]
fn reproducing_kernel_on_appell_polynomials() {
    let q = Quaternion::new(0.5, -0.2, 0.3, 0.1);
    let g = g_coefficients(&q, 12);
    for k in 0..8 {
        let mut alpha = vec![Quaternion::zero(); k + 1];
        alpha[k] = Quaternion::one();
        let v = fueter_core::transforms::coefficient_inner_product_f64(&alpha, &g, SpaceTag::AH);
        assert!(v.dist(&qq_eval_f64(&appell_q(k as u32), &q)) < 1e-13, "k = {k}");
    }
}

#[test]
fn csv_round_trip_preserves_exact_coefficients() {
    let cs: Vec<Quaternion<Rational>> =
        (0..5).map(|k| Quaternion::new(rational(k, 7), rational(-3, k + 2), rational(0, 1), rational(11, 13))).collect();
    let mut buf = Vec::new();
    write_coeffs_csv(&cs, &mut buf).unwrap();
    let back: Vec<Quaternion<Rational>> = read_coeffs_csv(buf.as_slice()).unwrap();
    assert_eq!(back, cs);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rational(n, d))
}

fn exact_q() -> impl Strategy<Value = Quaternion<Rational>> {
    (small_rational(), small_rational(), small_rational(), small_rational()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn map_round_trip_and_norm_bounds(cs in prop::collection::vec(exact_q(), 2..9)) {
        let alpha = slice_to_regular(&cs);
        prop_assert_eq!(&slice_to_regular(&regular_to_slice(&alpha)), &alpha);
        let four = rational(4, 1);
        prop_assert!(coefficient_inner_product(&alpha, &alpha, SpaceTag::AH).w
            <= coefficient_inner_product(&cs, &cs, SpaceTag::FockSlice).w * four.clone());
        prop_assert!(coefficient_inner_product(&alpha, &alpha, SpaceTag::BB).w
            <= coefficient_inner_product(&cs, &cs, SpaceTag::BergmanSlice).w * four);
    }
}
