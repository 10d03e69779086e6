//! Identity suites over the full index ranges, each checked against an
//! independent route.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use powertower::combinatorics::{
    binomial, factorial, lambda_constant, omega_closed, omega_from_rencontres, partial_sum_closed,
    OmegaTable, PartialSumTable, RencontresTable,
};
use powertower::laurent::{
    delta_closed, omega_binomial_identity, poly_p, poly_p_kth_derivative, DeltaTable, QFamily,
};
use powertower::oracle::{
    brute_force_rencontres_row, default_step, finite_difference, oracle_series_at_one,
};
use powertower::series::{
    evaluate_partial_exact, evaluate_partial_float, taylor_at, taylor_at_one,
};
use powertower::{DerivativeEngine, LaurentPoly, Method};

#[test]
fn omega_recursion_matches_closed_form() {
    let table = OmegaTable::new(200);
    for a in 1..=200 {
        for b in 1..=a {
            assert_eq!(table.get(a, b), &omega_closed(a, b), "Omega({a},{b})");
        }
    }
}

#[test]
fn omega_column_sums_match_recursion() {
    let table = OmegaTable::new(120);
    let alt = OmegaTable::from_column_sums(120);
    for a in 3..=120 {
        for b in 2..a {
            assert_eq!(alt.get(a, b), table.get(a, b), "Omega({a},{b})");
        }
    }
}

#[test]
fn partial_sum_routes_agree() {
    let omega = OmegaTable::new(150);
    let sums = PartialSumTable::new(149, 150);
    for n in 1..=150 {
        for i in 0..n {
            let direct = omega.partial_sum(i, n);
            assert_eq!(sums.get(i, n), &direct, "S_{i}({n})");
            if i >= 1 {
                assert_eq!(partial_sum_closed(i, n), direct, "S_{i}({n})");
            }
            if i >= 2 {
                let rec = sums.get(i, n - 1) - sums.get(i - 1, n - 1) * (i - 1);
                assert_eq!(&rec, sums.get(i, n));
            }
        }
    }
}

#[test]
fn rencontres_match_enumeration() {
    let table = RencontresTable::new(9);
    for n in 0..=9 {
        let counts = brute_force_rencontres_row(n).unwrap();
        for (k, &c) in counts.iter().enumerate() {
            assert_eq!(table.get(n, k).unwrap(), &BigInt::from(c), "D({n},{k})");
        }
        assert_eq!(BigInt::from(counts.iter().sum::<u64>()), factorial(n));
    }
}

#[test]
fn lambda_links_omega_and_rencontres() {
    let omega = OmegaTable::new(61);
    let d = RencontresTable::new(60);
    for n in 3..=60 {
        for k in 2..n {
            assert_eq!(&omega_from_rencontres(n, k).unwrap(), omega.get(n, k));
        }
        for k in 0..=n.saturating_sub(2) {
            let lambda = lambda_constant(n - k).unwrap();
            let back = BigRational::from_integer(omega.get(n + 1, n - k).clone()) / lambda;
            assert_eq!(
                back,
                BigRational::from_integer(d.get(n, k).unwrap().clone())
            );
        }
    }
}

#[test]
fn p_family_identities() {
    let omega = OmegaTable::new(60);
    for n in 1..=60 {
        let p = poly_p(&omega, n).poly;
        assert!(p.is_monic());
        assert_eq!(p.degree(), Some(n as i64 - 1));
        if n >= 2 {
            let prev = poly_p(&omega, n - 1).poly;
            assert_eq!(p.derivative(), prev.scale_int(&BigInt::from(n - 1)));
        }
    }
    for n in 2..=30 {
        for k in 1..n {
            let lhs = poly_p_kth_derivative(&omega, n, k);
            for r in 1..=k {
                let sign = if r % 2 == 1 { 1 } else { -1 };
                let factor = omega.get(n, r) * BigInt::from(sign * r as i64);
                let rhs = poly_p_kth_derivative(&omega, n - r, k - r).scale_int(&factor);
                assert_eq!(lhs, rhs, "n={n} k={k} r={r}");
            }
        }
    }
    let omega = OmegaTable::new(40);
    for n in 1..=40 {
        let c = poly_p_kth_derivative(&omega, n, n - 1);
        assert_eq!(
            c,
            LaurentPoly::constant(BigRational::from_integer(factorial(n - 1)))
        );
    }
}

#[test]
fn omega_binomial_identity_on_full_range() {
    let omega = OmegaTable::new(100);
    for n in 1..=100 {
        for k in 0..n {
            for i in 0..=k {
                assert!(
                    omega_binomial_identity(&omega, n, k, i),
                    "n={n} k={k} i={i}"
                );
            }
        }
    }
}

#[test]
fn delta_recursion_matches_closed_form() {
    let omega = OmegaTable::new(25);
    let q = QFamily::with_table(&omega, 25);
    let table = DeltaTable::recursive(&omega, 25);
    for n in 0..=25 {
        for k in 0..=n {
            assert_eq!(table.get(n, k), delta_closed(&q, n, k), "Delta({n},{k})");
        }
    }
}

#[test]
fn derivative_forms_agree_and_have_expected_shape() {
    let engine = DerivativeEngine::new(25);
    let forms = engine.forms_recursive(25).unwrap();
    for (n, form) in forms.iter().enumerate() {
        let closed = engine.form_closed(n).unwrap();
        assert_eq!(form, &closed, "order {n}");
        assert_eq!(closed.coeff(n), &LaurentPoly::one());
        for i in 1..=n {
            let c = closed.coeff(n - i);
            assert!(c.lowest_exponent().unwrap() >= -(i as i64 - 1));
            assert!(c.degree().unwrap() < i as i64);
        }
    }
}

#[test]
fn values_at_one_match_formal_series() {
    let engine = DerivativeEngine::new(30);
    let oracle = oracle_series_at_one(30);
    for n in 0..=30 {
        let scaled = oracle.coeff(n) * factorial(n);
        assert!(scaled.is_integer());
        assert_eq!(engine.at_one(n).unwrap(), scaled.to_integer(), "n={n}");
    }
}

#[test]
fn numeric_derivatives_match_finite_differences() {
    let engine = DerivativeEngine::new(6);
    for &x in &[0.5, 1.0, 1.5, 2.0, std::f64::consts::E] {
        for n in 0..=6 {
            let closed = engine.eval(n, x, Method::Closed).unwrap().value;
            let recursive = engine.eval(n, x, Method::Recursive).unwrap().value;
            let fd = finite_difference(n, x, default_step(n, x)).unwrap();
            assert!(
                (closed - fd.value).abs() <= fd.error_bound,
                "n={n} x={x}: {closed} vs {fd:?}"
            );
            let scale = closed.abs().max(f64::MIN_POSITIVE);
            assert!(
                (closed - recursive).abs() <= 1e-12 * scale,
                "n={n} x={x}: {closed} vs {recursive}"
            );
        }
    }
}

#[test]
fn series_coefficients_match_oracle() {
    let series = taylor_at_one(30);
    let oracle = oracle_series_at_one(30);
    let coeffs = series.exact_coefficients().unwrap();
    assert_eq!(coeffs, oracle.coeffs());
    for (k, c) in coeffs.iter().enumerate() {
        assert!((factorial(k) % c.denom()).is_zero());
    }
    assert_eq!(coeffs[0], BigRational::one());

    let float = taylor_at(1.0, 30).unwrap();
    for k in 0..=30 {
        let exact = series.coefficient_f64(k);
        let approx = float.coefficient_f64(k);
        assert!((exact - approx).abs() <= 1e-12 * exact.abs(), "k={k}");
    }
}

#[test]
fn exact_and_float_partial_sums_agree() {
    let series = taylor_at_one(30);
    for step in 0..=20 {
        let num = step as i64; // x = step / 10
        let x = BigRational::new(BigInt::from(num), BigInt::from(10));
        let xf = num as f64 / 10.0;
        for n in 0..=30 {
            let exact: f64 =
                num_traits::ToPrimitive::to_f64(&evaluate_partial_exact(&series, &x, n).unwrap())
                    .unwrap();
            let float = evaluate_partial_float(&series, xf, n).unwrap();
            assert!(
                (exact - float).abs() <= 1e-9 * exact.abs().max(1e-300),
                "x={xf} n={n}: {exact} vs {float}"
            );
        }
    }
}

#[test]
fn partial_sum_error_does_not_grow_near_anchor() {
    let series = taylor_at_one(30);
    for (num, den) in [(1, 2), (9, 10)] {
        let x = BigRational::new(BigInt::from(num), BigInt::from(den));
        let direct = (num as f64 / den as f64).powf(num as f64 / den as f64);
        let errors: Vec<f64> = (10..=30)
            .map(|n| {
                let v = evaluate_partial_exact(&series, &x, n).unwrap();
                (num_traits::ToPrimitive::to_f64(&v).unwrap() - direct).abs()
            })
            .collect();
        for w in errors.windows(2) {
            assert!(w[1] <= w[0], "x={num}/{den}: {errors:?}");
        }
    }
}

#[test]
fn binomial_matches_pascal() {
    let mut row = vec![BigInt::one()];
    for n in 1..=60usize {
        let mut next = vec![BigInt::one(); n + 1];
        for k in 1..n {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
        for (k, v) in row.iter().enumerate() {
            assert_eq!(&binomial(n, k), v);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closed_form_on_random_entries(a in 1usize..400, b in 1usize..400) {
        let table = OmegaTable::new(a);
        prop_assert_eq!(table.get(a, b), &omega_closed(a, b));
    }
}
