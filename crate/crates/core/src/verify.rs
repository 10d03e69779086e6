//! Verification suites: every identity of the library checked against an
//! independent route over a fixed index range.
//!
//! A suite is a list of named checks. Each check reports pass or fail, a
//! short description of what it covered (or of the first mismatch) and its
//! wall-clock time.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::combinatorics::{
    factorial, lambda_constant, omega_closed, partial_sum_closed, OmegaTable, PartialSumTable,
    RencontresTable,
};
use crate::derivative::{DerivativeEngine, Method};
use crate::laurent::{
    delta_closed, omega_binomial_identity, poly_p, poly_p_kth_derivative, DeltaTable, LaurentPoly,
    QFamily,
};
use crate::oracle::{
    brute_force_rencontres_row, default_step, finite_difference, oracle_series_at_one,
};
use crate::series::{convergence_report, format_significant, taylor_at_one};

/// Omega(a, b) for a = 1..=9, b = 0..=8.
pub const OMEGA_REFERENCE: [[i64; 9]; 9] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 2, -1, 0, 0, 0, 0, 0, 0],
    [1, 3, -3, 2, 0, 0, 0, 0, 0],
    [1, 4, -6, 8, -6, 0, 0, 0, 0],
    [1, 5, -10, 20, -30, 24, 0, 0, 0],
    [1, 6, -15, 40, -90, 144, -120, 0, 0],
    [1, 7, -21, 70, -210, 504, -840, 720, 0],
    [1, 8, -28, 112, -420, 1344, -3360, 5760, -5040],
];

/// Reference partial sums of the series at 1, order 20: for each x, the
/// values at n = 5, 10, 20 printed to 7 significant digits.
pub const SERIES_REFERENCE: [(f64, [(usize, &str); 3]); 3] = [
    (
        0.5,
        [(5, "0.7057292"), (10, "0.7070978"), (20, "0.7071066")],
    ),
    (
        0.9,
        [(5, "0.9095325"), (10, "0.9095326"), (20, "0.9095326")],
    ),
    (2.0, [(5, "3.916667"), (10, "4.005655"), (20, "3.997326")]),
];

/// Absolute tolerance on each reference partial sum.
pub const SERIES_TOLERANCE: f64 = 5e-7;

/// f^(n)(1) for n = 0..=8.
pub const VALUES_AT_ONE: [i64; 9] = [1, 1, 2, 3, 8, 10, 54, -42, 944];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Omega,
    Sums,
    Rencontres,
    Poly,
    Delta,
    Derivative,
    Series,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Omega,
        Suite::Sums,
        Suite::Rencontres,
        Suite::Poly,
        Suite::Delta,
        Suite::Derivative,
        Suite::Series,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Omega => "omega",
            Suite::Sums => "sums",
            Suite::Rencontres => "rencontres",
            Suite::Poly => "poly",
            Suite::Delta => "delta",
            Suite::Derivative => "derivative",
            Suite::Series => "series",
        }
    }

    pub fn run(&self) -> Vec<Check> {
        match self {
            Suite::Omega => vec![omega_reference(), omega_closed_form(), omega_column_sums()],
            Suite::Sums => vec![partial_sum_routes(), partial_sum_formulas()],
            Suite::Rencontres => vec![rencontres_enumeration(), lambda_mapping()],
            Suite::Poly => vec![
                p_family(),
                p_derivative_ladder(),
                p_constant_derivative(),
                omega_binomial(),
            ],
            Suite::Delta => vec![delta_equivalence()],
            Suite::Derivative => vec![
                derivative_forms(),
                values_at_one(),
                finite_difference_crosscheck(),
            ],
            Suite::Series => vec![series_reference(), series_coefficients()],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({:.3}s): {}",
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn timed(name: &str, body: impl FnOnce() -> Result<String, String>) -> Check {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        name: name.to_string(),
        passed,
        detail,
        elapsed,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn omega_reference() -> Check {
    timed("omega.reference_table", || {
        let table = OmegaTable::new(9);
        for (a, row) in (1..=9).zip(OMEGA_REFERENCE.iter()) {
            for (b, &expected) in row.iter().enumerate() {
                let got = table.get(a, b);
                ensure(*got == BigInt::from(expected), || {
                    format!("Omega({a},{b}) = {got}, expected {expected}")
                })?;
            }
        }
        Ok("a=1..9, b=0..8 match".into())
    })
}

pub fn omega_closed_form() -> Check {
    timed("omega.closed_form", || {
        let table = OmegaTable::new(200);
        for a in 2..=200 {
            for b in 1..a {
                let closed = omega_closed(a, b);
                ensure(table.get(a, b) == &closed, || {
                    format!(
                        "Omega({a},{b}): recursion {} vs closed {closed}",
                        table.get(a, b)
                    )
                })?;
            }
        }
        Ok("recursion = closed form for 1 <= b < a <= 200".into())
    })
}

pub fn omega_column_sums() -> Check {
    timed("omega.column_sums", || {
        let table = OmegaTable::new(120);
        let alt = OmegaTable::from_column_sums(120);
        for a in 3..=120 {
            for b in 2..a {
                ensure(table.get(a, b) == alt.get(a, b), || {
                    format!("Omega({a},{b}): {} vs {}", table.get(a, b), alt.get(a, b))
                })?;
            }
        }
        Ok("column-sum recursion agrees for 2 <= b < a <= 120".into())
    })
}

pub fn partial_sum_routes() -> Check {
    timed("sums.three_routes", || {
        let omega = OmegaTable::new(150);
        let sums = PartialSumTable::new(149, 150);
        for n in 1..=150 {
            for i in 0..n {
                let direct = omega.partial_sum(i, n);
                let closed = if i == 0 {
                    BigInt::from(n)
                } else {
                    partial_sum_closed(i, n)
                };
                ensure(closed == direct, || {
                    format!("S_{i}({n}): closed {closed} vs direct {direct}")
                })?;
                ensure(sums.get(i, n) == &direct, || {
                    format!("S_{i}({n}): table {} vs direct {direct}", sums.get(i, n))
                })?;
                if i >= 2 {
                    let rec = sums.get(i, n - 1) - sums.get(i - 1, n - 1) * (i - 1);
                    ensure(rec == direct, || {
                        format!("S_{i}({n}): recursion {rec} vs direct {direct}")
                    })?;
                }
            }
        }
        Ok("direct = closed = table for 0 <= i < n <= 150; recursion for i >= 2".into())
    })
}

pub fn partial_sum_formulas() -> Check {
    timed("sums.reference_formulas", || {
        let omega = OmegaTable::new(50);
        for i in 0..=4usize {
            for n in (i + 1)..=50 {
                let m = n as i64;
                let expected = match i {
                    0 => m,
                    1 => (m - 1) * m / 2,
                    2 => -(m - 2) * (m - 1) * m / 6,
                    3 => (m - 3) * (m - 2) * (m - 1) * m / 12,
                    _ => -(m - 4) * (m - 3) * (m - 2) * (m - 1) * m / 20,
                };
                let got = omega.partial_sum(i, n);
                ensure(got == BigInt::from(expected), || {
                    format!("S_{i}({n}) = {got}, formula gives {expected}")
                })?;
            }
        }
        Ok("S_0..S_4 formulas hold for n = i+1..50".into())
    })
}

pub fn rencontres_enumeration() -> Check {
    timed("rencontres.enumeration", || {
        let table = RencontresTable::new(9);
        for n in 0..=9 {
            let counts = brute_force_rencontres_row(n).map_err(|e| e.to_string())?;
            for (k, &c) in counts.iter().enumerate() {
                let d = table.get(n, k).map_err(|e| e.to_string())?;
                ensure(*d == BigInt::from(c), || {
                    format!("D({n},{k}) = {d}, enumeration counts {c}")
                })?;
            }
            let total: u64 = counts.iter().sum();
            ensure(BigInt::from(total) == factorial(n), || {
                format!("row {n} sums to {total}, not {n}!")
            })?;
        }
        Ok("formula = permutation counts for 0 <= k <= n <= 9".into())
    })
}

pub fn lambda_mapping() -> Check {
    timed("rencontres.lambda_mapping", || {
        let omega = OmegaTable::new(60);
        let d = RencontresTable::new(60);
        for n in 3..=60 {
            for k in 2..n {
                let lambda = lambda_constant(k).map_err(|e| e.to_string())?;
                let rencontres = d.get(n - 1, n - k - 1).map_err(|e| e.to_string())?;
                let mapped = lambda * BigRational::from_integer(rencontres.clone());
                ensure(
                    mapped == BigRational::from_integer(omega.get(n, k).clone()),
                    || {
                        format!(
                            "Omega({n},{k}) = {} but lambda_k D = {mapped}",
                            omega.get(n, k)
                        )
                    },
                )?;
            }
        }
        Ok("Omega(n,k) = lambda_k D(n-1,n-k-1) for 2 <= k < n <= 60".into())
    })
}

pub fn p_family() -> Check {
    timed("poly.p_family", || {
        let omega = OmegaTable::new(60);
        let mut prev: Option<LaurentPoly> = None;
        for n in 1..=60 {
            let p = poly_p(&omega, n).poly;
            ensure(p.is_monic(), || format!("P_{n} is not monic"))?;
            ensure(p.degree() == Some(n as i64 - 1), || {
                format!("P_{n} has degree {:?}", p.degree())
            })?;
            if let Some(prev) = &prev {
                let scaled = prev.scale_int(&BigInt::from(n - 1));
                ensure(p.derivative() == scaled, || {
                    format!("P_{n}' = {} but (n-1) P_(n-1) = {scaled}", p.derivative())
                })?;
            }
            prev = Some(p);
        }
        Ok("P_n monic of degree n-1 with P_n' = (n-1) P_(n-1) for n <= 60".into())
    })
}

pub fn p_derivative_ladder() -> Check {
    timed("poly.derivative_ladder", || {
        let omega = OmegaTable::new(30);
        for n in 2..=30 {
            for k in 1..n {
                let lhs = poly_p_kth_derivative(&omega, n, k);
                for r in 1..=k {
                    let sign = if r % 2 == 1 { 1 } else { -1 };
                    let factor = omega.get(n, r) * BigInt::from(sign * r as i64);
                    let rhs = poly_p_kth_derivative(&omega, n - r, k - r).scale_int(&factor);
                    ensure(lhs == rhs, || format!("n={n} k={k} r={r}: {lhs} vs {rhs}"))?;
                }
            }
        }
        Ok("k-th derivative ladder holds for 1 <= r <= k <= n-1, n <= 30".into())
    })
}

pub fn p_constant_derivative() -> Check {
    timed("poly.constant_derivative", || {
        let omega = OmegaTable::new(40);
        for n in 1..=40 {
            let c = poly_p_kth_derivative(&omega, n, n - 1);
            let expected = LaurentPoly::constant(BigRational::from_integer(factorial(n - 1)));
            ensure(c == expected, || {
                format!("P_{n}^(n-1) = {c}, expected {expected}")
            })?;
        }
        Ok("P_n^(n-1) = (n-1)! for n <= 40".into())
    })
}

pub fn omega_binomial() -> Check {
    timed("poly.omega_binomial", || {
        let omega = OmegaTable::new(100);
        for n in 1..=100 {
            for k in 0..n {
                for i in 0..=k {
                    ensure(omega_binomial_identity(&omega, n, k, i), || {
                        format!("fails at n={n} k={k} i={i}")
                    })?;
                }
            }
        }
        Ok("holds for i <= k < n <= 100".into())
    })
}

pub fn delta_equivalence() -> Check {
    timed("delta.closed_form", || {
        let omega = OmegaTable::new(25);
        let q = QFamily::with_table(&omega, 25);
        let table = DeltaTable::recursive(&omega, 25);
        for n in 0..=25 {
            for k in 0..=n {
                let rec = table.get(n, k);
                let closed = delta_closed(&q, n, k);
                ensure(rec == closed, || {
                    format!("Delta({n},{k}): recursion {rec} vs closed {closed}")
                })?;
            }
        }
        Ok("recursion = closed form for 0 <= k <= n <= 25".into())
    })
}

pub fn derivative_forms() -> Check {
    timed("derivative.forms", || {
        let engine = DerivativeEngine::new(25);
        let forms = engine.forms_recursive(25).map_err(|e| e.to_string())?;
        for (n, form) in forms.iter().enumerate() {
            let closed = engine.form_closed(n).map_err(|e| e.to_string())?;
            ensure(form == &closed, || {
                format!("order {n}: recursion {form} vs closed {closed}")
            })?;
        }
        Ok("symbolic recursion = closed form for n <= 25".into())
    })
}

pub fn values_at_one() -> Check {
    timed("derivative.values_at_one", || {
        let engine = DerivativeEngine::new(30);
        let oracle = oracle_series_at_one(30);
        for n in 0..=30 {
            let scaled = oracle.coeff(n) * BigRational::from_integer(factorial(n));
            ensure(scaled.is_integer(), || {
                format!("n={n}: n! e_n = {scaled} is not an integer")
            })?;
            let q = engine
                .q_family()
                .get(n)
                .eval(&BigRational::one())
                .map_err(|e| e.to_string())?;
            let d = engine.at_one(n).map_err(|e| e.to_string())?;
            ensure(
                q == scaled && BigRational::from_integer(d.clone()) == scaled,
                || format!("n={n}: oracle {scaled}, Q_n(1) = {q}, f^(n)(1) = {d}"),
            )?;
            if let Some(&expected) = VALUES_AT_ONE.get(n) {
                ensure(d == BigInt::from(expected), || {
                    format!("f^({n})(1) = {d}, expected {expected}")
                })?;
            }
        }
        Ok("n! e_n = Q_n(1) = f^(n)(1) for n <= 30".into())
    })
}

pub fn finite_difference_crosscheck() -> Check {
    timed("derivative.finite_differences", || {
        let engine = DerivativeEngine::new(6);
        let mut worst: f64 = 0.0;
        for &x in &[0.5, 1.0, 1.5, 2.0] {
            for n in 0..=6 {
                let closed = engine
                    .eval(n, x, Method::Closed)
                    .map_err(|e| e.to_string())?
                    .value;
                let rec = engine
                    .eval(n, x, Method::Recursive)
                    .map_err(|e| e.to_string())?
                    .value;
                let fd = finite_difference(n, x, default_step(n, x)).map_err(|e| e.to_string())?;
                for (label, v) in [("closed", closed), ("recursive", rec)] {
                    ensure((v - fd.value).abs() <= fd.error_bound, || {
                        format!(
                            "n={n} x={x}: {label} {v} vs difference {} (bound {:e})",
                            fd.value, fd.error_bound
                        )
                    })?;
                }
                let rel = (closed - rec).abs() / closed.abs().max(f64::MIN_POSITIVE);
                ensure(rel <= 1e-12, || {
                    format!("n={n} x={x}: methods differ by {rel:e} relative")
                })?;
                worst = worst.max(rel);
            }
        }
        Ok(format!(
            "within error bound for n <= 6 at x in {{0.5, 1, 1.5, 2}}; methods agree to {worst:.1e}"
        ))
    })
}

pub fn series_reference() -> Check {
    timed("series.reference_grid", || {
        let series = taylor_at_one(20);
        let mut mismatches = Vec::new();
        for (x, cells) in SERIES_REFERENCE {
            let checkpoints: Vec<usize> = cells.iter().map(|(n, _)| *n).collect();
            let report = convergence_report(&series, x, &checkpoints).map_err(|e| e.to_string())?;
            for (row, (n, printed)) in report.rows.iter().zip(cells) {
                let rendered = format_significant(row.value, 7);
                let reference: f64 = printed.parse().expect("numeric reference");
                if rendered != printed || (row.value - reference).abs() > SERIES_TOLERANCE {
                    mismatches.push(format!("x={x} n={n}: {rendered} vs {printed}"));
                }
            }
        }
        if mismatches.is_empty() {
            Ok("all nine partial sums match to 7 digits".into())
        } else {
            Err(mismatches.join("; "))
        }
    })
}

pub fn series_coefficients() -> Check {
    timed("series.coefficients", || {
        let series = taylor_at_one(30);
        let oracle = oracle_series_at_one(30);
        let coeffs = series.exact_coefficients().expect("exact anchor");
        for (k, (c, o)) in coeffs.iter().zip(oracle.coeffs()).enumerate() {
            ensure(c == o, || format!("k={k}: {c} vs oracle {o}"))?;
        }
        let first = coeffs
            .iter()
            .take(4)
            .map(|c| c.to_f64().unwrap_or(f64::NAN));
        ensure(first.eq([1.0, 1.0, 1.0, 0.5]), || {
            "leading coefficients differ".into()
        })?;
        Ok("Q_k(1)/k! = formal exp coefficients for k <= 30".into())
    })
}
