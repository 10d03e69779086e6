//! Taylor expansion of x^x around an anchor `a`:
//!
//! x^x = sum_k f^(k)(a) / k! * (x - a)^k.
//!
//! At a = 1 every coefficient is the rational Q_k(1) / k!; elsewhere ln(a)
//! enters and the coefficients are doubles.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::factorial;
use crate::derivative::{DerivativeEngine, Method};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Expansion point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Anchor {
    /// Exactly 1; coefficients are rationals.
    One,
    Real(f64),
}

impl Anchor {
    pub fn value(&self) -> f64 {
        match self {
            Anchor::One => 1.0,
            Anchor::Real(a) => *a,
        }
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::One => f.write_str("1"),
            Anchor::Real(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    anchor: Anchor,
    coeffs: Coefficients,
}

impl TaylorSeries {
    pub fn anchor(&self) -> Anchor {
        self.anchor
    }

    pub fn order(&self) -> usize {
        match &self.coeffs {
            Coefficients::Exact(c) => c.len() - 1,
            Coefficients::Float(c) => c.len() - 1,
        }
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    pub fn exact_coefficients(&self) -> Option<&[BigRational]> {
        match &self.coeffs {
            Coefficients::Exact(c) => Some(c),
            Coefficients::Float(_) => None,
        }
    }

    pub fn coefficient_f64(&self, k: usize) -> f64 {
        match &self.coeffs {
            Coefficients::Exact(c) => c[k].to_f64().unwrap_or(f64::NAN),
            Coefficients::Float(c) => c[k],
        }
    }

    fn check_terms(&self, n: usize) -> Result<()> {
        if n > self.order() {
            return Err(Error::OrderExceeded {
                requested: n,
                available: self.order(),
            });
        }
        Ok(())
    }
}

/// Exact coefficients Q_k(1) / k! for k = 0..=order.
pub fn taylor_at_one(order: usize) -> TaylorSeries {
    let engine = DerivativeEngine::new(order);
    let coeffs = (0..=order)
        .map(|k| {
            let d = engine.at_one(k).expect("order within engine");
            BigRational::new(d, factorial(k))
        })
        .collect();
    TaylorSeries {
        anchor: Anchor::One,
        coeffs: Coefficients::Exact(coeffs),
    }
}

/// Float coefficients f^(k)(anchor) / k! through the closed-form derivatives.
pub fn taylor_at(anchor: f64, order: usize) -> Result<TaylorSeries> {
    if !(anchor.is_finite() && anchor > 0.0) {
        return Err(Error::NonPositiveArgument(anchor));
    }
    let engine = DerivativeEngine::new(order);
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut k_fact = 1.0;
    for k in 0..=order {
        if k > 0 {
            k_fact *= k as f64;
        }
        coeffs.push(engine.eval(k, anchor, Method::Closed)?.value / k_fact);
    }
    Ok(TaylorSeries {
        anchor: Anchor::Real(anchor),
        coeffs: Coefficients::Float(coeffs),
    })
}

/// sum_{k=0}^{n} c_k (x - a)^k in exact arithmetic; anchor must be `One`.
pub fn evaluate_partial_exact(
    series: &TaylorSeries,
    x: &BigRational,
    n: usize,
) -> Result<BigRational> {
    series.check_terms(n)?;
    let coeffs = series.exact_coefficients().ok_or(Error::InexactAnchor)?;
    let u = x - BigRational::one();
    let mut sum = BigRational::zero();
    let mut u_pow = BigRational::one();
    for c in &coeffs[..=n] {
        sum += c * &u_pow;
        u_pow *= &u;
    }
    Ok(sum)
}

/// sum_{k=0}^{n} c_k (x - a)^k in double precision, compensated.
pub fn evaluate_partial_float(series: &TaylorSeries, x: f64, n: usize) -> Result<f64> {
    series.check_terms(n)?;
    let u = x - series.anchor.value();
    let mut sum = CompensatedSum::default();
    let mut u_pow = 1.0;
    for k in 0..=n {
        sum.add(series.coefficient_f64(k) * u_pow);
        u_pow *= u;
    }
    Ok(sum.value())
}

/// Partial sum through degree `n`. At anchor 1 the sum is formed exactly
/// from the binary value of `x` and rounded once at the end.
pub fn evaluate_partial(series: &TaylorSeries, x: f64, n: usize) -> Result<f64> {
    match (series.anchor, BigRational::from_float(x)) {
        (Anchor::One, Some(exact)) => Ok(evaluate_partial_exact(series, &exact, n)?
            .to_f64()
            .unwrap_or(f64::NAN)),
        _ => evaluate_partial_float(series, x, n),
    }
}

/// Decimal rendering of `v` rounded to `digits` significant digits, keeping
/// trailing zeros ("4.001500" for 4.0015 at 7 digits).
pub fn format_significant(v: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i64 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let body: String = mantissa.chars().filter(|c| *c != '.').collect();
    let n = body.len() as i64;
    let out = if exp >= n - 1 {
        format!("{body}{}", "0".repeat((exp - n + 1) as usize))
    } else if exp >= 0 {
        let (int, frac) = body.split_at(exp as usize + 1);
        format!("{int}.{frac}")
    } else {
        format!("0.{}{body}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{out}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumRow {
    pub n: usize,
    pub value: f64,
    /// |value - x^x|, absent when x^x is not real.
    pub abs_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub x: f64,
    pub anchor: Anchor,
    pub rows: Vec<PartialSumRow>,
    /// x^x for x > 0.
    pub direct_value: Option<f64>,
}

/// Partial sums at each checkpoint next to the direct value x^x.
pub fn convergence_report(
    series: &TaylorSeries,
    x: f64,
    checkpoints: &[usize],
) -> Result<EvalReport> {
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::UnorderedCheckpoints);
    }
    let direct_value = (x > 0.0).then(|| (x * x.ln()).exp());
    let rows = checkpoints
        .iter()
        .map(|&n| {
            let value = evaluate_partial(series, x, n)?;
            Ok(PartialSumRow {
                n,
                value,
                abs_error: direct_value.map(|d| (value - d).abs()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvalReport {
        x,
        anchor: series.anchor,
        rows,
        direct_value,
    })
}
