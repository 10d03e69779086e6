//! Derivatives of f(x) = x^x.
//!
//! Every derivative has the shape f^(n)(x) = f(x) * sum_j c_j(x) ln(x)^j
//! with Laurent-polynomial coefficients c_j. Two routes produce the c_j:
//!
//! * the derivative recursion
//!   f^(n) = f^(n-1) ln x + sum_{i=0}^{n-1} Omega(n, i) f^(n-1-i) / x^i,
//!   carried out symbolically in the ring of polynomials in L = ln x;
//! * the closed form c_{n-i} = Delta(n, i) = C(n, i) Q_i(x) / x^(i-1).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::combinatorics::OmegaTable;
use crate::error::{Error, Result};
use crate::laurent::{delta_closed, LaurentPoly, QFamily};
use crate::numeric::CompensatedSum;

/// f(x) * sum_{j=0}^{n} coeffs[j] * ln(x)^j
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeForm {
    coeffs: Vec<LaurentPoly>,
}

impl DerivativeForm {
    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        DerivativeForm { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of ln(x)^j.
    pub fn coeff(&self, j: usize) -> &LaurentPoly {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// sum_j c_j(x) L^j without the f(x) factor, compensated.
    pub fn eval_bracket(&self, x: f64) -> f64 {
        let l = x.ln();
        let mut sum = CompensatedSum::default();
        let mut l_pow = 1.0;
        for c in &self.coeffs {
            if !c.is_zero() {
                sum.add(c.eval_f64(x) * l_pow);
            }
            l_pow *= l;
        }
        sum.value()
    }

    pub fn to_latex(&self) -> String {
        render_form(self, true)
    }
}

fn render_form(form: &DerivativeForm, latex: bool) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (j, c) in form.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if j == 0 {
            pieces.extend(c.signed_terms(latex));
            continue;
        }
        let log = match (j, latex) {
            (1, false) => "ln(x)".to_string(),
            (j, false) => format!("ln(x)^{j}"),
            (1, true) => "\\ln(x)".to_string(),
            (j, true) => format!("\\ln^{{{j}}}(x)"),
        };
        let dot = if latex { " " } else { "·" };
        let mut terms = c.signed_terms(latex);
        if terms.len() == 1 {
            let (negative, mag) = terms.pop().expect("one term");
            let body = if mag == "1" {
                log
            } else {
                format!("{mag}{dot}{log}")
            };
            pieces.push((negative, body));
        } else {
            let inner = if latex { c.to_latex() } else { c.to_string() };
            let body = if latex {
                format!("\\left({inner}\\right){log}")
            } else {
                format!("({inner}){dot}{log}")
            };
            pieces.push((false, body));
        }
    }
    let mut sum = String::new();
    for (i, (negative, body)) in pieces.iter().enumerate() {
        match (i, negative) {
            (0, true) => sum.push('-'),
            (0, false) => {}
            (_, true) => sum.push_str(" - "),
            (_, false) => sum.push_str(" + "),
        }
        sum.push_str(body);
    }
    match (latex, sum.as_str()) {
        (false, "1") => "f(x)".to_string(),
        (true, "1") => "f(x)".to_string(),
        (false, _) => format!("f(x)·({sum})"),
        (true, _) => format!("f(x)\\left({sum}\\right)"),
    }
}

impl fmt::Display for DerivativeForm {
    /// Descending powers of ln(x), e.g. `f(x)·(ln(x)^2 + 2·ln(x) + 1 + 1/x)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_form(self, false))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Numeric derivative recursion over f, f', ..., f^(n).
    Recursive,
    /// Closed-form Delta coefficients, summed in powers of ln(x).
    Closed,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Recursive => "recursive",
            Method::Closed => "closed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeValue {
    pub n: usize,
    pub x: f64,
    pub value: f64,
    pub method: Method,
    /// Set when x^-(n-1) amplification makes the float result fragile.
    pub warning: Option<String>,
}

/// Holds the Omega table and the Q family up to a fixed order.
#[derive(Debug, Clone)]
pub struct DerivativeEngine {
    omega: OmegaTable,
    q: QFamily,
}

impl DerivativeEngine {
    pub fn new(max_order: usize) -> Self {
        let omega = OmegaTable::new(max_order.max(1));
        let q = QFamily::with_table(&omega, max_order);
        DerivativeEngine { omega, q }
    }

    pub fn max_order(&self) -> usize {
        self.q.max_k()
    }

    pub fn omega(&self) -> &OmegaTable {
        &self.omega
    }

    pub fn q_family(&self) -> &QFamily {
        &self.q
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.max_order() {
            return Err(Error::OrderExceeded {
                requested: n,
                available: self.max_order(),
            });
        }
        Ok(())
    }

    /// Forms of orders 0..=n from the symbolic derivative recursion.
    pub fn forms_recursive(&self, n: usize) -> Result<Vec<DerivativeForm>> {
        self.check_order(n)?;
        let mut forms: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::one()]];
        for m in 1..=n {
            // L * G_{m-1}
            let mut next = vec![LaurentPoly::zero()];
            next.extend(forms[m - 1].iter().cloned());
            for i in 0..m {
                let weight = self.omega.get(m, i);
                for (j, c) in forms[m - 1 - i].iter().enumerate() {
                    let term = c.scale_int(weight).shift(-(i as i64));
                    next[j] = &next[j] + &term;
                }
            }
            forms.push(next);
        }
        Ok(forms.into_iter().map(DerivativeForm::from_coeffs).collect())
    }

    pub fn form_recursive(&self, n: usize) -> Result<DerivativeForm> {
        Ok(self
            .forms_recursive(n)?
            .pop()
            .expect("at least the zeroth form"))
    }

    /// c_{n-i} = Delta(n, i) from the closed form.
    pub fn form_closed(&self, n: usize) -> Result<DerivativeForm> {
        self.check_order(n)?;
        let coeffs = (0..=n).map(|j| delta_closed(&self.q, n, n - j)).collect();
        Ok(DerivativeForm::from_coeffs(coeffs))
    }

    /// f^(n)(x) in double precision.
    pub fn eval(&self, n: usize, x: f64, method: Method) -> Result<DerivativeValue> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::NonPositiveArgument(x));
        }
        self.check_order(n)?;
        let fx = (x * x.ln()).exp();
        let value = match method {
            Method::Closed => fx * self.form_closed(n)?.eval_bracket(x),
            Method::Recursive => self.eval_recursive(n, x, fx),
        };
        let amplification = x.powi(-(n as i32 - 1));
        let warning = (x < 0.1 && amplification > 1e6).then(|| {
            format!("x = {x} amplifies order-{n} terms by x^-(n-1) = {amplification:.3e}")
        });
        Ok(DerivativeValue {
            n,
            x,
            value,
            method,
            warning,
        })
    }

    fn eval_recursive(&self, n: usize, x: f64, fx: f64) -> f64 {
        let l = x.ln();
        let mut values = vec![fx];
        for m in 1..=n {
            let mut sum = CompensatedSum::default();
            sum.add(values[m - 1] * l);
            let mut inv_pow = 1.0;
            for i in 0..m {
                let w = self.omega.get(m, i).to_f64().unwrap_or(f64::NAN);
                sum.add(w * values[m - 1 - i] * inv_pow);
                inv_pow /= x;
            }
            values.push(sum.value());
        }
        values[n]
    }

    /// f^(n)(1) = Q_n(1), exact.
    pub fn at_one(&self, n: usize) -> Result<BigInt> {
        self.check_order(n)?;
        let v = self
            .q
            .get(n)
            .eval(&BigRational::one())
            .expect("x = 1 is not a pole");
        if !v.is_integer() {
            return Err(Error::NonIntegral {
                value: v.to_string(),
            });
        }
        Ok(v.to_integer())
    }
}

/// f^(n)(1) as an exact integer.
pub fn derivative_at_one(n: usize) -> BigInt {
    DerivativeEngine::new(n)
        .at_one(n)
        .expect("Q_n has integer coefficients")
}

/// f^(n)(x) by the given method, building a fresh engine.
pub fn derivative_eval(n: usize, x: f64, method: Method) -> Result<DerivativeValue> {
    DerivativeEngine::new(n).eval(n, x, method)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    #[test]
    fn recursive_forms() {
        let engine = DerivativeEngine::new(4);
        let forms = engine.forms_recursive(2).unwrap();
        assert_eq!(forms[0].coeffs(), &[LaurentPoly::one()]);
        assert_eq!(forms[1].coeffs(), &[LaurentPoly::one(), LaurentPoly::one()]);
        assert_eq!(
            forms[2].coeffs(),
            &[lp(&[(0, 1), (-1, 1)]), lp(&[(0, 2)]), LaurentPoly::one()]
        );
    }

    #[test]
    fn closed_forms() {
        let engine = DerivativeEngine::new(4);
        assert_eq!(
            engine.form_closed(0).unwrap().coeffs(),
            &[LaurentPoly::one()]
        );
        assert_eq!(
            engine.form_closed(1).unwrap().coeffs(),
            &[LaurentPoly::one(), LaurentPoly::one()]
        );
        assert_eq!(
            engine.form_closed(2).unwrap().coeffs(),
            &[lp(&[(0, 1), (-1, 1)]), lp(&[(0, 2)]), LaurentPoly::one()]
        );
        assert!(engine.form_closed(5).is_err());
    }

    #[test]
    fn routes_agree_at_small_order() {
        let engine = DerivativeEngine::new(12);
        let forms = engine.forms_recursive(12).unwrap();
        for (n, form) in forms.iter().enumerate() {
            assert_eq!(form, &engine.form_closed(n).unwrap(), "order {n}");
            assert_eq!(form.coeff(n), &LaurentPoly::one());
        }
    }

    #[test]
    fn rendering() {
        let engine = DerivativeEngine::new(3);
        assert_eq!(engine.form_closed(0).unwrap().to_string(), "f(x)");
        assert_eq!(
            engine.form_closed(1).unwrap().to_string(),
            "f(x)·(ln(x) + 1)"
        );
        assert_eq!(
            engine.form_closed(2).unwrap().to_string(),
            "f(x)·(ln(x)^2 + 2·ln(x) + 1 + 1/x)"
        );
        assert_eq!(
            engine.form_closed(3).unwrap().to_string(),
            "f(x)·(ln(x)^3 + 3·ln(x)^2 + (3 + 3/x)·ln(x) + 1 + 3/x - 1/x^2)"
        );
        assert_eq!(
            engine.form_closed(1).unwrap().to_latex(),
            "f(x)\\left(\\ln(x) + 1\\right)"
        );
    }

    #[test]
    fn numeric_examples() {
        let v = derivative_eval(1, 2.0, Method::Closed).unwrap();
        assert!((v.value - 4.0 * (2f64.ln() + 1.0)).abs() < 1e-13);
        assert!((v.value - 6.772588722).abs() < 1e-9);
        let v = derivative_eval(3, 1.0, Method::Recursive).unwrap();
        assert_eq!(v.value, 3.0);
        let v = derivative_eval(0, 0.5, Method::Closed).unwrap();
        assert!((v.value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
        assert!(matches!(
            derivative_eval(2, 0.0, Method::Closed),
            Err(Error::NonPositiveArgument(_))
        ));
        assert!(derivative_eval(2, -1.0, Method::Recursive).is_err());
    }

    #[test]
    fn small_x_warns() {
        let v = derivative_eval(12, 0.05, Method::Closed).unwrap();
        assert!(v.warning.is_some());
        let v = derivative_eval(12, 0.5, Method::Closed).unwrap();
        assert!(v.warning.is_none());
    }

    #[test]
    fn values_at_one() {
        assert_eq!(derivative_at_one(0), BigInt::from(1));
        assert_eq!(derivative_at_one(6), BigInt::from(54));
        assert_eq!(derivative_at_one(7), BigInt::from(-42));
    }
}
