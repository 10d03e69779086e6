//! Sparse Laurent polynomials in `x` with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent. Zero coefficients are never
//! stored, so structural equality is mathematical equality.

mod family;

pub use family::{
    delta_closed, omega_binomial_identity, poly_p, poly_p_kth_derivative, DeltaTable, PolyP,
    QFamily,
};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c * x^exponent`
    pub fn monomial(c: BigRational, exponent: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { terms }
    }

    /// `x^exponent`
    pub fn x_pow(exponent: i64) -> Self {
        LaurentPoly::monomial(BigRational::one(), exponent)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigRational>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Integer-coefficient shorthand, mostly for tests.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        LaurentPoly::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    fn add_term(&mut self, exponent: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn lowest_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coefficient(&self, exponent: i64) -> BigRational {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Terms in decreasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Multiply by `x^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn scale_int(&self, factor: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(factor.clone()))
    }

    /// Formal derivative: `c x^e` becomes `c e x^(e-1)`.
    pub fn derivative(&self) -> Self {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e != 0)
                .map(|(e, c)| (e - 1, c * BigInt::from(*e))),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            if self.lowest_exponent().is_some_and(|e| e < 0) {
                return Err(Error::PoleAtZero);
            }
            return Ok(self.coefficient(0));
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| c * pow_rational(x, *e))
            .sum())
    }

    /// Floating-point value with compensated summation of the terms.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut sum = CompensatedSum::default();
        for (e, c) in &self.terms {
            let c = c.to_f64().unwrap_or(f64::NAN);
            sum.add(c * x.powi(*e as i32));
        }
        sum.value()
    }

    /// `(exponent, coefficient)` pairs in decreasing exponent order, with
    /// coefficients rendered as `p` or `p/q`.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    /// Each term as (is_negative, rendering of its magnitude), descending.
    pub(crate) fn signed_terms(&self, latex: bool) -> Vec<(bool, String)> {
        let style = if latex { Style::Latex } else { Style::Text };
        self.terms()
            .map(|(e, c)| (c.is_negative(), render_term(e, c, style)))
            .collect()
    }

    /// LaTeX rendering, e.g. `x^{3} + 3x^{2} - \frac{1}{x}`.
    pub fn to_latex(&self) -> String {
        render(self, Style::Latex)
    }
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

fn render_magnitude(c: &BigRational, style: Style) -> (String, bool) {
    // Returns the rendering of |c| and whether it needs grouping before x.
    let c = c.abs();
    if c.is_integer() {
        return (c.to_integer().to_string(), false);
    }
    match style {
        Style::Text => (format!("{}/{}", c.numer(), c.denom()), true),
        Style::Latex => (format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()), false),
    }
}

fn render_term(e: i64, c: &BigRational, style: Style) -> String {
    let (mag, group) = render_magnitude(c, style);
    let unit = c.abs().is_one();
    match (e, style) {
        (0, _) => mag,
        (e, Style::Text) if e > 0 => {
            let var = if e == 1 {
                "x".to_string()
            } else {
                format!("x^{e}")
            };
            if unit {
                var
            } else if group {
                format!("({mag}){var}")
            } else {
                format!("{mag}{var}")
            }
        }
        (e, Style::Text) => {
            let den = if e == -1 {
                "x".to_string()
            } else {
                format!("x^{}", -e)
            };
            if group {
                format!("({mag})/{den}")
            } else {
                format!("{mag}/{den}")
            }
        }
        (e, Style::Latex) if e > 0 => {
            let var = if e == 1 {
                "x".to_string()
            } else {
                format!("x^{{{e}}}")
            };
            if unit {
                var
            } else {
                format!("{mag}{var}")
            }
        }
        (e, Style::Latex) => {
            let den = if e == -1 {
                "x".to_string()
            } else {
                format!("x^{{{}}}", -e)
            };
            let num = if c.is_integer() {
                mag
            } else {
                c.abs().numer().to_string()
            };
            let den = if c.is_integer() {
                den
            } else {
                format!("{}{den}", c.abs().denom())
            };
            format!("\\frac{{{num}}}{{{den}}}")
        }
    }
}

fn render(p: &LaurentPoly, style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&render_term(e, c, style));
    }
    out
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents: `x^3 + 3x^2 - 3x + 2`, `1 + 1/x`, `(1/2)x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Style::Text))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}
