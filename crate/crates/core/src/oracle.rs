//! Ground truth that does not go through the Omega calculus.
//!
//! * Truncated formal power series in `u = x - 1` with exact rational
//!   coefficients; `x^x = exp((1+u) ln(1+u))` gives the Taylor coefficients
//!   at 1 directly.
//! * Central finite differences with one Richardson step for numeric
//!   derivatives at arbitrary points.
//! * Exhaustive permutation enumeration for rencontres numbers.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Truncated series `sum_{k=0}^{order} c_k u^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<BigRational>,
}

impl FormalSeries {
    pub fn zero(order: usize) -> Self {
        FormalSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = FormalSeries::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn from_coeffs(order: usize, coeffs: Vec<BigRational>) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, BigRational::zero());
        FormalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// ln(1 + u) = sum_{m >= 1} (-1)^(m+1) u^m / m
    pub fn ln_one_plus_u(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|m| match m {
                0 => BigRational::zero(),
                m if m % 2 == 1 => BigRational::new(BigInt::one(), BigInt::from(m)),
                m => BigRational::new(-BigInt::one(), BigInt::from(m)),
            })
            .collect();
        FormalSeries { coeffs }
    }

    pub fn add(&self, other: &FormalSeries) -> FormalSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        FormalSeries { coeffs }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k)
                    .map(|j| &self.coeffs[j] * &other.coeffs[k - j])
                    .sum()
            })
            .collect();
        FormalSeries { coeffs }
    }

    /// exp of a series with zero constant term, through the recurrence
    /// e_0 = 1, e_m = (1/m) sum_{j=1}^{m} j g_j e_{m-j}.
    pub fn exp(&self) -> Result<FormalSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let order = self.order();
        let mut e: Vec<BigRational> = Vec::with_capacity(order + 1);
        e.push(BigRational::one());
        for m in 1..=order {
            let s: BigRational = (1..=m)
                .filter(|&j| !self.coeffs[j].is_zero())
                .map(|j| &self.coeffs[j] * BigInt::from(j) * &e[m - j])
                .sum();
            e.push(s / BigInt::from(m));
        }
        Ok(FormalSeries { coeffs: e })
    }
}

/// Taylor coefficients of x^x at x = 1, as `exp((1+u) ln(1+u))` in `u = x-1`.
pub fn oracle_series_at_one(order: usize) -> FormalSeries {
    let ln = FormalSeries::ln_one_plus_u(order);
    // (1 + u) * ln(1 + u): shift-and-add instead of a full product.
    let mut g = ln.coeffs.clone();
    for k in (1..=order).rev() {
        g[k] = &ln.coeffs[k] + &ln.coeffs[k - 1];
    }
    FormalSeries::from_coeffs(order, g)
        .exp()
        .expect("(1+u) ln(1+u) has no constant term")
}

/// Highest derivative order the finite-difference oracle accepts.
pub const MAX_DIFFERENCE_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDiffResult {
    pub n: usize,
    pub x: f64,
    pub h: f64,
    pub value: f64,
    pub error_bound: f64,
}

fn power_tower(x: f64) -> f64 {
    (x * x.ln()).exp()
}

/// delta_h^n f(x) / h^n with points x + (n/2 - j) h, j = 0..=n.
fn central_difference(n: usize, x: f64, h: f64) -> f64 {
    let half = n as f64 / 2.0;
    let mut acc = 0.0;
    let mut w = 1.0;
    for j in 0..=n {
        let fx = power_tower(x + (half - j as f64) * h);
        if j % 2 == 0 {
            acc += w * fx;
        } else {
            acc -= w * fx;
        }
        w = w * (n - j) as f64 / (j + 1) as f64;
    }
    acc / h.powi(n as i32)
}

/// Default step for order `n` at `x`: balances the O(h^4) truncation left
/// after extrapolation against the eps / h^n rounding floor, and keeps the
/// stencil well inside x > 0.
pub fn default_step(n: usize, x: f64) -> f64 {
    let n = n.max(1);
    let h = 2.0 * x * f64::EPSILON.powf(1.0 / (n as f64 + 4.0));
    h.min(0.9 * x / n as f64)
}

/// Estimate f^(n)(x) for f(x) = x^x from the n-th central difference at
/// steps h and h/2, combined by one Richardson step.
///
/// `error_bound` is |D(h) - D(h/2)| / 3 plus the rounding floor
/// eps * 2^n * max|f| / (h/2)^n of the finer stencil.
pub fn finite_difference(n: usize, x: f64, h: f64) -> Result<FiniteDiffResult> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::NonPositiveArgument(x));
    }
    if n > MAX_DIFFERENCE_ORDER {
        return Err(Error::DifferenceOrderTooHigh {
            n,
            max: MAX_DIFFERENCE_ORDER,
        });
    }
    if n == 0 {
        let value = power_tower(x);
        return Ok(FiniteDiffResult {
            n,
            x,
            h,
            value,
            error_bound: f64::EPSILON * value.abs(),
        });
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidStep(h));
    }
    let reach = n as f64 / 2.0 * h;
    if x - reach <= 0.0 {
        return Err(Error::StencilOutOfDomain { n, x, h });
    }
    let coarse = central_difference(n, x, h);
    let fine = central_difference(n, x, h / 2.0);
    let value = (4.0 * fine - coarse) / 3.0;
    let f_max = power_tower(x + reach).max(power_tower(x - reach));
    let rounding = f64::EPSILON * 2f64.powi(n as i32) * f_max / (h / 2.0).powi(n as i32);
    let error_bound = (coarse - fine).abs() / 3.0 + rounding;
    Ok(FiniteDiffResult {
        n,
        x,
        h,
        value,
        error_bound,
    })
}

/// Largest permutation size enumerated exhaustively.
pub const MAX_ENUMERATION: usize = 9;

/// Counts of permutations of `n` items by number of fixed points, index k.
pub fn brute_force_rencontres_row(n: usize) -> Result<Vec<u64>> {
    if n > MAX_ENUMERATION {
        return Err(Error::EnumerationBudget {
            n,
            max: MAX_ENUMERATION,
        });
    }
    let mut counts = vec![0u64; n + 1];
    for perm in (0..n).permutations(n) {
        let fixed = perm.iter().enumerate().filter(|(i, p)| i == *p).count();
        counts[fixed] += 1;
    }
    Ok(counts)
}

/// Permutations of `n` items with exactly `k` fixed points, by enumeration.
pub fn brute_force_rencontres(n: usize, k: usize) -> Result<u64> {
    Ok(brute_force_rencontres_row(n)?.get(k).copied().unwrap_or(0))
}
