//! The polynomial families built on the Omega triangle: P_n, Q_k and the
//! x-dependent coefficients Delta(n, k) of the derivatives of x^x.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::LaurentPoly;
use crate::combinatorics::{binomial, OmegaTable};

/// P_n(x) = sum_{i=0}^{n-1} Omega(n, i) x^(n-1-i), the monic degree n-1
/// solution of P_n' = (n-1) P_{n-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyP {
    pub n: usize,
    pub poly: LaurentPoly,
}

/// P_n read off row `n` of the Omega table.
pub fn poly_p(omega: &OmegaTable, n: usize) -> PolyP {
    assert!(n >= 1, "P_n is defined for n >= 1");
    let row = omega.row(n);
    let poly = LaurentPoly::from_terms((0..n).map(|i| {
        (
            (n - 1 - i) as i64,
            BigRational::from_integer(row[i].clone()),
        )
    }));
    PolyP { n, poly }
}

/// k-th formal derivative of P_n; the zero polynomial once k > n - 1.
pub fn poly_p_kth_derivative(omega: &OmegaTable, n: usize, k: usize) -> LaurentPoly {
    poly_p(omega, n).poly.nth_derivative(k)
}

/// Memoized Q_0..Q_max_k with Q_0 = 1/x and
/// Q_k = x * sum_{i=0}^{k-1} Omega(k, i) Q_{k-1-i}.
#[derive(Debug, Clone)]
pub struct QFamily {
    polys: Vec<LaurentPoly>,
}

impl QFamily {
    pub fn new(max_k: usize) -> Self {
        QFamily::with_table(&OmegaTable::new(max_k.max(1)), max_k)
    }

    /// Uses rows `1..=max_k` of `omega`.
    pub fn with_table(omega: &OmegaTable, max_k: usize) -> Self {
        assert!(
            omega.max_a() >= max_k,
            "Omega table too small for Q_{max_k}"
        );
        let mut polys = vec![LaurentPoly::x_pow(-1)];
        for k in 1..=max_k {
            let row = omega.row(k);
            let inner: LaurentPoly = (0..k).map(|i| polys[k - 1 - i].scale_int(&row[i])).sum();
            let q = inner.shift(1);
            debug_assert!(q.lowest_exponent().is_some_and(|e| e >= 0));
            polys.push(q);
        }
        QFamily { polys }
    }

    pub fn max_k(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, k: usize) -> &LaurentPoly {
        &self.polys[k]
    }
}

/// Delta(n, k) = C(n, k) Q_k(x) / x^(k-1); zero for k > n.
pub fn delta_closed(q: &QFamily, n: usize, k: usize) -> LaurentPoly {
    if k > n {
        return LaurentPoly::zero();
    }
    q.get(k).scale_int(&binomial(n, k)).shift(1 - k as i64)
}

/// Delta(m, r) for all `0 <= r <= m <= max_n`, filled with the recursion
///
/// Delta(n, 0) = 1,
/// Delta(n, k) = Delta(n-1, k) + sum_{i=0}^{k-1} Omega(n, i) x^(-i) Delta(n-1-i, k-1-i).
#[derive(Debug, Clone)]
pub struct DeltaTable {
    rows: Vec<Vec<LaurentPoly>>,
}

impl DeltaTable {
    pub fn recursive(omega: &OmegaTable, max_n: usize) -> Self {
        assert!(omega.max_a() >= max_n, "Omega table too small");
        let mut rows: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::one()]];
        for n in 1..=max_n {
            let mut row = vec![LaurentPoly::one()];
            for k in 1..=n {
                let mut acc = rows[n - 1].get(k).cloned().unwrap_or_default();
                for i in 0..k {
                    let lower = &rows[n - 1 - i];
                    if let Some(d) = lower.get(k - 1 - i) {
                        let coeff = omega.get(n, i);
                        acc = &acc + &d.scale_int(coeff).shift(-(i as i64));
                    }
                }
                row.push(acc);
            }
            rows.push(row);
        }
        DeltaTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Delta(n, k); zero for k > n.
    pub fn get(&self, n: usize, k: usize) -> LaurentPoly {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }
}

/// Omega(n, i) C(n-1-i, k-i) == Omega(k+1, i) C(n-1, k) for i <= k < n.
pub fn omega_binomial_identity(omega: &OmegaTable, n: usize, k: usize, i: usize) -> bool {
    assert!(i <= k && k < n, "needs i <= k < n");
    let lhs: BigInt = omega.get(n, i) * binomial(n - 1 - i, k - i);
    let rhs: BigInt = omega.get(k + 1, i) * binomial(n - 1, k);
    lhs == rhs
}
