//! Integer and rational number families: binomials, the Omega triangle,
//! its column partial sums, rencontres numbers and the lambda constants
//! linking the two.
//!
//! Everything is exact. Omega(a, a-1) grows like (a-2)!, so no fixed-width
//! integer ever holds a table entry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `n!`
pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, m| acc * m)
}

/// Binomial coefficient C(n, k), zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        // acc * (n - j) is always divisible by j + 1 at this point.
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

fn sign(negative: bool) -> BigInt {
    if negative {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// Triangular table of Omega(a, b) for `1 <= a <= max_a`, `0 <= b < max_a`.
///
/// Built bottom-up from the four-case recursion:
///
/// * Omega(a, 0) = 1
/// * Omega(a, 1) = Omega(a-1, 1) + 1, with Omega(1, 1) = 0
/// * Omega(a, b) = Omega(a-1, b) - (b-1) Omega(a-1, b-1) for 2 <= b <= a-1
/// * Omega(a, b) = 0 for b >= a (b >= 1)
///
/// The table is immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    rows: Vec<Vec<BigInt>>,
    zero: BigInt,
}

impl OmegaTable {
    /// Fill rows `1..=max_a` with the defining recursion.
    pub fn new(max_a: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_a);
        for a in 1..=max_a {
            let mut row = vec![BigInt::zero(); max_a];
            row[0] = BigInt::one();
            if a >= 2 {
                let prev = &rows[a - 2];
                row[1] = &prev[1] + 1;
                for b in 2..a {
                    row[b] = &prev[b] - &prev[b - 1] * (b - 1);
                }
            }
            rows.push(row);
        }
        OmegaTable {
            rows,
            zero: BigInt::zero(),
        }
    }

    /// Build the same table column by column with the summation recursion
    /// Omega(a, b) = -(b-1) * sum_{j=b}^{a-1} Omega(j, b-1) for b >= 2.
    ///
    /// Columns 0 and 1 come from the defining recursion, where the summation
    /// form degenerates (its factor b-1 vanishes at b = 1).
    pub fn from_column_sums(max_a: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = (1..=max_a)
            .map(|a| {
                let mut row = vec![BigInt::zero(); max_a];
                row[0] = BigInt::one();
                if max_a > 1 {
                    row[1] = BigInt::from(a - 1);
                }
                row
            })
            .collect();
        for b in 2..max_a {
            let mut running = BigInt::zero();
            // Row a needs sum_{j=b}^{a-1} Omega(j, b-1); extend the prefix one row at a time.
            for a in (b + 1)..=max_a {
                running += &rows[a - 2][b - 1];
                rows[a - 1][b] = -(&running * (b - 1));
            }
        }
        OmegaTable {
            rows,
            zero: BigInt::zero(),
        }
    }

    pub fn max_a(&self) -> usize {
        self.rows.len()
    }

    /// Omega(a, b). Panics when `a` is zero or beyond the table.
    pub fn get(&self, a: usize, b: usize) -> &BigInt {
        assert!(
            a >= 1 && a <= self.max_a(),
            "Omega row {a} outside table 1..={}",
            self.max_a()
        );
        self.rows[a - 1].get(b).unwrap_or(&self.zero)
    }

    /// Row `a`, columns `0..max_a`.
    pub fn row(&self, a: usize) -> &[BigInt] {
        &self.rows[a - 1]
    }

    /// S_i(n) = sum_{j=i+1}^{n} Omega(j, i) by direct summation; `n` must
    /// not exceed `max_a`.
    pub fn partial_sum(&self, i: usize, n: usize) -> BigInt {
        ((i + 1)..=n).map(|j| self.get(j, i)).sum()
    }
}

/// Omega(a, b) from the defining recursion.
pub fn omega_recursive(a: usize, b: usize) -> BigInt {
    assert!(a >= 1, "Omega is defined for a >= 1");
    if b >= a && b >= 1 {
        return BigInt::zero();
    }
    OmegaTable::new(a).get(a, b).clone()
}

/// Omega(a, b) = (-1)^(b+1) (b-1)! C(a-1, b) for b >= 1.
pub fn omega_closed(a: usize, b: usize) -> BigInt {
    assert!(a >= 1 && b >= 1, "closed form needs a >= 1 and b >= 1");
    sign(b.is_multiple_of(2)) * factorial(b - 1) * binomial(a - 1, b)
}

/// Omega(a, b) through the column-summation recursion; for `b <= 1` the
/// summation degenerates and the defining recursion is used instead.
pub fn omega_alt_recursive(a: usize, b: usize) -> BigInt {
    assert!(a >= 1, "Omega is defined for a >= 1");
    if b <= 1 {
        return omega_recursive(a, b);
    }
    if b >= a {
        return BigInt::zero();
    }
    OmegaTable::from_column_sums(a).get(a, b).clone()
}

/// S_i(n) by direct summation of column `i` of the Omega triangle.
pub fn partial_sum(i: usize, n: usize) -> BigInt {
    if n <= i {
        return BigInt::zero();
    }
    OmegaTable::new(n).partial_sum(i, n)
}

/// Table of S_i(n) for `0 <= i <= max_i`, `0 <= n <= max_n` generated by the
/// partial-sum recursion S_i(n) = S_i(n-1) - (i-1) S_{i-1}(n-1).
///
/// The recursion only holds for i >= 2: its derivation uses the third case
/// of the Omega recursion, which does not cover column 1. Columns 0 and 1
/// are seeded with S_0(n) = n and S_1(n) = S_1(n-1) + (n-1).
#[derive(Debug, Clone)]
pub struct PartialSumTable {
    // columns[i][n]
    columns: Vec<Vec<BigInt>>,
}

impl PartialSumTable {
    pub fn new(max_i: usize, max_n: usize) -> Self {
        let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(max_i + 1);
        for i in 0..=max_i {
            let mut col = vec![BigInt::zero(); max_n + 1];
            for n in (i + 1)..=max_n {
                col[n] = match i {
                    0 => BigInt::from(n),
                    1 => &col[n - 1] + (n - 1),
                    _ => &col[n - 1] - &columns[i - 1][n - 1] * (i - 1),
                };
            }
            columns.push(col);
        }
        PartialSumTable { columns }
    }

    pub fn get(&self, i: usize, n: usize) -> &BigInt {
        &self.columns[i][n]
    }
}

/// S_i(n) through the partial-sum recursion (see [`PartialSumTable`]).
pub fn partial_sum_recursive(i: usize, n: usize) -> BigInt {
    PartialSumTable::new(i, n).get(i, n).clone()
}

/// S_i(n) = (-1)^(i+1) (i-1)! C(n, i+1) for i >= 1.
pub fn partial_sum_closed(i: usize, n: usize) -> BigInt {
    assert!(i >= 1, "closed form for S_i(n) needs i >= 1");
    sign(i.is_multiple_of(2)) * factorial(i - 1) * binomial(n, i + 1)
}

/// Number of derangements of `m` items, m! sum_{i=0}^{m} (-1)^i / i!,
/// evaluated as the integer sum of (-1)^i m!/i!.
pub fn derangements(m: usize) -> BigInt {
    let mut total = BigInt::zero();
    // m!/i! for i = m, m-1, ..., 0
    let mut falling = BigInt::one();
    for i in (0..=m).rev() {
        if i % 2 == 0 {
            total += &falling;
        } else {
            total -= &falling;
        }
        falling *= i.max(1);
    }
    total
}

/// D(n, k): permutations of `n` items with exactly `k` fixed points,
/// C(n, k) * D_{n-k}.
pub fn rencontres(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::FixedPointsExceedSize { n, k });
    }
    Ok(binomial(n, k) * derangements(n - k))
}

/// D(n, k) for `0 <= k <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RencontresTable {
    rows: Vec<Vec<BigInt>>,
}

impl RencontresTable {
    pub fn new(max_n: usize) -> Self {
        let derange: Vec<BigInt> = (0..=max_n).map(derangements).collect();
        let rows = (0..=max_n)
            .map(|n| (0..=n).map(|k| binomial(n, k) * &derange[n - k]).collect())
            .collect();
        RencontresTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&BigInt> {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .ok_or(Error::FixedPointsExceedSize { n, k })
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

/// lambda_k = [k * sum_{i=0}^{k} (-1)^(i+k+1) / i!]^(-1), exact.
///
/// The bracket vanishes for k = 0 and k = 1, so only k >= 2 is accepted.
pub fn lambda_constant(k: usize) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::LambdaUndefined { k });
    }
    let mut sum = BigRational::zero();
    let mut inv_fact = BigRational::one();
    for i in 0..=k {
        if i > 0 {
            inv_fact /= BigInt::from(i);
        }
        if (i + k + 1).is_multiple_of(2) {
            sum += &inv_fact;
        } else {
            sum -= &inv_fact;
        }
    }
    let bracket = sum * BigInt::from(k);
    Ok(bracket.recip())
}

fn to_integer(value: BigRational) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral {
            value: value.to_string(),
        })
    }
}

/// Omega(n, k) = lambda_k * D(n-1, n-k-1) for 2 <= k < n.
pub fn omega_from_rencontres(n: usize, k: usize) -> Result<BigInt> {
    if k < 2 || k >= n {
        return Err(Error::LambdaDomain { n, k });
    }
    let lambda = lambda_constant(k)?;
    let count = rencontres(n - 1, n - k - 1)?;
    to_integer(lambda * BigRational::from_integer(count))
}

/// D(n, k) = Omega(n+1, n-k) / lambda_{n-k}, defined when n - k >= 2.
pub fn rencontres_from_omega(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::FixedPointsExceedSize { n, k });
    }
    let lambda = lambda_constant(n - k)?;
    let omega = omega_closed(n + 1, n - k);
    to_integer(BigRational::from_integer(omega) / lambda)
}

/// True when every entry of column `b` in rows `b+1..max_a` carries the sign
/// (-1)^(b+1), for all 2 <= b < max_a.
pub fn signs_alternate(table: &OmegaTable) -> bool {
    (2..table.max_a()).all(|b| {
        ((b + 1)..=table.max_a()).all(|a| {
            let v = table.get(a, b);
            if b % 2 == 0 {
                v.is_negative()
            } else {
                v.is_positive()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Omega(a, b), a = 1..9, b = 0..8.
    const OMEGA_ROWS: [[i64; 9]; 9] = [
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

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(8, 8), big(1));
        assert_eq!(binomial(3, 5), big(0));
        // brute-force count of 2-subsets of a 5-set
        let subsets = (0u32..32).filter(|m| m.count_ones() == 2).count();
        assert_eq!(binomial(5, 2), BigInt::from(subsets));
        assert_eq!(-factorial(7) * binomial(8, 8), big(-5040));
    }

    #[test]
    fn omega_table_matches_reference() {
        let t = OmegaTable::new(9);
        for (a, row) in OMEGA_ROWS.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                assert_eq!(t.get(a + 1, b), &big(v), "Omega({}, {})", a + 1, b);
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_recursive(4, 3), big(2));
        assert_eq!(omega_recursive(7, 4), big(-90));
        assert_eq!(omega_recursive(3, 5), big(0));
        assert_eq!(omega_recursive(1, 1), big(0));
        assert_eq!(omega_closed(9, 8), big(-5040));
        assert_eq!(omega_closed(6, 4), big(-30));
        assert_eq!(omega_closed(5, 5), big(0));
        assert_eq!(omega_alt_recursive(5, 2), big(-6));
        assert_eq!(omega_alt_recursive(9, 8), big(-5040));
        assert_eq!(omega_alt_recursive(6, 1), big(5));
    }

    #[test]
    fn omega_invariants() {
        let t = OmegaTable::new(40);
        for a in 1..=40 {
            assert_eq!(t.get(a, 0), &big(1));
            assert_eq!(t.get(a, 1), &BigInt::from(a - 1));
            assert!(t.get(a, a).is_zero());
            assert!(t.get(a, a + 3).is_zero());
        }
        assert!(signs_alternate(&t));
    }

    #[test]
    fn column_sum_table_matches_recursion() {
        assert_eq!(OmegaTable::from_column_sums(60), OmegaTable::new(60));
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum(0, 7), big(7));
        assert_eq!(partial_sum(2, 9), big(-84));
        assert_eq!(big(-1 - 3 - 6 - 10 - 15 - 21 - 28), big(-84));
        assert_eq!(partial_sum(3, 5), big(10));
        assert_eq!(partial_sum(5, 5), big(0));
        assert_eq!(partial_sum_closed(1, 5), big(10));
        assert_eq!(partial_sum_closed(4, 9), big(-756));
        assert_eq!(big(-6 - 30 - 90 - 210 - 420), big(-756));
        assert_eq!(partial_sum_closed(6, 6), big(0));
        assert_eq!(partial_sum_recursive(2, 9), big(-84));
        assert_eq!(partial_sum_recursive(1, 5), big(10));
    }

    #[test]
    fn partial_sum_recursion_fails_literally_at_column_one() {
        // Applied at i = 1 the recursion would freeze S_1 at S_1(1) = 0.
        let literal = partial_sum(1, 4) - BigInt::zero() * partial_sum(0, 4);
        assert_ne!(partial_sum(1, 5), literal);
    }

    #[test]
    fn derangement_values() {
        let expected = [1, 0, 1, 2, 9, 44, 265, 1854];
        for (m, &d) in expected.iter().enumerate() {
            assert_eq!(derangements(m), big(d));
        }
    }

    #[test]
    fn rencontres_examples() {
        assert_eq!(rencontres(4, 2).unwrap(), big(6));
        assert_eq!(rencontres(7, 7).unwrap(), big(1));
        assert_eq!(rencontres(5, 1).unwrap(), big(45));
        assert_eq!(
            rencontres(3, 4),
            Err(Error::FixedPointsExceedSize { n: 3, k: 4 })
        );
    }

    #[test]
    fn rencontres_table_rows_sum_to_factorial() {
        let t = RencontresTable::new(20);
        for n in 0..=20 {
            let total: BigInt = t.row(n).iter().sum();
            assert_eq!(total, factorial(n));
            assert_eq!(t.get(n, n).unwrap(), &big(1));
            if n >= 1 {
                assert!(t.get(n, n - 1).unwrap().is_zero());
            }
        }
        assert!(t.get(3, 4).is_err());
    }

    #[test]
    fn lambda_examples() {
        let r = |n: i64, d: i64| BigRational::new(big(n), big(d));
        assert_eq!(lambda_constant(2).unwrap(), r(-1, 1));
        assert_eq!(lambda_constant(3).unwrap(), r(1, 1));
        assert_eq!(lambda_constant(4).unwrap(), r(-2, 3));
        assert_eq!(lambda_constant(0), Err(Error::LambdaUndefined { k: 0 }));
        assert_eq!(lambda_constant(1), Err(Error::LambdaUndefined { k: 1 }));
    }

    #[test]
    fn omega_from_rencontres_examples() {
        assert_eq!(omega_from_rencontres(5, 2).unwrap(), big(-6));
        assert_eq!(omega_from_rencontres(5, 3).unwrap(), big(8));
        assert_eq!(omega_from_rencontres(6, 4).unwrap(), big(-30));
        assert!(omega_from_rencontres(5, 1).is_err());
        assert!(omega_from_rencontres(5, 5).is_err());
        assert_eq!(rencontres_from_omega(5, 1).unwrap(), big(45));
        assert!(rencontres_from_omega(5, 4).is_err());
    }
}
