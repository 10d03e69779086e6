//! Exact derivatives and Taylor series of `f(x) = x^x`.
//!
//! The derivatives satisfy the recursion
//!
//! ```text
//! f^(n)(x) = f^(n-1)(x) ln(x) + sum_{i=0}^{n-1} Omega(n, i) f^(n-1-i)(x) / x^i
//! ```
//!
//! driven by the integer triangle `Omega(a, b) = (-1)^(b+1) (b-1)! C(a-1, b)`.
//! Unrolled, `f^(n)(x) = f(x) sum_i Delta(n, i) ln(x)^(n-i)` with Laurent
//! polynomial coefficients `Delta(n, i) = C(n, i) Q_i(x) / x^(i-1)`, and the
//! Taylor series at 1 has the rational coefficients `Q_k(1) / k!`.
//!
//! * [`combinatorics`]: Omega, partial sums, rencontres numbers, lambda.
//! * [`laurent`]: Laurent polynomials and the P, Q and Delta families.
//! * [`derivative`]: symbolic and numeric derivatives.
//! * [`series`]: Taylor coefficients and partial sums.
//! * [`oracle`]: independent checks (formal power series, finite
//!   differences, permutation enumeration).
//! * [`verify`]: the identity suites behind `powertower verify`.

pub mod combinatorics;
pub mod derivative;
pub mod error;
pub mod laurent;
mod numeric;
pub mod oracle;
pub mod series;
pub mod verify;

pub use combinatorics::{OmegaTable, RencontresTable};
pub use derivative::{DerivativeEngine, DerivativeForm, DerivativeValue, Method};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use series::{Anchor, EvalReport, TaylorSeries};
