//! Exact scalars: Laurent polynomials, the field `Q(q, nu)`, truncated
//! series, and rational specializations.

mod field;
mod fraction;
pub(crate) mod gcd;
mod laurent;
mod series;
mod special;
mod text;

pub use field::{Field, Parameters};
pub use fraction::ScalarFraction;
pub use laurent::{Exponent, LaurentPoly};
pub use series::TruncatedSeries;
pub use special::{check_generic, ratio_to_f64, specialize, GenericSpecialization};

pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-generic point: a denominator vanishes")]
    NonGenericPoint,
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// Exact gcd of two Laurent polynomials (no monomial factor, positive
/// leading coefficient).
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    gcd::gcd(a, b)
}
