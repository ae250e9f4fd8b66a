//! Rational specializations of `(q, nu)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::fraction::ScalarFraction;
use super::ScalarError;

/// A rational point `(q, nu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSpecialization {
    pub q_value: BigRational,
    pub nu_value: BigRational,
}

impl Default for GenericSpecialization {
    /// `(q, nu) = (2, 3)`.
    fn default() -> Self {
        Self::from_integers(2, 3)
    }
}

impl GenericSpecialization {
    pub fn new(q_value: BigRational, nu_value: BigRational) -> Self {
        Self { q_value, nu_value }
    }

    pub fn from_integers(q: i64, nu: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(q)),
            BigRational::from_integer(BigInt::from(nu)),
        )
    }

    pub fn q_f64(&self) -> f64 {
        ratio_to_f64(&self.q_value)
    }

    pub fn nu_f64(&self) -> f64 {
        ratio_to_f64(&self.nu_value)
    }
}

pub fn ratio_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Evaluates `x` at `s`.
pub fn specialize(x: &ScalarFraction, s: &GenericSpecialization) -> Result<BigRational, ScalarError> {
    x.eval(&s.q_value, &s.nu_value)
}

fn rpow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Whether every token value with `|z| <= n` is distinct at `s`, and no
/// `q^(2z)` (`0 < |z| <= 2n`) or `nu^2 q^(2z)` (`|z| <= 2n`) equals one.
pub fn check_generic(s: &GenericSpecialization, n: usize) -> bool {
    let q = &s.q_value;
    let nu = &s.nu_value;
    if q.is_zero() || nu.is_zero() {
        return false;
    }
    let n = n as i64;
    let nu2 = nu * nu;
    let mut seen = BTreeSet::new();
    for eps in 0..2 {
        for z in -n..=n {
            let v = if eps == 0 { rpow(q, 2 * z) } else { &nu2 * rpow(q, 2 * z) };
            if !seen.insert(v) {
                return false;
            }
        }
    }
    for z in -2 * n..=2 * n {
        let qz = rpow(q, 2 * z);
        if z != 0 && qz.is_one() {
            return false;
        }
        if (&nu2 * &qz).is_one() {
            return false;
        }
    }
    true
}
