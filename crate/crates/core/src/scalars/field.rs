//! The scalar domains the builders are generic over.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fraction::ScalarFraction;
use super::special::GenericSpecialization;
use super::ScalarError;

/// An exact field: either symbolic `Q(q, nu)` or its image at a rational
/// point.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self, ScalarError>;
    /// Square root inside the field, if the value is a square.
    fn sqrt_exact(&self) -> Option<Self>;
    /// Image at a rational point. Rational scalars are already specialized
    /// and are returned unchanged.
    fn specialize(&self, s: &GenericSpecialization) -> Result<BigRational, ScalarError>;

    fn divide(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.times(&o.inverse()?))
    }

    fn powi(&self, e: i64) -> Result<Self, ScalarError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.times(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.times(&base);
            }
        }
        Ok(acc)
    }
}

impl Field for ScalarFraction {
    fn zero() -> Self {
        ScalarFraction::zero()
    }
    fn one() -> Self {
        ScalarFraction::one()
    }
    fn from_i64(v: i64) -> Self {
        ScalarFraction::from_i64(v)
    }
    fn is_zero(&self) -> bool {
        ScalarFraction::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, ScalarError> {
        ScalarFraction::inverse(self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        self.sqrt()
    }
    fn specialize(&self, s: &GenericSpecialization) -> Result<BigRational, ScalarError> {
        self.eval(&s.q_value, &s.nu_value)
    }
    fn powi(&self, e: i64) -> Result<Self, ScalarError> {
        ScalarFraction::powi(self, e)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, ScalarError> {
        if Zero::is_zero(self) {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
    fn specialize(&self, _s: &GenericSpecialization) -> Result<BigRational, ScalarError> {
        Ok(self.clone())
    }
}

/// The parameters `q`, `nu` inside a field, with the constants derived from
/// them.
#[derive(Clone, Debug)]
pub struct Parameters<F: Field> {
    pub q: F,
    pub nu: F,
    pub q_inv: F,
    pub nu_inv: F,
    /// `q - q^-1`.
    pub qq: F,
    /// `1 + (nu^-1 - nu) / (q - q^-1)`, the image of every `z^(p)`.
    pub mu: F,
    /// Set for rational parameters, used by numeric consumers.
    pub point: Option<GenericSpecialization>,
}

impl<F: Field> Parameters<F> {
    fn from_values(q: F, nu: F, point: Option<GenericSpecialization>) -> Result<Self, ScalarError> {
        let q_inv = q.inverse()?;
        let nu_inv = nu.inverse()?;
        let qq = q.minus(&q_inv);
        let mu = F::one().plus(&nu_inv.minus(&nu).divide(&qq)?);
        Ok(Self {
            q,
            nu,
            q_inv,
            nu_inv,
            qq,
            mu,
            point,
        })
    }

    /// `nu^(2 eps) q^(2 z)`.
    pub fn token_value(&self, nu_flag: u8, z: i64) -> F {
        let qpart = if z >= 0 {
            self.q.powi(2 * z).expect("nonzero q")
        } else {
            self.q_inv.powi(-2 * z).expect("nonzero q")
        };
        if nu_flag == 0 {
            qpart
        } else {
            qpart.times(&self.nu).times(&self.nu)
        }
    }
}

impl Parameters<ScalarFraction> {
    /// Indeterminate `q` and `nu`.
    pub fn symbolic() -> Self {
        Self::from_values(ScalarFraction::q(), ScalarFraction::nu(), None)
            .expect("q and nu are invertible")
    }
}

impl Parameters<BigRational> {
    /// The point `s`; fails if `q - q^-1` or `nu` vanish there.
    pub fn rational(s: &GenericSpecialization) -> Result<Self, ScalarError> {
        let p = Self::from_values(s.q_value.clone(), s.nu_value.clone(), Some(s.clone()))
            .map_err(|_| ScalarError::NonGenericPoint)?;
        Ok(p)
    }
}
