//! Elements of the rational function field `Q(q, nu)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::laurent::LaurentPoly;
use super::ScalarError;

/// A reduced fraction of Laurent polynomials.
///
/// Canonical form: numerator and denominator are coprime, and the
/// denominator's lex-least term is a positive constant (exponent `(0, 0)`).
/// Two fractions are equal exactly when their canonical forms coincide.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ScalarFraction {
    /// Builds `num / den`, reducing and normalizing.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::normalize(p, LaurentPoly::one())
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_i64(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn q() -> Self {
        Self::from_poly(LaurentPoly::q())
    }

    pub fn nu() -> Self {
        Self::from_poly(LaurentPoly::nu())
    }

    /// `c * q^a * nu^b`.
    pub fn monomial(c: i64, a: i64, b: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(BigInt::from(c), (a, b)))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::normalize(num, LaurentPoly::one());
        }
        if den.is_monomial() {
            let c = den.terms()[0].1.clone();
            let g = num.integer_content().gcd(&c);
            let (num, den) = if g.is_one() {
                (num, den)
            } else {
                (num.div_int_exact(&g), den.div_int_exact(&g))
            };
            return Self::normalize(num, den);
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            return Self::normalize(num, den);
        }
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        Self::normalize(n, d)
    }

    /// Moves the denominator's lex-least monomial and sign to the numerator.
    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        let (e, c) = den.trailing().cloned().expect("nonzero denominator");
        let neg = c.is_negative();
        let mut num = if e != (0, 0) { num.shift((-e.0, -e.1)) } else { num };
        let mut den = if e != (0, 0) { den.shift((-e.0, -e.1)) } else { den };
        if neg {
            num = -&num;
            den = -&den;
        }
        Self { num, den }
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
        .renormalized())
    }

    fn renormalized(self) -> Self {
        Self::normalize(self.num, self.den)
    }

    /// Equality by cross-multiplication, independent of the canonical form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        (&lhs - &rhs).is_zero()
    }

    /// Exact square root, if the value is a square in `Q(q, nu)`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.num.is_zero() {
            return Some(Self::zero());
        }
        let lead_neg = self.den.leading().is_some_and(|t| t.1.is_negative());
        let (n, d) = if lead_neg {
            (-&self.num, -&self.den)
        } else {
            (self.num.clone(), self.den.clone())
        };
        let rn = n.sqrt()?;
        let rd = d.sqrt()?;
        Some(Self::reduce(rn, rd))
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, q: &BigRational, nu: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q, nu).ok_or(ScalarError::NonGenericPoint)?;
        if d.is_zero() {
            return Err(ScalarError::NonGenericPoint);
        }
        let n = self.num.eval(q, nu).ok_or(ScalarError::NonGenericPoint)?;
        Ok(n / d)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inverse()?)
    }
}

impl Add for &ScalarFraction {
    type Output = ScalarFraction;
    fn add(self, rhs: &ScalarFraction) -> ScalarFraction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = &self.num + &rhs.num;
            return ScalarFraction::reduce(n, self.den.clone());
        }
        if self.den.is_one() {
            let n = &(&self.num * &rhs.den) + &rhs.num;
            return ScalarFraction::normalize(n, rhs.den.clone());
        }
        if rhs.den.is_one() {
            let n = &self.num + &(&rhs.num * &self.den);
            return ScalarFraction::normalize(n, self.den.clone());
        }
        // Henrici: with g0 = gcd(b, d), only g0 can share factors with the
        // new numerator.
        let g0 = gcd(&self.den, &rhs.den);
        let (b1, d1) = if g0.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g0).expect("gcd divides"),
                rhs.den.div_exact(&g0).expect("gcd divides"),
            )
        };
        let n = &(&self.num * &d1) + &(&rhs.num * &b1);
        let den = &b1 * &rhs.den;
        if g0.is_one() || n.is_zero() {
            return ScalarFraction::reduce_trivial(n, den);
        }
        let g = gcd(&n, &g0);
        if g.is_one() {
            return ScalarFraction::normalize(n, den);
        }
        ScalarFraction::normalize(
            n.div_exact(&g).expect("gcd divides"),
            den.div_exact(&g).expect("gcd divides"),
        )
    }
}

impl ScalarFraction {
    fn reduce_trivial(n: LaurentPoly, den: LaurentPoly) -> Self {
        if n.is_zero() {
            Self::zero()
        } else {
            Self::normalize(n, den)
        }
    }
}

impl Neg for &ScalarFraction {
    type Output = ScalarFraction;
    fn neg(self) -> ScalarFraction {
        ScalarFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &ScalarFraction {
    type Output = ScalarFraction;
    fn sub(self, rhs: &ScalarFraction) -> ScalarFraction {
        self + &(-rhs)
    }
}

impl Mul for &ScalarFraction {
    type Output = ScalarFraction;
    fn mul(self, rhs: &ScalarFraction) -> ScalarFraction {
        if self.is_zero() || rhs.is_zero() {
            return ScalarFraction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarFraction::normalize(&self.num * &rhs.num, LaurentPoly::one());
        }
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        ScalarFraction::normalize(&a * &c, &b * &d)
    }
}

/// Removes the gcd of `x` and `y` from both.
fn cancel(x: &LaurentPoly, y: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if y.is_one() {
        return (x.clone(), y.clone());
    }
    if y.is_monomial() || x.is_monomial() {
        let g = x.integer_content().gcd(&y.integer_content());
        if g.is_one() {
            return (x.clone(), y.clone());
        }
        return (x.div_int_exact(&g), y.div_int_exact(&g));
    }
    let g = gcd(x, y);
    if g.is_one() {
        return (x.clone(), y.clone());
    }
    (
        x.div_exact(&g).expect("gcd divides"),
        y.div_exact(&g).expect("gcd divides"),
    )
}

impl Div for &ScalarFraction {
    type Output = ScalarFraction;
    /// Panics on division by zero; use [`ScalarFraction::checked_div`] to
    /// handle that case.
    fn div(self, rhs: &ScalarFraction) -> ScalarFraction {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarFraction {
            type Output = ScalarFraction;
            fn $m(self, rhs: ScalarFraction) -> ScalarFraction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ScalarFraction {
    type Output = ScalarFraction;
    fn neg(self) -> ScalarFraction {
        -&self
    }
}

impl fmt::Display for ScalarFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.is_monomial() {
            // Canonical denominators of one term are positive integers.
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for ScalarFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFraction({self})")
    }
}

impl FromStr for ScalarFraction {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::text::parse(s)
    }
}

impl Default for ScalarFraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ScalarFraction {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<BigInt> for ScalarFraction {
    fn from(v: BigInt) -> Self {
        Self::from_poly(LaurentPoly::constant(v))
    }
}

impl From<&BigRational> for ScalarFraction {
    fn from(v: &BigRational) -> Self {
        Self::reduce(
            LaurentPoly::constant(v.numer().clone()),
            LaurentPoly::constant(v.denom().clone()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarFraction {
        ScalarFraction::q()
    }
    fn nu() -> ScalarFraction {
        ScalarFraction::nu()
    }
    fn qi() -> ScalarFraction {
        q().inverse().unwrap()
    }

    #[test]
    fn additive_inverse() {
        let a = &q() - &qi();
        let b = &qi() - &q();
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn monomial_inverse() {
        assert_eq!(q().inverse().unwrap(), ScalarFraction::monomial(1, -1, 0));
    }

    #[test]
    fn multiplicative_inverse() {
        let q2m1 = &(&q() * &q()) - &ScalarFraction::one();
        let x = q2m1.checked_div(&q()).unwrap();
        let y = q().checked_div(&q2m1).unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(
            ScalarFraction::zero().inverse(),
            Err(ScalarError::DivisionByZero)
        ));
        assert!(matches!(
            ScalarFraction::new(LaurentPoly::one(), &LaurentPoly::q() - &LaurentPoly::q()),
            Err(ScalarError::DivisionByZero)
        ));
    }

    #[test]
    fn clearing_denominators() {
        let q2m1 = &(&q() * &q()) - &ScalarFraction::one();
        let x = q2m1.checked_div(&q()).unwrap();
        let y = &q() - &qi();
        assert!(x.cross_eq(&y));
        assert_eq!(x, y);
        assert!(!q().cross_eq(&nu()));
    }

    #[test]
    fn mu_has_two_forms() {
        let qq = &q() - &qi();
        let nui = nu().inverse().unwrap();
        let a = &ScalarFraction::one() + &(&nui - &nu()).checked_div(&qq).unwrap();
        let b = (&(&qq + &nui) - &nu()).checked_div(&qq).unwrap();
        assert!(a.cross_eq(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn reduced_form_cancels_common_factor() {
        let f = &q() - &nu();
        let g = &q() + &ScalarFraction::from_i64(2);
        let x = (&f * &g).checked_div(&(&f * &nu())).unwrap();
        let y = g.checked_div(&nu()).unwrap();
        assert_eq!(x, y);
        assert!(x.denominator().is_one());
    }

    #[test]
    fn sqrt_of_square_fraction() {
        let a = (&q() - &(&ScalarFraction::from_i64(3) * &nu()))
            .checked_div(&(&(&q() * &q()) + &nu()))
            .unwrap();
        let a2 = &a * &a;
        let r = a2.sqrt().unwrap();
        assert_eq!(&r * &r, a2);
        assert!(r == a || r == -&a);
        assert!(q().sqrt().is_none());
        assert!(ScalarFraction::from_i64(-4).sqrt().is_none());
        let neg_den = ScalarFraction::from_i64(1)
            .checked_div(&(&ScalarFraction::one() - &(&q() * &q())))
            .unwrap();
        let sq = &neg_den * &neg_den;
        assert_eq!(sq.sqrt().map(|r| &r * &r), Some(sq));
    }

    #[test]
    fn specialization_of_q_minus_inverse() {
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        let v = (&q() - &qi()).eval(&two, &three).unwrap();
        assert_eq!(v, BigRational::new(3.into(), 2.into()));
    }
}
