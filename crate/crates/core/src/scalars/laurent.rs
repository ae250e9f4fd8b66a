//! Integer Laurent polynomials in `q` and `nu`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd;

/// Exponent pair `(z_q, z_nu)`. Ordered lexicographically, `q` first.
pub type Exponent = (i64, i64);

/// A finite sum `sum c * q^a * nu^b` with integer coefficients.
///
/// Terms are kept sorted by exponent (ascending lex order) with no zero
/// coefficients, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Exponent, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, (0, 0))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn monomial(c: BigInt, e: Exponent) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(BigInt::one(), (1, 0))
    }

    /// The variable `nu`.
    pub fn nu() -> Self {
        Self::monomial(BigInt::one(), (0, 1))
    }

    /// Builds a polynomial from arbitrary terms, merging repeats and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigInt)>>(iter: I) -> Self {
        let mut terms: Vec<(Exponent, BigInt)> = iter.into_iter().collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Self::from_sorted(terms)
    }

    fn from_sorted(terms: Vec<(Exponent, BigInt)>) -> Self {
        let mut out: Vec<(Exponent, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Self { terms: out }
    }

    /// Terms in ascending lex order of exponents.
    pub fn terms(&self) -> &[(Exponent, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coefficient of `q^a nu^b`.
    pub fn coefficient(&self, e: Exponent) -> BigInt {
        match self.terms.binary_search_by(|t| t.0.cmp(&e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Lex-greatest term.
    pub fn leading(&self) -> Option<&(Exponent, BigInt)> {
        self.terms.last()
    }

    /// Lex-least term.
    pub fn trailing(&self) -> Option<&(Exponent, BigInt)> {
        self.terms.first()
    }

    /// Componentwise minimum and maximum exponents.
    pub fn exponent_box(&self) -> Option<(Exponent, Exponent)> {
        let mut it = self.terms.iter();
        let (e0, _) = it.next()?;
        let (mut lo, mut hi) = (*e0, *e0);
        for (e, _) in it {
            lo = (lo.0.min(e.0), lo.1.min(e.1));
            hi = (hi.0.max(e.0), hi.1.max(e.1));
        }
        Some((lo, hi))
    }

    /// Multiplies by `q^a nu^b`.
    pub fn shift(&self, e: Exponent) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| ((f.0 + e.0, f.1 + e.1), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, d)| (*e, d * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_int_exact(&self, c: &BigInt) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, d)| (*e, d / c)).collect(),
        }
    }

    /// Gcd of all coefficients (non-negative).
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at rational `q`, `nu`. Returns `None` when a negative power
    /// of a zero value is required.
    pub fn eval(&self, q: &BigRational, nu: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let qp = rational_pow(q, e.0)?;
            let np = rational_pow(nu, e.1)?;
            acc += BigRational::from_integer(c.clone()) * qp * np;
        }
        Some(acc)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if d.is_monomial() {
            let (e, c) = &d.terms[0];
            if self.terms.iter().any(|(_, a)| !a.is_multiple_of(c)) {
                return None;
            }
            return Some(Self {
                terms: self
                    .terms
                    .iter()
                    .map(|(f, a)| ((f.0 - e.0, f.1 - e.1), a / c))
                    .collect(),
            });
        }
        gcd::div_exact(self, d)
    }

    /// Exact square root with positive leading coefficient, if one exists.
    pub fn sqrt(&self) -> Option<LaurentPoly> {
        let Some((lead_e, lead_c)) = self.leading().cloned() else {
            return Some(Self::zero());
        };
        if lead_e.0 % 2 != 0 || lead_e.1 % 2 != 0 || lead_c.is_negative() {
            return None;
        }
        let rc = lead_c.sqrt();
        if &rc * &rc != lead_c {
            return None;
        }
        let (lo, hi) = self.exponent_box()?;
        let root_lead = (lead_e.0 / 2, lead_e.1 / 2);
        let two_rc = &rc * 2;
        let mut root = Self::monomial(rc, root_lead);
        loop {
            let rem = self - &(&root * &root);
            let Some((re, rcoef)) = rem.leading() else {
                return Some(root);
            };
            let te = (re.0 - root_lead.0, re.1 - root_lead.1);
            let inside = 2 * te.0 >= lo.0 && 2 * te.0 <= hi.0 && 2 * te.1 >= lo.1 && 2 * te.1 <= hi.1;
            if !inside || !rcoef.is_multiple_of(&two_rc) {
                return None;
            }
            let tc = rcoef / &two_rc;
            root = &root + &Self::monomial(tc, te);
        }
    }
}

fn rational_pow(x: &BigRational, e: i64) -> Option<BigRational> {
    match e.cmp(&0) {
        Ordering::Equal => Some(BigRational::one()),
        Ordering::Greater => Some(num_traits::pow(x.clone(), e as usize)),
        Ordering::Less => {
            if x.is_zero() {
                None
            } else {
                Some(num_traits::pow(x.recip(), (-e) as usize))
            }
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
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

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.is_monomial() {
            let (e, c) = &rhs.terms[0];
            return self.shift(*e).scale(c);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return rhs.shift(*e).scale(c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                prods.push(((ea.0 + eb.0, ea.1 + eb.1), ca * cb));
            }
        }
        LaurentPoly::from_terms(prods)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            for (name, z) in [("q", e.0), ("nu", e.1)] {
                match z {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{z}")),
                }
            }
            if parts.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{mag}*{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((i64, i64), i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|(e, c)| (*e, BigInt::from(*c))))
    }

    #[test]
    fn zero_terms_are_dropped() {
        let a = p(&[((1, 0), 2), ((1, 0), -2), ((0, 0), 1)]);
        assert_eq!(a, LaurentPoly::one());
        assert!((&LaurentPoly::q() - &LaurentPoly::q()).is_zero());
    }

    #[test]
    fn product_of_binomials() {
        let a = p(&[((1, 0), 1), ((0, 0), -1)]);
        let b = p(&[((1, 0), 1), ((0, 0), 1)]);
        assert_eq!(&a * &b, p(&[((2, 0), 1), ((0, 0), -1)]));
    }

    #[test]
    fn display_orders_by_descending_exponent() {
        let a = p(&[((2, 0), 1), ((0, 0), -1)]);
        assert_eq!(a.to_string(), "q^2 - 1");
        let b = p(&[((1, 0), 1), ((-1, 0), -1), ((0, -1), 3)]);
        assert_eq!(b.to_string(), "q + 3*nu^-1 - q^-1");
    }

    #[test]
    fn sqrt_of_square() {
        let a = p(&[((1, 0), 2), ((0, 1), -3), ((-1, 2), 1)]);
        let sq = &a * &a;
        let r = sq.sqrt().expect("square");
        assert!(r == a || r == -&a);
        assert!(p(&[((1, 0), 1)]).sqrt().is_none());
        assert!(p(&[((2, 0), 1), ((0, 0), 1)]).sqrt().is_none());
        assert!(p(&[((0, 0), -4)]).sqrt().is_none());
    }

    #[test]
    fn exact_division() {
        let a = p(&[((1, 0), 1), ((0, 1), -1)]);
        let b = p(&[((3, 0), 2), ((0, 2), 5), ((-1, 1), 1)]);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn evaluation() {
        let a = p(&[((1, 0), 1), ((-1, 0), -1)]);
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        assert_eq!(a.eval(&two, &three), Some(BigRational::new(3.into(), 2.into())));
    }
}
