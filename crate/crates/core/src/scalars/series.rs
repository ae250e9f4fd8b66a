//! Power series in a formal variable `t`, truncated at a fixed order.

use super::field::Field;
use super::ScalarError;

/// `sum_{i <= order} c_i t^i`; every operation drops terms above `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<F: Field> {
    order: usize,
    coefficients: Vec<F>,
}

impl<F: Field> TruncatedSeries<F> {
    /// Series from the leading coefficients of a polynomial, padded with
    /// zeros or truncated to `order`.
    pub fn from_coefficients(order: usize, coeffs: &[F]) -> Self {
        let mut c: Vec<F> = coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, F::zero());
        Self {
            order,
            coefficients: c,
        }
    }

    pub fn constant(order: usize, c: F) -> Self {
        Self::from_coefficients(order, &[c])
    }

    /// `c0 + c1 t`.
    pub fn linear(order: usize, c0: F, c1: F) -> Self {
        Self::from_coefficients(order, &[c0, c1])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[F] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> F {
        self.coefficients.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.plus(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.minus(b))
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!(self.order, o.order, "series orders differ");
        Self {
            order: self.order,
            coefficients: self
                .coefficients
                .iter()
                .zip(&o.coefficients)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            order: self.order,
            coefficients: self.coefficients.iter().map(|a| a.times(c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order, "series orders differ");
        let n = self.order + 1;
        let mut out = vec![F::zero(); n];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coefficients.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self {
            order: self.order,
            coefficients: out,
        }
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        let c0 = self.coefficients[0].inverse()?;
        let n = self.order + 1;
        let mut out = vec![F::zero(); n];
        out[0] = c0.clone();
        for i in 1..n {
            let mut s = F::zero();
            for j in 1..=i {
                let a = &self.coefficients[j];
                if !a.is_zero() {
                    s = s.plus(&a.times(&out[i - j]));
                }
            }
            out[i] = s.times(&c0).negated();
        }
        Ok(Self {
            order: self.order,
            coefficients: out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ScalarFraction;

    #[test]
    fn geometric_inverse() {
        let one_minus_t = TruncatedSeries::linear(4, ScalarFraction::one(), ScalarFraction::from_i64(-1));
        let inv = one_minus_t.inverse().unwrap();
        for i in 0..=4 {
            assert_eq!(inv.coefficient(i), ScalarFraction::one());
        }
        let prod = inv.mul(&one_minus_t);
        assert_eq!(prod, TruncatedSeries::constant(4, ScalarFraction::one()));
    }

    #[test]
    fn zero_constant_term_is_not_invertible() {
        let t = TruncatedSeries::linear(2, ScalarFraction::zero(), ScalarFraction::one());
        assert!(t.inverse().is_err());
    }
}
