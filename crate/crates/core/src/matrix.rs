//! Dense square matrices over an exact field.
//!
//! Seminormal matrices are block sparse, so products skip zero entries.

use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    n: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![F::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// `Some(c)` if the matrix is `c` times the identity.
    pub fn as_scalar(&self) -> Option<F> {
        if self.n == 0 || !self.is_diagonal() {
            return None;
        }
        let c = self.get(0, 0).clone();
        (1..self.n).all(|i| *self.get(i, i) == c).then_some(c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// `self * diag(d)`.
    pub fn mul_diag(&self, d: &[F]) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if !out.get(i, j).is_zero() {
                    let v = out.get(i, j).times(&d[j]);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `diag(d) * self`.
    pub fn diag_mul(&self, d: &[F]) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if !out.get(i, j).is_zero() {
                    let v = d[i].times(out.get(i, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.plus(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.minus(b))
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!(self.n, o.n);
        Self {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|a| if a.is_zero() { F::zero() } else { a.times(c) })
                .collect(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// First entry where the matrices differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) != o.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Inverse by Gauss-Jordan elimination, or `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                a.swap_rows(p, c);
                inv.swap_rows(p, c);
            }
            let pivot_inv = a.get(c, c).inverse().ok()?;
            a.scale_row(c, &pivot_inv);
            inv.scale_row(c, &pivot_inv);
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                a.axpy_row(r, c, &f);
                inv.axpy_row(r, c, &f);
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &F) {
        for j in 0..self.n {
            if !self.get(r, j).is_zero() {
                let v = self.get(r, j).times(c);
                self.set(r, j, v);
            }
        }
    }

    /// `row[r] -= f * row[c]`.
    fn axpy_row(&mut self, r: usize, c: usize, f: &F) {
        for j in 0..self.n {
            let b = self.get(c, j);
            if !b.is_zero() {
                let v = self.get(r, j).minus(&f.times(b));
                self.set(r, j, v);
            }
        }
    }
}
