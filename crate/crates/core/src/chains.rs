//! Integrable open-chain Hamiltonians in a seminormal representation.
//!
//! ```text
//! H = sum_{m=1}^{n-1} (σ_m + (q - q^-1) nu / (nu + a) κ_m)
//!     + (q - q^-1) ξ / (1 - ξ)
//! ```
//!
//! with `y_1` evaluated to 1, so the boundary term is a scalar. The bulk is
//! kept exact; `ξ` is usually outside the scalar field and enters as a
//! complex number.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::repbuilder::SeminormalRep;
use crate::scalars::{ratio_to_f64, Field, GenericSpecialization, Parameters, ScalarError};

/// Relative tolerance for the numeric check of `ξ² = -a nu`.
pub const XI_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error("singular parameter: {0}")]
    SingularParameter(&'static str),
    #[error("xi^2 = {xi_sq} but -a*nu = {target}; pass the waiver to build anyway")]
    ConstraintViolated { xi_sq: String, target: String },
    #[error("diagonalization failed")]
    DiagonalizationFailed,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The four admissible values of `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChainA {
    Q,
    MinusQ,
    QInv,
    MinusQInv,
}

impl ChainA {
    pub const ALL: [ChainA; 4] = [ChainA::Q, ChainA::MinusQ, ChainA::QInv, ChainA::MinusQInv];

    pub fn value<F: Field>(self, params: &Parameters<F>) -> F {
        match self {
            ChainA::Q => params.q.clone(),
            ChainA::MinusQ => params.q.negated(),
            ChainA::QInv => params.q_inv.clone(),
            ChainA::MinusQInv => params.q_inv.negated(),
        }
    }
}

impl fmt::Display for ChainA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainA::Q => "q",
            ChainA::MinusQ => "-q",
            ChainA::QInv => "q^-1",
            ChainA::MinusQInv => "-q^-1",
        })
    }
}

impl FromStr for ChainA {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace(' ', "").as_str() {
            "q" => Ok(ChainA::Q),
            "-q" => Ok(ChainA::MinusQ),
            "q^-1" | "1/q" => Ok(ChainA::QInv),
            "-q^-1" | "-1/q" => Ok(ChainA::MinusQInv),
            other => Err(format!("a must be one of q, -q, q^-1, -q^-1 (got {other:?})")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainParams {
    pub a: ChainA,
    pub xi: Complex64,
    /// Skip the `ξ² = -a nu` check.
    pub waive_constraint: bool,
}

impl ChainParams {
    /// The root of `ξ² = -a nu` with nonnegative imaginary part (and
    /// nonnegative real part when `-a nu > 0`).
    pub fn principal(a: ChainA, s: &GenericSpecialization) -> Self {
        let a_val = a_numeric(a, s.q_f64());
        let xi = Complex64::new(-a_val * s.nu_f64(), 0.0).sqrt();
        Self {
            a,
            xi,
            waive_constraint: false,
        }
    }
}

fn a_numeric(a: ChainA, q: f64) -> f64 {
    match a {
        ChainA::Q => q,
        ChainA::MinusQ => -q,
        ChainA::QInv => 1.0 / q,
        ChainA::MinusQInv => -1.0 / q,
    }
}

/// `H` with an exact bulk and a numeric scalar boundary term.
#[derive(Clone, Debug)]
pub struct ChainHamiltonian<F: Field> {
    pub lambda: String,
    pub n: usize,
    pub chain: ChainParams,
    /// `sum_m (σ_m + (q - q^-1) nu / (nu + a) κ_m)`.
    pub bulk: Matrix<F>,
    /// `(q - q^-1) ξ / (1 - ξ)` at the working point.
    pub boundary: Complex64,
    pub point: GenericSpecialization,
}

impl<F: Field> ChainHamiltonian<F> {
    pub fn dim(&self) -> usize {
        self.bulk.dim()
    }
}

/// `(q - q^-1) nu / (nu + a)`.
pub fn kappa_coefficient<F: Field>(params: &Parameters<F>, a: ChainA) -> Result<F, ChainError> {
    let den = params.nu.plus(&a.value(params));
    if den.is_zero() {
        return Err(ChainError::SingularParameter("nu + a = 0"));
    }
    Ok(params.qq.times(&params.nu).divide(&den)?)
}

/// The bulk sum `sum_m (σ_m + c κ_m)` with `c` from [`kappa_coefficient`].
pub fn bulk_hamiltonian<F: Field>(
    rep: &SeminormalRep<F>,
    params: &Parameters<F>,
    a: ChainA,
) -> Result<Matrix<F>, ChainError> {
    let c = kappa_coefficient(params, a)?;
    let mut h = Matrix::zeros(rep.dim());
    for (s, k) in rep.sigma.iter().zip(&rep.kappa) {
        h = h.add(s).add(&k.scale(&c));
    }
    Ok(h)
}

/// `(q - q^-1) ξ / (1 - ξ)` for `ξ` in the scalar field.
pub fn boundary_coefficient<F: Field>(params: &Parameters<F>, xi: &F) -> Result<F, ChainError> {
    let den = F::one().minus(xi);
    if den.is_zero() {
        return Err(ChainError::SingularParameter("xi = 1"));
    }
    Ok(params.qq.times(xi).divide(&den)?)
}

/// Exact `H` when `ξ` lies in the scalar field.
pub fn hamiltonian_exact<F: Field>(
    rep: &SeminormalRep<F>,
    params: &Parameters<F>,
    a: ChainA,
    xi: &F,
    waive_constraint: bool,
) -> Result<Matrix<F>, ChainError> {
    let bulk = bulk_hamiltonian(rep, params, a)?;
    let b = boundary_coefficient(params, xi)?;
    if !waive_constraint {
        let target = a.value(params).times(&params.nu).negated();
        let sq = xi.times(xi);
        if sq != target {
            return Err(ChainError::ConstraintViolated {
                xi_sq: sq.to_string(),
                target: target.to_string(),
            });
        }
    }
    Ok(bulk.add(&Matrix::scalar(rep.dim(), b)))
}

/// `H` with a complex `ξ`, evaluated at `point`.
pub fn hamiltonian<F: Field>(
    rep: &SeminormalRep<F>,
    params: &Parameters<F>,
    chain: &ChainParams,
    point: &GenericSpecialization,
) -> Result<ChainHamiltonian<F>, ChainError> {
    let bulk = bulk_hamiltonian(rep, params, chain.a)?;
    let xi = chain.xi;
    let one_minus = Complex64::new(1.0, 0.0) - xi;
    if one_minus.norm() == 0.0 {
        return Err(ChainError::SingularParameter("xi = 1"));
    }
    let (q, nu) = (point.q_f64(), point.nu_f64());
    if !chain.waive_constraint {
        let target = Complex64::new(-a_numeric(chain.a, q) * nu, 0.0);
        let sq = xi * xi;
        if (sq - target).norm() > XI_TOLERANCE * target.norm().max(1.0) {
            return Err(ChainError::ConstraintViolated {
                xi_sq: format!("{sq}"),
                target: format!("{target}"),
            });
        }
    }
    let boundary = xi * (q - 1.0 / q) / one_minus;
    Ok(ChainHamiltonian {
        lambda: rep.lambda.to_string(),
        n: rep.n,
        chain: chain.clone(),
        bulk,
        boundary,
        point: point.clone(),
    })
}

/// The specialized complex matrix of `H`.
pub fn numeric_matrix<F: Field>(h: &ChainHamiltonian<F>) -> Result<DMatrix<Complex64>, ChainError> {
    let d = h.dim();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let v = h.bulk.get(i, j);
            if !v.is_zero() {
                m[(i, j)] = Complex64::new(ratio_to_f64(&v.specialize(&h.point)?), 0.0);
            }
        }
        m[(i, i)] += h.boundary;
    }
    Ok(m)
}

/// Eigenvalues with multiplicity, sorted by real then imaginary part.
pub fn eigenvalues_numeric<F: Field>(h: &ChainHamiltonian<F>) -> Result<Vec<Complex64>, ChainError> {
    let m = numeric_matrix(h)?;
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(ChainError::DiagonalizationFailed);
    }
    let d = m.nrows();
    if d == 0 {
        return Ok(vec![]);
    }
    let schur = nalgebra::Schur::try_new(m, 1e-14, 10_000).ok_or(ChainError::DiagonalizationFailed)?;
    let (_, t) = schur.unpack();
    let mut ev: Vec<Complex64> = (0..d).map(|i| t[(i, i)]).collect();
    sort_spectrum(&mut ev);
    Ok(ev)
}

/// Real parts closer than this (relative to the spectral radius) count as
/// equal when sorting, so conjugate pairs keep a stable order.
pub const SORT_RESOLUTION: f64 = 1e-9;

/// Sorts by real part, then imaginary part, with real parts compared at
/// [`SORT_RESOLUTION`].
pub fn sort_spectrum(ev: &mut [Complex64]) {
    let scale = ev.iter().map(|z| z.norm()).fold(1.0, f64::max) * SORT_RESOLUTION;
    ev.sort_by(|a, b| {
        let (ra, rb) = ((a.re / scale).round(), (b.re / scale).round());
        ra.total_cmp(&rb).then(a.im.total_cmp(&b.im))
    });
}

/// One CSV row per eigenvalue.
#[derive(Clone, Debug, Serialize)]
pub struct EigenRow {
    pub lambda: String,
    pub n: usize,
    pub a: String,
    pub xi_re: f64,
    pub xi_im: f64,
    pub re: f64,
    pub im: f64,
}

pub fn eigen_rows<F: Field>(h: &ChainHamiltonian<F>, values: &[Complex64]) -> Vec<EigenRow> {
    values
        .iter()
        .map(|v| EigenRow {
            lambda: h.lambda.clone(),
            n: h.n,
            a: h.chain.a.to_string(),
            xi_re: h.chain.xi.re,
            xi_im: h.chain.xi.im,
            re: v.re,
            im: v.im,
        })
        .collect()
}

/// CSV with header `lambda,n,a,xi_re,xi_im,re,im`.
pub fn eigen_csv(rows: &[EigenRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["lambda", "n", "a", "xi_re", "xi_im", "re", "im"])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{ContentConvention, Partition};
    use crate::repbuilder::build_rep;
    use crate::scalars::{BigRational, ScalarFraction};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn row_at_two_is_scalar() {
        let p = Parameters::<ScalarFraction>::symbolic();
        let r = build_rep(&p, &part("2"), 2, ContentConvention::default()).unwrap();
        let bulk = bulk_hamiltonian(&r, &p, ChainA::Q).unwrap();
        assert_eq!(bulk.as_scalar(), Some(ScalarFraction::q()));
    }

    #[test]
    fn singular_and_constraint_errors() {
        // nu = q makes nu + a vanish for a = -q.
        let s = GenericSpecialization::from_integers(3, 3);
        let p = Parameters::<BigRational>::rational(&s).unwrap();
        let r = build_rep(&p, &part(""), 2, ContentConvention::default()).unwrap();
        assert_eq!(
            kappa_coefficient(&p, ChainA::MinusQ),
            Err(ChainError::SingularParameter("nu + a = 0"))
        );
        let bad = ChainParams {
            a: ChainA::Q,
            xi: Complex64::new(1.0, 0.0),
            waive_constraint: true,
        };
        assert!(matches!(hamiltonian(&r, &p, &bad, &s), Err(ChainError::SingularParameter(_))));
        let off = ChainParams {
            a: ChainA::Q,
            xi: Complex64::new(0.5, 0.0),
            waive_constraint: false,
        };
        assert!(matches!(hamiltonian(&r, &p, &off, &s), Err(ChainError::ConstraintViolated { .. })));
    }

    #[test]
    fn exact_boundary_when_xi_is_rational() {
        // a = -q, q = nu = 3 gives xi^2 = 9, but nu + a = 0; use a = -q^-1,
        // q = 3, nu = 12: xi^2 = 4.
        let s = GenericSpecialization::from_integers(3, 12);
        let p = Parameters::<BigRational>::rational(&s).unwrap();
        let r = build_rep(&p, &part("2"), 2, ContentConvention::default()).unwrap();
        let xi = BigRational::from_integer(2.into());
        let h = hamiltonian_exact(&r, &p, ChainA::MinusQInv, &xi, false).unwrap();
        let expected = p.q.plus(&p.qq.times(&xi).divide(&BigRational::from_integer((-1).into())).unwrap());
        assert_eq!(h.as_scalar(), Some(expected));
    }

    #[test]
    fn csv_header_and_rows() {
        let rows = vec![EigenRow {
            lambda: "2,1".into(),
            n: 3,
            a: "q".into(),
            xi_re: 0.0,
            xi_im: 1.5,
            re: 2.0,
            im: 0.0,
        }];
        let out = eigen_csv(&rows).unwrap();
        assert_eq!(out, "lambda,n,a,xi_re,xi_im,re,im\n\"2,1\",3,q,0.0,1.5,2.0,0.0\n");
    }
}
