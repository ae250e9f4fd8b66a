//! Central elements after the evaluation map, and intertwiners.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::repbuilder::SeminormalRep;
use crate::scalars::{Field, Parameters, ScalarError, TruncatedSeries};
use crate::spectrum::{token_value, EigenvalueToken};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentralError {
    #[error("non-generic prefix: a series denominator vanishes")]
    NonGenericPrefix,
    #[error("centrality violated: {0} is not a scalar matrix")]
    CentralityViolated(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coefficients `Ẑ_k^(0..=order)` of the generating function
///
/// ```text
/// -nu/(q - q^-1) + 1/(1 - c t^2)
///   + (sum_p mu t^p + nu/(q - q^-1) - 1/(1 - c t^2))
///     * prod_r (1 - y_r t)^2 (q^2 - c t/y_r)(q^-2 - c t/y_r)
///              / ((1 - c t/y_r)^2 (q^2 - y_r t)(q^-2 - y_r t))
/// ```
///
/// with `c = nu^2` and `y_r` the values of the prefix tokens.
pub fn zhat_series<F: Field>(
    prefix: &[EigenvalueToken],
    order: usize,
    params: &Parameters<F>,
) -> Result<Vec<F>, CentralError> {
    let c = params.nu.times(&params.nu);
    let q2 = params.q.times(&params.q);
    let q2i = params.q_inv.times(&params.q_inv);
    let lin = |c0: &F, c1: F| TruncatedSeries::linear(order, c0.clone(), c1);
    let mut prod = TruncatedSeries::constant(order, F::one());
    for &tok in prefix {
        let y = token_value(tok, params);
        let cy = c.divide(&y).map_err(|_| CentralError::NonGenericPrefix)?;
        let one_y = lin(&F::one(), y.negated());
        let num = one_y
            .mul(&one_y)
            .mul(&lin(&q2, cy.negated()))
            .mul(&lin(&q2i, cy.negated()));
        let one_cy = lin(&F::one(), cy.negated());
        let den = one_cy
            .mul(&one_cy)
            .mul(&lin(&q2, y.negated()))
            .mul(&lin(&q2i, y.negated()));
        let den_inv = den.inverse().map_err(|_| CentralError::NonGenericPrefix)?;
        prod = prod.mul(&num).mul(&den_inv);
    }
    let k0 = params.nu.divide(&params.qq)?;
    let geo: Vec<F> = (0..=order)
        .map(|i| {
            if i % 2 == 0 {
                c.powi((i / 2) as i64).expect("nonzero")
            } else {
                F::zero()
            }
        })
        .collect();
    let geo = TruncatedSeries::from_coefficients(order, &geo);
    let mus = TruncatedSeries::from_coefficients(order, &vec![params.mu.clone(); order + 1]);
    let k0s = TruncatedSeries::constant(order, k0);
    let inner = mus.add(&k0s).sub(&geo);
    let total = geo.sub(&k0s).add(&inner.mul(&prod));
    Ok(total.coefficients().to_vec())
}

/// Scalars by which `Ẑ = ỹ_1 ... ỹ_n` and the power sums
/// `Ẑ^(p) = sum_k (ỹ_k^p - nu^(2p) ỹ_k^-p)` act.
#[derive(Clone, Debug)]
pub struct CentralScalars<F: Field> {
    pub z: F,
    /// `(p, Ẑ^(p))` for `p = 1..=max_power`.
    pub power_sums: Vec<(u32, F)>,
}

fn all_equal<F: Field>(v: &[F]) -> Option<F> {
    let first = v.first()?.clone();
    v.iter().all(|x| *x == first).then_some(first)
}

/// Evaluates the central elements on a representation and checks that
/// each acts as a scalar.
pub fn central_scalars<F: Field>(
    rep: &SeminormalRep<F>,
    params: &Parameters<F>,
    max_power: u32,
) -> Result<CentralScalars<F>, CentralError> {
    let d = rep.dim();
    // Ẑ is a product of diagonal matrices, so its entries are per-path
    // products; being a scalar means they all agree.
    let zdiag: Vec<F> = (0..d)
        .map(|p| rep.y.iter().fold(F::one(), |acc, y| acc.times(&y[p])))
        .collect();
    let z = all_equal(&zdiag).ok_or_else(|| CentralError::CentralityViolated("Z".into()))?;
    let nu2 = params.nu.times(&params.nu);
    let mut power_sums = Vec::new();
    for p in 1..=max_power {
        let c = nu2.powi(p as i64)?;
        let diag: Vec<F> = (0..d)
            .map(|path| {
                rep.y.iter().fold(F::zero(), |acc, y| {
                    let yp = y[path].powi(p as i64).expect("nonzero eigenvalue");
                    let ym = y[path].powi(-(p as i64)).expect("nonzero eigenvalue");
                    acc.plus(&yp.minus(&c.times(&ym)))
                })
            })
            .collect();
        let v = all_equal(&diag)
            .ok_or_else(|| CentralError::CentralityViolated(format!("Z^({p})")))?;
        power_sums.push((p, v));
    }
    Ok(CentralScalars { z, power_sums })
}

/// One failed identity of the intertwiner suite.
#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerFailure {
    pub identity: String,
    pub entry: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerReport {
    pub k: usize,
    pub checks: usize,
    pub failures: Vec<IntertwinerFailure>,
}

impl IntertwinerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `U_{k+1} = [σ_k, ỹ_k - nu^2 ỹ_{k+1}^-1]`, for `1 <= k <= n - 1`.
pub fn intertwiner<F: Field>(rep: &SeminormalRep<F>, params: &Parameters<F>, k: usize) -> Matrix<F> {
    let nu2 = params.nu.times(&params.nu);
    let d: Vec<F> = rep.y[k - 1]
        .iter()
        .zip(&rep.y[k])
        .map(|(a, b)| a.minus(&nu2.times(&b.inverse().expect("nonzero eigenvalue"))))
        .collect();
    let s = &rep.sigma[k - 1];
    s.mul_diag(&d).sub(&s.diag_mul(&d))
}

/// Checks the intertwiner identities for `U_{k+1}`.
pub fn intertwiner_checks<F: Field>(
    rep: &SeminormalRep<F>,
    params: &Parameters<F>,
    k: usize,
) -> IntertwinerReport {
    let n = rep.n;
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut check = |name: String, lhs: &Matrix<F>, rhs: &Matrix<F>| {
        checks += 1;
        if let Some(e) = lhs.first_difference(rhs) {
            failures.push(IntertwinerFailure { identity: name, entry: e });
        }
    };
    let u = intertwiner(rep, params, k);
    let yk = &rep.y[k - 1];
    let yk1 = &rep.y[k];
    check(format!("U_{} y_{k} = y_{} U_{}", k + 1, k + 1, k + 1), &u.mul_diag(yk), &u.diag_mul(yk1));
    check(format!("U_{} y_{} = y_{k} U_{}", k + 1, k + 1, k + 1), &u.mul_diag(yk1), &u.diag_mul(yk));
    for i in 1..=n {
        if i != k && i != k + 1 {
            let yi = &rep.y[i - 1];
            check(format!("U_{} y_{i} = y_{i} U_{}", k + 1, k + 1), &u.mul_diag(yi), &u.diag_mul(yi));
        }
    }
    // U [σ_k, ỹ_k] against the diagonal right-hand side.
    let s = &rep.sigma[k - 1];
    let comm = s.mul_diag(yk).sub(&s.diag_mul(yk));
    let nu2 = params.nu.times(&params.nu);
    let rhs: Vec<F> = yk
        .iter()
        .zip(yk1)
        .map(|(a, b)| {
            let f1 = params.q.times(a).minus(&params.q_inv.times(b));
            let f2 = params.q.times(b).minus(&params.q_inv.times(a));
            let f3 = F::one().minus(&nu2.divide(&a.times(b)).expect("nonzero eigenvalues"));
            f1.times(&f2).times(&f3)
        })
        .collect();
    check(format!("U_{} [s_{k}, y_{k}] = product", k + 1), &u.mul(&comm), &Matrix::diagonal(&rhs));
    if k >= 2 {
        let v = intertwiner(rep, params, k - 1);
        check(
            format!("U_{} U_{k} U_{} = U_{k} U_{} U_{k}", k + 1, k + 1, k + 1),
            &u.mul(&v).mul(&u),
            &v.mul(&u).mul(&v),
        );
    }
    let kap = &rep.kappa[k - 1];
    let zero = Matrix::zeros(rep.dim());
    check(format!("k_{k} U_{} = 0", k + 1), &kap.mul(&u), &zero);
    check(format!("U_{} k_{k} = 0", k + 1), &u.mul(kap), &zero);
    IntertwinerReport { k, checks, failures }
}
