//! Exact verification of the defining relations on a built representation.

use std::collections::HashMap;

use serde::Serialize;

use super::{decompose_paths, SeminormalRep};
use crate::central::zhat_series;
use crate::matrix::Matrix;
use crate::scalars::{Field, Parameters};
use crate::spectrum::{EigenvalueToken, LocalCase};

/// One identity that failed, with the generator index and first bad entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub position: usize,
    pub entry: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub lambda: String,
    pub n: usize,
    pub checks: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One line naming up to five failures.
    pub fn summary(&self) -> String {
        if self.passed() {
            return format!("{} checks passed", self.checks);
        }
        let shown: Vec<String> = self
            .failures
            .iter()
            .take(5)
            .map(|f| match f.entry {
                Some((a, b)) => format!("{} at i={} entry ({a},{b})", f.relation, f.position),
                None => format!("{} at i={}", f.relation, f.position),
            })
            .collect();
        format!("{} of {} checks failed: {}", self.failures.len(), self.checks, shown.join("; "))
    }
}

struct Checker {
    checks: usize,
    failures: Vec<RelationFailure>,
}

impl Checker {
    fn eq<F: Field>(&mut self, relation: &str, position: usize, lhs: &Matrix<F>, rhs: &Matrix<F>) {
        self.checks += 1;
        if let Some(e) = lhs.first_difference(rhs) {
            self.failures.push(RelationFailure {
                relation: relation.to_string(),
                position,
                entry: Some(e),
            });
        }
    }

    fn fail(&mut self, relation: &str, position: usize) {
        self.failures.push(RelationFailure {
            relation: relation.to_string(),
            position,
            entry: None,
        });
    }
}

/// Checks every defining relation exactly.
pub fn verify_relations<F: Field>(rep: &SeminormalRep<F>, params: &Parameters<F>) -> RelationReport {
    let n = rep.n;
    let d = rep.dim();
    let id = Matrix::<F>::identity(d);
    let zero = Matrix::<F>::zeros(d);
    let mut c = Checker {
        checks: 0,
        failures: Vec::new(),
    };
    let q = &params.q;
    let qi = &params.q_inv;
    let nu = &params.nu;
    let nu2 = nu.times(nu);
    let nu_qq = nu.times(&params.qq);
    let gens = n.saturating_sub(1);
    let sigma_inv: Vec<Matrix<F>> = (0..gens)
        .map(|i| {
            rep.sigma[i]
                .sub(&Matrix::scalar(d, params.qq.clone()))
                .add(&rep.kappa[i].scale(&params.qq))
        })
        .collect();

    for i in 0..gens {
        let pos = i + 1;
        let s = &rep.sigma[i];
        let k = &rep.kappa[i];
        let s_minus_q = s.sub(&Matrix::scalar(d, q.clone()));
        let s_plus_qi = s.add(&Matrix::scalar(d, qi.clone()));
        let s_minus_nu = s.sub(&Matrix::scalar(d, nu.clone()));
        c.eq("cubic", pos, &s_minus_q.mul(&s_plus_qi).mul(&s_minus_nu), &zero);
        let kdef = Matrix::scalar(d, q.clone()).sub(s).mul(&s_plus_qi);
        c.eq("kappa definition", pos, &k.scale(&nu_qq), &kdef);
        c.eq("skein", pos, &s.mul(&sigma_inv[i]), &id);
        c.eq("skein", pos, &sigma_inv[i].mul(s), &id);

        if i + 1 < gens {
            let t = &rep.sigma[i + 1];
            let kt = &rep.kappa[i + 1];
            c.eq("braid", pos, &s.mul(t).mul(s), &t.mul(s).mul(t));
            c.eq("k s k", pos, &k.mul(t).mul(k), &k.scale(&params.nu_inv));
            c.eq("k s^-1 k", pos, &k.mul(&sigma_inv[i + 1]).mul(k), &k.scale(nu));
            c.eq("k s k", pos + 1, &kt.mul(s).mul(kt), &kt.scale(&params.nu_inv));
            c.eq("k s^-1 k", pos + 1, &kt.mul(&sigma_inv[i]).mul(kt), &kt.scale(nu));
        }
        for j in i + 2..gens {
            c.eq("locality", pos, &s.mul(&rep.sigma[j]), &rep.sigma[j].mul(s));
        }
    }

    // Jucys-Murphy elements.
    if n >= 1 {
        c.checks += 1;
        if !rep.y[0].iter().all(|v| *v == F::one()) {
            c.fail("y_1 = 1", 1);
        }
    }
    let ym: Vec<Matrix<F>> = (1..=n).map(|j| rep.y_matrix(j)).collect();
    for i in 0..gens {
        let s = &rep.sigma[i];
        c.eq("y recursion", i + 1, &s.mul(&ym[i]).mul(s), &ym[i + 1]);
    }
    for a in 0..n {
        for b in a + 1..n {
            c.eq("y commute", a + 1, &ym[a].mul(&ym[b]), &ym[b].mul(&ym[a]));
        }
    }
    for i in 0..gens {
        let k = &rep.kappa[i];
        let pair: Vec<F> = rep.y[i].iter().zip(&rep.y[i + 1]).map(|(a, b)| a.times(b)).collect();
        let rhs = k.scale(&nu2);
        c.eq("y y k", i + 1, &k.diag_mul(&pair), &rhs);
        c.eq("k y y", i + 1, &k.mul_diag(&pair), &rhs);
    }

    // κ ỹ^p κ = Ẑ^(p) κ, block by block, with Ẑ from each block's prefix.
    let mut zcache: HashMap<(Vec<EigenvalueToken>, usize), Option<Vec<F>>> = HashMap::new();
    for i in 0..gens {
        let pos = i + 1;
        let blocks = match decompose_paths(&rep.paths, &rep.strings, pos) {
            Ok(b) => b,
            Err(_) => {
                c.fail("block structure", pos);
                continue;
            }
        };
        let k = &rep.kappa[i];
        let mut ypow: Vec<F> = vec![F::one(); d];
        let max_size = blocks.iter().map(|b| b.size()).max().unwrap_or(0);
        for p in 0..max_size {
            let m = k.mul_diag(&ypow).mul(k);
            for b in blocks.iter().filter(|b| b.size() > p) {
                c.checks += 1;
                let z = if b.case == LocalCase::Case4 {
                    let prefix = rep.strings[b.members[0]].0[..pos - 1].to_vec();
                    let entry = zcache
                        .entry((prefix.clone(), b.size() - 1))
                        .or_insert_with(|| zhat_series(&prefix, b.size() - 1, params).ok());
                    match entry {
                        Some(z) => z[p].clone(),
                        None => {
                            c.fail("k y^p k", pos);
                            continue;
                        }
                    }
                } else {
                    F::zero()
                };
                let bad = b.members.iter().find_map(|&r| {
                    (0..d).find(|&col| *m.get(r, col) != k.get(r, col).times(&z)).map(|col| (r, col))
                });
                if let Some(e) = bad {
                    c.failures.push(RelationFailure {
                        relation: format!("k y^{p} k"),
                        position: pos,
                        entry: Some(e),
                    });
                }
            }
            ypow = ypow.iter().zip(&rep.y[i]).map(|(a, b)| a.times(b)).collect();
        }
    }

    RelationReport {
        lambda: rep.lambda.to_string(),
        n,
        checks: c.checks,
        failures: c.failures,
    }
}

/// The representation in the basis rescaled by `diag(d)`: every `σ_i`
/// and `κ_i` becomes `diag(d)^-1 M diag(d)`, and the weights follow.
pub fn conjugate_by_diagonal<F: Field>(rep: &SeminormalRep<F>, d: &[F]) -> Option<SeminormalRep<F>> {
    let inv: Vec<F> = d.iter().map(|x| x.inverse().ok()).collect::<Option<_>>()?;
    let conj = |m: &Matrix<F>| m.diag_mul(&inv).mul_diag(d);
    let mut out = rep.clone();
    out.sigma = rep.sigma.iter().map(conj).collect();
    out.kappa = rep.kappa.iter().map(conj).collect();
    out.weights = rep
        .weights
        .iter()
        .zip(d)
        .map(|(h, x)| h.times(x).times(x))
        .collect();
    Some(out)
}

/// Whether `σ_i[a][b] H[a] = σ_i[b][a] H[b]` for every generator.
pub fn form_is_symmetric<F: Field>(rep: &SeminormalRep<F>) -> bool {
    let h = &rep.weights;
    rep.sigma.iter().all(|s| {
        (0..s.dim()).all(|a| (a + 1..s.dim()).all(|b| s.get(a, b).times(&h[a]) == s.get(b, a).times(&h[b])))
    })
}
