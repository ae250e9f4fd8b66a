//! Seminormal matrices for `σ_i`, `κ_i` and `ỹ_j` on each irreducible
//! module `W_{λ;n}`, and the relation verifier.
//!
//! The basis is the canonical path list. A block at position `i` is a set
//! of paths that agree everywhere except at `λ_i`; `σ_i` and `κ_i` are
//! block diagonal. Block normal forms come from the local spectral data.
//! Gluing the blocks of consecutive positions needs a diagonal rescaling
//! that is found level by level, see [`Tower`].

mod export;
mod tower;
mod verify;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::central::{zhat_series, CentralError};
use crate::combinatorics::{enumerate_paths, CombinatoricsError, ContentConvention, OscillatingPath, Partition};
use crate::matrix::Matrix;
use crate::scalars::{Field, Parameters, ScalarError};
use crate::spectrum::{classify_local, content_string, token_value, EigenvalueToken, LocalCase, SpectrumError, SpectrumString};

pub use export::RepJson;
pub use tower::{build_rep, GaugeRepair, Tower};
pub use verify::{conjugate_by_diagonal, form_is_symmetric, verify_relations, RelationFailure, RelationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Central(#[from] CentralError),
    #[error("degenerate block at position {position}: repeated eigenvalue in the Vandermonde system")]
    DegenerateBlock { position: usize },
    #[error("non-generic block at position {position}: a denominator vanishes")]
    NonGenericBlock { position: usize },
    #[error("block at position {position} is {found}, expected {expected}")]
    WrongCase { position: usize, found: &'static str, expected: &'static str },
    #[error("block data at level {level} depends on the prefix, not only on the middle diagram ({rho})")]
    PrefixDependence { level: usize, rho: String },
    #[error("gauge repair failed at level {level}: {reason}")]
    GaugeRepairFailed { level: usize, reason: String },
    #[error("verification failed after gauge repair for ({lambda}, {n}): {summary}")]
    VerificationFailed { lambda: String, n: usize, summary: String },
}

/// A maximal set of paths coupled by `σ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// The generator index `i`, `1 <= i <= n - 1`.
    pub position: usize,
    /// Indices into the canonical path list, ascending.
    pub members: Vec<usize>,
    pub case: LocalCase,
    /// `(a, b) = (ỹ_i, ỹ_{i+1})` per member.
    pub pairs: Vec<(EigenvalueToken, EigenvalueToken)>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Groups the paths by everything except the diagram at index `i`.
pub fn decompose_paths(
    paths: &[OscillatingPath],
    strings: &[SpectrumString],
    i: usize,
) -> Result<Vec<Block>, RepError> {
    let mut groups: BTreeMap<Vec<&Partition>, Vec<usize>> = BTreeMap::new();
    for (idx, p) in paths.iter().enumerate() {
        let key: Vec<&Partition> = p
            .diagrams()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, d)| d)
            .collect();
        groups.entry(key).or_default().push(idx);
    }
    let mut blocks = Vec::with_capacity(groups.len());
    for members in groups.into_values() {
        let pairs: Vec<_> = members
            .iter()
            .map(|&m| (strings[m].0[i - 1], strings[m].0[i]))
            .collect();
        let case = classify_local(pairs[0].0, pairs[0].1)?;
        let d = paths[members[0]].diagrams();
        let expected_case4 = d[i - 1] == d[i + 1];
        if expected_case4 != (case == LocalCase::Case4) {
            return Err(RepError::WrongCase {
                position: i,
                found: case.tag(),
                expected: if expected_case4 { "4" } else { "3a/3b" },
            });
        }
        blocks.push(Block {
            position: i,
            members,
            case,
            pairs,
        });
    }
    blocks.sort_by_key(|b| b.members[0]);
    Ok(blocks)
}

/// Blocks of position `i` on `W_{λ;n}`.
pub fn block_decompose(
    lambda: &Partition,
    n: usize,
    i: usize,
    conv: ContentConvention,
) -> Result<Vec<Block>, RepError> {
    let paths = enumerate_paths(lambda, n, conv)?;
    let strings: Vec<SpectrumString> = paths.iter().map(|p| content_string(p, conv)).collect();
    decompose_paths(&paths, &strings, i)
}

/// `κ_i` on a Case 4 block: the rank-one matrix `γ δ` with `δ` all ones and
/// `γ` solving `sum_k γ_k a_k^p = Ẑ^(p)` for `p = 0..=2m`, where the `Ẑ`
/// come from the prefix `a_1 .. a_{i-1}`.
pub fn kappa_block<F: Field>(
    params: &Parameters<F>,
    block: &Block,
    prefix: &[EigenvalueToken],
) -> Result<Matrix<F>, RepError> {
    if block.case != LocalCase::Case4 {
        return Err(RepError::WrongCase {
            position: block.position,
            found: block.case.tag(),
            expected: "4",
        });
    }
    let s = block.size();
    let a: Vec<F> = block.pairs.iter().map(|p| token_value(p.0, params)).collect();
    let z = zhat_series(prefix, s - 1, params)?;
    let gamma = solve_vandermonde(&a, &z).ok_or(RepError::DegenerateBlock { position: block.position })?;
    let mut k = Matrix::zeros(s);
    for (r, g) in gamma.iter().enumerate() {
        for c in 0..s {
            k.set(r, c, g.clone());
        }
    }
    Ok(k)
}

/// Solves `sum_k x_k a_k^p = z_p` by Lagrange interpolation.
fn solve_vandermonde<F: Field>(a: &[F], z: &[F]) -> Option<Vec<F>> {
    let s = a.len();
    let mut out = Vec::with_capacity(s);
    for k in 0..s {
        // Coefficients of prod_{j != k} (x - a_j), low degree first.
        let mut poly = vec![F::one()];
        let mut denom = F::one();
        for (j, aj) in a.iter().enumerate() {
            if j == k {
                continue;
            }
            let mut next = vec![F::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] = next[d + 1].plus(c);
                next[d] = next[d].minus(&c.times(aj));
            }
            poly = next;
            denom = denom.times(&a[k].minus(aj));
        }
        let inv = denom.inverse().ok()?;
        let g = poly
            .iter()
            .zip(z)
            .fold(F::zero(), |acc, (c, zp)| acc.plus(&c.times(zp)));
        out.push(g.times(&inv));
    }
    Some(out)
}

/// `σ_i` on a block in the per-block gauge. `kappa` is required for Case 4
/// blocks and ignored otherwise.
pub fn sigma_block<F: Field>(
    params: &Parameters<F>,
    block: &Block,
    kappa: Option<&Matrix<F>>,
) -> Result<Matrix<F>, RepError> {
    let pos = block.position;
    let val = |t: EigenvalueToken| token_value(t, params);
    let non_generic = || RepError::NonGenericBlock { position: pos };
    match block.case {
        LocalCase::Case3a { sign, power } => {
            let v = match (sign, power) {
                (1, 1) => params.q.clone(),
                _ => params.q_inv.negated(),
            };
            Ok(Matrix::scalar(1, v))
        }
        LocalCase::Case3b => {
            let (a, b) = (val(block.pairs[0].0), val(block.pairs[0].1));
            let amb = a.minus(&b);
            let s11 = params.qq.times(&b).divide(&b.minus(&a)).map_err(|_| non_generic())?;
            let s22 = params.qq.times(&a).divide(&amb).map_err(|_| non_generic())?;
            let amb2 = amb.times(&amb);
            let s21 = amb2
                .minus(&params.qq.times(&params.qq).times(&a).times(&b))
                .divide(&amb2)
                .map_err(|_| non_generic())?;
            Ok(Matrix::from_rows(vec![vec![s11, F::one()], vec![s21, s22]]))
        }
        LocalCase::Case4 => {
            let kappa = kappa.ok_or(RepError::WrongCase {
                position: pos,
                found: "4",
                expected: "a block with κ supplied",
            })?;
            let s = block.size();
            let a: Vec<F> = block.pairs.iter().map(|p| val(p.0)).collect();
            let b: Vec<F> = block.pairs.iter().map(|p| val(p.1)).collect();
            let mut m = Matrix::zeros(s);
            for k in 0..s {
                for l in 0..s {
                    let delta = if k == l { F::one() } else { F::zero() };
                    let num = params.qq.times(&kappa.get(k, l).minus(&delta)).times(&b[l]);
                    let v = num.divide(&a[k].minus(&b[l])).map_err(|_| non_generic())?;
                    m.set(k, l, v);
                }
            }
            Ok(m)
        }
    }
}

/// Matrices of `σ_i`, `κ_i` and diagonal `ỹ_j` on `W_{λ;n}`.
#[derive(Clone, Debug)]
pub struct SeminormalRep<F: Field> {
    pub lambda: Partition,
    pub n: usize,
    pub conv: ContentConvention,
    pub paths: Vec<OscillatingPath>,
    pub strings: Vec<SpectrumString>,
    /// `sigma[i - 1]` is `σ_i`.
    pub sigma: Vec<Matrix<F>>,
    /// `kappa[i - 1]` is `κ_i`.
    pub kappa: Vec<Matrix<F>>,
    /// `y[j - 1][P]` is the eigenvalue of `ỹ_j` on path `P`.
    pub y: Vec<Vec<F>>,
    /// Diagonal weights `H` with `σ_i[a][b] H[a] = σ_i[b][a] H[b]`.
    pub weights: Vec<F>,
    /// Diagonal rescalings applied while gluing blocks.
    pub repairs: Vec<GaugeRepair>,
}

impl<F: Field> SeminormalRep<F> {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn y_matrix(&self, j: usize) -> Matrix<F> {
        Matrix::diagonal(&self.y[j - 1])
    }

    /// Whether every `κ_i` vanishes (the Hecke quotient).
    pub fn kappa_free(&self) -> bool {
        self.kappa.iter().all(|k| k.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ScalarFraction;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn t(nu: u8, z: i64) -> EigenvalueToken {
        EigenvalueToken::new(nu, z)
    }

    const STD: ContentConvention = ContentConvention::ColMinusRow;

    #[test]
    fn blocks_of_one_at_three() {
        let bs = block_decompose(&part("1"), 3, 2, STD).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!(b.case, LocalCase::Case4);
        assert_eq!(b.size(), 3);
        let mut pairs = b.pairs.clone();
        pairs.sort();
        let mut expected = vec![(t(1, 0), t(0, 0)), (t(0, 1), t(1, -1)), (t(0, -1), t(1, 1))];
        expected.sort();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn blocks_of_two_one_and_three() {
        let bs = block_decompose(&part("2,1"), 3, 2, STD).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].case, LocalCase::Case3b);
        assert_eq!(bs[0].size(), 2);
        let bs = block_decompose(&part("3"), 3, 2, STD).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].case, LocalCase::Case3a { sign: 1, power: 1 });
    }

    #[test]
    fn size_one_case4_block() {
        let p = Parameters::symbolic();
        let b = &block_decompose(&part(""), 2, 1, STD).unwrap()[0];
        let k = kappa_block(&p, b, &[]).unwrap();
        assert_eq!(*k.get(0, 0), p.mu);
        let s = sigma_block(&p, b, Some(&k)).unwrap();
        assert_eq!(*s.get(0, 0), ScalarFraction::nu());
    }

    #[test]
    fn size_three_block_trace() {
        let p = Parameters::symbolic();
        let b = &block_decompose(&part("1"), 3, 2, STD).unwrap()[0];
        let k = kappa_block(&p, b, &[EigenvalueToken::ONE]).unwrap();
        let sum = (0..3).fold(ScalarFraction::zero(), |acc, r| &acc + k.get(r, 0));
        assert_eq!(sum, p.mu);
        assert_eq!(k.mul(&k), k.scale(&p.mu));
    }

    #[test]
    fn repeated_eigenvalues_are_degenerate() {
        let p = Parameters::symbolic();
        let b = Block {
            position: 2,
            members: vec![0, 1, 2],
            case: LocalCase::Case4,
            pairs: vec![(t(0, 1), t(1, -1)), (t(0, 1), t(1, -1)), (t(1, 0), t(0, 0))],
        };
        assert!(matches!(
            kappa_block(&p, &b, &[EigenvalueToken::ONE]),
            Err(RepError::DegenerateBlock { position: 2 })
        ));
    }

    #[test]
    fn case3a_and_case3b_blocks() {
        let p = Parameters::symbolic();
        let b = Block {
            position: 1,
            members: vec![0],
            case: LocalCase::Case3a { sign: 1, power: 1 },
            pairs: vec![(t(0, 0), t(0, 1))],
        };
        assert_eq!(*sigma_block(&p, &b, None).unwrap().get(0, 0), ScalarFraction::q());
        let b = Block {
            position: 2,
            members: vec![0, 1],
            case: LocalCase::Case3b,
            pairs: vec![(t(0, 1), t(0, -1)), (t(0, -1), t(0, 1))],
        };
        let s = sigma_block(&p, &b, None).unwrap();
        let q = ScalarFraction::q();
        let qi = q.inverse().unwrap();
        let (a, bb) = (&q * &q, &qi * &qi);
        let expected = (&p.qq * &bb).checked_div(&(&bb - &a)).unwrap();
        assert_eq!(*s.get(0, 0), expected);
        // σ² = 1 + (q - q^-1) σ on the block.
        let lhs = s.mul(&s);
        let rhs = Matrix::identity(2).add(&s.scale(&p.qq));
        assert_eq!(lhs, rhs);
    }
}
