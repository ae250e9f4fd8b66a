//! Level-by-level construction of seminormal representations.
//!
//! `W_{λ;n}` restricts to the sum of `W_{μ;n-1}` over the neighbors `μ` of
//! `λ`, so `σ_i`, `κ_i` for `i < n - 1` are copied from the smaller
//! representations. Only the blocks of `σ_{n-1}` are new. Each of them is
//! indexed by the diagram `ρ = λ_{n-2}` and couples the components `μ`
//! adjacent to both `ρ` and `λ`.
//!
//! The per-block normal forms are each fixed up to a diagonal gauge, and
//! those gauges must be compatible across blocks for the braid relation to
//! hold. Every representation carries diagonal weights `H` making all `σ_i`
//! symmetric (`σ[a][b] H[a] = σ[b][a] H[b]`), constant up to a factor `c_μ`
//! on each component. Matching the weight ratios a block requires against
//! those the components supply gives a bipartite system in the unknowns
//! `c_μ` and a per-block scale `s_ρ`. It is solved exactly along a spanning
//! tree; each remaining edge `(ρ, μ)` gets a rescaling `x` of its block
//! entry, determined up to sign as a square root. The signs are chosen by
//! testing the relations that involve `σ_{n-2}` and `σ_{n-1}` together.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{decompose_paths, kappa_block, sigma_block, verify_relations, Block, RepError, SeminormalRep};
use crate::central::zhat_series;
use crate::combinatorics::{CombinatoricsError, ContentConvention, OscillatingPath, Partition};
use crate::matrix::Matrix;
use crate::scalars::{Field, Parameters};
use crate::spectrum::{token_value, EigenvalueToken, LocalCase, SpectrumString};

/// A block entry rescaled beyond the per-block normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaugeRepair {
    /// Level `n` at which the rescaling was introduced.
    pub level: usize,
    /// The generator `σ_{level-1}` whose block was rescaled.
    pub position: usize,
    /// The diagram `λ_{n-2}` indexing the block.
    pub rho: String,
    /// The component `λ_{n-1}` whose row and column were rescaled.
    pub mu: String,
    /// The factor `x`, as scalar text.
    pub factor: String,
}

struct Built<F: Field> {
    rep: SeminormalRep<F>,
    /// `c_μ` for each component of the restriction.
    components: BTreeMap<Partition, F>,
}

/// Block shape shared by all blocks of the top position with the same `ρ`.
struct BlockType<F: Field> {
    mus: Vec<Partition>,
    sigma: Matrix<F>,
    kappa: Matrix<F>,
    zhat: Option<Vec<F>>,
}

/// Builds and caches representations for all `(λ, n)` requested, reusing
/// the smaller ones they restrict to.
pub struct Tower<F: Field> {
    params: Parameters<F>,
    conv: ContentConvention,
    built: HashMap<(usize, Partition), Arc<Built<F>>>,
    verified: HashMap<(usize, Partition), Arc<SeminormalRep<F>>>,
}

impl<F: Field> Tower<F> {
    pub fn new(params: Parameters<F>, conv: ContentConvention) -> Self {
        Self {
            params,
            conv,
            built: HashMap::new(),
            verified: HashMap::new(),
        }
    }

    pub fn params(&self) -> &Parameters<F> {
        &self.params
    }

    /// The verified representation `W_{λ;n}`.
    pub fn rep(&mut self, lambda: &Partition, n: usize) -> Result<Arc<SeminormalRep<F>>, RepError> {
        let key = (n, lambda.clone());
        if let Some(r) = self.verified.get(&key) {
            return Ok(r.clone());
        }
        let built = self.construct(lambda, n)?;
        let report = verify_relations(&built.rep, &self.params);
        if !report.passed() {
            return Err(RepError::VerificationFailed {
                lambda: lambda.to_string(),
                n,
                summary: report.summary(),
            });
        }
        let r = Arc::new(built.rep.clone());
        self.verified.insert(key, r.clone());
        Ok(r)
    }

    /// The representation without running the verifier.
    pub fn rep_unverified(&mut self, lambda: &Partition, n: usize) -> Result<SeminormalRep<F>, RepError> {
        Ok(self.construct(lambda, n)?.rep.clone())
    }

    fn construct(&mut self, lambda: &Partition, n: usize) -> Result<Arc<Built<F>>, RepError> {
        let key = (n, lambda.clone());
        if let Some(b) = self.built.get(&key) {
            return Ok(b.clone());
        }
        if !lambda.is_vertex_at(n) {
            return Err(CombinatoricsError::NotAVertex {
                lambda: lambda.to_string(),
                n,
            }
            .into());
        }
        let built = Arc::new(if n <= 1 {
            self.base(n)
        } else {
            self.extend(lambda, n)?
        });
        self.built.insert(key, built.clone());
        Ok(built)
    }

    /// `W_{∅;0}` and `W_{(1);1}`.
    fn base(&self, n: usize) -> Built<F> {
        let mut diagrams = vec![Partition::empty()];
        let mut strings = vec![];
        let mut y = vec![];
        if n == 1 {
            diagrams.push(Partition::new(vec![1]).expect("valid"));
            strings.push(EigenvalueToken::ONE);
            y.push(vec![F::one()]);
        }
        let lambda = diagrams.last().expect("nonempty").clone();
        Built {
            rep: SeminormalRep {
                lambda,
                n,
                conv: self.conv,
                paths: vec![OscillatingPath::new(diagrams).expect("valid path")],
                strings: vec![SpectrumString(strings)],
                sigma: vec![],
                kappa: vec![],
                y,
                weights: vec![F::one()],
                repairs: vec![],
            },
            components: BTreeMap::from([(Partition::empty(), F::one())]),
        }
    }

    fn extend(&mut self, lambda: &Partition, n: usize) -> Result<Built<F>, RepError> {
        let params = self.params.clone();
        let conv = self.conv;

        // Components of the restriction, and the basis of W_{λ;n}.
        let mut subs: Vec<(Partition, Arc<Built<F>>)> = Vec::new();
        struct Entry {
            string: Vec<EigenvalueToken>,
            diagrams: Vec<Partition>,
            sub: usize,
            local: usize,
        }
        let mut entries = Vec::new();
        for (step, mu) in lambda.neighbors() {
            if !mu.is_vertex_at(n - 1) {
                continue;
            }
            let sub = self.construct(&mu, n - 1)?;
            let tok = EigenvalueToken::from_key(step_reversed_key(lambda, &mu, conv));
            let _ = step;
            for (j, p) in sub.rep.paths.iter().enumerate() {
                let mut string = sub.rep.strings[j].0.clone();
                string.push(tok);
                let mut diagrams = p.diagrams().to_vec();
                diagrams.push(lambda.clone());
                entries.push(Entry {
                    string,
                    diagrams,
                    sub: subs.len(),
                    local: j,
                });
            }
            subs.push((mu, sub));
        }
        entries.sort_by(|a, b| a.string.cmp(&b.string));
        let d = entries.len();
        let mut global: Vec<Vec<usize>> = subs.iter().map(|(_, s)| vec![0; s.rep.dim()]).collect();
        for (g, e) in entries.iter().enumerate() {
            global[e.sub][e.local] = g;
        }
        let paths: Vec<OscillatingPath> = entries
            .iter()
            .map(|e| OscillatingPath::new(e.diagrams.clone()).expect("valid path"))
            .collect();
        let strings: Vec<SpectrumString> = entries.iter().map(|e| SpectrumString(e.string.clone())).collect();

        // Generators below the top are inherited blockwise.
        let mut sigma = Vec::with_capacity(n - 1);
        let mut kappa = Vec::with_capacity(n - 1);
        for pos in 0..n - 2 {
            let mut s = Matrix::zeros(d);
            let mut k = Matrix::zeros(d);
            for (u, (_, sub)) in subs.iter().enumerate() {
                let (ss, kk) = (&sub.rep.sigma[pos], &sub.rep.kappa[pos]);
                for a in 0..ss.dim() {
                    for b in 0..ss.dim() {
                        if !ss.get(a, b).is_zero() {
                            s.set(global[u][a], global[u][b], ss.get(a, b).clone());
                        }
                        if !kk.get(a, b).is_zero() {
                            k.set(global[u][a], global[u][b], kk.get(a, b).clone());
                        }
                    }
                }
            }
            sigma.push(s);
            kappa.push(k);
        }

        // Normal forms of the top blocks, one per ρ.
        let top = n - 1;
        let blocks = decompose_paths(&paths, &strings, top)?;
        let mut types: BTreeMap<Partition, BlockType<F>> = BTreeMap::new();
        let mut block_rho: Vec<Partition> = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let first = &paths[b.members[0]];
            let rho = first.diagrams()[n - 2].clone();
            let mus: Vec<Partition> = b.members.iter().map(|&m| paths[m].diagrams()[n - 1].clone()).collect();
            let prefix = &strings[b.members[0]].0[..n - 2];
            match types.get(&rho) {
                None => {
                    let t = block_type(&params, b, prefix, mus)?;
                    types.insert(rho.clone(), t);
                }
                Some(t) => {
                    let same_zhat = match &t.zhat {
                        Some(z) => *z == zhat_series(prefix, b.size() - 1, &params)?,
                        None => true,
                    };
                    if t.mus != mus || !same_zhat {
                        return Err(RepError::PrefixDependence {
                            level: n,
                            rho: rho.to_string(),
                        });
                    }
                }
            }
            block_rho.push(rho);
        }

        // Weight ratios required by each block.
        let sub_index: BTreeMap<&Partition, usize> = subs.iter().enumerate().map(|(i, (m, _))| (m, i)).collect();
        let mut w: BTreeMap<(Partition, Partition), F> = BTreeMap::new();
        for (rho, t) in &types {
            for (i, mu) in t.mus.iter().enumerate() {
                let v = if i == 0 {
                    F::one()
                } else {
                    t.sigma
                        .get(0, i)
                        .divide(t.sigma.get(i, 0))
                        .map_err(|_| RepError::NonGenericBlock { position: top })?
                };
                w.insert((rho.clone(), mu.clone()), v);
            }
        }
        let cprime = |rho: &Partition, mu: &Partition| -> Result<F, RepError> {
            let sub = &subs[sub_index[mu]].1;
            sub.components.get(rho).cloned().ok_or_else(|| RepError::GaugeRepairFailed {
                level: n,
                reason: format!("component ({rho}) missing from ({mu})"),
            })
        };

        // Solve the bipartite system along a spanning forest.
        let mut adj_mu: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
        let mut adj_rho: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
        for (rho, t) in &types {
            for mu in &t.mus {
                adj_mu.entry(mu.clone()).or_default().push(rho.clone());
                adj_rho.entry(rho.clone()).or_default().push(mu.clone());
            }
        }
        let mut comp: BTreeMap<Partition, F> = BTreeMap::new();
        let mut scale: BTreeMap<Partition, F> = BTreeMap::new();
        let mut tree: BTreeSet<(Partition, Partition)> = BTreeSet::new();
        enum Node {
            Mu(Partition),
            Rho(Partition),
        }
        for root in adj_mu.keys() {
            if comp.contains_key(root) {
                continue;
            }
            comp.insert(root.clone(), F::one());
            let mut stack = vec![Node::Mu(root.clone())];
            while let Some(node) = stack.pop() {
                match node {
                    Node::Mu(mu) => {
                        for rho in &adj_mu[&mu] {
                            if !scale.contains_key(rho) {
                                let key = (rho.clone(), mu.clone());
                                let v = comp[&mu].times(&cprime(rho, &mu)?).divide(&w[&key])?;
                                scale.insert(rho.clone(), v);
                                tree.insert(key);
                                stack.push(Node::Rho(rho.clone()));
                            }
                        }
                    }
                    Node::Rho(rho) => {
                        for mu in &adj_rho[&rho] {
                            if !comp.contains_key(mu) {
                                let key = (rho.clone(), mu.clone());
                                let v = scale[&rho].times(&w[&key]).divide(&cprime(&rho, mu)?)?;
                                comp.insert(mu.clone(), v);
                                tree.insert(key);
                                stack.push(Node::Mu(mu.clone()));
                            }
                        }
                    }
                }
            }
        }

        // Rescalings on the remaining edges, up to sign.
        let mut x: BTreeMap<(Partition, Partition), F> = BTreeMap::new();
        let mut free: Vec<(Partition, Partition)> = Vec::new();
        for (rho, t) in &types {
            for mu in &t.mus {
                let key = (rho.clone(), mu.clone());
                if tree.contains(&key) {
                    x.insert(key, F::one());
                    continue;
                }
                let x2 = scale[rho].times(&w[&key]).divide(&comp[mu].times(&cprime(rho, mu)?))?;
                let root = x2.sqrt_exact().ok_or_else(|| RepError::GaugeRepairFailed {
                    level: n,
                    reason: format!("rescaling for block ({rho}), component ({mu}) is not a square: {x2}"),
                })?;
                x.insert(key.clone(), root);
                free.push(key);
            }
        }
        if free.len() > 24 {
            return Err(RepError::GaugeRepairFailed {
                level: n,
                reason: format!("{} free signs is beyond the search limit", free.len()),
            });
        }

        let assemble = |signs: u64| -> Result<(Matrix<F>, Matrix<F>), RepError> {
            let mut s = Matrix::zeros(d);
            let mut k = Matrix::zeros(d);
            for (b, rho) in blocks.iter().zip(&block_rho) {
                let t = &types[rho];
                let xs: Vec<F> = t
                    .mus
                    .iter()
                    .map(|mu| {
                        let key = (rho.clone(), mu.clone());
                        let v = x[&key].clone();
                        match free.iter().position(|f| *f == key) {
                            Some(bit) if signs >> bit & 1 == 1 => v.negated(),
                            _ => v,
                        }
                    })
                    .collect();
                for (i, &p) in b.members.iter().enumerate() {
                    for (j, &r) in b.members.iter().enumerate() {
                        let ratio = xs[i].divide(&xs[j])?;
                        let sv = t.sigma.get(i, j);
                        if !sv.is_zero() {
                            s.set(p, r, sv.times(&ratio));
                        }
                        let kv = t.kappa.get(i, j);
                        if !kv.is_zero() {
                            k.set(p, r, kv.times(&ratio));
                        }
                    }
                }
            }
            Ok((s, k))
        };

        let mut chosen = None;
        for signs in 0..(1u64 << free.len()) {
            let (s, k) = assemble(signs)?;
            if n < 3 || glues(&params, &sigma[n - 3], &kappa[n - 3], &s, &k) {
                chosen = Some((signs, s, k));
                break;
            }
        }
        let (signs, s_top, k_top) = chosen.ok_or_else(|| RepError::GaugeRepairFailed {
            level: n,
            reason: format!("no sign choice for {} rescalings satisfies the braid relation", free.len()),
        })?;
        sigma.push(s_top);
        kappa.push(k_top);

        let mut repairs: BTreeSet<GaugeRepair> = BTreeSet::new();
        for (_, sub) in &subs {
            repairs.extend(sub.rep.repairs.iter().cloned());
        }
        for (bit, key) in free.iter().enumerate() {
            let mut v = x[key].clone();
            if signs >> bit & 1 == 1 {
                v = v.negated();
            }
            if v != F::one() {
                repairs.insert(GaugeRepair {
                    level: n,
                    position: top,
                    rho: key.0.to_string(),
                    mu: key.1.to_string(),
                    factor: v.to_string(),
                });
            }
        }

        let weights: Vec<F> = entries
            .iter()
            .map(|e| comp[&subs[e.sub].0].times(&subs[e.sub].1.rep.weights[e.local]))
            .collect();
        let y: Vec<Vec<F>> = (0..n)
            .map(|j| strings.iter().map(|s| token_value(s.0[j], &params)).collect())
            .collect();

        Ok(Built {
            rep: SeminormalRep {
                lambda: lambda.clone(),
                n,
                conv,
                paths,
                strings,
                sigma,
                kappa,
                y,
                weights,
                repairs: repairs.into_iter().collect(),
            },
            components: comp,
        })
    }
}

/// Token of the step `mu -> lambda`.
fn step_reversed_key(lambda: &Partition, mu: &Partition, conv: ContentConvention) -> (u8, i64) {
    mu.step_to(lambda).expect("neighbors").token_key(conv)
}

fn block_type<F: Field>(
    params: &Parameters<F>,
    b: &Block,
    prefix: &[EigenvalueToken],
    mus: Vec<Partition>,
) -> Result<BlockType<F>, RepError> {
    if b.case == LocalCase::Case4 {
        let kappa = kappa_block(params, b, prefix)?;
        let sigma = sigma_block(params, b, Some(&kappa))?;
        let zhat = zhat_series(prefix, b.size() - 1, params)?;
        Ok(BlockType {
            mus,
            sigma,
            kappa,
            zhat: Some(zhat),
        })
    } else {
        Ok(BlockType {
            mus,
            sigma: sigma_block(params, b, None)?,
            kappa: Matrix::zeros(b.size()),
            zhat: None,
        })
    }
}

/// The relations coupling two adjacent generators.
fn glues<F: Field>(params: &Parameters<F>, a: &Matrix<F>, ka: &Matrix<F>, s: &Matrix<F>, ks: &Matrix<F>) -> bool {
    let asa = a.mul(s).mul(a);
    let sas = s.mul(a).mul(s);
    if asa != sas {
        return false;
    }
    ka.mul(s).mul(ka) == ka.scale(&params.nu_inv) && ks.mul(a).mul(ks) == ks.scale(&params.nu_inv)
}

/// Builds and verifies `W_{λ;n}`.
pub fn build_rep<F: Field>(
    params: &Parameters<F>,
    lambda: &Partition,
    n: usize,
    conv: ContentConvention,
) -> Result<SeminormalRep<F>, RepError> {
    let mut t = Tower::new(params.clone(), conv);
    Ok((*t.rep(lambda, n)?).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{dim, dims_by_level};
    use crate::repbuilder::form_is_symmetric;
    use crate::scalars::{BigRational, GenericSpecialization, ScalarFraction};

    const STD: ContentConvention = ContentConvention::ColMinusRow;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn empty_at_two() {
        let p = Parameters::<ScalarFraction>::symbolic();
        let r = build_rep(&p, &part(""), 2, STD).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(*r.sigma[0].get(0, 0), ScalarFraction::nu());
        assert_eq!(*r.kappa[0].get(0, 0), p.mu);
        assert_eq!(r.y[1][0], &ScalarFraction::nu() * &ScalarFraction::nu());
        assert_eq!(
            r.kappa[0].get(0, 0).to_string(),
            "(q - q^-1 + nu^-1 - nu)/(q - q^-1)".parse::<ScalarFraction>().unwrap().to_string()
        );
    }

    #[test]
    fn row_at_two_is_hecke() {
        let p = Parameters::<ScalarFraction>::symbolic();
        let r = build_rep(&p, &part("2"), 2, STD).unwrap();
        assert_eq!(*r.sigma[0].get(0, 0), ScalarFraction::q());
        assert!(r.kappa_free());
    }

    #[test]
    fn symbolic_tower_through_four() {
        let p = Parameters::<ScalarFraction>::symbolic();
        let mut t = Tower::new(p, STD);
        for (n, level) in dims_by_level(4).iter().enumerate() {
            for lam in level.keys() {
                let r = t.rep(lam, n).unwrap();
                assert_eq!(r.dim() as u64, dim(lam, n).unwrap());
                assert!(form_is_symmetric(&r));
            }
        }
    }

    #[test]
    fn rational_matches_specialized_symbolic() {
        let s = GenericSpecialization::default();
        let pr = Parameters::<BigRational>::rational(&s).unwrap();
        let ps = Parameters::<ScalarFraction>::symbolic();
        let lam = part("1");
        let a = build_rep(&ps, &lam, 3, STD).unwrap();
        let b = build_rep(&pr, &lam, 3, STD).unwrap();
        for (x, y) in a.sigma.iter().zip(&b.sigma) {
            assert_eq!(x.try_map(|v| v.specialize(&s)).unwrap(), *y);
        }
    }
}
