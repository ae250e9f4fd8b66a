//! Jucys-Murphy eigenvalue strings: content strings of paths, the
//! admissibility rules, local classification of adjacent pairs, and the
//! string-to-path bijection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{
    build_graph, enumerate_paths, CombinatoricsError, ContentConvention, OscillatingPath,
    Partition,
};
use crate::scalars::{Field, Parameters};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("repeated eigenvalue {0} in an adjacent pair")]
    RepeatedEigenvalue(EigenvalueToken),
    #[error("string not realizable at step {step}: no box for token {token}")]
    NotRealizable { step: usize, token: EigenvalueToken },
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

/// The formal value `nu^(2 nu) q^(2 z)`. Ordered by `(nu, z)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct EigenvalueToken {
    pub nu: u8,
    pub z: i64,
}

impl EigenvalueToken {
    pub const ONE: EigenvalueToken = EigenvalueToken { nu: 0, z: 0 };

    pub fn new(nu: u8, z: i64) -> Self {
        debug_assert!(nu <= 1);
        Self { nu, z }
    }

    /// Multiplies by `q^(2k)`.
    pub fn shifted(self, k: i64) -> Self {
        Self::new(self.nu, self.z + k)
    }

    pub fn from_key(k: (u8, i64)) -> Self {
        Self::new(k.0, k.1)
    }
}

impl fmt::Display for EigenvalueToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qz = 2 * self.z;
        match (self.nu, qz) {
            (0, 0) => write!(f, "1"),
            (0, 2) => write!(f, "q^2"),
            (0, _) => write!(f, "q^{qz}"),
            (_, 0) => write!(f, "nu^2"),
            (_, _) => write!(f, "nu^2*q^{qz}"),
        }
    }
}

/// `nu^(2 eps) q^(2 z)` in the field of `params`.
pub fn token_value<F: Field>(a: EigenvalueToken, params: &Parameters<F>) -> F {
    params.token_value(a.nu, a.z)
}

/// A string `(a_1, ..., a_n)` of JM eigenvalues.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpectrumString(pub Vec<EigenvalueToken>);

impl SpectrumString {
    pub fn tokens(&self) -> &[EigenvalueToken] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The string with positions `i` and `i + 1` (0-based) exchanged.
    pub fn swapped(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        Self(v)
    }
}

impl fmt::Display for SpectrumString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Local type of an adjacent eigenvalue pair `(a, b) = (ỹ_i, ỹ_{i+1})`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum LocalCase {
    /// One-dimensional: `σ_i` acts by `sign * q^power`.
    Case3a { sign: i8, power: i8 },
    /// Two-dimensional Hecke-type block.
    Case3b,
    /// `a b = nu^2`: the block where `κ_i` is nonzero.
    Case4,
}

impl LocalCase {
    pub fn tag(&self) -> &'static str {
        match self {
            LocalCase::Case3a { .. } => "3a",
            LocalCase::Case3b => "3b",
            LocalCase::Case4 => "4",
        }
    }
}

pub fn classify_local(a: EigenvalueToken, b: EigenvalueToken) -> Result<LocalCase, SpectrumError> {
    if a == b {
        return Err(SpectrumError::RepeatedEigenvalue(a));
    }
    if a.nu + b.nu == 1 && a.z + b.z == 0 {
        return Ok(LocalCase::Case4);
    }
    if a.nu == b.nu && b.z == a.z + 1 {
        return Ok(LocalCase::Case3a { sign: 1, power: 1 });
    }
    if a.nu == b.nu && b.z == a.z - 1 {
        return Ok(LocalCase::Case3a { sign: -1, power: -1 });
    }
    Ok(LocalCase::Case3b)
}

/// Token `i` is `(0, c)` if step `i` adds a box of content `c` and `(1, -c)`
/// if it removes one.
pub fn content_string(p: &OscillatingPath, conv: ContentConvention) -> SpectrumString {
    SpectrumString(
        p.token_keys(conv)
            .into_iter()
            .map(EigenvalueToken::from_key)
            .collect(),
    )
}

fn q_tok(z: i64) -> EigenvalueToken {
    EigenvalueToken::new(0, z)
}

fn nu_tok(z: i64) -> EigenvalueToken {
    EigenvalueToken::new(1, z)
}

/// Checks every rule whose last index is `j`, assuming `s[..j]` passed.
fn admissible_at(s: &[EigenvalueToken], j: usize) -> bool {
    let a = s[j];
    let before = &s[..j];
    // (1) a_1 = 1.
    if j == 0 {
        return a == EigenvalueToken::ONE;
    }
    // (2) a_j = nu^2 q^(-2z) needs q^(2z) earlier.
    if a.nu == 1 && !before.contains(&q_tok(-a.z)) {
        return false;
    }
    // (3) a_j = q^(2z), z != 0, needs q^(2z+2) or q^(2z-2) earlier.
    if a.nu == 0 && a.z != 0 && !before.contains(&q_tok(a.z + 1)) && !before.contains(&q_tok(a.z - 1)) {
        return false;
    }
    for i in 0..j {
        let b = s[i];
        let between = &s[i + 1..j];
        if b == a {
            let ok = if a.nu == 0 {
                // (4a) a_i = a_j = q^(2z).
                let z = a.z;
                (between.contains(&q_tok(z + 1)) && between.contains(&q_tok(z - 1)))
                    || between.contains(&nu_tok(-z))
            } else {
                // (4b) a_i = a_j = nu^2 q^(2z).
                let z = a.z;
                (between.contains(&nu_tok(z + 1)) && between.contains(&nu_tok(z - 1)))
                    || between.contains(&q_tok(-z))
            };
            if !ok {
                return false;
            }
        }
        if b.nu == 1 && a.nu == 0 {
            // (5a) a_i = nu^2 q^(-2z), a_j = q^(2z'), z' = z ± 1.
            let z = -b.z;
            let zp = a.z;
            if (zp - z).abs() == 1 && !between.contains(&q_tok(z)) && !between.contains(&nu_tok(-zp)) {
                return false;
            }
        }
        if b.nu == 0 && a.nu == 1 {
            // (5b) a_i = q^(2z), a_j = nu^2 q^(-2z'), z' = z ± 1.
            let z = b.z;
            let zp = -a.z;
            if (zp - z).abs() == 1 && !between.contains(&nu_tok(-z)) && !between.contains(&q_tok(zp)) {
                return false;
            }
        }
    }
    true
}

/// Whether `s` satisfies the admissibility rules (1)-(5b).
pub fn admissible(s: &SpectrumString) -> bool {
    !s.is_empty() && (0..s.len()).all(|j| admissible_at(&s.0, j))
}

/// All admissible strings of length `n` over tokens with `|z| <= n`, in
/// sorted order. The rules only look backwards, so depth-first extension
/// of admissible prefixes finds them all.
pub fn admissible_strings(n: usize) -> Vec<SpectrumString> {
    let bound = n as i64;
    let alphabet: Vec<EigenvalueToken> = (0..2u8)
        .flat_map(|e| (-bound..=bound).map(move |z| EigenvalueToken::new(e, z)))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        n: usize,
        alphabet: &[EigenvalueToken],
        cur: &mut Vec<EigenvalueToken>,
        out: &mut Vec<SpectrumString>,
    ) {
        if cur.len() == n {
            out.push(SpectrumString(cur.clone()));
            return;
        }
        for &t in alphabet {
            cur.push(t);
            if admissible_at(cur, cur.len() - 1) {
                rec(n, alphabet, cur, out);
            }
            cur.pop();
        }
    }
    if n > 0 {
        rec(n, &alphabet, &mut cur, &mut out);
    }
    out.sort();
    out
}

/// Rebuilds the path whose content string is `s`.
pub fn string_to_path(
    s: &SpectrumString,
    conv: ContentConvention,
) -> Result<OscillatingPath, SpectrumError> {
    let mut diagrams = vec![Partition::empty()];
    for (i, &t) in s.0.iter().enumerate() {
        let cur = diagrams.last().expect("nonempty");
        let next = cur
            .neighbors()
            .into_iter()
            .find(|(step, _)| EigenvalueToken::from_key(step.token_key(conv)) == t)
            .map(|(_, m)| m)
            .ok_or(SpectrumError::NotRealizable { step: i + 1, token: t })?;
        diagrams.push(next);
    }
    Ok(OscillatingPath::new(diagrams).expect("steps are graph edges"))
}

/// Content strings of every length-`n` path, grouped by end diagram.
pub fn path_strings_by_end(
    n: usize,
    conv: ContentConvention,
) -> BTreeMap<Partition, Vec<SpectrumString>> {
    let g = build_graph(n);
    let mut out = BTreeMap::new();
    for lam in &g.levels[n] {
        let ps = enumerate_paths(lam, n, conv).expect("graph vertex");
        out.insert(lam.clone(), ps.iter().map(|p| content_string(p, conv)).collect());
    }
    out
}

/// Outcome of comparing admissible strings with path content strings.
#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub n: usize,
    pub path_strings: usize,
    pub admissible_strings: usize,
    /// Admissible strings that are not content strings.
    pub only_admissible: Vec<SpectrumString>,
    /// Content strings rejected by the rules.
    pub only_paths: Vec<SpectrumString>,
    /// Distinct paths whose strings coincide.
    pub collisions: usize,
    /// Paths for which `string_to_path(content_string(p)) != p`.
    pub roundtrip_failures: usize,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.only_admissible.is_empty()
            && self.only_paths.is_empty()
            && self.collisions == 0
            && self.roundtrip_failures == 0
    }
}

pub fn bijection_check(n: usize, conv: ContentConvention) -> BijectionReport {
    let g = build_graph(n);
    let mut strings = BTreeSet::new();
    let mut count = 0;
    let mut roundtrip_failures = 0;
    for lam in &g.levels[n] {
        for p in enumerate_paths(lam, n, conv).expect("graph vertex") {
            let s = content_string(&p, conv);
            if string_to_path(&s, conv).ok().as_ref() != Some(&p) {
                roundtrip_failures += 1;
            }
            strings.insert(s);
            count += 1;
        }
    }
    // The admissibility rules are stated for the standard convention; under
    // the flipped one the alphabet is mirrored by z -> -z.
    let adm: BTreeSet<SpectrumString> = admissible_strings(n)
        .into_iter()
        .map(|s| match conv {
            ContentConvention::ColMinusRow => s,
            ContentConvention::RowMinusCol => {
                SpectrumString(s.0.iter().map(|t| EigenvalueToken::new(t.nu, -t.z)).collect())
            }
        })
        .collect();
    BijectionReport {
        n,
        path_strings: strings.len(),
        admissible_strings: adm.len(),
        only_admissible: adm.difference(&strings).cloned().collect(),
        only_paths: strings.difference(&adm).cloned().collect(),
        collisions: count - strings.len(),
        roundtrip_failures,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumLevel {
    pub level: usize,
    pub diagrams: Vec<SpectrumEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub lambda: String,
    pub strings: Vec<SpectrumString>,
}

/// Per level `1..=n` and per end diagram, the content strings in canonical
/// order.
pub fn spectrum_table(n: usize, conv: ContentConvention) -> Vec<SpectrumLevel> {
    (1..=n)
        .map(|k| SpectrumLevel {
            level: k,
            diagrams: path_strings_by_end(k, conv)
                .into_iter()
                .map(|(lam, strings)| SpectrumEntry {
                    lambda: lam.to_string(),
                    strings,
                })
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ScalarFraction;

    fn t(nu: u8, z: i64) -> EigenvalueToken {
        EigenvalueToken::new(nu, z)
    }

    fn path(parts: &[&str]) -> OscillatingPath {
        OscillatingPath::new(parts.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn s(v: &[(u8, i64)]) -> SpectrumString {
        SpectrumString(v.iter().map(|&(a, b)| t(a, b)).collect())
    }

    const STD: ContentConvention = ContentConvention::ColMinusRow;

    #[test]
    fn content_strings() {
        assert_eq!(content_string(&path(&["", "1", "", "1"]), STD), s(&[(0, 0), (1, 0), (0, 0)]));
        assert_eq!(content_string(&path(&["", "1", "2", "1"]), STD), s(&[(0, 0), (0, 1), (1, -1)]));
        assert_eq!(content_string(&path(&["", "1", "1,1", "2,1"]), STD), s(&[(0, 0), (0, -1), (0, 1)]));
    }

    #[test]
    fn token_values() {
        let p = Parameters::symbolic();
        assert_eq!(token_value(t(0, 0), &p), ScalarFraction::one());
        assert_eq!(token_value(t(1, -1), &p), ScalarFraction::monomial(1, -2, 2));
        let prod = token_value(t(0, 1), &p).times(&token_value(t(1, -1), &p));
        assert_eq!(prod, ScalarFraction::monomial(1, 0, 2));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_local(t(0, 0), t(0, 1)).unwrap(), LocalCase::Case3a { sign: 1, power: 1 });
        assert_eq!(classify_local(t(0, 1), t(1, -1)).unwrap(), LocalCase::Case4);
        assert_eq!(classify_local(t(0, 1), t(0, -1)).unwrap(), LocalCase::Case3b);
        assert_eq!(classify_local(t(0, 0), t(0, -1)).unwrap(), LocalCase::Case3a { sign: -1, power: -1 });
        assert!(matches!(classify_local(t(0, 1), t(0, 1)), Err(SpectrumError::RepeatedEigenvalue(_))));
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible(&s(&[(0, 0), (0, 1), (0, 2)])));
        assert!(!admissible(&s(&[(0, 0), (0, 2)])));
        assert!(admissible(&s(&[(0, 0), (1, 0), (0, 0)])));
        assert!(!admissible(&s(&[(0, 1)])));
        assert!(!admissible(&s(&[(0, 0), (0, 1), (1, 0)])));
    }

    #[test]
    fn string_to_path_examples() {
        assert_eq!(string_to_path(&s(&[(0, 0), (0, 1), (1, -1)]), STD).unwrap(), path(&["", "1", "2", "1"]));
        assert_eq!(string_to_path(&s(&[(0, 0), (0, -1), (0, 1)]), STD).unwrap(), path(&["", "1", "1,1", "2,1"]));
        assert_eq!(string_to_path(&s(&[(0, 0), (1, 0)]), STD).unwrap(), path(&["", "1", ""]));
        assert!(matches!(
            string_to_path(&s(&[(0, 0), (0, 2)]), STD),
            Err(SpectrumError::NotRealizable { step: 2, .. })
        ));
    }

    #[test]
    fn small_bijection() {
        for n in 1..=4 {
            assert!(bijection_check(n, STD).holds(), "n = {n}");
            assert!(bijection_check(n, ContentConvention::RowMinusCol).holds(), "flipped n = {n}");
        }
    }

    #[test]
    fn token_json() {
        let j = serde_json::to_string(&s(&[(0, 0), (1, -1)])).unwrap();
        assert_eq!(j, r#"[{"nu":0,"z":0},{"nu":1,"z":-1}]"#);
    }
}
