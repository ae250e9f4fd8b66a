//! Partitions, the oscillating Young graph and its paths.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("invalid partition {0:?}: rows must be positive and weakly decreasing")]
    InvalidPartition(String),
    #[error("({lambda}) is not a vertex at level {n}")]
    NotAVertex { lambda: String, n: usize },
}

/// A Young diagram given by its row lengths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(rows: Vec<u32>) -> Result<Self, CombinatoricsError> {
        let ok = rows.iter().all(|&r| r > 0) && rows.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Self(rows))
        } else {
            Err(CombinatoricsError::InvalidPartition(format!("{rows:?}")))
        }
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&r| r as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Boxes whose addition, respectively removal, leaves a partition.
    pub fn addable_removable(&self) -> (Vec<DiagramBox>, Vec<DiagramBox>) {
        let rows = &self.0;
        let mut add = Vec::new();
        let mut rem = Vec::new();
        for r in 0..=rows.len() {
            let cur = rows.get(r).copied().unwrap_or(0);
            let above = if r == 0 { u32::MAX } else { rows[r - 1] };
            if cur < above {
                add.push(DiagramBox::new(r as u32 + 1, cur + 1));
            }
            if r < rows.len() {
                let below = rows.get(r + 1).copied().unwrap_or(0);
                if cur > below {
                    rem.push(DiagramBox::new(r as u32 + 1, cur));
                }
            }
        }
        (add, rem)
    }

    fn with_box_added(&self, b: DiagramBox) -> Self {
        let mut rows = self.0.clone();
        let r = (b.row - 1) as usize;
        if r == rows.len() {
            rows.push(1);
        } else {
            rows[r] += 1;
        }
        Self(rows)
    }

    fn with_box_removed(&self, b: DiagramBox) -> Self {
        let mut rows = self.0.clone();
        let r = (b.row - 1) as usize;
        rows[r] -= 1;
        if rows[r] == 0 {
            rows.pop();
        }
        Self(rows)
    }

    /// All diagrams one box away, with the step that reaches them.
    pub fn neighbors(&self) -> Vec<(Step, Partition)> {
        let (add, rem) = self.addable_removable();
        let mut out: Vec<(Step, Partition)> = add
            .into_iter()
            .map(|b| (Step::Add(b), self.with_box_added(b)))
            .collect();
        out.extend(rem.into_iter().map(|b| (Step::Remove(b), self.with_box_removed(b))));
        out
    }

    /// The step leading from `self` to `other`, if they differ by one box.
    pub fn step_to(&self, other: &Partition) -> Option<Step> {
        self.neighbors()
            .into_iter()
            .find(|(_, p)| p == other)
            .map(|(s, _)| s)
    }

    /// Whether `self` occurs at level `n` of the oscillating graph.
    pub fn is_vertex_at(&self, n: usize) -> bool {
        let m = self.size();
        m <= n && (n - m) % 2 == 0
    }
}

impl fmt::Display for Partition {
    /// Comma-separated rows; the empty diagram prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = CombinatoricsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(Self::empty());
        }
        let rows: Result<Vec<u32>, _> = t.split(',').map(|x| x.trim().parse::<u32>()).collect();
        let rows = rows.map_err(|_| CombinatoricsError::InvalidPartition(s.to_string()))?;
        Self::new(rows)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A cell of a Young diagram, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct DiagramBox {
    pub row: u32,
    pub col: u32,
}

impl DiagramBox {
    pub fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }

    /// `col - row`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// Which coordinate difference is used as the content of a box.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum ContentConvention {
    /// `col - row`: the first row carries positive contents.
    #[default]
    ColMinusRow,
    /// `row - col`, equivalent to `q -> q^-1` on all spectra.
    RowMinusCol,
}

impl ContentConvention {
    pub fn from_flip(flip: bool) -> Self {
        if flip {
            Self::RowMinusCol
        } else {
            Self::ColMinusRow
        }
    }

    pub fn content(self, b: DiagramBox) -> i64 {
        match self {
            Self::ColMinusRow => b.content(),
            Self::RowMinusCol => -b.content(),
        }
    }
}

/// One edge of a path: adding or removing a box.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Step {
    Add(DiagramBox),
    Remove(DiagramBox),
}

impl Step {
    pub fn cell(&self) -> DiagramBox {
        match self {
            Step::Add(b) | Step::Remove(b) => *b,
        }
    }

    /// `(0, c)` for adding a box of content `c`, `(1, -c)` for removing one.
    pub fn token_key(&self, conv: ContentConvention) -> (u8, i64) {
        match self {
            Step::Add(b) => (0, conv.content(*b)),
            Step::Remove(b) => (1, -conv.content(*b)),
        }
    }
}

/// Levels `0..=n` of the oscillating Young graph.
#[derive(Clone, Debug, Serialize)]
pub struct OscillatingGraph {
    pub n: usize,
    /// Sorted vertices per level.
    pub levels: Vec<Vec<Partition>>,
    /// `(k, i, j, step)`: vertex `i` of level `k` to vertex `j` of level `k + 1`.
    pub edges: Vec<(usize, usize, usize, Step)>,
}

pub fn build_graph(n: usize) -> OscillatingGraph {
    let mut levels = vec![vec![Partition::empty()]];
    let mut edges = Vec::new();
    for k in 0..n {
        let mut next: Vec<Partition> = levels[k]
            .iter()
            .flat_map(|p| p.neighbors().into_iter().map(|(_, m)| m))
            .collect();
        next.sort();
        next.dedup();
        for (i, p) in levels[k].iter().enumerate() {
            for (step, m) in p.neighbors() {
                let j = next.binary_search(&m).expect("neighbor is in next level");
                edges.push((k, i, j, step));
            }
        }
        levels.push(next);
    }
    OscillatingGraph { n, levels, edges }
}

impl OscillatingGraph {
    /// Graphviz rendering. Vertices are labeled `level:partition` (`∅` for
    /// the empty diagram); edges carry `+c` or `-c` with the content of the
    /// box added or removed.
    pub fn to_dot(&self, conv: ContentConvention) -> String {
        let mut s = String::from("digraph oscillating {\n  rankdir=TB;\n");
        for (k, level) in self.levels.iter().enumerate() {
            for (i, p) in level.iter().enumerate() {
                s.push_str(&format!("  v{k}_{i} [label=\"{k}:{}\"];\n", dot_label(p)));
            }
        }
        for (k, i, j, step) in &self.edges {
            let c = conv.content(step.cell());
            let label = match step {
                Step::Add(_) => format!("+{c}"),
                Step::Remove(_) => format!("-{c}"),
            };
            s.push_str(&format!(
                "  v{k}_{i} -> v{}_{j} [label=\"{label}\"];\n",
                k + 1
            ));
        }
        s.push_str("}\n");
        s
    }
}

fn dot_label(p: &Partition) -> String {
    if p.is_empty() {
        "∅".to_string()
    } else {
        p.to_string()
    }
}

/// A walk `∅ = λ_0, λ_1, ..., λ_n` changing one box per step.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OscillatingPath {
    diagrams: Vec<Partition>,
}

impl OscillatingPath {
    /// Validates the walk.
    pub fn new(diagrams: Vec<Partition>) -> Option<Self> {
        if diagrams.first() != Some(&Partition::empty()) {
            return None;
        }
        if diagrams.windows(2).any(|w| w[0].step_to(&w[1]).is_none()) {
            return None;
        }
        Some(Self { diagrams })
    }

    pub fn diagrams(&self) -> &[Partition] {
        &self.diagrams
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.diagrams.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn end(&self) -> &Partition {
        self.diagrams.last().expect("nonempty")
    }

    pub fn steps(&self) -> Vec<Step> {
        self.diagrams
            .windows(2)
            .map(|w| w[0].step_to(&w[1]).expect("validated path"))
            .collect()
    }

    /// The token sequence defining the canonical order.
    pub fn token_keys(&self, conv: ContentConvention) -> Vec<(u8, i64)> {
        self.steps().iter().map(|s| s.token_key(conv)).collect()
    }
}

/// All paths from `∅` to `lambda` of length `n`, ordered lexicographically
/// by their content strings.
pub fn enumerate_paths(
    lambda: &Partition,
    n: usize,
    conv: ContentConvention,
) -> Result<Vec<OscillatingPath>, CombinatoricsError> {
    if !lambda.is_vertex_at(n) {
        return Err(CombinatoricsError::NotAVertex {
            lambda: lambda.to_string(),
            n,
        });
    }
    let mut out = Vec::new();
    let mut stack = vec![lambda.clone()];
    walk_back(n, &mut stack, &mut out);
    let mut keyed: Vec<(Vec<(u8, i64)>, OscillatingPath)> = out
        .into_iter()
        .map(|p| (p.token_keys(conv), p))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}

fn walk_back(level: usize, stack: &mut Vec<Partition>, out: &mut Vec<OscillatingPath>) {
    if level == 0 {
        let mut d = stack.clone();
        d.reverse();
        out.push(OscillatingPath { diagrams: d });
        return;
    }
    let cur = stack.last().expect("nonempty").clone();
    for (_, m) in cur.neighbors() {
        if m.is_vertex_at(level - 1) {
            stack.push(m);
            walk_back(level - 1, stack, out);
            stack.pop();
        }
    }
}

/// Number of paths from `∅` to `lambda` of length `n`.
pub fn dim(lambda: &Partition, n: usize) -> Result<u64, CombinatoricsError> {
    if !lambda.is_vertex_at(n) {
        return Err(CombinatoricsError::NotAVertex {
            lambda: lambda.to_string(),
            n,
        });
    }
    Ok(dims_by_level(n)[n][lambda])
}

/// `dim(λ, k)` for every vertex of every level `k <= n`, by the neighbor-sum
/// recursion.
pub fn dims_by_level(n: usize) -> Vec<BTreeMap<Partition, u64>> {
    let mut out: Vec<BTreeMap<Partition, u64>> = vec![BTreeMap::from([(Partition::empty(), 1)])];
    for k in 1..=n {
        let mut cur = BTreeMap::new();
        for (p, d) in &out[k - 1] {
            for (_, m) in p.neighbors() {
                *cur.entry(m).or_insert(0) += d;
            }
        }
        out.push(cur);
    }
    out
}

/// `(2n - 1)!!`, with `(-1)!! = 1`.
pub fn double_factorial_odd(n: usize) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

#[derive(Clone, Debug, Serialize)]
pub struct DimEntry {
    pub lambda: String,
    pub dim: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimLevel {
    pub level: usize,
    pub dims: Vec<DimEntry>,
    pub sum_of_squares: u128,
    pub double_factorial: u128,
    pub identity_holds: bool,
}

/// Dimension table for levels `0..=n`, with the `Σ d² = (2k-1)!!` check.
pub fn dims_table(n: usize) -> Vec<DimLevel> {
    dims_by_level(n)
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            let sum: u128 = m.values().map(|&d| (d as u128) * (d as u128)).sum();
            let df = double_factorial_odd(k);
            DimLevel {
                level: k,
                dims: m
                    .iter()
                    .map(|(p, &d)| DimEntry {
                        lambda: p.to_string(),
                        dim: d,
                    })
                    .collect(),
                sum_of_squares: sum,
                double_factorial: df,
                identity_holds: sum == df,
            }
        })
        .collect()
}
