//! JSON form of a representation, with scalars as canonical text.

use serde::{Deserialize, Serialize};

use super::{GaugeRepair, SeminormalRep};
use crate::matrix::Matrix;
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub lambda: Vec<u32>,
    pub n: usize,
    /// Each path as its list of diagrams, every diagram as its rows.
    pub paths: Vec<Vec<Vec<u32>>>,
    /// Eigenvalue strings of `ỹ_1 .. ỹ_n`, one per path.
    pub strings: Vec<Vec<String>>,
    /// `sigma[i - 1][row][col]`.
    pub sigma: Vec<Vec<Vec<String>>>,
    pub kappa: Vec<Vec<Vec<String>>>,
    /// Diagonals of `ỹ_1 .. ỹ_n`.
    pub y: Vec<Vec<String>>,
    pub gauge_repairs: Vec<GaugeRepairJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeRepairJson {
    pub level: usize,
    pub position: usize,
    pub rho: String,
    pub mu: String,
    pub factor: String,
}

impl From<&GaugeRepair> for GaugeRepairJson {
    fn from(g: &GaugeRepair) -> Self {
        Self {
            level: g.level,
            position: g.position,
            rho: g.rho.clone(),
            mu: g.mu.clone(),
            factor: g.factor.clone(),
        }
    }
}

fn text<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

impl RepJson {
    pub fn from_rep<F: Field>(rep: &SeminormalRep<F>) -> Self {
        Self {
            lambda: rep.lambda.rows().to_vec(),
            n: rep.n,
            paths: rep
                .paths
                .iter()
                .map(|p| p.diagrams().iter().map(|d| d.rows().to_vec()).collect())
                .collect(),
            strings: rep
                .strings
                .iter()
                .map(|s| s.0.iter().map(|t| t.to_string()).collect())
                .collect(),
            sigma: rep.sigma.iter().map(text).collect(),
            kappa: rep.kappa.iter().map(text).collect(),
            y: rep
                .y
                .iter()
                .map(|d| d.iter().map(|x| x.to_string()).collect())
                .collect(),
            gauge_repairs: rep.repairs.iter().map(GaugeRepairJson::from).collect(),
        }
    }
}
