//! Exact seminormal representations of the Birman-Murakami-Wenzl algebras
//! `BMW_n(q, nu)`, built from Jucys-Murphy spectral data.

pub mod scalars;
pub mod combinatorics;
pub mod spectrum;
pub mod matrix;
pub mod central;
pub mod repbuilder;
pub mod chains;
pub mod cli;
