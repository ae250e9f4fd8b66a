//! Batch command-line front end.
//!
//! Every command renders its whole output to a string first, so identical
//! invocations give byte-identical output.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::central::{central_scalars, intertwiner_checks, CentralError};
use crate::chains::{eigen_csv, eigen_rows, eigenvalues_numeric, hamiltonian, ChainA, ChainError, ChainParams};
use crate::combinatorics::{build_graph, dims_table, ContentConvention, Partition};
use crate::repbuilder::{verify_relations, RepError, RepJson, Tower};
use crate::scalars::{check_generic, BigRational, Field, GenericSpecialization, Parameters, ScalarError, ScalarFraction};
use crate::spectrum::{bijection_check, spectrum_table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Central(#[from] CentralError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error("serializing output: {0}")]
    Json(#[from] serde_json::Error),
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug, Clone)]
#[command(name = "bmw", version, about = "Seminormal representations of BMW algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// DOT or JSON of the oscillating graph up to level n.
    Graph,
    /// Dimensions per level with the sum-of-squares check.
    Dims,
    /// Content strings per end diagram and the admissibility bijection.
    Spectra,
    /// One verified representation as JSON.
    Rep,
    /// Relation reports for every irreducible at level n.
    Verify,
    /// Central scalars and intertwiner checks at level n.
    Central,
    /// Chain Hamiltonian spectra as CSV.
    Hamiltonian,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Symbolic,
    Rational,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Level.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,
    /// Partition as comma-separated rows; the empty string is the empty diagram.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Symbolic)]
    pub mode: Mode,
    /// Rational value of q for rational mode and numerics.
    #[arg(long, global = true, default_value = "2")]
    pub q: String,
    /// Rational value of nu for rational mode and numerics.
    #[arg(long, global = true, default_value = "3")]
    pub nu: String,
    /// Chain parameter: q, -q, q^-1 or -q^-1.
    #[arg(long, global = true, default_value = "q", allow_hyphen_values = true)]
    pub a: String,
    /// Real part of xi; without --xi-re/--xi-im the root of xi^2 = -a nu with
    /// nonnegative imaginary part is used.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi_re: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi_im: Option<f64>,
    /// Build the Hamiltonian even if xi^2 != -a nu.
    #[arg(long, global = true)]
    pub waive_xi: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Use content row - col instead of col - row.
    #[arg(long, global = true)]
    pub flip_content: bool,
}

/// Rendered output and whether every requested check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

impl CommonArgs {
    fn conv(&self) -> ContentConvention {
        ContentConvention::from_flip(self.flip_content)
    }

    fn point(&self) -> Result<GenericSpecialization, CliError> {
        let parse = |name: &str, s: &str| -> Result<BigRational, CliError> {
            s.trim()
                .parse::<BigRational>()
                .map_err(|e| CliError::Usage(format!("--{name} {s:?}: {e}")))
        };
        Ok(GenericSpecialization::new(parse("q", &self.q)?, parse("nu", &self.nu)?))
    }

    fn lambda(&self) -> Result<Option<Partition>, CliError> {
        self.lambda
            .as_deref()
            .map(|s| s.parse::<Partition>().map_err(|e| CliError::Usage(format!("--lambda {s:?}: {e}"))))
            .transpose()
    }

    fn format(&self, allowed: &[Format]) -> Result<Format, CliError> {
        match self.format {
            None => Ok(allowed[0]),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(f) => Err(CliError::Usage(format!("format {f:?} is not available for this command"))),
        }
    }

    /// Level-n diagrams, or the one given by --lambda.
    fn targets(&self) -> Result<Vec<Partition>, CliError> {
        match self.lambda()? {
            Some(l) => {
                if !l.is_vertex_at(self.n) {
                    return Err(CliError::Usage(format!("({l}) is not a vertex at level {}", self.n)));
                }
                Ok(vec![l])
            }
            None => Ok(build_graph(self.n).levels[self.n].clone()),
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// Runs one command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let c = &cli.common;
    match cli.command {
        Command::Graph => graph(c),
        Command::Dims => dims(c),
        Command::Spectra => spectra(c),
        cmd => {
            let point = c.point()?;
            match c.mode {
                Mode::Symbolic => with_params(cmd, c, Parameters::<ScalarFraction>::symbolic(), &point),
                Mode::Rational => {
                    if !check_generic(&point, c.n) {
                        return Err(CliError::Usage(format!(
                            "(q, nu) = ({}, {}) is not generic at level {}",
                            point.q_value, point.nu_value, c.n
                        )));
                    }
                    with_params(cmd, c, Parameters::<BigRational>::rational(&point)?, &point)
                }
            }
        }
    }
}

fn with_params<F: Field>(
    cmd: Command,
    c: &CommonArgs,
    params: Parameters<F>,
    point: &GenericSpecialization,
) -> Result<Outcome, CliError> {
    let mut tower = Tower::new(params, c.conv());
    match cmd {
        Command::Rep => rep(c, &mut tower),
        Command::Verify => verify(c, &mut tower),
        Command::Central => central(c, &mut tower),
        Command::Hamiltonian => chain(c, &mut tower, point),
        _ => unreachable!("handled without parameters"),
    }
}

fn graph(c: &CommonArgs) -> Result<Outcome, CliError> {
    let g = build_graph(c.n);
    let output = match c.format(&[Format::Dot, Format::Json])? {
        Format::Dot => g.to_dot(c.conv()),
        _ => pretty(&g)?,
    };
    Ok(Outcome { output, ok: true })
}

fn dims(c: &CommonArgs) -> Result<Outcome, CliError> {
    let table = dims_table(c.n);
    let ok = table.iter().all(|l| l.identity_holds);
    let output = match c.format(&[Format::Json, Format::Csv])? {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["level", "lambda", "dim", "sum_of_squares", "double_factorial", "identity_holds"])?;
            for l in &table {
                for e in &l.dims {
                    w.write_record([
                        l.level.to_string(),
                        e.lambda.clone(),
                        e.dim.to_string(),
                        l.sum_of_squares.to_string(),
                        l.double_factorial.to_string(),
                        l.identity_holds.to_string(),
                    ])?;
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8")
        }
        _ => pretty(&json!({ "n": c.n, "levels": table, "identity_holds": ok }))?,
    };
    Ok(Outcome { output, ok })
}

fn spectra(c: &CommonArgs) -> Result<Outcome, CliError> {
    c.format(&[Format::Json])?;
    let conv = c.conv();
    let table = spectrum_table(c.n, conv);
    let level = table.into_iter().find(|l| l.level == c.n);
    let lambda = c.lambda()?;
    let diagrams: Vec<_> = level
        .map(|l| l.diagrams)
        .unwrap_or_default()
        .into_iter()
        .filter(|e| lambda.as_ref().is_none_or(|l| l.to_string() == e.lambda))
        .collect();
    let report = bijection_check(c.n, conv);
    let ok = report.holds();
    let output = pretty(&json!({
        "n": c.n,
        "convention": if c.flip_content { "row-col" } else { "col-row" },
        "diagrams": diagrams,
        "bijection": { "holds": ok, "report": report },
    }))?;
    Ok(Outcome { output, ok })
}

fn rep<F: Field>(c: &CommonArgs, tower: &mut Tower<F>) -> Result<Outcome, CliError> {
    c.format(&[Format::Json])?;
    let lambda = c
        .lambda()?
        .ok_or_else(|| CliError::Usage("rep needs --lambda".into()))?;
    let r = tower.rep(&lambda, c.n)?;
    Ok(Outcome {
        output: pretty(&RepJson::from_rep(&r))?,
        ok: true,
    })
}

fn verify<F: Field>(c: &CommonArgs, tower: &mut Tower<F>) -> Result<Outcome, CliError> {
    c.format(&[Format::Json])?;
    let mut results = Vec::new();
    let mut ok = true;
    for lam in c.targets()? {
        let entry = match tower.rep_unverified(&lam, c.n) {
            Ok(r) => {
                let report = verify_relations(&r, tower.params());
                ok &= report.passed();
                json!({
                    "lambda": lam.to_string(),
                    "dim": r.dim(),
                    "passed": report.passed(),
                    "checks": report.checks,
                    "failures": report.failures,
                    "gauge_repairs": r.repairs.len(),
                })
            }
            Err(e) => {
                ok = false;
                json!({ "lambda": lam.to_string(), "passed": false, "error": e.to_string() })
            }
        };
        results.push(entry);
    }
    let output = pretty(&json!({ "n": c.n, "mode": mode_name(c.mode), "passed": ok, "results": results }))?;
    Ok(Outcome { output, ok })
}

fn central<F: Field>(c: &CommonArgs, tower: &mut Tower<F>) -> Result<Outcome, CliError> {
    c.format(&[Format::Json])?;
    let mut results = Vec::new();
    let mut ok = true;
    for lam in c.targets()? {
        let r = tower.rep(&lam, c.n)?;
        let entry = match central_scalars(&r, tower.params(), 3) {
            Ok(s) => {
                let sums: BTreeMap<String, String> =
                    s.power_sums.iter().map(|(p, v)| (p.to_string(), v.to_string())).collect();
                let inter: Vec<_> = (1..c.n).map(|k| intertwiner_checks(&r, tower.params(), k)).collect();
                let passed = inter.iter().all(|i| i.passed());
                ok &= passed;
                json!({
                    "lambda": lam.to_string(),
                    "z": s.z.to_string(),
                    "power_sums": sums,
                    "intertwiners": inter,
                    "passed": passed,
                })
            }
            Err(e) => {
                ok = false;
                json!({ "lambda": lam.to_string(), "passed": false, "error": e.to_string() })
            }
        };
        results.push(entry);
    }
    let output = pretty(&json!({ "n": c.n, "mode": mode_name(c.mode), "passed": ok, "results": results }))?;
    Ok(Outcome { output, ok })
}

fn chain<F: Field>(c: &CommonArgs, tower: &mut Tower<F>, point: &GenericSpecialization) -> Result<Outcome, CliError> {
    let fmt = c.format(&[Format::Csv, Format::Json])?;
    let a: ChainA = c.a.parse().map_err(CliError::Usage)?;
    let mut params = ChainParams::principal(a, point);
    if c.xi_re.is_some() || c.xi_im.is_some() {
        params.xi = Complex64::new(c.xi_re.unwrap_or(0.0), c.xi_im.unwrap_or(0.0));
    }
    params.waive_constraint = c.waive_xi;
    let mut rows = Vec::new();
    for lam in c.targets()? {
        let r = tower.rep(&lam, c.n)?;
        let h = hamiltonian(&r, tower.params(), &params, point)?;
        let ev = eigenvalues_numeric(&h)?;
        rows.extend(eigen_rows(&h, &ev));
    }
    let output = match fmt {
        Format::Json => pretty(&rows)?,
        _ => eigen_csv(&rows)?,
    };
    Ok(Outcome { output, ok: true })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Symbolic => "symbolic",
        Mode::Rational => "rational",
    }
}

/// Parses arguments, runs, writes the output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli).and_then(|o| write_output(&cli.common, &o).map(|_| o)) {
        Ok(o) => {
            if o.ok {
                0
            } else {
                eprintln!("one or more checks failed; see the report");
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn write_output(c: &CommonArgs, o: &Outcome) -> Result<(), CliError> {
    match &c.out {
        Some(p) => std::fs::write(p, &o.output)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(o.output.as_bytes())?;
        }
    }
    Ok(())
}

/// JSON value of a command's output, for tests.
pub fn run_json(args: &[&str]) -> Result<(Value, bool), CliError> {
    let cli = Cli::try_parse_from(std::iter::once("bmw").chain(args.iter().copied()))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let o = run(&cli)?;
    Ok((serde_json::from_str(&o.output)?, o.ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_five() {
        let (v, ok) = run_json(&["dims", "--n", "5"]).unwrap();
        assert!(ok);
        assert_eq!(v["levels"][5]["sum_of_squares"], 945);
    }

    #[test]
    fn rep_of_empty_at_two() {
        let (v, ok) = run_json(&["rep", "--lambda", "", "--n", "2"]).unwrap();
        assert!(ok);
        assert_eq!(v["sigma"][0][0][0], "nu");
        let k: ScalarFraction = v["kappa"][0][0][0].as_str().unwrap().parse().unwrap();
        let expected: ScalarFraction = "(q - q^-1 + nu^-1 - nu)/(q - q^-1)".parse().unwrap();
        assert!(k.cross_eq(&expected));
    }

    #[test]
    fn verify_three_symbolic() {
        let (v, ok) = run_json(&["verify", "--n", "3", "--mode", "symbolic"]).unwrap();
        assert!(ok);
        assert_eq!(v["results"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn rational_mode_rejects_non_generic_point() {
        assert!(matches!(
            run_json(&["verify", "--n", "2", "--mode", "rational", "--q", "1"]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn identical_runs_are_identical() {
        let cli = Cli::try_parse_from(["bmw", "hamiltonian", "--n", "3", "--mode", "rational"]).unwrap();
        assert_eq!(run(&cli).unwrap(), run(&cli).unwrap());
    }
}
