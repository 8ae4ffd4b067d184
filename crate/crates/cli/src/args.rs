use std::path::PathBuf;

use anyhow::{bail, ensure};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kryest::bounds::DEFAULT_T_SAMPLES;
use kryest::dense_funm::{FunctionKind, MatrixFunctionSpec};
use kryest::harness::Method;
use kryest::krylov::Estimator;
use kryest::sparse::CsrMatrix;
use kryest::vector::{random_unit_vector, DEFAULT_SEED};

use crate::source::MatrixSource;

#[derive(Parser, Debug)]
#[command(
    name = "kryest",
    version,
    about = "Krylov approximations to f(-tau A) v with error estimates and bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reproduce one of the built-in convergence experiments.
    Experiment(ExperimentArgs),
    /// Approximate f(-tau A) v and write the vector and its convergence trace.
    Approx(RunArgs),
    /// Tabulate the error bounds of the exponential per Krylov step.
    Bounds(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    /// Symmetric diagonal matrix, exponential.
    Ex1,
    /// Nonsymmetric convection-diffusion matrix, exponential.
    Ex2,
    /// Cosine and sine on both matrices.
    Ex3,
    /// Restarted Arnoldi on the convection-diffusion matrix.
    Ex4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StartVector {
    /// Uniform on [0, 1) from the seeded generator, normalized.
    Random,
    /// All ones.
    Ones,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NodeChoice {
    /// Every node equals h_11.
    Confluent,
    /// Eigenvalues of the projected matrix.
    Ritz,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Stopping tolerance on the relative error.
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Maximum Krylov dimension, or number of cycles for restarted runs.
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Seed for random start vectors.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Compare against a dense reference solution.
    #[arg(long, value_enum)]
    pub oracle: Option<Switch>,
    /// Estimate used for stopping when no reference is available.
    #[arg(long, default_value = "xi1", value_parser = parse_estimator)]
    pub estimator: Estimator,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub name: ExperimentName,
    /// Run the nonsymmetric experiments on the full 14^3 grid instead of 8^3.
    #[arg(long)]
    pub paper_scale: bool,
    /// Override the tau values.
    #[arg(long, value_delimiter = ',')]
    pub tau: Option<Vec<f64>>,
    /// Function for the restarted experiment.
    #[arg(long, default_value = "exp", value_parser = parse_function)]
    pub function: FunctionKind,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Matrix Market file, or gen:diag:N:a:b, gen:convdiff:n:delta1:delta2, gen:identity:N.
    #[arg(long)]
    pub matrix: String,
    #[arg(long, default_value = "exp", value_parser = parse_function)]
    pub function: FunctionKind,
    /// Comma-separated tau values.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub tau: Vec<f64>,
    /// arnoldi, lanczos or restart:<m>; defaults to lanczos for symmetric matrices.
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    #[arg(long, value_enum, default_value_t = StartVector::Random)]
    pub vector: StartVector,
    /// Node policy for the error-expansion table.
    #[arg(long, value_enum, default_value_t = NodeChoice::Confluent)]
    pub nodes: NodeChoice,
    /// Number of error-expansion terms to tabulate at the final step (0 disables).
    #[arg(long, default_value_t = 0)]
    pub terms: usize,
    /// Samples of the maximum over t in the general-matrix bounds.
    #[arg(long, default_value_t = DEFAULT_T_SAMPLES)]
    pub nt: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn parse_function(s: &str) -> Result<FunctionKind, String> {
    s.parse().map_err(|e: kryest::KrylovError| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: kryest::KrylovError| e.to_string())
}

fn parse_estimator(s: &str) -> Result<Estimator, String> {
    s.parse().map_err(|e: kryest::KrylovError| e.to_string())
}

impl CommonArgs {
    pub fn validate(&self) -> anyhow::Result<()> {
        ensure!(self.eps > 0.0, "--eps must be positive, got {}", self.eps);
        if self.max_dim == Some(0) {
            bail!("--max-dim must be at least 1");
        }
        Ok(())
    }

    pub fn oracle_or(&self, default: bool) -> bool {
        self.oracle.map_or(default, |s| s == Switch::On)
    }
}

pub fn check_taus(taus: &[f64]) -> anyhow::Result<()> {
    ensure!(!taus.is_empty(), "at least one tau is required");
    for &tau in taus {
        ensure!(
            tau.is_finite() && tau >= 0.0,
            "tau must be finite and nonnegative, got {tau}"
        );
    }
    Ok(())
}

impl RunArgs {
    pub fn validate(&self) -> anyhow::Result<()> {
        self.common.validate()?;
        check_taus(&self.tau)?;
        ensure!(self.nt >= 2, "--nt must be at least 2");
        Ok(())
    }

    pub fn source(&self) -> anyhow::Result<MatrixSource> {
        self.matrix.parse()
    }

    pub fn specs(&self) -> Vec<MatrixFunctionSpec> {
        self.tau
            .iter()
            .map(|&tau| MatrixFunctionSpec {
                kind: self.function,
                tau,
            })
            .collect()
    }

    /// The requested method, or Lanczos for symmetric and Arnoldi otherwise.
    pub fn method_for(&self, a: &CsrMatrix) -> Method {
        self.method.unwrap_or(if a.is_symmetric() {
            Method::Lanczos
        } else {
            Method::Arnoldi
        })
    }

    pub fn start_vector(&self, n: usize) -> Vec<f64> {
        match self.vector {
            StartVector::Random => random_unit_vector(n, self.common.seed),
            StartVector::Ones => vec![1.0; n],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        Cli::try_parse_from(std::iter::once("kryest").chain(args.iter().copied()))
            .unwrap()
            .command
    }

    #[test]
    fn approx_defaults() {
        let Command::Approx(a) = parse(&["approx", "--matrix", "gen:identity:3"]) else {
            panic!()
        };
        assert_eq!(a.tau, vec![1.0]);
        assert_eq!(a.common.eps, 1e-12);
        assert_eq!(a.nt, DEFAULT_T_SAMPLES);
        assert_eq!(a.common.seed, DEFAULT_SEED);
        assert!(!a.common.oracle_or(false));
        assert!(a.validate().is_ok());
    }

    #[test]
    fn lists_and_methods_parse() {
        let Command::Bounds(b) = parse(&[
            "bounds",
            "--matrix",
            "m.mtx",
            "--tau",
            "0.1,0.5,1",
            "--method",
            "restart:5",
            "--oracle",
            "on",
        ]) else {
            panic!()
        };
        assert_eq!(b.tau, vec![0.1, 0.5, 1.0]);
        assert_eq!(b.method, Some(Method::Restarted { block: 5 }));
        assert!(b.common.oracle_or(false));
    }

    #[test]
    fn invalid_values_are_rejected() {
        let Command::Approx(a) = parse(&["approx", "--matrix", "x", "--tau=-1"]) else {
            panic!()
        };
        assert!(a.validate().is_err());
        let Command::Approx(a) = parse(&["approx", "--matrix", "x", "--eps", "0"]) else {
            panic!()
        };
        assert!(a.validate().is_err());
        assert!(Cli::try_parse_from(["kryest", "approx", "--matrix", "x", "--function", "tan"]).is_err());
        assert!(Cli::try_parse_from(["kryest", "experiment", "ex9"]).is_err());
    }

    #[test]
    fn method_defaults_follow_symmetry() {
        let Command::Approx(a) = parse(&["approx", "--matrix", "x"]) else {
            panic!()
        };
        assert_eq!(a.method_for(&CsrMatrix::identity(3)), Method::Lanczos);
        let skew = CsrMatrix::from_triplets(2, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(a.method_for(&skew), Method::Arnoldi);
    }
}
