use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use kryest::sparse::{
    build_convection_diffusion, build_diag_spectrum, read_matrix_market, CsrMatrix, SpectralInterval,
};

/// Where the matrix comes from: a Matrix Market file or a built-in generator.
///
/// Generators are written `gen:diag:N:a:b`, `gen:convdiff:n:delta1:delta2`
/// and `gen:identity:N`.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixSource {
    File(PathBuf),
    Diagonal { n: usize, a: f64, b: f64 },
    ConvectionDiffusion { n: usize, delta1: f64, delta2: f64 },
    Identity { n: usize },
}

impl MatrixSource {
    pub fn build(&self) -> anyhow::Result<CsrMatrix> {
        Ok(match self {
            MatrixSource::File(path) => {
                read_matrix_market(path).with_context(|| format!("reading {}", path.display()))?
            }
            MatrixSource::Diagonal { n, a, b } => build_diag_spectrum(*n, SpectralInterval::new(*a, *b)?)?,
            MatrixSource::ConvectionDiffusion { n, delta1, delta2 } => {
                build_convection_diffusion(*n, *delta1, *delta2)?
            }
            MatrixSource::Identity { n } => CsrMatrix::identity(*n),
        })
    }

    /// Short label for file names.
    pub fn slug(&self) -> String {
        match self {
            MatrixSource::File(path) => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "matrix".into()),
            MatrixSource::Diagonal { n, .. } => format!("diag{n}"),
            MatrixSource::ConvectionDiffusion { n, .. } => format!("convdiff{n}"),
            MatrixSource::Identity { n } => format!("identity{n}"),
        }
    }
}

impl FromStr for MatrixSource {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let Some(spec) = s.strip_prefix("gen:") else {
            return Ok(MatrixSource::File(PathBuf::from(s)));
        };
        let parts: Vec<&str> = spec.split(':').collect();
        let int = |i: usize| -> anyhow::Result<usize> {
            parts[i]
                .parse()
                .with_context(|| format!("bad integer {:?} in {s:?}", parts[i]))
        };
        let real = |i: usize| -> anyhow::Result<f64> {
            parts[i]
                .parse()
                .with_context(|| format!("bad number {:?} in {s:?}", parts[i]))
        };
        match (parts[0], parts.len()) {
            ("diag", 4) => Ok(MatrixSource::Diagonal {
                n: int(1)?,
                a: real(2)?,
                b: real(3)?,
            }),
            ("convdiff", 4) => Ok(MatrixSource::ConvectionDiffusion {
                n: int(1)?,
                delta1: real(2)?,
                delta2: real(3)?,
            }),
            ("identity", 2) => Ok(MatrixSource::Identity { n: int(1)? }),
            _ => bail!(
                "unknown generator {s:?}; expected gen:diag:N:a:b, gen:convdiff:n:delta1:delta2 or gen:identity:N"
            ),
        }
    }
}

impl fmt::Display for MatrixSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSource::File(path) => write!(f, "{}", path.display()),
            MatrixSource::Diagonal { n, a, b } => write!(f, "gen:diag:{n}:{a}:{b}"),
            MatrixSource::ConvectionDiffusion { n, delta1, delta2 } => {
                write!(f, "gen:convdiff:{n}:{delta1}:{delta2}")
            }
            MatrixSource::Identity { n } => write!(f, "gen:identity:{n}"),
        }
    }
}
