//! File formats and the group shorthand grammar used by the command line.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{EngineError, MultiplicativeUnitary};
use crate::group::{CayleyFile, FiniteGroup, GroupError};
use crate::linalg::{ComplexMatrix, LinalgError};
use crate::models::GroupFunction;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(
        "unknown group `{0}`: expected cyclic:<n>, dihedral:<m>, symmetric:<k>, s3, s4, trivial, product:<a>x<b> or a Cayley table file"
    )]
    UnknownGroup(String),
    #[error("unitary file declares n = {n} but the matrix is {rows}x{cols}")]
    UnitaryShape { n: usize, rows: usize, cols: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Dense complex matrix as separate real and imaginary row arrays. `n` is
/// the dimension of `H`: an operator on `H` is `n×n`, one on `H ⊗ H` is
/// `n²×n²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(n: usize, m: &ComplexMatrix) -> Self {
        let (re, im) = m.to_parts();
        Self { n, re, im }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, LinalgError> {
        ComplexMatrix::from_parts(&self.re, &self.im)
    }

    /// Interprets the file as `W` on `H ⊗ H`.
    pub fn to_unitary(&self) -> Result<MultiplicativeUnitary, IoError> {
        let m = self.to_matrix()?;
        let expected = self.n * self.n;
        if self.n == 0 || m.shape() != (expected, expected) {
            return Err(IoError::UnitaryShape {
                n: self.n,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(MultiplicativeUnitary::from_dense(self.n, m)?)
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    serde_json::from_str(&read(path)?).map_err(|source| IoError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_unitary(path: &Path) -> Result<MultiplicativeUnitary, IoError> {
    parse_json::<MatrixFile>(path)?.to_unitary()
}

pub fn read_function(path: &Path) -> Result<GroupFunction, IoError> {
    parse_json(path)
}

pub fn read_cayley(path: &Path) -> Result<FiniteGroup, IoError> {
    Ok(parse_json::<CayleyFile>(path)?.into_group()?)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Parses the group shorthand; anything that is not shorthand is read as
/// a Cayley table file.
pub fn parse_group(spec: &str) -> Result<FiniteGroup, IoError> {
    if let Some(group) = parse_shorthand(spec)? {
        return Ok(group);
    }
    let path = Path::new(spec);
    if path.is_file() {
        return read_cayley(path);
    }
    Err(IoError::UnknownGroup(spec.to_string()))
}

fn parse_shorthand(spec: &str) -> Result<Option<FiniteGroup>, IoError> {
    let spec = spec.trim();
    let number = |s: &str| s.parse::<usize>().map_err(|_| IoError::UnknownGroup(spec.to_string()));
    let group = match spec {
        "trivial" => FiniteGroup::trivial(),
        "s3" => FiniteGroup::symmetric(3)?,
        "s4" => FiniteGroup::symmetric(4)?,
        _ => {
            let Some((kind, arg)) = spec.split_once(':') else {
                return Ok(None);
            };
            match kind {
                "cyclic" => FiniteGroup::cyclic(number(arg)?)?,
                "dihedral" => FiniteGroup::dihedral(number(arg)?)?,
                "symmetric" => FiniteGroup::symmetric(number(arg)?)?,
                "product" => return parse_product(arg).map(Some),
                _ => return Ok(None),
            }
        }
    };
    Ok(Some(group))
}

// Factors may themselves contain `x` (nested products), so every split
// point is tried and the first one where both halves parse wins.
fn parse_product(arg: &str) -> Result<FiniteGroup, IoError> {
    let mut last_error = None;
    for (i, _) in arg.match_indices('x') {
        let (left, right) = (&arg[..i], &arg[i + 1..]);
        match (parse_group_strict(left), parse_group_strict(right)) {
            (Ok(g), Ok(h)) => return Ok(FiniteGroup::direct_product(&g, &h)?),
            (Err(e), _) | (_, Err(e)) => last_error = Some(e),
        }
    }
    Err(last_error.unwrap_or_else(|| IoError::UnknownGroup(format!("product:{arg}"))))
}

fn parse_group_strict(spec: &str) -> Result<FiniteGroup, IoError> {
    parse_shorthand(spec)?.ok_or_else(|| IoError::UnknownGroup(spec.to_string()))
}
