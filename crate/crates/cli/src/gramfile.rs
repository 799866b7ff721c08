//! Gram files: the dimension `n` followed by `n` rows of `n` integers,
//! separated by any whitespace.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use perflat::lattice::GramMatrix;
use perflat::matrix::Matrix;

use crate::error::{CliError, Result};

pub fn parse_gram(text: &str) -> Result<GramMatrix> {
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| CliError::Parse("empty Gram file".into()))?
        .parse()
        .map_err(|e| CliError::Parse(format!("dimension: {e}")))?;
    if n == 0 {
        return Err(CliError::Parse("dimension must be positive".into()));
    }
    let mut data = Vec::with_capacity(n * n);
    for tok in tokens {
        let v: BigInt = tok
            .parse()
            .map_err(|_| CliError::Parse(format!("not an integer: {tok:?}")))?;
        data.push(v);
    }
    if data.len() != n * n {
        return Err(CliError::Parse(format!("expected {} entries, found {}", n * n, data.len())));
    }
    Ok(GramMatrix::from_integers(&Matrix::new(n, n, data)?)?)
}

pub fn read_gram(path: &Path) -> Result<GramMatrix> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_gram(&text)
}

/// Integral entries of `g`; rational forms are rejected.
pub fn integral_entries(g: &GramMatrix) -> Result<Matrix<BigInt>> {
    if !g.is_integral() {
        return Err(CliError::Usage("Gram file output needs an integral form".into()));
    }
    Ok(g.entries().map(|x| x.to_integer()))
}

pub fn format_gram(m: &Matrix<BigInt>) -> String {
    let mut out = format!("{}\n", m.rows());
    for row in m.iter_rows() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_gram(path: &Path, g: &GramMatrix) -> Result<()> {
    fs::write(path, format_gram(&integral_entries(g)?)).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
