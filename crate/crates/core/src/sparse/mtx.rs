use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::csr::CsrMatrix;
use crate::error::{KrylovError, Result};

/// Reads a real (or integer) coordinate Matrix Market file, `general` or
/// `symmetric`. Symmetric files have their off-diagonal entries mirrored.
pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<CsrMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_matrix_market(&text).map_err(|(line, message)| KrylovError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    })
}

fn parse_matrix_market(text: &str) -> std::result::Result<CsrMatrix, (usize, String)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or((1, "empty file".to_string()))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err((
            1,
            "expected '%%MatrixMarket matrix coordinate real general|symmetric'".into(),
        ));
    }
    if tokens[2] != "coordinate" {
        return Err((1, format!("unsupported format '{}'", tokens[2])));
    }
    if tokens[3] != "real" && tokens[3] != "integer" {
        return Err((1, format!("unsupported field '{}'", tokens[3])));
    }
    let symmetric = match tokens[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err((1, format!("unsupported symmetry '{other}'"))),
    };

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = data.next().ok_or((1, "missing size line".to_string()))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| (size_line, format!("bad integer '{t}'"))))
        .collect::<std::result::Result<_, _>>()?;
    let &[rows, cols, nnz] = dims.as_slice() else {
        return Err((size_line, "size line must have three integers".into()));
    };
    if rows != cols {
        return Err((size_line, format!("matrix is not square ({rows}x{cols})")));
    }

    let mut triplets = Vec::with_capacity(if symmetric { 2 * nnz } else { nnz });
    let mut seen = 0;
    for (line, entry) in data {
        if seen == nnz {
            return Err((line, format!("more than the declared {nnz} entries")));
        }
        let parts: Vec<&str> = entry.split_whitespace().collect();
        if parts.len() != 3 {
            return Err((line, "entry must be 'row col value'".into()));
        }
        let index = |t: &str| -> std::result::Result<usize, (usize, String)> {
            let k: usize = t.parse().map_err(|_| (line, format!("bad index '{t}'")))?;
            if k == 0 || k > rows {
                return Err((line, format!("index {k} outside 1..={rows}")));
            }
            Ok(k - 1)
        };
        let (i, j) = (index(parts[0])?, index(parts[1])?);
        let v: f64 = parts[2]
            .parse()
            .map_err(|_| (line, format!("bad value '{}'", parts[2])))?;
        if !v.is_finite() {
            return Err((line, "non-finite value".into()));
        }
        triplets.push((i, j, v));
        if symmetric && i != j {
            triplets.push((j, i, v));
        }
        seen += 1;
    }
    if seen != nnz {
        return Err((text.lines().count(), format!("expected {nnz} entries, found {seen}")));
    }
    CsrMatrix::from_triplets(rows, &triplets).map_err(|e| (0, e.to_string()))
}

/// Writes `a` as a `general` coordinate file with 17 significant digits, so
/// reading it back reproduces every value bit for bit.
pub fn write_matrix_market(a: &CsrMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(out, "{} {} {}", a.n(), a.n(), a.nnz())?;
    for (i, j, v) in a.iter() {
        writeln!(out, "{} {} {:.16e}", i + 1, j + 1, v)?;
    }
    out.flush()?;
    Ok(())
}
