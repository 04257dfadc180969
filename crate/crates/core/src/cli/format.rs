//! Matrix files: JSON `{"n": 3, "data": [[...], ...], "factor": [[...], ...]}`
//! or whitespace-separated text (n, then n² row-major values). A JSON file
//! may omit `data` when it carries a factor; the matrix is then VVᵀ.

use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::factor::NonnegFactor;
use crate::numkern::SymMat;

/// Relative asymmetry accepted in `data`.
pub const SYM_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub matrix: SymMat,
    pub factor: Option<NonnegFactor>,
    pub sha256: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    n: usize,
    #[serde(default)]
    data: Option<Value>,
    #[serde(default)]
    factor: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    #[allow(dead_code)]
    comment: Option<String>,
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn rows_from_value(n: usize, data: &Value) -> Result<Vec<Vec<f64>>, String> {
    let num = |v: &Value| v.as_f64().ok_or_else(|| format!("non-numeric entry {v}"));
    let arr = data.as_array().ok_or("`data` must be an array")?;
    if arr.len() == n * n && arr.iter().all(|v| v.is_number()) {
        let flat = arr.iter().map(num).collect::<Result<Vec<_>, _>>()?;
        return Ok(flat.chunks(n).map(|c| c.to_vec()).collect());
    }
    if arr.len() != n {
        return Err(format!("`data` has {} rows, expected {n}", arr.len()));
    }
    arr.iter()
        .map(|row| {
            let row = row.as_array().ok_or("`data` rows must be arrays")?;
            if row.len() != n {
                return Err(format!("row of length {}, expected {n}", row.len()));
            }
            row.iter().map(num).collect()
        })
        .collect()
}

fn parse_text(text: &str) -> Result<(usize, Vec<Vec<f64>>), String> {
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or("empty file")?
        .parse()
        .map_err(|_| "first token must be the order n")?;
    let vals = tokens
        .map(|t| t.parse::<f64>().map_err(|_| format!("bad number `{t}`")))
        .collect::<Result<Vec<_>, _>>()?;
    if n == 0 || vals.len() != n * n {
        return Err(format!("expected {} values after n = {n}, found {}", n * n, vals.len()));
    }
    Ok((n, vals.chunks(n).map(|c| c.to_vec()).collect()))
}

/// Parses file contents. Errors are data errors (exit 65).
pub fn parse_matrix_file(bytes: &[u8]) -> Result<MatrixFile, String> {
    let text = std::str::from_utf8(bytes).map_err(|_| "file is not UTF-8")?;
    let (n, rows, factor) = if text.trim_start().starts_with('{') {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| format!("invalid JSON matrix file: {e}"))?;
        if raw.n == 0 {
            return Err("n must be positive".into());
        }
        let rows = match &raw.data {
            Some(d) => Some(rows_from_value(raw.n, d)?),
            None if raw.factor.is_some() => None,
            None => return Err("file needs `data` or `factor`".into()),
        };
        (raw.n, rows, raw.factor)
    } else {
        let (n, rows) = parse_text(text)?;
        (n, Some(rows), None)
    };
    let factor = match factor {
        None => None,
        Some(f) => {
            if f.len() != n {
                return Err(format!("`factor` has {} rows, expected {n}", f.len()));
            }
            let p = f.first().map_or(0, |r| r.len());
            if f.iter().any(|r| r.len() != p) {
                return Err("`factor` rows have different lengths".into());
            }
            let cols = (0..p).map(|j| f.iter().map(|r| r[j]).collect()).collect();
            Some(NonnegFactor::new(n, cols).map_err(|e| e.to_string())?)
        }
    };
    let matrix = match (rows, &factor) {
        (Some(rows), _) => SymMat::from_rows(&rows, SYM_TOL).map_err(|e| e.to_string())?,
        (None, Some(v)) => v.product(),
        (None, None) => unreachable!("checked above"),
    };
    Ok(MatrixFile {
        matrix,
        factor,
        sha256: hex_digest(bytes),
    })
}

/// n×p rows of a factor, the layout used in files and reports.
pub fn factor_rows(v: &NonnegFactor) -> Vec<Vec<f64>> {
    (0..v.n()).map(|i| v.columns().iter().map(|c| c[i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_nested_and_flat() {
        let f = parse_matrix_file(br#"{"n": 2, "data": [[2, 1], [1, 2]]}"#).unwrap();
        assert_eq!(f.matrix.get(0, 1), 1.0);
        let g = parse_matrix_file(br#"{"n": 2, "data": [2, 1, 1, 2], "factor": [[1, 1, 0], [1, 0, 1]]}"#).unwrap();
        assert_eq!(g.matrix, f.matrix);
        assert_eq!(g.factor.unwrap().residual(&f.matrix), 0.0);
    }

    #[test]
    fn factor_only() {
        let f = parse_matrix_file(br#"{"n": 2, "factor": [[1, 0], [0, 1]]}"#).unwrap();
        assert_eq!(f.matrix, SymMat::identity(2));
    }

    #[test]
    fn plain_text() {
        let f = parse_matrix_file(b"2\n 1 0\n 0 1\n").unwrap();
        assert_eq!(f.matrix, SymMat::identity(2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_matrix_file(br#"{"n": 2, "data": [[1, 2], [3, 1]]}"#).is_err());
        assert!(parse_matrix_file(br#"{"n": 2, "data": [[1, 2]]}"#).is_err());
        assert!(parse_matrix_file(br#"{"n": 1, "data": [[1]], "factor": [[-1]]}"#).is_err());
        assert!(parse_matrix_file(b"3 1 2").is_err());
        assert!(parse_matrix_file(b"").is_err());
        assert!(parse_matrix_file(br#"{"n": 2}"#).is_err());
    }
}
