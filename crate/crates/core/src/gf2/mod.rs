// SPDX-License-Identifier: Apache-2.0

//! Exact linear algebra over GF(2) on bit-packed rows.

mod frobenius;
mod matrix;
mod poly;
mod solve;
mod vector;

use thiserror::Error;

pub use frobenius::{
    characteristic_polynomial, conjugator, frobenius_form, local_minimal_polynomial,
    minimal_polynomial, FrobeniusForm,
};
pub use matrix::BinMatrix;
pub use poly::Gf2Poly;
pub use solve::{null_space, solve};
pub use vector::BinVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Parses the matrix text format: optional `#` comment lines, then one line
/// of `0`/`1` characters per row, all rows of equal length.
pub fn parse_matrix(text: &str) -> Result<BinMatrix, Gf2Error> {
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(bad) = line.chars().find(|c| *c != '0' && *c != '1') {
            return Err(Gf2Error::Parse {
                line: idx + 1,
                message: format!("unexpected character {bad:?} in matrix row"),
            });
        }
        if let Some(&(_, first)) = rows.first() {
            if first.len() != line.len() {
                return Err(Gf2Error::Parse {
                    line: idx + 1,
                    message: format!(
                        "ragged row: expected {} columns, found {}",
                        first.len(),
                        line.len()
                    ),
                });
            }
        }
        rows.push((idx + 1, line));
    }
    if rows.is_empty() {
        return Err(Gf2Error::Parse {
            line: text.lines().count().max(1),
            message: "no matrix rows found".into(),
        });
    }
    let lines: Vec<&str> = rows.iter().map(|(_, r)| *r).collect();
    Ok(BinMatrix::from_rows(&lines))
}

/// Inverse of [`parse_matrix`] (without comments).
pub fn format_matrix(m: &BinMatrix) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments() {
        let m = parse_matrix("# prefix\n100\n110\n\n111\n").unwrap();
        assert_eq!(m, BinMatrix::from_fn(3, 3, |i, j| j <= i));
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        let err = parse_matrix("10\n110\n").unwrap_err();
        assert_eq!(
            err,
            Gf2Error::Parse {
                line: 2,
                message: "ragged row: expected 2 columns, found 3".into()
            }
        );
        assert!(parse_matrix("1x\n").is_err());
        assert!(parse_matrix("# nothing\n").is_err());
    }
}
