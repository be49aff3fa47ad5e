//! Plain-text square matrices: a header line `n`, then `n` rows of `n` rationals.

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, Mat};

pub fn parse_matrix(text: &str) -> Result<Mat> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Malformed("empty matrix file".into()))?;
    let n: usize = header.trim().parse().map_err(|_| {
        Error::Malformed(format!(
            "line 1: expected a dimension, got {:?}",
            header.trim()
        ))
    })?;
    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (idx, line) in lines {
        if rows == n {
            return Err(Error::Malformed(format!(
                "line {}: more than {n} rows",
                idx + 1
            )));
        }
        let row: Vec<ExactScalar> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<ExactScalar>().map_err(|_| {
                    Error::Malformed(format!("line {}: bad rational {tok:?}", idx + 1))
                })
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "line {}: expected {n} entries, got {}",
                idx + 1,
                row.len()
            )));
        }
        entries.extend(row);
        rows += 1;
    }
    if rows != n {
        return Err(Error::Malformed(format!("expected {n} rows, got {rows}")));
    }
    Mat::new(n, n, entries)
}

pub fn format_matrix(m: &Mat) -> String {
    format!("{}\n{}", m.rows(), m)
}
