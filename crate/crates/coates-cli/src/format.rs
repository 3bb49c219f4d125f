//! Plain-text matrix files.
//!
//! Grammar: any number of comment lines starting with `%`, one header line
//! `n` (or `n m` for a rectangular matrix), then one line per row with the
//! right number of whitespace-separated tokens. Each token matches
//! `[+-]?([0-9]+(\.[0-9]+)?|[0-9]+/[1-9][0-9]*)`. Blank lines are
//! tolerated on input; [`write_matrix`] emits the canonical form.

use coates_core::{parse_rational, rational_str, Matrix, Rational};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("missing header line")]
    MissingHeader,
    #[error("bad header {0:?}: expected one or two positive integers")]
    BadHeader(String),
    #[error("row {row}: expected {expected} tokens, found {found}")]
    WrongTokenCount { row: usize, expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("unexpected content after row {rows}")]
    TrailingContent { rows: usize },
    #[error("row {row}: {source}")]
    Token {
        row: usize,
        #[source]
        source: coates_core::Error,
    },
}

fn significant_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('%'))
}

/// Parses a matrix file. Rectangular headers are accepted here; commands
/// that need a square matrix reject them at load time.
pub fn parse_matrix(text: &str) -> Result<Matrix, FormatError> {
    let mut lines = significant_lines(text);
    let header = lines.next().ok_or(FormatError::MissingHeader)?;

    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|tok| tok.parse::<usize>().ok().filter(|&d| d > 0))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| FormatError::BadHeader(header.to_string()))?;
    let (rows, cols) = match dims.as_slice() {
        [n] => (*n, *n),
        [n, m] => (*n, *m),
        _ => return Err(FormatError::BadHeader(header.to_string())),
    };

    let mut entries: Vec<Rational> = Vec::with_capacity(rows * cols);
    let mut found = 0;
    for line in lines {
        if found == rows {
            return Err(FormatError::TrailingContent { rows });
        }
        found += 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(FormatError::WrongTokenCount {
                row: found,
                expected: cols,
                found: tokens.len(),
            });
        }
        for tok in tokens {
            entries.push(
                parse_rational(tok).map_err(|source| FormatError::Token { row: found, source })?,
            );
        }
    }
    if found != rows {
        return Err(FormatError::MissingRows { expected: rows, found });
    }
    Ok(Matrix::new(rows, cols, entries).expect("token count checked per row"))
}

/// Canonical text form: header, then one space-separated row per line.
/// Re-parsing the output reproduces the matrix exactly.
pub fn write_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    if m.rows() == m.cols() {
        out.push_str(&m.rows().to_string());
    } else {
        out.push_str(&format!("{} {}", m.rows(), m.cols()));
    }
    out.push('\n');
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(rational_str).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_square_file_with_comments() {
        let text = "% worked example, order 3\n3\n1 2 0\n2 3 -1\n0 -1 4\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(m.entry(1, 2), &Rational::from_integer((-1).into()));
    }

    #[test]
    fn parses_rationals_and_decimals() {
        let m = parse_matrix("2\n1/2 -0.25\n3 -8/2\n").unwrap();
        assert_eq!(m.entry(0, 0), &Rational::new(1.into(), 2.into()));
        assert_eq!(m.entry(0, 1), &Rational::new((-1).into(), 4.into()));
        assert_eq!(m.entry(1, 1), &Rational::from_integer((-4).into()));
    }

    #[test]
    fn parses_rectangular_header() {
        let m = parse_matrix("2 3\n1 2 3\n4 5 6\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
    }

    #[test]
    fn rejects_structural_problems() {
        assert!(matches!(parse_matrix(""), Err(FormatError::MissingHeader)));
        assert!(matches!(parse_matrix("% only\n"), Err(FormatError::MissingHeader)));
        assert!(matches!(parse_matrix("0\n"), Err(FormatError::BadHeader(_))));
        assert!(matches!(parse_matrix("x\n1\n"), Err(FormatError::BadHeader(_))));
        assert!(matches!(parse_matrix("1 2 3\n"), Err(FormatError::BadHeader(_))));
        assert!(matches!(
            parse_matrix("2\n1 2\n"),
            Err(FormatError::MissingRows { expected: 2, found: 1 })
        ));
        assert!(matches!(
            parse_matrix("1\n1\n2\n"),
            Err(FormatError::TrailingContent { .. })
        ));
        assert!(matches!(
            parse_matrix("2\n1 2 3\n4 5\n"),
            Err(FormatError::WrongTokenCount { row: 1, expected: 2, found: 3 })
        ));
        assert!(matches!(
            parse_matrix("1\n1/0\n"),
            Err(FormatError::Token { row: 1, .. })
        ));
    }

    #[test]
    fn write_then_parse_round_trips() {
        let text = "3\n1 1/2 -0.25\n2 3 -1\n0 -1 4\n";
        let m = parse_matrix(text).unwrap();
        let written = write_matrix(&m);
        assert_eq!(parse_matrix(&written).unwrap(), m);
        assert_eq!(written, "3\n1 1/2 -1/4\n2 3 -1\n0 -1 4\n");
    }
}
