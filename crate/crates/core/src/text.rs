//! Plain-text loop format.
//!
//! ```text
//! # optional comments
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! The first non-blank, non-comment line is the order `n`, followed by `n`
//! rows of `n` space-separated 0-based entries. Row and column 0 must be the
//! identity.

use crate::error::{Error, Result};
use crate::table::LoopTable;
use std::fmt::Write as _;

pub fn parse_loop(text: &str) -> Result<LoopTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        msg: format!("expected order, found {header:?}"),
    })?;
    let mut rows = Vec::with_capacity(n);
    for (lineno, line) in lines {
        if rows.len() == n {
            return Err(Error::Parse {
                line: lineno,
                msg: "trailing data after last row".into(),
            });
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad entry {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    LoopTable::validate(&rows)
}

pub fn write_loop(q: &LoopTable) -> String {
    let n = q.order();
    let mut out = String::with_capacity(n * n * 3 + 8);
    writeln!(out, "{n}").unwrap();
    for x in 0..n {
        let row = q.row(x);
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_comments() {
        let text = "# Z3\n\n3\n0 1 2  # identity row\n1 2 0\n\n2 0 1\n";
        let q = parse_loop(text).unwrap();
        assert_eq!(write_loop(&q), "3\n0 1 2\n1 2 0\n2 0 1\n");
        assert_eq!(parse_loop(&write_loop(&q)).unwrap(), q);
    }

    #[test]
    fn malformed() {
        assert!(parse_loop("").is_err());
        assert!(parse_loop("2\n0 1\n").is_err());
        assert!(parse_loop("2\n0 1\n1 0\n1 0\n").is_err());
        assert!(parse_loop("2\n0 1\n1 x\n").is_err());
        assert_eq!(
            parse_loop("2\n1 0\n0 1\n"),
            Err(Error::NoIdentity)
        );
    }
}
