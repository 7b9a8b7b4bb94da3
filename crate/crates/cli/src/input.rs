//! Matrix input: plain text or the structured JSON layout, from a file, from
//! standard input (`-`) or inline on the command line.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use quasicartan_core::{Int, IntMatrix};

/// Parses plain text or JSON. Plain text has one row per line with
/// whitespace- or comma-separated integers; `;` also ends a row, `#` starts a
/// comment and blank lines are skipped. JSON input is recognised by a
/// leading `{`.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).context("invalid JSON matrix document");
    }
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for chunk in line.split(';') {
            let tokens: Vec<&str> =
                chunk.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
            if tokens.is_empty() {
                continue;
            }
            let row = tokens
                .iter()
                .map(|t| t.parse::<Int>().with_context(|| format!("line {}: {t:?} is not an integer", lineno + 1)))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
    }
    if rows.is_empty() {
        bail!("no matrix rows found");
    }
    Ok(IntMatrix::from_rows(rows)?)
}

/// Plain-text form accepted back by [`parse_matrix`].
pub fn emit_matrix(m: &IntMatrix) -> String {
    m.to_string()
}

/// Reads a matrix argument: `-` is standard input, an existing path is read
/// as a file, anything else is parsed inline (`"2 1; 1 2"`).
pub fn read_matrix_arg(arg: &str) -> Result<IntMatrix> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        return parse_matrix(&text).context("parsing standard input");
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_matrix(&text).with_context(|| format!("parsing {arg}"));
    }
    let looks_inline =
        arg.chars().all(|c| c.is_ascii_digit() || " \t\n,;-+".contains(c)) || arg.trim_start().starts_with('{');
    if !looks_inline {
        bail!("{arg}: no such file, and not an inline matrix");
    }
    parse_matrix(arg).with_context(|| format!("parsing inline matrix {arg:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_text_with_comments() {
        let m = parse_matrix("# companion\n 2 -1\n\n-1   2  # second row\n").unwrap();
        assert_eq!(m, IntMatrix::from_rows([[2, -1], [-1, 2]]).unwrap());
    }

    #[test]
    fn inline_rows() {
        assert_eq!(parse_matrix("0 1; -1 0").unwrap(), IntMatrix::from_rows([[0, 1], [-1, 0]]).unwrap());
        assert_eq!(parse_matrix("0,1;-1,0").unwrap(), IntMatrix::from_rows([[0, 1], [-1, 0]]).unwrap());
    }

    #[test]
    fn json_document() {
        let m = parse_matrix(r#"{"n": 2, "entries": [[2, 1], [1, 2]]}"#).unwrap();
        assert_eq!(m, IntMatrix::from_rows([[2, 1], [1, 2]]).unwrap());
        assert!(parse_matrix(r#"{"n": 3, "entries": [[2, 1], [1, 2]]}"#).is_err());
    }

    #[test]
    fn big_entries() {
        let m = parse_matrix("123456789012345678901234567890 0\n0 2").unwrap();
        assert!(!m.get(0, 0).is_small());
        assert_eq!(parse_matrix(&emit_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("# only a comment").is_err());
        assert!(parse_matrix("1 2\n3").is_err());
        assert!(parse_matrix("1 x\n3 4").is_err());
        assert!(parse_matrix("1 2 3\n4 5 6").is_err());
    }
}
