//! The plain-text generator file format.
//!
//! Lines starting with `#` are comments and blank lines are ignored. Every
//! other line is one generator row written with the characters `0` and `1`;
//! spaces inside a row are allowed and skipped.

use std::fs;
use std::path::Path;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, GF2Matrix};

pub fn parse_matrix(text: &str) -> Result<GF2Matrix> {
    let mut rows: Vec<BitVector> = Vec::new();
    let mut cols = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut bits = Vec::with_capacity(line.len());
        for ch in line.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
        match cols {
            None => cols = Some(bits.len()),
            Some(n) if n != bits.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("row has length {}, expected {n}", bits.len()),
                })
            }
            _ => {}
        }
        rows.push(BitVector::from_bools(&bits));
    }
    let Some(cols) = cols else {
        return Err(Error::Parse {
            line: 0,
            msg: "no generator rows".into(),
        });
    };
    GF2Matrix::from_rows(cols, rows)
}

pub fn parse_code(text: &str) -> Result<LinearCode> {
    Ok(LinearCode::from_generator(&parse_matrix(text)?))
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<GF2Matrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })?;
    parse_matrix(&text)
}

pub fn read_code(path: impl AsRef<Path>) -> Result<LinearCode> {
    Ok(LinearCode::from_generator(&read_matrix(path)?))
}

/// One row per line, no comments.
pub fn format_matrix(m: &GF2Matrix) -> String {
    let mut out = String::with_capacity(m.nrows() * (m.ncols() + 1));
    for r in m.rows() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

pub fn write_matrix(path: impl AsRef<Path>, m: &GF2Matrix, comment: Option<&str>) -> std::io::Result<()> {
    let mut text = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            text.push_str("# ");
            text.push_str(line);
            text.push('\n');
        }
    }
    text.push_str(&format_matrix(m));
    fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_spaces() {
        let m = parse_matrix("# e8\n1111 1111\n\n0000 1111\n").unwrap();
        assert_eq!((m.nrows(), m.ncols()), (2, 8));
        assert_eq!(format_matrix(&m), "11111111\n00001111\n");
    }

    #[test]
    fn rejects_ragged_rows() {
        assert_eq!(
            parse_matrix("110\n11\n"),
            Err(Error::Parse {
                line: 2,
                msg: "row has length 2, expected 3".into()
            })
        );
        assert!(parse_matrix("# nothing\n").is_err());
        assert!(parse_matrix("10x\n").is_err());
    }
}
