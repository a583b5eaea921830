//! Matrix text format and JSON encodings.
//!
//! ```text
//! field GF 7
//! 2 2
//! 1 2
//! 0 6
//! ```
//!
//! The first line is `field Q` or `field GF <p>`, the second `rows cols`,
//! followed by the row-major entries (`num` or `num/den`). A pair file is two
//! matrices back to back. `#` starts a comment.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::poly::Polynomial;

/// Parses `Q` or `GF <p>` from already-split words.
pub fn parse_field<S: AsRef<str>>(words: &[S]) -> Result<Field> {
    match words {
        [q] if q.as_ref() == "Q" => Ok(Field::rationals()),
        [gf, p] if gf.as_ref() == "GF" => {
            let p: u64 = p
                .as_ref()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid characteristic '{}'", p.as_ref())))?;
            Field::prime(p)
        }
        [word] if word.as_ref().starts_with("GF") => parse_field(&["GF", &word.as_ref()[2..]]),
        _ => Err(Error::Parse(format!(
            "expected 'Q' or 'GF <p>', got '{}'",
            words.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ")
        ))),
    }
}

struct Tokens<'a> {
    lines: Vec<Vec<&'a str>>,
    line: usize,
    col: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>())
            .filter(|l| !l.is_empty())
            .collect();
        Tokens { lines, line: 0, col: 0 }
    }

    fn at_end(&self) -> bool {
        self.line >= self.lines.len()
    }

    /// Rest of the current line as one header record.
    fn header_line(&mut self) -> Option<&[&'a str]> {
        let l = self.lines.get(self.line)?;
        let rest = &l[self.col..];
        self.line += 1;
        self.col = 0;
        Some(rest)
    }

    fn next(&mut self) -> Option<&'a str> {
        while let Some(l) = self.lines.get(self.line) {
            if let Some(t) = l.get(self.col) {
                self.col += 1;
                return Some(t);
            }
            self.line += 1;
            self.col = 0;
        }
        None
    }
}

fn parse_one(tokens: &mut Tokens<'_>) -> Result<Matrix> {
    let header = tokens.header_line().ok_or_else(|| Error::Parse("missing field header".into()))?;
    let field = match header {
        ["field", rest @ ..] => parse_field(rest)?,
        _ => return Err(Error::Parse(format!("expected 'field ...', got '{}'", header.join(" ")))),
    };
    let dims = tokens.header_line().ok_or_else(|| Error::Parse("missing dimensions".into()))?;
    let [rows, cols] = dims else {
        return Err(Error::Parse(format!("expected 'rows cols', got '{}'", dims.join(" "))));
    };
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("invalid dimension '{s}'")))
    };
    let (rows, cols) = (parse_dim(rows)?, parse_dim(cols)?);
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let tok = tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {} entries, found {}", rows * cols, data.len())))?;
        data.push(field.parse_scalar(tok)?);
    }
    if tokens.col != 0 {
        if tokens.lines.get(tokens.line).is_some_and(|l| tokens.col < l.len()) {
            return Err(Error::Parse("trailing entries after matrix".into()));
        }
        tokens.line += 1;
        tokens.col = 0;
    }
    Matrix::new(field, rows, cols, data)
}

/// Every matrix in `text`, in order.
pub fn parse_matrices(text: &str) -> Result<Vec<Matrix>> {
    let mut tokens = Tokens::new(text);
    let mut out = Vec::new();
    while !tokens.at_end() {
        out.push(parse_one(&mut tokens)?);
    }
    Ok(out)
}

/// Exactly one matrix.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    match <[Matrix; 1]>::try_from(parse_matrices(text)?) {
        Ok([m]) => Ok(m),
        Err(v) => Err(Error::Parse(format!("expected one matrix, found {}", v.len()))),
    }
}

/// Exactly two matrices.
pub fn parse_pair(text: &str) -> Result<(Matrix, Matrix)> {
    match <[Matrix; 2]>::try_from(parse_matrices(text)?) {
        Ok([a, b]) => Ok((a, b)),
        Err(v) => Err(Error::Parse(format!("expected two matrices, found {}", v.len()))),
    }
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = format!("field {}\n{} {}\n", m.field(), m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

/// Nested arrays of exact entry strings.
pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_json).collect()))
            .collect(),
    )
}

/// Ascending coefficient list.
pub fn poly_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_json).collect())
}

/// `[c0, c1, ...]`, the same ascending coefficient list as text.
pub fn poly_list(p: &Polynomial) -> String {
    let c: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    format!("[{}]", c.join(", "))
}

pub fn matrix_from_json(field: Field, v: &Value) -> Result<Matrix> {
    let bad = || Error::Parse("matrix json must be an array of arrays of strings".into());
    let rows = v.as_array().ok_or_else(bad)?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| field.parse_scalar(x.as_str().ok_or_else(bad)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}
