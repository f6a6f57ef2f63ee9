//! Text format for matrices over the rational function field.
//!
//! ```text
//! # optional comments
//! wmatrix 2 name=example var=l
//! 1/(l-1); 1/(l-1)
//! 1/l; (l+1)/l
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::expr::{parse_ratfunc_at, DEFAULT_VAR};
use crate::error::{Error, Result};
use crate::wmatrix::WMatrix;

/// One entry of a matrix file, with its 1-based position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Entry {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixDocument {
    pub dim: usize,
    pub name: Option<String>,
    pub var: String,
    pub rows: Vec<Vec<Entry>>,
}

fn parse_err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column, message: message.into() })
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn char_col(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

impl MatrixDocument {
    /// Splits a file into header metadata and entry strings without parsing
    /// the entries themselves.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines =
            text.lines().enumerate().map(|(k, l)| (k + 1, strip_comment(l))).filter(|(_, l)| !l.trim().is_empty());

        let Some((hline, header)) = lines.next() else {
            return parse_err(1, 1, "empty file; expected a 'wmatrix n' header");
        };
        let mut words = header.split_whitespace();
        if words.next() != Some("wmatrix") {
            return parse_err(hline, 1, "expected a 'wmatrix n' header");
        }
        let dim = match words.next().map(str::parse::<usize>) {
            Some(Ok(n)) if n > 0 => n,
            _ => return parse_err(hline, 9, "expected a positive dimension after 'wmatrix'"),
        };
        let mut doc = Self { dim, name: None, var: DEFAULT_VAR.to_string(), rows: Vec::new() };
        for word in words {
            let col = header.find(word).map_or(1, |b| char_col(header, b));
            match word.split_once('=') {
                Some(("name", v)) if !v.is_empty() => doc.name = Some(v.to_string()),
                Some(("var", v)) if !v.is_empty() => doc.var = v.to_string(),
                _ => return parse_err(hline, col, format!("unrecognized header field {word:?}")),
            }
        }

        for (lineno, line) in lines {
            if doc.rows.len() == dim {
                return parse_err(lineno, 1, format!("more than {dim} rows"));
            }
            let mut row = Vec::new();
            let mut start = 0;
            for part in line.split(';') {
                let lead = part.len() - part.trim_start().len();
                row.push(Entry { text: part.trim().to_string(), line: lineno, column: char_col(line, start + lead) });
                start += part.len() + 1;
            }
            if row.len() != dim {
                return parse_err(
                    lineno,
                    1,
                    format!("row {} has {} entries, expected {dim}", doc.rows.len() + 1, row.len()),
                );
            }
            doc.rows.push(row);
        }
        if doc.rows.len() != dim {
            let last = text.lines().count().max(1);
            return parse_err(last, 1, format!("expected {dim} rows, found {}", doc.rows.len()));
        }
        Ok(doc)
    }

    pub fn to_matrix(&self) -> Result<WMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        if e.text.is_empty() {
                            return parse_err(e.line, e.column, "empty entry");
                        }
                        parse_ratfunc_at(&e.text, &self.var, e.line, e.column)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        WMatrix::from_rows(rows)
    }

    /// Document for `m`; entry positions describe the rendered text.
    pub fn from_matrix(m: &WMatrix, name: Option<&str>, var: &str) -> Self {
        let rows = (0..m.dim())
            .map(|i| {
                (0..m.dim())
                    .map(|j| Entry { text: m.get(i, j).display_with(var).to_string(), line: i + 2, column: 0 })
                    .collect()
            })
            .collect();
        Self { dim: m.dim(), name: name.map(str::to_string), var: var.to_string(), rows }
    }

    pub fn render(&self) -> String {
        let mut out = format!("wmatrix {}", self.dim);
        if let Some(name) = &self.name {
            let _ = write!(out, " name={name}");
        }
        if self.var != DEFAULT_VAR {
            let _ = write!(out, " var={}", self.var);
        }
        out.push('\n');
        for row in &self.rows {
            let texts: Vec<&str> = row.iter().map(|e| e.text.as_str()).collect();
            out.push_str(&texts.join("; "));
            out.push('\n');
        }
        out
    }
}

pub fn parse_matrix(text: &str) -> Result<WMatrix> {
    MatrixDocument::parse(text)?.to_matrix()
}

pub fn write_matrix(m: &WMatrix) -> String {
    MatrixDocument::from_matrix(m, None, DEFAULT_VAR).render()
}

pub fn parse_matrix_file(path: impl AsRef<Path>) -> Result<MatrixDocument> {
    MatrixDocument::parse(&std::fs::read_to_string(path)?)
}

pub fn write_matrix_file(path: impl AsRef<Path>, m: &WMatrix, name: Option<&str>) -> Result<()> {
    std::fs::write(path, MatrixDocument::from_matrix(m, name, DEFAULT_VAR).render())?;
    Ok(())
}
