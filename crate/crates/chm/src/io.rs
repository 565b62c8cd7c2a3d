//! Text formats for matrices and monomial transforms.
//!
//! Matrix format: first line the order `n`, then `n` lines of `n`
//! whitespace-separated phase tokens. The writer always emits canonical
//! tokens (`1`, not `t(0/1)`), and everything written re-parses to an
//! entrywise-equal value.
//!
//! Transform format: four lines `rowperm:`, `rowphases:`, `colphases:`,
//! `colperm:`; permutations give the destination index of each source line.

use std::fmt;

use crate::equivalence::MonomialTransform;
use crate::matrix::{RowBlock, UnitMatrix};
use crate::phase::Phase;

/// Parse failure with 1-based line and column of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}

/// Tokens of a line with their 1-based column offsets.
fn tokens_with_cols(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (idx, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..idx]));
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_phase_token(line_no: usize, col: usize, tok: &str) -> Result<Phase, ParseError> {
    tok.parse::<Phase>().map_err(|e| ParseError::new(line_no, col, e.to_string()))
}

pub fn parse_matrix(text: &str) -> Result<UnitMatrix, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_idx, header) =
        lines.next().ok_or_else(|| ParseError::new(1, 1, "empty input; expected the order n"))?;
    let header_tokens = tokens_with_cols(header);
    if header_tokens.len() != 1 {
        return Err(ParseError::new(header_idx + 1, 1, "first line must hold a single integer n"));
    }
    let n: usize = header_tokens[0]
        .1
        .parse()
        .map_err(|_| ParseError::new(header_idx + 1, header_tokens[0].0, "invalid order"))?;
    if n == 0 {
        return Err(ParseError::new(header_idx + 1, header_tokens[0].0, "order must be positive"));
    }

    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (idx, line) = lines.next().ok_or_else(|| {
            ParseError::new(header_idx + 2 + rows.len(), 1, format!("expected {n} matrix rows"))
        })?;
        let toks = tokens_with_cols(line);
        if toks.len() != n {
            return Err(ParseError::new(
                idx + 1,
                1,
                format!("expected {n} phase tokens, found {}", toks.len()),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for (col, tok) in toks {
            row.push(parse_phase_token(idx + 1, col, tok)?);
        }
        rows.push(row);
    }
    if let Some((idx, _)) = lines.next() {
        return Err(ParseError::new(idx + 1, 1, "trailing content after matrix rows"));
    }
    UnitMatrix::from_rows(rows).map_err(|e| ParseError::new(header_idx + 1, 1, e.to_string()))
}

pub fn format_matrix(m: &UnitMatrix) -> String {
    let mut s = format!("{}\n", m.order());
    for row in m.rows() {
        let tokens: Vec<String> = row.iter().map(Phase::to_string).collect();
        s.push_str(&tokens.join(" "));
        s.push('\n');
    }
    s
}

/// Rectangular blocks reuse the matrix format with a `rows cols` header.
pub fn format_row_block(b: &RowBlock) -> String {
    let mut s = format!("{} {}\n", b.row_count(), b.cols());
    for r in 0..b.row_count() {
        let tokens: Vec<String> = b.row(r).iter().map(Phase::to_string).collect();
        s.push_str(&tokens.join(" "));
        s.push('\n');
    }
    s
}

fn parse_perm_line(
    line_no: usize,
    line: &str,
    key: &str,
    n: Option<usize>,
) -> Result<Vec<usize>, ParseError> {
    let body = line
        .trim_start()
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or_else(|| ParseError::new(line_no, 1, format!("expected `{key}:` line")))?;
    let offset = line.len() - body.len();
    let mut out = Vec::new();
    for (col, tok) in tokens_with_cols(body) {
        let v: usize = tok
            .parse()
            .map_err(|_| ParseError::new(line_no, offset + col, format!("invalid index `{tok}`")))?;
        out.push(v);
    }
    if let Some(n) = n {
        if out.len() != n {
            return Err(ParseError::new(line_no, 1, format!("expected {n} entries")));
        }
    }
    let mut seen = vec![false; out.len()];
    for &v in &out {
        if v >= out.len() || seen[v] {
            return Err(ParseError::new(line_no, 1, format!("`{key}` is not a permutation")));
        }
        seen[v] = true;
    }
    Ok(out)
}

fn parse_phase_line(
    line_no: usize,
    line: &str,
    key: &str,
    n: usize,
) -> Result<Vec<Phase>, ParseError> {
    let body = line
        .trim_start()
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or_else(|| ParseError::new(line_no, 1, format!("expected `{key}:` line")))?;
    let offset = line.len() - body.len();
    let toks = tokens_with_cols(body);
    if toks.len() != n {
        return Err(ParseError::new(line_no, 1, format!("expected {n} phase tokens")));
    }
    toks.into_iter().map(|(col, tok)| parse_phase_token(line_no, offset + col, tok)).collect()
}

pub fn parse_transform(text: &str) -> Result<MonomialTransform, ParseError> {
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).collect();
    if lines.len() != 4 {
        return Err(ParseError::new(
            lines.len() + 1,
            1,
            "transform needs exactly four lines: rowperm, rowphases, colphases, colperm",
        ));
    }
    let row_perm = parse_perm_line(lines[0].0 + 1, lines[0].1, "rowperm", None)?;
    let n = row_perm.len();
    let row_phases = parse_phase_line(lines[1].0 + 1, lines[1].1, "rowphases", n)?;
    let col_phases = parse_phase_line(lines[2].0 + 1, lines[2].1, "colphases", n)?;
    let col_perm = parse_perm_line(lines[3].0 + 1, lines[3].1, "colperm", Some(n))?;
    MonomialTransform::new(row_perm, row_phases, col_phases, col_perm)
        .map_err(|e| ParseError::new(lines[0].0 + 1, 1, e.to_string()))
}

pub fn format_transform(t: &MonomialTransform) -> String {
    let fmt_idx = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let fmt_ph =
        |v: &[Phase]| v.iter().map(Phase::to_string).collect::<Vec<_>>().join(" ");
    format!(
        "rowperm: {}\nrowphases: {}\ncolphases: {}\ncolperm: {}\n",
        fmt_idx(&t.row_perm),
        fmt_ph(&t.row_phases),
        fmt_ph(&t.col_phases),
        fmt_idx(&t.col_perm),
    )
}

pub fn read_matrix_file(path: &std::path::Path) -> Result<UnitMatrix, FileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FileError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_matrix(&text).map_err(|e| FileError::Parse { path: path.display().to_string(), error: e })
}

pub fn read_transform_file(path: &std::path::Path) -> Result<MonomialTransform, FileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FileError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_transform(&text)
        .map_err(|e| FileError::Parse { path: path.display().to_string(), error: e })
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {error}")]
    Parse { path: String, error: ParseError },
}

impl fmt::Display for UnitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(self))
    }
}
