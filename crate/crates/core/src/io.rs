//! Plain-text solution files.
//!
//! One solution per line, terms separated by spaces or tabs. Lines whose
//! first non-blank character is `#` and blank lines are skipped. Line
//! numbers are 1-based and kept for diagnostics.

use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{Problem, Sequence};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub line: usize,
    pub sequence: Sequence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolutionFile {
    pub records: Vec<Record>,
    pub diagnostics: Vec<Diagnostic>,
}

impl SolutionFile {
    pub fn sequences(&self) -> impl Iterator<Item = &Sequence> {
        self.records.iter().map(|r| &r.sequence)
    }
}

/// Parses a solution file for `problem`. Every record must have `m * n`
/// integer terms in `1..=n`; offending lines become diagnostics, or the
/// first one is returned as an error when `strict` is set.
///
/// Spacing is not checked here; see [`verify`](crate::verify).
pub fn parse_solution_file(bytes: &[u8], problem: &Problem, strict: bool) -> Result<SolutionFile> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::Structural(format!("solution file is not UTF-8: {e}")))?;
    let mut out = SolutionFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        match parse_record(body, problem) {
            Ok(sequence) => out.records.push(Record { line, sequence }),
            Err(message) => {
                let diag = Diagnostic { line, message };
                if strict {
                    return Err(Error::Structural(diag.to_string()));
                }
                out.diagnostics.push(diag);
            }
        }
    }
    Ok(out)
}

fn parse_record(body: &str, problem: &Problem) -> std::result::Result<Sequence, String> {
    let n = problem.n();
    let mut values = Vec::with_capacity(problem.len());
    for tok in body.split_whitespace() {
        let v: i64 = tok
            .parse()
            .map_err(|_| format!("`{tok}` is not an integer"))?;
        if v < 1 || v as u64 > n as u64 {
            return Err(format!("value {v} is outside 1..={n}"));
        }
        values.push(v as u32);
    }
    if values.len() != problem.len() {
        return Err(format!(
            "expected {} terms for {problem}, found {}",
            problem.len(),
            values.len()
        ));
    }
    Ok(Sequence::new(values))
}

/// Writes one sequence per line, single-space separated and newline
/// terminated. Returns the number of bytes written.
pub fn write_solution_file<'a, I, W>(seqs: I, mut out: W) -> Result<usize>
where
    I: IntoIterator<Item = &'a Sequence>,
    W: Write,
{
    let mut width = None;
    let mut written = 0;
    for seq in seqs {
        match width {
            None => width = Some(seq.len()),
            Some(w) if w != seq.len() => {
                return Err(Error::Structural(format!(
                    "sequences of lengths {w} and {} in one file",
                    seq.len()
                )))
            }
            Some(_) => {}
        }
        let line = format!("{seq}\n");
        out.write_all(line.as_bytes())?;
        written += line.len();
    }
    out.flush()?;
    Ok(written)
}
