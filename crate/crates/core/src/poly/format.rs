//! Line-oriented function files.
//!
//! ```text
//! # OR on two variables
//! n=2
//! table
//! 0 1 1 1
//! ```
//!
//! or, equivalently,
//!
//! ```text
//! n=2
//! poly
//! {1}: 1
//! {2}: 1
//! {1,2}: -1
//! ```
//!
//! Table entries are in truth-table index order and may span lines.
//! `{}` denotes the constant term. `#` starts a comment.

use std::fmt::Write as _;

use super::{MultilinearPoly, TruthTable};
use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A parsed function file, in the form it was written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionFile {
    Table(TruthTable),
    Poly(MultilinearPoly),
}

impl FunctionFile {
    pub fn n(&self) -> usize {
        match self {
            FunctionFile::Table(t) => t.n(),
            FunctionFile::Poly(p) => p.n(),
        }
    }

    pub fn into_poly(self) -> Result<MultilinearPoly> {
        match self {
            FunctionFile::Table(t) => t.to_poly(),
            FunctionFile::Poly(p) => Ok(p),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, line)| (k + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty())
}

pub fn parse_function(text: &str) -> Result<FunctionFile> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty function file"))?;
    let n = parse_header(line, header)?;
    let (line, kind) = lines.next().ok_or_else(|| Error::parse(line, "expected `table` or `poly`"))?;
    match kind {
        "table" => parse_table_body(n, line, lines).map(FunctionFile::Table),
        "poly" => parse_poly_body(n, lines).map(FunctionFile::Poly),
        other => Err(Error::parse(line, format!("expected `table` or `poly`, found {other:?}"))),
    }
}

pub(crate) fn parse_header(line: usize, header: &str) -> Result<usize> {
    let value = header
        .strip_prefix('n')
        .map(str::trim_start)
        .and_then(|s| s.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `n=<int>`, found {header:?}")))?;
    value
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad variable count {:?}", value.trim())))
}

fn parse_table_body<'a>(n: usize, kind_line: usize, lines: impl Iterator<Item = (usize, &'a str)>) -> Result<TruthTable> {
    if n > 63 {
        return Err(Error::parse(kind_line, format!("n = {n} is too large for a table")));
    }
    let expected = 1usize << n;
    let mut values = Vec::new();
    let mut last = kind_line;
    for (line, text) in lines {
        last = line;
        for tok in text.split_whitespace() {
            if values.len() == expected {
                return Err(Error::parse(line, format!("more than {expected} table entries")));
            }
            let v: Rational = tok.parse().map_err(|_| Error::parse(line, format!("bad rational {tok:?}")))?;
            values.push(v);
        }
    }
    if values.len() != expected {
        return Err(Error::parse(last, format!("expected {expected} table entries, found {}", values.len())));
    }
    TruthTable::new(n, values)
}

fn parse_poly_body<'a>(n: usize, lines: impl Iterator<Item = (usize, &'a str)>) -> Result<MultilinearPoly> {
    let mut seen = std::collections::BTreeSet::new();
    let mut terms = Vec::new();
    for (line, text) in lines {
        let (set, coef) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(line, format!("expected `{{i,j}}: <rational>`, found {text:?}")))?;
        let s = BitVec::parse_set(n, set).map_err(|e| Error::parse(line, e.to_string()))?;
        let c: Rational = coef
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("bad rational {:?}", coef.trim())))?;
        if !seen.insert(s.clone()) {
            return Err(Error::parse(line, format!("monomial {s} listed twice")));
        }
        terms.push((s, c));
    }
    MultilinearPoly::from_terms(n, terms)
}

pub fn format_table(t: &TruthTable) -> String {
    let mut out = format!("n={}\ntable\n", t.n());
    for chunk in t.values().chunks(16) {
        let row: Vec<String> = chunk.iter().map(Rational::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_poly(p: &MultilinearPoly) -> String {
    let mut out = format!("n={}\npoly\n", p.n());
    for (s, c) in p.terms() {
        writeln!(out, "{s}: {c}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let table = "# or\nn=2\ntable\n0 1\n1 1  # trailing\n";
        let poly = "n = 2\npoly\n{1}: 1\n{2}: 1\n{1,2}: -1\n";
        let a = parse_function(table).unwrap().into_poly().unwrap();
        let b = parse_function(poly).unwrap().into_poly().unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_function(&format_poly(&a)).unwrap().into_poly().unwrap(), a);
        let t = a.to_truth_table().unwrap();
        assert_eq!(parse_function(&format_table(&t)).unwrap(), FunctionFile::Table(t));
    }

    #[test]
    fn constant_term_and_zero_poly() {
        let p = parse_function("n=3\npoly\n{}: 1/2\n").unwrap().into_poly().unwrap();
        assert_eq!(p.constant_term(), Rational::new(1, 2));
        assert!(parse_function("n=3\npoly\n").unwrap().into_poly().unwrap().is_zero());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("m=2\ntable\n", 1),
            ("n=2\nmatrix\n", 2),
            ("n=2\ntable\n0 1 1\n", 3),
            ("n=2\ntable\n0 1 1 1 1\n", 3),
            ("n=2\ntable\n0 1\n1 x\n", 4),
            ("n=2\npoly\n{3}: 1\n", 3),
            ("n=2\npoly\n{1} 1\n", 3),
            ("n=2\npoly\n\n{1}: 1\n{1}: 2\n", 5),
        ];
        for (text, line) in cases {
            match parse_function(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
