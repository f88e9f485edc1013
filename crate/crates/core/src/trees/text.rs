//! Tree files: a header `n=<int>` followed by one nested expression
//!
//! ```text
//! node := leaf=<rational> | (query={i,j,...} 0:<node> 1:<node>)
//! ```
//!
//! Indices are 1-based. A standard decision tree uses singleton queries.

use super::{AndDecisionTree, DecisionTree};
use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::poly::format::parse_header;
use crate::rational::Rational;

pub fn format_dt(t: &DecisionTree, n: usize) -> String {
    fn go(t: &DecisionTree, n: usize, out: &mut String) {
        match t {
            DecisionTree::Leaf(v) => out.push_str(&format!("leaf={v}")),
            DecisionTree::Node { var, zero, one } => {
                out.push_str(&format!("(query={} 0:", BitVec::from_indices(n, [*var])));
                go(zero, n, out);
                out.push_str(" 1:");
                go(one, n, out);
                out.push(')');
            }
        }
    }
    let mut out = format!("n={n}\n");
    go(t, n, &mut out);
    out.push('\n');
    out
}

pub fn format_adt(t: &AndDecisionTree, n: usize) -> String {
    fn go(t: &AndDecisionTree, out: &mut String) {
        match t {
            AndDecisionTree::Leaf(v) => out.push_str(&format!("leaf={v}")),
            AndDecisionTree::Node { query, if_false, if_true } => {
                out.push_str(&format!("(query={query} 0:"));
                go(if_false, out);
                out.push_str(" 1:");
                go(if_true, out);
                out.push(')');
            }
        }
    }
    let mut out = format!("n={n}\n");
    go(t, &mut out);
    out.push('\n');
    out
}

/// Returns `(n, tree)`.
pub fn parse_adt(text: &str) -> Result<(usize, AndDecisionTree)> {
    let (n, mut p) = Parser::new(text)?;
    let t = p.node(n)?;
    p.finish()?;
    Ok((n, t))
}

/// Returns `(n, tree)`. Every query must be a single variable.
pub fn parse_dt(text: &str) -> Result<(usize, DecisionTree)> {
    let (n, adt) = parse_adt(text)?;
    fn go(t: AndDecisionTree) -> Result<DecisionTree> {
        match t {
            AndDecisionTree::Leaf(v) => Ok(DecisionTree::Leaf(v)),
            AndDecisionTree::Node { query, if_false, if_true } => {
                if query.count() != 1 {
                    return Err(Error::InvalidInput(format!("decision tree query {query} is not a single variable")));
                }
                Ok(DecisionTree::node(query.first().expect("one element"), go(*if_false)?, go(*if_true)?))
            }
        }
    }
    let t = go(adt)?;
    if !t.is_valid(n) {
        return Err(Error::InvalidInput("a path queries some variable twice".into()));
    }
    Ok((n, t))
}

struct Parser {
    /// (line, char) pairs of the body with comments removed.
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<(usize, Parser)> {
        let mut header = None;
        let mut chars = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if header.is_none() {
                if line.trim().is_empty() {
                    continue;
                }
                header = Some(parse_header(k + 1, line.trim())?);
                continue;
            }
            chars.extend(line.chars().map(|c| (k + 1, c)));
            chars.push((k + 1, '\n'));
        }
        let n = header.ok_or_else(|| Error::parse(1, "empty tree file"))?;
        Ok((n, Parser { chars, pos: 0 }))
    }

    fn line(&self) -> usize {
        self.chars.get(self.pos).or(self.chars.last()).map_or(1, |c| c.0)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line(), msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> Result<()> {
        self.skip_ws();
        for expected in lit.chars() {
            match self.chars.get(self.pos) {
                Some(&(_, c)) if c == expected => self.pos += 1,
                _ => return Err(self.err(format!("expected {lit:?}"))),
            }
        }
        Ok(())
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn take_until(&mut self, stop: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| !stop(c.1)) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().map(|c| c.1).collect()
    }

    fn node(&mut self, n: usize) -> Result<AndDecisionTree> {
        match self.peek() {
            Some('l') => {
                self.eat("leaf=")?;
                let tok = self.take_until(|c| c.is_whitespace() || c == ')');
                let v: Rational = tok.parse().map_err(|_| self.err(format!("bad rational {tok:?}")))?;
                Ok(AndDecisionTree::Leaf(v))
            }
            Some('(') => {
                self.eat("(")?;
                self.eat("query=")?;
                self.skip_ws();
                let set = self.take_until(|c| c == '}');
                self.eat("}")?;
                let query = BitVec::parse_set(n, &format!("{set}}}")).map_err(|e| self.err(e.to_string()))?;
                self.eat("0:")?;
                let if_false = self.node(n)?;
                self.eat("1:")?;
                let if_true = self.node(n)?;
                self.eat(")")?;
                Ok(AndDecisionTree::node(query, if_false, if_true))
            }
            _ => Err(self.err("expected `leaf=` or `(`")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return Err(self.err("trailing input after tree"));
        }
        Ok(())
    }
}
