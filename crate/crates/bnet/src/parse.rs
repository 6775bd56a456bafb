//! Network file parsing.
//!
//! The accepted format is the common `targets, factors` table: an optional
//! header line, then one `name, expression` line per gene. Expressions use
//! `!`, `&`, `|`, parentheses, the constants `0`/`1`, and `#` line comments.
//! Precedence is `!` over `&` over `|`, all left-associative.
//!
//! Variables that are referenced but never defined become input genes with
//! the identity function, so every parsed network has a total dynamics.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::dnf::Dnf;
use crate::error::{Error as CrateError, Result as CrateResult};
use crate::expr::ExprAst;
use crate::network::BooleanNetwork;
use crate::state::GeneId;

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// The offending token text, when one exists.
    pub token: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if let Some(tok) = &self.token {
            write!(f, " (found `{tok}`)")?;
        }
        Ok(())
    }
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into(), token: None }
    }

    fn with_token(mut self, token: impl Into<String>) -> Self {
        self.token = Some(token.into());
        self
    }
}

/// One lexical token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Zero,
    One,
    And,
    Or,
    Not,
    LParen,
    RParen,
    Comma,
}

impl Token {
    fn text(&self) -> String {
        match self {
            Token::Ident(s) => s.clone(),
            Token::Zero => "0".into(),
            Token::One => "1".into(),
            Token::And => "&".into(),
            Token::Or => "|".into(),
            Token::Not => "!".into(),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
            Token::Comma => ",".into(),
        }
    }
}

/// A token plus its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub line: usize,
    pub column: usize,
}

/// Tokenize one line; `#` starts a comment running to the end of the line.
pub fn tokenize(text: &str, line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some(&(idx, ch)) = chars.peek() {
        let column = idx + 1;
        match ch {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            '&' | '|' | '!' | '(' | ')' | ',' => {
                chars.next();
                let token = match ch {
                    '&' => Token::And,
                    '|' => Token::Or,
                    '!' => Token::Not,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    _ => Token::Comma,
                };
                out.push(Spanned { token, line, column });
            }
            '0' | '1' => {
                chars.next();
                let token = if ch == '0' { Token::Zero } else { Token::One };
                out.push(Spanned { token, line, column });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Spanned { token: Token::Ident(name), line, column });
            }
            other => {
                return Err(ParseError::new(line, column, "illegal character")
                    .with_token(other.to_string()));
            }
        }
    }
    Ok(out)
}

/// Hard limit on `!`/`(` nesting. Recursive descent otherwise lets a
/// pathological line like `((((…` exhaust the stack before the missing `)`
/// is ever noticed; real update functions nest a handful of levels at most.
const MAX_NESTING_DEPTH: usize = 200;

/// Parse a full expression from a token slice; all tokens must be consumed.
pub fn parse_expression(tokens: &[Spanned], line: usize) -> Result<ExprAst, ParseError> {
    let mut p = Parser { tokens, pos: 0, line, depth: 0 };
    let e = p.or_expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::new(t.line, t.column, "unexpected trailing token")
            .with_token(t.token.text()));
    }
    Ok(e)
}

struct Parser<'a> {
    tokens: &'a [Spanned],
    pos: usize,
    line: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Spanned> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_column(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.token.text().len())
    }

    fn descend(&mut self, at: &Spanned) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING_DEPTH {
            return Err(ParseError::new(at.line, at.column, "expression nested too deeply")
                .with_token(at.token.text()));
        }
        Ok(())
    }

    fn or_expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut parts = vec![self.and_expr()?];
        while matches!(self.peek(), Some(Spanned { token: Token::Or, .. })) {
            self.next();
            parts.push(self.and_expr()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { ExprAst::Or(parts) })
    }

    fn and_expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut parts = vec![self.unary()?];
        while matches!(self.peek(), Some(Spanned { token: Token::And, .. })) {
            self.next();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { ExprAst::And(parts) })
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        let Some(t) = self.next().cloned() else {
            return Err(ParseError::new(
                self.line,
                self.end_column(),
                "expected an expression, found end of line",
            ));
        };
        match t.token {
            Token::Not => {
                self.descend(&t)?;
                let inner = self.unary();
                self.depth -= 1;
                Ok(ExprAst::Not(Box::new(inner?)))
            }
            Token::LParen => {
                self.descend(&t)?;
                let inner = self.or_expr();
                self.depth -= 1;
                let inner = inner?;
                match self.next() {
                    Some(Spanned { token: Token::RParen, .. }) => Ok(inner),
                    Some(other) => Err(ParseError::new(
                        other.line,
                        other.column,
                        "expected `)`",
                    )
                    .with_token(other.token.text())),
                    None => Err(ParseError::new(
                        self.line,
                        self.end_column(),
                        "unbalanced parenthesis: missing `)`",
                    )),
                }
            }
            Token::Ident(name) => Ok(ExprAst::Var(name)),
            Token::Zero => Ok(ExprAst::Const(false)),
            Token::One => Ok(ExprAst::Const(true)),
            other => Err(ParseError::new(t.line, t.column, "expected an expression")
                .with_token(other.text())),
        }
    }
}

/// A parsed network file, prior to DNF compilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkFile {
    pub has_header: bool,
    /// `(target, expression, source line)` in file order.
    pub entries: Vec<(String, ExprAst, usize)>,
}

impl NetworkFile {
    /// Parse the textual table format without compiling expressions.
    pub fn parse(text: &str) -> Result<NetworkFile, ParseError> {
        let mut entries: Vec<(String, ExprAst, usize)> = Vec::new();
        let mut has_header = false;
        let mut saw_content = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let tokens = tokenize(raw, line_no)?;
            if tokens.is_empty() {
                continue;
            }
            if !saw_content && is_header(&tokens) {
                saw_content = true;
                has_header = true;
                continue;
            }
            saw_content = true;
            let entry = parse_entry(&tokens, line_no)?;
            if entries.iter().any(|(name, _, _)| *name == entry.0) {
                return Err(ParseError::new(
                    line_no,
                    tokens[0].column,
                    format!("duplicate target `{}`", entry.0),
                ));
            }
            entries.push(entry);
        }
        if entries.is_empty() {
            return Err(ParseError::new(1, 1, "no gene definitions found"));
        }
        Ok(NetworkFile { has_header, entries })
    }

    /// Names referenced in expressions but never defined as targets; these
    /// become identity-function input genes on compilation.
    pub fn implicit_inputs(&self) -> Vec<String> {
        let mut inputs = Vec::new();
        for (_, expr, _) in &self.entries {
            for var in expr.variables() {
                if !self.entries.iter().any(|(t, _, _)| *t == var) && !inputs.contains(&var) {
                    inputs.push(var);
                }
            }
        }
        inputs
    }

    /// Compile to a network: targets in definition order, then implicit
    /// inputs in first-reference order.
    pub fn compile(&self) -> CrateResult<BooleanNetwork> {
        let (names, genes) = self.gene_table();
        let mut functions: Vec<Dnf> = Vec::with_capacity(names.len());
        for (_, expr, _) in &self.entries {
            functions.push(expr.to_dnf(&genes)?);
        }
        for input in &names[self.entries.len()..] {
            functions.push(Dnf::identity(genes[input]));
        }
        BooleanNetwork::new(names, functions)
    }

    /// Entries whose expressions contain contradictory conjunctions (a gene
    /// AND-ed with its own negation), as `(target, line, count)`. Such
    /// branches are always false and vanish silently in [`compile`]; a
    /// linter can use this to warn about them.
    ///
    /// [`compile`]: Self::compile
    pub fn dropped_contradictions(&self) -> CrateResult<Vec<(String, usize, usize)>> {
        let (_, genes) = self.gene_table();
        let mut out = Vec::new();
        for (target, expr, line) in &self.entries {
            let (_, dropped) = expr.to_dnf_counting(&genes, crate::dnf::DEFAULT_TERM_CAP)?;
            if dropped > 0 {
                out.push((target.clone(), *line, dropped));
            }
        }
        Ok(out)
    }

    fn gene_table(&self) -> (Vec<String>, HashMap<String, GeneId>) {
        let mut names: Vec<String> = self.entries.iter().map(|(t, _, _)| t.clone()).collect();
        names.extend(self.implicit_inputs());
        let genes = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), GeneId(i)))
            .collect();
        (names, genes)
    }
}

fn is_header(tokens: &[Spanned]) -> bool {
    matches!(
        tokens,
        [
            Spanned { token: Token::Ident(a), .. },
            Spanned { token: Token::Comma, .. },
            Spanned { token: Token::Ident(b), .. },
        ] if a == "targets" && b == "factors"
    )
}

fn parse_entry(tokens: &[Spanned], line: usize) -> Result<(String, ExprAst, usize), ParseError> {
    let name = match tokens.first() {
        Some(Spanned { token: Token::Ident(name), .. }) => name.clone(),
        Some(t) => {
            return Err(ParseError::new(t.line, t.column, "expected a gene name")
                .with_token(t.token.text()));
        }
        None => unreachable!("empty lines are skipped"),
    };
    match tokens.get(1) {
        Some(Spanned { token: Token::Comma, .. }) => {}
        Some(t) => {
            return Err(ParseError::new(t.line, t.column, "expected `,` after the gene name")
                .with_token(t.token.text()));
        }
        None => {
            return Err(ParseError::new(
                line,
                tokens[0].column + name.len(),
                "expected `,` after the gene name",
            ));
        }
    }
    let expr = parse_expression(&tokens[2..], line)?;
    Ok((name, expr, line))
}

/// Parse a network file into a ready-to-run network.
pub fn parse_network(text: &str) -> CrateResult<BooleanNetwork> {
    NetworkFile::parse(text)
        .map_err(CrateError::from)?
        .compile()
}
