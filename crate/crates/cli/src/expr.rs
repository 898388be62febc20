//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := coeff | var ('^' nat)?
//! coeff  := int ('/' posnat)?
//! ```
//!
//! The first term may carry a unary minus. Whitespace (including newlines) is
//! ignored between tokens; juxtaposition such as `2u` is an error.

use std::fmt;

use lndkit_core::{Polynomial, Rational, Vars};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    ZeroDenominator,
}

/// A parse failure at a 1-based line and column of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator in coefficient"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Other(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Other(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<(Tok, Pos)> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        chars.next();
        column += 1;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            other => Tok::Other(other),
        };
        out.push((tok, pos));
    }
    out
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        let p = self.pos();
        Err(ParseError {
            line: p.line,
            column: p.column,
            kind,
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        };
        self.err(ParseErrorKind::Syntax(format!("expected {wanted}, found {found}")))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let negate = matches!(self.peek(), Some(Tok::Minus));
        if negate {
            self.bump();
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                None => return Ok(acc),
                Some(_) => return self.unexpected("`+`, `-`, `*` or end of input"),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn nat(&mut self, wanted: &str) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.bump();
                Ok(n)
            }
            _ => self.unexpected(wanted),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.bump();
                let mut c = Rational::from_integer(n);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let here = self.pos();
                    let d = self.nat("a denominator")?;
                    if d.is_zero() {
                        return Err(ParseError {
                            line: here.line,
                            column: here.column,
                            kind: ParseErrorKind::ZeroDenominator,
                        });
                    }
                    c /= Rational::from_integer(d);
                }
                Ok(Polynomial::constant(self.vars, c))
            }
            Some(Tok::Ident(name)) => {
                let Some(i) = self.vars.index_of(&name) else {
                    return self.err(ParseErrorKind::UnknownVariable(name));
                };
                self.bump();
                let x = Polynomial::var(self.vars, i);
                if !matches!(self.peek(), Some(Tok::Caret)) {
                    return Ok(x);
                }
                self.bump();
                let here = self.pos();
                let e = self.nat("a non-negative integer exponent")?;
                let e: u32 = e.try_into().map_err(|_| ParseError {
                    line: here.line,
                    column: here.column,
                    kind: ParseErrorKind::Syntax("exponent too large".into()),
                })?;
                Ok(x.pow(e))
            }
            _ => self.unexpected("a coefficient or a variable"),
        }
    }
}

/// Parses `text` as a polynomial over `vars`.
pub fn parse_expression(text: &str, vars: &Vars) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text);
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        Pos {
            line: lines.len(),
            column: lines.last().map_or(0, |l| l.chars().count()) + 1,
        }
    };
    let mut p = Parser {
        toks,
        at: 0,
        end,
        vars,
    };
    if p.peek().is_none() {
        return p.unexpected("an expression");
    }
    p.poly()
}

/// Parses `p/q` or an integer.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den < BigInt::zero() {
        return None;
    }
    Some(Rational::new(num, den))
}
