//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "@") factor)*      -- no mixing without parentheses
//! factor := atom ("^" nat)?
//! atom   := esym | hsym | psum | "hbar" | rational | "(" expr ")"
//! esym   := "e" "[" nat ("," nat)* "]" "(" poly ("," poly)* ")"
//! hsym   := "h" "[" nat ("," nat)* "]"
//! psum   := "p" "(" poly ")"
//! poly   := "-"? pterm (("+" | "-") pterm)*
//! pterm  := pfactor ("*" pfactor)*
//! pfactor:= patom ("^" nat)?
//! patom  := variable | integer | "(" poly ")"
//! ```

use num_bigint::BigInt;
use thiserror::Error;

use crate::ast::{Expr, ExprKind, Mode, Pos, Span};
use multisym::polyalg::{Polynomial, VarId};
use multisym::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Times,
    At,
    Caret,
    Slash,
    Int(BigInt),
    Ident(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Times => "'*'".into(),
            Tok::At => "'@'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: Pos,
    end: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: expected {}, found {found}", expected.join(" or "))]
    Syntax { pos: Pos, expected: Vec<String>, found: String },
    #[error("arity mismatch at {pos}: index [{index}] has {len} entries but {args} argument(s) were given")]
    Arity { pos: Pos, index: String, len: usize, args: usize },
    #[error("{message} at {pos}")]
    Invalid { pos: Pos, message: String },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Arity { pos, .. } | ParseError::Invalid { pos, .. } => *pos,
        }
    }
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Times),
            '@' => Some(Tok::At),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            col += 1;
            tokens.push(Token { tok, start, end: Pos { line, col } });
            continue;
        }
        let j = if c.is_ascii_digit() {
            chars[i..].iter().position(|ch| !ch.is_ascii_digit())
        } else if c.is_ascii_alphabetic() || c == '_' {
            chars[i..].iter().position(|ch| !(ch.is_ascii_alphanumeric() || *ch == '_'))
        } else {
            return Err(ParseError::Invalid { pos: start, message: format!("unexpected character '{c}'") });
        };
        let len = j.unwrap_or(chars.len() - i);
        let text: String = chars[i..i + len].iter().collect();
        i += len;
        col += len;
        let tok = if c.is_ascii_digit() { Tok::Int(text.parse().expect("digits")) } else { Tok::Ident(text) };
        tokens.push(Token { tok, start, end: Pos { line, col } });
    }
    let end = Pos { line, col };
    tokens.push(Token { tok: Tok::Eof, start: end, end });
    Ok(tokens)
}

/// A parsed expression and the variable spelling it uses (`None` when it
/// mentions no variables).
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub expr: Expr,
    pub mode: Option<Mode>,
}

impl Parsed {
    /// The spelling, with phase mode forced by `@`.
    pub fn effective_mode(&self) -> Mode {
        match self.mode {
            Some(m) => m,
            None if self.has_star() => Mode::Phase,
            None => Mode::General,
        }
    }

    pub fn has_star(&self) -> bool {
        let mut found = false;
        self.expr.walk(&mut |e| found |= matches!(e.kind, ExprKind::Star(..)));
        found
    }
}

pub fn parse(input: &str) -> Result<Parsed, ParseError> {
    let mut p = Parser { tokens: lex(input)?, at: 0, mode: None, star: None };
    let expr = p.expr()?;
    p.expect(Tok::Eof, &["operator", "end of input"])?;
    if let (Some((Mode::General, _)), Some(pos)) = (p.mode, p.star) {
        return Err(ParseError::Invalid { pos, message: "'@' needs the phase variables x, y".into() });
    }
    Ok(Parsed { expr, mode: p.mode.map(|(m, _)| m) })
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    mode: Option<(Mode, Pos)>,
    star: Option<Pos>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn peek2(&self) -> &Tok {
        &self.tokens[(self.at + 1).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            pos: t.start,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error(expected))
        }
    }

    fn last_end(&self) -> Pos {
        self.tokens[self.at.saturating_sub(1)].end
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.term()?;
        loop {
            let make = match self.peek().tok {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.term()?;
            let span = Span { start: left.span.start, end: right.span.end };
            left = Expr::new(make(Box::new(left), Box::new(right)), span);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.factor()?;
        let mut first: Option<Tok> = None;
        loop {
            let op = self.peek().clone();
            let make = match op.tok {
                Tok::Times => ExprKind::Mul,
                Tok::At => ExprKind::Star,
                _ => return Ok(left),
            };
            match &first {
                Some(f) if *f != op.tok => {
                    return Err(ParseError::Invalid {
                        pos: op.start,
                        message: "cannot mix '*' and '@' without parentheses".into(),
                    })
                }
                _ => first = Some(op.tok.clone()),
            }
            if op.tok == Tok::At {
                self.star.get_or_insert(op.start);
            }
            self.bump();
            let right = self.factor()?;
            let span = Span { start: left.span.start, end: right.span.end };
            left = Expr::new(make(Box::new(left), Box::new(right)), span);
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let k = self.nat("exponent")?;
        let span = Span { start: base.span.start, end: self.last_end() };
        Ok(Expr::new(ExprKind::Pow(Box::new(base), k), span))
    }

    fn nat(&mut self, what: &str) -> Result<u32, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                u32::try_from(n)
                    .map_err(|_| ParseError::Invalid { pos: t.start, message: format!("{what} {n} is too large") })
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        const ATOM: &[&str] = &["'e['", "'h['", "'p('", "'hbar'", "number", "'('"];
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) if s == "e" => self.esym(),
            Tok::Ident(s) if s == "h" => {
                self.bump();
                let index = self.index_list()?;
                Ok(Expr::new(ExprKind::HSym { index }, Span { start: t.start, end: self.last_end() }))
            }
            Tok::Ident(s) if s == "p" => {
                self.bump();
                self.expect(Tok::LParen, &["'('"])?;
                let arg_pos = self.peek().start;
                let poly = self.poly()?;
                self.expect(Tok::RParen, &["')'"])?;
                let m = match poly.terms() {
                    [(m, c)] if c == &Rational::from_integer(1.into()) && !m.is_one() => m.clone(),
                    _ => {
                        return Err(ParseError::Invalid {
                            pos: arg_pos,
                            message: "p(...) takes a single non-constant monomial".into(),
                        })
                    }
                };
                Ok(Expr::new(ExprKind::PSum(m), Span { start: t.start, end: self.last_end() }))
            }
            Tok::Ident(s) if s == "hbar" => {
                self.bump();
                Ok(Expr::new(ExprKind::Hbar, Span { start: t.start, end: t.end }))
            }
            Tok::Int(_) => self.number(false, t.start),
            Tok::Minus if matches!(self.peek2(), Tok::Int(_)) => {
                self.bump();
                self.number(true, t.start)
            }
            Tok::LParen => {
                self.bump();
                let mut inner = self.expr()?;
                self.expect(Tok::RParen, &["')'", "operator"])?;
                inner.span = Span { start: t.start, end: self.last_end() };
                Ok(inner)
            }
            _ => Err(self.error(ATOM)),
        }
    }

    fn number(&mut self, negative: bool, start: Pos) -> Result<Expr, ParseError> {
        let Tok::Int(num) = self.bump().tok else { unreachable!("caller checked for a number") };
        let mut q = Rational::from_integer(if negative { -num } else { num });
        if self.peek().tok == Tok::Slash {
            self.bump();
            let t = self.peek().clone();
            let Tok::Int(den) = t.tok else {
                return Err(self.error(&["denominator"]));
            };
            self.bump();
            if den == BigInt::from(0) {
                return Err(ParseError::Invalid { pos: t.start, message: "zero denominator".into() });
            }
            q /= Rational::from_integer(den);
        }
        Ok(Expr::new(ExprKind::Number(q), Span { start, end: self.last_end() }))
    }

    fn index_list(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(Tok::LBracket, &["'['"])?;
        let mut index = vec![self.nat("index entry")?];
        loop {
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                    index.push(self.nat("index entry")?);
                }
                Tok::RBracket => {
                    self.bump();
                    return Ok(index);
                }
                _ => return Err(self.error(&["','", "']'"])),
            }
        }
    }

    fn esym(&mut self) -> Result<Expr, ParseError> {
        let start = self.bump().start;
        let index = self.index_list()?;
        self.expect(Tok::LParen, &["'('"])?;
        let mut args = vec![self.poly()?];
        loop {
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                    args.push(self.poly()?);
                }
                Tok::RParen => {
                    self.bump();
                    break;
                }
                _ => return Err(self.error(&["','", "')'", "'+'", "'-'", "'*'", "'^'"])),
            }
        }
        if args.len() != index.len() {
            return Err(ParseError::Arity {
                pos: start,
                index: index.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                len: index.len(),
                args: args.len(),
            });
        }
        Ok(Expr::new(ExprKind::ESym { index, args }, Span { start, end: self.last_end() }))
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.pterm()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.pterm()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.pterm()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn pterm(&mut self) -> Result<Polynomial, ParseError> {
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let mut acc = self.pfactor()?;
        while self.peek().tok == Tok::Times {
            self.bump();
            acc = acc.mul(&self.pfactor()?);
        }
        Ok(if negative { acc.neg() } else { acc })
    }

    fn pfactor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.patom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        Ok(base.pow(self.nat("exponent")?))
    }

    fn patom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Polynomial::constant(Rational::from_integer(n.clone())))
            }
            Tok::LParen => {
                self.bump();
                let p = self.poly()?;
                self.expect(Tok::RParen, &["')'"])?;
                Ok(p)
            }
            Tok::Ident(name) => {
                let (mode, var) = match name.as_str() {
                    "x" => (Mode::Phase, VarId::Abstract(1)),
                    "y" => (Mode::Phase, VarId::Abstract(2)),
                    s => match s.strip_prefix('y').and_then(|j| j.parse::<u32>().ok()) {
                        Some(j) if j >= 1 && !s[1..].starts_with('0') => (Mode::General, VarId::Abstract(j)),
                        _ => {
                            return Err(ParseError::Invalid {
                                pos: t.start,
                                message: format!("unknown variable '{s}' (use y1, y2, ... or x, y)"),
                            })
                        }
                    },
                };
                match self.mode {
                    Some((m, _)) if m != mode => {
                        return Err(ParseError::Invalid {
                            pos: t.start,
                            message: "cannot mix x, y with y1, y2, ... in one expression".into(),
                        })
                    }
                    Some(_) => {}
                    None => self.mode = Some((mode, t.start)),
                }
                self.bump();
                Ok(Polynomial::var(var))
            }
            _ => Err(self.error(&["variable", "number", "'('"])),
        }
    }
}
