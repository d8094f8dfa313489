//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! coeff  := integer | integer '/' positive-integer
//! factor := var ('^' positive-integer)?
//! var    := name | name '[' index (',' index)* ']'
//! ```
//!
//! Whitespace is insignificant. Dual forms use the same grammar over the
//! dual names described in [`Variable::dual_name`].

use std::collections::HashMap;
use std::sync::Arc;

use super::{Monomial, Polynomial, VarContext, Variable};
use crate::error::{Error, ParseError, Result};
use crate::scalar::{parse_int, Scalar};

use super::DualForm;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn lex(text: &str, first_line: usize) -> std::result::Result<(Vec<Token>, (usize, usize)), ParseError> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
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
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Int(s)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Name(s)
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
            };
            chars.next();
            column += 1;
            t
        };
        out.push(Token { tok, line: l0, column: c0 });
    }
    Ok((out, (line, column)))
}

/// A parsed term before variables are resolved against a context.
struct RawTerm<I> {
    numer: I,
    denom: I,
    negative: bool,
    factors: Vec<(Variable, u32, usize, usize)>,
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let (l, c) = self.here();
        match self.peek() {
            Some(t) => err(l, c, format!("expected {expected}, found {}", describe(&t.tok))),
            None => err(l, c, format!("expected {expected}, found end of input")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.tok == tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn positive_int<I: crate::scalar::ExactInt>(&mut self, what: &str) -> std::result::Result<I, ParseError> {
        let (l, c) = self.here();
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let v: I = parse_int(s).ok_or_else(|| err(l, c, format!("{what} `{s}` is too large")))?;
                if v.is_zero() {
                    return Err(err(l, c, format!("{what} must be positive")));
                }
                Ok(v)
            }
            _ => Err(self.unexpected(&format!("positive integer {what}"))),
        }
    }

    fn expr<I: crate::scalar::ExactInt>(&mut self) -> std::result::Result<Vec<RawTerm<I>>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = self.eat(&Tok::Minus);
        loop {
            terms.push(self.term(negative)?);
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.unexpected("`+`, `-` or `*`"));
        }
        Ok(terms)
    }

    fn term<I: crate::scalar::ExactInt>(&mut self, negative: bool) -> std::result::Result<RawTerm<I>, ParseError> {
        let mut t = RawTerm { numer: I::one(), denom: I::one(), negative, factors: Vec::new() };
        let (l, c) = self.here();
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                t.numer = parse_int(s).ok_or_else(|| err(l, c, format!("integer `{s}` is too large")))?;
                if self.eat(&Tok::Slash) {
                    t.denom = self.positive_int("denominator")?;
                }
            }
            Some(Tok::Name(_)) => t.factors.push(self.factor()?),
            _ => return Err(self.unexpected("a coefficient or variable")),
        }
        while self.eat(&Tok::Star) {
            t.factors.push(self.factor()?);
        }
        Ok(t)
    }

    fn factor(&mut self) -> std::result::Result<(Variable, u32, usize, usize), ParseError> {
        let (l, c) = self.here();
        let name = match self.peek().map(|t| &t.tok) {
            Some(Tok::Name(s)) => s.clone(),
            _ => return Err(self.unexpected("a variable")),
        };
        self.pos += 1;
        let mut index = Vec::new();
        if self.eat(&Tok::LBracket) {
            loop {
                let (il, ic) = self.here();
                match self.peek().map(|t| &t.tok) {
                    Some(Tok::Int(s)) => {
                        self.pos += 1;
                        index.push(s.parse::<u32>().map_err(|_| err(il, ic, "index too large"))?);
                    }
                    _ => return Err(self.unexpected("an index")),
                }
                if self.eat(&Tok::RBracket) {
                    break;
                }
                if !self.eat(&Tok::Comma) {
                    return Err(self.unexpected("`,` or `]`"));
                }
            }
        }
        let mut exp = 1u32;
        if self.eat(&Tok::Caret) {
            exp = self.positive_int::<i64>("exponent").and_then(|e| {
                u32::try_from(e).map_err(|_| err(l, c, "exponent too large"))
            })?;
        }
        Ok((Variable { name, index }, exp, l, c))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) => format!("integer `{s}`"),
        Tok::Name(s) => format!("name `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Comma => "`,`".into(),
    }
}

fn parse_raw<I: crate::scalar::ExactInt>(text: &str, line: usize) -> std::result::Result<Vec<RawTerm<I>>, ParseError> {
    let (toks, end) = lex(text, line)?;
    let mut p = Parser { toks: &toks, pos: 0, end };
    if toks.is_empty() {
        return Err(err(line, 1, "empty polynomial"));
    }
    p.expr()
}

fn resolve<F: Scalar>(
    raw: Vec<RawTerm<F::Int>>,
    ctx: &Arc<VarContext>,
    rename: &dyn Fn(&Variable) -> Option<Variable>,
) -> Result<Polynomial<F>> {
    let n = ctx.len();
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let mut e = vec![0u32; n];
        for (v, k, _, _) in &t.factors {
            let target = rename(v).ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
            let i = ctx.position(&target).ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
            e[i] += k;
        }
        let mut c = F::from_parts(t.numer, t.denom);
        if t.negative {
            c = -c;
        }
        terms.push((Monomial(e), c));
    }
    Ok(Polynomial::from_terms(ctx, terms))
}

fn collect_vars<I>(raws: &[Vec<RawTerm<I>>]) -> Result<Arc<VarContext>> {
    let mut seen: HashMap<Variable, ()> = HashMap::new();
    let mut order = Vec::new();
    for raw in raws {
        for t in raw {
            for (v, _, _, _) in &t.factors {
                if seen.insert(v.clone(), ()).is_none() {
                    order.push(v.clone());
                }
            }
        }
    }
    VarContext::new(order)
}

/// Parse one polynomial. Without a context, variables are collected in
/// order of first appearance.
pub fn parse_polynomial<F: Scalar>(text: &str, ctx: Option<&Arc<VarContext>>) -> Result<Polynomial<F>> {
    let raw = parse_raw::<F::Int>(text, 1)?;
    let ctx = match ctx {
        Some(c) => c.clone(),
        None => collect_vars(std::slice::from_ref(&raw))?,
    };
    resolve(raw, &ctx, &|v| Some(v.clone()))
}

/// Parse one polynomial per line (a linear series), sharing a context.
/// Blank lines and lines starting with `#` are skipped; error positions
/// refer to the original line numbers.
pub fn parse_series<F: Scalar>(text: &str, ctx: Option<&Arc<VarContext>>) -> Result<Vec<Polynomial<F>>> {
    let mut raws = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        raws.push(parse_raw::<F::Int>(line, i + 1)?);
    }
    if raws.is_empty() {
        return Err(ParseError { line: 1, column: 1, message: "no polynomial found".into() }.into());
    }
    let ctx = match ctx {
        Some(c) => c.clone(),
        None => collect_vars(&raws)?,
    };
    raws.into_iter().map(|r| resolve(r, &ctx, &|v| Some(v.clone()))).collect()
}

/// Map a dual variable name back to its primal variable:
/// `d` -> `x`, `d<digits>` -> `x<digits>`, `d_<name>` -> `<name>`.
fn primal_of(v: &Variable) -> Option<Variable> {
    let rest = v.name.strip_prefix('d')?;
    let name = if let Some(named) = rest.strip_prefix('_') {
        if named.is_empty() {
            return None;
        }
        named.to_string()
    } else if rest.chars().all(|c| c.is_ascii_digit()) {
        format!("x{rest}")
    } else {
        return None;
    };
    Some(Variable { name, index: v.index.clone() })
}

/// Parse a dual form such as `d[1,1] + d_y[1,1]` against the primal context.
pub fn parse_dual<F: Scalar>(text: &str, ctx: &Arc<VarContext>) -> Result<DualForm<F>> {
    let raw = parse_raw::<F::Int>(text, 1)?;
    resolve(raw, ctx, &primal_of).map(DualForm)
}
