//! Text grammar for expressions.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INT)?
//! atom    := INT | INT '/' INT | IDENT | 'exp' '(' expr ')' | '(' expr ')'
//! ```
//!
//! The argument of `exp` must reduce to a linear form in coordinates with
//! rational coefficients and no constant part.

use super::{Expr, SymError, Symbol, Term};
use crate::scalar::Scalar;

/// Resolves identifiers: names listed as coordinates become coordinates,
/// everything else is a parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    coordinates: Vec<Symbol>,
}

impl SymbolTable {
    pub fn new<S: AsRef<str>>(coordinates: &[S]) -> Self {
        SymbolTable {
            coordinates: coordinates
                .iter()
                .map(|n| Symbol::coordinate(n.as_ref()))
                .collect(),
        }
    }

    pub fn coordinates(&self) -> &[Symbol] {
        &self.coordinates
    }

    pub fn resolve(&self, name: &str) -> Symbol {
        self.coordinates
            .iter()
            .find(|s| s.name() == name)
            .cloned()
            .unwrap_or_else(|| Symbol::parameter(name))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SymError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].to_string())));
                continue;
            }
            'A'..='Z' | 'a'..='z' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(SymError::parse(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    table: &'a SymbolTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SymError> {
        let at = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(SymError::parse(at, format!("expected {what}"))),
        }
    }

    fn expr<C: Scalar>(&mut self) -> Result<Expr<C>, SymError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product<C: Scalar>(&mut self) -> Result<Expr<C>, SymError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary<C: Scalar>(&mut self) -> Result<Expr<C>, SymError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power<C: Scalar>(&mut self) -> Result<Expr<C>, SymError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .parse()
                        .map_err(|_| SymError::parse(at, "exponent out of range"))?;
                    return Ok(base.pow(e));
                }
                _ => {
                    return Err(SymError::parse(
                        at,
                        "exponent must be a nonnegative integer literal",
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom<C: Scalar>(&mut self) -> Result<Expr<C>, SymError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let mut literal = n;
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Some(Tok::Num(d)) => {
                            literal.push('/');
                            literal.push_str(&d);
                        }
                        _ => return Err(SymError::parse(dat, "expected integer denominator")),
                    }
                }
                C::parse_literal(&literal)
                    .map(Expr::constant)
                    .ok_or_else(|| SymError::parse(at, format!("invalid number '{literal}'")))
            }
            Some(Tok::Ident(name)) if name == "exp" => {
                self.expect(Tok::LParen, "'(' after exp")?;
                let arg_at = self.offset();
                let arg: Expr<C> = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                exp_of_linear(&arg).map_err(|msg| SymError::parse(arg_at, msg))
            }
            Some(Tok::Ident(name)) => Ok(Expr::symbol(&self.table.resolve(&name))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(_) => Err(SymError::parse(at, "unexpected token")),
            None => Err(SymError::parse(at, "unexpected end of input")),
        }
    }
}

fn exp_of_linear<C: Scalar>(arg: &Expr<C>) -> Result<Expr<C>, String> {
    let mut expo = Vec::new();
    for t in arg.terms() {
        if !t.expo().is_empty() {
            return Err("exp argument must not contain exp".into());
        }
        let mut powers = t.powers().iter();
        match (powers.next(), powers.next()) {
            (Some((s, 1)), None) if s.is_coordinate() => expo.push((s.clone(), t.coeff().clone())),
            (None, _) => return Err("exp argument must have no constant part".into()),
            _ => {
                return Err(format!(
                    "exp argument must be linear in coordinates, found term '{t}'"
                ))
            }
        }
    }
    Term::new(C::one(), [], expo)
        .map(Expr::from_term)
        .map_err(|e| e.to_string())
}

/// Parses an expression; identifiers resolve through `table`.
pub fn parse_expr<C: Scalar>(text: &str, table: &SymbolTable) -> Result<Expr<C>, SymError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        table,
    };
    if p.peek().is_none() {
        return Err(SymError::parse(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(SymError::parse(p.offset(), "trailing input"));
    }
    Ok(e)
}
