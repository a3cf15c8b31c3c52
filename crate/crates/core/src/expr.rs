//! Textual mathematical expressions: a small recursive-descent parser with
//! standard precedence, an AST, and lowering of rational expressions to
//! canonical [`RatFunc`] form. `ln(...)` is representable but only the
//! numeric relation checker evaluates it.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::ratfield::{RatFunc, Var};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Variable(String),
    Constant(BigRational),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
    Ln(Box<Expr>),
}

impl Expr {
    pub fn contains_ln(&self) -> bool {
        match self {
            Expr::Ln(_) => true,
            Expr::Variable(_) | Expr::Constant(_) => false,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().any(Expr::contains_ln),
            Expr::Div(a, b) => a.contains_ln() || b.contains_ln(),
            Expr::Pow(a, _) => a.contains_ln(),
            Expr::Neg(a) => a.contains_ln(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push((Tok::Minus, i));
                i += c.len_utf8();
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Num(n), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{other}`") })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        let pos = self.here();
        match self.bump() {
            Some(found) if found == t => Ok(()),
            Some(found) => {
                Err(Error::Syntax { pos, msg: format!("expected {t:?}, found {found:?}") })
            }
            None => Err(Error::Syntax { pos, msg: format!("expected {t:?}, found end of input") }),
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    terms.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = match acc {
                        Expr::Mul(mut xs) => {
                            xs.push(rhs);
                            Expr::Mul(xs)
                        }
                        other => Expr::Mul(vec![other, rhs]),
                    };
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = Expr::Div(Box::new(acc), Box::new(rhs));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    // power := atom ('^' exponent)?   (right-associative)
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.here();
            let exp = self.exponent(pos)?;
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn exponent(&mut self, pos: usize) -> Result<i32> {
        let neg = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Num(n)) => {
                let v: i32 = n
                    .try_into()
                    .map_err(|_| Error::NonIntegerExponent { pos })?;
                let mut v = v;
                if neg {
                    v = -v;
                }
                // right-associative tower: x^2^3
                if matches!(self.peek(), Some(Tok::Caret)) {
                    self.bump();
                    let inner = self.exponent(self.here())?;
                    let total = (v as i64).checked_pow(inner.try_into().map_err(|_| {
                        Error::NonIntegerExponent { pos }
                    })?);
                    return total
                        .and_then(|t| i32::try_from(t).ok())
                        .ok_or(Error::NonIntegerExponent { pos });
                }
                Ok(v)
            }
            Some(Tok::LParen) => {
                let e = self.exponent(self.here())?;
                self.expect(Tok::RParen)?;
                Ok(if neg { -e } else { e })
            }
            _ => Err(Error::NonIntegerExponent { pos }),
        }
    }

    // atom := number | ident | ident '(' expr ')' | '(' expr ')'
    fn atom(&mut self) -> Result<Expr> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Constant(BigRational::from_integer(n))),
            Some(Tok::Ident(name)) => {
                if name == "ln" {
                    self.expect(Tok::LParen)?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::Ln(Box::new(inner)));
                }
                if self.vars.iter().any(|&v| v == name) {
                    Ok(Expr::Variable(name))
                } else {
                    Err(Error::UnknownIdentifier { name, pos })
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(t) => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
            None => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parse `text` over the declared variable names.
pub fn parse(text: &str, vars: &[&str]) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len(), vars };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Syntax { pos: p.here(), msg: "trailing input".into() });
    }
    Ok(e)
}

/// Lower an Ln-free expression to a canonical rational function.
pub fn lower(e: &Expr) -> Result<RatFunc> {
    match e {
        Expr::Variable(name) => Ok(RatFunc::var(Var::intern(name))),
        Expr::Constant(c) => Ok(RatFunc::from_rational(c.clone())),
        Expr::Add(xs) => {
            let mut acc = RatFunc::zero();
            for x in xs {
                acc = acc.add(&lower(x)?);
            }
            Ok(acc)
        }
        Expr::Mul(xs) => {
            let mut acc = RatFunc::one();
            for x in xs {
                acc = acc.mul(&lower(x)?);
            }
            Ok(acc)
        }
        Expr::Div(a, b) => lower(a)?.div(&lower(b)?),
        Expr::Pow(a, n) => lower(a)?.pow(*n),
        Expr::Neg(a) => Ok(lower(a)?.neg()),
        Expr::Ln(_) => Err(Error::ContainsTranscendental),
    }
}

/// Parse and lower in one step.
pub fn parse_ratfunc(text: &str, vars: &[&str]) -> Result<RatFunc> {
    lower(&parse(text, vars)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{VAR_X, VAR_Y};

    const XY: &[&str] = &["x", "y"];

    #[test]
    fn parses_web_function() {
        let e = parse("(2*x*y - x + y)/(x + y)", XY).unwrap();
        match &e {
            Expr::Div(n, d) => {
                assert!(matches!(**n, Expr::Add(_)));
                assert!(matches!(**d, Expr::Add(_)));
            }
            other => panic!("expected Div, got {other:?}"),
        }
    }

    #[test]
    fn parses_atoms_and_powers() {
        assert_eq!(parse("x", XY).unwrap(), Expr::Variable("x".into()));
        let e = parse("x^2 + y^2", XY).unwrap();
        match e {
            Expr::Add(xs) => {
                assert_eq!(xs.len(), 2);
                assert!(matches!(xs[0], Expr::Pow(_, 2)));
            }
            other => panic!("expected Add, got {other:?}"),
        }
    }

    #[test]
    fn lowering_examples() {
        let r = parse_ratfunc("(x^2 - y^2)/(x - y)", XY).unwrap();
        assert_eq!(r, RatFunc::var(VAR_X).add(&RatFunc::var(VAR_Y)));

        let r = parse_ratfunc("x/y", XY).unwrap();
        assert_eq!(r, RatFunc::var(VAR_X).div(&RatFunc::var(VAR_Y)).unwrap());

        let e = parse("ln(x)", XY).unwrap();
        assert_eq!(lower(&e), Err(Error::ContainsTranscendental));
    }

    #[test]
    fn negative_and_nested_exponents() {
        let r = parse_ratfunc("x^-2", XY).unwrap();
        assert_eq!(r, RatFunc::var(VAR_X).pow(-2).unwrap());
        let r = parse_ratfunc("(x + y)^(-1)", XY).unwrap();
        assert_eq!(r, RatFunc::var(VAR_X).add(&RatFunc::var(VAR_Y)).recip().unwrap());
    }

    #[test]
    fn error_positions() {
        match parse("x + $", XY) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse("x + z", XY) {
            Err(Error::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "z");
                assert_eq!(pos, 4);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        match parse("x^y", XY) {
            Err(Error::NonIntegerExponent { .. }) => {}
            other => panic!("expected non-integer exponent, got {other:?}"),
        }
    }

    #[test]
    fn rational_literal_folds() {
        let r = parse_ratfunc("3/4", XY).unwrap();
        assert_eq!(r.to_string(), "3/4");
    }

    #[test]
    fn renderer_round_trips() {
        for text in [
            "(2*x*y - x + y)/(x + y)",
            "x^2 + y^2",
            "(x*y^2)/(x^2 - 2*x*y + y^2)",
            "-x + 3",
            "x/y",
        ] {
            let r = parse_ratfunc(text, XY).unwrap();
            let back = parse_ratfunc(&r.to_string(), XY).unwrap();
            assert_eq!(back, r, "round trip failed for {text}");
        }
        let _ = VAR_Y; // silence unused in some cfgs
    }
}
