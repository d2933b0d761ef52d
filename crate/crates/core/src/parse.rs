//! Text grammar for polynomials, ideals, rational tuples and center lists.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*'? factor)*
//! factor  := primary ('^' natural)?
//! primary := number | ident | '(' expr ')'
//! number  := digits ('/' digits)?
//! ident   := [A-Za-z_][A-Za-z0-9_']*
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Ambient, ExponentVector, PolyIdeal, Polynomial};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Bar,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            let n: BigInt = s.parse().map_err(|_| perr(pos, "bad number"))?;
            out.push((pos, Tok::Num(n)));
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_continue(chars[i].1) {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Ident(s)));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '|' => Tok::Bar,
            _ => return Err(perr(pos, &alloc::format!("unexpected character '{c}'"))),
        };
        out.push((pos, t));
        i += 1;
    }
    Ok(out)
}

fn perr(position: usize, message: &str) -> Error {
    Error::Parse { position, message: message.to_string() }
}

/// Identifiers occurring in `text`, in natural sort order (`s2` before `s10`).
pub fn collect_variables(text: &str) -> Result<Vec<String>> {
    let mut names: Vec<String> = tokenize(text)?
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect();
    names.sort_by_key(|a| natural_key(a));
    names.dedup();
    Ok(names)
}

fn natural_key(s: &str) -> (String, u64, String) {
    let digits_start = s
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map(|(i, _)| i);
    match digits_start {
        Some(i) if i > 0 => (s[..i].to_string(), s[i..].parse().unwrap_or(u64::MAX), s.to_string()),
        _ => (s.to_string(), 0, s.to_string()),
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ambient: &'a Ambient,
    cap: u32,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ambient: &'a Ambient, cap: u32) -> Result<Self> {
        Ok(Parser { toks: tokenize(text)?, pos: 0, ambient, cap, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        let at = self.here();
        if self.bump() == Some(t) {
            Ok(())
        } else {
            Err(perr(at, &alloc::format!("expected {what}")))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ambient);
        let mut sign_neg = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                sign_neg = true;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign_neg = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign_neg = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.bump();
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn natural(&mut self) -> Result<u32> {
        let at = self.here();
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.bump();
        }
        let n = match self.bump() {
            Some(Tok::Num(n)) => n.to_u32().ok_or_else(|| perr(at, "exponent too large"))?,
            _ => return Err(perr(at, "expected a natural exponent")),
        };
        if paren {
            self.expect(Tok::RParen, "')'")?;
        }
        Ok(n)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.here();
            let k = self.natural()?;
            if let Some(e) = base.monomial_exponent() {
                let c = base.terms().next().map(|(_, c)| c.clone()).unwrap_or_default();
                let scaled: Vec<u32> = e
                    .entries()
                    .iter()
                    .map(|a| a.checked_mul(k).ok_or_else(|| perr(at, "exponent overflow")))
                    .collect::<Result<_>>()?;
                return Ok(Polynomial::monomial(
                    self.ambient,
                    ExponentVector::new(scaled),
                    num_traits::pow::pow(c, k as usize),
                ));
            }
            return base.pow(k, self.cap);
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<Rational> {
        let at = self.here();
        let n = match self.bump() {
            Some(Tok::Num(n)) => n,
            _ => return Err(perr(at, "expected a number")),
        };
        if self.peek() == Some(&Tok::Slash) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Num(d)) if !d.is_zero() => Ok(Rational::new(n, d)),
                _ => Err(perr(at, "expected a nonzero denominator")),
            }
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn primary(&mut self) -> Result<Polynomial> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(_)) => {
                let q = self.number()?;
                Ok(Polynomial::constant(self.ambient, q))
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                Polynomial::var_named(self.ambient, &name)
                    .ok_or_else(|| perr(at, &alloc::format!("unknown variable '{name}'")))
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(perr(at, "expected a number, variable or '('")),
        }
    }

    /// An exponent in a center list: `7`, `15/2` or `(15/2)`.
    fn rational_exponent(&mut self) -> Result<Rational> {
        if self.peek() == Some(&Tok::LParen) {
            self.bump();
            let q = self.number()?;
            self.expect(Tok::RParen, "')'")?;
            Ok(q)
        } else {
            self.number()
        }
    }

    /// A center item: coordinate (identifier or parenthesised expression) and exponent.
    fn center_item(&mut self) -> Result<(Polynomial, Rational)> {
        let coord = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let q = self.rational_exponent()?;
            Ok((coord, q))
        } else {
            Ok((coord, Rational::from_integer(BigInt::from(1))))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(perr(self.here(), "trailing input"))
        }
    }
}

/// Parses a polynomial whose variables all belong to `ambient`.
pub fn parse_polynomial(text: &str, ambient: &Ambient, cap: u32) -> Result<Polynomial> {
    let mut p = Parser::new(text, ambient, cap)?;
    let f = p.expr()?;
    p.finish()?;
    Ok(f)
}

/// Parses `f, g, ...`, optionally wrapped in parentheses.
pub fn parse_ideal(text: &str, ambient: &Ambient, cap: u32) -> Result<PolyIdeal> {
    let mut p = Parser::new(text, ambient, cap)?;
    let mut gens = Vec::new();
    let wrapped = {
        // A leading '(' wraps the list only if its matching ')' closes the whole input.
        let mut depth = 0i32;
        let mut closes_at_end = false;
        if p.toks.first().map(|(_, t)| t) == Some(&Tok::LParen) {
            for (k, (_, t)) in p.toks.iter().enumerate() {
                match t {
                    Tok::LParen => depth += 1,
                    Tok::RParen => {
                        depth -= 1;
                        if depth == 0 {
                            closes_at_end = k + 1 == p.toks.len();
                            break;
                        }
                    }
                    _ => {}
                }
            }
        }
        closes_at_end
    };
    if wrapped {
        p.bump();
    }
    if !(wrapped && p.peek() == Some(&Tok::RParen)) && !p.at_end() {
        loop {
            gens.push(p.expr()?);
            if p.peek() == Some(&Tok::Comma) {
                p.bump();
            } else {
                break;
            }
        }
    }
    if wrapped {
        p.expect(Tok::RParen, "')'")?;
    }
    p.finish()?;
    PolyIdeal::new(ambient, gens)
}

/// Parses `(q1, q2, ...)`; `()` is the empty tuple.
pub fn parse_rational_tuple(text: &str) -> Result<Vec<Rational>> {
    let empty = Ambient::new(Vec::<String>::new());
    let mut p = Parser::new(text, &empty, 0)?;
    p.expect(Tok::LParen, "'('")?;
    let mut out = Vec::new();
    if p.peek() == Some(&Tok::RParen) {
        p.bump();
        p.finish()?;
        return Ok(out);
    }
    loop {
        let neg = if p.peek() == Some(&Tok::Minus) {
            p.bump();
            true
        } else {
            false
        };
        let q = p.number()?;
        out.push(if neg { -q } else { q });
        match p.bump() {
            Some(Tok::Comma) => continue,
            Some(Tok::RParen) => break,
            _ => return Err(perr(p.here(), "expected ',' or ')'")),
        }
    }
    p.finish()?;
    Ok(out)
}

/// Items of a center list `[s1, s2 | x^5, y^(15/2)]`: the s-block coordinates and the
/// t-block `(coordinate, exponent)` pairs. Without a bar, items with exponent 1 form the s-block.
pub struct CenterItems {
    pub s_block: Vec<Polynomial>,
    pub t_block: Vec<(Polynomial, Rational)>,
}

pub fn parse_center_items(text: &str, ambient: &Ambient, cap: u32) -> Result<CenterItems> {
    let mut p = Parser::new(text, ambient, cap)?;
    p.expect(Tok::LBracket, "'['")?;
    let mut before = Vec::new();
    let mut after = Vec::new();
    let mut saw_bar = false;
    if p.peek() == Some(&Tok::RBracket) {
        p.bump();
        p.finish()?;
        return Ok(CenterItems { s_block: Vec::new(), t_block: Vec::new() });
    }
    loop {
        if p.peek() == Some(&Tok::Bar) && !saw_bar {
            p.bump();
            saw_bar = true;
            if p.peek() == Some(&Tok::RBracket) {
                p.bump();
                break;
            }
        }
        let item = p.center_item()?;
        if saw_bar {
            after.push(item);
        } else {
            before.push(item);
        }
        match p.peek() {
            Some(Tok::Comma) => {
                p.bump();
            }
            Some(Tok::Bar) if !saw_bar => {}
            Some(Tok::RBracket) => {
                p.bump();
                break;
            }
            _ => return Err(perr(p.here(), "expected ',', '|' or ']'")),
        }
    }
    p.finish()?;
    let one = Rational::from_integer(BigInt::from(1));
    if saw_bar {
        if before.iter().any(|(_, q)| *q != one) {
            return Err(perr(0, "s-block coordinates must have exponent 1"));
        }
        Ok(CenterItems { s_block: before.into_iter().map(|(c, _)| c).collect(), t_block: after })
    } else {
        let (s, t): (Vec<_>, Vec<_>) = before.into_iter().partition(|(_, q)| *q == one);
        Ok(CenterItems { s_block: s.into_iter().map(|(c, _)| c).collect(), t_block: t })
    }
}
