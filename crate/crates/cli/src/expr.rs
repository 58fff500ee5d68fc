//! Rational expressions in one variable, read by precedence climbing.
//!
//! ```text
//! expr    := unary (binop unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! atom    := integer | variable | '(' expr ')'
//! ```
//!
//! `+ -` bind loosest, then `* /`, then `^`, which takes a single integer
//! exponent (optionally negative, optionally parenthesised).

use logmono_core::{Rational, RationalFunction};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(rug::Integer),
    Var,
    Op(char),
    Open,
    Close,
}

fn tokenize(text: &str, var: char) -> Result<Vec<(usize, Token)>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                let value = digits.parse().expect("ascii digits");
                out.push((start, Token::Int(value)));
            }
            '+' | '-' | '*' | '/' | '^' => out.push((i, Token::Op(c))),
            '(' => out.push((i, Token::Open)),
            ')' => out.push((i, Token::Close)),
            _ if c == var => out.push((i, Token::Var)),
            _ => {
                return Err(CliError::syntax(text, i, format!("unexpected character '{c}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.text.len(), |(p, _)| *p)
    }

    fn error(&self, msg: impl Into<String>) -> CliError {
        CliError::syntax(self.text, self.offset(), msg)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self, min_prec: u8) -> Result<RationalFunction, CliError> {
        let mut lhs = self.unary()?;
        loop {
            let (op, prec) = match self.peek() {
                Some(Token::Op(c @ ('+' | '-'))) => (*c, 1),
                Some(Token::Op(c @ ('*' | '/'))) => (*c, 2),
                _ => break,
            };
            if prec < min_prec {
                break;
            }
            let at = self.offset();
            self.pos += 1;
            let rhs = self.expr(prec + 1)?;
            lhs = match op {
                '+' => &lhs + &rhs,
                '-' => &lhs - &rhs,
                '*' => &lhs * &rhs,
                _ => lhs
                    .checked_div(&rhs)
                    .map_err(|_| CliError::syntax(self.text, at, "division by zero"))?,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<RationalFunction, CliError> {
        if self.peek() == Some(&Token::Op('-')) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, CliError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Op('^')) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let exp = self.exponent()?;
        base.pow(exp)
            .map_err(|_| CliError::syntax(self.text, at, "negative power of zero"))
    }

    fn exponent(&mut self) -> Result<i32, CliError> {
        let negative = if self.peek() == Some(&Token::Op('-')) {
            self.pos += 1;
            true
        } else {
            false
        };
        if self.peek() == Some(&Token::Open) {
            self.pos += 1;
            let inner = self.exponent()?;
            if self.next() != Some(Token::Close) {
                self.pos -= 1;
                return Err(self.error("expected ')' after exponent"));
            }
            return Ok(if negative { -inner } else { inner });
        }
        match self.next() {
            Some(Token::Int(v)) => {
                let e = v
                    .to_i32()
                    .filter(|e| *e <= 4096)
                    .ok_or_else(|| self.error("exponent too large"))?;
                Ok(if negative { -e } else { e })
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected an integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<RationalFunction, CliError> {
        match self.next() {
            Some(Token::Int(v)) => Ok(RationalFunction::constant(Rational::from(v))),
            Some(Token::Var) => Ok(RationalFunction::x()),
            Some(Token::Open) => {
                let inner = self.expr(1)?;
                if self.next() != Some(Token::Close) {
                    self.pos -= 1;
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            None => Err(self.error("unexpected end of expression")),
            Some(_) => {
                self.pos -= 1;
                Err(self.error("expected a number, variable or '('"))
            }
        }
    }
}

/// Parses `text` as a rational function of `var`.
pub fn parse_expression_in(text: &str, var: char) -> Result<RationalFunction, CliError> {
    let tokens = tokenize(text, var)?;
    let mut p = Parser { text, tokens, pos: 0 };
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let f = p.expr(1)?;
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses `text` as a rational function of `n`.
pub fn parse_expression(text: &str) -> Result<RationalFunction, CliError> {
    parse_expression_in(text, 'n')
}

/// An exact rational literal such as `-3`, `7/2` or `(1/3)`.
pub fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let f = parse_expression_in(text, 'n')?;
    f.as_constant()
        .ok_or_else(|| CliError::syntax(text, 0, "expected a constant"))
}
