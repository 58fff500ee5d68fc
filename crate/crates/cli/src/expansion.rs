//! Expansion literals such as `1 + (2)/n^2 - (L)/n^3 + O(n^-4)`.
//!
//! Each term is `coefficient/n^exponent` with the coefficient a rational
//! expression in `L` (standing for `log n`) and the exponent an integer or a
//! fraction `(p/q)`. `/n` alone means exponent 1. The literal starts with `1`
//! and ends with `O(n^-beta)`.

use logmono_core::asymptotics::{Expansion, LogRat};
use logmono_core::Rational;

use crate::error::CliError;
use crate::expr::{parse_expression_in, parse_rational};

/// Splits at top-level `+`/`-`, keeping the sign with each piece.
fn split_terms(text: &str) -> Result<Vec<(usize, bool, &str)>, CliError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let mut prev_significant = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(CliError::syntax(text, i, "unbalanced ')'"));
                }
            }
            '+' | '-' if depth == 0 && !matches!(prev_significant, None | Some('^')) => {
                out.push((start, negative, &text[start..i]));
                negative = c == '-';
                start = i + 1;
            }
            _ => {}
        }
        if !c.is_whitespace() {
            prev_significant = Some(c);
        }
    }
    if depth != 0 {
        return Err(CliError::syntax(text, text.len(), "unbalanced '('"));
    }
    out.push((start, negative, &text[start..]));
    Ok(out)
}

fn parse_exponent(text: &str, at: usize, whole: &str) -> Result<Rational, CliError> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
    parse_rational(t).map_err(|_| CliError::syntax(whole, at, format!("bad exponent '{text}'")))
}

/// Splits `coef/n^a` into the coefficient text and the exponent.
fn split_power(term: &str, at: usize, whole: &str) -> Result<(String, Rational), CliError> {
    let compact: String = term.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = compact.as_bytes();
    let mut depth = 0i32;
    let mut slash = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 && bytes.get(i + 1) == Some(&b'n') => slash = Some(i),
            _ => {}
        }
    }
    let Some(i) = slash else {
        return Err(CliError::syntax(
            whole,
            at,
            format!("term '{}' is not of the form coefficient/n^exponent", term.trim()),
        ));
    };
    let coeff = compact[..i].to_string();
    let rest = &compact[i + 2..];
    let exponent = if rest.is_empty() {
        Rational::from(1)
    } else if let Some(e) = rest.strip_prefix('^') {
        parse_exponent(e, at, whole)?
    } else {
        return Err(CliError::syntax(
            whole,
            at,
            format!("unexpected '{rest}' after n"),
        ));
    };
    Ok((coeff, exponent))
}

fn parse_remainder(term: &str, at: usize, whole: &str) -> Result<Option<Rational>, CliError> {
    let compact: String = term.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(inner) = compact
        .strip_prefix("O(")
        .or_else(|| compact.strip_prefix("o("))
        .and_then(|s| s.strip_suffix(')'))
    else {
        return Ok(None);
    };
    let e = inner
        .strip_prefix("n^-")
        .ok_or_else(|| CliError::syntax(whole, at, "remainder must read O(n^-beta)"))?;
    parse_exponent(e, at, whole).map(Some)
}

/// Parses an expansion literal.
pub fn parse_expansion(text: &str) -> Result<Expansion, CliError> {
    let pieces = split_terms(text)?;
    let (first_at, first_neg, first) = pieces[0];
    if first_neg || first.trim() != "1" {
        return Err(CliError::syntax(text, first_at, "expansion must start with 1"));
    }
    let mut pairs = Vec::new();
    let mut beta = None;
    for &(at, negative, term) in &pieces[1..] {
        if beta.is_some() {
            return Err(CliError::syntax(text, at, "the O(n^-beta) term must come last"));
        }
        if let Some(b) = parse_remainder(term, at, text)? {
            if negative {
                return Err(CliError::syntax(text, at, "write the remainder as + O(n^-beta)"));
            }
            beta = Some(b);
            continue;
        }
        let (coeff_text, exponent) = split_power(term, at, text)?;
        let mut coeff: LogRat = parse_expression_in(&coeff_text, 'L')
            .map_err(|e| CliError::Input(format!("in coefficient '{coeff_text}': {e}")))?;
        if negative {
            coeff = -&coeff;
        }
        pairs.push((exponent, coeff));
    }
    let beta = beta.ok_or_else(|| CliError::syntax(text, text.len(), "missing + O(n^-beta) remainder"))?;
    Ok(Expansion::from_pairs(pairs, beta)?)
}
