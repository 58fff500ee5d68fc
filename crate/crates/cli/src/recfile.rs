//! Recurrence files.
//!
//! ```text
//! # central trinomial coefficients
//! name: trinomial
//! order: 2
//! lhs: n + 2
//! coeff[1]: 2*n + 3
//! coeff[2]: 3*(n + 1)
//! initial: 1, 1
//! offset: 0
//! ```
//!
//! The recurrence is `a_{n+d} = R_1(n) a_{n+d-1} + ... + R_d(n) a_n` with
//! `R_i = coeff[i] / lhs`. `scale: s` replaces `a_n` by `h(n) a_n` where
//! `h(offset) = 1` and `h(n+1) = s(n) h(n)`.

use std::collections::BTreeMap;
use std::path::Path;

use logmono_core::holdpoint::integer_roots_from;
use logmono_core::{RationalFunction, Recurrence};

use crate::error::CliError;
use crate::expr::{parse_expression, parse_rational};

#[derive(Clone, Debug)]
pub struct RecurrenceFile {
    pub name: Option<String>,
    pub recurrence: Recurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Name,
    Order,
    Lhs,
    Coeff(usize),
    Initial,
    Offset,
    Scale,
}

fn parse_key(raw: &str) -> Option<Key> {
    Some(match raw {
        "name" => Key::Name,
        "order" => Key::Order,
        "lhs" => Key::Lhs,
        "initial" => Key::Initial,
        "offset" => Key::Offset,
        "scale" => Key::Scale,
        _ => {
            let idx = raw.strip_prefix("coeff[")?.strip_suffix(']')?;
            Key::Coeff(idx.trim().parse().ok()?)
        }
    })
}

/// Parses the text of a recurrence file; `origin` names it in messages.
pub fn parse_recurrence_file(text: &str, origin: &str) -> Result<RecurrenceFile, CliError> {
    let err = |line: usize, message: String| CliError::RecFile {
        path: origin.to_string(),
        line,
        message,
    };
    let mut entries: BTreeMap<Key, (usize, String)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, format!("expected 'key: value', got '{line}'")))?;
        let key = parse_key(k.trim()).ok_or_else(|| err(line_no, format!("unknown key '{}'", k.trim())))?;
        if entries.insert(key, (line_no, v.trim().to_string())).is_some() {
            return Err(err(line_no, format!("duplicate key '{}'", k.trim())));
        }
    }
    let expr_at = |key: Key| -> Result<Option<(usize, RationalFunction)>, CliError> {
        match entries.get(&key) {
            None => Ok(None),
            Some((line, v)) => parse_expression(v)
                .map(|f| Some((*line, f)))
                .map_err(|e| err(*line, e.to_string())),
        }
    };
    let (order_line, order_text) = entries
        .get(&Key::Order)
        .ok_or_else(|| err(0, "missing key 'order'".into()))?;
    let order: usize = order_text.parse().ok().filter(|d| *d > 0).ok_or_else(|| {
        err(
            *order_line,
            format!("order must be a positive integer, got '{order_text}'"),
        )
    })?;
    for key in entries.keys() {
        if let Key::Coeff(i) = key {
            if *i == 0 || *i > order {
                let line = entries[key].0;
                return Err(err(line, format!("coeff[{i}] is outside 1..={order}")));
            }
        }
    }
    let offset = match entries.get(&Key::Offset) {
        None => 0,
        Some((line, v)) => v
            .parse::<i64>()
            .map_err(|_| err(*line, format!("offset must be an integer, got '{v}'")))?,
    };
    let lhs = expr_at(Key::Lhs)?;
    if let Some((line, f)) = &lhs {
        if f.is_zero() {
            return Err(err(*line, "lhs is zero".into()));
        }
    }
    let mut coeffs = Vec::with_capacity(order);
    for i in 1..=order {
        let (line, c) = expr_at(Key::Coeff(i))?.ok_or_else(|| err(0, format!("missing key 'coeff[{i}]'")))?;
        let r = match &lhs {
            Some((_, l)) => c.checked_div(l)?,
            None => c,
        };
        // R_i(k) is used for k >= offset
        if let Some(&pole) = integer_roots_from(r.den(), offset).first() {
            return Err(err(line, format!("coeff[{i}] has a pole at n = {pole}")));
        }
        coeffs.push(r);
    }
    let (init_line, init_text) = entries
        .get(&Key::Initial)
        .ok_or_else(|| err(0, "missing key 'initial'".into()))?;
    let initials = init_text
        .split(',')
        .map(|s| parse_rational(s.trim()).map_err(|e| err(*init_line, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rec = Recurrence::new(coeffs, offset, initials).map_err(|e| err(*init_line, e.to_string()))?;
    if let Some((line, s)) = expr_at(Key::Scale)? {
        rec = rec.with_scale(s).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(RecurrenceFile {
        name: entries.get(&Key::Name).map(|(_, v)| v.clone()),
        recurrence: rec,
    })
}

pub fn read_recurrence_file(path: &Path) -> Result<(RecurrenceFile, Vec<u8>), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Input(format!("{} is not valid UTF-8", path.display())))?;
    let parsed = parse_recurrence_file(text, &path.display().to_string())?;
    Ok((parsed, bytes))
}
