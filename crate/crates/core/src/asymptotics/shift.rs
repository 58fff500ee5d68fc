//! Expansion algebra for functions of `log n` under index shifts.

use std::cmp::Ordering;

use rug::{Integer, Rational};

use super::expansion::LogRat;
use crate::error::{Error, Result};

/// Direction of the index shift `n -> n + direction`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn sign(self) -> i32 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// Coefficients `r_1, ..., r_K` with
/// `r(log(n +- 1)) - r(log n) = sum_i r_i(log n) / n^i + o(n^-K)`.
///
/// Computed by Taylor-expanding `r(L + delta)` where
/// `delta = log(1 +- t) = sum_j (-1)^{j+1} (+-t)^j / j` and `t = 1/n`.
pub fn shift_expand(r: &LogRat, k: usize, direction: Direction) -> Result<Vec<LogRat>> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "expansion order K must be positive".into(),
        ));
    }
    let dir = direction.sign();
    // delta[j] = [t^j] log(1 + dir t)
    let mut delta = vec![Rational::new(); k + 1];
    for (j, d) in delta.iter_mut().enumerate().skip(1) {
        let sign = if dir > 0 && j % 2 == 1 { 1 } else { -1 };
        *d = Rational::from((sign, j as i64));
    }
    // powers[p] = delta^p truncated at t^k
    let mut power = delta.clone();
    let mut derivative = r.clone();
    let mut factorial = Integer::from(1);
    let mut out = vec![LogRat::zero(); k];
    for p in 1..=k {
        derivative = derivative.derivative();
        factorial *= p as u32;
        let scaled = derivative.scale(&Rational::from((Integer::from(1), factorial.clone())));
        for i in p..=k {
            if power[i].cmp0() != Ordering::Equal {
                out[i - 1] = &out[i - 1] + &scaled.scale(&power[i]);
            }
        }
        power = truncated_mul(&power, &delta, k);
    }
    Ok(out)
}

fn truncated_mul(a: &[Rational], b: &[Rational], k: usize) -> Vec<Rational> {
    let mut out = vec![Rational::new(); k + 1];
    for (i, x) in a.iter().enumerate() {
        if x.cmp0() == Ordering::Equal {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k + 1 - i) {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// The three shift combinations of `xi(n) = r(log n) / n^gamma` whose
/// leading behaviour drives the log-monotonicity and Laguerre arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftQuantity {
    /// `(n+1)^a xi(n) - n^a xi(n+1)`
    A,
    /// `xi(n+1)(n-1)^a n^a + xi(n-1)(n+1)^a n^a - 2 xi(n)(n-1)^a(n+1)^a`
    B,
    /// `xi(n-1) xi(n+1) n^{2a} - xi(n)^2 (n+1)^a (n-1)^a`
    C,
}

/// Leading term `coefficient(log n) * n^exponent` of the named quantity.
pub fn shift_quantity_leading(
    r: &LogRat,
    gamma: &Rational,
    alpha: &Rational,
    which: ShiftQuantity,
) -> Result<(Rational, LogRat)> {
    if gamma.cmp0() != Ordering::Greater || alpha.cmp0() != Ordering::Greater {
        return Err(Error::InvalidArgument("both exponents must be positive".into()));
    }
    let s = Rational::from(alpha + gamma);
    Ok(match which {
        ShiftQuantity::A => (Rational::from(alpha - gamma) - 1u32, r.scale(&s)),
        ShiftQuantity::B => {
            let exp = Rational::from(alpha * 2u32) - gamma.clone() - 2u32;
            let c = Rational::from(&s * &(s.clone() + 1u32));
            (exp, r.scale(&c))
        }
        ShiftQuantity::C => {
            let exp = Rational::from(alpha - gamma) * 2u32 - 2u32;
            (exp, (r * r).scale(&s))
        }
    })
}
