//! Multiple-precision evaluation used to cross-check the symbolic layer.
//! Nothing here feeds a certificate.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::expansion::{Expansion, LogRat};
use super::shift::ShiftQuantity;
use crate::error::{Error, Result};

/// Relative agreement demanded between two working precisions.
const AGREEMENT: f64 = 1e-25;
const START_PREC: u32 = 128;
const MAX_PREC: u32 = 1 << 16;

/// `r(x)` for a log-rational coefficient at a floating point `x`.
pub fn eval_lograt(r: &LogRat, x: &Float) -> Result<Float> {
    let prec = x.prec();
    let horner = |coeffs: &[Rational]| {
        let mut acc = Float::new(prec);
        for c in coeffs.iter().rev() {
            acc *= x;
            acc += Float::with_val(prec, c);
        }
        acc
    };
    let den = horner(r.den().coeffs());
    if den.is_zero() {
        return Err(Error::Pole(format!(
            "coefficient {} at L = {}",
            r.display_with("L"),
            x
        )));
    }
    Ok(horner(r.num().coeffs()) / den)
}

/// `x^a` for positive `x` and rational `a`.
pub fn pow_rational(x: &Float, a: &Rational) -> Float {
    let prec = x.prec();
    if *a.denom() == 1 {
        return Float::with_val(prec, x.pow(a.numer()));
    }
    let root = x
        .clone()
        .root(a.denom().to_u32().expect("exponent denominator fits in u32"));
    Float::with_val(prec, root.pow(a.numer()))
}

fn eval_at_prec(e: &Expansion, n: &Float) -> Result<Float> {
    let prec = n.prec();
    let log_n = n.clone().ln();
    let mut sum = Float::with_val(prec, 1);
    for t in e.terms() {
        if t.coeff.is_zero() {
            continue;
        }
        let r = eval_lograt(&t.coeff, &log_n)?;
        sum += r / pow_rational(n, &t.exponent);
    }
    Ok(sum)
}

/// `1 + sum r_i(log n) / n^{alpha_i}` at an integer `n >= 2`, raising the
/// working precision until two successive evaluations agree to `1e-25`
/// relative, which leaves the returned value well within `1e-20`.
pub fn numeric_eval(e: &Expansion, n: i64) -> Result<Float> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "numeric_eval needs n >= 2, got {n}"
        )));
    }
    let mut prec = START_PREC;
    let mut prev = eval_at_prec(e, &Float::with_val(prec, n))?;
    while prec < MAX_PREC {
        prec *= 2;
        let next = eval_at_prec(e, &Float::with_val(prec, n))?;
        let diff = Float::with_val(prec, &next - &prev).abs();
        let scale = Float::with_val(prec, next.abs_ref());
        if diff <= scale * AGREEMENT {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::InvalidArgument(format!(
        "no stable value at n = {n} below {MAX_PREC} bits"
    )))
}

/// Exact value (to `prec` bits) of the named shift quantity of
/// `xi(n) = r(log n) / n^gamma`.
pub fn shift_quantity_value(
    r: &LogRat,
    gamma: &Rational,
    alpha: &Rational,
    which: ShiftQuantity,
    n: i64,
    prec: u32,
) -> Result<Float> {
    let at = |k: i64| Float::with_val(prec, n + k);
    let xi = |x: &Float| -> Result<Float> {
        let r_val = eval_lograt(r, &x.clone().ln())?;
        Ok(r_val / pow_rational(x, gamma))
    };
    let pw = |x: &Float| pow_rational(x, alpha);
    let (nm, n0, np) = (at(-1), at(0), at(1));
    Ok(match which {
        ShiftQuantity::A => pw(&np) * xi(&n0)? - pw(&n0) * xi(&np)?,
        ShiftQuantity::B => {
            let (am, a0, ap) = (pw(&nm), pw(&n0), pw(&np));
            xi(&np)? * &am * &a0 + xi(&nm)? * &ap * &a0 - Float::with_val(prec, 2) * xi(&n0)? * am * ap
        }
        ShiftQuantity::C => {
            let x0 = xi(&n0)?;
            xi(&nm)? * xi(&np)? * pw(&n0).square() - x0.square() * pw(&np) * pw(&nm)
        }
    })
}

/// `coeff(log n) * n^exponent` to `prec` bits.
pub fn leading_value(exponent: &Rational, coeff: &LogRat, n: i64, prec: u32) -> Result<Float> {
    let x = Float::with_val(prec, n);
    let c = eval_lograt(coeff, &x.clone().ln())?;
    let p = if exponent.cmp0().is_lt() {
        pow_rational(&x, &Rational::from(-exponent)).recip()
    } else {
        pow_rational(&x, exponent)
    };
    Ok(c * p)
}

/// The Laguerre quotient `u_{n-1} u_n^2 u_{n+1} - 4 u_n + 3` with `u` taken
/// as the truncated expansion.
pub fn laguerre2_quotient(e: &Expansion, n: i64, prec: u32) -> Result<Float> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("needs n >= 3, got {n}")));
    }
    let u = |k: i64| eval_at_prec(e, &Float::with_val(prec, k));
    let (um, u0, up) = (u(n - 1)?, u(n)?, u(n + 1)?);
    let four_u = Float::with_val(prec, &u0 * 4u32);
    Ok(um * u0.square() * up - four_u + 3u32)
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal(x: &Float, digits: usize) -> String {
    x.to_string_radix_round(10, Some(digits), Round::Nearest)
}
