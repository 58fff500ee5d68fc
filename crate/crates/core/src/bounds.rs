//! Rational bounds on `b_n = a_{n+1}/a_n` and `u_n`, certified by interval
//! induction for order-two recurrences.
//!
//! For `a_{n+2} = R_1(n) a_{n+1} + R_2(n) a_n` the ratios obey
//! `b_{n+1} = T_n(b_n)` with `T_n(x) = R_1(n) + R_2(n)/x`, which is monotone
//! in `x > 0`: decreasing when `R_2(n) > 0`, increasing when `R_2(n) < 0`.
//! Bounds `l <= b_n <= h` at `n = N_1` then propagate to every `n >= N_1` as
//! soon as the images of the end points stay inside `[l(n+1), h(n+1)]`.

use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::holdpoint::hold_point;
use crate::poly::Poly;
use crate::ratfunc::RationalFunction;
use crate::recurrence::{scale_u_factor, Recurrence};
use crate::sequence::{Outcome, SequenceCache};

/// Base indices tried by [`propose_bounds`].
pub const BASE_GRID: [i64; 6] = [10, 20, 50, 100, 250, 500];
/// Total certification attempts allowed in [`propose_bounds`].
pub const SEARCH_BUDGET: usize = 40;
/// Margin doublings tried per base index.
const DOUBLINGS_PER_BASE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Certified,
    Supplied,
    ScanVerified,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Certified => "certified",
            Provenance::Supplied => "supplied",
            Provenance::ScanVerified => "scan-verified",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Claimed bounds `g(n) < u_n < f(n)` for `n >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundPair {
    pub g: RationalFunction,
    pub f: RationalFunction,
    pub valid_from: i64,
    pub provenance: Provenance,
}

impl BoundPair {
    pub fn new(g: RationalFunction, f: RationalFunction, valid_from: i64, provenance: Provenance) -> Self {
        BoundPair {
            g,
            f,
            valid_from,
            provenance,
        }
    }

    /// `g < f` and both are pole-free at every integer `>= valid_from`.
    pub fn is_ordered(&self) -> bool {
        hold_point(&(&self.f - &self.g), self.valid_from) == Some(self.valid_from)
            && no_pole_from(&self.g, self.valid_from)
            && no_pole_from(&self.f, self.valid_from)
    }
}

fn no_pole_from(f: &RationalFunction, n: i64) -> bool {
    crate::holdpoint::integer_roots_from(f.den(), n).is_empty()
}

/// `b_n ~ lambda (1 + c_1/n + ... + c_K/n^K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioExpansion {
    pub lambda: Rational,
    pub coeffs: Vec<Rational>,
}

impl RatioExpansion {
    /// The truncation `Lambda_K(n)` as a rational function.
    pub fn truncation(&self) -> RationalFunction {
        let k = self.coeffs.len();
        // lambda (n^K + c_1 n^{K-1} + ... + c_K) / n^K
        let mut num = vec![Rational::new(); k + 1];
        num[k] = Rational::from(1);
        for (j, c) in self.coeffs.iter().enumerate() {
            num[k - 1 - j] = c.clone();
        }
        let num = Poly::from_coeffs(num).scale(&self.lambda);
        RationalFunction::new(num, Poly::monomial(Rational::from(1), k)).expect("nonzero denominator")
    }

    /// `L(n+1) L(n) - R_1(n) L(n) - R_2(n)` for `L = Lambda_K`.
    pub fn residual(&self, rec: &Recurrence) -> RationalFunction {
        let l = self.truncation();
        let r = rec.coeffs();
        &(&(&l.shift(1) * &l) - &(&r[0] * &l)) - &r[1]
    }
}

/// Power series in `t = 1/n` of a rational function with a finite limit.
fn series_at_infinity(f: &RationalFunction, order: usize) -> Result<Vec<Rational>> {
    let dp = f.num().degree();
    let dq = f.den().degree().expect("nonzero denominator");
    let Some(dp) = dp else {
        return Ok(vec![Rational::new(); order + 1]);
    };
    if dp > dq {
        return Err(Error::Inapplicable(format!(
            "coefficient {f} has no finite limit"
        )));
    }
    let shift = dq - dp;
    let rev = |p: &Poly, d: usize| -> Vec<Rational> { (0..=d).map(|j| p.coeff(d - j)).collect() };
    let p = rev(f.num(), dp);
    let q = rev(f.den(), dq);
    let mut out = vec![Rational::new(); order + 1];
    // out[shift + i] = (p[i] - sum_{j>=1} q[j] out[shift + i - j]) / q[0]
    for i in 0..=order.saturating_sub(shift) {
        if shift + i > order {
            break;
        }
        let mut acc = p.get(i).cloned().unwrap_or_default();
        for j in 1..=i.min(dq) {
            acc -= Rational::from(&q[j] * &out[shift + i - j]);
        }
        out[shift + i] = acc / &q[0];
    }
    Ok(out)
}

fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::new(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.cmp0().is_eq() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// Series of `b_n / lambda` and `b_{n+1} / lambda` in `t = 1/n`.
fn ratio_series(coeffs: &[Rational], order: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mut cur = vec![Rational::new(); order + 1];
    let mut next = vec![Rational::new(); order + 1];
    cur[0] = Rational::from(1);
    next[0] = Rational::from(1);
    for (j0, c) in coeffs.iter().enumerate() {
        let j = j0 + 1;
        if j > order {
            break;
        }
        cur[j] += c;
        // (n+1)^{-j} = t^j sum_i (-1)^i C(j+i-1, i) t^i
        for i in 0..=order - j {
            let binom = Integer::from(Integer::binomial_u((j + i - 1) as u32, i as u32));
            let term = Rational::from(c * &Rational::from(binom));
            if i % 2 == 0 {
                next[i + j] += term;
            } else {
                next[i + j] -= term;
            }
        }
    }
    (cur, next)
}

/// Formal solution `b_n ~ lambda (1 + sum c_j / n^j)` of
/// `b_{n+1} b_n = R_1(n) b_n + R_2(n)`.
pub fn expand_ratio(rec: &Recurrence, k: usize) -> Result<RatioExpansion> {
    if rec.order() != 2 {
        return Err(Error::Inapplicable(format!(
            "ratio expansion needs an order-2 recurrence, got order {}",
            rec.order()
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument(
            "expansion order K must be positive".into(),
        ));
    }
    let r1 = series_at_infinity(&rec.coeffs()[0], k)?;
    let r2 = series_at_infinity(&rec.coeffs()[1], k)?;
    let (a, b) = (&r1[0], &r2[0]);
    let disc = Rational::from(a * a) + Rational::from(b * 4u32);
    if disc.cmp0().is_lt() {
        return Err(Error::Inapplicable(
            "characteristic roots are complex: the ratio oscillates".into(),
        ));
    }
    let sqrt = rational_sqrt(&disc).ok_or_else(|| {
        Error::Inapplicable(format!(
            "dominant characteristic root is irrational (discriminant {disc})"
        ))
    })?;
    if a.cmp0().is_eq() || disc.cmp0().is_eq() {
        return Err(Error::Inapplicable(
            "characteristic roots have equal modulus".into(),
        ));
    }
    // the root of larger modulus has the sign of A
    let lambda = if a.cmp0().is_gt() {
        Rational::from(a + &sqrt) / 2u32
    } else {
        Rational::from(a - &sqrt) / 2u32
    };
    if lambda.cmp0().is_eq() {
        return Err(Error::Inapplicable("dominant characteristic root is zero".into()));
    }
    // linear coefficient of c_m in the order-m equation: lambda (2 lambda - A)
    let pivot = Rational::from(&lambda * &(Rational::from(&lambda * 2u32) - a));
    let mut coeffs = Vec::with_capacity(k);
    for m in 1..=k {
        coeffs.push(Rational::new());
        let (cur, next) = ratio_series(&coeffs, m);
        // lambda^2 cur next - lambda R_1 cur - R_2
        let lhs = series_mul(&cur, &next, m);
        let mid = series_mul(&r1, &cur, m);
        let lam2 = Rational::from(&lambda * &lambda);
        let e = Rational::from(&lhs[m] * &lam2) - Rational::from(&mid[m] * &lambda) - &r2[m];
        coeffs[m - 1] = -e / &pivot;
    }
    Ok(RatioExpansion { lambda, coeffs })
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let (n, d) = (q.numer(), q.denom());
    if !n.is_perfect_square() || !d.is_perfect_square() {
        return None;
    }
    Some(Rational::from((n.clone().sqrt(), d.clone().sqrt())))
}

/// Direction of `T_n` on the positive reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    /// `R_2 > 0`.
    Decreasing,
    /// `R_2 < 0`.
    Increasing,
}

/// Exact evidence that `l(n) <= b_n <= h(n)` for all `n >= base_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub base_index: i64,
    /// `(l(N_1), b_{N_1}, h(N_1))`.
    pub base_check: (Rational, Rational, Rational),
    pub monotone: Monotone,
    /// Hold points of `+-R_2` and `l`, both equal to `base_index`.
    pub sign_holds_from: (i64, i64),
    /// Hold points of the lower and upper inductive steps (see
    /// [`induction_steps`]).
    pub induction_holds_from: (i64, i64),
    pub l: RationalFunction,
    pub h: RationalFunction,
    /// Set when the bounds came from [`propose_bounds`].
    pub search: Option<SearchRecord>,
}

/// How [`propose_bounds`] found a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRecord {
    pub expansion: RatioExpansion,
    pub margin: Rational,
    pub attempts: usize,
}

impl BoundCertificate {
    /// Re-runs every check from scratch.
    pub fn replay(&self, rec: &Recurrence) -> Result<()> {
        let again = certify_b_bounds(rec, &self.l, &self.h, self.base_index)?;
        if again.base_check != self.base_check
            || again.induction_holds_from != self.induction_holds_from
            || again.sign_holds_from != self.sign_holds_from
            || again.monotone != self.monotone
        {
            return Err(Error::InvalidArgument("certificate replay disagrees".into()));
        }
        Ok(())
    }
}

/// Hold point where an identically zero function counts as holding: the
/// induction only needs the non-strict inequality.
fn induction_hold_point(f: &RationalFunction, n_min: i64) -> Option<i64> {
    if f.is_zero() {
        Some(n_min)
    } else {
        hold_point(f, n_min)
    }
}

fn pole_free(f: &RationalFunction, n_min: i64) -> bool {
    no_pole_from(f, n_min)
}

/// Inductive step expressions. For a decreasing map these are
/// `T_n(h(n)) - l(n+1)` and `h(n+1) - T_n(l(n))`; for an increasing one
/// `T_n(l(n)) - l(n+1)` and `h(n+1) - T_n(h(n))`.
pub fn induction_steps(
    rec: &Recurrence,
    l: &RationalFunction,
    h: &RationalFunction,
    monotone: Monotone,
) -> Result<(RationalFunction, RationalFunction)> {
    let (r1, r2) = (&rec.coeffs()[0], &rec.coeffs()[1]);
    let t = |x: &RationalFunction| -> Result<RationalFunction> { Ok(r1 + &r2.checked_div(x)?) };
    let (low_image, high_image) = match monotone {
        Monotone::Decreasing => (t(h)?, t(l)?),
        Monotone::Increasing => (t(l)?, t(h)?),
    };
    Ok((&low_image - &l.shift(1), &h.shift(1) - &high_image))
}

/// Checks `l(n) <= b_n <= h(n)` for all `n >= n1` by interval induction.
///
/// The scale of `rec`, if any, is ignored: the bounds are on the ratios of the
/// unscaled sequence.
pub fn certify_b_bounds(
    rec: &Recurrence,
    l: &RationalFunction,
    h: &RationalFunction,
    n1: i64,
) -> Result<BoundCertificate> {
    let rec = rec.unscaled();
    if rec.order() != 2 {
        return Err(Error::Inapplicable(format!(
            "interval induction needs an order-2 recurrence, got order {}",
            rec.order()
        )));
    }
    if n1 < rec.offset() {
        return Err(Error::InvalidArgument(format!(
            "base index {n1} lies below the offset {}",
            rec.offset()
        )));
    }
    let r2 = &rec.coeffs()[1];
    let monotone = if hold_point(r2, n1) == Some(n1) {
        Monotone::Decreasing
    } else if hold_point(&-r2, n1) == Some(n1) {
        Monotone::Increasing
    } else {
        return Err(Error::Inapplicable(format!(
            "R_2(n) changes sign or vanishes at some n >= {n1}"
        )));
    };
    if !pole_free(&rec.coeffs()[0], n1) {
        return Err(Error::Inapplicable(format!("R_1 has a pole at some n >= {n1}")));
    }
    let l_hold = hold_point(l, n1);
    if l_hold != Some(n1) || !pole_free(h, n1) {
        return Err(Error::Inapplicable(format!(
            "lower bound is not positive and pole-free from {n1} (hold point {l_hold:?})"
        )));
    }
    let mut cache = SequenceCache::new(&rec)?;
    let b = cache.ratio_b(n1)?;
    let (lo, hi) = (l.eval_i64(n1)?, h.eval_i64(n1)?);
    if !(lo <= b && b <= hi) {
        return Err(Error::Inapplicable(format!(
            "base case fails at {n1}: b = {b} outside [{lo}, {hi}]"
        )));
    }
    let (lower_step, upper_step) = induction_steps(&rec, l, h, monotone)?;
    let lower = induction_hold_point(&lower_step, n1);
    let upper = induction_hold_point(&upper_step, n1);
    if lower != Some(n1) || upper != Some(n1) {
        return Err(Error::Inapplicable(format!(
            "induction step holds only from {lower:?} / {upper:?}, base index is {n1}"
        )));
    }
    Ok(BoundCertificate {
        base_index: n1,
        base_check: (lo, b, hi),
        monotone,
        sign_holds_from: (n1, n1),
        induction_holds_from: (n1, n1),
        l: l.clone(),
        h: h.clone(),
        search: None,
    })
}

/// Searches margins `c = 1, 2, 4, ...` on base indices from [`BASE_GRID`]
/// (those `>= n1_hint`; the hint itself when it exceeds the grid) for a
/// certificate of `Lambda_K(n) -+ c/n^K`.
pub fn propose_bounds(rec: &Recurrence, k: usize, n1_hint: i64) -> Result<BoundCertificate> {
    let rec = rec.unscaled();
    let expansion = expand_ratio(&rec, k)?;
    let centre = expansion.truncation();
    let unit = RationalFunction::new(Poly::one(), Poly::monomial(Rational::from(1), k))
        .expect("nonzero denominator");
    let hint = n1_hint.max(rec.offset());
    let mut grid: Vec<i64> = BASE_GRID.iter().copied().filter(|&n| n >= hint).collect();
    if grid.is_empty() {
        grid.push(hint);
    }
    let mut attempts = 0;
    let mut last_err = None;
    for &n1 in &grid {
        let mut margin = Rational::from(1);
        for _ in 0..DOUBLINGS_PER_BASE {
            if attempts == SEARCH_BUDGET {
                break;
            }
            attempts += 1;
            let delta = unit.scale(&margin);
            let (l, h) = (&centre - &delta, &centre + &delta);
            match certify_b_bounds(&rec, &l, &h, n1) {
                Ok(mut cert) => {
                    cert.search = Some(SearchRecord {
                        expansion,
                        margin,
                        attempts,
                    });
                    return Ok(cert);
                }
                Err(e) => last_err = Some(e),
            }
            // a margin that already makes l nonpositive at the base only gets worse
            if l.eval_i64(n1).map(|v| v.cmp0().is_le()).unwrap_or(true) {
                break;
            }
            margin *= 2u32;
        }
    }
    Err(Error::Inapplicable(format!(
        "no certificate within {attempts} attempts (last failure: {})",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// `g(n) = l(n)/h(n-1)`, `f(n) = h(n)/l(n-1)` from `N_1 + 1` on, multiplied
/// by `s(n)/s(n-1)` when the working sequence carries a scale `s`.
pub fn u_bounds_from_b(cert: &BoundCertificate, scale: Option<&RationalFunction>) -> Result<BoundPair> {
    let valid_from = cert.base_index + 1;
    let mut g = cert.l.checked_div(&cert.h.shift(-1))?;
    let mut f = cert.h.checked_div(&cert.l.shift(-1))?;
    if let Some(s) = scale {
        let factor = scale_u_factor(s)?;
        if hold_point(&factor, valid_from) != Some(valid_from) {
            return Err(Error::ScaleSingular(valid_from));
        }
        g = &g * &factor;
        f = &f * &factor;
    }
    Ok(BoundPair::new(g, f, valid_from, Provenance::Certified))
}

/// One index where `g(n) < u_n < f(n)` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub n: i64,
    /// Sign of `u_n - g(n)`.
    pub lower: Outcome,
    /// Sign of `f(n) - u_n`.
    pub upper: Outcome,
}

/// Exact check of `g(n) < u_n < f(n)` for `n` in `[lo, hi]`.
pub fn verify_bounds_scan(
    cache: &mut SequenceCache,
    pair: &BoundPair,
    lo: i64,
    hi: i64,
) -> Result<Vec<BoundViolation>> {
    let lo = lo.max(cache.offset() + 1);
    if hi < lo {
        return Ok(Vec::new());
    }
    cache.check_nonvanishing(lo - 1, hi + 1)?;
    let us = cache.ratios_u(lo, hi)?;
    let mut out = Vec::new();
    for (n, u) in (lo..=hi).zip(us) {
        let lower = Outcome::positive(&(u.clone() - pair.g.eval_i64(n)?));
        let upper = Outcome::positive(&(pair.f.eval_i64(n)? - u));
        if !lower.holds() || !upper.holds() {
            out.push(BoundViolation { n, lower, upper });
        }
    }
    Ok(out)
}
