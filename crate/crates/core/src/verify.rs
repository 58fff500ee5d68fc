//! Explicit thresholds from bound pairs, and their refinement by exact scans.
//!
//! Index convention: `{a_n}_{n >= M}` is called 3-log-monotonic on a window
//! when every row `n >= M + 1` of [`SequenceCache::scan_logmono`] holds. Each
//! row only involves `a_{n-1}, ..., a_{n+3}`.

use crate::bounds::{
    propose_bounds, u_bounds_from_b, verify_bounds_scan, BoundCertificate, BoundPair, BoundViolation,
};
use crate::error::{Error, Result};
use crate::holdpoint::hold_point;
use crate::ratfunc::RationalFunction;
use crate::recurrence::Recurrence;
use crate::sequence::SequenceCache;

/// Stated in every log-monotonicity report.
pub const LOGMONO_CONVENTION: &str =
    "{a_n}_{n>=M} is 3-log-monotonic when u_n > 1, u_n > u_{n+1} and u_n u_{n+2} > u_{n+1}^2 hold for every n >= M+1";
/// Stated in every Laguerre report.
pub const LAGUERRE_CONVENTION: &str =
    "{a_n}_{n>=M} satisfies the inequality when 3a_{n+2}^2 - 4a_{n+1}a_{n+3} + a_n a_{n+4} > 0 for every n >= M";

/// Default refinement horizon `max(2N, 5000)`.
pub fn default_horizon(n: i64) -> i64 {
    (2 * n).max(5000)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogMono3Thresholds {
    /// `g(n) > 1`.
    pub n2: i64,
    /// `g(n) - f(n+1) > 0`.
    pub n3: i64,
    /// `g(n-1) g(n+1) - f(n)^2 > 0`.
    pub n4: i64,
    pub n: i64,
}

fn required(f: &RationalFunction, from: i64, what: &str) -> Result<i64> {
    hold_point(f, from)
        .ok_or_else(|| Error::Inapplicable(format!("{what} is not eventually positive for these bounds")))
}

pub fn logmono3_expressions(pair: &BoundPair) -> [RationalFunction; 3] {
    let (g, f) = (&pair.g, &pair.f);
    [
        g - &RationalFunction::one(),
        g - &f.shift(1),
        &(&g.shift(-1) * &g.shift(1)) - &(f * f),
    ]
}

/// Hold points of the three bound inequalities. `first` is the first index at
/// which `u_n` exists (`offset + 1`); expressions involving `g(n-1)` start one
/// later. `N` is the maximum of `valid_from` and the three hold points.
pub fn logmono3_thresholds(pair: &BoundPair, first: i64) -> Result<LogMono3Thresholds> {
    let [e2, e3, e4] = logmono3_expressions(pair);
    let n2 = required(&e2, first, "g(n) - 1")?;
    let n3 = required(&e3, first, "g(n) - f(n+1)")?;
    let n4 = required(&e4, first + 1, "g(n-1)g(n+1) - f(n)^2")?;
    let n = pair.valid_from.max(n2).max(n3).max(n4);
    Ok(LogMono3Thresholds { n2, n3, n4, n })
}

pub fn laguerre2_expression(pair: &BoundPair) -> RationalFunction {
    let (g, f) = (&pair.g, &pair.f);
    let gg = &(&g.shift(-1) * &(g * g)) * &g.shift(1);
    &(&gg - &f.scale(&4.into())) + &RationalFunction::from_i64(3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laguerre2Thresholds {
    /// `g(n-1) g(n)^2 g(n+1) - 4 f(n) + 3 > 0`.
    pub n2: i64,
    pub n: i64,
}

/// Hold point of the Laguerre bound expression, from `first + 1`.
pub fn laguerre2_threshold(pair: &BoundPair, first: i64) -> Result<Laguerre2Thresholds> {
    let n2 = required(
        &laguerre2_expression(pair),
        first + 1,
        "g(n-1)g(n)^2g(n+1) - 4f(n) + 3",
    )?;
    Ok(Laguerre2Thresholds {
        n2,
        n: pair.valid_from.max(n2),
    })
}

/// Result of an exact scan up to a horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub refined_start: i64,
    pub horizon: i64,
    /// First index scanned.
    pub scanned_from: i64,
    /// Indices where the strict inequalities fail.
    pub violations: Vec<i64>,
    /// Subset of `violations` where a quantity is exactly zero.
    pub boundary: Vec<i64>,
}

fn check_horizon(n: i64, horizon: i64) -> Result<()> {
    if horizon <= n {
        return Err(Error::InvalidArgument(format!(
            "horizon {horizon} must exceed the threshold {n}"
        )));
    }
    Ok(())
}

/// Scans rows `offset + 1 ..= horizon`; `refined_start` is the largest row
/// with a violation, or the offset when there is none.
pub fn refine_threshold_logmono3(cache: &mut SequenceCache, n: i64, horizon: i64) -> Result<Refinement> {
    check_horizon(n, horizon)?;
    let lo = cache.offset() + 1;
    let rows = cache.scan_logmono(lo, horizon)?;
    let mut violations = Vec::new();
    let mut boundary = Vec::new();
    for row in rows.iter().filter(|r| !r.all_hold()) {
        violations.push(row.n);
        if row.has_boundary() {
            boundary.push(row.n);
        }
    }
    Ok(Refinement {
        refined_start: violations.last().copied().unwrap_or(cache.offset()),
        horizon,
        scanned_from: lo,
        violations,
        boundary,
    })
}

/// Scans `offset ..= horizon`; `refined_start` is one past the last violation,
/// or the offset when there is none.
pub fn refine_threshold_laguerre2(cache: &mut SequenceCache, n: i64, horizon: i64) -> Result<Refinement> {
    check_horizon(n, horizon)?;
    let lo = cache.offset();
    let found = cache.scan_laguerre(2, lo, horizon)?;
    Ok(Refinement {
        refined_start: found.last().map_or(lo, |v| v.n + 1),
        horizon,
        scanned_from: lo,
        violations: found.iter().map(|v| v.n).collect(),
        boundary: found.iter().filter(|v| v.boundary).map(|v| v.n).collect(),
    })
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Truncation order of the ratio expansion.
    pub order: usize,
    /// Smallest base index to try.
    pub n1_hint: i64,
    /// `None` selects [`default_horizon`].
    pub horizon: Option<i64>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            order: 5,
            n1_hint: 0,
            horizon: None,
        }
    }
}

/// Bounds on `u_n` of the working sequence: the supplied pair, or one derived
/// from a fresh certificate.
pub fn obtain_bounds(
    rec: &Recurrence,
    supplied: Option<BoundPair>,
    opts: &PipelineOptions,
) -> Result<(BoundPair, Option<BoundCertificate>)> {
    match supplied {
        Some(pair) => Ok((pair, None)),
        None => {
            let cert = propose_bounds(rec, opts.order, opts.n1_hint)?;
            let pair = u_bounds_from_b(&cert, rec.scale())?;
            Ok((pair, Some(cert)))
        }
    }
}

#[derive(Clone, Debug)]
pub struct LogMono3Report {
    pub pair: BoundPair,
    pub certificate: Option<BoundCertificate>,
    pub thresholds: LogMono3Thresholds,
    /// Exact check of the pair on `[valid_from, horizon]`.
    pub bound_violations: Vec<BoundViolation>,
    pub refinement: Refinement,
}

impl LogMono3Report {
    /// No violation at or beyond `N` on the scanned window.
    pub fn consistent(&self) -> bool {
        self.refinement.refined_start < self.thresholds.n
    }
}

/// Bounds, thresholds and refinement for 3-log-monotonicity.
pub fn certify_logmono3(
    rec: &Recurrence,
    supplied: Option<BoundPair>,
    opts: &PipelineOptions,
) -> Result<LogMono3Report> {
    let (pair, certificate) = obtain_bounds(rec, supplied, opts)?;
    let thresholds = logmono3_thresholds(&pair, rec.offset() + 1)?;
    let horizon = opts.horizon.unwrap_or_else(|| default_horizon(thresholds.n));
    let mut cache = SequenceCache::new(rec)?;
    let refinement = refine_threshold_logmono3(&mut cache, thresholds.n, horizon)?;
    let bound_violations = verify_bounds_scan(&mut cache, &pair, pair.valid_from, horizon)?;
    Ok(LogMono3Report {
        pair,
        certificate,
        thresholds,
        bound_violations,
        refinement,
    })
}

#[derive(Clone, Debug)]
pub struct Laguerre2Report {
    pub pair: BoundPair,
    pub certificate: Option<BoundCertificate>,
    pub thresholds: Laguerre2Thresholds,
    pub bound_violations: Vec<BoundViolation>,
    pub refinement: Refinement,
}

impl Laguerre2Report {
    pub fn consistent(&self) -> bool {
        self.refinement.refined_start <= self.thresholds.n
    }
}

/// Bounds, threshold and refinement for the order-two Laguerre inequality.
pub fn certify_laguerre2(
    rec: &Recurrence,
    supplied: Option<BoundPair>,
    opts: &PipelineOptions,
) -> Result<Laguerre2Report> {
    let (pair, certificate) = obtain_bounds(rec, supplied, opts)?;
    let thresholds = laguerre2_threshold(&pair, rec.offset() + 1)?;
    let horizon = opts.horizon.unwrap_or_else(|| default_horizon(thresholds.n));
    let mut cache = SequenceCache::new(rec)?;
    let refinement = refine_threshold_laguerre2(&mut cache, thresholds.n, horizon)?;
    let bound_violations = verify_bounds_scan(&mut cache, &pair, pair.valid_from, horizon)?;
    Ok(Laguerre2Report {
        pair,
        certificate,
        thresholds,
        bound_violations,
        refinement,
    })
}
