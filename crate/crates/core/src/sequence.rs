//! Exact evaluation of P-recursive sequences and the ratio tests built on them.
//!
//! Index conventions:
//! - `b_n = a_{n+1} / a_n`
//! - `u_n = a_{n-1} a_{n+1} / a_n^2 = b_n / b_{n-1}`
//! - `phi_ratio(k, n)` is the log-convexity quotient of the k-fold ratio
//!   sequence at index `n`: `phi_ratio(0, n) = u_n` and
//!   `phi_ratio(k+1, n) = phi_ratio(k, n+1) / phi_ratio(k, n)`. It involves
//!   exactly the terms `a_{n-1}, ..., a_{n+k+1}`.

use std::cmp::Ordering;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::recurrence::Recurrence;

/// Result of testing one strict inequality exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Holds,
    Fails,
    /// Both sides are equal; the strict inequality fails.
    Boundary,
}

impl Outcome {
    /// Outcome of `x > 0`.
    pub fn positive(x: &Rational) -> Outcome {
        match x.cmp0() {
            Ordering::Greater => Outcome::Holds,
            Ordering::Less => Outcome::Fails,
            Ordering::Equal => Outcome::Boundary,
        }
    }

    pub fn holds(self) -> bool {
        self == Outcome::Holds
    }
}

/// The three order-three log-monotonicity tests at one index `n`.
///
/// All three involve only `a_{n-1}, ..., a_{n+3}`, so a truncated sequence
/// `{a_k}_{k >= M}` passes exactly when every row with `n >= M + 1` holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogMonoRow {
    pub n: i64,
    /// `u_n > 1`: log-convexity of the sequence.
    pub u_above_one: Outcome,
    /// `u_n - u_{n+1} > 0`: log-concavity of the ratio sequence.
    pub u_decreasing: Outcome,
    /// `u_n u_{n+2} - u_{n+1}^2 > 0`: log-convexity of the second ratio sequence.
    pub u_log_convex: Outcome,
}

impl LogMonoRow {
    pub fn all_hold(&self) -> bool {
        self.u_above_one.holds() && self.u_decreasing.holds() && self.u_log_convex.holds()
    }

    pub fn has_boundary(&self) -> bool {
        [self.u_above_one, self.u_decreasing, self.u_log_convex].contains(&Outcome::Boundary)
    }
}

/// An index where `L_m(a_n) <= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaguerreViolation {
    pub n: i64,
    /// `L_m(a_n) = 0` exactly.
    pub boundary: bool,
}

/// Terms of a (scaled) recurrence, computed on demand and kept.
#[derive(Clone, Debug)]
pub struct SequenceCache {
    rec: Recurrence,
    values: Vec<Rational>,
}

impl SequenceCache {
    /// Any scale attached to `rec` is folded in, so terms are those of the
    /// working sequence `h(n) a_n`.
    pub fn new(rec: &Recurrence) -> Result<Self> {
        let rec = rec.baked()?;
        let values = rec.initials().to_vec();
        Ok(SequenceCache { rec, values })
    }

    /// The recurrence actually iterated (scale already applied).
    pub fn recurrence(&self) -> &Recurrence {
        &self.rec
    }

    pub fn offset(&self) -> i64 {
        self.rec.offset()
    }

    /// One past the largest cached index.
    pub fn computed_end(&self) -> i64 {
        self.rec.offset() + self.values.len() as i64
    }

    fn slot(&self, n: i64) -> Result<usize> {
        if n < self.offset() {
            return Err(Error::IndexBelowOffset {
                index: n,
                offset: self.offset(),
            });
        }
        Ok((n - self.offset()) as usize)
    }

    /// Extends the cache through index `n`.
    pub fn ensure(&mut self, n: i64) -> Result<()> {
        let target = self.slot(n)?;
        let d = self.rec.order();
        while self.values.len() <= target {
            let m = self.values.len();
            // a_{k+d} = sum R_i(k) a_{k+d-i} with k = offset + m - d
            let k = self.offset() + (m - d) as i64;
            let kq = Rational::from(k);
            let mut acc = Rational::new();
            for (i, r) in self.rec.coeffs().iter().enumerate() {
                let prev = &self.values[m - 1 - i];
                if prev.cmp0() == Ordering::Equal {
                    continue;
                }
                let v = r
                    .eval(&kq)
                    .map_err(|_| Error::CoefficientPole { coeff: i + 1, n: k })?;
                acc += v * prev;
            }
            self.values.push(acc);
        }
        Ok(())
    }

    /// Exact term `a_n`.
    pub fn term(&mut self, n: i64) -> Result<Rational> {
        Ok(self.term_ref(n)?.clone())
    }

    pub fn term_ref(&mut self, n: i64) -> Result<&Rational> {
        self.ensure(n)?;
        let i = self.slot(n)?;
        Ok(&self.values[i])
    }

    /// Terms `a_lo, ..., a_hi`.
    pub fn terms(&mut self, lo: i64, hi: i64) -> Result<&[Rational]> {
        self.ensure(hi)?;
        let (a, b) = (self.slot(lo)?, self.slot(hi)?);
        Ok(&self.values[a..=b])
    }

    /// Fails on the first zero term or sign change in `[lo, hi]`.
    pub fn check_nonvanishing(&mut self, lo: i64, hi: i64) -> Result<()> {
        let terms = self.terms(lo, hi)?;
        let mut prev = Ordering::Equal;
        for (i, a) in terms.iter().enumerate() {
            let n = lo + i as i64;
            let s = a.cmp0();
            if s == Ordering::Equal {
                return Err(Error::ZeroTerm(n));
            }
            if prev != Ordering::Equal && s != prev {
                return Err(Error::SignChange(n - 1, n));
            }
            prev = s;
        }
        Ok(())
    }

    /// `b_n = a_{n+1} / a_n`.
    pub fn ratio_b(&mut self, n: i64) -> Result<Rational> {
        self.check_nonvanishing(n, n + 1)?;
        let t = self.terms(n, n + 1)?;
        Ok(Rational::from(&t[1] / &t[0]))
    }

    /// `u_n = a_{n-1} a_{n+1} / a_n^2`.
    pub fn ratio_u(&mut self, n: i64) -> Result<Rational> {
        self.check_nonvanishing(n - 1, n + 1)?;
        let t = self.terms(n - 1, n + 1)?;
        Ok(u_from(&t[0], &t[1], &t[2]))
    }

    /// `u_lo, ..., u_hi`.
    pub fn ratios_u(&mut self, lo: i64, hi: i64) -> Result<Vec<Rational>> {
        self.check_nonvanishing(lo - 1, hi + 1)?;
        let t = self.terms(lo - 1, hi + 1)?;
        Ok(t.windows(3).map(|w| u_from(&w[0], &w[1], &w[2])).collect())
    }

    /// Log-convexity quotient of the k-fold iterate of `a -> (a_{n+1}/a_n)`.
    pub fn phi_ratio(&mut self, k: u32, n: i64) -> Result<Rational> {
        let mut level = self.ratios_u(n, n + k as i64)?;
        for _ in 0..k {
            level = level
                .windows(2)
                .map(|w| {
                    if w[0].cmp0() == Ordering::Equal {
                        Err(Error::ZeroTerm(n))
                    } else {
                        Ok(Rational::from(&w[1] / &w[0]))
                    }
                })
                .collect::<Result<_>>()?;
        }
        Ok(level.pop().expect("one value remains"))
    }

    /// `L_m(a_n) = 1/2 sum_{k=0}^{2m} (-1)^{k+m} C(2m, k) a_{n+k} a_{n+2m-k}`.
    pub fn laguerre_direct(&mut self, m: u32, n: i64) -> Result<Rational> {
        if m == 0 {
            return Err(Error::InvalidArgument("Laguerre order must be positive".into()));
        }
        let two_m = 2 * m as usize;
        let t = self.terms(n, n + two_m as i64)?;
        Ok(laguerre_of(t, m))
    }

    /// Exact truth table of the order-three log-monotonicity tests on
    /// `[lo, hi]`; needs `lo >= offset + 1`.
    pub fn scan_logmono(&mut self, lo: i64, hi: i64) -> Result<Vec<LogMonoRow>> {
        if lo < self.offset() + 1 {
            return Err(Error::IndexBelowOffset {
                index: lo - 1,
                offset: self.offset(),
            });
        }
        if hi < lo {
            return Ok(Vec::new());
        }
        let u = self.ratios_u(lo, hi + 2)?;
        Ok((0..u.len() - 2)
            .map(|i| {
                let (u0, u1, u2) = (&u[i], &u[i + 1], &u[i + 2]);
                LogMonoRow {
                    n: lo + i as i64,
                    u_above_one: Outcome::positive(&Rational::from(u0 - 1u32)),
                    u_decreasing: Outcome::positive(&Rational::from(u0 - u1)),
                    u_log_convex: Outcome::positive(&(Rational::from(u0 * u2) - Rational::from(u1 * u1))),
                }
            })
            .collect())
    }

    /// Indices in `[lo, hi]` where `L_m(a_n) <= 0`.
    pub fn scan_laguerre(&mut self, m: u32, lo: i64, hi: i64) -> Result<Vec<LaguerreViolation>> {
        if m == 0 {
            return Err(Error::InvalidArgument("Laguerre order must be positive".into()));
        }
        if hi < lo {
            return Ok(Vec::new());
        }
        let two_m = 2 * m as usize;
        let t = self.terms(lo, hi + two_m as i64)?;
        Ok(t.windows(two_m + 1)
            .enumerate()
            .filter_map(|(i, w)| {
                let v = laguerre_of(w, m);
                match v.cmp0() {
                    Ordering::Greater => None,
                    o => Some(LaguerreViolation {
                        n: lo + i as i64,
                        boundary: o == Ordering::Equal,
                    }),
                }
            })
            .collect())
    }
}

fn u_from(prev: &Rational, cur: &Rational, next: &Rational) -> Rational {
    Rational::from(prev * next) / Rational::from(cur.square_ref())
}

fn laguerre_of(t: &[Rational], m: u32) -> Rational {
    let two_m = 2 * m;
    let mut acc = Rational::new();
    for k in 0..=two_m {
        let c = Integer::from(Integer::binomial_u(two_m, k));
        let prod = Rational::from(&t[k as usize] * &t[(two_m - k) as usize]) * c;
        if (k + m).is_multiple_of(2) {
            acc += prod;
        } else {
            acc -= prod;
        }
    }
    acc / 2u32
}
