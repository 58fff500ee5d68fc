//! Decision procedures on formal expansions of `u_n`.
//!
//! Both classifiers implement sufficient conditions only: a verdict of
//! [`Decision::Inconclusive`] says nothing about whether the property fails.

use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use super::expansion::{Expansion, LogRat};
use crate::error::{Error, Result};
use crate::poly::floor_integer;
use crate::ratfunc::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Holds,
    Inconclusive,
}

/// Which sign condition on the leading coefficient `r_1` applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `r_1(x) > 0` for large `x`.
    PositiveLeading,
    /// `alpha_1 < 2` and `r_1(x) < 0` for large `x`.
    NegativeBelowTwo,
    /// `alpha_1 = 2` and `r_1(x) < -1` for large `x`.
    NegativeAtTwo,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::PositiveLeading => "i",
            Branch::NegativeBelowTwo => "ii",
            Branch::NegativeAtTwo => "iii",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Branch::PositiveLeading => "(i) r1 eventually positive",
            Branch::NegativeBelowTwo => "(ii) alpha1 < 2, r1 eventually negative",
            Branch::NegativeAtTwo => "(iii) alpha1 = 2, r1 eventually below -1",
        };
        f.write_str(text)
    }
}

/// `sign * coeff(log n) / n^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub sign: Sign,
    pub exponent: Rational,
    pub coeff: LogRat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifierVerdict {
    pub decision: Decision,
    pub branch: Option<Branch>,
    /// Order of log-monotonicity, `floor(alpha_m / alpha_1)`.
    pub ell: Option<u64>,
    /// Predicted leading behaviour: one entry per ratio iterate for
    /// log-monotonicity, a single entry for the Laguerre quotient.
    pub leading: Vec<LeadingTerm>,
    /// The verdict depends on a zero-coefficient term (it sets `alpha_m`).
    pub relies_on_padding: bool,
    pub note: String,
}

impl ClassifierVerdict {
    fn inconclusive(note: impl Into<String>) -> Self {
        ClassifierVerdict {
            decision: Decision::Inconclusive,
            branch: None,
            ell: None,
            leading: Vec::new(),
            relies_on_padding: false,
            note: note.into(),
        }
    }
}

fn spread_hypothesis(e: &Expansion) -> std::result::Result<(), ClassifierVerdict> {
    let (Some(first), Some(last)) = (e.first(), e.last()) else {
        return Err(ClassifierVerdict::inconclusive("expansion has no terms"));
    };
    if Rational::from(&last.exponent - &first.exponent) < 1 {
        return Err(ClassifierVerdict::inconclusive(format!(
            "needs alpha_m - alpha_1 >= 1, got {} - {}",
            last.exponent, first.exponent
        )));
    }
    if first.coeff.is_zero() {
        return Err(ClassifierVerdict::inconclusive("leading coefficient r_1 is zero"));
    }
    Ok(())
}

fn relies_on_padding(e: &Expansion) -> bool {
    e.last().is_some_and(|t| t.coeff.is_zero())
}

/// Pochhammer symbol `(a)_k = a (a+1) ... (a+k-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::from(1), |acc, i| acc * Rational::from(a + i))
}

/// Sufficient condition for asymptotic `ell`-log-monotonicity:
/// `alpha_m - alpha_1 >= 1` and `r_1` eventually positive, with
/// `ell = floor(alpha_m / alpha_1)`.
pub fn classify_logmono(e: &Expansion) -> ClassifierVerdict {
    if let Err(v) = spread_hypothesis(e) {
        return v;
    }
    let first = e.first().expect("checked");
    let last = e.last().expect("checked");
    if first.coeff.eventual_sign() != Sign::Positive {
        return ClassifierVerdict::inconclusive(
            "r_1 is not eventually positive; the criterion does not apply",
        );
    }
    let ell = floor_integer(&Rational::from(&last.exponent / &first.exponent))
        .to_u64()
        .expect("ell fits in u64");
    let leading = (0..ell as u32)
        .map_while(|k| phi_leading_term(e, k).ok())
        .collect();
    let padding = relies_on_padding(e);
    ClassifierVerdict {
        decision: Decision::Holds,
        branch: Some(Branch::PositiveLeading),
        ell: Some(ell),
        leading,
        relies_on_padding: padding,
        note: if padding {
            "alpha_m comes from a zero-coefficient term".into()
        } else {
            String::new()
        },
    }
}

/// Predicted leading deviation from 1 of the k-fold ratio iterate's
/// log-convexity quotient: `(-1)^k (alpha_1)_k r_1(log n) / n^{alpha_1 + k}`.
pub fn phi_leading_term(e: &Expansion, k: u32) -> Result<LeadingTerm> {
    let first = e
        .first()
        .ok_or_else(|| Error::InvalidExpansion("expansion has no terms".into()))?;
    let exponent = Rational::from(&first.exponent + k);
    if &exponent >= e.remainder() {
        return Err(Error::InvalidArgument(format!(
            "iterate {k} needs precision beyond n^-{}, expansion only has o(n^-{})",
            exponent,
            e.remainder()
        )));
    }
    Ok(LeadingTerm {
        sign: if k.is_multiple_of(2) {
            Sign::Positive
        } else {
            Sign::Negative
        },
        exponent,
        coeff: first.coeff.scale(&pochhammer(&first.exponent, k)),
    })
}

fn laguerre_branch(e: &Expansion) -> Option<Branch> {
    let first = e.first()?;
    let alpha = &first.exponent;
    match first.coeff.eventual_sign() {
        Sign::Positive => Some(Branch::PositiveLeading),
        Sign::Negative => match alpha.cmp(&Rational::from(2)) {
            Ordering::Less => Some(Branch::NegativeBelowTwo),
            Ordering::Equal => {
                let shifted = &first.coeff + &LogRat::one();
                (shifted.eventual_sign() == Sign::Negative).then_some(Branch::NegativeAtTwo)
            }
            Ordering::Greater => None,
        },
        Sign::Zero => None,
    }
}

/// Sufficient condition for the asymptotic order-two Laguerre inequality.
pub fn classify_laguerre2(e: &Expansion) -> ClassifierVerdict {
    if let Err(v) = spread_hypothesis(e) {
        return v;
    }
    let Some(branch) = laguerre_branch(e) else {
        return ClassifierVerdict::inconclusive("no sign branch of the criterion applies to r_1");
    };
    let (exponent, coeff) = laguerre2_asymptotic(e).expect("branch established");
    let padding = relies_on_padding(e);
    ClassifierVerdict {
        decision: Decision::Holds,
        branch: Some(branch),
        ell: None,
        leading: vec![LeadingTerm {
            sign: Sign::Positive,
            exponent,
            coeff,
        }],
        relies_on_padding: padding,
        note: if padding {
            "alpha_m - alpha_1 >= 1 is met through a zero-coefficient term".into()
        } else {
            String::new()
        },
    }
}

/// Leading term `coeff(log n) / n^exponent` of
/// `u_{n-1} u_n^2 u_{n+1} - 4 u_n + 3`.
///
/// Writing `u_n = 1 + xi(n)/n^a` with `a = alpha_1`, the quotient is
/// `(t_1 + t_2 + t_3 + t_4) / ((n-1)^a n^{2a} (n+1)^a)` and the dominant part is
/// `t_1 ~ (a^2 + a) r_1 n^{3a-2}` when `a > 2`, `t_2 ~ 6 r_1^2 n^{2a}` when
/// `a < 2`, and their sum when `a = 2`.
pub fn laguerre2_asymptotic(e: &Expansion) -> Result<(Rational, LogRat)> {
    if laguerre_branch(e).is_none() {
        return Err(Error::Inapplicable(
            "expansion satisfies none of the Laguerre sign branches".into(),
        ));
    }
    let first = e.first().expect("branch implies a first term");
    let a = &first.exponent;
    let r1 = &first.coeff;
    let t1 = r1.scale(&Rational::from(a * &(a.clone() + 1u32)));
    let t2 = (r1 * r1).scale(&Rational::from(6));
    Ok(match a.cmp(&Rational::from(2)) {
        Ordering::Greater => (Rational::from(a + 2u32), t1),
        Ordering::Less => (Rational::from(a * 2u32), t2),
        Ordering::Equal => (Rational::from(4), &t1 + &t2),
    })
}

/// Leading terms `(power of n, coefficient)` of `t_1, ..., t_4`.
pub fn laguerre2_t_leading(e: &Expansion) -> Result<[(Rational, LogRat); 4]> {
    let first = e
        .first()
        .ok_or_else(|| Error::InvalidExpansion("expansion has no terms".into()))?;
    let a = &first.exponent;
    let r1 = &first.coeff;
    let r2 = r1 * r1;
    let r3 = &r2 * r1;
    Ok([
        (
            Rational::from(a * 3u32) - 2u32,
            r1.scale(&Rational::from(a * &(a.clone() + 1u32))),
        ),
        (Rational::from(a * 2u32), r2.scale(&Rational::from(6))),
        (a.clone(), r3.scale(&Rational::from(4))),
        (Rational::new(), &r3 * r1),
    ])
}
