use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};
use crate::ratfunc::RationalFunction;

/// A rational function in `L`, standing for `log n`.
pub type LogRat = RationalFunction;

/// One term `r(log n) / n^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub exponent: Rational,
    pub coeff: LogRat,
}

/// `1 + sum_i r_i(log n) / n^{alpha_i} + o(n^{-beta})` with
/// `0 < alpha_1 < ... < alpha_m < beta`.
///
/// Terms with a zero coefficient are kept: they pin down `alpha_m`, which the
/// classifiers read off the expansion as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    terms: Vec<ExpansionTerm>,
    remainder: Rational,
}

impl Expansion {
    pub fn new(terms: Vec<ExpansionTerm>, remainder: Rational) -> Result<Self> {
        let mut prev = Rational::new();
        for (i, t) in terms.iter().enumerate() {
            if t.exponent <= prev {
                return Err(Error::InvalidExpansion(if i == 0 {
                    format!("first exponent {} must be positive", t.exponent)
                } else {
                    format!("exponents must increase strictly ({} after {})", t.exponent, prev)
                }));
            }
            prev = t.exponent.clone();
        }
        if remainder <= prev {
            return Err(Error::InvalidExpansion(format!(
                "remainder exponent {remainder} must exceed every term exponent"
            )));
        }
        Ok(Expansion { terms, remainder })
    }

    /// Builds from `(exponent, coefficient)` pairs.
    pub fn from_pairs(pairs: Vec<(Rational, LogRat)>, remainder: Rational) -> Result<Self> {
        Expansion::new(
            pairs
                .into_iter()
                .map(|(exponent, coeff)| ExpansionTerm { exponent, coeff })
                .collect(),
            remainder,
        )
    }

    pub fn terms(&self) -> &[ExpansionTerm] {
        &self.terms
    }

    /// The remainder exponent `beta`.
    pub fn remainder(&self) -> &Rational {
        &self.remainder
    }

    pub fn first(&self) -> Option<&ExpansionTerm> {
        self.terms.first()
    }

    pub fn last(&self) -> Option<&ExpansionTerm> {
        self.terms.last()
    }

    /// Appends zero-coefficient terms at the given exponents (which must lie
    /// above the current last exponent and below `beta`).
    pub fn padded(&self, exponents: &[Rational]) -> Result<Expansion> {
        let mut terms = self.terms.clone();
        terms.extend(exponents.iter().map(|a| ExpansionTerm {
            exponent: a.clone(),
            coeff: LogRat::zero(),
        }));
        Expansion::new(terms, self.remainder.clone())
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale_coeffs(&self, c: &Rational) -> Expansion {
        Expansion {
            terms: self
                .terms
                .iter()
                .map(|t| ExpansionTerm {
                    exponent: t.exponent.clone(),
                    coeff: t.coeff.scale(c),
                })
                .collect(),
            remainder: self.remainder.clone(),
        }
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("1")?;
        for t in &self.terms {
            let (sign, coeff) = match t.coeff.num().leading().map(|c| c.cmp0()) {
                Some(Ordering::Less) if t.coeff.is_polynomial() && t.coeff.num().is_constant() => {
                    ("-", -&t.coeff)
                }
                _ => ("+", t.coeff.clone()),
            };
            write!(
                f,
                " {sign} ({})/n^{}",
                coeff.display_with("L"),
                exponent_str(&t.exponent)
            )?;
        }
        write!(f, " + O(n^-{})", exponent_str(&self.remainder))
    }
}

fn exponent_str(a: &Rational) -> String {
    if *a.denom() == 1 {
        a.to_string()
    } else {
        format!("({a})")
    }
}
