//! P-recursive sequence definitions.

use std::cmp::Ordering;

use rug::Rational;

use crate::error::{Error, Result};
use crate::holdpoint::integer_roots_from;
use crate::ratfunc::RationalFunction;

/// `a_{n+d} = R_1(n) a_{n+d-1} + ... + R_d(n) a_n` for `n >= offset`, with
/// `a_offset, ..., a_{offset+d-1}` given.
///
/// An optional scale `s(n)` replaces the sequence by `h(n) a_n`, where
/// `h(offset) = 1` and `h(n+1) = s(n) h(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<RationalFunction>,
    offset: i64,
    initials: Vec<Rational>,
    scale: Option<RationalFunction>,
}

impl Recurrence {
    pub fn new(coeffs: Vec<RationalFunction>, offset: i64, initials: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidRecurrence("order must be positive".into()));
        }
        if initials.len() != coeffs.len() {
            return Err(Error::InvalidRecurrence(format!(
                "order {} needs {} initial values, got {}",
                coeffs.len(),
                coeffs.len(),
                initials.len()
            )));
        }
        Ok(Recurrence {
            coeffs,
            offset,
            initials,
            scale: None,
        })
    }

    /// Attaches a scale factor, checking it has no zero or pole at integers
    /// `>= offset`.
    pub fn with_scale(mut self, s: RationalFunction) -> Result<Self> {
        check_scale(&s, self.offset)?;
        self.scale = Some(s);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    pub fn scale(&self) -> Option<&RationalFunction> {
        self.scale.as_ref()
    }

    /// The recurrence with its scale dropped.
    pub fn unscaled(&self) -> Recurrence {
        Recurrence {
            scale: None,
            ..self.clone()
        }
    }

    /// Folds any attached scale into the coefficients and initial values.
    pub fn baked(&self) -> Result<Recurrence> {
        match &self.scale {
            None => Ok(self.clone()),
            Some(s) => apply_scale(&self.unscaled(), s),
        }
    }

    /// Multiplies every initial value by `c`.
    pub fn scale_initials(&self, c: &Rational) -> Recurrence {
        Recurrence {
            initials: self.initials.iter().map(|a| Rational::from(a * c)).collect(),
            ..self.clone()
        }
    }
}

fn check_scale(s: &RationalFunction, offset: i64) -> Result<()> {
    if s.is_zero() {
        return Err(Error::ScaleSingular(offset));
    }
    let mut bad = integer_roots_from(s.num(), offset);
    bad.extend(integer_roots_from(s.den(), offset));
    match bad.into_iter().min() {
        Some(n) => Err(Error::ScaleSingular(n)),
        None => Ok(()),
    }
}

/// The recurrence satisfied by `h(n) a_n` with `h(offset) = 1` and
/// `h(n+1)/h(n) = s(n)`.
///
/// `R_i(n)` becomes `R_i(n) * s(n+d-1) * ... * s(n+d-i)`. Any scale already
/// attached to `rec` is applied first.
pub fn apply_scale(rec: &Recurrence, s: &RationalFunction) -> Result<Recurrence> {
    let rec = rec.baked()?;
    check_scale(s, rec.offset)?;
    let d = rec.order() as i64;
    let mut factor = RationalFunction::one();
    let mut coeffs = Vec::with_capacity(rec.coeffs.len());
    for (i, r) in rec.coeffs.iter().enumerate() {
        factor = &factor * &s.shift(d - 1 - i as i64);
        coeffs.push(r * &factor);
    }
    let mut h = Rational::from(1);
    let mut initials = Vec::with_capacity(rec.initials.len());
    for (k, a) in rec.initials.iter().enumerate() {
        initials.push(Rational::from(a * &h));
        h *= s.eval_i64(rec.offset + k as i64)?;
    }
    debug_assert!(h.cmp0() != Ordering::Equal);
    Ok(Recurrence {
        coeffs,
        offset: rec.offset,
        initials,
        scale: None,
    })
}

/// `s(n) / s(n-1)`: the factor by which a scale `s` multiplies `u_n`.
pub fn scale_u_factor(s: &RationalFunction) -> Result<RationalFunction> {
    s.checked_div(&s.shift(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn wrong_initial_count() {
        let r = Recurrence::new(vec![rf(&[1], &[1])], 0, vec![]);
        assert!(matches!(r, Err(Error::InvalidRecurrence(_))));
    }

    #[test]
    fn scale_with_zero_in_range_is_rejected() {
        let rec = Recurrence::new(vec![rf(&[1, 1], &[1])], 0, vec![Rational::from(1)]).unwrap();
        assert_eq!(
            rec.clone().with_scale(rf(&[-3, 1], &[1])).unwrap_err(),
            Error::ScaleSingular(3)
        );
        assert_eq!(
            rec.with_scale(rf(&[1], &[-2, 1])).unwrap_err(),
            Error::ScaleSingular(2)
        );
    }

    #[test]
    fn scale_u_factor_of_inverse_factorial() {
        let s = rf(&[1], &[1, 1]);
        assert_eq!(scale_u_factor(&s).unwrap(), rf(&[0, 1], &[1, 1]));
    }
}
