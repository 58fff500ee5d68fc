//! Exact univariate rational functions over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Eventual sign of a function as its argument tends to `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn of(o: Ordering) -> Sign {
        match o {
            Ordering::Greater => Sign::Positive,
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
        }
    }
}

/// `num / den` in lowest terms with a monic denominator.
///
/// Monic denominators make the representation unique, so `==` compares
/// functions rather than representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = Rational::from(den.leading().expect("nonzero denominator").recip_ref());
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rational::from(c))
    }

    /// The identity function `x`.
    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value if this function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.cmp0() == Ordering::Equal {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// `f(x + k)`. Shifting preserves coprimality and monicity.
    pub fn shift(&self, k: i64) -> Self {
        self.shift_by(&Rational::from(k))
    }

    pub fn shift_by(&self, k: &Rational) -> Self {
        RationalFunction {
            num: self.num.shift(k),
            den: self.den.shift(k),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.cmp0() == Ordering::Equal {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_i64(&self, n: i64) -> Result<Rational> {
        self.eval(&Rational::from(n))
    }

    /// Sign of `f(x)` as `x -> +inf`.
    pub fn eventual_sign(&self) -> Sign {
        match self.num.leading() {
            None => Sign::Zero,
            // the denominator is monic
            Some(lc) => Sign::of(lc.cmp0()),
        }
    }

    /// `lim_{x -> inf} f(x)` when it is finite.
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        let dn = self.num.degree();
        let dd = self.den.degree().unwrap_or(0);
        match dn {
            None => Some(Rational::new()),
            Some(dn) if dn < dd => Some(Rational::new()),
            Some(dn) if dn == dd => Some(self.num.leading().cloned().unwrap_or_default()),
            _ => None,
        }
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalized(num, &self.den * &self.den)
    }

    /// Substitutes the polynomial `inner` for the variable.
    pub fn compose_poly(&self, inner: &Poly) -> Result<Self> {
        let sub = |p: &Poly| {
            let mut acc = Poly::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * inner) + &Poly::constant(c.clone());
            }
            acc
        };
        RationalFunction::new(sub(&self.num), sub(&self.den))
    }

    /// Renders in the variable `var`; the output parses back to `self`.
    pub fn display_with(&self, var: &str) -> String {
        let num = self.num.display_with(var);
        if self.den.is_constant() {
            return num;
        }
        let wrap = |s: String, p: &Poly| {
            if p.coeffs().iter().filter(|c| c.cmp0() != Ordering::Equal).count() > 1 || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(num, &self.num),
            wrap(self.den.display_with(var), &self.den)
        )
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("n"))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
