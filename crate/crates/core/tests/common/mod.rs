#![allow(dead_code)]

use logmono_core::bounds::{BoundPair, Provenance};
use logmono_core::{Poly, Rational, RationalFunction, Recurrence};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

pub fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
}

pub fn n() -> RationalFunction {
    RationalFunction::x()
}

/// `c / n^k`.
pub fn over_pow(c: Rational, k: usize) -> RationalFunction {
    RationalFunction::new(Poly::constant(c), Poly::monomial(Rational::from(1), k)).unwrap()
}

pub fn trinomial() -> Recurrence {
    Recurrence::new(
        vec![rf(&[3, 2], &[2, 1]), rf(&[3, 3], &[2, 1])],
        0,
        vec![Rational::from(1), Rational::from(1)],
    )
    .unwrap()
}

pub fn motzkin() -> Recurrence {
    Recurrence::new(
        vec![rf(&[5, 2], &[4, 1]), rf(&[3, 3], &[4, 1])],
        0,
        vec![Rational::from(1), Rational::from(1)],
    )
    .unwrap()
}

pub fn motzkin_over_factorial() -> Recurrence {
    motzkin().with_scale(rf(&[1], &[1, 1])).unwrap()
}

pub fn factorial() -> Recurrence {
    Recurrence::new(vec![rf(&[1, 1], &[1])], 0, vec![Rational::from(1)]).unwrap()
}

pub fn inverse_factorial() -> Recurrence {
    Recurrence::new(vec![rf(&[1], &[1, 1])], 0, vec![Rational::from(1)]).unwrap()
}

pub fn constant() -> Recurrence {
    Recurrence::new(vec![RationalFunction::one()], 0, vec![Rational::from(1)]).unwrap()
}

/// `1 + 1/(2n^2) - 3/(8n^3) + 9/(32n^4) + c/n^5`.
fn trinomial_bound(c: Rational) -> RationalFunction {
    let mut f = RationalFunction::one();
    f = &f + &over_pow(q(1, 2), 2);
    f = &f - &over_pow(q(3, 8), 3);
    f = &f + &over_pow(q(9, 32), 4);
    &f + &over_pow(c, 5)
}

/// Reference trinomial bounds; `den` is the fifth-order denominator, 256 or
/// 265 in the two variants in circulation.
pub fn trinomial_pair(den: i64) -> BoundPair {
    BoundPair::new(
        trinomial_bound(q(-355, den)),
        trinomial_bound(q(157, den)),
        12,
        Provenance::Supplied,
    )
}

/// Reference bounds for `M_n`, unscaled.
pub fn motzkin_raw_pair() -> (RationalFunction, RationalFunction) {
    let base = &RationalFunction::one() + &over_pow(q(3, 2), 2);
    (&base - &over_pow(q(47, 8), 3), &base - &over_pow(q(31, 8), 3))
}

/// Reference bounds for `M_n / n!`.
pub fn motzkin_scaled_pair() -> BoundPair {
    let (g, f) = motzkin_raw_pair();
    let factor = rf(&[0, 1], &[1, 1]);
    BoundPair::new(&g * &factor, &f * &factor, 228, Provenance::Supplied)
}

pub fn binomial(n: u32, k: u32) -> rug::Integer {
    rug::Integer::from(rug::Integer::binomial_u(n, k))
}

/// `sum_k C(n, 2k) C(2k, k)`.
pub fn trinomial_oracle(n: u32) -> rug::Integer {
    (0..=n / 2).map(|k| binomial(n, 2 * k) * binomial(2 * k, k)).sum()
}

/// `sum_k C(n, 2k) Catalan(k)`.
pub fn motzkin_oracle(n: u32) -> rug::Integer {
    (0..=n / 2)
        .map(|k| binomial(n, 2 * k) * (binomial(2 * k, k) / rug::Integer::from(k + 1)))
        .sum()
}
