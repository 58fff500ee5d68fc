//! Integer hold-points of rational functions.
//!
//! `hold_point(f, n_min)` is the least integer `N >= n_min` such that `f` is
//! defined and strictly positive at every integer `n >= N`. All real roots of
//! the numerator and denominator lie below an exact root bound `B`, so only the
//! integers in `[n_min, B]` need inspection. Short ranges are scanned directly;
//! long ones are bisected, and a sub-interval free of real roots (by Sturm
//! counting) is settled with a single evaluation.

use std::cmp::Ordering;

use rug::{Integer, Rational};

use crate::poly::Poly;
use crate::ratfunc::{RationalFunction, Sign};

/// Ranges no longer than this are scanned integer by integer.
const DIRECT_SCAN: u32 = 2048;

/// Polynomial with integer coefficients, evaluated at integers without
/// rational reductions.
#[derive(Clone, Debug)]
struct IntPoly(Vec<Integer>);

impl IntPoly {
    fn new(p: &Poly) -> Self {
        IntPoly(p.primitive_integer())
    }

    fn sign_at(&self, n: &Integer) -> Ordering {
        let mut acc = Integer::new();
        for c in self.0.iter().rev() {
            acc *= n;
            acc += c;
        }
        acc.cmp0()
    }

    fn sign_at_rational(&self, x: &Rational) -> Ordering {
        // sign of den^d * p(num/den) with den > 0
        let (num, den) = (x.numer(), x.denom());
        let mut acc = Integer::new();
        let mut den_pow = Integer::from(1);
        for c in self.0.iter().rev() {
            acc *= num;
            acc += Integer::from(c * &den_pow);
            den_pow *= den;
        }
        acc.cmp0()
    }
}

/// A Sturm chain `p, p', -rem(p, p'), ...`, each member scaled by a positive
/// constant to integer coefficients.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut polys = Vec::new();
        if !p.is_zero() {
            let mut a = p.clone();
            let mut b = p.derivative();
            polys.push(a.clone());
            while !b.is_zero() {
                polys.push(b.clone());
                let r = -&a.rem(&b);
                // positive rescaling keeps the sign pattern
                let r = match r.leading() {
                    Some(lc) => r.scale(&Rational::from(lc.abs_ref()).recip()),
                    None => r,
                };
                a = b;
                b = r;
            }
        }
        SturmChain {
            chain: polys.iter().map(IntPoly::new).collect(),
        }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at_rational(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`; neither endpoint may be a
    /// root of the leading polynomial.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Sign data for "is `num(n) * den(n) <= 0`" at integers.
struct Inspector {
    num: IntPoly,
    den: IntPoly,
    num_sturm: Option<SturmChain>,
    den_sturm: Option<SturmChain>,
    num_poly: Poly,
    den_poly: Poly,
}

impl Inspector {
    fn new(f: &RationalFunction) -> Self {
        Inspector {
            num: IntPoly::new(f.num()),
            den: IntPoly::new(f.den()),
            num_sturm: None,
            den_sturm: None,
            num_poly: f.num().clone(),
            den_poly: f.den().clone(),
        }
    }

    /// `true` when `f(n)` is undefined or not strictly positive.
    fn bad(&self, n: &Integer) -> bool {
        let d = self.den.sign_at(n);
        if d == Ordering::Equal {
            return true;
        }
        let s = self.num.sign_at(n);
        s == Ordering::Equal || s != d
    }

    fn root_free(&mut self, lo: &Integer, hi: &Integer) -> bool {
        let a = Rational::from(lo);
        let b = Rational::from(hi);
        let num = self
            .num_sturm
            .get_or_insert_with(|| SturmChain::new(&self.num_poly));
        if num.count_roots(&a, &b) != 0 {
            return false;
        }
        let den = self
            .den_sturm
            .get_or_insert_with(|| SturmChain::new(&self.den_poly));
        den.count_roots(&a, &b) == 0
    }

    /// Largest bad integer in `[lo, hi]`.
    fn largest_bad(&mut self, lo: &Integer, hi: &Integer) -> Option<Integer> {
        if lo > hi {
            return None;
        }
        let width = Integer::from(hi - lo);
        if width <= DIRECT_SCAN {
            let mut n = hi.clone();
            while &n >= lo {
                if self.bad(&n) {
                    return Some(n);
                }
                n -= 1;
            }
            return None;
        }
        let lo_bad = self.bad(lo);
        if !lo_bad && self.root_free(lo, hi) {
            // f keeps the sign it has at lo throughout [lo, hi]
            return None;
        }
        let mid = Integer::from(lo + hi) >> 1u32;
        let upper = Integer::from(&mid + 1);
        if let Some(n) = self.largest_bad(&upper, hi) {
            return Some(n);
        }
        self.largest_bad(lo, &mid)
    }
}

/// Least integer `N >= n_min` with `f(n)` defined and `> 0` for all integers
/// `n >= N`, or `None` ("never") when `f` is not eventually positive.
pub fn hold_point(f: &RationalFunction, n_min: i64) -> Option<i64> {
    if f.eventual_sign() != Sign::Positive {
        return None;
    }
    let bound = (f.num() * f.den()).root_bound();
    let lo = Integer::from(n_min);
    let mut inspector = Inspector::new(f);
    match inspector.largest_bad(&lo, &bound) {
        None => Some(n_min),
        Some(n) => {
            let next: Integer = n + 1;
            Some(next.to_i64().expect("hold point exceeds the i64 range"))
        }
    }
}

/// Same as [`hold_point`] but scans every integer up to the root bound.
/// Kept as an independent check of the pruned search.
pub fn hold_point_by_scan(f: &RationalFunction, n_min: i64) -> Option<i64> {
    if f.eventual_sign() != Sign::Positive {
        return None;
    }
    let bound = (f.num() * f.den()).root_bound().to_i64()?;
    let inspector = Inspector::new(f);
    let mut n = bound;
    while n >= n_min {
        if inspector.bad(&Integer::from(n)) {
            return Some(n + 1);
        }
        n -= 1;
    }
    Some(n_min)
}

/// Integers `n >= lo` at which the polynomial vanishes.
pub fn integer_roots_from(p: &Poly, lo: i64) -> Vec<i64> {
    if p.is_zero() {
        return vec![lo];
    }
    if p.is_constant() {
        return Vec::new();
    }
    let hi = p.root_bound();
    let ip = IntPoly::new(p);
    let sturm = SturmChain::new(p);
    let mut out = Vec::new();
    collect_roots(&ip, &sturm, Integer::from(lo), hi, &mut out);
    out.sort_unstable();
    out
}

fn collect_roots(ip: &IntPoly, sturm: &SturmChain, lo: Integer, hi: Integer, out: &mut Vec<i64>) {
    if lo > hi {
        return;
    }
    if Integer::from(&hi - &lo) <= DIRECT_SCAN {
        let mut n = lo;
        while n <= hi {
            if ip.sign_at(&n) == Ordering::Equal {
                out.push(n.to_i64().expect("root exceeds the i64 range"));
            }
            n += 1;
        }
        return;
    }
    if ip.sign_at(&lo) == Ordering::Equal {
        out.push(lo.to_i64().expect("root exceeds the i64 range"));
    } else if sturm.count_roots(&Rational::from(&lo), &Rational::from(&hi)) == 0 {
        return;
    }
    let mid = Integer::from(&lo + &hi) >> 1u32;
    let next = Integer::from(&lo + 1);
    let upper = Integer::from(&mid + 1);
    collect_roots(ip, sturm, next, mid, out);
    collect_roots(ip, sturm, upper, hi, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_fn(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_ints(c))
    }

    #[test]
    fn linear_hold_point() {
        assert_eq!(hold_point(&poly_fn(&[-5, 1]), 0), Some(6));
        assert_eq!(hold_point(&poly_fn(&[-5, 1]), 10), Some(10));
    }

    #[test]
    fn never_when_eventually_negative() {
        assert_eq!(hold_point(&poly_fn(&[5, -1]), 0), None);
        assert_eq!(hold_point(&RationalFunction::zero(), 0), None);
    }

    #[test]
    fn poles_do_not_hold() {
        // 1/(n - 7) is positive beyond 7 but undefined at 7
        let f = RationalFunction::new(Poly::one(), Poly::from_ints(&[-7, 1])).unwrap();
        assert_eq!(hold_point(&f, 0), Some(8));
    }

    #[test]
    fn root_pair_between_integers_is_invisible() {
        // (n - 10.3)(n - 10.6) is positive at every integer
        let p = &Poly::from_coeffs(vec![Rational::from((-103, 10)), Rational::from(1)])
            * &Poly::from_coeffs(vec![Rational::from((-106, 10)), Rational::from(1)]);
        assert_eq!(hold_point(&RationalFunction::from_poly(p), 0), Some(0));
    }

    #[test]
    fn large_roots_use_sturm_pruning() {
        // roots at 5000 and 123456: bad region is [5000, 123456]
        let p = &Poly::from_ints(&[-5000, 1]) * &Poly::from_ints(&[-123456, 1]);
        let f = RationalFunction::from_poly(&p * &p.shift(&Rational::from(0)));
        let g = RationalFunction::from_poly(p);
        assert_eq!(hold_point(&g, 0), Some(123457));
        // double roots: positive except at the roots themselves
        assert_eq!(hold_point(&f, 0), Some(123457));
        assert_eq!(hold_point(&g, 0), hold_point_by_scan(&g, 0));
    }

    #[test]
    fn sturm_counts() {
        let p = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-2, 1])) * &Poly::from_ints(&[1, 0, 1]);
        let s = SturmChain::new(&p);
        let q = |n: i64| Rational::from(n);
        assert_eq!(s.count_roots(&q(0), &q(3)), 2);
        assert_eq!(s.count_roots(&Rational::from((3, 2)), &q(3)), 1);
        assert_eq!(s.count_roots(&q(3), &q(100)), 0);
    }

    #[test]
    fn integer_roots() {
        let p = &(&Poly::from_ints(&[3, 1]) * &Poly::from_ints(&[-4000, 1])) * &Poly::from_ints(&[-2, 1]);
        assert_eq!(integer_roots_from(&p, 0), vec![2, 4000]);
        assert_eq!(integer_roots_from(&p, -10), vec![-3, 2, 4000]);
        assert!(integer_roots_from(&Poly::from_ints(&[1, 0, 1]), 0).is_empty());
    }
}
