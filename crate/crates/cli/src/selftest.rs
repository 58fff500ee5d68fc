//! Seeded randomized checks behind `logmono selftest`.

use logmono_core::holdpoint::hold_point_by_scan;
use logmono_core::{hold_point, Poly, Rational, RationalFunction, Recurrence, SequenceCache};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::expr::parse_expression;

#[derive(Clone, Debug)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize, bound: i64) -> Poly {
    let d = rng.gen_range(0..=max_degree);
    let coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
    Poly::from_ints(&coeffs)
}

fn random_ratfunc(rng: &mut ChaCha8Rng) -> RationalFunction {
    loop {
        let den = random_poly(rng, 6, 20);
        if !den.is_zero() {
            return RationalFunction::new(random_poly(rng, 6, 20), den).expect("nonzero denominator");
        }
    }
}

fn print_parse(rng: &mut ChaCha8Rng, cases: usize) -> PropertyResult {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let f = random_ratfunc(rng);
        let text = f.to_string();
        match parse_expression(&text) {
            Ok(g) if g == f => {}
            Ok(g) => failures.push(format!("{text} reparsed as {g}")),
            Err(e) => failures.push(format!("{text}: {e}")),
        }
    }
    PropertyResult {
        name: "parse(print(f)) = f",
        cases,
        failures,
    }
}

fn hold_points(rng: &mut ChaCha8Rng, cases: usize) -> PropertyResult {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let p = random_poly(rng, 6, 50);
        let f = RationalFunction::from_poly(p);
        let n_min = rng.gen_range(-20..=20);
        let (fast, slow) = (hold_point(&f, n_min), hold_point_by_scan(&f, n_min));
        if fast != slow {
            failures.push(format!("{f} from {n_min}: {fast:?} vs {slow:?}"));
        }
    }
    PropertyResult {
        name: "hold_point = brute force",
        cases,
        failures,
    }
}

/// `3a_{n+2}^2 - 4a_{n+1}a_{n+3} + a_n a_{n+4}` against its `u`-form.
fn laguerre_bridge(rng: &mut ChaCha8Rng, cases: usize) -> PropertyResult {
    let mut failures = Vec::new();
    for case in 0..cases {
        let c1 = Poly::from_ints(&[rng.gen_range(1..=9), rng.gen_range(0..=5)]);
        let c2 = Poly::from_ints(&[rng.gen_range(1..=9), rng.gen_range(0..=5)]);
        let rec = Recurrence::new(
            vec![RationalFunction::from_poly(c1), RationalFunction::from_poly(c2)],
            0,
            vec![
                Rational::from(rng.gen_range(1..=9)),
                Rational::from(rng.gen_range(1..=9)),
            ],
        )
        .expect("valid recurrence");
        let mut cache = SequenceCache::new(&rec).expect("no scale");
        let n = rng.gen_range(0..40);
        let mut check = || -> logmono_core::Result<bool> {
            let direct = cache.laguerre_direct(2, n)?;
            let u = cache.ratios_u(n + 1, n + 3)?;
            let a2 = cache.term(n + 2)?;
            let quotient =
                Rational::from(&u[0] * &u[1]) * &u[1] * &u[2] - Rational::from(&u[1] * 4u32) + 3u32;
            Ok(direct == quotient * a2.clone() * a2)
        };
        match check() {
            Ok(true) => {}
            Ok(false) => failures.push(format!("case {case}: mismatch at n = {n}")),
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    PropertyResult {
        name: "Laguerre form = u-quotient form",
        cases,
        failures,
    }
}

pub fn run(seed: u64, cases: usize) -> Vec<PropertyResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        print_parse(&mut rng, cases),
        hold_points(&mut rng, cases),
        laguerre_bridge(&mut rng, cases),
    ]
}
