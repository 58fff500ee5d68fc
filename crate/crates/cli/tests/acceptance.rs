//! Acceptance criteria. Prints one PASS/FAIL line per criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` are still run and still print FAIL;
//! the process exits nonzero if any other criterion fails or if an expected
//! failure starts passing.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::Parser;
use logmono_cli::recfile::read_recurrence_file;
use logmono_cli::Cli;
use logmono_core::asymptotics::{
    classify_laguerre2, classify_logmono, leading_value, phi_leading_term, shift_expand,
    shift_quantity_leading, shift_quantity_value, Branch, Decision, Direction, Expansion, LogRat,
    ShiftQuantity,
};
use logmono_core::bounds::verify_bounds_scan;
use logmono_core::holdpoint::hold_point_by_scan;
use logmono_core::verify::{certify_laguerre2, certify_logmono3, PipelineOptions};
use logmono_core::{
    hold_point, BoundPair, Integer, Poly, Provenance, Rational, RationalFunction, Recurrence, SequenceCache,
    Sign,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde_json::Value;

const SEED: u64 = 20_240_601;

/// Criterion 2 fails on the reference bounds themselves: both the 256 and the
/// 265 variant put g(12) above u_12 (by about 1.6e-6), and both hold on
/// 13..5000.
const EXPECTED_FAILURES: &[u32] = &[2];

type Check = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Check);
type Identity = (&'static str, Recurrence, fn(i64) -> Rational);

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load(name: &str) -> Recurrence {
    read_recurrence_file(&data(name))
        .expect("sample file parses")
        .0
        .recurrence
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn over_pow(c: Rational, k: usize) -> RationalFunction {
    RationalFunction::new(Poly::constant(c), Poly::monomial(Rational::from(1), k)).unwrap()
}

fn trinomial_bound(c: Rational) -> RationalFunction {
    [
        over_pow(q(1, 2), 2),
        -&over_pow(q(3, 8), 3),
        over_pow(q(9, 32), 4),
        over_pow(c, 5),
    ]
    .iter()
    .fold(RationalFunction::one(), |acc, t| &acc + t)
}

fn trinomial_pair(den: i64) -> BoundPair {
    BoundPair::new(
        trinomial_bound(q(-355, den)),
        trinomial_bound(q(157, den)),
        12,
        Provenance::Supplied,
    )
}

const TRINOMIAL_G: &str = "1 + 1/(2*n^2) - 3/(8*n^3) + 9/(32*n^4) - 355/(256*n^5)";
const TRINOMIAL_F: &str = "1 + 1/(2*n^2) - 3/(8*n^3) + 9/(32*n^4) + 157/(256*n^5)";
const MOTZKIN_G: &str = "(1 + 3/(2*n^2) - 47/(8*n^3)) * n/(n + 1)";
const MOTZKIN_F: &str = "(1 + 3/(2*n^2) - 31/(8*n^3)) * n/(n + 1)";

fn run_cli(args: &[&str]) -> Result<Value, String> {
    let cli = Cli::try_parse_from(std::iter::once("logmono").chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    let out = logmono_cli::execute(&cli).map_err(|e| e.to_string())?;
    Ok(out.report.to_value())
}

fn int(v: &Value) -> i64 {
    v.as_i64().unwrap_or(i64::MIN)
}

fn criterion1() -> Check {
    let file = data("trinomial.rec");
    let bounds = format!("{TRINOMIAL_G},{TRINOMIAL_F},12");
    let r = run_cli(&["certify-logmono3", file.to_str().unwrap(), "--bounds", &bounds])?;
    let t = &r["result"]["thresholds"];
    let (n2, n3, n4, n) = (int(&t["n2"]), int(&t["n3"]), int(&t["n4"]), int(&t["n"]));
    let refinement = &r["result"]["refinement"];
    let violations: Vec<i64> = refinement["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(int)
        .collect();
    let horizon = int(&refinement["horizon"]);
    let detail = format!(
        "N2={n2} N3={n3} N4={n4} N={n}; horizon {horizon}; last violating row {:?}",
        violations.last()
    );
    let ok = n2 <= 2
        && n3 <= 2
        && n4 <= 4
        && n == 12
        && horizon >= 5000
        && !violations.is_empty()
        && violations.iter().all(|&v| v <= 8);
    if ok {
        Ok(format!("{detail}; rows 9..{horizon} hold, so {{b_n}}_{{n>=8}}"))
    } else {
        Err(detail)
    }
}

fn criterion2() -> Check {
    let mut cache = SequenceCache::new(&load("trinomial.rec")).map_err(|e| e.to_string())?;
    let mut found = |den| -> Result<Vec<i64>, String> {
        let v = verify_bounds_scan(&mut cache, &trinomial_pair(den), 12, 5000).map_err(|e| e.to_string())?;
        Ok(v.iter().map(|b| b.n).collect())
    };
    let (v256, v265) = (found(256)?, found(265)?);
    let detail = format!("violations on 12..5000: 256-variant {v256:?}, 265-variant {v265:?}");
    if v256.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion3() -> Check {
    let file = data("motzkin.rec");
    let bounds = format!("{MOTZKIN_G},{MOTZKIN_F},228");
    let r = run_cli(&["certify-laguerre2", file.to_str().unwrap(), "--bounds", &bounds])?;
    let t = &r["result"]["thresholds"];
    let refinement = &r["result"]["refinement"];
    let (n2, n) = (int(&t["n2"]), int(&t["n"]));
    let violations = refinement["violations"].as_array().map_or(usize::MAX, Vec::len);
    let (from, horizon) = (int(&refinement["scanned_from"]), int(&refinement["horizon"]));
    let detail = format!("N2={n2} N={n}; {violations} violations on {from}..{horizon}");
    if n2 <= 2 && violations == 0 && from == 0 && horizon >= 5000 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion4() -> Check {
    let factorial = Recurrence::new(
        vec![RationalFunction::from_poly(Poly::from_ints(&[1, 1]))],
        0,
        vec![q(1, 1)],
    )
    .unwrap();
    let inverse = Recurrence::new(
        vec![RationalFunction::new(Poly::one(), Poly::from_ints(&[1, 1])).unwrap()],
        0,
        vec![q(1, 1)],
    )
    .unwrap();
    let cases: [Identity; 2] = [
        ("n!", factorial, |n| Rational::from((6, n * (n - 1)))),
        ("1/n!", inverse, |n| Rational::from((6, (n + 1) * (n + 2)))),
    ];
    for (name, rec, expected) in cases {
        let mut cache = SequenceCache::new(&rec).map_err(|e| e.to_string())?;
        let u = cache.ratios_u(1, 1001).map_err(|e| e.to_string())?;
        for n in 2..=1000i64 {
            let i = (n - 1) as usize;
            let value =
                Rational::from(&u[i - 1] * &u[i]) * &u[i] * &u[i + 1] - Rational::from(&u[i] * 4u32) + 3u32;
            if value != expected(n) {
                return Err(format!("{name}: mismatch at n = {n}: {value}"));
            }
        }
    }
    Ok("both identities exact for 2 <= n <= 1000".into())
}

fn random_exponent(rng: &mut ChaCha8Rng) -> Rational {
    // in [3/2, 3], denominator 2..4
    let d = rng.gen_range(2..=4i64);
    let lo = (3 * d + 1) / 2;
    Rational::from((rng.gen_range(lo..=3 * d), d))
}

fn random_log_coeff(rng: &mut ChaCha8Rng) -> LogRat {
    loop {
        let num = Poly::from_ints(&[rng.gen_range(0..=5), rng.gen_range(0..=3)]);
        let den = Poly::from_ints(&[rng.gen_range(0..=5), rng.gen_range(0..=3)]);
        if !num.is_zero() && !den.is_zero() {
            return LogRat::new(num, den).unwrap();
        }
    }
}

fn criterion5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let n = 1_000_000;
    let prec = 256;
    let mut worst = 0.0f64;
    for which in [ShiftQuantity::A, ShiftQuantity::B, ShiftQuantity::C] {
        for _ in 0..20 {
            let (gamma, alpha) = (random_exponent(&mut rng), random_exponent(&mut rng));
            let r = random_log_coeff(&mut rng);
            let (exp, coeff) =
                shift_quantity_leading(&r, &gamma, &alpha, which).map_err(|e| e.to_string())?;
            let exact =
                shift_quantity_value(&r, &gamma, &alpha, which, n, prec).map_err(|e| e.to_string())?;
            let predicted = leading_value(&exp, &coeff, n, prec).map_err(|e| e.to_string())?;
            let dev = (Float::with_val(prec, exact / predicted) - 1u32).abs().to_f64();
            worst = worst.max(dev);
            if dev.is_nan() || dev >= 0.05 {
                return Err(format!(
                    "{which:?}: r = {}, gamma = {gamma}, alpha = {alpha}: |ratio - 1| = {dev:.4}",
                    r.display_with("L")
                ));
            }
        }
    }
    Ok(format!(
        "60 triples at n = 1e6 with {prec}-bit floats; max |ratio - 1| = {worst:.4}"
    ))
}

fn criterion6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let poly = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(0..=4);
        Poly::from_coeffs(
            (0..=d)
                .map(|_| Rational::from((rng.gen_range(-9..=9i64), rng.gen_range(1..=4i64))))
                .collect(),
        )
    };
    let mut checked = 0;
    for i in 0..100 {
        let num = poly(&mut rng);
        let r = if i < 50 {
            LogRat::from_poly(num)
        } else {
            let mut den = poly(&mut rng);
            while den.is_zero() {
                den = poly(&mut rng);
            }
            LogRat::new(num, den).unwrap()
        };
        let d1 = r.derivative();
        let second = (&d1.derivative() - &d1).scale(&q(1, 2));
        let fwd = shift_expand(&r, 2, Direction::Forward).map_err(|e| e.to_string())?;
        let bwd = shift_expand(&r, 2, Direction::Backward).map_err(|e| e.to_string())?;
        if fwd[0] != d1 || fwd[1] != second || bwd[0] != -&d1 || bwd[1] != second {
            return Err(format!("mismatch for r = {}", r.display_with("L")));
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} functions (50 polynomial, 50 rational), both directions"
    ))
}

fn padded(alpha: Rational, r: LogRat) -> Expansion {
    let a2 = Rational::from(&alpha + 1u32);
    let beta = Rational::from(&alpha + 2u32);
    Expansion::from_pairs(vec![(alpha, r), (a2, LogRat::zero())], beta).unwrap()
}

fn criterion7() -> Check {
    let e = Expansion::from_pairs(
        vec![
            (q(1, 1), LogRat::one()),
            (q(2, 1), LogRat::zero()),
            (q(3, 1), LogRat::zero()),
        ],
        q(4, 1),
    )
    .unwrap();
    let factorial = Recurrence::new(
        vec![RationalFunction::from_poly(Poly::from_ints(&[1, 1]))],
        0,
        vec![q(1, 1)],
    )
    .unwrap();
    let mut cache = SequenceCache::new(&factorial).map_err(|e| e.to_string())?;
    let n = 10_000;
    let mut ratios = Vec::new();
    for k in 0..3u32 {
        let term = phi_leading_term(&e, k).map_err(|e| e.to_string())?;
        let expected_sign = if k % 2 == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        };
        let deviation = cache.phi_ratio(k, n).map_err(|e| e.to_string())? - 1u32;
        let predicted =
            leading_value(&(-term.exponent.clone()), &term.coeff, n, 128).map_err(|e| e.to_string())?;
        let signed = if term.sign == Sign::Negative {
            -predicted
        } else {
            predicted
        };
        let ratio = (Float::with_val(128, &deviation) / signed).to_f64();
        ratios.push(ratio);
        if term.sign != expected_sign || ratio.is_nan() || (ratio - 1.0).abs() >= 0.05 {
            return Err(format!(
                "k = {k}: sign {:?}, exact/predicted = {ratio:.5}",
                term.sign
            ));
        }
    }
    Ok(format!("exact/predicted at n = 1e4: {ratios:.5?}, signs +, -, +"))
}

fn criterion8() -> Check {
    let l = LogRat::x();
    let inv_l = LogRat::one().checked_div(&l).unwrap();
    let c = LogRat::from_i64;
    let logmono = [
        ("1+1/n", q(1, 1), c(1)),
        ("1+1/(nL)", q(1, 1), inv_l.clone()),
        ("1+2/n^2", q(2, 1), c(2)),
        ("1+L/n^2", q(2, 1), l.clone()),
    ];
    let laguerre = [
        ("1+1/n", q(1, 1), c(1), Branch::PositiveLeading),
        ("1-1/n", q(1, 1), c(-1), Branch::NegativeBelowTwo),
        ("1-1/(nL)", q(1, 1), -&inv_l, Branch::NegativeBelowTwo),
        ("1-2/n^2", q(2, 1), c(-2), Branch::NegativeAtTwo),
        ("1-L/n^2", q(2, 1), -&l, Branch::NegativeAtTwo),
    ];
    for (name, a, r) in logmono {
        let v = classify_logmono(&padded(a, r));
        if v.decision != Decision::Holds || v.branch != Some(Branch::PositiveLeading) {
            return Err(format!(
                "log-monotonicity {name}: {:?} {:?}",
                v.decision, v.branch
            ));
        }
    }
    for (name, a, r, branch) in laguerre {
        let v = classify_laguerre2(&padded(a, r));
        if v.decision != Decision::Holds || v.branch != Some(branch) {
            return Err(format!("laguerre-2 {name}: {:?} {:?}", v.decision, v.branch));
        }
    }
    let v = classify_laguerre2(&padded(q(2, 1), c(-1)));
    if v.decision != Decision::Inconclusive {
        return Err(format!("boundary 1-1/n^2: {:?}", v.decision));
    }
    Ok(
        "4 log-monotone (branch i), 5 Laguerre-2 holds with branches i/ii/ii/iii/iii, 1-1/n^2 inconclusive"
            .into(),
    )
}

fn criterion9() -> Check {
    let opts = PipelineOptions::default();
    let trinomial = load("trinomial.rec");
    let t = certify_logmono3(&trinomial, None, &opts).map_err(|e| e.to_string())?;
    let cert = t.certificate.as_ref().ok_or("no trinomial certificate")?;
    cert.replay(&trinomial)
        .map_err(|e| format!("trinomial replay: {e}"))?;
    let motzkin = load("motzkin.rec");
    let m = certify_laguerre2(&motzkin, None, &opts).map_err(|e| e.to_string())?;
    let mcert = m.certificate.as_ref().ok_or("no Motzkin certificate")?;
    mcert
        .replay(&motzkin)
        .map_err(|e| format!("Motzkin replay: {e}"))?;
    let detail = format!(
        "trinomial: N1={} N={} refined {}; Motzkin/n!: N1={} N={} refined {}",
        t.pair.valid_from,
        t.thresholds.n,
        t.refinement.refined_start,
        m.pair.valid_from,
        m.thresholds.n,
        m.refinement.refined_start
    );
    let ok = t.pair.provenance == Provenance::Certified
        && m.pair.provenance == Provenance::Certified
        && t.bound_violations.is_empty()
        && m.bound_violations.is_empty()
        && t.consistent()
        && m.consistent()
        && t.refinement.refined_start == 8
        && m.refinement.refined_start == 0;
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

fn criterion10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    for _ in 0..200 {
        let d = rng.gen_range(0..=6);
        let coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-50..=50)).collect();
        let f = RationalFunction::from_poly(Poly::from_ints(&coeffs));
        let n_min = rng.gen_range(-10..=10);
        if hold_point(&f, n_min) != hold_point_by_scan(&f, n_min) {
            return Err(format!("hold_point disagrees on {f} from {n_min}"));
        }
    }
    let mut trinomial = SequenceCache::new(&load("trinomial.rec")).map_err(|e| e.to_string())?;
    let mut motzkin = SequenceCache::new(&load("motzkin.rec").unscaled()).map_err(|e| e.to_string())?;
    for n in 0..=200u32 {
        let t: Integer = (0..=n / 2).map(|k| binomial(n, 2 * k) * binomial(2 * k, k)).sum();
        let m: Integer = (0..=n / 2)
            .map(|k| binomial(n, 2 * k) * (binomial(2 * k, k) / Integer::from(k + 1)))
            .sum();
        if trinomial.term(n as i64).map_err(|e| e.to_string())? != t {
            return Err(format!("trinomial term {n}"));
        }
        if motzkin.term(n as i64).map_err(|e| e.to_string())? != m {
            return Err(format!("Motzkin term {n}"));
        }
    }
    Ok("200 hold points match brute force; trinomial and Motzkin terms match to n = 200".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "central trinomial reproduction", 30, criterion1),
        (2, "trinomial bound sandwich", 30, criterion2),
        (3, "Motzkin/n! reproduction", 60, criterion3),
        (4, "factorial identities", 5, criterion4),
        (5, "shift-quantity convergence", 60, criterion5),
        (6, "shift-expansion identities", 5, criterion6),
        (7, "iterate leading terms for n!", 10, criterion7),
        (8, "classifier table", 1, criterion8),
        (9, "self-certified pipeline", 120, criterion9),
        (10, "oracle equivalence", 30, criterion10),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, check) in criteria {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let within = elapsed < Duration::from_secs(budget);
        let (pass, detail) = match outcome {
            Ok(d) if within => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(d) => (false, d),
        };
        let expected_failure = EXPECTED_FAILURES.contains(&id);
        let tag = match (pass, expected_failure) {
            (true, false) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        println!(
            "{tag} [{id:>2}] {name}: {detail} ({:.2} s, budget {budget} s)",
            elapsed.as_secs_f64()
        );
        if pass == expected_failure {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcomes: {unexpected:?}");
        std::process::exit(1);
    }
}
