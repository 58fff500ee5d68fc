mod common;

use common::*;
use logmono_core::asymptotics::{
    classify_laguerre2, classify_logmono, laguerre2_asymptotic, laguerre2_quotient, leading_value,
    numeric_eval, phi_leading_term, shift_expand, shift_quantity_leading, shift_quantity_value, Branch,
    Decision, Direction, Expansion, LogRat, ShiftQuantity,
};
use logmono_core::{Poly, Rational, SequenceCache, Sign};
use proptest::prelude::*;
use rug::Float;

fn lograt(num: &[i64], den: &[i64]) -> LogRat {
    LogRat::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
}

fn expansion(pairs: &[(Rational, LogRat)], beta: Rational) -> Expansion {
    Expansion::from_pairs(pairs.to_vec(), beta).unwrap()
}

fn padded(alpha: Rational, r: LogRat) -> Expansion {
    let a2 = Rational::from(&alpha + 1u32);
    let beta = Rational::from(&alpha + 2u32);
    expansion(&[(alpha, r), (a2, LogRat::zero())], beta)
}

proptest! {
    #[test]
    fn shift_expand_matches_derivatives(num in prop::collection::vec(-9i64..=9, 1..=5), den in prop::collection::vec(-9i64..=9, 1..=5)) {
        let d = Poly::from_ints(&den);
        prop_assume!(!d.is_zero());
        let r = LogRat::new(Poly::from_ints(&num), d).unwrap();
        let d1 = r.derivative();
        let second = (&d1.derivative() - &d1).scale(&q(1, 2));
        let fwd = shift_expand(&r, 2, Direction::Forward).unwrap();
        let bwd = shift_expand(&r, 2, Direction::Backward).unwrap();
        prop_assert_eq!(&fwd[0], &d1);
        prop_assert_eq!(&bwd[0], &-&d1);
        prop_assert_eq!(&fwd[1], &second);
        prop_assert_eq!(&bwd[1], &second);
    }

    #[test]
    fn positive_rescaling_keeps_verdicts(alpha_num in 1i64..8, coeff in -5i64..=5, c in 1i64..20) {
        // branch (iii) compares r_1 with the absolute constant -1
        prop_assume!(!(alpha_num == 4 && coeff < 0));
        let alpha = q(alpha_num, 2);
        let e = padded(alpha, LogRat::from_i64(coeff));
        let s = e.scale_coeffs(&q(c, 3));
        let (a, b) = (classify_logmono(&e), classify_logmono(&s));
        prop_assert_eq!((a.decision, a.branch, a.ell), (b.decision, b.branch, b.ell));
        let (a, b) = (classify_laguerre2(&e), classify_laguerre2(&s));
        prop_assert_eq!((a.decision, a.branch), (b.decision, b.branch));
    }
}

#[test]
fn shift_expand_examples() {
    let l = lograt(&[0, 1], &[1]);
    assert_eq!(
        shift_expand(&l, 2, Direction::Forward).unwrap(),
        vec![LogRat::one(), LogRat::constant(q(-1, 2))]
    );
    let l2 = lograt(&[0, 0, 1], &[1]);
    assert_eq!(
        shift_expand(&l2, 2, Direction::Forward).unwrap(),
        vec![lograt(&[0, 2], &[1]), lograt(&[1, -1], &[1])]
    );
    assert!(shift_expand(&LogRat::from_i64(4), 5, Direction::Forward)
        .unwrap()
        .iter()
        .all(LogRat::is_zero));
}

#[test]
fn padding_never_breaks_laguerre_verdicts() {
    let cases = [
        (q(1, 1), LogRat::one()),
        (q(1, 1), LogRat::from_i64(-1)),
        (q(2, 1), LogRat::from_i64(-2)),
        (q(2, 1), lograt(&[0, -1], &[1])),
    ];
    for (alpha, r) in cases {
        let e = padded(alpha.clone(), r.clone());
        let base = classify_laguerre2(&e);
        assert_eq!(base.decision, Decision::Holds);
        let more = e.padded(&[&alpha + q(3, 2)]).unwrap();
        let v = classify_laguerre2(&more);
        assert_eq!((v.decision, v.branch), (base.decision, base.branch));
    }
    // padding may raise ell
    let e = padded(q(1, 1), LogRat::one());
    let more = e.padded(&[q(5, 2)]).unwrap();
    assert!(classify_logmono(&more).ell >= classify_logmono(&e).ell);
}

#[test]
fn factorial_iterates_follow_prediction() {
    let e = expansion(
        &[
            (q(1, 1), LogRat::one()),
            (q(2, 1), LogRat::zero()),
            (q(3, 1), LogRat::zero()),
        ],
        q(4, 1),
    );
    let mut cache = SequenceCache::new(&factorial()).unwrap();
    let n = 10_000;
    for k in 0..3u32 {
        let term = phi_leading_term(&e, k).unwrap();
        assert_eq!(
            term.sign,
            if k % 2 == 0 {
                Sign::Positive
            } else {
                Sign::Negative
            }
        );
        let exact = cache.phi_ratio(k, n).unwrap() - 1u32;
        let predicted = leading_value(&(-term.exponent.clone()), &term.coeff, n, 128).unwrap();
        let ratio = Float::with_val(128, &exact) / predicted;
        let expected = if k % 2 == 0 { 1.0 } else { -1.0 };
        assert!(
            (ratio.to_f64() - expected).abs() < 0.05,
            "k = {k}: {}",
            ratio.to_f64()
        );
    }
}

#[test]
fn branch_three_leading_term_against_synthetic_quotient() {
    let e = padded(q(2, 1), LogRat::from_i64(-2));
    let (exp, coeff) = laguerre2_asymptotic(&e).unwrap();
    assert_eq!((exp.clone(), coeff.clone()), (q(4, 1), LogRat::from_i64(12)));
    let n = 10_000;
    let f = laguerre2_quotient(&e, n, 256).unwrap();
    let predicted = leading_value(&(-exp), &coeff, n, 256).unwrap();
    let ratio = (f / predicted).to_f64();
    assert!((ratio - 1.0).abs() < 0.01, "{ratio}");
}

#[test]
fn shift_quantity_examples_and_samples() {
    let one = LogRat::one();
    assert_eq!(
        shift_quantity_leading(&one, &q(1, 1), &q(1, 2), ShiftQuantity::A).unwrap(),
        (q(-3, 2), LogRat::constant(q(3, 2)))
    );
    let n = 1_000_000;
    let r = lograt(&[1, 2], &[3, 1]);
    for which in [ShiftQuantity::A, ShiftQuantity::B, ShiftQuantity::C] {
        let (gamma, alpha) = (q(5, 2), q(7, 4));
        let (exp, coeff) = shift_quantity_leading(&r, &gamma, &alpha, which).unwrap();
        let exact = shift_quantity_value(&r, &gamma, &alpha, which, n, 256).unwrap();
        let ratio = (exact / leading_value(&exp, &coeff, n, 256).unwrap()).to_f64();
        assert!((ratio - 1.0).abs() < 0.05, "{which:?}: {ratio}");
    }
}

#[test]
fn classifier_examples() {
    let l = lograt(&[0, 1], &[1]);
    let v = classify_logmono(&expansion(
        &[
            (q(1, 1), LogRat::one()),
            (q(2, 1), LogRat::zero()),
            (q(3, 1), LogRat::zero()),
        ],
        q(7, 2),
    ));
    assert_eq!(
        (v.decision, v.ell, v.relies_on_padding),
        (Decision::Holds, Some(3), true)
    );
    let v = classify_laguerre2(&padded(q(2, 1), -&l));
    assert_eq!(v.branch, Some(Branch::NegativeAtTwo));
    let v = classify_laguerre2(&padded(q(2, 1), LogRat::from_i64(-1)));
    assert_eq!(v.decision, Decision::Inconclusive);
}

#[test]
fn numeric_eval_matches_exact_tail() {
    // 1 + 1/(2n^2) - 3/(8n^3) + 9/(32n^4) - 355/(256n^5)
    let e = expansion(
        &[
            (q(2, 1), LogRat::constant(q(1, 2))),
            (q(3, 1), LogRat::constant(q(-3, 8))),
            (q(4, 1), LogRat::constant(q(9, 32))),
            (q(5, 1), LogRat::constant(q(-355, 256))),
        ],
        q(6, 1),
    );
    let exact = trinomial_pair(256).g.eval_i64(100).unwrap();
    let v = numeric_eval(&e, 100).unwrap();
    let err = Float::with_val(v.prec(), &v - &exact).abs() / Float::with_val(v.prec(), &exact);
    assert!(err < 1e-20);
    assert!(numeric_eval(&e, 1).is_err());
}
