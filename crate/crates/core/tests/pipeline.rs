mod common;

use common::*;
use logmono_core::bounds::{propose_bounds, u_bounds_from_b, verify_bounds_scan};
use logmono_core::verify::{
    certify_laguerre2, certify_logmono3, laguerre2_threshold, logmono3_thresholds, PipelineOptions,
};
use logmono_core::SequenceCache;

#[test]
fn trinomial_reference_bounds() {
    let pair = trinomial_pair(256);
    let t = logmono3_thresholds(&pair, 1).unwrap();
    assert_eq!((t.n2, t.n3, t.n4, t.n), (2, 2, 4, 12));
    let opts = PipelineOptions {
        horizon: Some(400),
        ..Default::default()
    };
    let r = certify_logmono3(&trinomial(), Some(pair), &opts).unwrap();
    assert_eq!(r.refinement.refined_start, 8);
    let bad: Vec<i64> = r.bound_violations.iter().map(|v| v.n).collect();
    assert_eq!(bad, vec![12]);
}

#[test]
fn both_reference_trinomial_variants_fail_only_at_twelve() {
    for den in [256, 265] {
        let pair = trinomial_pair(den);
        let mut cache = SequenceCache::new(&trinomial()).unwrap();
        let v = verify_bounds_scan(&mut cache, &pair, 12, 600).unwrap();
        assert_eq!(
            v.iter().map(|v| v.n).collect::<Vec<_>>(),
            vec![12],
            "denominator {den}"
        );
    }
}

#[test]
fn motzkin_reference_bounds() {
    let pair = motzkin_scaled_pair();
    let t = laguerre2_threshold(&pair, 1).unwrap();
    assert_eq!((t.n2, t.n), (2, 228));
    let opts = PipelineOptions {
        horizon: Some(600),
        ..Default::default()
    };
    let r = certify_laguerre2(&motzkin_over_factorial(), Some(pair), &opts).unwrap();
    assert_eq!(r.refinement.refined_start, 0);
    assert!(r.refinement.violations.is_empty());
    assert!(r.bound_violations.is_empty());
}

#[test]
fn self_certified_trinomial() {
    let opts = PipelineOptions {
        horizon: Some(600),
        ..Default::default()
    };
    let r = certify_logmono3(&trinomial(), None, &opts).unwrap();
    let cert = r.certificate.as_ref().unwrap();
    cert.replay(&trinomial()).unwrap();
    assert_eq!(r.refinement.refined_start, 8);
    assert!(r.bound_violations.is_empty());
    assert!(r.consistent());
}

#[test]
fn self_certified_motzkin() {
    let cert = propose_bounds(&motzkin(), 5, 0).unwrap();
    cert.replay(&motzkin()).unwrap();
    assert!(cert.base_index <= 228, "base index {}", cert.base_index);
    let pair = u_bounds_from_b(&cert, motzkin_over_factorial().scale()).unwrap();
    assert!(pair.is_ordered());
    let opts = PipelineOptions {
        horizon: Some(600),
        ..Default::default()
    };
    let r = certify_laguerre2(&motzkin_over_factorial(), None, &opts).unwrap();
    assert_eq!(r.refinement.refined_start, 0);
    assert!(r.bound_violations.is_empty());
}

#[test]
fn proof_chain_on_certified_bounds() {
    let opts = PipelineOptions {
        horizon: Some(400),
        ..Default::default()
    };
    let r = certify_logmono3(&trinomial(), None, &opts).unwrap();
    let (g, f) = (&r.pair.g, &r.pair.f);
    let n0 = r.thresholds.n;
    let mut cache = logmono_core::SequenceCache::new(&trinomial()).unwrap();
    let u = cache.ratios_u(n0 - 1, n0 + 2001).unwrap();
    let at = |n: i64| &u[(n - n0 + 1) as usize];
    for n in n0..n0 + 2000 {
        let (gn, fn1) = (g.eval_i64(n).unwrap(), f.eval_i64(n + 1).unwrap());
        assert!(at(n) > &gn && gn > 1);
        assert!(at(n).clone() - at(n + 1) > gn.clone() - &fn1 && gn > fn1);
        let lhs = at(n - 1).clone() * at(n + 1) - at(n).clone() * at(n);
        let bound = g.eval_i64(n - 1).unwrap() * g.eval_i64(n + 1).unwrap() - f.eval_i64(n).unwrap().square();
        assert!(lhs > bound && bound > 0);
    }
    let rows = cache.scan_logmono(n0, n0 + 2000).unwrap();
    assert!(rows.iter().all(|r| r.all_hold()));
}

#[test]
fn proof_chain_on_laguerre_bounds() {
    let rec = motzkin_over_factorial();
    let opts = PipelineOptions {
        horizon: Some(400),
        ..Default::default()
    };
    for supplied in [Some(motzkin_scaled_pair()), None] {
        let r = certify_laguerre2(&rec, supplied, &opts).unwrap();
        let expr = logmono_core::verify::laguerre2_expression(&r.pair);
        let n0 = r.thresholds.n;
        let mut cache = logmono_core::SequenceCache::new(&rec).unwrap();
        let u = cache.ratios_u(n0 - 1, n0 + 1001).unwrap();
        for n in n0..n0 + 1000 {
            let i = (n - n0 + 1) as usize;
            let q = u[i - 1].clone() * &u[i] * &u[i] * &u[i + 1] - u[i].clone() * 4u32 + 3u32;
            let b = expr.eval_i64(n).unwrap();
            assert!(q > b && b > 0, "n = {n}");
        }
        assert!(cache.scan_laguerre(2, n0, n0 + 2000).unwrap().is_empty());
    }
}
