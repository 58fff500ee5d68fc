//! JSON reports.
//!
//! Rationals are written as `"p/q"` strings and rational functions as
//! `{text, num, den}` with coefficient lists from the constant term up. Maps
//! are `BTreeMap`-backed, so key order is fixed and two runs on the same input
//! differ only in `timing_ms`.

use std::path::Path;

use logmono_core::asymptotics::{ClassifierVerdict, Expansion, LeadingTerm};
use logmono_core::bounds::{BoundViolation, Monotone, SearchRecord};
use logmono_core::verify::{Laguerre2Report, LogMono3Report, Refinement};
use logmono_core::{BoundCertificate, BoundPair, Outcome, Poly, Rational, RationalFunction, Recurrence};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, ExitStatus};

pub const TOOL: &str = "logmono";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn rational(q: &Rational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

fn poly_coeffs(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rational).collect())
}

pub fn ratfunc(f: &RationalFunction) -> Value {
    ratfunc_in(f, "n")
}

pub fn ratfunc_in(f: &RationalFunction, var: &str) -> Value {
    json!({
        "text": f.display_with(var),
        "num": poly_coeffs(f.num()),
        "den": poly_coeffs(f.den()),
    })
}

pub fn outcome(o: Outcome) -> Value {
    Value::from(match o {
        Outcome::Holds => "holds",
        Outcome::Fails => "fails",
        Outcome::Boundary => "boundary",
    })
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn recurrence(rec: &Recurrence, name: Option<&str>) -> Value {
    json!({
        "name": name,
        "order": rec.order(),
        "offset": rec.offset(),
        "coeffs": rec.coeffs().iter().map(ratfunc).collect::<Vec<_>>(),
        "initials": rec.initials().iter().map(rational).collect::<Vec<_>>(),
        "scale": rec.scale().map(ratfunc),
    })
}

pub fn bound_pair(pair: &BoundPair) -> Value {
    json!({
        "g": ratfunc(&pair.g),
        "f": ratfunc(&pair.f),
        "valid_from": pair.valid_from,
        "provenance": pair.provenance.label(),
    })
}

fn search(s: &SearchRecord) -> Value {
    json!({
        "lambda": rational(&s.expansion.lambda),
        "expansion_coeffs": s.expansion.coeffs.iter().map(rational).collect::<Vec<_>>(),
        "margin": rational(&s.margin),
        "attempts": s.attempts,
        "strategy": "bounds Lambda_K(n) -+ c/n^K; c doubles from 1 on base indices 10, 20, 50, 100, 250, 500; at most 40 attempts",
    })
}

pub fn certificate(c: &BoundCertificate) -> Value {
    let (l, b, h) = &c.base_check;
    json!({
        "base_index": c.base_index,
        "base_check": { "l": rational(l), "b": rational(b), "h": rational(h) },
        "map": match c.monotone {
            Monotone::Decreasing => "decreasing",
            Monotone::Increasing => "increasing",
        },
        "sign_holds_from": [c.sign_holds_from.0, c.sign_holds_from.1],
        "induction_holds_from": [c.induction_holds_from.0, c.induction_holds_from.1],
        "l": ratfunc(&c.l),
        "h": ratfunc(&c.h),
        "search": c.search.as_ref().map(search),
    })
}

pub fn bound_violations(v: &[BoundViolation], from: i64, to: i64) -> Value {
    json!({
        "from": from,
        "to": to,
        "violations": v.iter().map(|b| json!({
            "n": b.n,
            "lower": outcome(b.lower),
            "upper": outcome(b.upper),
        })).collect::<Vec<_>>(),
    })
}

pub fn refinement(r: &Refinement, claim: String) -> Value {
    json!({
        "refined_start": r.refined_start,
        "claim": claim,
        "horizon": r.horizon,
        "scanned_from": r.scanned_from,
        "violations": r.violations,
        "boundary": r.boundary,
        "beyond_horizon": "indices past the horizon rest on the asymptotic threshold N",
    })
}

pub fn logmono3(r: &LogMono3Report, expressions: &[RationalFunction; 3]) -> Value {
    let t = &r.thresholds;
    json!({
        "convention": logmono_core::verify::LOGMONO_CONVENTION,
        "bounds": bound_pair(&r.pair),
        "certificate": r.certificate.as_ref().map(certificate),
        "thresholds": { "n1": r.pair.valid_from, "n2": t.n2, "n3": t.n3, "n4": t.n4, "n": t.n },
        "expressions": {
            "n2": ratfunc(&expressions[0]),
            "n3": ratfunc(&expressions[1]),
            "n4": ratfunc(&expressions[2]),
        },
        "bound_scan": bound_violations(&r.bound_violations, r.pair.valid_from, r.refinement.horizon),
        "refinement": refinement(
            &r.refinement,
            format!("{{a_n}}_{{n>={}}} is 3-log-monotonic up to the horizon", r.refinement.refined_start),
        ),
        "consistent": r.consistent(),
    })
}

pub fn laguerre2(r: &Laguerre2Report, expression: &RationalFunction) -> Value {
    json!({
        "convention": logmono_core::verify::LAGUERRE_CONVENTION,
        "bounds": bound_pair(&r.pair),
        "certificate": r.certificate.as_ref().map(certificate),
        "thresholds": { "n1": r.pair.valid_from, "n2": r.thresholds.n2, "n": r.thresholds.n },
        "expressions": { "n2": ratfunc(expression) },
        "bound_scan": bound_violations(&r.bound_violations, r.pair.valid_from, r.refinement.horizon),
        "refinement": refinement(
            &r.refinement,
            format!(
                "{{a_n}}_{{n>={}}} satisfies the order-2 Laguerre inequality up to the horizon",
                r.refinement.refined_start
            ),
        ),
        "consistent": r.consistent(),
    })
}

fn leading(t: &LeadingTerm) -> Value {
    json!({
        "sign": format!("{:?}", t.sign).to_lowercase(),
        "exponent": rational(&t.exponent),
        "coeff": ratfunc_in(&t.coeff, "L"),
        "text": format!("{}({})/n^{}", if t.sign == logmono_core::Sign::Negative { "-" } else { "" }, t.coeff.display_with("L"), t.exponent),
    })
}

pub fn verdict(v: &ClassifierVerdict) -> Value {
    json!({
        "decision": format!("{:?}", v.decision).to_lowercase(),
        "branch": v.branch.map(|b| b.label()),
        "ell": v.ell,
        "leading": v.leading.iter().map(leading).collect::<Vec<_>>(),
        "relies_on_padding": v.relies_on_padding,
        "note": v.note,
    })
}

pub fn expansion(e: &Expansion) -> Value {
    json!({
        "text": e.to_string(),
        "terms": e.terms().iter().map(|t| json!({
            "exponent": rational(&t.exponent),
            "coeff": ratfunc_in(&t.coeff, "L"),
        })).collect::<Vec<_>>(),
        "remainder": rational(e.remainder()),
    })
}

/// A complete report.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    /// Everything needed to rerun the command: file text, flags, literals.
    pub input: Value,
    pub seed: Option<u64>,
    pub status: ExitStatus,
    pub result: Value,
    pub timing_ms: u128,
}

impl Report {
    pub fn to_value(&self) -> Value {
        json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "input": self.input,
            "seed": self.seed,
            "status": self.status.to_string(),
            "exit_code": self.status.code(),
            "result": self.result,
            "timing_ms": self.timing_ms as u64,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Input echo for a recurrence file.
pub fn file_input(path: &Path, bytes: &[u8], flags: Value) -> Value {
    json!({
        "path": path.display().to_string(),
        "digest": digest(bytes),
        "text": String::from_utf8_lossy(bytes),
        "flags": flags,
    })
}
