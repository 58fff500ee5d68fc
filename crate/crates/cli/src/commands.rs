use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use logmono_core::asymptotics::{classify_laguerre2, classify_logmono, to_decimal, Decision, Expansion};
use logmono_core::bounds::{propose_bounds, u_bounds_from_b, verify_bounds_scan};
use logmono_core::verify::{
    certify_laguerre2, certify_logmono3, default_horizon, laguerre2_expression, logmono3_expressions,
    obtain_bounds, refine_threshold_laguerre2, refine_threshold_logmono3, PipelineOptions,
};
use logmono_core::{BoundPair, Error as CoreError, Provenance, Rational, RationalFunction, SequenceCache};
use rug::Float;
use serde_json::{json, Value};

use crate::args::{CertifyArgs, Cli, Command, GlobalArgs};
use crate::error::{CliError, ExitStatus};
use crate::expansion::parse_expansion;
use crate::expr::parse_expression;
use crate::recfile::{read_recurrence_file, RecurrenceFile};
use crate::report::{self, Report};

/// What a command produced before persistence.
#[derive(Debug)]
pub struct Output {
    pub report: Report,
    /// Human-readable summary for stdout.
    pub text: String,
    /// Rows `(n, u_n, g(n), f(n))` for `--plot-data`.
    pub plot: Option<Vec<[String; 4]>>,
}

const SHOWN: usize = 10;
const PLOT_DIGITS: usize = 20;

fn list(ns: &[i64]) -> String {
    if ns.is_empty() {
        return "none".into();
    }
    let head: Vec<String> = ns.iter().take(SHOWN).map(i64::to_string).collect();
    if ns.len() > SHOWN {
        format!("{} ... ({} total)", head.join(", "), ns.len())
    } else {
        head.join(", ")
    }
}

fn decimal(q: &Rational) -> String {
    to_decimal(&Float::with_val(128, q), PLOT_DIGITS)
}

fn describe(file: &RecurrenceFile) -> String {
    let rec = &file.recurrence;
    format!(
        "recurrence: {} (order {}, offset {}{})",
        file.name.as_deref().unwrap_or("unnamed"),
        rec.order(),
        rec.offset(),
        rec.scale().map(|s| format!(", scale {s}")).unwrap_or_default()
    )
}

/// `g,f,N1` as a supplied pair.
pub fn parse_bounds(text: &str) -> Result<BoundPair, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let [g, f, n1] = parts.as_slice() else {
        return Err(CliError::Input(format!(
            "--bounds expects 'g,f,N1', got {} comma-separated parts",
            parts.len()
        )));
    };
    let n1 = n1
        .trim()
        .parse::<i64>()
        .map_err(|_| CliError::Input(format!("--bounds: N1 must be an integer, got '{}'", n1.trim())))?;
    let pair = BoundPair::new(
        parse_expression(g)?,
        parse_expression(f)?,
        n1,
        Provenance::Supplied,
    );
    if !pair.is_ordered() {
        return Err(CliError::Input(format!(
            "--bounds: need g(n) < f(n) without poles for every n >= {n1}"
        )));
    }
    Ok(pair)
}

fn plot_rows(
    cache: &mut SequenceCache,
    pair: Option<&BoundPair>,
    lo: i64,
    hi: i64,
) -> Result<Vec<[String; 4]>, CliError> {
    let lo = lo.max(cache.offset() + 1);
    if hi < lo {
        return Ok(Vec::new());
    }
    let us = cache.ratios_u(lo, hi)?;
    let mut rows = Vec::with_capacity(us.len());
    for (n, u) in (lo..=hi).zip(us) {
        let side = |f: &RationalFunction| f.eval_i64(n).map(|v| decimal(&v)).unwrap_or_default();
        let (g, f) = match pair {
            Some(p) if n >= p.valid_from => (side(&p.g), side(&p.f)),
            _ => (String::new(), String::new()),
        };
        rows.push([n.to_string(), decimal(&u), g, f]);
    }
    Ok(rows)
}

fn plot_wanted(global: &GlobalArgs) -> bool {
    global.plot_data.is_some()
}

fn eval(global: &GlobalArgs, path: &Path, from: Option<i64>, to: Option<i64>) -> Result<Output, CliError> {
    let (file, bytes) = read_recurrence_file(path)?;
    let mut cache = SequenceCache::new(&file.recurrence)?;
    let lo = from.unwrap_or(cache.offset());
    let hi = to.unwrap_or(lo + 10);
    if lo < cache.offset() || hi < lo {
        return Err(CliError::Input(format!(
            "need {} <= --from <= --to, got {lo}..{hi}",
            cache.offset()
        )));
    }
    let terms = cache.terms(lo.max(cache.offset() + 1) - 1, hi + 1)?.to_vec();
    let base = lo.max(cache.offset() + 1) - 1;
    let at = |n: i64| terms.get((n - base) as usize).filter(|_| n >= base);
    let mut text = describe(&file);
    text.push_str("\nn\ta_n\tb_n\tu_n\n");
    let mut rows = Vec::new();
    for n in lo..=hi {
        let a = at(n).expect("in range").clone();
        let b = at(n + 1)
            .filter(|_| a.cmp0().is_ne())
            .map(|next| Rational::from(next / &a));
        let u = match (n > cache.offset(), at(n - 1), at(n + 1)) {
            (true, Some(prev), Some(next)) if a.cmp0().is_ne() => {
                Some(Rational::from(prev * next) / Rational::from(&a * &a))
            }
            _ => None,
        };
        let show = |q: &Option<Rational>| q.as_ref().map_or("-".to_string(), Rational::to_string);
        let _ = writeln!(text, "{n}\t{a}\t{}\t{}", show(&b), show(&u));
        rows.push(json!({
            "n": n,
            "a": report::rational(&a),
            "b": b.as_ref().map(report::rational),
            "u": u.as_ref().map(report::rational),
        }));
    }
    Ok(Output {
        report: Report {
            command: "eval".into(),
            input: report::file_input(path, &bytes, json!({ "from": lo, "to": hi })),
            seed: global.seed,
            status: ExitStatus::Ok,
            result: json!({ "recurrence": report::recurrence(&file.recurrence, file.name.as_deref()), "rows": rows }),
            timing_ms: 0,
        },
        text,
        plot: None,
    })
}

enum Check {
    LogMono3,
    Laguerre(u32),
}

fn parse_check(text: &str) -> Result<Check, CliError> {
    if text == "logmono3" {
        return Ok(Check::LogMono3);
    }
    if let Some(m) = text.strip_prefix("laguerre:") {
        if let Ok(m) = m.parse::<u32>() {
            if m > 0 {
                return Ok(Check::Laguerre(m));
            }
        }
    }
    Err(CliError::Input(format!(
        "--check must be 'logmono3' or 'laguerre:<m>' with m >= 1, got '{text}'"
    )))
}

fn scan(
    global: &GlobalArgs,
    path: &Path,
    check: &str,
    from: Option<i64>,
    to: Option<i64>,
) -> Result<Output, CliError> {
    let kind = parse_check(check)?;
    let (file, bytes) = read_recurrence_file(path)?;
    let mut cache = SequenceCache::new(&file.recurrence)?;
    let hi = to.or(global.horizon).unwrap_or(1000);
    let mut text = describe(&file);
    let (lo, result) = match kind {
        Check::LogMono3 => {
            let lo = from.unwrap_or(cache.offset() + 1);
            let rows = cache.scan_logmono(lo, hi)?;
            let bad: Vec<_> = rows.iter().filter(|r| !r.all_hold()).collect();
            let ns: Vec<i64> = bad.iter().map(|r| r.n).collect();
            let _ = write!(
                text,
                "\ncheck: u_n > 1, u_n > u_{{n+1}}, u_n u_{{n+2}} > u_{{n+1}}^2 on rows {lo}..{hi}\nviolations: {}",
                list(&ns)
            );
            let violations: Vec<Value> = bad
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "u_above_one": report::outcome(r.u_above_one),
                        "u_decreasing": report::outcome(r.u_decreasing),
                        "u_log_convex": report::outcome(r.u_log_convex),
                    })
                })
                .collect();
            (
                lo,
                json!({
                    "check": "logmono3",
                    "convention": logmono_core::verify::LOGMONO_CONVENTION,
                    "violations": violations,
                    "last_violation": ns.last(),
                }),
            )
        }
        Check::Laguerre(m) => {
            let lo = from.unwrap_or(cache.offset());
            let found = cache.scan_laguerre(m, lo, hi)?;
            let ns: Vec<i64> = found.iter().map(|v| v.n).collect();
            let _ = write!(
                text,
                "\ncheck: L_{m}(a_n) > 0 for n in {lo}..{hi}\nviolations: {}",
                list(&ns)
            );
            let violations: Vec<Value> = found
                .iter()
                .map(|v| json!({ "n": v.n, "boundary": v.boundary }))
                .collect();
            (
                lo,
                json!({
                    "check": format!("laguerre:{m}"),
                    "violations": violations,
                    "last_violation": ns.last(),
                }),
            )
        }
    };
    let mut result = result;
    result["from"] = json!(lo);
    result["to"] = json!(hi);
    Ok(Output {
        report: Report {
            command: "scan".into(),
            input: report::file_input(path, &bytes, json!({ "check": check, "from": lo, "to": hi })),
            seed: global.seed,
            status: ExitStatus::Ok,
            result,
            timing_ms: 0,
        },
        text,
        plot: None,
    })
}

/// Appends a zero term at `alpha_1 + 1` when the expansion is too short for
/// the spread hypothesis but its remainder allows it.
fn auto_pad(e: &Expansion) -> Result<Option<Expansion>, CliError> {
    let (Some(first), Some(last)) = (e.first(), e.last()) else {
        return Ok(None);
    };
    let target = Rational::from(&first.exponent + 1u32);
    if last.exponent >= target || &target >= e.remainder() {
        return Ok(None);
    }
    Ok(Some(e.padded(&[target])?))
}

fn classify(global: &GlobalArgs, literal: &str) -> Result<Output, CliError> {
    let given = parse_expansion(literal)?;
    let padded = auto_pad(&given)?;
    let e = padded.as_ref().unwrap_or(&given);
    let lm = classify_logmono(e);
    let lg = classify_laguerre2(e);
    let mut text = format!("expansion: {e}");
    if padded.is_some() {
        text.push_str("\n(zero term added at alpha_1 + 1, allowed by the remainder)");
    }
    for (name, v) in [("log-monotonicity", &lm), ("laguerre-2", &lg)] {
        let _ = write!(
            text,
            "\n{name}: {}",
            match v.decision {
                Decision::Holds => "holds",
                Decision::Inconclusive => "inconclusive",
            }
        );
        if let Some(b) = v.branch {
            let _ = write!(text, ", branch {b}");
        }
        if let Some(ell) = v.ell {
            let _ = write!(text, ", ell = {ell}");
        }
        for t in &v.leading {
            let sign = if t.sign == logmono_core::Sign::Negative {
                "-"
            } else {
                ""
            };
            let _ = write!(
                text,
                "\n  leading: {sign}({})/n^{}",
                t.coeff.display_with("L"),
                t.exponent
            );
        }
        if !v.note.is_empty() {
            let _ = write!(text, "\n  note: {}", v.note);
        }
    }
    let any = lm.decision == Decision::Holds || lg.decision == Decision::Holds;
    Ok(Output {
        report: Report {
            command: "classify".into(),
            input: json!({ "expansion": literal }),
            seed: global.seed,
            status: if any {
                ExitStatus::Ok
            } else {
                ExitStatus::Inconclusive
            },
            result: json!({
                "expansion": report::expansion(e),
                "auto_padded": padded.is_some(),
                "logmono": report::verdict(&lm),
                "laguerre2": report::verdict(&lg),
            }),
            timing_ms: 0,
        },
        text,
        plot: None,
    })
}

fn bounds(global: &GlobalArgs, path: &Path, order: usize, n1: i64) -> Result<Output, CliError> {
    let (file, bytes) = read_recurrence_file(path)?;
    let rec = &file.recurrence;
    let cert = propose_bounds(rec, order, n1)?;
    cert.replay(rec)?;
    let pair = u_bounds_from_b(&cert, rec.scale())?;
    let hi = global.horizon.unwrap_or(pair.valid_from + 2000);
    let mut cache = SequenceCache::new(rec)?;
    let violations = verify_bounds_scan(&mut cache, &pair, pair.valid_from, hi)?;
    let ns: Vec<i64> = violations.iter().map(|v| v.n).collect();
    let mut text = describe(&file);
    let _ = write!(
        text,
        "\nb-bounds: {} <= b_n <= {} for n >= {}\nu-bounds: g(n) = {}, f(n) = {} for n >= {} [{}]\nreplay: ok\nbound scan {}..{}: violations {}",
        cert.l, cert.h, cert.base_index, pair.g, pair.f, pair.valid_from, pair.provenance, pair.valid_from, hi, list(&ns)
    );
    let plot = if plot_wanted(global) {
        Some(plot_rows(&mut cache, Some(&pair), pair.valid_from, hi)?)
    } else {
        None
    };
    Ok(Output {
        report: Report {
            command: "bounds".into(),
            input: report::file_input(path, &bytes, json!({ "order": order, "n1": n1, "horizon": hi })),
            seed: global.seed,
            status: if ns.is_empty() {
                ExitStatus::Ok
            } else {
                ExitStatus::Internal
            },
            result: json!({
                "recurrence": report::recurrence(rec, file.name.as_deref()),
                "certificate": report::certificate(&cert),
                "replay": "ok",
                "u_bounds": report::bound_pair(&pair),
                "bound_scan": report::bound_violations(&violations, pair.valid_from, hi),
            }),
            timing_ms: 0,
        },
        text,
        plot,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    LogMono3,
    Laguerre2,
}

impl Pipeline {
    fn command(self) -> &'static str {
        match self {
            Pipeline::LogMono3 => "certify-logmono3",
            Pipeline::Laguerre2 => "certify-laguerre2",
        }
    }
}

/// Exact scan only, for recurrences outside the interval-induction scope.
fn scan_verified(
    file: &RecurrenceFile,
    pipeline: Pipeline,
    horizon: i64,
    reason: &CoreError,
) -> Result<(Value, String, ExitStatus), CliError> {
    let mut cache = SequenceCache::new(&file.recurrence)?;
    let first = cache.offset();
    let refinement = match pipeline {
        Pipeline::LogMono3 => refine_threshold_logmono3(&mut cache, first, horizon)?,
        Pipeline::Laguerre2 => refine_threshold_laguerre2(&mut cache, first, horizon)?,
    };
    let claim = format!(
        "no violation after index {} up to {horizon}; nothing is claimed beyond the horizon",
        refinement.refined_start
    );
    let text = format!(
        "{}\nprovenance: scan-verified (no asymptotic certificate: {reason})\nscan {}..{}: violations {}\n{claim}\nstatus: inconclusive",
        describe(file),
        refinement.scanned_from,
        horizon,
        list(&refinement.violations)
    );
    let result = json!({
        "provenance": Provenance::ScanVerified.label(),
        "reason": reason.to_string(),
        "bounds": Value::Null,
        "thresholds": Value::Null,
        "convention": match pipeline {
            Pipeline::LogMono3 => logmono_core::verify::LOGMONO_CONVENTION,
            Pipeline::Laguerre2 => logmono_core::verify::LAGUERRE_CONVENTION,
        },
        "refinement": report::refinement(&refinement, claim),
    });
    Ok((result, text, ExitStatus::Inconclusive))
}

fn certify(global: &GlobalArgs, args: &CertifyArgs, pipeline: Pipeline) -> Result<Output, CliError> {
    let (file, bytes) = read_recurrence_file(&args.file)?;
    let rec = &file.recurrence;
    let supplied = args.bounds.as_deref().map(parse_bounds).transpose()?;
    let opts = PipelineOptions {
        order: args.order,
        n1_hint: args.n1,
        horizon: global.horizon,
    };
    let flags = json!({
        "bounds": args.bounds,
        "order": args.order,
        "n1": args.n1,
        "horizon": global.horizon,
    });
    let input = report::file_input(&args.file, &bytes, flags);
    let make = |status, result, text, plot| Output {
        report: Report {
            command: pipeline.command().into(),
            input: input.clone(),
            seed: global.seed,
            status,
            result,
            timing_ms: 0,
        },
        text,
        plot,
    };

    let (pair, certificate) = match obtain_bounds(rec, supplied, &opts) {
        Ok(found) => found,
        Err(e @ CoreError::Inapplicable(_)) => {
            let horizon = global.horizon.unwrap_or(default_horizon(0));
            let (result, text, status) = scan_verified(&file, pipeline, horizon, &e)?;
            let plot = if plot_wanted(global) {
                let mut cache = SequenceCache::new(rec)?;
                Some(plot_rows(&mut cache, None, rec.offset() + 1, horizon)?)
            } else {
                None
            };
            return Ok(make(status, result, text, plot));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(cert) = &certificate {
        cert.replay(rec)?;
    }

    let mut text = describe(&file);
    let _ = write!(
        text,
        "\nbounds: g(n) = {}, f(n) = {} for n >= {} [{}]",
        pair.g, pair.f, pair.valid_from, pair.provenance
    );
    let (result, bound_ns, consistent, horizon) = match pipeline {
        Pipeline::LogMono3 => {
            let expressions = logmono3_expressions(&pair);
            let mut r = certify_logmono3(rec, Some(pair.clone()), &opts)?;
            r.certificate = certificate;
            let t = &r.thresholds;
            let _ = write!(
                text,
                "\nthresholds: N1 = {}, N2 = {}, N3 = {}, N4 = {}, N = {}",
                pair.valid_from, t.n2, t.n3, t.n4, t.n
            );
            let ns: Vec<i64> = r.bound_violations.iter().map(|v| v.n).collect();
            let _ = write!(
                text,
                "\nrefinement {}..{}: last violation {}\nclaim: {{a_n}}_{{n>={}}} is 3-log-monotonic (checked to {}, certified from N = {})",
                r.refinement.scanned_from,
                r.refinement.horizon,
                r.refinement.violations.last().map_or("none".into(), i64::to_string),
                r.refinement.refined_start,
                r.refinement.horizon,
                t.n
            );
            (
                report::logmono3(&r, &expressions),
                ns,
                r.consistent(),
                r.refinement.horizon,
            )
        }
        Pipeline::Laguerre2 => {
            let expression = laguerre2_expression(&pair);
            let mut r = certify_laguerre2(rec, Some(pair.clone()), &opts)?;
            r.certificate = certificate;
            let _ = write!(
                text,
                "\nthresholds: N1 = {}, N2 = {}, N = {}",
                pair.valid_from, r.thresholds.n2, r.thresholds.n
            );
            let ns: Vec<i64> = r.bound_violations.iter().map(|v| v.n).collect();
            let _ = write!(
                text,
                "\nrefinement {}..{}: violations {}\nclaim: {{a_n}}_{{n>={}}} satisfies the order-2 Laguerre inequality (checked to {}, certified from N = {})",
                r.refinement.scanned_from,
                r.refinement.horizon,
                list(&r.refinement.violations),
                r.refinement.refined_start,
                r.refinement.horizon,
                r.thresholds.n
            );
            (
                report::laguerre2(&r, &expression),
                ns,
                r.consistent(),
                r.refinement.horizon,
            )
        }
    };
    let _ = write!(
        text,
        "\nbound scan {}..{}: violations {}",
        pair.valid_from,
        horizon,
        list(&bound_ns)
    );
    let status = if bound_ns.is_empty() && consistent {
        ExitStatus::Ok
    } else {
        text.push_str("\nwarning: the bounds fail the exact scan or the refinement contradicts N; thresholds are not certified");
        ExitStatus::Inconclusive
    };
    let _ = write!(text, "\nstatus: {status}");
    let plot = if plot_wanted(global) {
        let mut cache = SequenceCache::new(rec)?;
        Some(plot_rows(&mut cache, Some(&pair), rec.offset() + 1, horizon)?)
    } else {
        None
    };
    Ok(make(status, result, text, plot))
}

fn batch(global: &GlobalArgs, dir: &Path, check: &str, out: Option<&Path>) -> Result<Output, CliError> {
    let pipeline = match check {
        "logmono3" => Pipeline::LogMono3,
        "laguerre2" => Pipeline::Laguerre2,
        _ => {
            return Err(CliError::Input(format!(
                "--check must be 'logmono3' or 'laguerre2', got '{check}'"
            )))
        }
    };
    let read_err = |source| CliError::Read {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(read_err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "rec"))
        .collect();
    files.sort();
    let out_dir = out.map(Path::to_path_buf).unwrap_or_else(|| dir.join("reports"));
    std::fs::create_dir_all(&out_dir).map_err(|source| CliError::Write {
        path: out_dir.clone(),
        source,
    })?;

    let inner = GlobalArgs {
        json: None,
        plot_data: None,
        ..global.clone()
    };
    let mut rows = Vec::new();
    let mut worst = ExitStatus::Ok;
    let mut text = format!(
        "{:<28} {:<14} {:>8} {:>8}  detail\n",
        "file", "status", "N", "refined"
    );
    for path in &files {
        let args = CertifyArgs {
            file: path.clone(),
            bounds: None,
            order: 5,
            n1: 0,
        };
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| certify(&inner, &args, pipeline)))
            .unwrap_or_else(|_| Err(panic_error()));
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let report = match outcome {
            Ok(o) => o.report,
            Err(e) => error_report(pipeline.command(), path, &e, global.seed),
        };
        let report = Report {
            timing_ms: started.elapsed().as_millis(),
            ..report
        };
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let report_path = out_dir.join(format!("{stem}.json"));
        report.write(&report_path)?;
        let n = report.result["thresholds"]["n"].clone();
        let refined = report.result["refinement"]["refined_start"].clone();
        let detail = report.result["error"]
            .as_str()
            .map(|s| s.lines().next().unwrap_or("").to_string())
            .or_else(|| report.result["provenance"].as_str().map(str::to_string))
            .unwrap_or_default();
        let _ = writeln!(
            text,
            "{:<28} {:<14} {:>8} {:>8}  {}",
            name,
            report.status.to_string(),
            n.to_string(),
            refined.to_string(),
            detail
        );
        worst = worst.max(report.status);
        rows.push(json!({
            "file": name,
            "status": report.status.to_string(),
            "exit_code": report.status.code(),
            "n": n,
            "refined_start": refined,
            "detail": detail,
            "report": report_path.file_name().map(|s| s.to_string_lossy().into_owned()),
        }));
    }
    let _ = write!(text, "{} files, reports in {}", files.len(), out_dir.display());
    let summary = Report {
        command: "batch".into(),
        input: json!({ "dir": dir.display().to_string(), "check": check }),
        seed: global.seed,
        status: worst,
        result: json!({ "files": rows }),
        timing_ms: 0,
    };
    summary.write(&out_dir.join("summary.json"))?;
    Ok(Output {
        report: summary,
        text,
        plot: None,
    })
}

fn panic_error() -> CliError {
    CliError::Internal("the pipeline panicked".into())
}

/// Report for a command that failed.
pub fn error_report(command: &str, path: &Path, e: &CliError, seed: Option<u64>) -> Report {
    let input = match std::fs::read(path) {
        Ok(bytes) => report::file_input(path, &bytes, Value::Null),
        Err(_) => json!({ "path": path.display().to_string() }),
    };
    Report {
        command: command.into(),
        input,
        seed,
        status: e.status(),
        result: json!({ "error": e.to_string() }),
        timing_ms: 0,
    }
}

fn selftest(global: &GlobalArgs, cases: usize) -> Result<Output, CliError> {
    let seed = global.seed.unwrap_or(0);
    let results = crate::selftest::run(seed, cases);
    let failed: usize = results.iter().map(|r| r.failures.len()).sum();
    let mut text = format!("seed {seed}, {cases} cases per property");
    for r in &results {
        let _ = write!(
            text,
            "\n{:<32} {}",
            r.name,
            if r.failures.is_empty() {
                "ok".to_string()
            } else {
                format!("FAILED ({})", r.failures.len())
            }
        );
        for f in r.failures.iter().take(3) {
            let _ = write!(text, "\n  {f}");
        }
    }
    Ok(Output {
        report: Report {
            command: "selftest".into(),
            input: json!({ "cases": cases }),
            seed: Some(seed),
            status: if failed == 0 {
                ExitStatus::Ok
            } else {
                ExitStatus::Internal
            },
            result: json!({
                "properties": results.iter().map(|r| json!({
                    "name": r.name,
                    "cases": r.cases,
                    "failures": r.failures,
                })).collect::<Vec<_>>(),
            }),
            timing_ms: 0,
        },
        text,
        plot: None,
    })
}

/// Runs one command, without printing or persisting anything.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    if let Some(h) = g.horizon {
        if h < 1 {
            return Err(CliError::Input(format!("--horizon must be positive, got {h}")));
        }
    }
    let started = Instant::now();
    let mut out = match &cli.command {
        Command::Eval { file, from, to } => eval(g, file, *from, *to),
        Command::Scan {
            file,
            check,
            from,
            to,
        } => scan(g, file, check, *from, *to),
        Command::Classify { expansion } => classify(g, expansion),
        Command::Bounds { file, order, n1 } => bounds(g, file, *order, *n1),
        Command::CertifyLogmono3(args) => certify(g, args, Pipeline::LogMono3),
        Command::CertifyLaguerre2(args) => certify(g, args, Pipeline::Laguerre2),
        Command::Batch { dir, check, out } => batch(g, dir, check, out.as_deref()),
        Command::Selftest { cases } => selftest(g, *cases),
    }?;
    out.report.timing_ms = started.elapsed().as_millis();
    Ok(out)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Scan { .. } => "scan",
        Command::Classify { .. } => "classify",
        Command::Bounds { .. } => "bounds",
        Command::CertifyLogmono3(_) => "certify-logmono3",
        Command::CertifyLaguerre2(_) => "certify-laguerre2",
        Command::Batch { .. } => "batch",
        Command::Selftest { .. } => "selftest",
    }
}

fn input_path(c: &Command) -> Option<&Path> {
    match c {
        Command::Eval { file, .. } | Command::Scan { file, .. } | Command::Bounds { file, .. } => Some(file),
        Command::CertifyLogmono3(a) | Command::CertifyLaguerre2(a) => Some(&a.file),
        Command::Batch { dir, .. } => Some(dir),
        Command::Classify { .. } | Command::Selftest { .. } => None,
    }
}

fn write_plot(path: &Path, rows: &[[String; 4]]) -> Result<(), CliError> {
    let mut s = String::from("n,u_n,g_n,f_n\n");
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    std::fs::write(path, s).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs a command, prints its summary, writes the requested files and
/// returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(out) => {
            println!("{}", out.text);
            let mut status = out.report.status;
            if let Some(path) = &cli.global.json {
                if let Err(e) = out.report.write(path) {
                    eprintln!("error: {e}");
                    status = ExitStatus::Internal;
                }
            }
            match (&cli.global.plot_data, &out.plot) {
                (Some(path), Some(rows)) => {
                    if let Err(e) = write_plot(path, rows) {
                        eprintln!("error: {e}");
                        status = ExitStatus::Internal;
                    }
                }
                (Some(_), None) => eprintln!("note: this command has no plot data"),
                _ => {}
            }
            status.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(path) = &cli.global.json {
                let report = match input_path(&cli.command) {
                    Some(p) => error_report(command_name(&cli.command), p, &e, cli.global.seed),
                    None => Report {
                        command: command_name(&cli.command).into(),
                        input: Value::Null,
                        seed: cli.global.seed,
                        status: e.status(),
                        result: json!({ "error": e.to_string() }),
                        timing_ms: 0,
                    },
                };
                let _ = report.write(path);
            }
            e.status().code()
        }
    }
}
