//! The subcommands, as plain functions returning an [`Output`].

use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rewire_core::code::catalog;
use rewire_core::compiler::{verify_schedule, CompileError, VerifyError, VerifyOptions};
use rewire_core::oracle::{self, MAX_QUBITS};
use rewire_core::rewiring::{extract_logical_action, run_branch};
use rewire_core::{
    compile_program, parse_program, Code, CompileOptions, Distance, GmPolicy, LogicalAction, PauliOperator, Schedule,
    StabilizerCode, TableauState,
};
use serde::Serialize;
use thiserror::Error;

use crate::files::{load_code, parse_code, parse_schedule, save_code, save_schedule};
use crate::parallel::{distance_with_witness, thread_count};
use crate::report::{sha256_hex, Report};

/// Bad flags or unreadable inputs; exit code 2.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

pub enum Output {
    Text(String),
    Report(Report),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Text(_) => 0,
            Output::Report(r) => r.exit_code(),
        }
    }

    pub fn render(&self, json: bool) -> String {
        match self {
            Output::Text(t) => t.clone(),
            Output::Report(r) if json => r.to_json() + "\n",
            Output::Report(r) => r.to_string(),
        }
    }
}

/// `last`, `gauge`, or `index:M` (0-based).
pub fn parse_gm_policy(text: &str) -> Result<GmPolicy, String> {
    match text {
        "last" => Ok(GmPolicy::Last),
        "gauge" => Ok(GmPolicy::Gauge),
        _ => text
            .strip_prefix("index:")
            .and_then(|m| m.parse().ok())
            .map(GmPolicy::Index)
            .ok_or_else(|| format!("expected last, gauge or index:M, got {text:?}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branches {
    All,
    Sample(usize),
}

impl FromStr for Branches {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            ["all"] => Ok(Branches::All),
            ["sample", n] => n
                .parse()
                .map(Branches::Sample)
                .map_err(|e| format!("sample count: {e}")),
            _ => Err(format!("expected `all` or `sample N`, got {text:?}")),
        }
    }
}

/// A code given as a file path or a catalog name, with the hash recorded in
/// reports.
struct Resolved {
    code: Code,
    label: String,
}

fn resolve_code(arg: &str, validate: bool) -> Result<Resolved, UsageError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{arg}: {e}")))?;
        let parsed = if validate { load_code(&text) } else { parse_code(&text) };
        let code = parsed.map_err(|e| usage(format!("{arg}: {e}")))?;
        return Ok(Resolved {
            code,
            label: arg.to_string(),
        });
    }
    catalog::by_name(arg)
        .map(|code| Resolved {
            code,
            label: arg.to_string(),
        })
        .ok_or_else(|| usage(format!("{arg}: no such file or catalog code")))
}

fn resolve_stabilizer(arg: &str) -> Result<(StabilizerCode, String), UsageError> {
    let r = resolve_code(arg, true)?;
    match r.code {
        Code::Stabilizer(c) => Ok((c, r.label)),
        Code::Subsystem(_) => Err(usage(format!(
            "{arg} is a subsystem code; gauge-fix it to a stabilizer code first"
        ))),
    }
}

#[derive(Serialize)]
struct Listing<'a> {
    name: &'a str,
    n: usize,
    k: usize,
    kind: &'static str,
}

pub fn codes_list(json: bool) -> Output {
    let rows: Vec<(String, Code)> = catalog::NAMES
        .iter()
        .map(|&name| (name.to_string(), catalog::by_name(name).expect("catalog name")))
        .collect();
    let listings: Vec<Listing> = rows
        .iter()
        .map(|(name, code)| Listing {
            name,
            n: code.base().n,
            k: code.base().k(),
            kind: match code {
                Code::Stabilizer(_) => "stabilizer",
                Code::Subsystem(_) => "subsystem",
            },
        })
        .collect();
    if json {
        return Output::Text(serde_json::to_string_pretty(&listings).expect("plain data") + "\n");
    }
    let mut text = String::new();
    for l in &listings {
        text.push_str(&format!("{:<14} n={:<3} k={:<2} {}\n", l.name, l.n, l.k, l.kind));
    }
    Output::Text(text)
}

pub fn codes_show(name: &str) -> Result<Output, UsageError> {
    catalog::by_name(name)
        .map(|code| Output::Text(save_code(&code)))
        .ok_or_else(|| usage(format!("unknown catalog code {name:?}; try `codes list`")))
}

pub fn validate(code: &str) -> Result<Output, UsageError> {
    let r = resolve_code(code, false)?;
    let mut report = Report::new("validate");
    report.input("code", &r.label, r.code.base().content_hash());
    let validation = report.timed("validate", || r.code.validate());
    for check in &validation.checks {
        let detail = if check.passed() {
            "ok".to_string()
        } else {
            check
                .violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        };
        report.verdict(check.check, check.passed(), detail);
    }
    Ok(Output::Report(report))
}

pub struct SynthesizeArgs<'a> {
    pub code: &'a str,
    pub program: &'a str,
    pub min_distance: Option<usize>,
    pub gm: GmPolicy,
    pub budget: Option<usize>,
    pub out: &'a Path,
}

pub fn synthesize(args: &SynthesizeArgs) -> Result<Output, UsageError> {
    let (code, label) = resolve_stabilizer(args.code)?;
    let program = parse_program(args.program, code.k()).map_err(|e| usage(format!("program: {e}")))?;
    let mut options = CompileOptions {
        min_distance: args.min_distance,
        gm_policy: args.gm.clone(),
        ..CompileOptions::default()
    };
    if let Some(b) = args.budget {
        options.search_budget = b;
    }
    let mut report = Report::new("synthesize");
    report.input("code", &label, code.content_hash());
    report.input(
        "program",
        &program.to_string(),
        sha256_hex(program.to_string().as_bytes()),
    );

    let schedule = match report.timed("compile", || compile_program(&code, &program, &options)) {
        Ok(s) => s,
        Err(e @ (CompileError::Program(_) | CompileError::QubitMismatch { .. } | CompileError::GmPolicy(_))) => {
            return Err(usage(e.to_string()))
        }
        Err(e @ CompileError::DistanceUnsatisfiable { .. }) => {
            let mut detail = e.to_string();
            if let CompileError::DistanceUnsatisfiable {
                best_pair: Some(pair), ..
            } = &e
            {
                detail.push_str(&format!(
                    "; best pair replaces stabilizer[{}] with g = {}, g' = {}",
                    pair.m, pair.g, pair.g_prime
                ));
            }
            report.verdict("compile", false, detail);
            return Ok(Output::Report(report));
        }
        Err(e) => {
            report.verdict("compile", false, e.to_string());
            return Ok(Output::Report(report));
        }
    };
    report.verdict(
        "compile",
        true,
        format!(
            "{} rewiring(s), {} measurement step(s), fix-up {}",
            schedule.num_rewirings(),
            schedule.steps.len(),
            schedule.pauli_fixup
        ),
    );
    if let Some(min) = schedule
        .audit
        .iter()
        .map(|a| a.distance)
        .min_by_key(|d| d.lower_bound())
    {
        let passed = args.min_distance.is_none_or(|d| min.satisfies(d));
        report.verdict("audit", passed, format!("smallest intermediate distance {min}"));
    }
    let verdict = report.timed("verify", || {
        verify_schedule(&code, &schedule, &program.action(), &VerifyOptions::default())
    });
    match verdict {
        Ok(v) => report.verdict("verify", v.passed(), verdict_detail(&v, &schedule)),
        Err(e) => report.verdict("verify", false, e.to_string()),
    }
    let text = save_schedule(&schedule);
    fs::write(args.out, &text).map_err(|e| usage(format!("{}: {e}", args.out.display())))?;
    report.artifact("schedule", &args.out.display().to_string(), text.as_bytes());
    Ok(Output::Report(report))
}

fn verdict_detail(v: &rewire_core::compiler::Verdict, schedule: &Schedule) -> String {
    if v.passed() {
        match &v.action {
            Some(a) => format!("action {a} over {} step(s)", schedule.steps.len()),
            None => "no action".into(),
        }
    } else {
        v.discrepancies
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub struct SimulateArgs<'a> {
    pub code: &'a str,
    pub schedule: &'a Path,
    pub branches: Option<Branches>,
    pub oracle: bool,
    pub expect: Option<&'a str>,
}

/// Action of one outcome branch over the whole schedule, fix-up included.
fn branch_action(code: &StabilizerCode, schedule: &Schedule, outcomes: &[bool]) -> Result<LogicalAction, String> {
    let origin = TableauState::from_code(code);
    let mut state = run_branch(&origin, &schedule.steps, outcomes).map_err(|e| e.to_string())?;
    if state.group() != origin.group() {
        return Err("stabilizer group not restored".into());
    }
    state.apply_pauli(&schedule.pauli_fixup);
    extract_logical_action(&code.logicals, &state.logicals, &origin.group()).map_err(|e| e.to_string())
}

fn outcome_string(outcomes: &[bool]) -> String {
    outcomes.iter().map(|&m| if m { '-' } else { '+' }).collect()
}

pub fn simulate(args: &SimulateArgs) -> Result<Output, UsageError> {
    let (code, label) = resolve_stabilizer(args.code)?;
    let bytes = fs::read(args.schedule).map_err(|e| usage(format!("{}: {e}", args.schedule.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| usage(format!("{}: {e}", args.schedule.display())))?;
    let schedule = parse_schedule(&text).map_err(|e| usage(format!("{}: {e}", args.schedule.display())))?;
    let expected = match args.expect {
        Some(p) => parse_program(p, code.k())
            .map_err(|e| usage(format!("--expect: {e}")))?
            .action(),
        None => schedule.claimed_action.clone(),
    };
    if args.oracle && code.n > MAX_QUBITS {
        return Err(usage(format!(
            "the dense oracle handles at most {MAX_QUBITS} qubits, code has {}",
            code.n
        )));
    }

    let mut report = Report::new("simulate");
    report.input("code", &label, code.content_hash());
    report.input("schedule", &args.schedule.display().to_string(), sha256_hex(&bytes));

    let options = VerifyOptions {
        branches: args.branches == Some(Branches::All),
        check_audit: true,
    };
    let verdict = match report.timed("tableau", || verify_schedule(&code, &schedule, &expected, &options)) {
        Ok(v) => v,
        Err(
            e @ (VerifyError::HashMismatch { .. } | VerifyError::QubitMismatch { .. } | VerifyError::Dimension { .. }),
        ) => return Err(usage(e.to_string())),
    };
    report.verdict("tableau", verdict.passed(), verdict_detail(&verdict, &schedule));
    if options.branches {
        report.verdict(
            "branches",
            verdict.passed(),
            format!("{} outcome branch(es) across all rewirings", verdict.branches_checked),
        );
    }

    // Outcome vectors for sampling, seeded from the schedule file.
    let seed = u64::from_str_radix(&sha256_hex(&bytes)[..16], 16).expect("hex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Vec<bool>> = match args.branches {
        Some(Branches::Sample(count)) => (0..count)
            .map(|_| (0..schedule.steps.len()).map(|_| rng.gen()).collect())
            .collect(),
        _ => Vec::new(),
    };
    if !samples.is_empty() {
        let mut failure = None;
        report.timed("sampled branches", || {
            for outcomes in &samples {
                match branch_action(&code, &schedule, outcomes) {
                    Ok(a) if a == expected => {}
                    Ok(a) => {
                        failure = Some(format!("branch {} gives {a}", outcome_string(outcomes)));
                        break;
                    }
                    Err(e) => {
                        failure = Some(format!("branch {}: {e}", outcome_string(outcomes)));
                        break;
                    }
                }
            }
        });
        match failure {
            None => report.verdict(
                "sampled branches",
                true,
                format!("{} sampled branch(es) agree", samples.len()),
            ),
            Some(f) => report.verdict("sampled branches", false, f),
        }
    }

    if args.oracle {
        let tableau = verdict.action.clone();
        let (detail, passed) = report.timed("oracle", || {
            oracle_verdict(&code, &schedule, &expected, tableau.as_ref(), &samples)
        });
        report.verdict("oracle", passed, detail);
        let closed = report.timed("closed form", || oracle::check_closed_form(&code, &schedule, |_| false));
        match closed {
            Ok(dev) => report.verdict(
                "closed form",
                true,
                format!("per-rewiring (I + g·g_c)/√2 products agree, deviation {dev:.1e}"),
            ),
            Err(e) => report.verdict("closed form", false, e.to_string()),
        }
    }
    Ok(Output::Report(report))
}

fn oracle_verdict(
    code: &StabilizerCode,
    schedule: &Schedule,
    expected: &LogicalAction,
    tableau: Option<&LogicalAction>,
    samples: &[Vec<bool>],
) -> (String, bool) {
    let action = match oracle::oracle_action(code, schedule, |_| false) {
        Ok(a) => a,
        Err(e) => return (e.to_string(), false),
    };
    if &action != expected {
        return (
            format!("oracle action {action} differs from expected {expected}"),
            false,
        );
    }
    if let Some(t) = tableau {
        if t != &action {
            return (format!("oracle action {action} differs from tableau action {t}"), false);
        }
    }
    for outcomes in samples {
        match oracle::oracle_action(code, schedule, |i| outcomes[i]) {
            Ok(a) if &a == expected => {}
            Ok(a) => {
                return (
                    format!("branch {} gives {a} in the dense simulation", outcome_string(outcomes)),
                    false,
                )
            }
            Err(e) => return (format!("branch {}: {e}", outcome_string(outcomes)), false),
        }
    }
    let agreement = match tableau {
        Some(_) => "oracle and tableau agree",
        None => "oracle agrees",
    };
    (
        format!("{agreement}: {action} ({} dense trial(s))", 1 + samples.len()),
        true,
    )
}

pub fn distance(code: &str, max_weight: usize) -> Result<Output, UsageError> {
    let r = resolve_code(code, true)?;
    let base = r.code.base();
    let excluded: Vec<PauliOperator> = match &r.code {
        Code::Stabilizer(_) => Vec::new(),
        Code::Subsystem(s) => s.gauge_pairs.iter().flat_map(|p| [p.x.clone(), p.z.clone()]).collect(),
    };
    let mut report = Report::new("distance");
    report.input("code", &r.label, base.content_hash());
    let threads = thread_count();
    let (d, witness) = report.timed("distance", || {
        distance_with_witness(base.n, &base.generators, &excluded, max_weight, threads)
    });
    let kind = if excluded.is_empty() {
        "distance"
    } else {
        "dressed distance"
    };
    let detail = match (d, witness) {
        (Distance::Exact(_), Some(w)) => format!("{d} (witness {w})"),
        _ => format!("{d} (nothing found up to weight {})", max_weight.min(base.n)),
    };
    report.verdict(kind, true, detail);
    Ok(Output::Report(report))
}
