//! Command implementations for `measalg`.
//!
//! Every command returns an [`Outcome`]: the text for standard output and an
//! exit code. Exit codes are `0` when the checked property holds, `1` when
//! it fails (a witness is always printed) and `2` for usage or input errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use measure_algebra::algebra::{AtomSpace, Element};
use measure_algebra::certifier::{
    certify_fragmentation, certify_level, replay_proof, LevelCertificate, ProofTrace, TraceOutcome,
};
use measure_algebra::error::Error;
use measure_algebra::expander::{
    build_expander, choice_function, verify_expansion, ExpanderFamily,
};
use measure_algebra::fragmentation::{
    check_fragmentation, check_graded, from_measure, from_submeasure, max_antichain, Fragmentation,
    FragmentationViolation,
};
use measure_algebra::generate::{
    pair_incidence, random_collection, random_measure, random_submeasure, DEFAULT_WEIGHT_CAP,
};
use measure_algebra::intersection::{intersection_number, intersection_number_bruteforce};
use measure_algebra::kelley::{measure_eval, Measure};
use measure_algebra::rational::{self, Rational};
use measure_algebra::records::InstanceFile;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "measalg",
    version,
    about = "Exact measure-existence checks on finite Boolean algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact intersection number of a collection and its dual measure.
    Kappa {
        #[arg(long)]
        input: PathBuf,
        /// Also run the brute-force oracle over sequences up to this length.
        #[arg(long, value_name = "MAXLEN")]
        brute: Option<usize>,
    },
    /// Certify the level bounds of a graded fragmentation.
    Certify(CertifyArgs),
    /// Print a seeded random instance file.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 4)]
        atoms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated key=value pairs, e.g. `m=20,p=30,k=3`.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Check the fragmentation axioms and gradedness.
    CheckFrag {
        #[arg(long)]
        input: PathBuf,
    },
    /// Largest antichain of each level (or one level).
    Antichain {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Verify expansion and choice functions of a three-point family.
    KrVerify {
        /// Instance file with an expander; otherwise one is built from --params.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "m=20,p=30,k=3")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the measure axioms, or synthesize a measure from a collection.
    Measure {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, conflicts_with = "all")]
    pub level: Option<usize>,
    /// Certify every level and combine the level measures (the default).
    #[arg(long)]
    pub all: bool,
    /// Replay the counting argument and include the proof trace.
    #[arg(long)]
    pub trace: bool,
    /// Seed for the expander used by the trace.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Measure,
    Submeasure,
    Fragmentation,
    Collection,
    Expander,
    PairIncidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
struct RunReport {
    command: &'static str,
    input_sha256: Option<String>,
    verdict: &'static str,
    witnesses: Value,
    values: Value,
    wall_time_ms: f64,
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure(EXIT_INPUT, msg.into())
}

struct Input {
    file: InstanceFile,
    digest: String,
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let file: InstanceFile = serde_json::from_slice(&bytes)
        .map_err(|e| input_error(format!("malformed instance file: {e}")))?;
    Ok(Input {
        file,
        digest: hex::encode(Sha256::digest(&bytes)),
    })
}

fn q(r: &Rational) -> String {
    rational::to_string(r)
}

fn qs(rs: &[Rational]) -> Value {
    rs.iter().map(q).collect()
}

fn el(e: &Element) -> Value {
    json!(e.to_atoms())
}

fn report(
    command: &'static str,
    digest: Option<String>,
    holds: bool,
    witnesses: Value,
    values: Value,
    start: Instant,
) -> Outcome {
    let r = RunReport {
        command,
        input_sha256: digest,
        verdict: if holds { "holds" } else { "fails" },
        witnesses,
        values,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Outcome {
        code: if holds { EXIT_HOLDS } else { EXIT_FAILS },
        stdout: serde_json::to_string_pretty(&r).expect("serializable") + "\n",
        stderr: String::new(),
    }
}

pub fn run(cli: Cli) -> Outcome {
    let start = Instant::now();
    let result = match cli.command {
        Command::Kappa { input, brute } => kappa(&input, brute, start),
        Command::Certify(args) => certify(&args, start),
        Command::Gen {
            kind,
            atoms,
            seed,
            params,
        } => gen(kind, atoms, seed, &params),
        Command::CheckFrag { input } => check_frag(&input, start),
        Command::Antichain { input, level } => antichain(&input, level, start),
        Command::KrVerify {
            input,
            params,
            seed,
        } => kr_verify(input.as_deref(), &params, seed, start),
        Command::Measure { input } => measure(&input, start),
    };
    result.unwrap_or_else(|Failure(code, msg)| Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    })
}

fn kappa(path: &Path, brute: Option<usize>, start: Instant) -> Result<Outcome, Failure> {
    let input = read_input(path)?;
    let c = input
        .file
        .collection()?
        .ok_or_else(|| input_error("instance file has no collection"))?;
    if c.is_empty() {
        return Err(input_error("collection must not be empty"));
    }
    let g = intersection_number(&c)?;
    let mut values = json!({
        "kappa": q(&g.value),
        "measure": qs(&g.atom_weights),
        "member_weights": qs(&g.member_weights),
    });
    let mut holds = true;
    if let Some(len) = brute {
        let b = intersection_number_bruteforce(&c, len)?;
        // sequences longer than the bound can only push the minimum down
        let agrees = if len >= usize::try_from(g.value.denom()).unwrap_or(usize::MAX) {
            b == g.value
        } else {
            b >= g.value
        };
        holds = agrees;
        values["brute"] = json!({ "max_len": len, "value": q(&b), "agrees": agrees });
    }
    Ok(report(
        "kappa",
        Some(input.digest),
        holds,
        json!({}),
        values,
        start,
    ))
}

enum Source {
    Fragmentation,
    Measure,
    Submeasure,
}

fn load_fragmentation(file: &InstanceFile) -> Result<(Fragmentation, Source), Failure> {
    if let Some(f) = file.fragmentation()? {
        return Ok((f, Source::Fragmentation));
    }
    if let Some(phi) = file.submeasure()? {
        return Ok((from_submeasure(&phi)?, Source::Submeasure));
    }
    if let Some(m) = file.measure()? {
        return Ok((from_measure(&m)?, Source::Measure));
    }
    Err(input_error(
        "instance file has no fragmentation, measure or submeasure",
    ))
}

fn level_json(c: &LevelCertificate) -> Value {
    json!({
        "level": c.level,
        "kappa": q(&c.kappa),
        "antichain_n_plus_2": c.antichain,
        "antichain_n_plus_1": c.antichain_next,
        "bound": q(&c.bound),
        "measure": qs(c.measure.weights()),
        "extended_levels": c.extended_levels,
    })
}

fn trace_json(t: &ProofTrace) -> Value {
    let outcome = match &t.outcome {
        TraceOutcome::LargeIntersection => json!("large intersection"),
        TraceOutcome::NotGraded(stage) => json!({
            "not_graded": {
                "expander": { "m": stage.expander.m(), "p": stage.expander.p(), "k": stage.expander.k(), "sets": stage.expander.sets() },
                "pieces": stage.pieces.iter().map(|row| row.iter().map(el).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "max_column_hits": stage.max_column_hits,
                "culprit": stage.culprit,
                "failure": {
                    "level": stage.failure.level,
                    "whole": el(&stage.failure.whole),
                    "part": el(&stage.failure.part),
                    "rest": el(&stage.failure.rest()),
                },
            }
        }),
    };
    json!({
        "level": t.level,
        "parameters": { "K": t.parameters.antichain, "m": t.parameters.length, "k": t.parameters.k, "p": t.parameters.p },
        "extended_levels": t.extended_levels,
        "witness": {
            "indices": t.witness.indices,
            "atom": t.witness.atom,
            "ratio": q(&t.witness.ratio),
            "meets_bound": t.witness.meets_bound,
        },
        "cells": t.partition.cells.iter().map(|c| json!({ "signature": c.signature, "atoms": el(&c.atoms) })).collect::<Vec<_>>(),
        "outcome": outcome,
    })
}

/// Minimal members of level `n`, repeated cyclically to length
/// `max(100 K², count)` with `K = K_{n+2}`.
fn trace_sequence(f: &Fragmentation, level: usize) -> Result<Vec<Element>, Failure> {
    let (ext, _) = f.extended_to(level + 2);
    let k = max_antichain(&ext, level + 2)?.size;
    let pool = ext.level(level).minimal_elements();
    if pool.is_empty() {
        return Err(input_error(format!("level {level} is empty")));
    }
    let len = (100 * k * k).max(pool.len());
    Ok(pool.iter().cycle().take(len).cloned().collect())
}

fn failure_witness(e: &Error) -> Option<Value> {
    match e {
        Error::NotGraded { level, whole, part } => Some(json!({
            "step": "gradedness",
            "level": level,
            "whole": whole,
            "part": part,
            "rest": whole.iter().filter(|x| !part.contains(x)).collect::<Vec<_>>(),
        })),
        Error::Certification {
            level,
            kappa,
            bound,
        } => Some(json!({
            "step": "bound",
            "level": level,
            "kappa": kappa,
            "bound": bound,
        })),
        Error::InternalContradiction(msg) => Some(json!({ "step": "replay", "message": msg })),
        _ => None,
    }
}

fn certify(args: &CertifyArgs, start: Instant) -> Result<Outcome, Failure> {
    let input = read_input(&args.input)?;
    let (f, source) = load_fragmentation(&input.file)?;
    let source = match source {
        Source::Fragmentation => "fragmentation",
        Source::Measure => "measure thresholds",
        Source::Submeasure => "submeasure thresholds",
    };
    if let Some(n) = args.level {
        if n == 0 || n > f.depth() {
            return Err(input_error(format!(
                "level {n} does not exist (depth {})",
                f.depth()
            )));
        }
    }
    let levels: Vec<usize> = match args.level {
        Some(n) => vec![n],
        None => (1..=f.depth()).collect(),
    };
    let fails = |witness: Value, values: Value| {
        report(
            "certify",
            Some(input.digest.clone()),
            false,
            witness,
            values,
            start,
        )
    };

    let mut traces = Vec::new();
    if args.trace {
        for &n in &levels {
            let seq = trace_sequence(&f, n)?;
            let t = match replay_proof(&f, n, &seq, args.seed) {
                Ok(t) => t,
                Err(e) => match failure_witness(&e) {
                    Some(w) => return Ok(fails(w, json!({ "source": source }))),
                    None => return Err(e.into()),
                },
            };
            let failed = match &t.outcome {
                TraceOutcome::NotGraded(stage) => Some(json!({
                    "step": "gradedness (piece stage)",
                    "level": stage.failure.level,
                    "whole": el(&stage.failure.whole),
                    "part": el(&stage.failure.part),
                    "rest": el(&stage.failure.rest()),
                    "culprit": stage.culprit,
                })),
                TraceOutcome::LargeIntersection => None,
            };
            traces.push(trace_json(&t));
            if let Some(w) = failed {
                return Ok(fails(w, json!({ "source": source, "traces": traces })));
            }
        }
    }

    let result = match args.level {
        Some(n) => certify_level(&f, n).map(|c| (vec![c], None)),
        None => certify_fragmentation(&f).map(|c| (c.levels, Some(c.measure))),
    };
    let (certs, combined) = match result {
        Ok(ok) => ok,
        Err(e) => match failure_witness(&e) {
            Some(w) => return Ok(fails(w, json!({ "source": source, "traces": traces }))),
            None => return Err(e.into()),
        },
    };
    let mut values = json!({
        "source": source,
        "depth": f.depth(),
        "levels": certs.iter().map(level_json).collect::<Vec<_>>(),
    });
    if let Some(m) = combined {
        values["measure"] = qs(m.weights());
    }
    if args.trace {
        values["traces"] = json!(traces);
    }
    let witnesses = json!(certs
        .iter()
        .map(|c| json!({ "level": c.level, "kappa": q(&c.kappa), "bound": q(&c.bound) }))
        .collect::<Vec<_>>());
    Ok(report(
        "certify",
        Some(input.digest),
        true,
        witnesses,
        values,
        start,
    ))
}

fn parse_params(text: &str) -> Result<BTreeMap<String, String>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| input_error(format!("parameter {kv:?} is not key=value")))
        })
        .collect()
}

fn param<T: std::str::FromStr>(
    p: &BTreeMap<String, String>,
    key: &str,
    default: Option<T>,
) -> Result<T, Failure> {
    match p.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| input_error(format!("parameter {key}={v} is invalid"))),
        None => default.ok_or_else(|| input_error(format!("missing parameter {key}"))),
    }
}

const GEN_ATOM_CAP: usize = 16;

fn gen(kind: Kind, atoms: usize, seed: u64, params: &str) -> Result<Outcome, Failure> {
    let p = parse_params(params)?;
    let known: &[&str] = match kind {
        Kind::Measure | Kind::Submeasure => &["cap"],
        Kind::Fragmentation => &["cap", "source"],
        Kind::Collection => &["size"],
        Kind::Expander => &["m", "p", "k"],
        Kind::PairIncidence => &["points"],
    };
    if let Some(k) = p.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(input_error(format!("unknown parameter {k} for this kind")));
    }
    if atoms == 0 || (atoms > GEN_ATOM_CAP && kind != Kind::Collection) {
        return Err(input_error(format!(
            "--atoms must be in 1..={GEN_ATOM_CAP}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap: u32 = param(&p, "cap", Some(DEFAULT_WEIGHT_CAP))?;
    let space = AtomSpace::new(atoms)?;
    let file = match kind {
        Kind::Measure => {
            InstanceFile::new(atoms).with_measure(&random_measure(space, cap, &mut rng)?)
        }
        Kind::Submeasure => {
            InstanceFile::new(atoms).with_submeasure(&random_submeasure(space, cap, &mut rng)?)
        }
        Kind::Fragmentation => match param(&p, "source", Some("measure".to_string()))?.as_str() {
            "measure" => {
                let m = random_measure(space, cap, &mut rng)?;
                InstanceFile::new(atoms)
                    .with_measure(&m)
                    .with_fragmentation(&from_measure(&m)?)
            }
            "submeasure" => {
                let phi = random_submeasure(space, cap, &mut rng)?;
                InstanceFile::new(atoms)
                    .with_submeasure(&phi)
                    .with_fragmentation(&from_submeasure(&phi)?)
            }
            other => {
                return Err(input_error(format!(
                    "source must be measure or submeasure, got {other}"
                )))
            }
        },
        Kind::Collection => {
            let size: usize = param(&p, "size", Some(4))?;
            InstanceFile::new(atoms).with_collection(&random_collection(space, size, &mut rng)?)
        }
        Kind::Expander => {
            let m: usize = param(&p, "m", None)?;
            let pp: usize = param(&p, "p", None)?;
            let k: usize = param(&p, "k", None)?;
            InstanceFile::new(atoms).with_expander(&build_expander(m, pp, k, seed)?)
        }
        Kind::PairIncidence => {
            let points: usize = param(&p, "points", Some(100))?;
            let (f, _) = pair_incidence(points)?;
            InstanceFile::new(f.space().atom_count()).with_fragmentation(&f)
        }
    };
    Ok(Outcome {
        code: EXIT_HOLDS,
        stdout: serde_json::to_string_pretty(&file).expect("serializable") + "\n",
        stderr: String::new(),
    })
}

fn violation_json(v: &FragmentationViolation) -> Value {
    match v {
        FragmentationViolation::ZeroMember { level } => {
            json!({ "kind": "zero member", "level": level })
        }
        FragmentationViolation::NotUpwardClosed {
            level,
            element,
            atom,
        } => {
            json!({ "kind": "not upward closed", "level": level, "element": el(element), "missing_superset_adds": atom })
        }
        FragmentationViolation::NotNested { level, element } => {
            json!({ "kind": "not nested", "level": level, "element": el(element) })
        }
        FragmentationViolation::NotCovering { atom } => {
            json!({ "kind": "not covering", "atom": atom })
        }
    }
}

fn check_frag(path: &Path, start: Instant) -> Result<Outcome, Failure> {
    let input = read_input(path)?;
    let (f, _) = load_fragmentation(&input.file)?;
    let values = json!({ "depth": f.depth() });
    if let Err(v) = check_fragmentation(&f) {
        return Ok(report(
            "check-frag",
            Some(input.digest),
            false,
            violation_json(&v),
            values,
            start,
        ));
    }
    match check_graded(&f)? {
        Some(v) => {
            let w = json!({
                "kind": "not graded",
                "level": v.level,
                "whole": el(&v.whole),
                "part": el(&v.part),
                "rest": el(&v.rest()),
            });
            Ok(report(
                "check-frag",
                Some(input.digest),
                false,
                w,
                values,
                start,
            ))
        }
        None => Ok(report(
            "check-frag",
            Some(input.digest),
            true,
            json!({}),
            values,
            start,
        )),
    }
}

fn antichain(path: &Path, level: Option<usize>, start: Instant) -> Result<Outcome, Failure> {
    let input = read_input(path)?;
    let (f, _) = load_fragmentation(&input.file)?;
    check_fragmentation(&f).map_err(|v| input_error(format!("not a fragmentation: {v:?}")))?;
    let levels: Vec<usize> = match level {
        Some(n) if n == 0 || n > f.depth() => {
            return Err(input_error(format!("level {n} does not exist")))
        }
        Some(n) => vec![n],
        None => (1..=f.depth()).collect(),
    };
    let mut witnesses = Vec::new();
    let mut values = Vec::new();
    for n in levels {
        let r = max_antichain(&f, n)?;
        values.push(json!({ "level": n, "K": r.size, "dyadic_bound_holds": (r.size as u128) <= 1u128 << n.min(127) }));
        witnesses
            .push(json!({ "level": n, "antichain": r.witness.iter().map(el).collect::<Vec<_>>() }));
    }
    Ok(report(
        "antichain",
        Some(input.digest),
        true,
        json!(witnesses),
        json!(values),
        start,
    ))
}

fn kr_verify(
    path: Option<&Path>,
    params: &str,
    seed: u64,
    start: Instant,
) -> Result<Outcome, Failure> {
    let (family, digest): (ExpanderFamily, Option<String>) = match path {
        Some(path) => {
            let input = read_input(path)?;
            let f = input
                .file
                .expander()?
                .ok_or_else(|| input_error("instance file has no expander"))?;
            (f, Some(input.digest))
        }
        None => {
            let p = parse_params(params)?;
            let (m, pp, k) = (
                param(&p, "m", None)?,
                param(&p, "p", None)?,
                param(&p, "k", None)?,
            );
            (build_expander(m, pp, k, seed)?, None)
        }
    };
    let r = verify_expansion(&family)?;
    let values = json!({
        "m": family.m(), "p": family.p(), "k": family.k(),
        "examined": r.examined,
        "covered": r.covered.to_string(),
    });
    if let Some(bad) = &r.violation {
        let mut union: Vec<usize> = bad.iter().flat_map(|&i| family.set(i)).collect();
        union.sort();
        union.dedup();
        let w = json!({ "index_set": bad, "union": union });
        return Ok(report("kr-verify", digest, false, w, values, start));
    }
    // choice functions for every index set of size <= min(k, 3)
    let limit = family.k().min(3);
    let mut checked = 0u64;
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0usize;
    loop {
        if next < family.m() && stack.len() < limit {
            stack.push(next);
            next += 1;
            if let Err(e) = choice_function(&family, &stack) {
                let w = json!({ "index_set": stack, "error": e.to_string() });
                return Ok(report("kr-verify", digest, false, w, values, start));
            }
            checked += 1;
        } else {
            match stack.pop() {
                Some(last) => next = last + 1,
                None => break,
            }
        }
    }
    let mut values = values;
    values["choice_functions"] = json!(checked);
    Ok(report("kr-verify", digest, true, json!({}), values, start))
}

/// With a measure in the file, checks the measure axioms. Otherwise
/// synthesizes the dual measure of the collection and checks that it gives
/// every member at least the intersection number.
fn measure(path: &Path, start: Instant) -> Result<Outcome, Failure> {
    let input = read_input(path)?;
    let file = &input.file;
    let collection = file.collection()?;
    let given = file.measure()?;
    let least = |m: &Measure| -> Result<Option<(usize, Rational)>, Failure> {
        let Some(c) = &collection else {
            return Ok(None);
        };
        let mut best: Option<(usize, Rational)> = None;
        for (i, e) in c.members().iter().enumerate() {
            let v = measure_eval(m, e)?;
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((i, v));
            }
        }
        Ok(best)
    };
    match given {
        Some(m) => {
            let mut values = json!({ "measure": qs(m.weights()) });
            if let Some((i, v)) = least(&m)? {
                values["least_member"] = json!({ "index": i, "measure": q(&v) });
            }
            match m.check_axioms() {
                Ok(()) => Ok(report(
                    "measure",
                    Some(input.digest),
                    true,
                    json!({}),
                    values,
                    start,
                )),
                Err(Error::Contract(msg)) => Ok(report(
                    "measure",
                    Some(input.digest),
                    false,
                    json!({ "axiom": msg }),
                    values,
                    start,
                )),
                Err(e) => Err(e.into()),
            }
        }
        None => {
            let c = collection
                .as_ref()
                .ok_or_else(|| input_error("instance file has no measure or collection"))?;
            let (m, kappa) = measure_algebra::kelley::measure_from_collection(c)?;
            let (i, v) = least(&m)?.ok_or_else(|| input_error("collection must not be empty"))?;
            let values = json!({
                "measure": qs(m.weights()),
                "kappa": q(&kappa),
                "strictly_positive": m.is_strictly_positive(),
                "least_member": { "index": i, "measure": q(&v) },
            });
            let holds = v >= kappa;
            let witness = if holds {
                json!({})
            } else {
                json!({ "member": i, "measure": q(&v) })
            };
            Ok(report(
                "measure",
                Some(input.digest),
                holds,
                witness,
                values,
                start,
            ))
        }
    }
}
