//! Command runner behind the `presentcert` binary.
//!
//! Every command yields an [`Outcome`]: an exit code and one canonical JSON
//! report (keys sorted, weight lists sorted), so equal inputs give
//! byte-identical output.
//!
//! Exit codes: `0` certified / verified / computed / outer, `1` not
//! established / not verified / inner, `2` input error.

mod spec;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use spec::{parse_spec, SpecError, SpecFile};

use crate::abelscheck::{self, Condition, ConditionReport};
use crate::arithgrp::{cohopf_embed, is_inner, verify_nonhopf, Coset, GammaElement, ZMatrix};
use crate::homology::{h2_dims, ungraded};
use crate::nilpotent::{build_u, BlockPattern};
use crate::torus::{is_zero_mod_p, weight_table, Weight, WeightLattice};

pub const TOOL_NAME: &str = "presentcert";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default number of random pairs for the randomized group checks.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    Homology,
    Weights,
    Check,
    Nonhopf,
    Outer,
    Cohopf,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Homology, Command::Weights, Command::Check, Command::Nonhopf, Command::Outer, Command::Cohopf];

    /// Whether the command reads a group spec file.
    pub fn needs_spec(self) -> bool {
        !matches!(self, Command::Outer | Command::Cohopf)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Homology => "homology",
            Command::Weights => "weights",
            Command::Check => "check",
            Command::Nonhopf => "nonhopf",
            Command::Outer => "outer",
            Command::Cohopf => "cohopf",
        })
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Command, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| format!("unknown command `{s}` (expected homology, weights, check, nonhopf, outer or cohopf)"))
    }
}

/// Command-line options shared by all commands.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    /// Overrides the spec file's prime.
    pub prime: Option<u64>,
    pub ungraded: bool,
    pub seed: u64,
    pub samples: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<i64>,
    /// Row-major entries of `g` for `outer`.
    pub g: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    NotEstablished,
    Verified,
    NotVerified,
    Computed,
    Outer,
    Inner,
    InputError,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Certified | Verdict::Verified | Verdict::Computed | Verdict::Outer => 0,
            Verdict::NotEstablished | Verdict::NotVerified | Verdict::Inner => 1,
            Verdict::InputError => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::NotEstablished => "not_established",
            Verdict::Verified => "verified",
            Verdict::NotVerified => "not_verified",
            Verdict::Computed => "computed",
            Verdict::Outer => "outer",
            Verdict::Inner => "inner",
            Verdict::InputError => "input_error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub report: Value,
    /// One-line human summary.
    pub summary: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    /// Canonical JSON text with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// An input problem, reported with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub message: String,
    /// `(line, column)` for spec file errors.
    pub location: Option<(usize, usize)>,
}

impl From<SpecError> for InputError {
    fn from(e: SpecError) -> InputError {
        InputError { message: e.message, location: Some((e.line, e.column)) }
    }
}

fn input_error(message: impl Into<String>) -> InputError {
    InputError { message: message.into(), location: None }
}

fn envelope(command: &str, input: Value, result: Value, verdict: Verdict) -> Value {
    json!({
        "tool": { "name": TOOL_NAME, "version": TOOL_VERSION },
        "command": command,
        "input": input,
        "result": result,
        "verdict": verdict.as_str(),
    })
}

fn error_outcome(command: &str, input: Value, e: &InputError) -> Outcome {
    let location = e.location.map(|(l, c)| json!({ "line": l, "column": c }));
    let result = json!({ "error": { "message": e.message, "location": location } });
    let summary = match e.location {
        Some((l, c)) => format!("{command}: input error at line {l}, column {c}: {}", e.message),
        None => format!("{command}: input error: {}", e.message),
    };
    Outcome { verdict: Verdict::InputError, report: envelope(command, input, result, Verdict::InputError), summary }
}

/// An exit-code-2 report for a problem found before `execute`, such as an
/// unreadable spec file.
pub fn input_failure(command: &str, message: impl Into<String>) -> Outcome {
    error_outcome(command, Value::Null, &input_error(message))
}

/// Parses `spec_text` (if any) and runs `command`. Never panics on bad input:
/// every input problem becomes an exit-code-2 report.
pub fn execute(command: &str, spec_text: Option<&str>, flags: &Flags) -> Outcome {
    let cmd = match Command::from_str(command) {
        Ok(c) => c,
        Err(msg) => return error_outcome(command, Value::Null, &input_error(msg)),
    };
    let spec = match (cmd.needs_spec(), spec_text) {
        (false, _) => None,
        (true, None) => {
            return error_outcome(command, Value::Null, &input_error(format!("`{cmd}` needs a spec file")));
        }
        (true, Some(text)) => match parse_spec(text) {
            Ok(s) => Some(s),
            Err(e) => return error_outcome(command, Value::Null, &e.into()),
        },
    };
    run(cmd, spec.as_ref(), flags)
}

/// Runs an already parsed command.
pub fn run(command: Command, spec: Option<&SpecFile>, flags: &Flags) -> Outcome {
    let input = input_echo(command, spec, flags);
    let name = command.to_string();
    let result = match command {
        Command::Homology => with_pattern(spec, flags).map(|p| homology(&p, flags.ungraded)),
        Command::Weights => with_pattern(spec, flags).map(|p| weights(&p)),
        Command::Check => with_pattern(spec, flags).map(|p| check(&p)),
        Command::Nonhopf => with_pattern(spec, flags).and_then(|p| nonhopf(&p, flags)),
        Command::Outer => outer(flags),
        Command::Cohopf => cohopf(flags),
    };
    match result {
        Ok((verdict, payload, summary)) => {
            Outcome { verdict, report: envelope(&name, input, payload, verdict), summary: format!("{name}: {summary}") }
        }
        Err(e) => error_outcome(&name, input, &e),
    }
}

fn input_echo(command: Command, spec: Option<&SpecFile>, flags: &Flags) -> Value {
    let mut m = BTreeMap::new();
    if let Some(s) = spec {
        let pattern = s.to_pattern().ok();
        let kinds: Option<Vec<String>> = pattern.as_ref().map(|p| p.kinds().iter().map(|k| k.to_string()).collect());
        m.insert("blocks", json!(s.blocks));
        m.insert("kinds", json!(kinds));
        m.insert("prime", json!(flags.prime.or(s.prime)));
    }
    match command {
        Command::Homology => {
            m.insert("ungraded", json!(flags.ungraded));
        }
        Command::Nonhopf => {
            m.insert("seed", json!(flags.seed));
            m.insert("samples", json!(flags.samples.unwrap_or(DEFAULT_SAMPLES)));
        }
        Command::Outer => {
            m.insert("n", json!(flags.n));
            m.insert("m", json!(flags.m));
            m.insert("g", json!(flags.g));
        }
        Command::Cohopf => {
            m.insert("n", json!(flags.n));
            m.insert("m", json!(flags.m));
            m.insert("k", json!(flags.k));
            m.insert("seed", json!(flags.seed));
            m.insert("samples", json!(flags.samples.unwrap_or(DEFAULT_SAMPLES)));
        }
        Command::Weights | Command::Check => {}
    }
    json!(m)
}

fn with_pattern(spec: Option<&SpecFile>, flags: &Flags) -> Result<BlockPattern, InputError> {
    let spec = spec.ok_or_else(|| input_error("missing spec file"))?;
    let mut s = spec.clone();
    if flags.prime.is_some() {
        s.prime = flags.prime;
    }
    s.to_pattern().map_err(|e| input_error(e.to_string()))
}

type CommandResult = Result<(Verdict, Value, String), InputError>;

fn weight_json(w: &Weight, lat: &WeightLattice) -> Value {
    json!({ "weight": w.coords(), "mod_P_zero": is_zero_mod_p(w, lat) })
}

/// Distinct weights with multiplicities, sorted by weight.
fn weight_multiset(ws: &[Weight], lat: &WeightLattice) -> Value {
    let mut counts: BTreeMap<&Weight, usize> = BTreeMap::new();
    for w in ws {
        *counts.entry(w).or_default() += 1;
    }
    Value::Array(
        counts
            .into_iter()
            .map(|(w, k)| {
                let mut v = weight_json(w, lat);
                v["multiplicity"] = json!(k);
                v
            })
            .collect(),
    )
}

fn homology(p: &BlockPattern, use_ungraded: bool) -> (Verdict, Value, String) {
    let u = build_u(p);
    let lat = WeightLattice::for_pattern(p);
    if use_ungraded {
        let d = ungraded(&u);
        let payload = json!({
            "mode": "ungraded",
            "dim_u": d.dim_u,
            "dim_wedge2": d.dim_wedge2,
            "dim_wedge3": d.dim_wedge3,
            "rank_d2": d.rank_d2,
            "rank_d3": d.rank_d3,
            "dim_ker_d2": d.dim_ker_d2,
            "h1_dim": d.h1,
            "h2_dim": d.h2,
        });
        return (Verdict::Computed, payload, format!("{p}: dim H1 = {}, dim H2 = {} (ungraded)", d.h1, d.h2));
    }
    let r = h2_dims(&u);
    let per_weight: Vec<Value> = r
        .per_weight
        .iter()
        .map(|(w, s)| {
            let mut v = weight_json(w, &lat);
            for (k, x) in [
                ("dim_u", s.dim_u),
                ("dim_wedge2", s.dim_wedge2),
                ("dim_wedge3", s.dim_wedge3),
                ("rank_d2", s.rank_d2),
                ("rank_d3", s.rank_d3),
                ("h1", s.h1),
                ("h2", s.h2),
            ] {
                v[k] = json!(x);
            }
            v
        })
        .collect();
    let payload = json!({
        "mode": "graded",
        "dim_u": u.dim(),
        "h1_dim": r.h1_dim,
        "h2_dim": r.h2_dim,
        "h1_weights": weight_multiset(&r.h1_weights, &lat),
        "h2_weights": weight_multiset(&r.h2_weights, &lat),
        "per_weight": per_weight,
        "coordinates": (0..lat.d()).map(|c| lat.coordinate_label(c)).collect::<Vec<_>>(),
    });
    (Verdict::Computed, payload, format!("{p}: dim H1 = {}, dim H2 = {}", r.h1_dim, r.h2_dim))
}

fn weights(p: &BlockPattern) -> (Verdict, Value, String) {
    let u = build_u(p);
    let lat = WeightLattice::for_pattern(p);
    let table = weight_table(&u);
    let basis: Vec<Value> = u
        .basis()
        .iter()
        .zip(&table)
        .enumerate()
        .map(|(i, (e, w))| {
            let mut v = weight_json(w, &lat);
            v["index"] = json!(i);
            v["block"] = json!([e.i_block, e.j_block]);
            v["row"] = json!(e.row);
            v["col"] = json!(e.col);
            v
        })
        .collect();
    let payload = json!({
        "dim_u": u.dim(),
        "coordinates": (0..lat.d()).map(|c| lat.coordinate_label(c)).collect::<Vec<_>>(),
        "p_basis": lat.p_basis(),
        "basis": basis,
    });
    (Verdict::Computed, payload, format!("{p}: {} basis vectors in {} weight coordinates", u.dim(), lat.d()))
}

fn condition_json(r: &ConditionReport, lat: &WeightLattice) -> Value {
    let pair = r.cond_iii.offending_pair.as_ref().map(|(a, b)| json!([weight_json(a, lat), weight_json(b, lat)]));
    json!({
        "i": { "passes": true, "status": "holds_by_construction" },
        "ii": { "passes": r.passes(Condition::NoRankOneQuotient), "offending_blocks": r.cond_ii.offending_blocks },
        "iii": {
            "passes": r.passes(Condition::H1Segments),
            "h1_weights": r.cond_iii.weights.iter().map(|w| weight_json(w, lat)).collect::<Vec<_>>(),
            "offending_pair": pair,
        },
        "iv": {
            "passes": r.passes(Condition::H2ZeroWeight),
            "form": "strong",
            "h2_weights": r.cond_iv.weights.iter().map(|w| weight_json(w, lat)).collect::<Vec<_>>(),
            "offending_weight": r.cond_iv.offending_weight.as_ref().map(|w| weight_json(w, lat)),
            "note": r.cond_iv.note,
        },
    })
}

fn check(p: &BlockPattern) -> (Verdict, Value, String) {
    let r = abelscheck::check(p);
    let lat = WeightLattice::for_pattern(p);
    let failed: Vec<String> = match &r.verdict {
        abelscheck::Verdict::Certified => Vec::new(),
        abelscheck::Verdict::NotEstablished(c) => c.iter().map(Condition::to_string).collect(),
    };
    let payload = json!({
        "h1_dim": r.h1_dim,
        "h2_dim": r.h2_dim,
        "conditions": condition_json(&r, &lat),
        "failed": failed,
    });
    let verdict = if r.verdict.is_certified() { Verdict::Certified } else { Verdict::NotEstablished };
    let summary = if failed.is_empty() {
        format!("{p}: certified")
    } else {
        format!("{p}: not established (failed: {})", failed.join(", "))
    };
    (verdict, payload, summary)
}

fn bigint_json(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn gamma_json(g: &GammaElement) -> Value {
    let n = g.size();
    json!((0..n).map(|r| (0..n).map(|c| g.entry(r, c).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn coset_json(c: &Coset) -> Value {
    gamma_json(c.representative())
}

fn nonhopf(p: &BlockPattern, flags: &Flags) -> CommandResult {
    let prime = p.prime().ok_or_else(|| input_error("nonhopf needs a prime (`prime = ...` or --prime)"))?;
    let samples = flags.samples.unwrap_or(DEFAULT_SAMPLES);
    let r = verify_nonhopf(p, prime, samples, flags.seed).map_err(|e| input_error(e.to_string()))?;
    let payload = json!({
        "p": prime,
        "pairs_checked": r.pairs_checked,
        "checks": {
            "alpha_homomorphism": r.alpha_homomorphism,
            "alpha_bijective": r.alpha_bijective,
            "alpha_is_conjugation": r.alpha_is_conjugation,
            "center_is_central": r.center_is_central,
            "alpha_center_is_pz": r.alpha_center_is_pz,
            "kernel_maps_to_identity": r.kernel_maps_to_identity,
            "well_defined": r.well_defined,
            "surjective_on_samples": r.surjective_on_samples,
        },
        "center_index": bigint_json(&r.center_index),
        "kernel_size": r.kernel_size,
        "expected_kernel_size": bigint_json(&r.expected_kernel_size),
        "kernel_witness": r.kernel_witness.as_ref().map(coset_json),
        "surjectivity_witness": r.surjectivity_witness.as_ref().map(|(c, pre)| json!({
            "coset": coset_json(c),
            "preimage": coset_json(pre),
        })),
    });
    let ok = r.verified();
    let verdict = if ok { Verdict::Verified } else { Verdict::NotVerified };
    let summary = format!(
        "{p}, p = {prime}: kernel has {} cosets, [Z : alpha(Z)] = {}, {}",
        r.kernel_size,
        r.center_index,
        if ok { "surjective and non-injective" } else { "some check failed" }
    );
    Ok((verdict, payload, summary))
}

fn zmatrix_json(m: &ZMatrix) -> Value {
    json!((0..m.rows()).map(|r| (0..m.cols()).map(|c| bigint_json_signed(m.get(r, c))).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn bigint_json_signed(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn require<T: Copy>(v: Option<T>, flag: &str, cmd: &str) -> Result<T, InputError> {
    v.ok_or_else(|| input_error(format!("{cmd} needs --{flag}")))
}

fn outer(flags: &Flags) -> CommandResult {
    let n = require(flags.n, "n", "outer")?;
    let m = require(flags.m, "m", "outer")?;
    let entries = flags.g.as_ref().ok_or_else(|| input_error("outer needs --g"))?;
    if n == 0 || m == 0 {
        return Err(input_error("--n and --m must be positive"));
    }
    if entries.len() != m * m {
        return Err(input_error(format!("--g has {} entries, expected m*m = {}", entries.len(), m * m)));
    }
    let g = ZMatrix::square_from_flat(entries).map_err(|e| input_error(e.to_string()))?;
    let w = is_inner(&g, n, m).map_err(|e| input_error(e.to_string()))?;
    let payload = json!({
        "n": n,
        "m": m,
        "g": zmatrix_json(&g),
        "inner": w.is_some(),
        "witness": w.as_ref().map(|w| json!({ "epsilon": w.epsilon, "M": zmatrix_json(&w.m) })),
    });
    let (verdict, summary) = match &w {
        Some(w) => (Verdict::Inner, format!("phi_g is inner (epsilon = {})", w.epsilon)),
        None => (Verdict::Outer, "phi_g is not inner: nontrivial outer class".to_string()),
    };
    Ok((verdict, payload, summary))
}

fn cohopf(flags: &Flags) -> CommandResult {
    let n = require(flags.n, "n", "cohopf")?;
    let m = require(flags.m, "m", "cohopf")?;
    let k = require(flags.k, "k", "cohopf")?;
    let samples = flags.samples.unwrap_or(DEFAULT_SAMPLES);
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let r = cohopf_embed(k, n, m, samples, &mut rng).map_err(|e| input_error(e.to_string()))?;
    let payload = json!({
        "n": n,
        "m": m,
        "k": k,
        "samples": r.samples,
        "homomorphism": r.homomorphism,
        "injective": r.injective,
        "proper": r.proper,
        "index": bigint_json(&r.index),
    });
    let ok = r.verified();
    let verdict = if ok { Verdict::Verified } else { Verdict::NotVerified };
    Ok((verdict, payload, format!("(s, A) -> (s, {k}A) embeds with index {}", r.index)))
}

/// Parses `--g` style input: comma-separated integers.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("`{}` is not an integer", t.trim())))
        .collect()
}
