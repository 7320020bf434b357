//! Experiment specification: a flat `key = value` file plus one-to-one
//! command-line overrides, resolved against per-subcommand key tables.
//! The resolved spec is rendered canonically (sorted keys, floats in
//! full-precision scientific notation) so reruns and echoes are
//! byte-stable and re-parse to an equal spec.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Bool(bool),
    Int(u64),
    Float(f64),
    Text(String),
    Sizes(Vec<usize>),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Float(x) => format!("{x:.16e}"),
            Value::Text(s) => s.clone(),
            Value::Sizes(v) => v
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    pub fn as_u64(&self) -> u64 {
        match self {
            Value::Int(i) => *i,
            _ => unreachable!("key table guarantees an integer"),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Float(x) => *x,
            _ => unreachable!("key table guarantees a float"),
        }
    }

    pub fn as_text(&self) -> &str {
        match self {
            Value::Text(s) => s,
            _ => unreachable!("key table guarantees text"),
        }
    }

    pub fn as_bool(&self) -> bool {
        match self {
            Value::Bool(b) => *b,
            _ => unreachable!("key table guarantees a bool"),
        }
    }

    pub fn as_sizes(&self) -> &[usize] {
        match self {
            Value::Sizes(v) => v,
            _ => unreachable!("key table guarantees a size list"),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Bool,
    Int,
    Float,
    Text,
    Sizes,
}

struct KeyDef {
    key: &'static str,
    kind: Kind,
    /// None marks a required key; Some("") marks an optional key with no
    /// default (absent unless given).
    default: Option<&'static str>,
    constraint: &'static str,
}

const fn req(key: &'static str, kind: Kind, constraint: &'static str) -> KeyDef {
    KeyDef {
        key,
        kind,
        default: None,
        constraint,
    }
}

const fn opt(
    key: &'static str,
    kind: Kind,
    default: &'static str,
    constraint: &'static str,
) -> KeyDef {
    KeyDef {
        key,
        kind,
        default: Some(default),
        constraint,
    }
}

const COMMON: &[KeyDef] = &[
    opt("m", Kind::Int, "2", "m >= 2"),
    opt("seed", Kind::Int, "0", "any"),
    opt("threads", Kind::Int, "", "threads >= 1; default = available cores"),
    req("out", Kind::Text, "output directory"),
    opt("format", Kind::Text, "csv", "one of csv, json"),
    opt("overwrite", Kind::Bool, "false", "true or false"),
];

const INIT_CONSTRAINT: &str = "barenblatt or file:<path>";

const SIMULATE_KEYS: &[KeyDef] = &[
    req("n", Kind::Int, "ring size, n >= 2 m + 2"),
    req("t", Kind::Float, "macroscopic horizon, t >= 0"),
    opt("simulate.alpha", Kind::Float, "0.5", "0 < alpha < 1"),
    opt("simulate.snapshots", Kind::Int, "10", "snapshots >= 1"),
];

const SOLVE_KEYS: &[KeyDef] = &[
    req("grid", Kind::Int, "grid >= 5"),
    req("t", Kind::Float, "t > 0"),
    opt("eps", Kind::Float, "", "0 < eps < 1/2"),
    opt("solve.init", Kind::Text, "barenblatt", INIT_CONSTRAINT),
    opt("solve.c", Kind::Float, "1.25e-2", "c > 0"),
    opt("solve.t0", Kind::Float, "1.0", "t0 > 0"),
    opt("solve.cfl", Kind::Float, "0.5", "0 < cfl <= 1"),
    opt("solve.snapshots", Kind::Int, "10", "snapshots >= 1"),
];

const REGULARIZE_KEYS: &[KeyDef] = &[
    req("grid", Kind::Int, "grid >= 5"),
    opt("eps", Kind::Float, "", "0 < eps < 1/2; exactly one of eps, eps-rule"),
    opt(
        "eps-rule",
        Kind::Text,
        "",
        "default or power:<exponent>; exactly one of eps, eps-rule",
    ),
    opt("n", Kind::Int, "", "ring size the rule is evaluated at; required with eps-rule"),
    opt("regularize.init", Kind::Text, "barenblatt", INIT_CONSTRAINT),
    opt("regularize.c", Kind::Float, "1.7934e-1", "c > 0"),
    opt("regularize.t0", Kind::Float, "1.3611e-2", "t0 > 0"),
];

const HYDRO_KEYS: &[KeyDef] = &[
    req("t", Kind::Float, "macroscopic horizon, t >= 0"),
    req("replicas", Kind::Int, "replicas >= 1"),
    opt("grid", Kind::Int, "1024", "grid >= 5"),
    opt("eps", Kind::Float, "", "0 < eps < 1/2"),
    opt(
        "hydro.sizes",
        Kind::Sizes,
        "128,256,512",
        "nonempty; each size >= 2 m + 2 and >= 2 ell + 1",
    ),
    opt("hydro.ell", Kind::Int, "16", "ell >= 1"),
    opt("hydro.init", Kind::Text, "barenblatt", INIT_CONSTRAINT),
    opt("hydro.c", Kind::Float, "1.0e-1", "c > 0"),
    opt("hydro.t0", Kind::Float, "1.0e-2", "t0 > 0"),
];

const ENTROPY_KEYS: &[KeyDef] = &[
    opt(
        "entropy.sizes",
        Kind::Sizes,
        "1024,2048,4096,8192,16384",
        "nonempty; each size >= 2",
    ),
    opt("eps-rule", Kind::Text, "default", "default or power:<exponent>"),
    opt("entropy.init", Kind::Text, "barenblatt", INIT_CONSTRAINT),
    opt("entropy.c", Kind::Float, "1.25e-2", "c > 0"),
    opt("entropy.t0", Kind::Float, "1.0", "t0 > 0"),
];

const DIAGNOSTICS_KEYS: &[KeyDef] = &[
    req("grid", Kind::Int, "grid >= 5"),
    req("t", Kind::Float, "t > 0"),
    opt("eps", Kind::Float, "1.0e-1", "0 < eps < 1/2"),
    opt("diag.alpha", Kind::Float, "0.3", "0 < alpha < 1"),
    opt("diag.init", Kind::Text, "barenblatt", INIT_CONSTRAINT),
    opt("diag.c", Kind::Float, "1.7934e-1", "c > 0"),
    opt("diag.t0", Kind::Float, "1.3611e-2", "t0 > 0"),
    opt("diag.snapshots", Kind::Int, "10", "snapshots >= 1"),
];

fn subcommand_keys(sub: &str) -> Option<&'static [KeyDef]> {
    match sub {
        "simulate" => Some(SIMULATE_KEYS),
        "solve" => Some(SOLVE_KEYS),
        "regularize" => Some(REGULARIZE_KEYS),
        "hydro-compare" => Some(HYDRO_KEYS),
        "entropy-scan" => Some(ENTROPY_KEYS),
        "diagnostics" => Some(DIAGNOSTICS_KEYS),
        _ => None,
    }
}

fn key_def(sub: &str, key: &str) -> Option<&'static KeyDef> {
    COMMON
        .iter()
        .chain(subcommand_keys(sub).into_iter().flatten())
        .find(|d| d.key == key)
}

fn known_keys(sub: &str) -> String {
    COMMON
        .iter()
        .chain(subcommand_keys(sub).into_iter().flatten())
        .map(|d| d.key)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub subcommand: String,
    pub values: BTreeMap<String, Value>,
}

impl ExperimentSpec {
    pub fn get(&self, key: &str) -> &Value {
        self.values
            .get(key)
            .unwrap_or_else(|| panic!("required key `{key}` resolved by construction"))
    }

    pub fn maybe(&self, key: &str) -> Option<&Value> {
        self.values.get(key)
    }

    /// Canonical text form: the subcommand line first, then keys in
    /// sorted order. Only experiment parameters are rendered; `out`
    /// and `overwrite` steer a single invocation without affecting
    /// the produced bytes, so equal experiments render identically
    /// wherever they run.
    pub fn render(&self) -> String {
        const EXECUTION_KEYS: [&str; 2] = ["out", "overwrite"];
        let mut out = String::new();
        let _ = writeln!(out, "subcommand = {}", self.subcommand);
        for (key, value) in &self.values {
            if !EXECUTION_KEYS.contains(&key.as_str()) {
                let _ = writeln!(out, "{key} = {}", value.render());
            }
        }
        out
    }
}

fn parse_value(sub: &str, key: &str, raw: &str, kind: Kind) -> Result<Value, CliError> {
    let bad = |detail: &str| {
        let constraint = key_def(sub, key).map(|d| d.constraint).unwrap_or("");
        CliError::Validation(format!(
            "invalid value `{raw}` for key `{key}`: {detail} (constraint: {constraint})"
        ))
    };
    match kind {
        Kind::Bool => raw
            .parse::<bool>()
            .map(Value::Bool)
            .map_err(|_| bad("expected true or false")),
        Kind::Int => raw
            .parse::<u64>()
            .map(Value::Int)
            .map_err(|_| bad("expected a nonnegative integer")),
        Kind::Float => raw
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Value::Float)
            .ok_or_else(|| bad("expected a finite number")),
        Kind::Text => Ok(Value::Text(raw.to_string())),
        Kind::Sizes => raw
            .split(',')
            .map(|part| part.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map(Value::Sizes)
            .map_err(|_| bad("expected a comma-separated list of integers")),
    }
}

/// Per-key range checks; cross-key rules live in `validate_cross`.
fn check_constraint(sub: &str, key: &str, value: &Value) -> Result<(), CliError> {
    let constraint = key_def(sub, key).map(|d| d.constraint).unwrap_or("");
    let fail = || {
        Err(CliError::Validation(format!(
            "key `{key}` = {} violates its constraint: {constraint}",
            value.render()
        )))
    };
    match (key, value) {
        ("m", Value::Int(i)) if *i < 2 => fail(),
        ("threads" | "replicas", Value::Int(0)) => fail(),
        ("grid", Value::Int(i)) if *i < 5 => fail(),
        ("n", Value::Int(i)) if *i < 2 => fail(),
        ("t", Value::Float(x)) if matches!(sub, "solve" | "diagnostics") && !(*x > 0.0) => fail(),
        ("t", Value::Float(x)) if *x < 0.0 => fail(),
        ("eps", Value::Float(x)) if !(*x > 0.0 && *x < 0.5) => fail(),
        ("format", Value::Text(s)) if s != "csv" && s != "json" => fail(),
        (k, Value::Float(x)) if k.ends_with(".alpha") && !(*x > 0.0 && *x < 1.0) => fail(),
        (k, Value::Float(x)) if (k.ends_with(".c") || k.ends_with(".t0")) && !(*x > 0.0) => fail(),
        ("solve.cfl", Value::Float(x)) if !(*x > 0.0 && *x <= 1.0) => fail(),
        (k, Value::Int(0)) if k.ends_with(".snapshots") || k.ends_with(".ell") => fail(),
        (k, Value::Sizes(v)) if k.ends_with(".sizes") && v.is_empty() => fail(),
        (k, Value::Text(s))
            if k.ends_with(".init") && s != "barenblatt" && !s.starts_with("file:") =>
        {
            fail()
        }
        ("eps-rule", Value::Text(s)) => match parse_eps_rule(s) {
            Some(_) => Ok(()),
            None => fail(),
        },
        _ => Ok(()),
    }
}

/// `default` keeps the schedule's built-in power law; `power:x` sets
/// eps_N = N^(-x).
pub fn parse_eps_rule(text: &str) -> Option<Option<f64>> {
    if text == "default" {
        return Some(None);
    }
    text.strip_prefix("power:")
        .and_then(|raw| raw.parse::<f64>().ok())
        .filter(|x| x.is_finite() && *x > 0.0)
        .map(Some)
}

fn validate_cross(spec: &ExperimentSpec) -> Result<(), CliError> {
    let err = |msg: String| Err(CliError::Validation(msg));
    let m = spec.get("m").as_u64() as usize;
    match spec.subcommand.as_str() {
        "simulate" => {
            let n = spec.get("n").as_u64() as usize;
            if n < 2 * m + 2 {
                return err(format!(
                    "key `n` = {n} violates its constraint: n >= 2 m + 2 (m = {m})"
                ));
            }
        }
        "hydro-compare" => {
            let ell = spec.get("hydro.ell").as_u64() as usize;
            for &n in spec.get("hydro.sizes").as_sizes() {
                if n < 2 * m + 2 || n < 2 * ell + 1 {
                    return err(format!(
                        "key `hydro.sizes` entry {n} violates its constraint: \
                         each size >= 2 m + 2 and >= 2 ell + 1 (m = {m}, ell = {ell})"
                    ));
                }
            }
        }
        "regularize" => {
            let has_eps = spec.maybe("eps").is_some();
            let has_rule = spec.maybe("eps-rule").is_some();
            if has_eps == has_rule {
                return err(
                    "exactly one of keys `eps` and `eps-rule` must be given for regularize"
                        .to_string(),
                );
            }
            if has_rule && spec.maybe("n").is_none() {
                return err("key `eps-rule` requires key `n` (the ring size the rule is evaluated at)".to_string());
            }
        }
        "entropy-scan" => {
            for &n in spec.get("entropy.sizes").as_sizes() {
                if n < 2 {
                    return err(format!(
                        "key `entropy.sizes` entry {n} violates its constraint: each size >= 2"
                    ));
                }
            }
        }
        _ => {}
    }
    Ok(())
}

/// Flat config format: `key = value` per line, `#` comments, blank lines
/// ignored. A `subcommand` line, when present, must match.
fn parse_file(sub: &str, path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Validation(format!("cannot read config file {}: {e}", path.display()))
    })?;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Validation(format!(
                "{}:{}: expected `key = value`, got `{line}`",
                path.display(),
                lineno + 1
            )));
        };
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        if key == "subcommand" {
            if value != sub {
                return Err(CliError::Validation(format!(
                    "config file {} is for subcommand `{value}`, not `{sub}`",
                    path.display()
                )));
            }
            continue;
        }
        entries.push((key, value));
    }
    Ok(entries)
}

/// Resolution order: key-table defaults, then the config file, then
/// command-line overrides; required keys must be present afterwards.
pub fn build_spec(
    sub: &str,
    config: Option<&Path>,
    overrides: &[(&str, String)],
) -> Result<ExperimentSpec, CliError> {
    let defs = subcommand_keys(sub)
        .ok_or_else(|| CliError::Validation(format!("unknown subcommand `{sub}`")))?;

    let mut raw: BTreeMap<String, String> = BTreeMap::new();
    for def in COMMON.iter().chain(defs) {
        match def.default {
            Some("") | None => {}
            Some(text) => {
                raw.insert(def.key.to_string(), text.to_string());
            }
        }
    }
    raw.entry("threads".to_string()).or_insert_with(|| {
        std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
            .to_string()
    });

    if let Some(path) = config {
        for (key, value) in parse_file(sub, path)? {
            if key_def(sub, &key).is_none() {
                return Err(CliError::Validation(format!(
                    "unknown key `{key}` for subcommand `{sub}`; known keys: {}",
                    known_keys(sub)
                )));
            }
            raw.insert(key, value);
        }
    }
    for (key, value) in overrides {
        debug_assert!(key_def(sub, key).is_some(), "flag table out of sync");
        raw.insert(key.to_string(), value.clone());
    }

    let mut values = BTreeMap::new();
    for (key, text) in &raw {
        let def = key_def(sub, key).expect("only known keys inserted");
        let value = parse_value(sub, key, text, def.kind)?;
        check_constraint(sub, key, &value)?;
        values.insert(key.clone(), value);
    }
    for def in COMMON.iter().chain(defs) {
        if def.default.is_none() && !values.contains_key(def.key) {
            return Err(CliError::Validation(format!(
                "missing required key `{}` ({})",
                def.key, def.constraint
            )));
        }
    }

    let spec = ExperimentSpec {
        subcommand: sub.to_string(),
        values,
    };
    validate_cross(&spec)?;
    Ok(spec)
}
