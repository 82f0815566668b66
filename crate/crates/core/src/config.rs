//! Flat `key = value` configuration files for every solver.
//!
//! Lines are `key = value`; `#` starts a comment; blank lines are ignored.
//! Every key is known to exactly one solver and unknown or repeated keys are
//! errors. A `solver = brim|sa|asa|oim` line selects the solver; keys that do
//! not apply to the selected model, integrator, schedule or init mode are
//! rejected rather than ignored.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::baselines::{AsaSettings, OimSettings, SaDecay, SaSchedule};
use crate::dynamics::{
    AnnealSchedule, AnnealShape, BrimModel, BrimSettings, InitPolicy, IntegratorKind, NodeParams, PerturbPolicy,
    ZivParams, ZivShape,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// One `key = value` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KvEntry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

/// Splits config text into entries, rejecting malformed and repeated keys.
pub fn parse_kv(text: &str) -> Result<Vec<KvEntry>> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| Error::Parse { line, message: format!("expected `key = value`, got `{body}`") })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(Error::Parse { line, message: "empty key or value".into() });
        }
        if let Some(first) = seen.insert(key.to_string(), line) {
            return Err(Error::Parse { line, message: format!("key `{key}` already set on line {first}") });
        }
        out.push(KvEntry { line, key: key.into(), value: value.into() });
    }
    Ok(out)
}

fn bad(e: &KvEntry, what: &str) -> Error {
    Error::Parse { line: e.line, message: format!("`{}` expects {what}, got `{}`", e.key, e.value) }
}

fn f64_of(e: &KvEntry) -> Result<f64> {
    e.value.parse::<f64>().ok().filter(|v| !v.is_nan()).ok_or_else(|| bad(e, "a number"))
}

fn usize_of(e: &KvEntry) -> Result<usize> {
    e.value.parse().map_err(|_| bad(e, "a non-negative integer"))
}

fn u64_of(e: &KvEntry) -> Result<u64> {
    e.value.parse().map_err(|_| bad(e, "an unsigned 64-bit integer"))
}

fn bool_of(e: &KvEntry) -> Result<bool> {
    e.value.parse().map_err(|_| bad(e, "true or false"))
}

fn choice<'a>(e: &KvEntry, options: &[&'a str]) -> Result<&'a str> {
    options.iter().find(|o| **o == e.value).copied().ok_or_else(|| bad(e, &format!("one of {}", options.join(", "))))
}

fn unknown(e: &KvEntry, solver: SolverKind) -> Error {
    Error::Parse { line: e.line, message: format!("unknown key `{}` for solver {solver}", e.key) }
}

/// Identifies a solver on the command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverKind {
    Brim,
    Sa,
    Asa,
    Oim,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] = [SolverKind::Brim, SolverKind::Sa, SolverKind::Asa, SolverKind::Oim];

    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::Brim => "brim",
            SolverKind::Sa => "sa",
            SolverKind::Asa => "asa",
            SolverKind::Oim => "oim",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::config(format!("unknown solver `{s}`; expected brim, sa, asa or oim")))
    }
}

/// Which spins a machine run reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Readout {
    /// Threshold the voltages at `t_end`.
    #[default]
    Final,
    /// Lowest-energy thresholded state seen at any step.
    BestSeen,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BrimSolverConfig {
    pub settings: BrimSettings,
    pub readout: Readout,
}

/// Simulated annealing; temperatures default from the instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaConfig {
    pub sweeps: usize,
    pub temp_start: Option<f64>,
    pub temp_end: Option<f64>,
    pub decay: SaDecay,
}

impl Default for SaConfig {
    fn default() -> Self {
        SaConfig { sweeps: 1000, temp_start: None, temp_end: None, decay: SaDecay::Geometric }
    }
}

impl SaConfig {
    /// Concrete schedule for `g`, filling unset temperatures from the default rule.
    pub fn schedule_for(&self, g: &Graph) -> SaSchedule {
        let auto = SaSchedule::default_for(g, self.sweeps);
        let t0 = self.temp_start.unwrap_or(auto.t0);
        SaSchedule { sweeps: self.sweeps, t0, t_end: self.temp_end.unwrap_or(1e-3 * t0), decay: self.decay }
    }
}

/// A fully specified solver.
#[derive(Debug, Clone, PartialEq)]
pub enum SolverConfig {
    Brim(BrimSolverConfig),
    Sa(SaConfig),
    Asa(AsaSettings),
    Oim(OimSettings),
}

impl SolverConfig {
    pub fn default_for(kind: SolverKind) -> Self {
        match kind {
            SolverKind::Brim => SolverConfig::Brim(BrimSolverConfig::default()),
            SolverKind::Sa => SolverConfig::Sa(SaConfig::default()),
            SolverKind::Asa => SolverConfig::Asa(AsaSettings::default()),
            SolverKind::Oim => SolverConfig::Oim(OimSettings::default()),
        }
    }

    pub fn kind(&self) -> SolverKind {
        match self {
            SolverConfig::Brim(_) => SolverKind::Brim,
            SolverConfig::Sa(_) => SolverKind::Sa,
            SolverConfig::Asa(_) => SolverKind::Asa,
            SolverConfig::Oim(_) => SolverKind::Oim,
        }
    }

    /// Run length: model time for the machines, sweeps or cycles for the
    /// digital solvers.
    pub fn budget(&self) -> f64 {
        match self {
            SolverConfig::Brim(b) => b.settings.t_end,
            SolverConfig::Sa(s) => s.sweeps as f64,
            SolverConfig::Asa(a) => a.cycles as f64,
            SolverConfig::Oim(o) => o.t_end,
        }
    }

    /// Same solver at another budget. Machine schedules stretch with the run.
    pub fn with_budget(&self, budget: f64) -> Result<Self> {
        if !(budget > 0.0 && budget.is_finite()) {
            return Err(Error::config(format!("budget must be > 0, got {budget}")));
        }
        let count = || (budget.round() as usize).max(1);
        Ok(match self {
            SolverConfig::Brim(b) => {
                SolverConfig::Brim(BrimSolverConfig { settings: b.settings.with_duration(budget), readout: b.readout })
            }
            SolverConfig::Sa(s) => SolverConfig::Sa(SaConfig { sweeps: count(), ..*s }),
            SolverConfig::Asa(a) => SolverConfig::Asa(AsaSettings { cycles: count(), ..*a }),
            SolverConfig::Oim(o) => SolverConfig::Oim(OimSettings { t_end: budget, ..o.clone() }),
        })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SolverConfig::Brim(b) => b.settings.validate(),
            SolverConfig::Sa(s) => {
                if s.sweeps == 0 {
                    return Err(Error::config("SA needs at least one sweep"));
                }
                if let (Some(a), Some(b)) = (s.temp_start, s.temp_end) {
                    if !(0.0 < b && b < a && a.is_finite()) {
                        return Err(Error::config("SA temperatures need 0 < temp_end < temp_start"));
                    }
                }
                Ok(())
            }
            SolverConfig::Asa(a) => a.validate(),
            SolverConfig::Oim(o) => o.validate(),
        }
    }

    /// Parses a config file. `kind` overrides any `solver` line; with neither
    /// the machine is assumed.
    pub fn parse(text: &str, kind: Option<SolverKind>) -> Result<Self> {
        let entries = parse_kv(text)?;
        let mut file_kind = None;
        let mut rest = Vec::with_capacity(entries.len());
        for e in entries {
            if e.key == "solver" {
                file_kind = Some(e.value.parse::<SolverKind>().map_err(|_| bad(&e, "brim, sa, asa or oim"))?);
            } else {
                rest.push(e);
            }
        }
        let kind = kind.or(file_kind).unwrap_or(SolverKind::Brim);
        let cfg = match kind {
            SolverKind::Brim => SolverConfig::Brim(brim_from_kv(&rest)?),
            SolverKind::Sa => SolverConfig::Sa(sa_from_kv(&rest)?),
            SolverKind::Asa => SolverConfig::Asa(asa_from_kv(&rest)?),
            SolverKind::Oim => SolverConfig::Oim(oim_from_kv(&rest)?),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Writes every key of this solver; [`SolverConfig::parse`] reads it back
    /// to an equal value.
    pub fn to_kv(&self) -> String {
        let mut out = format!("solver = {}\n", self.kind());
        let mut put = |k: &str, v: &dyn fmt::Display| {
            let _ = writeln!(out, "{k} = {v}");
        };
        match self {
            SolverConfig::Brim(b) => brim_to_kv(b, &mut put),
            SolverConfig::Sa(s) => {
                put("sweeps", &s.sweeps);
                if let Some(t) = s.temp_start {
                    put("temp_start", &t);
                }
                if let Some(t) = s.temp_end {
                    put("temp_end", &t);
                }
                put("decay", &if s.decay == SaDecay::Geometric { "geometric" } else { "linear" });
            }
            SolverConfig::Asa(a) => {
                put("cycles", &a.cycles);
                put("p0", &a.p0);
            }
            SolverConfig::Oim(o) => {
                put("t_end", &o.t_end);
                put("dt", &o.dt);
                put("normalize_weights", &o.normalize_weights);
                if let Some(p) = &o.init {
                    put("init_phases", &join(p));
                }
                put("seed", &o.seed);
                put("trace_stride", &o.trace_stride);
            }
        }
        out
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

fn list_of(e: &KvEntry) -> Result<Vec<f64>> {
    e.value
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| bad(e, "a comma-separated list of numbers")))
        .collect()
}

fn sa_from_kv(entries: &[KvEntry]) -> Result<SaConfig> {
    let mut c = SaConfig::default();
    for e in entries {
        match e.key.as_str() {
            "sweeps" => c.sweeps = usize_of(e)?,
            "temp_start" => c.temp_start = Some(f64_of(e)?),
            "temp_end" => c.temp_end = Some(f64_of(e)?),
            "decay" => {
                c.decay = match choice(e, &["geometric", "linear"])? {
                    "geometric" => SaDecay::Geometric,
                    _ => SaDecay::Linear,
                }
            }
            _ => return Err(unknown(e, SolverKind::Sa)),
        }
    }
    Ok(c)
}

fn asa_from_kv(entries: &[KvEntry]) -> Result<AsaSettings> {
    let mut c = AsaSettings::default();
    for e in entries {
        match e.key.as_str() {
            "cycles" => c.cycles = usize_of(e)?,
            "p0" => c.p0 = f64_of(e)?,
            _ => return Err(unknown(e, SolverKind::Asa)),
        }
    }
    Ok(c)
}

fn oim_from_kv(entries: &[KvEntry]) -> Result<OimSettings> {
    let mut c = OimSettings::default();
    for e in entries {
        match e.key.as_str() {
            "t_end" => c.t_end = f64_of(e)?,
            "dt" => c.dt = f64_of(e)?,
            "normalize_weights" => c.normalize_weights = bool_of(e)?,
            "init_phases" => c.init = Some(list_of(e)?),
            "seed" => c.seed = u64_of(e)?,
            "trace_stride" => c.trace_stride = usize_of(e)?,
            _ => return Err(unknown(e, SolverKind::Oim)),
        }
    }
    Ok(c)
}

/// Keys grouped by the mode that gives them meaning.
const NORMALIZED_KEYS: &[&str] = &["lambda", "tau"];
const PHYSICAL_KEYS: &[&str] =
    &["capacitance", "leak_resistance", "coupling_resistance", "ziv_v_stable", "ziv_g_peak", "ziv_shape"];
const EXPONENTIAL_KEYS: &[&str] = &["c_min", "tau_anneal"];
const RK4_KEYS: &[&str] = &["dt"];
const RK45_KEYS: &[&str] = &["rel_tol", "abs_tol", "dt_min"];
const UNIFORM_KEYS: &[&str] = &["init_amplitude"];
const GIVEN_KEYS: &[&str] = &["init_values"];

fn brim_from_kv(entries: &[KvEntry]) -> Result<BrimSolverConfig> {
    let d = BrimSettings::default();
    let mut by_key: BTreeMap<&str, &KvEntry> = BTreeMap::new();
    for e in entries {
        by_key.insert(e.key.as_str(), e);
    }
    let get = |k: &str| by_key.get(k).copied();
    let num = |k: &str, default: f64| get(k).map(f64_of).unwrap_or(Ok(default));

    let reject = |keys: &[&str], why: &str| -> Result<()> {
        match keys.iter().find_map(|k| get(k)) {
            Some(e) => Err(Error::Parse { line: e.line, message: format!("`{}` does not apply {why}", e.key) }),
            None => Ok(()),
        }
    };

    let model_name = match get("model") {
        Some(e) => choice(e, &["normalized", "physical"])?,
        None => "normalized",
    };
    let (dl, dtau) = match d.model {
        BrimModel::Normalized { lambda, tau } => (lambda, tau),
        BrimModel::Physical(_) => (1.0, 1.0),
    };
    let model = if model_name == "normalized" {
        reject(PHYSICAL_KEYS, "to model = normalized")?;
        BrimModel::Normalized { lambda: num("lambda", dl)?, tau: num("tau", dtau)? }
    } else {
        reject(NORMALIZED_KEYS, "to model = physical")?;
        let shape = match get("ziv_shape") {
            Some(e) => match choice(e, &["cubic", "piecewise_linear"])? {
                "cubic" => ZivShape::Cubic,
                _ => ZivShape::PiecewiseLinear,
            },
            None => ZivShape::Cubic,
        };
        BrimModel::Physical(NodeParams {
            capacitance: num("capacitance", 0.5)?,
            leak_resistance: num("leak_resistance", f64::INFINITY)?,
            coupling_resistance: num("coupling_resistance", 1.0)?,
            ziv: ZivParams { v_stable: num("ziv_v_stable", 2.0)?, g_peak: num("ziv_g_peak", 0.5)?, shape },
        })
    };

    let anneal = match get("anneal_shape") {
        Some(e) => choice(e, &["exponential", "constant"])?,
        None => "exponential",
    };
    let schedule = if anneal == "exponential" {
        AnnealSchedule {
            c_min: num("c_min", d.schedule.c_min)?,
            c_max: num("c_max", d.schedule.c_max)?,
            tau_anneal: num("tau_anneal", d.schedule.tau_anneal)?,
            shape: AnnealShape::ExponentialRise,
        }
    } else {
        reject(EXPONENTIAL_KEYS, "to anneal_shape = constant")?;
        let c = num("c_max", d.schedule.c_max)?;
        AnnealSchedule { c_min: c, c_max: c, tau_anneal: 1.0, shape: AnnealShape::Constant }
    };

    let integrator = match get("integrator").map(|e| choice(e, &["rk4", "rk45"])).transpose()?.unwrap_or("rk4") {
        "rk4" => {
            reject(RK45_KEYS, "to integrator = rk4")?;
            let dt = match d.integrator {
                IntegratorKind::FixedRk4 { dt } => dt,
                IntegratorKind::AdaptiveRk45 { .. } => 0.02,
            };
            IntegratorKind::FixedRk4 { dt: num("dt", dt)? }
        }
        _ => {
            reject(RK4_KEYS, "to integrator = rk45")?;
            IntegratorKind::AdaptiveRk45 {
                rel_tol: num("rel_tol", 1e-6)?,
                abs_tol: num("abs_tol", 1e-9)?,
                dt_min: num("dt_min", 1e-9)?,
            }
        }
    };

    let init = match get("init").map(|e| choice(e, &["uniform", "given"])).transpose()?.unwrap_or("uniform") {
        "uniform" => {
            reject(GIVEN_KEYS, "to init = uniform")?;
            let a = match d.init {
                InitPolicy::UniformRandom { amplitude } => amplitude,
                InitPolicy::Given(_) => 0.1,
            };
            InitPolicy::UniformRandom { amplitude: num("init_amplitude", a)? }
        }
        _ => {
            reject(UNIFORM_KEYS, "to init = given")?;
            let e = get("init_values").ok_or_else(|| Error::config("init = given requires init_values"))?;
            InitPolicy::Given(list_of(e)?)
        }
    };

    let weight_bits = match get("weight_bits") {
        None => d.weight_bits,
        Some(e) if e.value == "none" => None,
        Some(e) => Some(e.value.parse::<u32>().map_err(|_| bad(e, "none or an integer in 1..=16"))?),
    };
    let readout = match get("readout").map(|e| choice(e, &["final", "best_seen"])).transpose()? {
        Some("best_seen") => Readout::BestSeen,
        _ => Readout::Final,
    };

    let settings = BrimSettings {
        model,
        normalize_weights: get("normalize_weights").map(bool_of).transpose()?.unwrap_or(d.normalize_weights),
        weight_bits,
        schedule,
        perturb: PerturbPolicy {
            period: num("perturb_period", d.perturb.period)?,
            nodes_per_event: get("perturb_nodes").map(usize_of).transpose()?.unwrap_or(d.perturb.nodes_per_event),
            seed: get("perturb_seed").map(u64_of).transpose()?.unwrap_or(d.perturb.seed),
        },
        t_end: num("t_end", d.t_end)?,
        integrator,
        init,
        seed: get("seed").map(u64_of).transpose()?.unwrap_or(d.seed),
        trace_stride: get("trace_stride").map(usize_of).transpose()?.unwrap_or(d.trace_stride),
    };

    const KNOWN: &[&str] = &[
        "model",
        "lambda",
        "tau",
        "capacitance",
        "leak_resistance",
        "coupling_resistance",
        "ziv_v_stable",
        "ziv_g_peak",
        "ziv_shape",
        "normalize_weights",
        "weight_bits",
        "anneal_shape",
        "c_min",
        "c_max",
        "tau_anneal",
        "perturb_period",
        "perturb_nodes",
        "perturb_seed",
        "t_end",
        "integrator",
        "dt",
        "rel_tol",
        "abs_tol",
        "dt_min",
        "init",
        "init_amplitude",
        "init_values",
        "seed",
        "trace_stride",
        "readout",
    ];
    if let Some(e) = entries.iter().find(|e| !KNOWN.contains(&e.key.as_str())) {
        return Err(unknown(e, SolverKind::Brim));
    }
    Ok(BrimSolverConfig { settings, readout })
}

fn brim_to_kv(b: &BrimSolverConfig, put: &mut dyn FnMut(&str, &dyn fmt::Display)) {
    let s = &b.settings;
    match s.model {
        BrimModel::Normalized { lambda, tau } => {
            put("model", &"normalized");
            put("lambda", &lambda);
            put("tau", &tau);
        }
        BrimModel::Physical(p) => {
            put("model", &"physical");
            put("capacitance", &p.capacitance);
            put("leak_resistance", &p.leak_resistance);
            put("coupling_resistance", &p.coupling_resistance);
            put("ziv_v_stable", &p.ziv.v_stable);
            put("ziv_g_peak", &p.ziv.g_peak);
            put("ziv_shape", &if p.ziv.shape == ZivShape::Cubic { "cubic" } else { "piecewise_linear" });
        }
    }
    put("normalize_weights", &s.normalize_weights);
    match s.weight_bits {
        Some(bits) => put("weight_bits", &bits),
        None => put("weight_bits", &"none"),
    }
    match s.schedule.shape {
        AnnealShape::ExponentialRise => {
            put("anneal_shape", &"exponential");
            put("c_min", &s.schedule.c_min);
            put("c_max", &s.schedule.c_max);
            put("tau_anneal", &s.schedule.tau_anneal);
        }
        AnnealShape::Constant => {
            put("anneal_shape", &"constant");
            put("c_max", &s.schedule.c_max);
        }
    }
    put("perturb_period", &s.perturb.period);
    put("perturb_nodes", &s.perturb.nodes_per_event);
    put("perturb_seed", &s.perturb.seed);
    put("t_end", &s.t_end);
    match s.integrator {
        IntegratorKind::FixedRk4 { dt } => {
            put("integrator", &"rk4");
            put("dt", &dt);
        }
        IntegratorKind::AdaptiveRk45 { rel_tol, abs_tol, dt_min } => {
            put("integrator", &"rk45");
            put("rel_tol", &rel_tol);
            put("abs_tol", &abs_tol);
            put("dt_min", &dt_min);
        }
    }
    match &s.init {
        InitPolicy::UniformRandom { amplitude } => {
            put("init", &"uniform");
            put("init_amplitude", amplitude);
        }
        InitPolicy::Given(v) => {
            put("init", &"given");
            put("init_values", &join(v));
        }
    }
    put("seed", &s.seed);
    put("trace_stride", &s.trace_stride);
    put("readout", &if b.readout == Readout::Final { "final" } else { "best_seen" });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let e = parse_kv("# header\n\n a = 1 # trailing\nb=two\n").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!((e[0].line, e[0].key.as_str(), e[0].value.as_str()), (3, "a", "1"));
        assert_eq!(e[1].value, "two");
    }

    #[test]
    fn rejects_malformed_and_repeated() {
        assert!(matches!(parse_kv("a 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_kv("a = 1\n\na = 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_kv("a =\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn unknown_keys_are_errors() {
        let err = SolverConfig::parse("lambda = 2\nfoo = 1\n", None).unwrap_err();
        assert!(err.to_string().contains("foo"), "{err}");
        assert!(SolverConfig::parse("solver = sa\nlambda = 2\n", None).is_err());
        assert!(SolverConfig::parse("solver = nosuch\n", None).is_err());
    }

    #[test]
    fn inapplicable_keys_are_errors() {
        assert!(SolverConfig::parse("capacitance = 1\n", None).is_err());
        assert!(SolverConfig::parse("model = physical\nlambda = 1\n", None).is_err());
        assert!(SolverConfig::parse("integrator = rk45\ndt = 0.1\n", None).is_err());
        assert!(SolverConfig::parse("anneal_shape = constant\nc_min = 0.1\n", None).is_err());
        assert!(SolverConfig::parse("init = given\n", None).is_err());
    }

    #[test]
    fn values_land_in_settings() {
        let cfg = SolverConfig::parse(
            "lambda = 2.5\nc_max = 0.8\nperturb_period = 3\nweight_bits = 8\nreadout = best_seen\ndt = 0.01\n",
            None,
        )
        .unwrap();
        let SolverConfig::Brim(b) = cfg else { panic!("expected brim") };
        assert_eq!(b.settings.model, BrimModel::Normalized { lambda: 2.5, tau: 1.0 });
        assert_eq!(b.settings.schedule.c_max, 0.8);
        assert_eq!(b.settings.perturb.period, 3.0);
        assert_eq!(b.settings.weight_bits, Some(8));
        assert_eq!(b.settings.integrator, IntegratorKind::FixedRk4 { dt: 0.01 });
        assert_eq!(b.readout, Readout::BestSeen);
    }

    #[test]
    fn flag_kind_overrides_file() {
        let cfg = SolverConfig::parse("solver = brim\n", Some(SolverKind::Asa)).unwrap();
        assert_eq!(cfg.kind(), SolverKind::Asa);
    }

    #[test]
    fn round_trips() {
        let physical = BrimSolverConfig {
            settings: BrimSettings {
                model: BrimModel::Physical(NodeParams {
                    capacitance: 0.25,
                    leak_resistance: f64::INFINITY,
                    coupling_resistance: 2.0,
                    ziv: ZivParams { v_stable: 2.3, g_peak: 0.1, shape: ZivShape::PiecewiseLinear },
                }),
                integrator: IntegratorKind::AdaptiveRk45 { rel_tol: 1e-6, abs_tol: 1e-9, dt_min: 1e-10 },
                init: InitPolicy::Given(vec![0.1, -0.2, 0.30000000000000004]),
                schedule: AnnealSchedule::constant(0.7).unwrap(),
                ..BrimSettings::default()
            },
            readout: Readout::Final,
        };
        let configs = [
            SolverConfig::default_for(SolverKind::Brim),
            SolverConfig::Brim(physical),
            SolverConfig::Sa(SaConfig { temp_start: Some(3.0), temp_end: Some(0.01), ..SaConfig::default() }),
            SolverConfig::Sa(SaConfig { decay: SaDecay::Linear, ..SaConfig::default() }),
            SolverConfig::Asa(AsaSettings { cycles: 77, p0: 0.15 }),
            SolverConfig::Oim(OimSettings { init: Some(vec![0.5, 1.5]), ..OimSettings::default() }),
        ];
        for c in configs {
            let text = c.to_kv();
            assert_eq!(SolverConfig::parse(&text, None).unwrap(), c, "{text}");
        }
    }

    #[test]
    fn budgets() {
        let c = SolverConfig::default_for(SolverKind::Brim).with_budget(500.0).unwrap();
        let SolverConfig::Brim(b) = &c else { panic!() };
        let d = BrimSettings::default();
        assert_eq!(b.settings.t_end, 500.0);
        assert!((b.settings.schedule.tau_anneal / d.schedule.tau_anneal - 500.0 / d.t_end).abs() < 1e-12);
        assert_eq!(c.budget(), 500.0);
        assert_eq!(SolverConfig::default_for(SolverKind::Sa).with_budget(12.4).unwrap().budget(), 12.0);
        assert!(c.with_budget(0.0).is_err());
    }
}
