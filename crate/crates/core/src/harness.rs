//! Seeded multi-run experiments: batches, anneal-time sweeps, distance
//! tables against best-known cuts, and paired perturbation comparisons.
//!
//! Runs fan out over a rayon pool but are keyed by seed, so every output is
//! identical for any worker count. Wall time is only measured on request
//! because it would otherwise break byte-identical reruns.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{asa_solve, oim_solve, sa_solve, OimSettings};
use crate::config::{BrimSolverConfig, Readout, SolverConfig, SolverKind};
use crate::dynamics::{integrate, BrimConfig};
use crate::error::{Error, Result};
use crate::graph::{
    brute_force_maxcut, cut_value, ising_energy, maxcut_to_ising, read_gset_file, CouplingMatrix, Graph, SpinVector,
};

/// A named problem with its Ising couplings precomputed.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub graph: Graph,
    pub coupling: CouplingMatrix,
}

impl Instance {
    pub fn new(id: impl Into<String>, graph: Graph) -> Self {
        let coupling = maxcut_to_ising(&graph);
        Instance { id: id.into(), graph, coupling }
    }

    /// Loads a Gset file; the id is the file stem.
    pub fn from_gset_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let graph = read_gset_file(path)?;
        let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "instance".into());
        Ok(Instance::new(id, graph))
    }
}

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub solver: SolverKind,
    pub instance: String,
    pub seed: u64,
    pub budget: f64,
    pub wall_ms: Option<f64>,
    pub spins: SpinVector,
    pub cut: f64,
    pub energy: f64,
    /// Lowest energy seen during the run; equals `energy` for solvers that
    /// return their best state.
    pub best_seen_energy: f64,
    pub distance: Option<f64>,
}

pub const REPORT_HEADER: &str = "solver,instance,seed,budget,wall_ms,cut,energy,distance";

impl RunReport {
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.solver,
            self.instance,
            self.seed,
            self.budget,
            opt(self.wall_ms),
            self.cut,
            self.energy,
            opt(self.distance)
        )
    }
}

pub fn reports_to_csv<'a>(reports: impl IntoIterator<Item = &'a RunReport>) -> String {
    let mut out = format!("{REPORT_HEADER}\n");
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Best-known cuts keyed by instance id.
///
/// Ids of the form `G<number>` are matched without leading zeros, so `G1`
/// and `G01` name the same entry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BestKnownRegistry {
    entries: BTreeMap<String, (f64, String)>,
}

fn canonical_id(id: &str) -> String {
    match id.strip_prefix('G') {
        Some(num) if !num.is_empty() && num.bytes().all(|b| b.is_ascii_digit()) => {
            format!("G{}", num.trim_start_matches('0'))
        }
        _ => id.to_string(),
    }
}

impl BestKnownRegistry {
    /// Registry shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(include_str!("../data/registry.txt")).expect("bundled registry parses")
    }

    /// Reads lines `instance_id best_value source_tag`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut reg = BestKnownRegistry::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            let [id, value, source] = fields[..] else {
                return Err(Error::Parse { line, message: format!("expected `id value source`, got `{body}`") });
            };
            let value: f64 = value
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::Parse { line, message: format!("bad best value `{value}`") })?;
            if reg.entries.insert(canonical_id(id), (value, source.to_string())).is_some() {
                return Err(Error::Parse { line, message: format!("instance `{id}` listed twice") });
            }
        }
        Ok(reg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.entries.get(&canonical_id(id)).map(|e| e.0)
    }

    pub fn source(&self, id: &str) -> Option<&str> {
        self.entries.get(&canonical_id(id)).map(|e| e.1.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Explicit update; returns the previous value.
    pub fn update(&mut self, id: &str, value: f64, source: &str) -> Option<f64> {
        self.entries.insert(canonical_id(id), (value, source.to_string())).map(|e| e.0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# instance best_cut source\n");
        for (id, (v, s)) in &self.entries {
            let _ = writeln!(out, "{id} {v} {s}");
        }
        out
    }
}

/// Worker pool and seed range shared by every experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchOptions {
    pub runs: usize,
    pub seed_base: u64,
    /// Pool size; `None` uses rayon's default.
    pub workers: Option<usize>,
    /// Measure wall time per run. Makes outputs non-reproducible.
    pub timing: bool,
}

impl BatchOptions {
    pub fn new(runs: usize, seed_base: u64) -> Self {
        BatchOptions { runs, seed_base, workers: None, timing: false }
    }

    fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::config("run count must be at least 1"));
        }
        if self.workers == Some(0) {
            return Err(Error::config("worker count must be at least 1"));
        }
        Ok(())
    }

    fn seeds(&self) -> Vec<u64> {
        (0..self.runs as u64).map(|k| self.seed_base.wrapping_add(k)).collect()
    }
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::config(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs one solver once. `seed` drives every random choice of the run.
pub fn run_once(cfg: &SolverConfig, inst: &Instance, seed: u64, timing: bool) -> Result<RunReport> {
    let start = timing.then(Instant::now);
    let wrap =
        |e: Error| Error::Run { solver: cfg.kind().to_string(), instance: inst.id.clone(), seed, source: Box::new(e) };
    let (spins, best_seen_energy) = match cfg {
        SolverConfig::Brim(BrimSolverConfig { settings, readout }) => {
            let mut settings = settings.clone();
            settings.seed = seed;
            settings.perturb.seed = seed;
            let run = integrate(&BrimConfig { coupling: inst.coupling.clone(), settings }).map_err(wrap)?;
            let spins = match readout {
                Readout::Final => run.final_spins(),
                Readout::BestSeen => run.best_spins.clone(),
            };
            (spins, Some(run.best_energy))
        }
        SolverConfig::Sa(s) => (sa_solve(&inst.graph, &s.schedule_for(&inst.graph), seed).map_err(wrap)?.spins, None),
        SolverConfig::Asa(a) => (asa_solve(&inst.graph, a, seed).map_err(wrap)?.spins, None),
        SolverConfig::Oim(o) => {
            let settings = OimSettings { seed, ..o.clone() };
            (oim_solve(&inst.coupling, &settings).map_err(wrap)?.spins, None)
        }
    };
    let cut = cut_value(&inst.graph, &spins)?;
    let energy = ising_energy(&inst.coupling, &spins)?;
    Ok(RunReport {
        solver: cfg.kind(),
        instance: inst.id.clone(),
        seed,
        budget: cfg.budget(),
        wall_ms: start.map(|s| s.elapsed().as_secs_f64() * 1e3),
        spins,
        cut,
        energy,
        best_seen_energy: best_seen_energy.unwrap_or(energy).min(energy),
        distance: None,
    })
}

/// All reports of a batch, ordered by seed.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    pub reports: Vec<RunReport>,
    best: usize,
}

impl Batch {
    /// Maximum cut; the lowest seed wins ties.
    pub fn best(&self) -> &RunReport {
        &self.reports[self.best]
    }

    pub fn to_csv(&self) -> String {
        reports_to_csv(&self.reports)
    }

    /// Median of the final energies.
    pub fn median_energy(&self) -> f64 {
        median(self.reports.iter().map(|r| r.energy).collect())
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn best_index(reports: &[RunReport]) -> usize {
    let mut best = 0;
    for (k, r) in reports.iter().enumerate().skip(1) {
        if r.cut > reports[best].cut {
            best = k;
        }
    }
    best
}

/// `k` independent runs with seeds `seed_base..seed_base + k`.
pub fn run_batch(
    cfg: &SolverConfig,
    inst: &Instance,
    opts: &BatchOptions,
    registry: Option<&BestKnownRegistry>,
) -> Result<Batch> {
    opts.validate()?;
    cfg.validate()?;
    let seeds = opts.seeds();
    let results: Vec<Result<RunReport>> =
        with_pool(opts.workers, || seeds.par_iter().map(|&s| run_once(cfg, inst, s, opts.timing)).collect())?;
    let mut reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    if let Some(best) = registry.and_then(|r| r.get(&inst.id)) {
        for r in &mut reports {
            r.distance = Some(best - r.cut);
        }
    }
    let best = best_index(&reports);
    Ok(Batch { reports, best })
}

/// Anneal-time sweep definition.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub solver: SolverConfig,
    /// Strictly increasing run budgets.
    pub budgets: Vec<f64>,
    pub runs: usize,
    pub seed_base: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.budgets.is_empty() {
            return Err(Error::config("sweep needs at least one budget"));
        }
        if self.budgets.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::config("sweep budgets must be strictly increasing"));
        }
        Ok(())
    }
}

/// `count` budgets log-spaced from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| if k + 1 == count { hi } else { lo * (hi / lo).powf(k as f64 / (count - 1) as f64) })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub budget: f64,
    pub best_energy: f64,
    pub median_energy: f64,
    pub runs: usize,
}

pub const SWEEP_HEADER: &str = "budget,best_energy,median_energy,runs";

pub fn sweep_to_csv(points: &[SweepPoint]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for p in points {
        let _ = writeln!(out, "{},{},{},{}", p.budget, p.best_energy, p.median_energy, p.runs);
    }
    out
}

/// Best and median final energy per budget.
pub fn sweep_anneal_time(spec: &SweepSpec, inst: &Instance, workers: Option<usize>) -> Result<Vec<SweepPoint>> {
    spec.validate()?;
    spec.budgets
        .iter()
        .map(|&b| {
            let cfg = spec.solver.with_budget(b)?;
            let opts = BatchOptions { runs: spec.runs, seed_base: spec.seed_base, workers, timing: false };
            let batch = run_batch(&cfg, inst, &opts, None)?;
            Ok(SweepPoint {
                budget: b,
                best_energy: batch.reports.iter().map(|r| r.energy).fold(f64::INFINITY, f64::min),
                median_energy: batch.median_energy(),
                runs: spec.runs,
            })
        })
        .collect()
}

/// Adjacent increases in a curve that should not increase, as
/// `(index of the later point, size of the increase)`.
pub fn trend_inversions(values: &[f64]) -> Vec<(usize, f64)> {
    values.windows(2).enumerate().filter(|(_, w)| w[1] > w[0]).map(|(k, w)| (k + 1, w[1] - w[0])).collect()
}

/// A column of the distance table.
#[derive(Debug, Clone, PartialEq)]
pub enum TableSolver {
    Heuristic(SolverConfig),
    /// Exhaustive search; only for small instances.
    BruteForce,
}

impl TableSolver {
    pub fn name(&self) -> &str {
        match self {
            TableSolver::Heuristic(c) => c.kind().as_str(),
            TableSolver::BruteForce => "exact",
        }
    }
}

/// A best-of-k cut that beat the registry.
#[derive(Debug, Clone, PartialEq)]
pub struct RegistryUpdate {
    pub instance: String,
    pub solver: String,
    pub registry_value: f64,
    pub found: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceRow {
    pub instance: String,
    pub best_known: f64,
    /// `best_known − best cut`, one per solver column.
    pub distances: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceTable {
    pub solvers: Vec<String>,
    pub rows: Vec<DistanceRow>,
    pub updates: Vec<RegistryUpdate>,
}

impl DistanceTable {
    /// `instance,best,<solver>...`; a negative distance is written as is.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance,best");
        for s in &self.solvers {
            let _ = write!(out, ",{s}");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{},{}", r.instance, r.best_known);
            for d in &r.distances {
                let _ = write!(out, ",{d}");
            }
            out.push('\n');
        }
        out
    }
}

/// Distance of each solver's best-of-k cut from the registry value.
pub fn distance_table(
    solvers: &[TableSolver],
    instances: &[Instance],
    opts: &BatchOptions,
    registry: &BestKnownRegistry,
) -> Result<DistanceTable> {
    let missing: Vec<&str> =
        instances.iter().filter(|i| registry.get(&i.id).is_none()).map(|i| i.id.as_str()).collect();
    if !missing.is_empty() {
        return Err(Error::config(format!("no best-known value for: {}", missing.join(", "))));
    }
    let mut rows = Vec::with_capacity(instances.len());
    let mut updates = Vec::new();
    for inst in instances {
        let best_known = registry.get(&inst.id).expect("checked above");
        let mut distances = Vec::with_capacity(solvers.len());
        for s in solvers {
            let found = match s {
                TableSolver::Heuristic(cfg) => run_batch(cfg, inst, opts, None)?.best().cut,
                TableSolver::BruteForce => brute_force_maxcut(&inst.graph)?.0,
            };
            let d = best_known - found;
            if d < 0.0 {
                updates.push(RegistryUpdate {
                    instance: inst.id.clone(),
                    solver: s.name().to_string(),
                    registry_value: best_known,
                    found,
                });
            }
            distances.push(d);
        }
        rows.push(DistanceRow { instance: inst.id.clone(), best_known, distances });
    }
    Ok(DistanceTable { solvers: solvers.iter().map(|s| s.name().to_string()).collect(), rows, updates })
}

/// One run of one arm of the perturbation comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbSample {
    pub period: f64,
    pub seed: u64,
    pub best_seen_energy: f64,
    pub final_energy: f64,
}

/// Arm `k ≥ 1` against arm 0 over the shared seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbSummary {
    pub period: f64,
    pub reference_period: f64,
    pub pairs: usize,
    /// Pairs where this arm's best-seen energy is at most the reference's.
    pub not_worse: usize,
    pub strictly_better: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbReport {
    pub samples: Vec<AbSample>,
    pub summaries: Vec<AbSummary>,
}

impl AbReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("period,seed,best_seen_energy,final_energy\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{},{}", s.period, s.seed, s.best_seen_energy, s.final_energy);
        }
        out
    }
}

/// Runs the machine once per (period, seed). Arms share seeds, so each pair
/// starts from the same voltages; the first period is the reference arm.
pub fn perturbation_ab_test(
    inst: &Instance,
    base: &BrimSolverConfig,
    periods: &[f64],
    opts: &BatchOptions,
) -> Result<AbReport> {
    if periods.len() < 2 {
        return Err(Error::config("perturbation comparison needs at least two periods"));
    }
    opts.validate()?;
    let mut samples = Vec::with_capacity(periods.len() * opts.runs);
    let mut arms: Vec<Vec<f64>> = Vec::with_capacity(periods.len());
    for &period in periods {
        let mut cfg = base.clone();
        cfg.settings.perturb.period = period;
        let batch = run_batch(&SolverConfig::Brim(cfg), inst, &BatchOptions { timing: false, ..*opts }, None)?;
        arms.push(batch.reports.iter().map(|r| r.best_seen_energy).collect());
        samples.extend(batch.reports.iter().map(|r| AbSample {
            period,
            seed: r.seed,
            best_seen_energy: r.best_seen_energy,
            final_energy: r.energy,
        }));
    }
    let reference = &arms[0];
    let summaries = arms
        .iter()
        .zip(periods)
        .skip(1)
        .map(|(arm, &period)| AbSummary {
            period,
            reference_period: periods[0],
            pairs: arm.len(),
            not_worse: arm.iter().zip(reference).filter(|(a, r)| a <= r).count(),
            strictly_better: arm.iter().zip(reference).filter(|(a, r)| a < r).count(),
        })
        .collect();
    Ok(AbReport { samples, summaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::AsaSettings;
    use crate::config::SaConfig;
    use crate::graph::{gen_random_graph, WeightModel};

    fn tiny(seed: u64) -> Instance {
        Instance::new(
            format!("tiny{seed}"),
            gen_random_graph(12, 0.5, WeightModel::IntRange { lo: -2, hi: 4 }, seed).unwrap(),
        )
    }

    fn quick_brim() -> SolverConfig {
        SolverConfig::default_for(SolverKind::Brim).with_budget(20.0).unwrap()
    }

    #[test]
    fn registry_lookup_and_aliases() {
        let r = BestKnownRegistry::builtin();
        assert_eq!(r.get("G1"), Some(11624.0));
        assert_eq!(r.get("G01"), Some(11624.0));
        assert_eq!(r.get("G22"), Some(13359.0));
        assert_eq!(r.get("G39"), Some(2408.0));
        assert_eq!(r.get("G11"), Some(564.0));
        assert_eq!(r.source("G15"), Some("WU2013166+funda_cor2017"));
        assert_eq!(r.get("G99"), None);
        assert_eq!(BestKnownRegistry::parse(&r.to_text()).unwrap(), r);
        assert!(BestKnownRegistry::parse("G1 5\n").is_err());
        assert!(BestKnownRegistry::parse("G1 5 a\nG01 6 b\n").is_err());
    }

    #[test]
    fn report_row_layout() {
        let inst = tiny(1);
        let mut r = run_once(&quick_brim(), &inst, 3, false).unwrap();
        assert_eq!(r.csv_row().split(',').count(), 8);
        assert!(r.csv_row().starts_with("brim,tiny1,3,20,,"));
        assert!(r.csv_row().ends_with(','));
        r.distance = Some(21.0);
        assert!(r.csv_row().ends_with(",21"));
        assert_eq!(r.energy, inst.graph.total_weight() - 2.0 * r.cut);
    }

    #[test]
    fn batch_best_and_determinism() {
        let inst = tiny(2);
        let cfg = SolverConfig::Sa(SaConfig { sweeps: 3, ..SaConfig::default() });
        let one =
            run_batch(&cfg, &inst, &BatchOptions { workers: Some(1), ..BatchOptions::new(12, 40) }, None).unwrap();
        let eight =
            run_batch(&cfg, &inst, &BatchOptions { workers: Some(8), ..BatchOptions::new(12, 40) }, None).unwrap();
        assert_eq!(one, eight);
        assert_eq!(one.to_csv(), eight.to_csv());
        let best = one.best();
        for r in &one.reports {
            assert!(r.cut < best.cut || (r.cut == best.cut && r.seed >= best.seed));
        }
        let single = run_batch(&cfg, &inst, &BatchOptions::new(1, 40), None).unwrap();
        assert_eq!(single.best(), &one.reports[0]);
    }

    #[test]
    fn best_of_k_is_monotone() {
        let inst = tiny(3);
        let cfg = SolverConfig::Asa(AsaSettings { cycles: 2, p0: 0.2 });
        let mut prev = f64::MIN;
        for k in 1..10 {
            let b = run_batch(&cfg, &inst, &BatchOptions::new(k, 0), None).unwrap().best().cut;
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn batch_fault_carries_metadata() {
        let inst = tiny(4);
        let mut cfg = BrimSolverConfig::default();
        cfg.settings.integrator =
            crate::dynamics::IntegratorKind::AdaptiveRk45 { rel_tol: 1e-300, abs_tol: 1e-300, dt_min: 1e-3 };
        let err = run_batch(&SolverConfig::Brim(cfg), &inst, &BatchOptions::new(2, 5), None).unwrap_err();
        assert!(matches!(&err, Error::Run { seed: 5, instance, .. } if instance == "tiny4"), "{err}");
        assert!(err.is_simulation_fault());
    }

    #[test]
    fn distances_and_updates() {
        let insts: Vec<Instance> = (0..3).map(tiny).collect();
        let mut reg = BestKnownRegistry::default();
        for i in &insts {
            reg.update(&i.id, brute_force_maxcut(&i.graph).unwrap().0, "exact");
        }
        let t = distance_table(&[TableSolver::BruteForce], &insts, &BatchOptions::new(1, 0), &reg).unwrap();
        assert!(t.rows.iter().all(|r| r.distances == vec![0.0]));
        assert!(t.updates.is_empty());
        assert!(t.to_csv().starts_with("instance,best,exact\n"));

        let stale = reg.get("tiny0").unwrap() - 3.0;
        reg.update("tiny0", stale, "stale");
        let t = distance_table(&[TableSolver::BruteForce], &insts[..1], &BatchOptions::new(1, 0), &reg).unwrap();
        assert_eq!(t.rows[0].distances, vec![-3.0]);
        assert_eq!(t.updates.len(), 1);

        let err = distance_table(&[TableSolver::BruteForce], &[tiny(9)], &BatchOptions::new(1, 0), &reg).unwrap_err();
        assert!(matches!(err, Error::Config(m) if m.contains("tiny9")));
    }

    #[test]
    fn registry_distance_arithmetic() {
        let reg = BestKnownRegistry::builtin();
        assert_eq!(reg.get("G01").unwrap() - 11603.0, 21.0);
    }

    #[test]
    fn single_edge_sweep_sits_on_the_floor() {
        let inst = Instance::new("edge", Graph::new(2, [(0, 1, 1.0)]).unwrap());
        let budgets = log_spaced(10.0, 100.0, 3);
        assert_eq!(budgets.len(), 3);
        assert!((budgets[1] - 10f64.powf(1.5)).abs() < 1e-9);
        let spec = SweepSpec { solver: quick_brim(), budgets, runs: 3, seed_base: 0 };
        let pts = sweep_anneal_time(&spec, &inst, None).unwrap();
        assert!(pts.iter().all(|p| p.best_energy == -1.0 && p.median_energy == -1.0));
        assert_eq!(sweep_to_csv(&pts).lines().next(), Some(SWEEP_HEADER));
        let one = SweepSpec { budgets: vec![5.0], ..spec.clone() };
        assert_eq!(sweep_anneal_time(&one, &inst, None).unwrap().len(), 1);
        let bad = SweepSpec { budgets: vec![5.0, 5.0], ..spec };
        assert!(sweep_anneal_time(&bad, &inst, None).is_err());
    }

    #[test]
    fn inversions() {
        assert!(trend_inversions(&[3.0, 2.0, 2.0, 1.0]).is_empty());
        assert_eq!(trend_inversions(&[3.0, 2.0, 2.5, 1.0]), vec![(2, 0.5)]);
        assert_eq!(median(vec![3.0, 1.0, 2.0, 10.0]), 2.5);
    }

    #[test]
    fn ab_without_events_is_identical() {
        let inst = tiny(5);
        let SolverConfig::Brim(base) = quick_brim() else { unreachable!() };
        let r = perturbation_ab_test(&inst, &base, &[f64::INFINITY, f64::INFINITY], &BatchOptions::new(4, 0)).unwrap();
        assert_eq!(r.summaries[0].not_worse, 4);
        assert_eq!(r.summaries[0].strictly_better, 0);
        let (a, b) = r.samples.split_at(4);
        for (x, y) in a.iter().zip(b) {
            assert_eq!(x.best_seen_energy, y.best_seen_energy);
            assert_eq!(x.final_energy, y.final_energy);
        }
    }
}
