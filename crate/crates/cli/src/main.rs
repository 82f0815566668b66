//! `brim` command-line tool.
//!
//! Settings are layered: built-in defaults, then the `--config` file, then
//! explicit flags. Exit status is 0 on success, 1 on usage or input errors,
//! 2 when a solver or the integrator faults.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use brim_core::config::{SolverConfig, SolverKind};
use brim_core::graph::{
    brute_force_maxcut_with_cap, gen_random_graph, gen_toroidal_grid, serialize_gset, WeightModel,
    DEFAULT_BRUTE_FORCE_CAP,
};
use brim_core::harness::{
    distance_table, log_spaced, perturbation_ab_test, run_batch, sweep_anneal_time, sweep_to_csv, BatchOptions,
    BestKnownRegistry, Instance, SweepSpec, TableSolver,
};
use brim_core::{Error, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "brim", version, about = "Ising machine simulator and Max-Cut benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a solver k times on one instance and print one report row per run.
    Solve(SolveArgs),
    /// Best and median energy across a list of run budgets.
    Sweep(SweepArgs),
    /// Exact maximum cut by exhaustive search.
    Oracle(OracleArgs),
    /// Write a random instance in Gset format.
    Generate(GenerateArgs),
    /// Paired comparison of machine runs that differ only in perturbation period.
    AbPerturb(AbArgs),
    /// Distance of each solver's best-of-k cut from the best-known value.
    Table(TableArgs),
}

#[derive(Debug, Args)]
struct RunFlags {
    /// Solver: brim, sa, asa or oim. Overrides the config file's `solver` line.
    #[arg(long)]
    solver: Option<SolverKind>,
    /// Flat `key = value` solver config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of seeded runs.
    #[arg(long, default_value_t = 1)]
    runs: usize,
    /// First seed; run k uses seed + k.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on parallel workers.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Instance file in Gset format.
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    run: RunFlags,
    /// Run budget: model time for brim/oim, sweeps for sa, cycles for asa.
    #[arg(long)]
    budget: Option<f64>,
    /// Best-known registry file; the bundled one when absent.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Fill the wall_ms column. Output is then no longer reproducible.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    run: RunFlags,
    /// Comma-separated, strictly increasing budgets.
    #[arg(long, value_delimiter = ',', conflicts_with = "log_range")]
    budgets: Vec<f64>,
    /// `LO:HI:COUNT` log-spaced budgets.
    #[arg(long)]
    log_range: Option<String>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Largest vertex count to enumerate.
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
    cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Vertex count of a random graph.
    #[arg(long, required_unless_present = "torus")]
    n: Option<usize>,
    /// Edge probability of a random graph.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// `ROWSxCOLS` toroidal grid instead of a random graph.
    #[arg(long, conflicts_with = "n")]
    torus: Option<String>,
    /// unit, pm1, int:LO:HI or real:LO:HI.
    #[arg(long, default_value = "pm1")]
    weights: WeightModel,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AbArgs {
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    run: RunFlags,
    /// Comma-separated perturbation periods; the first is the reference arm.
    #[arg(long, value_delimiter = ',', default_value = "inf,3")]
    periods: Vec<f64>,
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Instance files; repeat the flag for several.
    #[arg(long, required = true)]
    instance: Vec<PathBuf>,
    /// Comma-separated solvers, one column each.
    #[arg(long, value_delimiter = ',', default_value = "brim,sa,asa")]
    solver: Vec<SolverKind>,
    /// Solver configs; each replaces the defaults of the solver it names.
    #[arg(long)]
    config: Vec<PathBuf>,
    /// Add an exhaustive-search column.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    registry: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn load_config(path: Option<&Path>, kind: Option<SolverKind>) -> Result<SolverConfig> {
    match path {
        Some(p) => SolverConfig::parse(&read_text(p)?, kind),
        None => Ok(SolverConfig::default_for(kind.unwrap_or(SolverKind::Brim))),
    }
}

fn load_registry(path: Option<&Path>) -> Result<BestKnownRegistry> {
    match path {
        Some(p) => BestKnownRegistry::parse(&read_text(p)?),
        None => Ok(BestKnownRegistry::builtin()),
    }
}

impl RunFlags {
    fn options(&self) -> BatchOptions {
        BatchOptions { runs: self.runs, seed_base: self.seed, workers: self.workers, timing: false }
    }

    fn solver_config(&self, budget: Option<f64>) -> Result<SolverConfig> {
        let cfg = load_config(self.config.as_deref(), self.solver)?;
        match budget {
            Some(b) => cfg.with_budget(b),
            None => Ok(cfg),
        }
    }
}

fn solve(a: SolveArgs) -> Result<()> {
    let inst = Instance::from_gset_file(&a.instance)?;
    let cfg = a.run.solver_config(a.budget)?;
    let registry = load_registry(a.registry.as_deref())?;
    let opts = BatchOptions { timing: a.timing, ..a.run.options() };
    let batch = run_batch(&cfg, &inst, &opts, Some(&registry))?;
    emit(a.run.out.as_deref(), &batch.to_csv())
}

fn sweep(a: SweepArgs) -> Result<()> {
    let inst = Instance::from_gset_file(&a.instance)?;
    let budgets = match &a.log_range {
        Some(r) => {
            let parts: Vec<&str> = r.split(':').collect();
            let bad = || Error::Config(format!("--log-range expects LO:HI:COUNT, got `{r}`"));
            let [lo, hi, count] = parts[..] else { return Err(bad()) };
            let lo: f64 = lo.parse().map_err(|_| bad())?;
            let hi: f64 = hi.parse().map_err(|_| bad())?;
            let count: usize = count.parse().map_err(|_| bad())?;
            if !(lo > 0.0 && hi > lo) {
                return Err(bad());
            }
            log_spaced(lo, hi, count)
        }
        None => a.budgets.clone(),
    };
    let spec = SweepSpec { solver: a.run.solver_config(None)?, budgets, runs: a.run.runs, seed_base: a.run.seed };
    let points = sweep_anneal_time(&spec, &inst, a.run.workers)?;
    emit(a.run.out.as_deref(), &sweep_to_csv(&points))
}

fn oracle(a: OracleArgs) -> Result<()> {
    let inst = Instance::from_gset_file(&a.instance)?;
    let (cut, spins) = brute_force_maxcut_with_cap(&inst.graph, a.cap)?;
    emit(a.out.as_deref(), &format!("max_cut,spins\n{cut},{}\n", spins.to_signs()))
}

fn generate(a: GenerateArgs) -> Result<()> {
    let g = match (&a.torus, a.n) {
        (Some(t), _) => {
            let bad = || Error::Config(format!("--torus expects ROWSxCOLS, got `{t}`"));
            let (r, c) = t.split_once('x').ok_or_else(bad)?;
            gen_toroidal_grid(r.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?, a.weights, a.seed)?
        }
        (None, Some(n)) => gen_random_graph(n, a.density, a.weights, a.seed)?,
        (None, None) => return Err(Error::Config("either --n or --torus is required".into())),
    };
    emit(a.out.as_deref(), &serialize_gset(&g))
}

fn ab_perturb(a: AbArgs) -> Result<()> {
    let inst = Instance::from_gset_file(&a.instance)?;
    let cfg = a.run.solver_config(a.budget)?;
    let SolverConfig::Brim(base) = cfg else {
        return Err(Error::Config(format!("ab-perturb needs the brim solver, got {}", cfg.kind())));
    };
    let report = perturbation_ab_test(&inst, &base, &a.periods, &a.run.options())?;
    for s in &report.summaries {
        eprintln!(
            "period {} vs {}: not worse in {}/{} pairs, strictly better in {}",
            s.period, s.reference_period, s.not_worse, s.pairs, s.strictly_better
        );
    }
    emit(a.run.out.as_deref(), &report.to_csv())
}

fn table(a: TableArgs) -> Result<()> {
    let instances = a.instance.iter().map(Instance::from_gset_file).collect::<Result<Vec<_>>>()?;
    let mut configs: Vec<SolverConfig> = a.solver.iter().map(|&k| SolverConfig::default_for(k)).collect();
    for path in &a.config {
        let cfg = SolverConfig::parse(&read_text(path)?, None)?;
        match configs.iter_mut().find(|c| c.kind() == cfg.kind()) {
            Some(slot) => *slot = cfg,
            None => configs.push(cfg),
        }
    }
    let mut solvers: Vec<TableSolver> = configs.into_iter().map(TableSolver::Heuristic).collect();
    if a.exact {
        solvers.push(TableSolver::BruteForce);
    }
    let registry = load_registry(a.registry.as_deref())?;
    let opts = BatchOptions { runs: a.runs, seed_base: a.seed, workers: a.workers, timing: false };
    let t = distance_table(&solvers, &instances, &opts, &registry)?;
    for u in &t.updates {
        eprintln!(
            "registry update: {} found {} on {} (registry has {})",
            u.solver, u.found, u.instance, u.registry_value
        );
    }
    emit(a.out.as_deref(), &t.to_csv())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Sweep(a) => sweep(a),
        Command::Oracle(a) => oracle(a),
        Command::Generate(a) => generate(a),
        Command::AbPerturb(a) => ab_perturb(a),
        Command::Table(a) => table(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_simulation_fault() { 2 } else { 1 })
        }
    }
}
