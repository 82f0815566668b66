use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use brim_core::graph::{brute_force_maxcut, read_gset_file};

fn brim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generate(dir: &Path, name: &str, n: &str, seed: &str) -> PathBuf {
    let path = dir.join(name);
    let o = brim(&[
        "generate",
        "--n",
        n,
        "--density",
        "0.4",
        "--weights",
        "int:-3:6",
        "--seed",
        seed,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn generate_then_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "tiny16.gset", "16", "3");
    let o = brim(&["oracle", "--instance", path.to_str().unwrap()]);
    assert!(o.status.success());
    let (best, spins) = brute_force_maxcut(&read_gset_file(&path).unwrap()).unwrap();
    assert_eq!(stdout(&o), format!("max_cut,spins\n{best},{}\n", spins.to_signs()));

    let refused = brim(&["oracle", "--instance", path.to_str().unwrap(), "--cap", "10"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("raise the cap"));
}

#[test]
fn torus_generation() {
    let o = brim(&["generate", "--torus", "4x5", "--weights", "pm1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("20 40\n"));
}

#[test]
fn solve_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "g.gset", "30", "1");
    let p = path.to_str().unwrap();
    let args = ["solve", "--instance", p, "--solver", "brim", "--runs", "6", "--seed", "7", "--budget", "10"];
    let a = brim(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let text = stdout(&a);
    assert!(text.starts_with("solver,instance,seed,budget,wall_ms,cut,energy,distance\n"));
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().nth(1).unwrap().starts_with("brim,g,7,10,,"));

    let b = brim(&[&args[..], &["--workers", "1"]].concat());
    let c = brim(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let out = dir.path().join("r.csv");
    let d = brim(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert!(d.status.success() && d.stdout.is_empty());
    assert_eq!(fs::read_to_string(out).unwrap(), text);
}

#[test]
fn every_solver_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "g.gset", "20", "2");
    for s in ["brim", "sa", "asa", "oim"] {
        let o = brim(&["solve", "--instance", path.to_str().unwrap(), "--solver", s, "--runs", "2", "--budget", "20"]);
        assert!(o.status.success(), "{s}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).lines().nth(1).unwrap().starts_with(&format!("{s},g,0,20,")));
    }
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "g.gset", "20", "2");
    let cfg = dir.path().join("c.cfg");
    fs::write(&cfg, "solver = sa\nsweeps = 40\n").unwrap();
    let c = cfg.to_str().unwrap();
    let p = path.to_str().unwrap();
    let o = brim(&["solve", "--instance", p, "--config", c]);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("sa,g,0,40,"));
    let o = brim(&["solve", "--instance", p, "--config", c, "--budget", "5"]);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("sa,g,0,5,"));
    // The file's keys belong to SA, so forcing another solver rejects them.
    let o = brim(&["solve", "--instance", p, "--config", c, "--solver", "asa"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["solve", "--solver", "nosuch", "--instance", "x"][..],
        &["solve", "--instance", "x", "--bogus"][..],
        &["frobnicate"][..],
        &["solve", "--instance", "/nonexistent/file.gset"][..],
    ] {
        let o = brim(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn simulation_fault_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "g.gset", "20", "2");
    let cfg = dir.path().join("stiff.cfg");
    fs::write(&cfg, "integrator = rk45\nrel_tol = 1e-300\nabs_tol = 1e-300\ndt_min = 0.001\n").unwrap();
    let o = brim(&["solve", "--instance", path.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fixed-step"));
}

#[test]
fn help_lists_flags() {
    let expected: &[(&str, &[&str])] = &[
        ("solve", &["--instance", "--solver", "--config", "--runs", "--seed", "--out", "--workers", "--budget"]),
        ("sweep", &["--instance", "--solver", "--budgets", "--log-range", "--runs", "--seed", "--out"]),
        ("oracle", &["--instance", "--cap", "--out"]),
        ("generate", &["--n", "--density", "--torus", "--weights", "--seed", "--out"]),
        ("ab-perturb", &["--instance", "--periods", "--config", "--runs", "--seed", "--out"]),
        ("table", &["--instance", "--solver", "--config", "--exact", "--runs", "--registry", "--out"]),
    ];
    for (cmd, flags) in expected {
        let o = brim(&[cmd, "--help"]);
        assert!(o.status.success());
        let text = stdout(&o);
        for f in *flags {
            assert!(text.contains(f), "{cmd} --help lacks {f}");
        }
    }
}

#[test]
fn sweep_and_ab_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "t.gset", "14", "5");
    let p = path.to_str().unwrap();

    let o = brim(&["sweep", "--instance", p, "--budgets", "5,10,20", "--runs", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("budget,best_energy,median_energy,runs\n"));
    assert_eq!(text.lines().count(), 4);
    let o = brim(&["sweep", "--instance", p, "--log-range", "1:100:3", "--runs", "2"]);
    assert!(stdout(&o).lines().nth(2).unwrap().starts_with("10,"));
    let o = brim(&["sweep", "--instance", p, "--budgets", "10,5"]);
    assert_eq!(o.status.code(), Some(1));

    let o = brim(&["ab-perturb", "--instance", p, "--periods", "inf,2", "--runs", "3", "--budget", "20"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("period,seed,best_seen_energy,final_energy\ninf,0,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pairs"));

    let (best, _) = brute_force_maxcut(&read_gset_file(&path).unwrap()).unwrap();
    let reg = dir.path().join("reg.txt");
    fs::write(&reg, format!("t {best} exhaustive\n")).unwrap();
    let o = brim(&[
        "table",
        "--instance",
        p,
        "--solver",
        "sa",
        "--exact",
        "--runs",
        "4",
        "--registry",
        reg.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), format!("instance,best,sa,exact\nt,{best},0,0\n"));

    let o = brim(&["table", "--instance", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no best-known value for: t"));
}
