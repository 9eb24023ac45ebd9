//! Batch command-line front end: validate initial data, compute invariants,
//! fuzz move-invariance, and generate example systems and complexes.
//!
//! Exit codes: 0 success, 1 failed checks or invariance mismatch, 2 bad
//! input (parse errors, bad parameters), 3 resource limits (coloring cap or
//! contraction memory budget).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use defect_tqft::complex::{seed_complex, SeedName};
use defect_tqft::examples;
use defect_tqft::frobenius_data::{check_system, CheckId};
use defect_tqft::fuzz::{run_fuzz, run_fuzz_against, FuzzConfig};
use defect_tqft::io;
use defect_tqft::moves::Lcg64;
use defect_tqft::statesum::{normalized_invariant, raw_invariant, EvalConfig, EvalError, Method};
use defect_tqft::{BarredOrder, CurveSurfaceComplex, SystemData};

#[derive(Parser)]
#[command(
    name = "defect-tqft",
    about = "Exact state-sum invariants of surfaces with an embedded defect curve",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the 35 invariance equations and auxiliary laws of a system.
    Check {
        /// System JSON file.
        system: PathBuf,
    },
    /// Compute the normalized invariant of a complex under a system.
    Invariant {
        /// System JSON file.
        system: PathBuf,
        /// Complex JSON file.
        complex: PathBuf,
        /// Evaluation route: auto, brute or contract.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Also write the result record as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Random-walk the complex through flag-like moves and assert the
    /// invariant stays exactly constant at every checkpoint.
    Fuzz {
        /// System JSON file.
        system: PathBuf,
        /// Complex JSON file.
        complex: PathBuf,
        /// Seed, or an inclusive seed range `A-B` (each seed runs
        /// independently).
        #[arg(long, default_value = "1")]
        seed: String,
        /// Number of moves to walk.
        #[arg(long, default_value_t = 200)]
        steps: u32,
        /// Recompute the invariant every this many steps.
        #[arg(long = "checkpoint-every", default_value_t = 25)]
        checkpoint_every: u32,
        /// Edge-count bound above which growth moves are excluded
        /// (default: starting edges + 24).
        #[arg(long = "max-edges")]
        max_edges: Option<usize>,
        /// Evaluate with the deliberately wrong barred-argument order.
        /// Exists so the test-suite can show the fuzzer detects the
        /// convention; a correct system must then fail.
        #[arg(long = "wrong-barred-order", hide = true)]
        wrong_barred_order: bool,
    },
    /// Generate an example system file.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Barycentrically subdivide a complex file.
    Subdivide {
        /// Complex JSON file.
        complex: PathBuf,
        /// Output path.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Write one of the named starting complexes.
    Seed {
        /// plain_sphere, plain_torus, sphere_equator or torus_meridian.
        #[arg(long)]
        name: String,
        /// Output path.
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Group algebra K[G] with the regular module and trivial defect.
    GroupAlgebra {
        /// Group table JSON file.
        #[arg(long)]
        table: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Full (G, H, X) system: A = K[G], C = K[H], B = Span(X).
    Gset {
        /// Group table for G.
        #[arg(long)]
        g: PathBuf,
        /// Group table for H.
        #[arg(long)]
        h: PathBuf,
        /// Action table for X.
        #[arg(long)]
        action: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Cocycle-twisted (G, H, X) system.
    Twisted {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        action: PathBuf,
        /// JSON file with alpha, beta, gamma tables of nonzero rationals.
        #[arg(long)]
        cocycles: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Matrix system A = Mat(n×n), B = Mat(m×n), C = Mat(m×m).
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Replace the defect part of an existing system by the trivial C = K.
    TrivialDefect {
        /// System JSON file to take A and B from.
        #[arg(long)]
        from: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output path.
    #[arg(short, long)]
    out: PathBuf,
}

/// An error with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn resource(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }

    fn checks(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<SystemData, Failure> {
    io::system_from_json(&read_file(path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<CurveSurfaceComplex, Failure> {
    io::complex_from_json(&read_file(path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn eval_failure(e: EvalError) -> Failure {
    match e {
        EvalError::TooLarge { .. } => Failure::resource(format!(
            "{e}; rerun with --method=contract or raise the cap"
        )),
        EvalError::OutOfMemoryBudget { .. } => Failure::resource(format!(
            "{e}; rerun with --method=brute if the coloring space is small enough"
        )),
        EvalError::InvalidSystem(_) | EvalError::InvalidComplex(_) => Failure::checks(e.to_string()),
        other => Failure::input(other.to_string()),
    }
}

fn cmd_check(path: &Path) -> Result<(), Failure> {
    let system = load_system(path)?;
    let results = check_system(&system);
    let mut eq_pass = 0;
    let mut eq_total = 0;
    let mut law_pass = 0;
    let mut law_total = 0;
    for r in &results {
        println!("{r}");
        match r.id {
            CheckId::Equation(_) => {
                eq_total += 1;
                if r.passed {
                    eq_pass += 1;
                }
            }
            _ => {
                law_total += 1;
                if r.passed {
                    law_pass += 1;
                }
            }
        }
    }
    match system.rho() {
        Some(rho) => println!("loop constant ρ = {rho}"),
        None => println!("loop constant ρ unavailable (A not projectively special)"),
    }
    match system.lambda() {
        Some(l) => println!("loop constant λ = {l}"),
        None => println!("loop constant λ unavailable"),
    }
    println!("{eq_pass}/{eq_total} equations hold, {law_pass}/{law_total} laws hold");
    if eq_pass == eq_total && law_pass == law_total {
        Ok(())
    } else {
        Err(Failure::checks("system fails validation".to_owned()))
    }
}

fn cmd_invariant(
    system_path: &Path,
    complex_path: &Path,
    method: &str,
    json_out: Option<&Path>,
) -> Result<(), Failure> {
    let method: Method = method.parse().map_err(Failure::input)?;
    let system = load_system(system_path)?;
    let cx = load_complex(complex_path)?;
    let counts = cx
        .class_counts()
        .map_err(|e| Failure::input(format!("{}: {e}", complex_path.display())))?;
    let cfg = EvalConfig::default();
    let value = normalized_invariant(&system, &cx, method, &cfg).map_err(eval_failure)?;
    println!(
        "class counts: |T2^(0,+)| = {}, |T2^(0,-)| = {}, |T2^(1,+)| = {}, |T2^(1,-)| = {}, |T2^(2,+)| = {}, |T2^(2,-)| = {}",
        counts[0][0], counts[0][1], counts[1][0], counts[1][1], counts[2][0], counts[2][1]
    );
    println!(
        "|T0^0| = {} off-curve vertices, |T0^1| = {} on-curve vertices",
        value.n_off_vertices, value.n_on_vertices
    );
    println!("unnormalized = {}", value.unnormalized);
    println!("normalized = {}", value.normalized);
    if let Some(path) = json_out {
        write_file(path, &io::invariant_to_json(&value))?;
    }
    Ok(())
}

fn parse_seed_range(spec: &str) -> Result<(u64, u64), Failure> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| Failure::input(format!("bad seed {s:?}")))
    };
    match spec.split_once('-') {
        None => {
            let s = parse_one(spec)?;
            Ok((s, s))
        }
        Some((a, b)) => {
            let (a, b) = (parse_one(a)?, parse_one(b)?);
            if a > b {
                return Err(Failure::input(format!("empty seed range {spec:?}")));
            }
            Ok((a, b))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    system_path: &Path,
    complex_path: &Path,
    seed_spec: &str,
    steps: u32,
    checkpoint_every: u32,
    max_edges: Option<usize>,
    wrong_barred_order: bool,
) -> Result<(), Failure> {
    let system = load_system(system_path)?;
    let cx = load_complex(complex_path)?;
    let (seed_lo, seed_hi) = parse_seed_range(seed_spec)?;
    println!(
        "# generator: 64-bit LCG, state <- state*{} + {}",
        Lcg64::MULTIPLIER,
        Lcg64::INCREMENT
    );
    let mut all_passed = true;
    for seed in seed_lo..=seed_hi {
        let eval = EvalConfig {
            barred_order: if wrong_barred_order {
                BarredOrder::ForwardEncounter
            } else {
                BarredOrder::Paper
            },
            ..EvalConfig::default()
        };
        let config = FuzzConfig { seed, steps, checkpoint_every, max_edges, eval };
        println!(
            "# seed {seed}: steps {steps}, checkpoint every {checkpoint_every}{}",
            if wrong_barred_order { ", WRONG barred-argument order" } else { "" }
        );
        let report = if wrong_barred_order {
            let initial =
                raw_invariant(&system, &cx, Method::Auto, &config.eval).map_err(eval_failure)?;
            run_fuzz_against(&system, &cx, &config, initial)
        } else {
            run_fuzz(&system, &cx, &config)
        }
        .map_err(eval_failure)?;
        println!("initial normalized = {}", report.initial.normalized);
        for c in &report.checkpoints {
            println!(
                "checkpoint step {}: {} ({})",
                c.step,
                c.normalized,
                if c.matches { "match" } else { "MISMATCH" }
            );
        }
        let histogram: Vec<String> =
            report.histogram.iter().map(|(k, n)| format!("{k}={n}")).collect();
        println!("move histogram: {}", histogram.join(" "));
        match &report.mismatch {
            None => println!("seed {seed}: PASS ({} steps, value constant)", report.steps_run),
            Some(m) => {
                all_passed = false;
                println!(
                    "seed {seed}: FAIL at step {} (expected {}, got {}); trace:",
                    m.step, m.expected, m.actual
                );
                for action in &m.trace {
                    println!("  {action}");
                }
            }
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::checks("invariance mismatch".to_owned()))
    }
}

fn load_group(path: &Path) -> Result<examples::GroupTable, Failure> {
    io::group_table_from_json(&read_file(path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn cmd_gen(what: GenCommand) -> Result<(), Failure> {
    let (out, system) = match what {
        GenCommand::GroupAlgebra { table, out } => {
            let g = load_group(&table)?;
            let a = examples::group_algebra(&g);
            let b = examples::regular_module(&a);
            let sys = examples::trivial_defect_system(a, b)
                .map_err(|e| Failure::input(e.to_string()))?;
            (out, sys)
        }
        GenCommand::Gset { g, h, action, out } => {
            let gt = load_group(&g)?;
            let ht = load_group(&h)?;
            let x = io::action_table_from_json(&read_file(&action)?, &gt, &ht)
                .map_err(|e| Failure::input(format!("{}: {e}", action.display())))?;
            let sys = examples::gset_system(&gt, &ht, &x)
                .map_err(|e| Failure::input(e.to_string()))?;
            (out, sys)
        }
        GenCommand::Twisted { g, h, action, cocycles, out } => {
            let gt = load_group(&g)?;
            let ht = load_group(&h)?;
            let x = io::action_table_from_json(&read_file(&action)?, &gt, &ht)
                .map_err(|e| Failure::input(format!("{}: {e}", action.display())))?;
            let raw: io::CocycleFile = serde_json::from_str(&read_file(&cocycles)?)
                .map_err(|e| Failure::input(format!("{}: {e}", cocycles.display())))?;
            let alpha = io::scalar_table(&raw.alpha).map_err(|e| Failure::input(e.to_string()))?;
            let beta = io::scalar_table(&raw.beta).map_err(|e| Failure::input(e.to_string()))?;
            let gamma = io::scalar_table(&raw.gamma).map_err(|e| Failure::input(e.to_string()))?;
            let sys = examples::twisted_system(&gt, &ht, &x, &alpha, &beta, &gamma)
                .map_err(|e| Failure::input(e.to_string()))?;
            (out, sys)
        }
        GenCommand::Matrix { n, m, out } => {
            let sys = examples::matrix_system(n, m).map_err(|e| Failure::input(e.to_string()))?;
            (out, sys)
        }
        GenCommand::TrivialDefect { from, out } => {
            let base = load_system(&from)?;
            let sys = examples::trivial_defect_system(base.algebra().clone(), base.module().clone())
                .map_err(|e| Failure::input(e.to_string()))?;
            (out, sys)
        }
    };
    write_file(&out.out, &io::system_to_json(&system))?;
    println!("wrote {}", out.out.display());
    Ok(())
}

fn cmd_subdivide(complex_path: &Path, out: &Path) -> Result<(), Failure> {
    let cx = load_complex(complex_path)?;
    let sub = cx
        .barycentric_subdivide()
        .map_err(|e| Failure::input(format!("{}: {e}", complex_path.display())))?;
    write_file(out, &io::complex_to_json(&sub))?;
    println!(
        "wrote {} ({} vertices, {} edges, {} triangles)",
        out.display(),
        sub.n_vertices(),
        sub.n_edges(),
        sub.n_triangles()
    );
    Ok(())
}

fn cmd_seed(name: &str, out: &Path) -> Result<(), Failure> {
    let seed: SeedName = name.parse().map_err(|e| Failure::input(format!("{e}")))?;
    let cx = seed_complex(seed);
    write_file(out, &io::complex_to_json(&cx))?;
    println!(
        "wrote {} ({} vertices, {} edges, {} triangles)",
        out.display(),
        cx.n_vertices(),
        cx.n_edges(),
        cx.n_triangles()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { system } => cmd_check(&system),
        Command::Invariant { system, complex, method, json } => {
            cmd_invariant(&system, &complex, &method, json.as_deref())
        }
        Command::Fuzz {
            system,
            complex,
            seed,
            steps,
            checkpoint_every,
            max_edges,
            wrong_barred_order,
        } => cmd_fuzz(
            &system,
            &complex,
            &seed,
            steps,
            checkpoint_every,
            max_edges,
            wrong_barred_order,
        ),
        Command::Gen { what } => cmd_gen(what),
        Command::Subdivide { complex, out } => cmd_subdivide(&complex, &out),
        Command::Seed { name, out } => cmd_seed(&name, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
