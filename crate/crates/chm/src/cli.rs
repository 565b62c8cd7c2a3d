//! Command-line surface over the library: construction, verification,
//! censuses, transforms, sweeps, lemma suites, and unbiasedness screening,
//! all speaking the text matrix format.
//!
//! Exit codes: 0 on success or a passing suite, 1 on violations,
//! unachievable requests, or failed verification, 2 on usage and parse
//! errors. `--json` switches to a machine rendering with the same fields.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{
    self, format_recipe_table, parse_recipe_table, recipe_table, regenerate_recipe_table,
    ConstructionError,
};
use crate::equivalence::{are_equivalent, dephase, EquivalenceError};
use crate::io;
use crate::matrix::OrthoCheck;
use crate::mubscreen::{screen, Verdict};
use crate::search::{
    self, audit_order6_counts, classify_three_rows, grid_sweep, run_predicate_corpus, sum3_oracle,
    sum4_oracle, SweepMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(name = "chm", version, about = "Complex Hadamard matrix toolkit", max_term_width = 100)]
struct Cli {
    /// Emit machine-readable JSON instead of key=value lines
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps and audits (falls back to HC_THREADS, then 1)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyModeArg {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepModeArg {
    Full,
    Parameterized,
    FullPruned,
}

impl From<SweepModeArg> for SweepMode {
    fn from(m: SweepModeArg) -> SweepMode {
        match m {
            SweepModeArg::Full => SweepMode::Full,
            SweepModeArg::Parameterized => SweepMode::Parameterized,
            SweepModeArg::FullPruned => SweepMode::FullPruned,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    /// Zero-sum triples over a roots grid
    Sum3,
    /// Zero-sum quadruples over a roots grid
    Sum4,
    /// Classification of the order-six three-row systems
    Threerows,
    /// Structural predicates over a random-orbit corpus (requires --seed)
    Predicates,
    /// Census audit of random order-six orbits (requires --seed)
    Audit,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Hadamard matrix of order n with a prescribed real-entry count
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the Hadamard property of a matrix file
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "numeric")]
        mode: VerifyModeArg,
        #[arg(long, default_value_t = crate::matrix::ORTHO_TOLERANCE)]
        tol: f64,
    },
    /// Count real entries and report the per-row non-real profile
    Census {
        #[arg(long)]
        file: PathBuf,
    },
    /// Apply a monomial transform file to a matrix file
    Transform {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        transform_file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rewrite a matrix so its first row and column are all ones
    Dephase {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the witnessing transform
        #[arg(long)]
        emit_transform: Option<PathBuf>,
    },
    /// Decide permutation equivalence of two matrix files (orders up to 8)
    Equivalent {
        #[arg(long)]
        file_a: PathBuf,
        #[arg(long)]
        file_b: PathBuf,
    },
    /// Enumerate Hadamard matrices over a roots-of-unity grid
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Defaults to the mode fixed for the order
        #[arg(long, value_enum)]
        mode: Option<SweepModeArg>,
        /// Write one witness matrix per observed count into this directory
        #[arg(long)]
        emit_witnesses: Option<PathBuf>,
    },
    /// Run a lemma suite: oracles, classification, predicates, or the audit
    Lemmas {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Screen an order-six matrix against the four-basis exclusion tests
    Screen {
        #[arg(long)]
        file: PathBuf,
    },
    /// Print the multiplier recipe table; --regen recomputes it
    Recipes {
        #[arg(long)]
        regen: bool,
        /// Write the table to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("HC_THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1)
}

fn fail(msg: impl std::fmt::Display, code: i32) -> i32 {
    eprintln!("error: {msg}");
    code
}

fn write_file(path: &Path, contents: &str) -> Result<(), i32> {
    std::fs::write(path, contents).map_err(|e| fail(format!("{}: {e}", path.display()), EXIT_FAILED))
}

fn read_matrix(path: &Path) -> Result<crate::matrix::UnitMatrix, i32> {
    io::read_matrix_file(path).map_err(|e| fail(e, EXIT_USAGE))
}

fn index_list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn construction_exit(e: &ConstructionError) -> i32 {
    match e {
        ConstructionError::NotAchievable { .. } => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI against explicit arguments; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version render as "errors" with exit code 0
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let threads = resolve_threads(cli.threads);
    let json = cli.json;

    match cli.command {
        Command::Construct { n, count, out } => match constructions::with_real_count(n, count) {
            Ok(m) => {
                if let Err(code) = write_file(&out, &io::format_matrix(&m)) {
                    return code;
                }
                if json {
                    println!("{}", json!({"n": n, "count": count, "out": out.display().to_string()}));
                } else {
                    println!("n={n} count={count} out={}", out.display());
                }
                EXIT_OK
            }
            Err(e) => fail(e.to_string(), construction_exit(&e)),
        },
        Command::Verify { file, mode, tol } => {
            let m = match read_matrix(&file) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let check = match mode {
                VerifyModeArg::Exact => OrthoCheck::Exact,
                VerifyModeArg::Numeric => OrthoCheck::Numeric { tol },
            };
            match m.is_chm(check) {
                Ok(verified) => {
                    let mode_name = if mode == VerifyModeArg::Exact { "exact" } else { "numeric" };
                    if json {
                        println!(
                            "{}",
                            json!({"order": m.order(), "mode": mode_name, "tol": tol, "verified": verified})
                        );
                    } else {
                        println!("order={} mode={mode_name} verified={verified}", m.order());
                    }
                    if verified {
                        EXIT_OK
                    } else {
                        EXIT_FAILED
                    }
                }
                Err(e) => fail(e, EXIT_FAILED),
            }
        }
        Command::Census { file } => {
            let m = match read_matrix(&file) {
                Ok(m) => m,
                Err(code) => return code,
            };
            match m.census() {
                Ok(c) => {
                    if json {
                        println!("{}", serde_json::to_string(&c).expect("census serializes"));
                    } else {
                        println!(
                            "order={} real_count={} imaginary_array={} per_row={} per_column={} approximate={}",
                            c.order,
                            c.real_count,
                            index_list(&c.imaginary_array),
                            index_list(&c.per_row_counts),
                            index_list(&c.per_column_counts),
                            c.approximate
                        );
                    }
                    EXIT_OK
                }
                Err(e) => fail(e, EXIT_FAILED),
            }
        }
        Command::Transform { file, transform_file, out } => {
            let m = match read_matrix(&file) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let t = match io::read_transform_file(&transform_file) {
                Ok(t) => t,
                Err(e) => return fail(e, EXIT_USAGE),
            };
            match t.apply(&m) {
                Ok(result) => {
                    if let Err(code) = write_file(&out, &io::format_matrix(&result)) {
                        return code;
                    }
                    if json {
                        println!(
                            "{}",
                            json!({"order": result.order(), "out": out.display().to_string()})
                        );
                    } else {
                        println!("order={} out={}", result.order(), out.display());
                    }
                    EXIT_OK
                }
                Err(e @ EquivalenceError::DimensionMismatch { .. }) => fail(e, EXIT_FAILED),
                Err(e) => fail(e, EXIT_FAILED),
            }
        }
        Command::Dephase { file, out, emit_transform } => {
            let m = match read_matrix(&file) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let (d, t) = dephase(&m);
            if let Err(code) = write_file(&out, &io::format_matrix(&d)) {
                return code;
            }
            if let Some(tpath) = &emit_transform {
                if let Err(code) = write_file(tpath, &io::format_transform(&t)) {
                    return code;
                }
            }
            if json {
                println!(
                    "{}",
                    json!({
                        "order": d.order(),
                        "out": out.display().to_string(),
                        "transform_out": emit_transform.map(|p| p.display().to_string()),
                    })
                );
            } else {
                println!("order={} out={}", d.order(), out.display());
            }
            EXIT_OK
        }
        Command::Equivalent { file_a, file_b } => {
            let a = match read_matrix(&file_a) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let b = match read_matrix(&file_b) {
                Ok(m) => m,
                Err(code) => return code,
            };
            match are_equivalent(&a, &b) {
                Ok(eq) => {
                    if json {
                        println!("{}", json!({"equivalent": eq}));
                    } else {
                        println!("equivalent={eq}");
                    }
                    if eq {
                        EXIT_OK
                    } else {
                        EXIT_FAILED
                    }
                }
                Err(e) => fail(e, EXIT_USAGE),
            }
        }
        Command::Sweep { n, q, mode, emit_witnesses } => {
            let mode = mode.map(SweepMode::from).or_else(|| SweepMode::default_for(n));
            let Some(mode) = mode else {
                return fail(format!("no sweep mode for order {n}"), EXIT_USAGE);
            };
            let report = match grid_sweep(n, q, mode, threads) {
                Ok(r) => r,
                Err(e) => return fail(e, EXIT_USAGE),
            };
            let mut witness_paths: Vec<(usize, String)> = Vec::new();
            if let Some(dir) = &emit_witnesses {
                if let Err(e) = std::fs::create_dir_all(dir) {
                    return fail(format!("{}: {e}", dir.display()), EXIT_FAILED);
                }
                for (count, w) in &report.witnesses {
                    let path = dir.join(format!("witness_n{n}_q{q}_count{count}.mat"));
                    if let Err(code) = write_file(&path, &io::format_matrix(w)) {
                        return code;
                    }
                    witness_paths.push((*count, path.display().to_string()));
                }
            }
            if json {
                let mut value =
                    serde_json::to_value(&report).expect("sweep report serializes");
                if !witness_paths.is_empty() {
                    value["witness_files"] = json!(witness_paths
                        .iter()
                        .map(|(c, p)| json!({"count": c, "path": p}))
                        .collect::<Vec<_>>());
                }
                println!("{value}");
            } else {
                let observed: Vec<String> =
                    report.observed_counts.iter().map(usize::to_string).collect();
                println!(
                    "order={} q={} mode={} enumerated={} observed={}",
                    report.order,
                    report.root_order,
                    report.mode,
                    report.matrices_enumerated,
                    observed.join(",")
                );
                if witness_paths.is_empty() {
                    for count in &report.observed_counts {
                        println!("count={count}");
                    }
                } else {
                    for (count, path) in &witness_paths {
                        println!("count={count} witness={path}");
                    }
                }
            }
            EXIT_OK
        }
        Command::Lemmas { suite, q, samples, seed } => run_lemmas(suite, q, samples, seed, threads, json),
        Command::Screen { file } => {
            let m = match read_matrix(&file) {
                Ok(m) => m,
                Err(code) => return code,
            };
            match screen(&m) {
                Ok(v) => {
                    if json {
                        println!("{}", serde_json::to_string(&v).expect("verdict serializes"));
                    } else {
                        match &v.verdict {
                            Verdict::ExcludedByRealCount { count } => {
                                println!("verdict=excluded_by_real_count count={count}");
                            }
                            Verdict::ExcludedByRealSubmatrix { rows, cols } => {
                                println!(
                                    "verdict=excluded_by_real_submatrix count={} witness_rows={} witness_cols={}",
                                    v.census.real_count,
                                    index_list(rows),
                                    index_list(cols)
                                );
                            }
                            Verdict::NotExcluded => {
                                println!("verdict=not_excluded count={}", v.census.real_count);
                            }
                        }
                    }
                    EXIT_OK
                }
                Err(e) => fail(e, EXIT_FAILED),
            }
        }
        Command::Recipes { regen, out } => {
            let table = if regen {
                match regenerate_recipe_table() {
                    Ok(t) => t,
                    Err(e) => return fail(e, EXIT_FAILED),
                }
            } else {
                recipe_table().to_vec()
            };
            let text = format_recipe_table(&table);
            debug_assert!(parse_recipe_table(&text).is_ok());
            match out {
                Some(path) => {
                    if let Err(code) = write_file(&path, &text) {
                        return code;
                    }
                    if json {
                        println!(
                            "{}",
                            json!({"recipes": table.len(), "out": path.display().to_string()})
                        );
                    } else {
                        println!("recipes={} out={}", table.len(), path.display());
                    }
                }
                None => {
                    if json {
                        println!("{}", serde_json::to_string(&table).expect("recipes serialize"));
                    } else {
                        print!("{text}");
                    }
                }
            }
            EXIT_OK
        }
    }
}

fn run_lemmas(
    suite: SuiteArg,
    q: Option<u32>,
    samples: Option<u64>,
    seed: Option<u64>,
    threads: usize,
    json: bool,
) -> i32 {
    match suite {
        SuiteArg::Sum3 => {
            let q = q.unwrap_or(360);
            if q < 3 || q % 3 != 0 {
                return fail("sum3 needs a grid order divisible by 3", EXIT_USAGE);
            }
            let pass = sum3_oracle(q);
            if json {
                println!("{}", json!({"suite": "sum3", "q": q, "pass": pass}));
            } else {
                println!("suite=sum3 q={q} pass={pass}");
            }
            if pass {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        SuiteArg::Sum4 => {
            let q = q.unwrap_or(240);
            if q < 2 || q % 2 != 0 {
                return fail("sum4 needs an even grid order", EXIT_USAGE);
            }
            let pass = sum4_oracle(q);
            if json {
                println!("{}", json!({"suite": "sum4", "q": q, "pass": pass}));
            } else {
                println!("suite=sum4 q={q} pass={pass}");
            }
            if pass {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        SuiteArg::Threerows => {
            let q = q.unwrap_or(12);
            if q % 12 != 0 {
                return fail("three-row classification needs 12 | q", EXIT_USAGE);
            }
            let classes = classify_three_rows(q);
            let pass = classes.len() == 4
                && (1..=4).all(|k| {
                    let prefix = constructions::three_row_prefix(k);
                    classes.iter().any(|c| search::three_rows_equivalent(c, &prefix, q))
                });
            if json {
                println!("{}", json!({"suite": "threerows", "q": q, "classes": classes.len(), "pass": pass}));
            } else {
                println!("suite=threerows q={q} classes={} pass={pass}", classes.len());
            }
            if pass {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        SuiteArg::Predicates => {
            let Some(seed) = seed else {
                return fail("--seed is required for the predicates suite", EXIT_USAGE);
            };
            let samples = samples.unwrap_or(10_000);
            let report = run_predicate_corpus(samples, seed, threads);
            if json {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                println!(
                    "suite=predicates samples={samples} seed={seed} orbits={} checks={} pass={}",
                    report.orbits_checked,
                    report.checks_run,
                    report.is_pass()
                );
                for v in &report.violations {
                    println!(
                        "violation base={} sample={} predicate={}",
                        v.base,
                        v.sample_index,
                        v.predicate.name()
                    );
                }
            }
            if report.is_pass() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        SuiteArg::Audit => {
            let Some(seed) = seed else {
                return fail("--seed is required for the audit suite", EXIT_USAGE);
            };
            let samples = samples.unwrap_or(100_000);
            let report = audit_order6_counts(samples, seed, threads);
            if json {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                let seen: Vec<String> = report.counts_seen.iter().map(usize::to_string).collect();
                println!(
                    "suite=audit samples={samples} seed={seed} counts_seen={} pass={}",
                    seen.join(","),
                    report.is_pass()
                );
                if let Some(v) = &report.violation {
                    println!("violation sample={} real_count={}", v.sample_index, v.real_count);
                    print!("{}", io::format_matrix(&v.matrix));
                }
            }
            if report.is_pass() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
    }
}

/// Entry point for the binary: parses real process arguments.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}
