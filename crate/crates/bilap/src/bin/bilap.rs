//! Command-line experiment runner.
//!
//! `bilap <suite> --config <path> --out <dir> [--seed <u64>] [--refine]`
//!
//! Exit code 0 iff every asserted row passes; a machine-readable
//! `summary.json` is always written to the output directory.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use bilap::config::ExperimentConfig;
use bilap::error::Result;
use bilap::report::SweepReport;
use bilap::suites;

#[derive(Parser)]
#[command(name = "bilap", version, about = "Spectral laboratory for bilinear fractional-integral experiments")]
struct Cli {
    /// Which experiment suite to run.
    #[arg(value_enum)]
    suite: Suite,
    /// TOML experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for reports and the summary.
    #[arg(long)]
    out: PathBuf,
    /// RNG seed for the test families.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Recompute ratio sweeps on the doubled grid and assert stability.
    #[arg(long)]
    refine: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Identities,
    Leibniz,
    Loglemma,
    Decay,
    Embedding,
    Symbol,
    Report,
}

#[derive(Serialize)]
struct SuiteSummary {
    suite: String,
    passed: bool,
    rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct Summary {
    subcommand: String,
    config: String,
    seed: u64,
    refine: bool,
    passed: bool,
    suites: Vec<SuiteSummary>,
}

fn planned(cli: &Cli, cfg: &ExperimentConfig) -> Vec<(&'static str, fn(&ExperimentConfig, u64, bool) -> Result<SweepReport>)> {
    type Runner = fn(&ExperimentConfig, u64, bool) -> Result<SweepReport>;
    let identities: Runner = |c, s, _| suites::run_identity_suite(c, s);
    let leibniz: Runner = |c, s, r| suites::run_leibniz_sweep(c, s, r);
    let loglemma: Runner = |c, s, _| suites::run_log_lemma_sweep(c, s);
    let decay: Runner = |c, s, _| suites::run_coefficient_decay(c, s);
    let embedding: Runner = |c, s, _| suites::run_embedding_suite(c, s);
    let fefferman: Runner = |c, s, _| suites::run_fefferman_stein(c, s);
    let symbol: Runner = |c, s, _| suites::run_symbol_report(c, s);
    let infra: Runner = |c, s, _| suites::run_infrastructure(c, s);
    match cli.suite {
        Suite::Identities => vec![("identities", identities)],
        Suite::Leibniz => vec![("leibniz", leibniz)],
        Suite::Loglemma => vec![("loglemma", loglemma)],
        Suite::Decay => vec![("decay", decay)],
        Suite::Embedding => vec![("embedding", embedding), ("fefferman_stein", fefferman)],
        Suite::Symbol => vec![("symbol", symbol)],
        Suite::Report => {
            let mut all = vec![
                ("infrastructure", infra),
                ("identities", identities),
                ("leibniz", leibniz),
                ("loglemma", loglemma),
                ("decay", decay),
            ];
            if cfg.grid.dim == 1 {
                all.push(("symbol", symbol));
            } else {
                all.push(("embedding", embedding));
                all.push(("fefferman_stein", fefferman));
            }
            all
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut summaries = Vec::new();
    let mut all_passed = true;

    let cfg = match ExperimentConfig::load(&cli.config) {
        Ok(cfg) => Some(cfg),
        Err(e) => {
            eprintln!("config error: {e}");
            summaries.push(SuiteSummary {
                suite: "config".into(),
                passed: false,
                rows: 0,
                error: Some(e.to_string()),
            });
            all_passed = false;
            None
        }
    };

    if let Some(cfg) = &cfg {
        for (name, runner) in planned(&cli, cfg) {
            match runner(cfg, cli.seed, cli.refine) {
                Ok(rep) => {
                    let passed = rep.passed();
                    for row in &rep.rows {
                        println!("{name}/{}: {} (lhs {:.6e}, rhs {:.6e})", row.label, row.verdict, row.lhs, row.rhs);
                    }
                    match rep.emit(&cli.out) {
                        Ok(paths) => {
                            for p in paths {
                                println!("{name}: wrote {}", p.display());
                            }
                        }
                        Err(e) => {
                            eprintln!("{name}: emit failed: {e}");
                            all_passed = false;
                        }
                    }
                    summaries.push(SuiteSummary {
                        suite: name.into(),
                        passed,
                        rows: rep.rows.len(),
                        error: None,
                    });
                    all_passed &= passed;
                }
                Err(e) => {
                    eprintln!("{name}: suite failed: {e}");
                    summaries.push(SuiteSummary {
                        suite: name.into(),
                        passed: false,
                        rows: 0,
                        error: Some(e.to_string()),
                    });
                    all_passed = false;
                }
            }
        }
    }

    let summary = Summary {
        subcommand: format!("{:?}", cli.suite).to_lowercase(),
        config: cli.config.display().to_string(),
        seed: cli.seed,
        refine: cli.refine,
        passed: all_passed,
        suites: summaries,
    };
    if let Err(e) = std::fs::create_dir_all(&cli.out) {
        eprintln!("cannot create output directory {}: {e}", cli.out.display());
        return ExitCode::FAILURE;
    }
    let summary_path = cli.out.join("summary.json");
    match serde_json::to_string_pretty(&summary) {
        Ok(text) => {
            if let Err(e) = std::fs::write(&summary_path, text + "\n") {
                eprintln!("cannot write {}: {e}", summary_path.display());
                return ExitCode::FAILURE;
            }
        }
        Err(e) => {
            eprintln!("summary serialization failed: {e}");
            return ExitCode::FAILURE;
        }
    }
    println!("summary: {} ({})", summary_path.display(), if all_passed { "PASS" } else { "FAIL" });
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
