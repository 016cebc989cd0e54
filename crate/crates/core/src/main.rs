use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fixact::checks::{run_all_checks, render_report, CheckStatus, RunManifest, DEFAULT_SEED};
use fixact::descriptors::{
    ColoredGraphDescriptor, GroupDescriptor, LatticeGroupDescriptor, MatrixDescriptor,
    PointsDescriptor, TreeDescriptor,
};
use fixact::exact::lattice;
use fixact::geo::circumcenter::circumcenter;
use fixact::geo::mobius::{classify_h2, Sl2};
use fixact::geo::point::Space;
use fixact::perm::{classify_action, VerdictKind};
use fixact::tree::{colored_global_fixed_point, tree_global_fixed_point};

/// Fixed-point analysis of group actions: exact verdicts for finite and
/// discrete actions, certified witnesses, and numeric suites for the
/// classical geometries.
#[derive(Parser)]
#[command(name = "fixact", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Absolute tolerance for numeric checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Cap on group closures and subgroup searches.
    #[arg(long, global = true, default_value_t = 10_000)]
    cap: usize,
    /// Seed for randomized properties.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Word-length cap for free-group audits.
    #[arg(long, global = true, default_value_t = 6)]
    word_len: usize,
    /// Emit machine-readable JSON (already the default for reports).
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stored verification check and print the report.
    VerifyPaper {
        /// Print per-check timings to stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Analyze one input file: a permutation group, lattice-isometry group,
    /// tree, or colored graph.
    Analyze {
        #[arg(value_enum)]
        kind: AnalyzeKind,
        input: PathBuf,
    },
    /// Circumcenter of a point set.
    Circumcenter {
        #[arg(long, value_enum, default_value_t = SpaceArg::Euclidean)]
        space: SpaceArg,
        input: PathBuf,
    },
    /// Trace classification of a real unimodular 2×2 matrix acting on the
    /// upper half-plane.
    ClassifyIsometry { input: PathBuf },
    /// Common fixed vertex of tree isometries.
    TreeFixpoint { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeKind {
    Perm,
    Matrix,
    Tree,
    ColoredGraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Euclidean,
    Hyperbolic,
}

impl From<SpaceArg> for Space {
    fn from(v: SpaceArg) -> Space {
        match v {
            SpaceArg::Euclidean => Space::Euclidean,
            SpaceArg::Hyperbolic => Space::Hyperbolic,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("{}", json!({ "error": "PARSE_ERROR", "message": msg }));
            ExitCode::from(2)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        format!(
            "{} at line {}, column {}",
            e,
            e.line(),
            e.column()
        )
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::VerifyPaper { timings } => {
            let manifest = RunManifest {
                command: "verify-paper".to_string(),
                arguments: Vec::new(),
                seed: cli.opts.seed,
                tolerance: cli.opts.tolerance,
                cap: cli.opts.cap,
                word_len: cli.opts.word_len,
            };
            let results = run_all_checks(&manifest);
            print!("{}", render_report(&results));
            if timings {
                for r in &results {
                    eprintln!("{:>8} ms  {}", r.elapsed_ms, r.check_id);
                }
            }
            let failed = results.iter().any(|r| r.status == CheckStatus::Fail);
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Analyze { kind, input } => analyze(kind, &input, &cli.opts),
        Command::Circumcenter { space, input } => {
            let desc: PointsDescriptor = read_json(&input)?;
            if desc.points.is_empty() {
                println!("{}", json!({ "error": "EMPTY_SET" }));
                return Ok(ExitCode::from(1));
            }
            let result =
                circumcenter(space.into(), &desc.points).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&result).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::ClassifyIsometry { input } => {
            let desc: MatrixDescriptor = read_json(&input)?;
            let [[a, b], [c, d]] = desc.matrix;
            let m = Sl2::new(a, b, c, d).map_err(|e| e.to_string())?;
            let result = classify_h2(m, cli.opts.tolerance);
            println!("{}", serde_json::to_string_pretty(&result).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::TreeFixpoint { input } => {
            let desc: TreeDescriptor = read_json(&input)?;
            let (tree, gens) = desc.build().map_err(|e| e.to_string())?;
            match tree_global_fixed_point(&tree, &gens) {
                Ok(v) => {
                    println!("{}", json!({ "fixed_vertex": v }));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("{}", json!({ "error": e.to_string() }));
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn analyze(kind: AnalyzeKind, input: &PathBuf, opts: &GlobalOpts) -> Result<ExitCode, String> {
    match kind {
        AnalyzeKind::Perm => {
            let desc: GroupDescriptor = read_json(input)?;
            let group = desc.build(opts.cap).map_err(|e| e.to_string())?;
            let verdict = classify_action(&group);
            let fix_table: serde_json::Map<String, serde_json::Value> = verdict
                .fix_table
                .iter()
                .map(|(p, fix)| {
                    (
                        p.cycle_string(),
                        json!(fix.iter().copied().collect::<Vec<_>>()),
                    )
                })
                .collect();
            let witness = match verdict.kind {
                VerdictKind::Gag => json!(verdict.gag_witness),
                VerdictKind::NotGaf => {
                    json!(verdict.gaf_violator.as_ref().map(|p| p.cycle_string()))
                }
                VerdictKind::Eccentric => serde_json::Value::Null,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "kind": verdict.kind,
                    "order": group.order(),
                    "witness": witness,
                    "fix_table": fix_table,
                }))
                .unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }
        AnalyzeKind::Matrix => {
            let desc: LatticeGroupDescriptor = read_json(input)?;
            let gens = desc.build().map_err(|e| e.to_string())?;
            match lattice::zn_global_fixed_point(&gens, opts.cap) {
                Ok(point) => {
                    let coords: Vec<String> = point.iter().map(|c| c.to_string()).collect();
                    println!("{}", json!({ "kind": "GAG", "fixed_point": coords }));
                    Ok(ExitCode::SUCCESS)
                }
                Err(lattice::LatticeError::NotGaf(which)) => {
                    println!("{}", json!({ "kind": "NOT_GAF", "violator": which }));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        AnalyzeKind::Tree => {
            let desc: TreeDescriptor = read_json(input)?;
            let (tree, gens) = desc.build().map_err(|e| e.to_string())?;
            match tree_global_fixed_point(&tree, &gens) {
                Ok(v) => {
                    println!("{}", json!({ "kind": "GAG", "fixed_vertex": v }));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("{}", json!({ "kind": "NOT_GAF", "detail": e.to_string() }));
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        AnalyzeKind::ColoredGraph => {
            let desc: ColoredGraphDescriptor = read_json(input)?;
            let (graph, gens) = desc.build().map_err(|e| e.to_string())?;
            match colored_global_fixed_point(&graph, &gens) {
                Ok(v) => {
                    println!(
                        "{}",
                        json!({ "kind": "GAG", "fixed_vertex": v, "cells": graph.cells().len() })
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("{}", json!({ "kind": "NOT_GAF", "detail": e.to_string() }));
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}
