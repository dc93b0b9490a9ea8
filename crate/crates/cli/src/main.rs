use clap::{Parser, Subcommand};
use hoti_core::ktheory::presets::PRESETS;
use hoti_core::ktheory::CofiltrationSpec;
use hoti_core::models::BUILTIN_MODELS;
use hoti_core::patterns::{global_transversal, Pattern};
use hoti_lab::run::{kss_report, symmetry_json, transversal_json, transversal_preset};
use hoti_lab::{parse, FieldError, Overrides, RunError};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hoti-lab", version, about = "Higher-order topological insulator laboratory")]
struct Cli {
    /// Output directory for artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for k-point sweeps.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Solver seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Samples per periodic direction.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Slab depth, wire cross-section, cube side or quarter size.
    #[arg(long, global = true)]
    size: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a JSON experiment config.
    Run { config: PathBuf },
    /// Run the canned config of a figure and judge its claims.
    Reproduce { figure: String },
    /// Spectral sequence report for a preset or a cofiltration JSON file.
    Kss {
        input: String,
        /// Hinge charges c1,c2,c3,c4 for the square presets.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        hinge: Option<Vec<i64>>,
    },
    /// Transversal of a pattern file (one pattern or {"patterns": [...]}) or of quarter/square/cube.
    Transversal { input: String },
    /// Covariance and projective relations of a built-in model.
    CheckSymmetry {
        model: String,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, value_delimiter = ',')]
        actions: Vec<String>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PatternFile {
    Many { patterns: Vec<Pattern> },
    One(Pattern),
}

fn config_error(msg: impl Into<String>) -> RunError {
    RunError::Config(vec![FieldError { path: String::new(), message: msg.into() }])
}

fn read(path: &str) -> Result<String, RunError> {
    std::fs::read_to_string(path).map_err(|e| config_error(format!("cannot read {path}: {e}")))
}

fn emit(v: &serde_json::Value, out: Option<&PathBuf>, file: &str) -> Result<(), RunError> {
    let text = serde_json::to_string_pretty(v).unwrap() + "\n";
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(file), &text)?;
    }
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        seed: cli.seed,
        grid: cli.grid,
        size: cli.size,
        workers: cli.workers,
        out: cli.out.as_ref().map(|p| p.to_string_lossy().into_owned()),
    };
    match dispatch(&cli, &overrides) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match &e {
                RunError::Config(errs) => {
                    for f in errs {
                        eprintln!("config error at {f}");
                    }
                }
                _ => eprintln!("{}", e.payload()),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: &Cli, o: &Overrides) -> Result<u8, RunError> {
    match &cli.command {
        Command::Run { config } => {
            let text = read(&config.to_string_lossy())?;
            let mut cfg = parse(&text).map_err(RunError::Config)?;
            cfg.apply(o);
            let out = hoti_lab::run(&cfg, None)?;
            for r in &out.results {
                println!("{} ({}): {}", r.name, r.kind, r.files.join(", "));
            }
            println!("manifest: {}", out.out_dir.join("manifest.json").display());
            Ok(0)
        }
        Command::Reproduce { figure } => {
            let r = hoti_lab::reproduce(figure, o)?;
            for c in &r.checks {
                println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.claim, c.detail);
            }
            println!("artifacts: {}", r.outcome.out_dir.display());
            Ok(if r.pass() { 0 } else { 1 })
        }
        Command::Kss { input, hinge } => {
            let hinge = match hinge {
                None => None,
                Some(h) => Some(<[i64; 4]>::try_from(h.as_slice()).map_err(|_| config_error("--hinge needs four values"))?),
            };
            let rep = if PRESETS.contains(&input.as_str()) {
                kss_report(Some(input), None, hinge)?
            } else if input.ends_with(".json") {
                let text = read(input)?;
                let de = &mut serde_json::Deserializer::from_str(&text);
                let spec: CofiltrationSpec = serde_path_to_error::deserialize(de)
                    .map_err(|e| RunError::Config(vec![FieldError { path: e.path().to_string(), message: e.inner().to_string() }]))?;
                kss_report(None, Some(&spec), None)?
            } else {
                return Err(config_error(format!("unknown preset '{input}' (expected one of {PRESETS:?} or a .json file)")));
            };
            emit(&serde_json::to_value(&rep).unwrap(), cli.out.as_ref(), "kss.json")?;
            Ok(0)
        }
        Command::Transversal { input } => {
            let seeds = match transversal_preset(input) {
                Some(s) => s,
                None => {
                    let text = read(input)?;
                    let de = &mut serde_json::Deserializer::from_str(&text);
                    match serde_path_to_error::deserialize(de) {
                        Ok(PatternFile::Many { patterns }) => patterns,
                        Ok(PatternFile::One(p)) => vec![p],
                        Err(e) => return Err(config_error(format!("{input}: {}", e.inner()))),
                    }
                }
            };
            for (i, p) in seeds.iter().enumerate() {
                p.validate().map_err(|e| {
                    RunError::Config(vec![FieldError { path: format!("patterns[{i}]"), message: e.to_string() }])
                })?;
            }
            emit(&transversal_json(&global_transversal(&seeds)?), cli.out.as_ref(), "transversal.json")?;
            Ok(0)
        }
        Command::CheckSymmetry { model, gamma, actions } => {
            if !BUILTIN_MODELS.contains(&model.as_str()) {
                return Err(config_error(format!("unknown model '{model}' (expected one of {BUILTIN_MODELS:?})")));
            }
            let m = hoti_core::models::builtin_model(model, *gamma)?;
            let names: Vec<String> = if actions.is_empty() {
                hoti_core::symmetry::default_actions(model).iter().map(|s| s.to_string()).collect()
            } else {
                actions.clone()
            };
            let v = symmetry_json(&m, &names)?;
            let pass = v["pass"].as_bool() == Some(true);
            emit(&v, cli.out.as_ref(), "symmetry.json")?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}
