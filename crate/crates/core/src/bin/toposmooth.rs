//! Command-line front end: smooth, persistence, entropy, evaluate, synth.
//!
//! Exit status is 0 on success, 1 for invalid input or parameters, 2 for I/O
//! failures.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use toposmooth::evaluate::{evaluate, EvalConfig};
use toposmooth::io::config::load_config;
use toposmooth::io::report::{format_pairs_csv, write_evaluation, write_smoothed};
use toposmooth::io::{generate_synthetic, load_csv, write_csv, RunConfig};
use toposmooth::metrics::approx_entropy;
use toposmooth::{compute_persistence, Error, Result, TimeSeries};

#[derive(Parser)]
#[command(
    name = "toposmooth",
    version,
    about = "Persistence-guided smoothing of 1D series"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// key = value settings file; command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Comma-separated subset of csv,json,svg
    #[arg(long, global = true)]
    emit: Option<String>,
    /// Comma-separated synthetic generators (spike-train, noisy-sine, random-walk)
    #[arg(long, global = true)]
    synthetic: Option<String>,
    /// Length of synthetic series
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Seed for the synthetic generators
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Embedding dimension for approximate entropy
    #[arg(long, global = true)]
    apen_m: Option<usize>,
    /// Entropy tolerance as a multiple of the original's standard deviation
    #[arg(long, global = true)]
    apen_r_factor: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Smooth each input with one method and parameter
    Smooth {
        /// topo, median, gaussian, cutoff, subsample, douglas-peucker
        #[arg(long)]
        method: Option<String>,
        /// Method parameter (removed fraction for topo)
        #[arg(long)]
        param: Option<f64>,
        /// Write the smoothed CSV here instead of into the output directory
        #[arg(long, short)]
        output: Option<PathBuf>,
        inputs: Vec<PathBuf>,
    },
    /// Write the persistence pairs of each input
    Persistence { inputs: Vec<PathBuf> },
    /// Print the approximate entropy of each input
    Entropy { inputs: Vec<PathBuf> },
    /// Sweep all methods and rank them
    Evaluate { inputs: Vec<PathBuf> },
    /// Write synthetic series as CSV
    Synth,
}

fn flag_settings(common: &Common, inputs: &[PathBuf]) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            map.insert(k.to_string(), v);
        }
    };
    put(
        "out_dir",
        common.out_dir.as_ref().map(|p| p.display().to_string()),
    );
    put("emit", common.emit.clone());
    put("synthetic", common.synthetic.clone());
    put("n", common.n.map(|v| v.to_string()));
    put("seed", common.seed.map(|v| v.to_string()));
    put("apen_m", common.apen_m.map(|v| v.to_string()));
    put(
        "apen_r_factor",
        common.apen_r_factor.map(|v| format!("{v:?}")),
    );
    if !inputs.is_empty() {
        let joined: Vec<String> = inputs.iter().map(|p| p.display().to_string()).collect();
        put("input", Some(joined.join(",")));
    }
    map
}

fn load_series(config: &RunConfig) -> Result<Vec<TimeSeries>> {
    let mut out = Vec::new();
    for path in &config.inputs {
        out.push(load_csv(path)?);
    }
    for &kind in &config.synthetic {
        out.push(generate_synthetic(kind, config.n, config.seed)?);
    }
    if out.is_empty() {
        return Err(Error::param(
            "input",
            "no input files or synthetic generators given",
        ));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.common.config {
        config.apply(&load_config(path)?)?;
    }
    let inputs: &[PathBuf] = match &cli.command {
        Command::Smooth { inputs, .. }
        | Command::Persistence { inputs }
        | Command::Entropy { inputs }
        | Command::Evaluate { inputs } => inputs,
        Command::Synth => &[],
    };
    let mut flags = flag_settings(&cli.common, inputs);
    if let Command::Smooth { method, param, .. } = &cli.command {
        if let Some(m) = method {
            flags.insert("method".into(), m.clone());
        }
        if let Some(p) = param {
            flags.insert("parameter".into(), format!("{p:?}"));
        }
    }
    if matches!(cli.command, Command::Evaluate { .. }) {
        flags.insert("evaluate".into(), "true".into());
    }
    config.apply(&flags)?;

    match cli.command {
        Command::Smooth { output, .. } => {
            let method = config
                .method
                .ok_or_else(|| Error::param("method", "smooth needs --method"))?;
            let parameter = config
                .parameter
                .ok_or_else(|| Error::param("parameter", "smooth needs --param"))?;
            let all = load_series(&config)?;
            if let Some(path) = output {
                let [series] = &all[..] else {
                    return Err(Error::param(
                        "output",
                        "--output needs exactly one input series",
                    ));
                };
                write_csv(&method.smooth(series, parameter)?, &path)?;
                println!("{}", path.display());
                return Ok(());
            }
            for series in all {
                let smoothed = method.smooth(&series, parameter)?;
                for path in write_smoothed(&series, &smoothed, method.name(), &config)? {
                    println!("{}", path.display());
                }
            }
        }
        Command::Persistence { .. } => {
            let all = load_series(&config)?;
            if config.emit.csv {
                std::fs::create_dir_all(&config.out_dir)
                    .map_err(|e| Error::io(&config.out_dir, e))?;
            }
            for series in all {
                let (diagram, _) = compute_persistence(&series);
                let text = format_pairs_csv(&diagram);
                if config.emit.csv {
                    let path = config.out_dir.join(format!("{}.pairs.csv", series.label()));
                    std::fs::write(&path, &text).map_err(|e| Error::io(&path, e))?;
                    println!("{}", path.display());
                } else {
                    print!("{text}");
                }
            }
        }
        Command::Entropy { .. } => {
            let params = config.entropy();
            println!("dataset,apen");
            for series in load_series(&config)? {
                let r = params.tolerance(&series);
                let h = approx_entropy(&series, params.m, r)?;
                println!("{},{h:?}", series.label());
            }
        }
        Command::Evaluate { .. } => {
            let eval_config = EvalConfig {
                entropy: config.entropy(),
                ..EvalConfig::default()
            };
            for series in load_series(&config)? {
                let eval = evaluate(&series, &eval_config)?;
                for path in write_evaluation(&series, &eval, &config)? {
                    println!("{}", path.display());
                }
                for (method, rank) in &eval.report.overall_rank {
                    println!("{}\t{method}\t{rank}", eval.report.dataset);
                }
            }
        }
        Command::Synth => {
            if config.synthetic.is_empty() {
                return Err(Error::param("synthetic", "synth needs --synthetic"));
            }
            std::fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
            for series in load_series(&config)? {
                let path = config.out_dir.join(format!("{}.csv", series.label()));
                write_csv(&series, &path)?;
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
