use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use qwalk::experiment::{parse_config, parse_file, render, run};

/// Runs a quantum-walk experiment and writes its report.
///
/// Experiments: single, sameside, bell, indist, asymptote, delta,
/// fourier-check, scan. Defaults: m = 1 for single and 2 otherwise;
/// t_max = 100 (50 for fourier-check, 200 for scan, 0 for asymptote);
/// initial = L (vec:1,0,0,0 for fourier-check); shift = diagonal (axial for
/// fourier-check); grid = 256 (fourier-check FFT size), 8 (scan resolution),
/// 101 (asymptote samples); format = csv; output to stdout.
///
/// Exit codes: 0 success, 2 configuration error, 3 numerical invariant violated.
#[derive(Parser, Debug)]
#[command(name = "qwalk", version)]
struct Args {
    /// Experiment to run.
    experiment: String,
    /// Flat `key = value` configuration file; flags take precedence.
    #[arg(long)]
    config: Option<String>,
    #[arg(long = "t-max")]
    t_max: Option<String>,
    /// Particle count M.
    #[arg(long)]
    m: Option<String>,
    /// Initial state: L, R, sym, chi+, chi-, ang:THETA:PHI, sep:TOK,TOK,..,
    /// psi+, psi-, phi+, phi-, vec:RE[:IM],..
    #[arg(long)]
    initial: Option<String>,
    /// diagonal or axial.
    #[arg(long)]
    shift: Option<String>,
    #[arg(long)]
    grid: Option<String>,
    /// Output path; stdout when absent or `-`.
    #[arg(long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let file = match &args.config {
        Some(path) => match std::fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|text| parse_file(&text).map_err(|e| e.to_string())) {
            Ok(pairs) => pairs,
            Err(e) => {
                eprintln!("qwalk: {path}: {e}");
                return ExitCode::from(2);
            }
        },
        None => Vec::new(),
    };
    let mut overrides = vec![("experiment".to_string(), args.experiment.clone())];
    for (key, value) in [
        ("t_max", &args.t_max),
        ("m", &args.m),
        ("initial", &args.initial),
        ("shift", &args.shift),
        ("grid", &args.grid),
        ("out", &args.out),
        ("format", &args.format),
    ] {
        if let Some(v) = value {
            overrides.push((key.to_string(), v.clone()));
        }
    }
    let cfg = match parse_config(&file, &overrides) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("qwalk: {e}");
            return ExitCode::from(2);
        }
    };

    let start = Instant::now();
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qwalk: run failed: {e}");
            return ExitCode::from(3);
        }
    };
    let text = render(&report, cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("qwalk: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    eprintln!("qwalk: {} finished in {:.3} s", cfg.experiment.name(), start.elapsed().as_secs_f64());
    if report.violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        for v in &report.violations {
            eprintln!("qwalk: invariant violated: {v}");
        }
        ExitCode::from(3)
    }
}
