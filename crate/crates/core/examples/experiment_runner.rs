//! Runs configured experiments through the library instead of the binary and
//! prints their summaries.
//!
//! ```text
//! cargo run --example experiment_runner -- sameside bell asymptote
//! ```

use qwalk::experiment::{parse_config, parse_file, render, run, Format};

const CONFIG: &str = "
# shared settings; the experiment name comes from the command line
t_max = 60
format = csv
";

fn main() {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = vec!["single".into(), "sameside".into(), "bell".into()];
    }
    let file = parse_file(CONFIG).expect("embedded config parses");
    for name in names {
        let mut overrides = vec![("experiment".to_string(), name.clone())];
        match name.as_str() {
            "single" | "sameside" | "delta" => overrides.push(("initial".into(), "L".into())),
            "asymptote" => overrides.push(("t_max".into(), "0".into())),
            "fourier-check" | "scan" => overrides.push(("t_max".into(), "20".into())),
            _ => {}
        }
        let cfg = match parse_config(&file, &overrides) {
            Ok(cfg) => cfg,
            Err(e) => {
                eprintln!("{name}: {e}");
                continue;
            }
        };
        let report = run(&cfg).expect("experiment runs");
        println!("== {name}: {} records, {} violations", report.records.len(), report.violations.len());
        for (key, value) in &report.summary {
            println!("  {key} = {value}");
        }
        let csv = render(&report, Format::Csv);
        if let Some(last) = csv.lines().last() {
            println!("  last row: {last}");
        }
    }
}
