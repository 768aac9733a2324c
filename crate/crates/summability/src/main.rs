use std::path::PathBuf;
use std::process::ExitCode;

use summability::cli::{parse_config, run, serialize_config};

const USAGE: &str = "\
usage: summability <config-file> [--output PATH] [--verbose]

Runs the experiment described by a flat key = value config file and writes
a CSV report plus a JSON summary. Exit codes: 0 all checks passed, 1 a pass
flag is false, 2 config error, 3 numeric error.
";

fn main() -> ExitCode {
    let mut config_path: Option<PathBuf> = None;
    let mut output: Option<PathBuf> = None;
    let mut verbose = false;

    let mut args = std::env::args().skip(1);
    while let Some(arg) = args.next() {
        match arg.as_str() {
            "--help" | "-h" => {
                print!("{USAGE}");
                return ExitCode::SUCCESS;
            }
            "--verbose" => verbose = true,
            "--output" => match args.next() {
                Some(path) => output = Some(PathBuf::from(path)),
                None => {
                    eprintln!("--output requires a path");
                    return ExitCode::from(2);
                }
            },
            other if config_path.is_none() && !other.starts_with('-') => {
                config_path = Some(PathBuf::from(other));
            }
            other => {
                eprintln!("unexpected argument: {other}\n{USAGE}");
                return ExitCode::from(2);
            }
        }
    }

    let Some(config_path) = config_path else {
        eprint!("{USAGE}");
        return ExitCode::from(2);
    };

    let text = match std::fs::read_to_string(&config_path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("cannot read {}: {err}", config_path.display());
            return ExitCode::from(2);
        }
    };

    let mut config = match parse_config(&text) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("{err}");
            return ExitCode::from(2);
        }
    };
    if let Some(output) = output {
        config.output = output;
    }
    if verbose {
        eprintln!("normalized config:\n{}", serialize_config(&config));
    }

    match run(&config) {
        Ok(outcome) => {
            eprintln!(
                "wrote {} and {}",
                outcome.csv_path.display(),
                outcome.summary_path.display()
            );
            if outcome.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
