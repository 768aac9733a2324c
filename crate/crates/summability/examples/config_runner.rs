//! Drive the same machinery the `summability` binary uses: build a config
//! document, run it, and read back the CSV and summary it emits.
//!
//! Run with: cargo run --example config_runner

use summability::cli::{parse_config, run, serialize_config};
use summability::Result;

fn main() -> Result<()> {
    let dir = std::env::temp_dir().join("summability-config-runner");
    let out = dir.join("rates.csv");
    let text = format!(
        "command = rates\n\
         signal = weierstrass(0.9, 12)\n\
         method = cesaro(1)\n\
         n_values = [16, 32, 64, 128, 256]\n\
         x_grid = 128\n\
         output = {}\n\
         \n\
         [lip]\n\
         alpha = 0.9\n\
         r = 2.0\n",
        out.display()
    );

    let config = parse_config(&text)?;
    println!("normalized config:\n{}", serialize_config(&config));

    let outcome = run(&config)?;
    println!("verdict: all_pass = {}", outcome.all_pass);
    println!("\n--- {} ---", outcome.csv_path.display());
    print!("{}", std::fs::read_to_string(&outcome.csv_path)?);
    println!("--- {} ---", outcome.summary_path.display());
    print!("{}", std::fs::read_to_string(&outcome.summary_path)?);
    Ok(())
}
