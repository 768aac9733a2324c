//! Convergence-rate experiment: how fast the almost (C,1) transform of a
//! conjugate series approaches the conjugate function, measured in L_2 and
//! fitted against the claimed exponent 1/r - alpha.
//!
//! Run with: cargo run --release --example rate_experiment

use summability::prelude::*;

fn main() -> Result<()> {
    let f = signals::weierstrass(0.9, 12)?;
    let method = classic_method(ClassicMethod::Cesaro(1.0))?.almost(0);
    let lip = LipClassSpec::new(0.9, 2.0)?;
    let cfg = RateConfig {
        x_grid: 256,
        ..RateConfig::default()
    };
    let n_values = [16, 32, 64, 128, 256];
    let report = rate_experiment(&f, &method, &lip, &n_values, &cfg)?;

    println!(
        "signal {}, method {}, error in L_{}",
        f.description(),
        report.method_name,
        lip.r
    );
    println!("{:>6} {:>10} {:>14} {:>12}", "n", "R_n", "error", "log error");
    for (i, &n) in report.n_values.iter().enumerate() {
        println!(
            "{n:>6} {:>10} {:>14.6e} {:>12.5}",
            report.r_values[i],
            report.errors[i],
            report.errors[i].ln()
        );
    }
    println!(
        "fitted slope {:.4} vs claimed {:.4} (one-sided, tolerance {}) => pass = {}",
        report.fitted_slope.unwrap(),
        report.theoretical_slope,
        cfg.slope_tolerance,
        report.pass
    );

    // a trigonometric polynomial of low degree is reproduced once n passes
    // its degree by a wide margin, which the report flags as degenerate
    let g = signals::constant(1.0);
    let degenerate = rate_experiment(&g, &method, &lip, &[4, 8, 16], &cfg)?;
    println!(
        "\nconstant signal: degenerate = {}, pass = {}",
        degenerate.degenerate, degenerate.pass
    );
    Ok(())
}
