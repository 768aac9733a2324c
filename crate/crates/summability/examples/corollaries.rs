//! The three corollary presets of the rate experiment: the sup-norm run,
//! the q = ones run fitted against P_n, and the p = ones run fitted against
//! Q_n.
//!
//! Run with: cargo run --release --example corollaries

use summability::prelude::*;

fn main() -> Result<()> {
    let f = signals::weierstrass(0.5, 12)?;
    let method = classic_method(ClassicMethod::Cesaro(1.0))?.almost(0);
    let lip = LipClassSpec::new(0.5, 2.0)?;
    let cfg = RateConfig {
        x_grid: 128,
        ..RateConfig::default()
    };
    let n_values = [16, 32, 64, 128, 256];
    let reports = corollary_suite(&f, &method, &lip, &n_values, &cfg)?;

    for (report, label) in reports.iter().zip(["sup norm", "q = ones", "p = ones"]) {
        let normalizer = match report.normalizer {
            FitNormalizer::Convolution => "R_n",
            FitNormalizer::HeadSumP => "P_n",
            FitNormalizer::HeadSumQ => "Q_n",
        };
        println!(
            "{label:<9} fit vs {normalizer}: slope {} vs claimed {:.3} => pass = {}",
            report
                .fitted_slope
                .map(|s| format!("{s:.4}"))
                .unwrap_or_else(|| "-".into()),
            report.theoretical_slope,
            report.pass
        );
    }

    // with q = ones already in the method, the generic fit against R_n and
    // the preset fit against P_n use bitwise-identical columns
    let generic = rate_experiment(&f, &method, &lip, &n_values, &cfg)?;
    println!(
        "\ngeneric R_n column == preset P_n column: {}",
        generic.r_values == reports[1].p_values
    );
    println!(
        "generic errors == preset errors:         {}",
        generic.errors == reports[1].errors
    );
    Ok(())
}
