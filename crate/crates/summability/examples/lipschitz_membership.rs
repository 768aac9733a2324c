//! Empirical Lipschitz-class membership: translation-modulus fits for the
//! registry signals in the sup norm and in L_r.
//!
//! Run with: cargo run --example lipschitz_membership

use summability::lipnorms::MEMBERSHIP_SLACK;
use summability::prelude::*;

fn main() -> Result<()> {
    let samples = default_t_samples();

    for (signal, alpha) in [
        (signals::weierstrass(0.5, 12)?, 0.5),
        (signals::weierstrass(0.9, 12)?, 0.9),
        (signals::Signal::new(|x: f64| x.sin(), "sin x"), 1.0),
        (signals::constant(3.0), 0.5),
    ] {
        println!("{} (claimed exponent {alpha}):", signal.description());
        for r in [1.0, 2.0, f64::INFINITY] {
            let spec = LipClassSpec::new(alpha, r)?;
            let report =
                lip_membership_estimate(&signal, &spec, &samples, 1024, MEMBERSHIP_SLACK)?;
            let fitted = report
                .alpha_hat
                .map(|a| format!("{a:.4}"))
                .unwrap_or_else(|| "constant".into());
            println!(
                "  r = {r:>3}: fitted exponent {fitted:>9}  pass = {}",
                report.pass
            );
        }
    }

    // the modulus samples behind one of the fits, CSV-style
    let f = signals::weierstrass(0.5, 12)?;
    let spec = LipClassSpec::new(0.5, f64::INFINITY)?;
    let report = lip_membership_estimate(&f, &spec, &samples, 1024, MEMBERSHIP_SLACK)?;
    println!("\nt,omega(t)  for {} in the sup norm:", f.description());
    for (t, omega) in &report.samples {
        println!("{t},{omega}");
    }
    println!(
        "fitted constant C = {:.4}, exponent = {:.4}",
        report.c_hat.unwrap(),
        report.alpha_hat.unwrap()
    );
    Ok(())
}
