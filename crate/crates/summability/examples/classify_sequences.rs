//! Classify weight sequences against the head/rest bounded-variation bounds
//! and show the convolution identities that back the classical reductions.
//!
//! Run with: cargo run --example classify_sequences

use summability::prelude::*;

fn show(label: &str, report: &VariationReport) {
    println!(
        "{label:<28} {:<5} holds = {:<5} minimal K = {:<22} first violation = {:?}",
        report.class_tested.to_string(),
        report.holds,
        report
            .minimal_k
            .map(|k| format!("{k}"))
            .unwrap_or_else(|| "-".into()),
        report.first_violation_index,
    );
}

fn main() -> Result<()> {
    // Monotone model sequences: increasing is head-bounded, decreasing to
    // zero is rest-bounded, both with constant 1.
    let ramp = WeightSequence::custom(|n| n as f64, "n");
    show(
        "c_n = n",
        &classify_variation(&ramp, VariationClass::Head, 256, 256)?,
    );

    let geo = WeightSequence::geometric(0.5)?;
    show(
        "c_n = 2^-n",
        &classify_variation(&geo, VariationClass::Rest, 64, 256)?,
    );

    // The same decreasing sequence is not head-bounded: the constant the
    // sweep finds grows with the horizon.
    for horizon in [2, 8, 16] {
        let report = classify_variation(&geo, VariationClass::Head, horizon, 4 * horizon)?;
        show(&format!("c_n = 2^-n (N = {horizon})"), &report);
    }

    // Convolution tables: with q = ones the convolution column equals the
    // prefix sums of p exactly, which is what makes the P-normalized and
    // generic rate reports coincide.
    let table = build_convolution(&WeightSequence::harmonic(), &WeightSequence::ones(), 8)?;
    println!("\nharmonic * ones   n: 0..=8");
    println!("  R_n: {:?}", table.r);
    println!("  P_n: {:?}", table.p);
    println!("  identical: {}", table.r == table.p);

    // Regularity of the harmonic mean: row sums stay bounded relative to
    // R_n and the columns vanish toward the horizon.
    let reg = check_regularity(&WeightSequence::harmonic(), &WeightSequence::ones(), 256)?;
    println!(
        "\nharmonic mean regularity: bounded ratio = {}, columns vanish = {}",
        reg.bounded_ratio, reg.vanishing_verified
    );
    Ok(())
}
