//! Two-weight means of sequences and of conjugate series: classical
//! specializations, exactness on constants, and convergence on a convergent
//! sequence.
//!
//! Run with: cargo run --example norlund_means

use summability::prelude::*;

fn main() -> Result<()> {
    // the (C,1) mean of partial sums of 1 - 1 + 1 - ... tends to 1/2
    let partial_sums: Vec<f64> = (0..=64).map(|m| if m % 2 == 0 { 1.0 } else { 0.0 }).collect();
    println!("(C,1) mean of the alternating series partial sums:");
    for n in [4, 16, 64] {
        let t = generalized_norlund(
            &WeightSequence::ones(),
            &WeightSequence::ones(),
            &partial_sums,
            n,
        )?;
        println!("  n = {n:>3}: {t:.6}");
    }

    // classical specializations and their derived names
    for method in [
        classic_method(ClassicMethod::Cesaro(0.5))?,
        classic_method(ClassicMethod::Cesaro(1.0))?,
        classic_method(ClassicMethod::Harmonic)?,
        classic_method(ClassicMethod::Riesz(WeightSequence::geometric(0.5)?))?,
    ] {
        println!("method: {}", method.name());
    }

    // constants are reproduced exactly by any positive method
    let s = vec![2.5; 65];
    let t = generalized_norlund(
        &WeightSequence::harmonic(),
        &WeightSequence::geometric(0.5)?,
        &s,
        64,
    )?;
    println!("harmonic x geometric mean of the constant 2.5: {t}");

    // shifted almost means: windows of the same average shifted by r
    let sigma: Vec<f64> = (0..12).map(|j| j as f64).collect();
    for shift in 0..3 {
        println!(
            "almost mean of j over window m = 2, shift {shift}: {}",
            almost_mean(&sigma, 2, shift)?
        );
    }

    // the almost transform of the conjugate series of cos x approaches
    // sin x as n grows
    let expansion = signals::cosk(1).expansion(260, 0)?;
    let method = classic_method(ClassicMethod::Cesaro(1.0))?.almost(1);
    let x = 1.0;
    println!("\nalmost (C,1) transform of the conjugate series of cos x at x = 1:");
    println!("{:>6} {:>22} {:>12}", "n", "transform", "|err|");
    for n in [4, 16, 64, 256] {
        let value = almost_generalized_norlund(&expansion, &method, n, x)?;
        println!("{n:>6} {value:>22.15} {:>12.3e}", (value - x.sin()).abs());
    }

    // the conjugate summation kernel reduces to the half-angle cotangent
    let kernel = conjugate_kernel(&KernelSpec { m: 0, shift: 0 }, 0.5)?;
    println!(
        "\nkernel with a single term at t = 0.5: {kernel:.12} vs cot(t/2) = {:.12}",
        1.0 / (0.25_f64).tan()
    );
    Ok(())
}
