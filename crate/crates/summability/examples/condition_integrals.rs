//! Modulus condition integrals split at pi/R: the inner integral of
//! |psi(t)|^r / t^alpha and the outer integral with the extra t^-delta
//! grading, with ratio columns for order-of-magnitude inspection.
//!
//! Run with: cargo run --example condition_integrals

use summability::prelude::*;

fn main() -> Result<()> {
    let f = signals::weierstrass(0.9, 12)?;
    let spec = CondIntegralSpec::new(0.9, 2.0, 0.25, 1.1)?;
    println!(
        "signal {}, alpha = {}, r = {}, s = {}, delta = {}, x = {}",
        f.description(),
        spec.alpha,
        spec.r,
        spec.s,
        spec.delta,
        spec.x
    );
    println!(
        "{:>8} {:>14} {:>14} {:>14} {:>14}",
        "R", "inner", "inner * R", "outer", "outer / R^d"
    );
    for r_n in [8.0, 32.0, 128.0, 512.0] {
        let (inner, outer) = condition_integrals(&f, &spec, r_n, 512, 8)?;
        println!(
            "{r_n:>8} {inner:>14.6e} {:>14.6e} {outer:>14.6e} {:>14.6e}",
            inner * r_n,
            outer / r_n.powf(spec.delta)
        );
    }

    // a constant signal has zero symmetric difference, so both integrals
    // vanish identically
    let (inner, outer) = condition_integrals(&signals::constant(5.0), &spec, 32.0, 256, 8)?;
    println!("\nconstant signal: inner = {inner}, outer = {outer}");
    Ok(())
}
