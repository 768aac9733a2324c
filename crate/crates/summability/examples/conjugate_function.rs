//! Conjugate function by principal-value quadrature, cross-checked against
//! the coefficient map a_k sin kx - b_k cos kx on trigonometric polynomials.
//!
//! Run with: cargo run --example conjugate_function

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use summability::prelude::*;

fn main() -> Result<()> {
    let spec = PrincipalValueSpec::default();

    // cos x conjugates to sin x
    println!("conjugate of cos x (principal value vs sin x):");
    println!("{:>8} {:>22} {:>22} {:>12}", "x", "pv", "sin x", "difference");
    for i in 0..6 {
        let x = i as f64 * 1.1;
        let est = conjugate_function_pv(&signals::cosk(1), x, &spec)?;
        println!(
            "{x:>8.3} {:>22.15} {:>22.15} {:>12.3e}",
            est.value,
            x.sin(),
            (est.value - x.sin()).abs()
        );
    }

    // a seeded random polynomial: the quadrature recovers the exact
    // coefficient map to quadrature precision
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let e = random_expansion(8, &mut rng);
    let f = signals::from_expansion(&e, "seeded degree-8 polynomial");
    let mut worst = 0.0_f64;
    for j in 0..64 {
        let x = j as f64 * std::f64::consts::TAU / 64.0;
        let est = conjugate_function_pv(&f, x, &spec)?;
        worst = worst.max((est.value - e.conjugate_eval(x)).abs());
    }
    println!("\nseeded degree-8 polynomial, 64 sample points:");
    println!("  max |pv - coefficient map| = {worst:.3e}");

    // the cutoff extrapolation reports its own error indicator
    let est = conjugate_function_pv(&f, 0.9, &spec)?;
    println!(
        "  at x = 0.9: value = {:.15}, cutoff error estimate = {:.3e}",
        est.value,
        est.error_estimate.unwrap()
    );

    // a jump under the evaluation point makes the integral diverge, and the
    // cutoff sequence reports it instead of returning a number
    match conjugate_function_pv(&signals::square(), 0.0, &spec) {
        Err(err) => println!("\nsquare wave at its jump: {err}"),
        Ok(est) => println!("\nunexpected convergence: {est:?}"),
    }
    Ok(())
}
