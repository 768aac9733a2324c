//! L_r and sup norms over one period, and empirical Lipschitz-class
//! membership from the translation modulus.

use crate::error::{Error, Result};
use crate::signals::Signal;

/// Smoothness class parameters: exponent alpha in (0, 1] measured in the
/// L_r norm (r = infinity encodes the sup norm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipClassSpec {
    pub alpha: f64,
    pub r: f64,
}

impl LipClassSpec {
    pub fn new(alpha: f64, r: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Parameter(format!(
                "lip exponent must be in (0, 1], got {alpha}"
            )));
        }
        if !(r >= 1.0) {
            return Err(Error::Parameter(format!("lip norm index must be >= 1, got {r}")));
        }
        Ok(Self { alpha, r })
    }
}

/// L_r norm of a closure over [0, 2pi): (integral of |g|^r)^{1/r} by the
/// periodic rectangle rule, or the grid sup with one local refinement pass
/// when r is infinite.
pub fn norm_fn<F: Fn(f64) -> f64>(g: &F, r: f64, grid_points: usize) -> Result<f64> {
    if !(r >= 1.0) {
        return Err(Error::Parameter(format!("norm index must be >= 1, got {r}")));
    }
    if grid_points < 64 {
        return Err(Error::Parameter(format!(
            "norm grid must have >= 64 points, got {grid_points}"
        )));
    }
    let gp = grid_points;
    let step = std::f64::consts::TAU / gp as f64;
    if r.is_infinite() {
        let mut best = 0.0_f64;
        let mut best_x = 0.0;
        for j in 0..gp {
            let x = j as f64 * step;
            let v = g(x).abs();
            if v > best {
                best = v;
                best_x = x;
            }
        }
        // one refinement pass around the coarse argmax
        let fine = gp;
        let lo = best_x - step;
        let fine_step = 2.0 * step / fine as f64;
        for j in 0..=fine {
            let v = g(lo + j as f64 * fine_step).abs();
            if v > best {
                best = v;
            }
        }
        Ok(best)
    } else {
        let sum: f64 = (0..gp).map(|j| g(j as f64 * step).abs().powf(r)).sum();
        Ok((sum * step).powf(1.0 / r))
    }
}

/// L_r norm of a signal over one period.
pub fn norm(g: &Signal, r: f64, grid_points: usize) -> Result<f64> {
    norm_fn(&|x| g.eval(x), r, grid_points)
}

/// Result of an empirical Lipschitz-membership fit.
#[derive(Debug, Clone)]
pub struct LipReport {
    /// Fitted modulus exponent; `None` for a constant signal.
    pub alpha_hat: Option<f64>,
    /// Fitted modulus constant exp(intercept); `None` for a constant signal.
    pub c_hat: Option<f64>,
    pub pass: bool,
    /// (t, omega(t)) samples used in the fit.
    pub samples: Vec<(f64, f64)>,
}

impl LipReport {
    /// CSV rows `t,omega(t)` with a header line.
    pub fn csv_rows(&self) -> String {
        let mut out = String::from("t,omega\n");
        for (t, omega) in &self.samples {
            out.push_str(&format!("{t:?},{omega:?}\n"));
        }
        out
    }

    /// One-line JSON record of the fit.
    pub fn summary_json(&self) -> String {
        let fmt_opt = |v: Option<f64>| match v {
            Some(v) => format!("{v:?}"),
            None => "null".into(),
        };
        format!(
            "{{\"alpha_hat\": {}, \"c_hat\": {}, \"pass\": {}}}",
            fmt_opt(self.alpha_hat),
            fmt_opt(self.c_hat),
            self.pass
        )
    }
}

/// Default dyadic translation samples pi * 2^-j, j = 2..=12.
pub fn default_t_samples() -> Vec<f64> {
    (2..=12)
        .map(|j| std::f64::consts::PI * 0.5_f64.powi(j))
        .collect()
}

/// Slack allowed between the fitted exponent and the claimed one.
pub const MEMBERSHIP_SLACK: f64 = 0.1;

/// Estimate Lipschitz-class membership: compute the translation modulus
/// omega(t) = || f(.+t) - f(.) ||_r on each sample, fit log omega against
/// log t, and pass when the fitted slope reaches alpha - slack.
pub fn lip_membership_estimate(
    f: &Signal,
    spec: &LipClassSpec,
    t_samples: &[f64],
    grid_points: usize,
    slack: f64,
) -> Result<LipReport> {
    if t_samples.len() < 3 {
        return Err(Error::InsufficientData(
            "need at least 3 translation samples".into(),
        ));
    }
    if t_samples.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::Parameter("translation samples must be positive".into()));
    }
    let (lo, hi) = t_samples
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &t| (lo.min(t), hi.max(t)));
    if hi / lo < 100.0 {
        return Err(Error::Parameter(
            "translation samples must span at least two decades".into(),
        ));
    }

    let mut samples = Vec::with_capacity(t_samples.len());
    for &t in t_samples {
        let omega = norm_fn(&|x| f.eval(x + t) - f.eval(x), spec.r, grid_points)?;
        samples.push((t, omega));
    }

    // constant signal: zero modulus everywhere, trivially in every class
    if samples.iter().all(|&(_, w)| w < 1e-14) {
        return Ok(LipReport {
            alpha_hat: None,
            c_hat: None,
            pass: true,
            samples,
        });
    }

    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|&&(_, w)| w > 1e-14)
        .map(|&(t, w)| (t.ln(), w.ln()))
        .collect();
    let (slope, intercept) = least_squares_line(&pts)?;
    Ok(LipReport {
        alpha_hat: Some(slope),
        c_hat: Some(intercept.exp()),
        pass: slope >= spec.alpha - slack,
        samples,
    })
}

/// Ordinary least squares for y = slope * x + intercept.
pub(crate) fn least_squares_line(pts: &[(f64, f64)]) -> Result<(f64, f64)> {
    let n = pts.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 points for a line fit, have {n}"
        )));
    }
    let nf = n as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in pts {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::InsufficientData("degenerate abscissa in line fit".into()));
    }
    let slope = sxy / sxx;
    Ok((slope, mean_y - slope * mean_x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals;
    use approx::assert_relative_eq;

    #[test]
    fn constant_l2_norm() {
        let g = signals::constant(-3.0);
        let got = norm(&g, 2.0, 256).unwrap();
        assert_relative_eq!(got, 3.0 * std::f64::consts::TAU.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn sine_norms() {
        let g = signals::Signal::new(|x| x.sin(), "sin x");
        assert_relative_eq!(
            norm(&g, 2.0, 1024).unwrap(),
            std::f64::consts::PI.sqrt(),
            epsilon = 1e-8
        );
        assert_relative_eq!(norm(&g, f64::INFINITY, 1024).unwrap(), 1.0, epsilon = 1e-8);
    }

    #[test]
    fn norm_parameter_guards() {
        let g = signals::constant(1.0);
        assert!(norm(&g, 0.5, 256).is_err());
        assert!(norm(&g, 2.0, 8).is_err());
    }

    #[test]
    fn norm_vanishes_only_for_the_zero_signal() {
        let zero = signals::constant(0.0);
        let small = signals::constant(1e-9);
        for r in [1.0, 2.0, f64::INFINITY] {
            assert_eq!(norm(&zero, r, 128).unwrap(), 0.0);
            assert!(norm(&small, r, 128).unwrap() > 0.0);
        }
    }

    #[test]
    fn norm_scales_homogeneously() {
        let g = signals::Signal::new(|x| (2.0 * x).sin() + 0.3, "test");
        let scaled = signals::Signal::new(|x| -2.5 * ((2.0 * x).sin() + 0.3), "scaled");
        for r in [1.0, 2.0, 4.0, f64::INFINITY] {
            let a = norm(&g, r, 512).unwrap();
            let b = norm(&scaled, r, 512).unwrap();
            assert_relative_eq!(b, 2.5 * a, epsilon = 1e-10);
        }
    }

    #[test]
    fn normalized_norms_increase_with_r() {
        // power means: (2pi)^(-1/r) ||g||_r is nondecreasing in r
        let signals_under_test = vec![
            signals::cosk(1),
            signals::cosk(3),
            signals::square(),
            signals::sawtooth(),
            signals::weierstrass(0.5, 6).unwrap(),
            signals::weierstrass(0.9, 6).unwrap(),
            signals::constant(2.0),
            signals::Signal::new(|x| x.sin() + 0.5 * (3.0 * x).cos(), "mix"),
            signals::Signal::new(|x| x.sin().powi(3), "sin^3"),
            signals::Signal::new(|x| (x.cos() + 1.1).ln(), "log shifted"),
        ];
        let tau = std::f64::consts::TAU;
        for g in &signals_under_test {
            let mut prev = 0.0;
            for r in [1.0, 2.0, 4.0] {
                let v = norm(g, r, 2048).unwrap() * tau.powf(-1.0 / r);
                assert!(v + 1e-9 >= prev, "{}: {v} < {prev}", g.description());
                prev = v;
            }
            let sup = norm(g, f64::INFINITY, 2048).unwrap();
            assert!(sup + 1e-9 >= prev);
        }
    }

    #[test]
    fn weierstrass_membership_recovers_exponent() {
        let f = signals::weierstrass(0.5, 12).unwrap();
        let spec = LipClassSpec::new(0.5, f64::INFINITY).unwrap();
        let rep =
            lip_membership_estimate(&f, &spec, &default_t_samples(), 2048, MEMBERSHIP_SLACK)
                .unwrap();
        let alpha_hat = rep.alpha_hat.unwrap();
        assert!(
            (alpha_hat - 0.5).abs() <= 0.1,
            "fitted exponent {alpha_hat} not within 0.1 of 0.5"
        );
        assert!(rep.pass);
    }

    #[test]
    fn smooth_signal_is_lip_one() {
        let f = signals::Signal::new(|x| x.sin(), "sin x");
        for r in [1.0, 2.0, f64::INFINITY] {
            let spec = LipClassSpec::new(1.0, r).unwrap();
            let rep =
                lip_membership_estimate(&f, &spec, &default_t_samples(), 1024, MEMBERSHIP_SLACK)
                    .unwrap();
            assert!(rep.alpha_hat.unwrap() >= 0.9, "r = {r}");
        }
    }

    #[test]
    fn constant_signal_is_degenerate_pass() {
        let f = signals::constant(7.0);
        let spec = LipClassSpec::new(0.5, 2.0).unwrap();
        let rep =
            lip_membership_estimate(&f, &spec, &default_t_samples(), 256, MEMBERSHIP_SLACK)
                .unwrap();
        assert!(rep.pass);
        assert!(rep.alpha_hat.is_none());
        assert_eq!(
            rep.summary_json(),
            "{\"alpha_hat\": null, \"c_hat\": null, \"pass\": true}"
        );
    }

    #[test]
    fn report_serializes_to_csv_rows() {
        let f = signals::cosk(1);
        let spec = LipClassSpec::new(1.0, 2.0).unwrap();
        let rep =
            lip_membership_estimate(&f, &spec, &default_t_samples(), 256, MEMBERSHIP_SLACK)
                .unwrap();
        let csv = rep.csv_rows();
        assert!(csv.starts_with("t,omega\n"));
        assert_eq!(csv.lines().count(), rep.samples.len() + 1);
        assert!(rep.summary_json().contains("\"pass\": true"));
    }

    #[test]
    fn sup_membership_implies_finite_r_membership() {
        // passing in the sup norm implies passing in every finite r for the
        // registry signals
        for (f, alpha) in [
            (signals::weierstrass(0.5, 10).unwrap(), 0.5),
            (signals::weierstrass(0.9, 10).unwrap(), 0.9),
            (signals::cosk(2), 1.0),
        ] {
            let sup_spec = LipClassSpec::new(alpha, f64::INFINITY).unwrap();
            let sup = lip_membership_estimate(
                &f,
                &sup_spec,
                &default_t_samples(),
                1024,
                MEMBERSHIP_SLACK,
            )
            .unwrap();
            if sup.pass {
                for r in [1.0, 2.0, 4.0] {
                    let spec = LipClassSpec::new(alpha, r).unwrap();
                    let rep = lip_membership_estimate(
                        &f,
                        &spec,
                        &default_t_samples(),
                        1024,
                        MEMBERSHIP_SLACK,
                    )
                    .unwrap();
                    assert!(rep.pass, "{} at r = {r}", f.description());
                }
            }
        }
    }

    #[test]
    fn sample_preconditions() {
        let f = signals::cosk(1);
        let spec = LipClassSpec::new(0.5, 2.0).unwrap();
        assert!(lip_membership_estimate(&f, &spec, &[0.1, 0.2], 256, 0.1).is_err());
        assert!(lip_membership_estimate(&f, &spec, &[0.1, 0.05, 0.025], 256, 0.1).is_err());
        assert!(lip_membership_estimate(&f, &spec, &[0.1, -0.05, 0.001], 256, 0.1).is_err());
    }

    #[test]
    fn lip_spec_validation() {
        assert!(LipClassSpec::new(0.0, 2.0).is_err());
        assert!(LipClassSpec::new(1.5, 2.0).is_err());
        assert!(LipClassSpec::new(0.5, 0.5).is_err());
        assert!(LipClassSpec::new(1.0, f64::INFINITY).is_ok());
    }
}
