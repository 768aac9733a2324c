//! Rate experiments and condition integrals: measures how fast the almost
//! two-weight mean of a conjugate series approaches the conjugate function,
//! fits the observed log-log decay, and compares it against the claimed
//! exponent 1/r - alpha, one-sidedly (faster decay also passes).

use crate::error::{Error, Result};
use crate::fourier::{conjugate_function_pv, PrincipalValueSpec};
use crate::lipnorms::{least_squares_line, LipClassSpec};
use crate::means::{ConjugateTransform, MethodSpec};
use crate::quadrature::{geometric_edges, integrate_panels, GaussLegendre};
use crate::signals::Signal;
use crate::weights::WeightSequence;

/// Parameters of the two modulus condition integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondIntegralSpec {
    pub alpha: f64,
    pub r: f64,
    /// Conjugate exponent: 1/r + 1/s = 1 (infinite when r = 1).
    pub s: f64,
    /// Finite grading exponent of the outer integral.
    pub delta: f64,
    /// Evaluation point of the symmetric difference.
    pub x: f64,
}

impl CondIntegralSpec {
    pub fn new(alpha: f64, r: f64, delta: f64, x: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Parameter(format!(
                "condition integral exponent must be in (0, 1], got {alpha}"
            )));
        }
        if !(r >= 1.0 && r.is_finite()) {
            return Err(Error::Parameter(format!(
                "condition integral norm index must be finite and >= 1, got {r}"
            )));
        }
        if !delta.is_finite() {
            return Err(Error::Parameter("delta must be finite".into()));
        }
        let s = if r == 1.0 { f64::INFINITY } else { r / (r - 1.0) };
        Ok(Self { alpha, r, s, delta, x })
    }
}

/// The two modulus integrals split at pi/R:
/// inner = (integral over (0, pi/R) of |psi(t)|^r / t^alpha dt)^(1/r),
/// outer = (integral over (pi/R, pi) of t^(-delta) |psi(t)|^r / t^alpha dt)^(1/r).
///
/// The inner endpoint is handled with geometrically graded panels; the
/// integrand of the inner integral vanishes at 0 for every Lip-alpha signal,
/// so the graded floor contributes nothing at the working tolerances.
pub fn condition_integrals(
    f: &Signal,
    spec: &CondIntegralSpec,
    r_n: f64,
    panels: usize,
    gl_order: usize,
) -> Result<(f64, f64)> {
    if !(r_n >= 1.0) {
        return Err(Error::Parameter(format!(
            "condition integral normalizer must be >= 1, got {r_n}"
        )));
    }
    let pi = std::f64::consts::PI;
    let split = pi / r_n;
    let rule = GaussLegendre::new(gl_order)?;
    let x = spec.x;
    let psi = |t: f64| f.eval(x + t) - f.eval(x - t);

    let inner_integrand = |t: f64| psi(t).abs().powf(spec.r) / t.powf(spec.alpha);
    let inner_edges = geometric_edges(split * 1e-12, split, panels.max(16))?;
    let inner = integrate_panels(&inner_integrand, &inner_edges, &rule);

    let outer = if split < pi {
        let outer_integrand =
            |t: f64| t.powf(-spec.delta) * psi(t).abs().powf(spec.r) / t.powf(spec.alpha);
        let outer_edges = geometric_edges(split, pi, panels.max(16))?;
        integrate_panels(&outer_integrand, &outer_edges, &rule)
    } else {
        0.0
    };

    Ok((inner.powf(1.0 / spec.r), outer.powf(1.0 / spec.r)))
}

/// Which normalizer column the log-log fit runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitNormalizer {
    /// R_n, the convolution of the weight pair.
    Convolution,
    /// P_n, the prefix sums of p.
    HeadSumP,
    /// Q_n, the prefix sums of q.
    HeadSumQ,
}

/// Tuning knobs for a rate experiment.
#[derive(Debug, Clone)]
pub struct RateConfig {
    /// Grid points for the error norm over x.
    pub x_grid: usize,
    /// Two-sided slack on the fitted slope.
    pub slope_tolerance: f64,
    /// Quadrature grid for expansions of signals without closed-form
    /// coefficients (raised automatically to the anti-aliasing minimum).
    pub coefficient_grid: usize,
    /// Errors below this are treated as round-off and excluded from the fit.
    pub error_floor: f64,
    /// A report whose largest error is below this is degenerate: the method
    /// reproduced the signal, which passes vacuously.
    pub degenerate_threshold: f64,
    /// Reference conjugate fallback for signals without a closed form.
    pub pv: PrincipalValueSpec,
    /// Points in the local refinement pass of the sup-norm error.
    pub refinement_points: usize,
}

impl Default for RateConfig {
    fn default() -> Self {
        Self {
            x_grid: 128,
            slope_tolerance: 0.15,
            coefficient_grid: 1024,
            error_floor: 1e-12,
            degenerate_threshold: 1e-10,
            pv: PrincipalValueSpec::default(),
            refinement_points: 64,
        }
    }
}

/// Outcome of a rate experiment.
#[derive(Debug, Clone)]
pub struct RateReport {
    pub method_name: String,
    pub n_values: Vec<usize>,
    pub r_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub q_values: Vec<f64>,
    /// Error norm per n.
    pub errors: Vec<f64>,
    pub fitted_slope: Option<f64>,
    pub theoretical_slope: f64,
    pub pass: bool,
    pub degenerate: bool,
    pub normalizer: FitNormalizer,
}

impl RateReport {
    /// The column the fit ran against.
    pub fn normalizer_values(&self) -> &[f64] {
        match self.normalizer {
            FitNormalizer::Convolution => &self.r_values,
            FitNormalizer::HeadSumP => &self.p_values,
            FitNormalizer::HeadSumQ => &self.q_values,
        }
    }
}

/// Conjugate-function reference: the coefficient map when the signal is a
/// trigonometric polynomial with known coefficients, the principal-value
/// integral otherwise.
pub fn reference_conjugate(f: &Signal, x: f64, pv: &PrincipalValueSpec) -> Result<f64> {
    match f.exact_conjugate(x) {
        Some(v) => Ok(v),
        None => Ok(conjugate_function_pv(f, x, pv)?.value),
    }
}

/// Measure ||conjugate(f) - transform_n|| over an x grid for each n, fit the
/// log error against the log normalizer, and compare with the claimed
/// exponent 1/r - alpha under the one-sided rule.
pub fn rate_experiment(
    f: &Signal,
    method: &MethodSpec,
    lip: &LipClassSpec,
    n_values: &[usize],
    cfg: &RateConfig,
) -> Result<RateReport> {
    rate_experiment_normalized(f, method, lip, n_values, cfg, FitNormalizer::Convolution)
}

/// As [`rate_experiment`], fitting against the chosen normalizer column.
pub fn rate_experiment_normalized(
    f: &Signal,
    method: &MethodSpec,
    lip: &LipClassSpec,
    n_values: &[usize],
    cfg: &RateConfig,
    normalizer: FitNormalizer,
) -> Result<RateReport> {
    if n_values.is_empty() {
        return Err(Error::InsufficientData("empty n grid".into()));
    }
    if n_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter("n values must be strictly increasing".into()));
    }
    let max_n = *n_values.last().unwrap();
    let shift = method.mode.shift();
    let order = max_n + shift;
    let expansion = f.expansion(order, cfg.coefficient_grid.max(4 * order))?;
    let transform = ConjugateTransform::new(&expansion, method, max_n)?;

    let count = n_values.len();
    let gp = cfg.x_grid.max(16);
    let step = std::f64::consts::TAU / gp as f64;
    let sup_norm = lip.r.is_infinite();
    let mut pow_sums = vec![0.0_f64; count];
    let mut maxima = vec![0.0_f64; count];
    let mut arg_maxima = vec![0.0_f64; count];
    for j in 0..gp {
        let x = j as f64 * step;
        let reference = reference_conjugate(f, x, &cfg.pv)?;
        let values = transform.evaluate_many(x, n_values)?;
        for (i, v) in values.iter().enumerate() {
            let diff = (reference - v).abs();
            if sup_norm {
                if diff > maxima[i] {
                    maxima[i] = diff;
                    arg_maxima[i] = x;
                }
            } else {
                pow_sums[i] += diff.powf(lip.r);
            }
        }
    }

    let mut errors = Vec::with_capacity(count);
    if sup_norm {
        // one local refinement pass per n around the coarse argmax
        let fine = cfg.refinement_points.max(8);
        for (i, &n) in n_values.iter().enumerate() {
            let mut best = maxima[i];
            let lo = arg_maxima[i] - step;
            let fine_step = 2.0 * step / fine as f64;
            for k in 0..=fine {
                let x = lo + k as f64 * fine_step;
                let reference = reference_conjugate(f, x, &cfg.pv)?;
                let diff = (reference - transform.evaluate(n, x)?).abs();
                best = best.max(diff);
            }
            errors.push(best);
        }
    } else {
        errors.extend(pow_sums.iter().map(|s| (s * step).powf(1.0 / lip.r)));
    }

    let table = transform.table();
    let r_values: Vec<f64> = n_values.iter().map(|&n| table.r[n]).collect();
    let p_values: Vec<f64> = n_values.iter().map(|&n| table.p[n]).collect();
    let q_values: Vec<f64> = n_values.iter().map(|&n| table.q[n]).collect();

    let inv_r = if lip.r.is_infinite() { 0.0 } else { 1.0 / lip.r };
    let theoretical_slope = inv_r - lip.alpha;

    let mut report = RateReport {
        method_name: method.name(),
        n_values: n_values.to_vec(),
        r_values,
        p_values,
        q_values,
        errors,
        fitted_slope: None,
        theoretical_slope,
        pass: true,
        degenerate: false,
        normalizer,
    };

    let max_error = report.errors.iter().cloned().fold(0.0_f64, f64::max);
    if max_error < cfg.degenerate_threshold {
        report.degenerate = true;
        return Ok(report);
    }

    let abscissa = report.normalizer_values().to_vec();
    let pts: Vec<(f64, f64)> = abscissa
        .iter()
        .zip(&report.errors)
        .filter(|&(_, &e)| e > cfg.error_floor)
        .map(|(&a, &e)| (a.ln(), e.ln()))
        .collect();
    {
        let mut distinct: Vec<f64> = pts.iter().map(|p| p.0).collect();
        distinct.dedup();
        if distinct.len() < 3 {
            return Err(Error::InsufficientData(format!(
                "need >= 3 distinct normalizer values above the error floor, have {}",
                distinct.len()
            )));
        }
    }
    let (slope, _) = least_squares_line(&pts)?;
    report.fitted_slope = Some(slope);
    report.pass =
        (slope - theoretical_slope).abs() <= cfg.slope_tolerance || slope <= theoretical_slope;
    Ok(report)
}

/// The three corollary presets: the sup-norm run, the q = ones run fitted
/// against P_n, and the p = ones run fitted against Q_n.
pub fn corollary_suite(
    f: &Signal,
    method: &MethodSpec,
    lip: &LipClassSpec,
    n_values: &[usize],
    cfg: &RateConfig,
) -> Result<Vec<RateReport>> {
    let sup_lip = LipClassSpec {
        alpha: lip.alpha,
        r: f64::INFINITY,
    };
    let sup_report =
        rate_experiment_normalized(f, method, &sup_lip, n_values, cfg, FitNormalizer::Convolution)?;

    let mut with_unit_q = method.clone();
    with_unit_q.q = WeightSequence::ones();
    let p_report = rate_experiment_normalized(
        f,
        &with_unit_q,
        lip,
        n_values,
        cfg,
        FitNormalizer::HeadSumP,
    )?;

    let mut with_unit_p = method.clone();
    with_unit_p.p = WeightSequence::ones();
    let q_report = rate_experiment_normalized(
        f,
        &with_unit_p,
        lip,
        n_values,
        cfg,
        FitNormalizer::HeadSumQ,
    )?;

    Ok(vec![sup_report, p_report, q_report])
}
