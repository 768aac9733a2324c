//! Fourier expansions, conjugate partial sums, and the conjugate function by
//! principal-value quadrature.
//!
//! Sign convention: the conjugate partial sum is
//! sum_{k<=n} (a_k sin kx - b_k cos kx), chosen so that these sums converge
//! pointwise to the principal-value conjugate function for smooth signals.
//! (The opposite sign appears in some classical series displays; the
//! coefficient-map tests in this module pin the convention.)

use rand::Rng;

use crate::error::{Error, Result};
use crate::quadrature::{geometric_edges, GaussLegendre};
use crate::signals::Signal;

/// Truncated Fourier expansion: a_0 plus cosine/sine coefficients 1..=K.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierExpansion {
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl FourierExpansion {
    /// Build from coefficient vectors. `a` and `b` must have equal length.
    pub fn new(a0: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Parameter(format!(
                "coefficient vectors must have equal length ({} vs {})",
                a.len(),
                b.len()
            )));
        }
        Ok(Self { a0, a, b })
    }

    /// Truncation order K.
    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// n-th partial sum a_0/2 + sum_{k<=n} (a_k cos kx + b_k sin kx).
    pub fn partial_sum(&self, n: usize, x: f64) -> Result<f64> {
        if n > self.order() {
            return Err(Error::TruncationOrder {
                requested: n,
                available: self.order(),
            });
        }
        let mut acc = 0.5 * self.a0;
        let (sin_x, cos_x) = x.sin_cos();
        let mut ck = 1.0;
        let mut sk = 0.0;
        for k in 1..=n {
            let c = ck * cos_x - sk * sin_x;
            let s = sk * cos_x + ck * sin_x;
            ck = c;
            sk = s;
            acc += self.a[k - 1] * c + self.b[k - 1] * s;
        }
        Ok(acc)
    }

    /// n-th conjugate partial sum sum_{k<=n} (a_k sin kx - b_k cos kx).
    /// n = 0 is the empty sum.
    pub fn conjugate_partial_sum(&self, n: usize, x: f64) -> Result<f64> {
        if n > self.order() {
            return Err(Error::TruncationOrder {
                requested: n,
                available: self.order(),
            });
        }
        let mut acc = 0.0;
        let (sin_x, cos_x) = x.sin_cos();
        let mut ck = 1.0;
        let mut sk = 0.0;
        for k in 1..=n {
            let c = ck * cos_x - sk * sin_x;
            let s = sk * cos_x + ck * sin_x;
            ck = c;
            sk = s;
            acc += self.a[k - 1] * s - self.b[k - 1] * c;
        }
        Ok(acc)
    }

    /// All conjugate partial sums s~_0..s~_max in one sweep.
    pub fn conjugate_partial_sums_upto(&self, max: usize, x: f64) -> Result<Vec<f64>> {
        if max > self.order() {
            return Err(Error::TruncationOrder {
                requested: max,
                available: self.order(),
            });
        }
        let mut out = Vec::with_capacity(max + 1);
        let mut acc = 0.0;
        out.push(acc);
        let (sin_x, cos_x) = x.sin_cos();
        let mut ck = 1.0;
        let mut sk = 0.0;
        for k in 1..=max {
            let c = ck * cos_x - sk * sin_x;
            let s = sk * cos_x + ck * sin_x;
            ck = c;
            sk = s;
            acc += self.a[k - 1] * s - self.b[k - 1] * c;
            out.push(acc);
        }
        Ok(out)
    }

    /// Full evaluation: partial sum at the truncation order.
    pub fn eval(&self, x: f64) -> f64 {
        self.partial_sum(self.order(), x).expect("order bound")
    }

    /// Full conjugate evaluation (the coefficient map of the expansion).
    pub fn conjugate_eval(&self, x: f64) -> f64 {
        self.conjugate_partial_sum(self.order(), x).expect("order bound")
    }
}

/// Coefficients a_k, b_k (k <= order) of `f` by periodic rectangle-rule
/// quadrature on `grid_points` uniform samples: exact (to round-off) for
/// trigonometric polynomials of degree <= grid_points/2 - 1.
///
/// Requires grid_points >= 4 * order as an anti-aliasing margin.
pub fn fourier_coefficients(
    f: &Signal,
    order: usize,
    grid_points: usize,
) -> Result<FourierExpansion> {
    let needed = 4 * order.max(1);
    if grid_points < needed {
        return Err(Error::Aliasing {
            grid_points,
            order,
            needed,
        });
    }
    let g = grid_points;
    let step = std::f64::consts::TAU / g as f64;
    let samples: Vec<f64> = (0..g).map(|j| f.eval(j as f64 * step)).collect();

    let mut a = vec![0.0; order];
    let mut b = vec![0.0; order];
    let mut a0 = 0.0;
    for (j, &fj) in samples.iter().enumerate() {
        let x = j as f64 * step;
        let (sin_x, cos_x) = x.sin_cos();
        a0 += fj;
        let mut ck = 1.0;
        let mut sk = 0.0;
        for k in 0..order {
            let c = ck * cos_x - sk * sin_x;
            let s = sk * cos_x + ck * sin_x;
            ck = c;
            sk = s;
            a[k] += fj * c;
            b[k] += fj * s;
        }
    }
    let scale = 2.0 / g as f64;
    a.iter_mut().for_each(|v| *v *= scale);
    b.iter_mut().for_each(|v| *v *= scale);
    FourierExpansion::new(a0 * scale, a, b)
}

/// Odd symmetric difference f(x + t) - f(x - t).
pub fn psi_difference(f: &Signal, x: f64, t: f64) -> f64 {
    f.eval(x + t) - f.eval(x - t)
}

/// How the vanishing cutoff of the principal-value integral is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refinement {
    /// Integrate from the stated cutoff only; no extrapolation.
    Fixed,
    /// Halve the cutoff `levels` times and extrapolate the limit from the
    /// geometric sequence of estimates.
    GeometricCutoffs { levels: usize },
}

/// Parameters of the principal-value conjugate integral.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalValueSpec {
    /// Initial cutoff h > 0.
    pub cutoff: f64,
    /// Number of geometrically graded panels on [cutoff, pi].
    pub panels: usize,
    /// Gauss-Legendre points per panel.
    pub gl_order: usize,
    pub refinement: Refinement,
}

impl Default for PrincipalValueSpec {
    fn default() -> Self {
        Self {
            cutoff: 1e-6,
            panels: 2048,
            gl_order: 8,
            refinement: Refinement::GeometricCutoffs { levels: 5 },
        }
    }
}

impl PrincipalValueSpec {
    fn validate(&self) -> Result<()> {
        if !(self.cutoff > 0.0 && self.cutoff < 1.0) {
            return Err(Error::Parameter(format!(
                "pv cutoff must be in (0, 1), got {}",
                self.cutoff
            )));
        }
        if self.panels < 16 {
            return Err(Error::Parameter(format!(
                "pv panel count must be >= 16, got {}",
                self.panels
            )));
        }
        Ok(())
    }
}

/// Principal-value estimate with the extrapolation error indicator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvEstimate {
    pub value: f64,
    /// Estimated magnitude of the remaining cutoff error; `None` in fixed
    /// mode, where no cutoff sequence is available.
    pub error_estimate: Option<f64>,
}

/// Conjugate function at `x`:
/// -(1/2pi) * integral over (0, pi] of psi_x(t) cot(t/2) dt,
/// computed on [h, pi] with geometrically graded panels and, in geometric
/// mode, extrapolated over the cutoff sequence h, h/2, h/4, ...
pub fn conjugate_function_pv(f: &Signal, x: f64, spec: &PrincipalValueSpec) -> Result<PvEstimate> {
    spec.validate()?;
    let pi = std::f64::consts::PI;
    let levels = match spec.refinement {
        Refinement::Fixed => 1,
        Refinement::GeometricCutoffs { levels } => levels.max(1),
    };
    let integrand = |t: f64| psi_difference(f, x, t) * (0.5 * t).cos() / (0.5 * t).sin();
    let rule = GaussLegendre::new(spec.gl_order)?;

    // Cutoffs in descending order h_0 > h_1 > ... ; the integration domain
    // is [h_{levels-1}, pi] and each coarser estimate drops bridge panels.
    let cutoffs: Vec<f64> = (0..levels).map(|j| spec.cutoff * 0.5_f64.powi(j as i32)).collect();
    let mut edges: Vec<f64> = cutoffs.iter().rev().cloned().collect();
    edges.extend_from_slice(&geometric_edges(spec.cutoff, pi, spec.panels)?[1..]);

    let panel_values: Vec<f64> = edges
        .windows(2)
        .map(|w| rule.integrate(&integrand, w[0], w[1]))
        .collect();

    // estimates[j] = integral from cutoff_j to pi, j = 0 (coarsest cutoff)
    // through levels-1 (finest).
    let scale = -1.0 / std::f64::consts::TAU;
    let mut estimates = vec![0.0; levels];
    let tail: f64 = panel_values[levels - 1..].iter().sum();
    estimates[0] = scale * tail + 0.0;
    for j in 1..levels {
        // adding bridge panels from the right: panel (levels-1-j) spans
        // [cutoff_j, cutoff_{j-1}]
        let with_bridges: f64 = panel_values[levels - 1 - j..].iter().sum();
        estimates[j] = scale * with_bridges + 0.0;
    }

    if levels == 1 {
        return Ok(PvEstimate {
            value: estimates[0],
            error_estimate: None,
        });
    }

    let deltas: Vec<f64> = estimates.windows(2).map(|w| w[1] - w[0]).collect();
    let last = *deltas.last().unwrap();
    let prev = deltas[deltas.len() - 2];
    let floor = 1e-14 * (1.0 + estimates[levels - 1].abs());

    if last.abs() <= floor {
        return Ok(PvEstimate {
            value: estimates[levels - 1],
            error_estimate: Some(last.abs()),
        });
    }
    // Contraction test: a cutoff tail of size O(h^beta) halves the deltas at
    // rate 2^-beta < 1. Deltas that stop contracting indicate a logarithmic
    // (or worse) divergence, as at a jump of the signal.
    if last.abs() >= 0.95 * prev.abs() {
        return Err(Error::PvDivergence {
            previous: prev.abs(),
            last: last.abs(),
        });
    }
    let ratio = last / prev;
    let correction = last * ratio / (1.0 - ratio);
    Ok(PvEstimate {
        value: estimates[levels - 1] + correction,
        error_estimate: Some(correction.abs().max(floor)),
    })
}

/// Seeded random expansion with coefficients uniform in [-1, 1); used by the
/// oracle-equivalence and conjugation tests.
pub fn random_expansion<R: Rng>(degree: usize, rng: &mut R) -> FourierExpansion {
    let a0 = rng.gen_range(-1.0..1.0);
    let a = (0..degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let b = (0..degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
    FourierExpansion { a0, a, b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cosine_coefficients() {
        let e = fourier_coefficients(&signals::cosk(1), 4, 64).unwrap();
        assert_relative_eq!(e.a[0], 1.0, epsilon = 1e-10);
        assert!(e.a0.abs() < 1e-10);
        for k in 1..4 {
            assert!(e.a[k].abs() < 1e-10);
        }
        for k in 0..4 {
            assert!(e.b[k].abs() < 1e-10);
        }
    }

    #[test]
    fn constant_coefficients_use_half_a0_convention() {
        let e = fourier_coefficients(&signals::constant(3.5), 4, 64).unwrap();
        assert_relative_eq!(e.a0, 7.0, epsilon = 1e-10);
        assert!(e.a.iter().chain(&e.b).all(|c| c.abs() < 1e-12));
    }

    #[test]
    fn sawtooth_coefficients_match_analytic_integral() {
        // analytic oracle: b_k = 2 (-1)^{k+1} / k; the rectangle rule on a
        // jump signal carries O(k/G^2) aliasing, about 6.3e-6 at k = 16 for
        // G = 4096 and below 1e-6 once G = 16384.
        let f = signals::sawtooth();
        let e = fourier_coefficients(&f, 16, 4096).unwrap();
        for k in 1..=16usize {
            let exact = 2.0 * if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            assert_relative_eq!(e.b[k - 1], exact, epsilon = 1e-5);
            assert!(e.a[k - 1].abs() < 1e-10);
        }
        let e = fourier_coefficients(&f, 16, 16384).unwrap();
        for k in 1..=16usize {
            let exact = 2.0 * if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            assert_relative_eq!(e.b[k - 1], exact, epsilon = 1e-6);
        }
    }

    #[test]
    fn aliasing_guard() {
        assert!(matches!(
            fourier_coefficients(&signals::cosk(1), 16, 32),
            Err(Error::Aliasing { .. })
        ));
    }

    #[test]
    fn partial_sum_reproduces_trig_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let e = random_expansion(6, &mut rng);
        let f = signals::from_expansion(&e, "random poly");
        for i in 0..32 {
            let x = i as f64 * 0.2;
            assert_relative_eq!(e.partial_sum(6, x).unwrap(), f.eval(x), epsilon = 1e-10);
        }
        // n = 0 is a_0/2 everywhere
        assert_relative_eq!(e.partial_sum(0, 1.23).unwrap(), e.a0 / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn square_wave_partial_sum_at_quarter_period() {
        let f = signals::square();
        // quadrature on a jump signal carries O(1/G) aliasing in b_k
        let e = fourier_coefficients(&f, 5, 4096).unwrap();
        let got = e.partial_sum(5, std::f64::consts::FRAC_PI_2).unwrap();
        let exact = 4.0 / std::f64::consts::PI * (1.0 - 1.0 / 3.0 + 1.0 / 5.0);
        assert_relative_eq!(got, exact, epsilon = 1e-3);

        // same value straight from the analytic coefficients
        let e = f.expansion(5, 4096).unwrap();
        let got = e.partial_sum(5, std::f64::consts::FRAC_PI_2).unwrap();
        assert_relative_eq!(got, exact, epsilon = 1e-12);
    }

    #[test]
    fn truncation_order_guard() {
        let e = FourierExpansion::new(0.0, vec![1.0], vec![0.0]).unwrap();
        assert!(matches!(
            e.partial_sum(2, 0.0),
            Err(Error::TruncationOrder { .. })
        ));
        assert!(e.conjugate_partial_sum(2, 0.0).is_err());
    }

    #[test]
    fn psi_is_odd_and_matches_trig_identity() {
        let f = signals::cosk(1);
        for &(x, t) in &[(0.3, 0.7), (1.2, 0.01), (4.0, 2.0)] {
            let psi = psi_difference(&f, x, t);
            assert_relative_eq!(psi, -2.0 * x.sin() * t.sin(), epsilon = 1e-12);
            assert_eq!(psi_difference(&f, x, -t), -psi);
        }
        assert_eq!(psi_difference(&f, 1.7, 0.0), 0.0);
        let c = signals::constant(2.0);
        assert_eq!(psi_difference(&c, 0.4, 0.9), 0.0);
    }

    #[test]
    fn pv_spec_is_validated() {
        let f = signals::cosk(1);
        let bad_panels = PrincipalValueSpec {
            panels: 8,
            ..Default::default()
        };
        assert!(conjugate_function_pv(&f, 0.0, &bad_panels).is_err());
        let bad_cutoff = PrincipalValueSpec {
            cutoff: 0.0,
            ..Default::default()
        };
        assert!(conjugate_function_pv(&f, 0.0, &bad_cutoff).is_err());
    }

    #[test]
    fn pv_of_constant_is_zero() {
        let est =
            conjugate_function_pv(&signals::constant(5.0), 1.0, &PrincipalValueSpec::default())
                .unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn pv_of_cosine_is_sine() {
        let spec = PrincipalValueSpec::default();
        for i in 0..8 {
            let x = i as f64 * 0.7;
            let est = conjugate_function_pv(&signals::cosk(1), x, &spec).unwrap();
            assert_relative_eq!(est.value, x.sin(), epsilon = 1e-6);
        }
    }

    #[test]
    fn pv_of_sine_is_negative_cosine() {
        let e = FourierExpansion::new(0.0, vec![0.0], vec![1.0]).unwrap();
        let f = signals::from_expansion(&e, "sin x");
        let spec = PrincipalValueSpec::default();
        for i in 0..8 {
            let x = 0.3 + i as f64 * 0.7;
            let est = conjugate_function_pv(&f, x, &spec).unwrap();
            assert_relative_eq!(est.value, -x.cos(), epsilon = 1e-6);
        }
    }

    #[test]
    fn pv_matches_coefficient_map_on_random_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let e = random_expansion(8, &mut rng);
        let f = signals::from_expansion(&e, "random poly");
        let spec = PrincipalValueSpec::default();
        for i in 0..16 {
            let x = i as f64 * std::f64::consts::TAU / 16.0;
            let est = conjugate_function_pv(&f, x, &spec).unwrap();
            assert_relative_eq!(est.value, e.conjugate_eval(x), epsilon = 1e-5);
        }
    }

    #[test]
    fn pv_fixed_mode_reports_no_estimate() {
        let spec = PrincipalValueSpec {
            refinement: Refinement::Fixed,
            ..Default::default()
        };
        let est = conjugate_function_pv(&signals::cosk(1), 0.9, &spec).unwrap();
        assert!(est.error_estimate.is_none());
        assert_relative_eq!(est.value, 0.9_f64.sin(), epsilon = 1e-5);
    }

    #[test]
    fn pv_diverges_on_jump_at_the_evaluation_point() {
        // square wave: psi(t) -> 2 as t -> 0 when x sits on the jump, so the
        // cotangent integral grows like log(1/h) and the cutoff deltas stay
        // constant instead of contracting.
        let spec = PrincipalValueSpec::default();
        let err = conjugate_function_pv(&signals::square(), 0.0, &spec);
        assert!(matches!(err, Err(Error::PvDivergence { .. })));
    }

    #[test]
    fn conjugation_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e1 = random_expansion(5, &mut rng);
        let e2 = random_expansion(5, &mut rng);
        let f1 = signals::from_expansion(&e1, "f1");
        let f2 = signals::from_expansion(&e2, "f2");
        let combined = {
            let a: Vec<f64> = e1.a.iter().zip(&e2.a).map(|(u, v)| 2.0 * u - 3.0 * v).collect();
            let b: Vec<f64> = e1.b.iter().zip(&e2.b).map(|(u, v)| 2.0 * u - 3.0 * v).collect();
            signals::from_expansion(
                &FourierExpansion::new(2.0 * e1.a0 - 3.0 * e2.a0, a, b).unwrap(),
                "2 f1 - 3 f2",
            )
        };
        let spec = PrincipalValueSpec::default();
        for i in 0..6 {
            let x = 0.5 + i as f64;
            let lhs = conjugate_function_pv(&combined, x, &spec).unwrap().value;
            let rhs = 2.0 * conjugate_function_pv(&f1, x, &spec).unwrap().value
                - 3.0 * conjugate_function_pv(&f2, x, &spec).unwrap().value;
            assert_relative_eq!(lhs, rhs, epsilon = 2e-5);
        }
    }
}
