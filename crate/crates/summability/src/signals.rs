//! 2pi-periodic signals and the built-in registry.
//!
//! A signal is an evaluator closure plus optional analytic metadata: known
//! Fourier coefficients, a finite content degree, a known Lipschitz exponent,
//! and a jump flag. The metadata lets the experiment harness build exact
//! expansions and exact conjugates where closed forms exist, falling back to
//! quadrature otherwise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fourier::{fourier_coefficients, FourierExpansion};

type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type CoeffFn = Arc<dyn Fn(usize) -> (f64, f64) + Send + Sync>;

/// An evaluable 2pi-periodic real signal.
#[derive(Clone)]
pub struct Signal {
    eval: EvalFn,
    description: String,
    known_alpha: Option<f64>,
    /// k -> (a_k, b_k) for k >= 1; k = 0 -> (a_0, unused).
    coefficients: Option<CoeffFn>,
    /// Some(d) when a_k = b_k = 0 for all k > d.
    degree: Option<usize>,
    jump_discontinuous: bool,
}

impl fmt::Debug for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signal({})", self.description)
    }
}

impl Signal {
    /// Wrap an arbitrary 2pi-periodic evaluator.
    pub fn new<F>(eval: F, description: &str) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            description: description.into(),
            known_alpha: None,
            coefficients: None,
            degree: None,
            jump_discontinuous: false,
        }
    }

    pub fn with_known_alpha(mut self, alpha: f64) -> Self {
        self.known_alpha = Some(alpha);
        self
    }

    pub fn with_coefficients<F>(mut self, coeffs: F, degree: Option<usize>) -> Self
    where
        F: Fn(usize) -> (f64, f64) + Send + Sync + 'static,
    {
        self.coefficients = Some(Arc::new(coeffs));
        self.degree = degree;
        self
    }

    pub fn with_jumps(mut self) -> Self {
        self.jump_discontinuous = true;
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn known_alpha(&self) -> Option<f64> {
        self.known_alpha
    }

    /// Finite content degree, when the signal is a trigonometric polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn has_jumps(&self) -> bool {
        self.jump_discontinuous
    }

    /// Expansion to `order`: from closed-form coefficients when available,
    /// otherwise by quadrature on `grid_points` samples.
    pub fn expansion(&self, order: usize, grid_points: usize) -> Result<FourierExpansion> {
        if let Some(coeffs) = &self.coefficients {
            let a0 = coeffs(0).0;
            let mut a = Vec::with_capacity(order);
            let mut b = Vec::with_capacity(order);
            for k in 1..=order {
                let (ak, bk) = match self.degree {
                    Some(d) if k > d => (0.0, 0.0),
                    _ => coeffs(k),
                };
                a.push(ak);
                b.push(bk);
            }
            return FourierExpansion::new(a0, a, b);
        }
        fourier_coefficients(self, order, grid_points)
    }

    /// Exact conjugate-function value when the signal is a trigonometric
    /// polynomial with known coefficients; `None` otherwise.
    pub fn exact_conjugate(&self, x: f64) -> Option<f64> {
        let (coeffs, degree) = match (&self.coefficients, self.degree) {
            (Some(c), Some(d)) => (c, d),
            _ => return None,
        };
        let mut acc = 0.0;
        let (sin_x, cos_x) = x.sin_cos();
        let mut ck = 1.0;
        let mut sk = 0.0;
        for k in 1..=degree {
            let c = ck * cos_x - sk * sin_x;
            let s = sk * cos_x + ck * sin_x;
            ck = c;
            sk = s;
            let (ak, bk) = coeffs(k);
            acc += ak * s - bk * c;
        }
        Some(acc)
    }
}

/// Constant signal f(x) = c.
pub fn constant(c: f64) -> Signal {
    Signal::new(move |_| c, &format!("constant({c:?})")).with_coefficients(
        move |k| if k == 0 { (2.0 * c, 0.0) } else { (0.0, 0.0) },
        Some(0),
    )
}

/// Pure cosine f(x) = cos(kx).
pub fn cosk(k: usize) -> Signal {
    let kf = k as f64;
    Signal::new(move |x| (kf * x).cos(), &format!("cosk({k})"))
        .with_coefficients(
            move |j| {
                if j == k && k > 0 {
                    (1.0, 0.0)
                } else if j == 0 && k == 0 {
                    (2.0, 0.0)
                } else {
                    (0.0, 0.0)
                }
            },
            Some(k),
        )
        .with_known_alpha(1.0)
}

/// Sawtooth f(x) = x on (-pi, pi), extended periodically; 0 at the jump.
pub fn sawtooth() -> Signal {
    Signal::new(
        |x| {
            let y = x - std::f64::consts::TAU * (x / std::f64::consts::TAU).round();
            if y.abs() == std::f64::consts::PI {
                0.0
            } else {
                y
            }
        },
        "sawtooth",
    )
    .with_coefficients(
        |k| {
            if k == 0 {
                (0.0, 0.0)
            } else {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                (0.0, 2.0 * sign / k as f64)
            }
        },
        None,
    )
    .with_jumps()
}

/// Square wave sign(sin x); 0 at the jumps.
pub fn square() -> Signal {
    Signal::new(
        |x| {
            let s = x.sin();
            if s > 0.0 {
                1.0
            } else if s < 0.0 {
                -1.0
            } else {
                0.0
            }
        },
        "square",
    )
    .with_coefficients(
        |k| {
            if k % 2 == 1 {
                (0.0, 4.0 / (std::f64::consts::PI * k as f64))
            } else {
                (0.0, 0.0)
            }
        },
        None,
    )
    .with_jumps()
}

/// Lacunary cosine sum sum_{j=0..=levels} 2^{-j alpha} cos(2^j x): the
/// standard Lip-alpha test signal at scales coarser than 2^{-levels}.
pub fn weierstrass(alpha: f64, levels: usize) -> Result<Signal> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Parameter(format!(
            "weierstrass exponent must be in (0, 1], got {alpha}"
        )));
    }
    if levels > 20 {
        return Err(Error::Parameter(format!(
            "weierstrass levels must be <= 20, got {levels}"
        )));
    }
    let amplitudes: Arc<Vec<f64>> =
        Arc::new((0..=levels).map(|j| 2.0_f64.powf(-(j as f64) * alpha)).collect());
    let eval_amp = Arc::clone(&amplitudes);
    let coeff_amp = Arc::clone(&amplitudes);
    let degree = 1usize << levels;
    Ok(Signal::new(
        move |x| {
            eval_amp
                .iter()
                .enumerate()
                .map(|(j, &c)| c * ((1u64 << j) as f64 * x).cos())
                .sum()
        },
        &format!("weierstrass({alpha:?},{levels})"),
    )
    .with_coefficients(
        move |k| {
            if k == 0 {
                return (0.0, 0.0);
            }
            if k.is_power_of_two() {
                let j = k.trailing_zeros() as usize;
                if j < coeff_amp.len() {
                    return (coeff_amp[j], 0.0);
                }
            }
            (0.0, 0.0)
        },
        Some(degree),
    )
    .with_known_alpha(alpha))
}

/// Signal backed by a fixed expansion.
pub fn from_expansion(e: &FourierExpansion, description: &str) -> Signal {
    let owned = e.clone();
    let coeff_src = e.clone();
    let degree = e.order();
    Signal::new(move |x| owned.eval(x), description).with_coefficients(
        move |k| {
            if k == 0 {
                (coeff_src.a0, 0.0)
            } else if k <= coeff_src.order() {
                (coeff_src.a[k - 1], coeff_src.b[k - 1])
            } else {
                (0.0, 0.0)
            }
        },
        Some(degree),
    )
}

/// Resolve a registry expression: `cosk(k)`, `sawtooth`, `square`,
/// `weierstrass(alpha, levels)`, `constant(c)`.
pub fn from_name(expr: &str) -> Result<Signal> {
    let s = expr.trim();
    match s {
        "sawtooth" => return Ok(sawtooth()),
        "square" => return Ok(square()),
        _ => {}
    }
    if let Some(args) = parse_call(s, "cosk") {
        let k = parse_usize(&args, 1, s)?;
        return Ok(cosk(k[0]));
    }
    if let Some(args) = parse_call(s, "weierstrass") {
        let vals = parse_f64(&args, 2, s)?;
        if vals[1].fract() != 0.0 || vals[1] < 0.0 {
            return Err(Error::Config(format!(
                "weierstrass levels must be a nonnegative integer, got {}",
                vals[1]
            )));
        }
        return weierstrass(vals[0], vals[1] as usize);
    }
    if let Some(args) = parse_call(s, "constant") {
        let vals = parse_f64(&args, 1, s)?;
        return Ok(constant(vals[0]));
    }
    Err(Error::UnknownName(s.into()))
}

fn parse_call(s: &str, name: &str) -> Option<Vec<String>> {
    let rest = s.strip_prefix(name)?.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(|t| t.trim().to_string()).collect())
}

fn parse_f64(args: &[String], expect: usize, ctx: &str) -> Result<Vec<f64>> {
    if args.len() != expect {
        return Err(Error::Config(format!(
            "{ctx}: expected {expect} parameter(s), got {}",
            args.len()
        )));
    }
    args.iter()
        .map(|a| {
            a.parse::<f64>()
                .map_err(|_| Error::Config(format!("malformed numeric in {ctx}: {a}")))
        })
        .collect()
}

fn parse_usize(args: &[String], expect: usize, ctx: &str) -> Result<Vec<usize>> {
    if args.len() != expect {
        return Err(Error::Config(format!(
            "{ctx}: expected {expect} parameter(s), got {}",
            args.len()
        )));
    }
    args.iter()
        .map(|a| {
            a.parse::<usize>()
                .map_err(|_| Error::Config(format!("malformed integer in {ctx}: {a}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn signals_are_periodic() {
        for f in [
            cosk(3),
            sawtooth(),
            square(),
            weierstrass(0.5, 8).unwrap(),
            constant(2.0),
        ] {
            // sample away from the jump points of the discontinuous signals
            for i in 0..16 {
                let x = 0.37 + i as f64 * 0.41;
                assert_relative_eq!(
                    f.eval(x),
                    f.eval(x + std::f64::consts::TAU),
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn weierstrass_exact_expansion_is_sparse() {
        let f = weierstrass(0.9, 5).unwrap();
        let e = f.expansion(40, 0).unwrap();
        assert_relative_eq!(e.a[0], 1.0);
        assert_relative_eq!(e.a[1], 2.0_f64.powf(-0.9));
        assert_relative_eq!(e.a[31], 2.0_f64.powf(-4.5));
        assert_eq!(e.a[2], 0.0);
        assert_eq!(e.b.iter().map(|v| v.abs()).sum::<f64>(), 0.0);
        // closed-form coefficients agree with quadrature
        let q = fourier_coefficients(&f, 40, 256).unwrap();
        for k in 0..40 {
            assert_relative_eq!(e.a[k], q.a[k], epsilon = 1e-10);
        }
    }

    #[test]
    fn exact_conjugate_of_cosine() {
        let f = cosk(2);
        for i in 0..8 {
            let x = i as f64 * 0.5;
            assert_relative_eq!(
                f.exact_conjugate(x).unwrap(),
                (2.0 * x).sin(),
                epsilon = 1e-12
            );
        }
        assert!(sawtooth().exact_conjugate(0.5).is_none());
    }

    #[test]
    fn registry_lookups() {
        assert!(from_name("sawtooth").is_ok());
        assert!(from_name("square").is_ok());
        assert!(from_name("cosk(4)").is_ok());
        assert!(from_name("constant(1.5)").is_ok());
        let w = from_name("weierstrass(0.9, 12)").unwrap();
        assert_eq!(w.degree(), Some(4096));
        assert_eq!(w.known_alpha(), Some(0.9));
        assert!(from_name("nosuch").is_err());
        assert!(from_name("weierstrass(0.9)").is_err());
        assert!(from_name("cosk(x)").is_err());
    }

    #[test]
    fn jump_flags() {
        assert!(square().has_jumps());
        assert!(sawtooth().has_jumps());
        assert!(!cosk(1).has_jumps());
    }
}
