//! Summability transforms: the two-weight generalized mean, shifted almost
//! means, the almost transform of conjugate partial sums, classical
//! specializations, and the conjugate summation kernel.
//!
//! Weight order: the ordinary transform averages with reversed weights
//! p_{n-m} q_m, while the almost transform of conjugate sums uses p_m q_{n-m}.
//! Both orders are deliberate; they are the forms under which the classical
//! specializations (q = ones, p = ones) carry their usual names.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::weights::{build_convolution, ConvolutionTable, WeightKind, WeightSequence};

/// Transform mode: plain averaging or the shift-averaged "almost" form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ordinary,
    Almost { shift: usize },
}

impl Mode {
    pub fn shift(&self) -> usize {
        match self {
            Mode::Ordinary => 0,
            Mode::Almost { shift } => *shift,
        }
    }
}

/// A (p, q, mode) description of a summability transform.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub p: WeightSequence,
    pub q: WeightSequence,
    pub mode: Mode,
}

impl MethodSpec {
    pub fn new(p: WeightSequence, q: WeightSequence, mode: Mode) -> Self {
        Self { p, q, mode }
    }

    /// Switch to the almost mode with the given shift.
    pub fn almost(mut self, shift: usize) -> Self {
        self.mode = Mode::Almost { shift };
        self
    }

    /// Derived display name for reports.
    pub fn name(&self) -> String {
        let family = if self.q.is_ones() {
            match self.p.kind() {
                WeightKind::Cesaro(alpha) => format!("(C,{alpha})"),
                WeightKind::Harmonic => "harmonic mean".to_string(),
                WeightKind::Ones => "(C,1)".to_string(),
                _ => format!("Norlund[{}]", self.p.description()),
            }
        } else if self.p.is_ones() {
            format!("Riesz[{}]", self.q.description())
        } else {
            format!(
                "generalized Norlund[{}, {}]",
                self.p.description(),
                self.q.description()
            )
        };
        match self.mode {
            Mode::Ordinary => family,
            Mode::Almost { shift } => format!("almost {family} (shift {shift})"),
        }
    }
}

/// Classical specializations.
#[derive(Debug, Clone)]
pub enum ClassicMethod {
    /// (p, ones).
    Norlund(WeightSequence),
    /// (ones, q).
    Riesz(WeightSequence),
    /// (cesaro-weights(alpha), ones); alpha > 0.
    Cesaro(f64),
    /// (harmonic-weights, ones).
    Harmonic,
}

/// Build the method spec for a classical name, in ordinary mode.
pub fn classic_method(kind: ClassicMethod) -> Result<MethodSpec> {
    let (p, q) = match kind {
        ClassicMethod::Norlund(p) => (p, WeightSequence::ones()),
        ClassicMethod::Riesz(q) => (WeightSequence::ones(), q),
        ClassicMethod::Cesaro(alpha) => (WeightSequence::cesaro(alpha)?, WeightSequence::ones()),
        ClassicMethod::Harmonic => (WeightSequence::harmonic(), WeightSequence::ones()),
    };
    Ok(MethodSpec::new(p, q, Mode::Ordinary))
}

/// Ordinary two-weight mean of a sequence of partial sums:
/// (1/R_n) sum_{m<=n} p_{n-m} q_m s_m.
pub fn generalized_norlund(
    p: &WeightSequence,
    q: &WeightSequence,
    s: &[f64],
    n: usize,
) -> Result<f64> {
    if s.len() < n + 1 {
        return Err(Error::InsufficientEntries {
            needed: n + 1,
            have: s.len(),
        });
    }
    let pv = p.values(n)?;
    let qv = q.values(n)?;
    let mut normalizer = 0.0;
    let mut acc = 0.0;
    for m in 0..=n {
        normalizer += pv[m] * qv[n - m];
        acc += pv[n - m] * qv[m] * s[m];
    }
    if normalizer == 0.0 {
        return Err(Error::ZeroNormalizer { n });
    }
    Ok(acc / normalizer)
}

/// Shifted average (1/(m+1)) sum_{j=shift}^{m+shift} sigma_j.
pub fn almost_mean(sigma: &[f64], m: usize, shift: usize) -> Result<f64> {
    let needed = m + shift + 1;
    if sigma.len() < needed {
        return Err(Error::InsufficientEntries {
            needed,
            have: sigma.len(),
        });
    }
    let sum: f64 = sigma[shift..=m + shift].iter().sum();
    Ok(sum / (m as f64 + 1.0))
}

/// Batch evaluator for the (almost) generalized mean of conjugate partial
/// sums of a fixed expansion. Construction validates the normalizers once;
/// evaluation shares the conjugate-sum sweep across all requested n.
#[derive(Debug)]
pub struct ConjugateTransform<'a> {
    expansion: &'a FourierExpansion,
    mode: Mode,
    pv: Vec<f64>,
    qv: Vec<f64>,
    table: ConvolutionTable,
    max_n: usize,
}

impl<'a> ConjugateTransform<'a> {
    pub fn new(expansion: &'a FourierExpansion, spec: &MethodSpec, max_n: usize) -> Result<Self> {
        let shift = spec.mode.shift();
        let needed = max_n + shift;
        if expansion.order() < needed {
            return Err(Error::TruncationOrder {
                requested: needed,
                available: expansion.order(),
            });
        }
        let pv = spec.p.values(max_n)?;
        let qv = spec.q.values(max_n)?;
        let table = build_convolution(&spec.p, &spec.q, max_n)?;
        for (n, &r) in table.r.iter().enumerate() {
            if r == 0.0 {
                return Err(Error::ZeroNormalizer { n });
            }
        }
        Ok(Self {
            expansion,
            mode: spec.mode,
            pv,
            qv,
            table,
            max_n,
        })
    }

    pub fn table(&self) -> &ConvolutionTable {
        &self.table
    }

    /// Transform values at `x` for every n in `ns` (each n <= max_n).
    pub fn evaluate_many(&self, x: f64, ns: &[usize]) -> Result<Vec<f64>> {
        let shift = self.mode.shift();
        let cs = self
            .expansion
            .conjugate_partial_sums_upto(self.max_n + shift, x)?;
        let mut out = Vec::with_capacity(ns.len());
        match self.mode {
            Mode::Almost { .. } => {
                // prefix[j] = sum of conjugate sums 0..=j, so each shifted
                // average is one subtraction.
                let mut prefix = Vec::with_capacity(cs.len());
                let mut acc = 0.0;
                for &v in &cs {
                    acc += v;
                    prefix.push(acc);
                }
                for &n in ns {
                    if n > self.max_n {
                        return Err(Error::TruncationOrder {
                            requested: n,
                            available: self.max_n,
                        });
                    }
                    let mut sum = 0.0;
                    for m in 0..=n {
                        let window = if shift == 0 {
                            prefix[m]
                        } else {
                            prefix[m + shift] - prefix[shift - 1]
                        };
                        let shifted_mean = window / (m as f64 + 1.0);
                        sum += self.pv[m] * self.qv[n - m] * shifted_mean;
                    }
                    out.push(sum / self.table.r[n]);
                }
            }
            Mode::Ordinary => {
                for &n in ns {
                    if n > self.max_n {
                        return Err(Error::TruncationOrder {
                            requested: n,
                            available: self.max_n,
                        });
                    }
                    let mut sum = 0.0;
                    for m in 0..=n {
                        sum += self.pv[n - m] * self.qv[m] * cs[m];
                    }
                    out.push(sum / self.table.r[n]);
                }
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.evaluate_many(x, &[n])?[0])
    }
}

/// Almost generalized mean of the conjugate partial sums of `e` at `x`:
/// (1/R_n) sum_{m<=n} p_m q_{n-m} s~_{m,shift}(x).
pub fn almost_generalized_norlund(
    e: &FourierExpansion,
    spec: &MethodSpec,
    n: usize,
    x: f64,
) -> Result<f64> {
    if spec.mode == Mode::Ordinary {
        return Err(Error::Parameter(
            "almost_generalized_norlund requires a method in almost mode".into(),
        ));
    }
    ConjugateTransform::new(e, spec, n)?.evaluate(n, x)
}

/// Index parameters of the conjugate summation kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelSpec {
    /// Number of cosine terms minus one.
    pub m: usize,
    /// Starting index of the term sum.
    pub shift: usize,
}

/// Conjugate kernel sum_{p=shift}^{shift+m} cos((p+1/2)t) cos(pt/2) / sin(t/2)
/// for t in (0, pi].
pub fn conjugate_kernel(spec: &KernelSpec, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::KernelSingularity);
    }
    if !(t > 0.0 && t <= std::f64::consts::PI) {
        return Err(Error::Parameter(format!(
            "kernel argument must lie in (0, pi], got {t}"
        )));
    }
    let mut sum = 0.0;
    for p in spec.shift..=spec.shift + spec.m {
        let pf = p as f64;
        sum += ((pf + 0.5) * t).cos() * (pf * t / 2.0).cos();
    }
    Ok(sum / (0.5 * t).sin())
}
