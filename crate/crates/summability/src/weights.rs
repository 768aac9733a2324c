//! Weight-sequence algebra: construction, convolution, head/rest
//! bounded-variation classification, and regularity checks for two-weight
//! summability methods.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// How a weight sequence generates its values.
#[derive(Clone)]
pub enum WeightKind {
    /// w_n = 1.
    Ones,
    /// w_n = 1/(n+1).
    Harmonic,
    /// w_n = binomial(n + alpha - 1, alpha - 1), evaluated by the stable
    /// product recurrence w_n = w_{n-1} (n + alpha - 1)/n. This is the
    /// Gamma-ratio extension for non-integer alpha.
    Cesaro(f64),
    /// w_n = ratio^n.
    Geometric(f64),
    /// Tabulated values; evaluation beyond the table is an error.
    Explicit(Arc<Vec<f64>>),
    /// Arbitrary rule.
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

/// A nonnegative weight sequence (p_n or q_n).
#[derive(Clone)]
pub struct WeightSequence {
    kind: WeightKind,
    description: String,
}

impl fmt::Debug for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSequence({})", self.description)
    }
}

impl PartialEq for WeightSequence {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (WeightKind::Ones, WeightKind::Ones) => true,
            (WeightKind::Harmonic, WeightKind::Harmonic) => true,
            (WeightKind::Cesaro(a), WeightKind::Cesaro(b)) => a == b,
            (WeightKind::Geometric(a), WeightKind::Geometric(b)) => a == b,
            (WeightKind::Explicit(a), WeightKind::Explicit(b)) => a == b,
            (WeightKind::Custom(a), WeightKind::Custom(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl WeightSequence {
    /// Constant weights w_n = 1.
    pub fn ones() -> Self {
        Self {
            kind: WeightKind::Ones,
            description: "ones".into(),
        }
    }

    /// Harmonic weights w_n = 1/(n+1).
    pub fn harmonic() -> Self {
        Self {
            kind: WeightKind::Harmonic,
            description: "harmonic".into(),
        }
    }

    /// Cesaro weights of order `alpha` > 0. `cesaro(1)` coincides with `ones`
    /// exactly; `cesaro(2)` gives w_n = n + 1.
    pub fn cesaro(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Parameter(format!(
                "cesaro order must be positive and finite, got {alpha}"
            )));
        }
        Ok(Self {
            kind: WeightKind::Cesaro(alpha),
            description: format!("cesaro({alpha})"),
        })
    }

    /// Geometric weights w_n = ratio^n with 0 < ratio <= 1.
    pub fn geometric(ratio: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(Error::Parameter(format!(
                "geometric ratio must be in (0, 1], got {ratio}"
            )));
        }
        Ok(Self {
            kind: WeightKind::Geometric(ratio),
            description: format!("geometric({ratio})"),
        })
    }

    /// Tabulated weights.
    pub fn explicit(values: Vec<f64>) -> Self {
        Self {
            kind: WeightKind::Explicit(Arc::new(values)),
            description: "explicit".into(),
        }
    }

    /// Weights from an arbitrary rule.
    pub fn custom<F>(rule: F, description: &str) -> Self
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        Self {
            kind: WeightKind::Custom(Arc::new(rule)),
            description: description.into(),
        }
    }

    /// Human-readable tag, also used by the config serializer.
    pub fn description(&self) -> &str {
        &self.description
    }

    /// The generating rule.
    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    /// True when the sequence is the literal all-ones sequence.
    pub fn is_ones(&self) -> bool {
        matches!(self.kind, WeightKind::Ones)
            || matches!(self.kind, WeightKind::Cesaro(a) if a == 1.0)
    }

    /// Evaluate w_0..w_n, validating that every value is finite and
    /// nonnegative.
    pub fn values(&self, n: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(n + 1);
        match &self.kind {
            WeightKind::Ones => out.resize(n + 1, 1.0),
            WeightKind::Harmonic => {
                out.extend((0..=n).map(|k| 1.0 / (k as f64 + 1.0)));
            }
            WeightKind::Cesaro(alpha) => {
                let mut w = 1.0;
                out.push(w);
                for k in 1..=n {
                    w *= (k as f64 + alpha - 1.0) / k as f64;
                    out.push(w);
                }
            }
            WeightKind::Geometric(ratio) => {
                let mut w = 1.0;
                out.push(w);
                for _ in 1..=n {
                    w *= ratio;
                    out.push(w);
                }
            }
            WeightKind::Explicit(values) => {
                if values.len() < n + 1 {
                    return Err(Error::InsufficientEntries {
                        needed: n + 1,
                        have: values.len(),
                    });
                }
                out.extend_from_slice(&values[..=n]);
            }
            WeightKind::Custom(rule) => {
                out.extend((0..=n).map(|k| rule(k)));
            }
        }
        for (index, &value) in out.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidWeight { index, value });
            }
        }
        Ok(out)
    }

    /// Single value w_n. Prefer [`WeightSequence::values`] in loops.
    pub fn value(&self, n: usize) -> Result<f64> {
        Ok(*self.values(n)?.last().unwrap())
    }
}

/// Prefix sums and convolution of a weight pair.
///
/// All three columns are accumulated in the same index order as the
/// convolution fold, so the reductions q = ones => R_n = P_n and
/// p = ones => R_n = Q_n hold bitwise, not merely to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionTable {
    /// R_n = sum_{m<=n} p_m q_{n-m}.
    pub r: Vec<f64>,
    /// P_n = sum_{m<=n} p_m.
    pub p: Vec<f64>,
    /// Q_n = sum_{m<=n} q_m.
    pub q: Vec<f64>,
}

impl ConvolutionTable {
    /// Horizon N (table holds indices 0..=N).
    pub fn horizon(&self) -> usize {
        self.r.len() - 1
    }
}

/// Build the convolution table for indices 0..=n.
pub fn build_convolution(p: &WeightSequence, q: &WeightSequence, n: usize) -> Result<ConvolutionTable> {
    let pv = p.values(n)?;
    let qv = q.values(n)?;
    Ok(convolution_from_values(&pv, &qv))
}

pub(crate) fn convolution_from_values(pv: &[f64], qv: &[f64]) -> ConvolutionTable {
    let n = pv.len() - 1;
    let mut r = Vec::with_capacity(n + 1);
    let mut p = Vec::with_capacity(n + 1);
    let mut q = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut rs = 0.0;
        let mut ps = 0.0;
        let mut qs = 0.0;
        for m in 0..=k {
            rs += pv[m] * qv[k - m];
            ps += pv[m];
            qs += qv[k - m];
        }
        r.push(rs);
        p.push(ps);
        q.push(qs);
    }
    ConvolutionTable { r, p, q }
}

/// Which variation class a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariationClass {
    /// Head variation sum_{k<n} |c_k - c_{k+1}| bounded by K c_n.
    Head,
    /// Rest variation sum_{k>=n} |c_k - c_{k+1}| bounded by K c_n; requires
    /// the sequence to tend to zero.
    Rest,
}

impl fmt::Display for VariationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariationClass::Head => write!(f, "HBVS"),
            VariationClass::Rest => write!(f, "RBVS"),
        }
    }
}

/// Outcome of a bounded-variation classification sweep.
#[derive(Debug, Clone)]
pub struct VariationReport {
    pub class_tested: VariationClass,
    /// Whether the bound holds with `k_candidate` at every tested index.
    pub holds: bool,
    /// Candidate constant the bound was checked against.
    pub k_candidate: f64,
    /// Empirical supremum of (variation sum)/c_n over 1 <= n <= horizon.
    pub minimal_k: Option<f64>,
    /// First n where the candidate bound fails, if any.
    pub first_violation_index: Option<usize>,
    /// Largest n tested.
    pub horizon: usize,
    /// Truncation point of the rest-variation tail sum.
    pub tail_horizon: usize,
    /// Closing value |c_T| folded into the tail sum; reported as a
    /// truncation-quality indicator for the Rest class.
    pub truncation_residual: Option<f64>,
    /// Per-n ratios (variation sum)/c_n for n = 1..=horizon.
    pub ratios: Vec<f64>,
}

/// Default candidate constant: the value realized by monotone model
/// sequences, against which `holds` is checked.
pub const DEFAULT_K_CANDIDATE: f64 = 1.0;

/// Relative round-off guard on the candidate comparison: a telescoped
/// variation sum can land a few ulps above the exact bound.
const K_ROUNDOFF_GUARD: f64 = 1e-12;

/// Relative threshold for the numerical "tends to zero" precondition of the
/// Rest class: c at the tail horizon must be below this fraction of max c.
pub const VANISHING_FRACTION: f64 = 0.01;

/// Classify `c` against the head or rest bounded-variation bound with the
/// default candidate constant 1.
pub fn classify_variation(
    c: &WeightSequence,
    class: VariationClass,
    horizon: usize,
    tail_horizon: usize,
) -> Result<VariationReport> {
    classify_variation_with_k(c, class, horizon, tail_horizon, DEFAULT_K_CANDIDATE)
}

/// Classify `c` against an explicit candidate constant `k_candidate`.
///
/// The rest-variation tail sum is truncated at `tail_horizon`, closing the
/// telescope with |c_T| (the distance from the horizon value to the limit 0).
pub fn classify_variation_with_k(
    c: &WeightSequence,
    class: VariationClass,
    horizon: usize,
    tail_horizon: usize,
    k_candidate: f64,
) -> Result<VariationReport> {
    if horizon == 0 {
        return Err(Error::Parameter("classification horizon must be >= 1".into()));
    }
    let t = tail_horizon.max(horizon + 1);
    // the head sweep only reads c_0..c_horizon; the rest sweep needs the tail
    let cv = match class {
        VariationClass::Head => c.values(horizon)?,
        VariationClass::Rest => c.values(t)?,
    };

    if class == VariationClass::Rest {
        // Numerical stand-in for "tends to zero": the tail value must be
        // small relative to the sequence's peak.
        let peak = cv.iter().cloned().fold(0.0_f64, f64::max);
        if peak > 0.0 && cv[t] > VANISHING_FRACTION * peak {
            return Err(Error::NotVanishing {
                index: t,
                value: cv[t],
            });
        }
    }

    let mut ratios = Vec::with_capacity(horizon);
    let mut minimal_k = 0.0_f64;
    let mut holds = true;
    let mut first_violation_index = None;

    for n in 1..=horizon {
        if cv[n] == 0.0 {
            return Err(Error::DegenerateSequence { index: n });
        }
        let variation = match class {
            VariationClass::Head => (0..n).map(|k| (cv[k] - cv[k + 1]).abs()).sum::<f64>(),
            VariationClass::Rest => {
                let mut s = (n..t).map(|k| (cv[k] - cv[k + 1]).abs()).sum::<f64>();
                s += cv[t].abs();
                s
            }
        };
        let ratio = variation / cv[n];
        ratios.push(ratio);
        minimal_k = minimal_k.max(ratio);
        if ratio > k_candidate * (1.0 + K_ROUNDOFF_GUARD) && first_violation_index.is_none() {
            holds = false;
            first_violation_index = Some(n);
        }
    }

    Ok(VariationReport {
        class_tested: class,
        holds,
        k_candidate,
        minimal_k: Some(minimal_k),
        first_violation_index,
        horizon,
        tail_horizon: t,
        truncation_residual: match class {
            VariationClass::Rest => Some(cv[t].abs()),
            VariationClass::Head => None,
        },
        ratios,
    })
}

/// Regularity diagnostics for a two-weight method.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    /// max over n <= horizon of sum_m |p_{n-m} q_m| / |R_n|.
    pub bounded_ratio: f64,
    /// Whether the per-column weights vanish relative to R_n toward the
    /// horizon.
    pub vanishing_verified: bool,
    pub horizon: usize,
}

/// Number of fixed columns m checked by the vanishing test.
pub const VANISHING_COLUMNS: usize = 8;
/// Threshold the terminal column values must fall below.
pub const VANISHING_TOLERANCE: f64 = 0.05;

/// Check the two regularity conditions numerically over 0..=horizon:
/// bounded row sums relative to R_n, and column entries p_{n-m}/R_n that
/// decrease below a tolerance as n approaches the horizon.
pub fn check_regularity(
    p: &WeightSequence,
    q: &WeightSequence,
    horizon: usize,
) -> Result<RegularityReport> {
    if horizon < 2 {
        return Err(Error::Parameter("regularity horizon must be >= 2".into()));
    }
    let pv = p.values(horizon)?;
    let qv = q.values(horizon)?;
    let table = convolution_from_values(&pv, &qv);

    let mut bounded_ratio: f64 = 0.0;
    for n in 0..=horizon {
        if table.r[n] == 0.0 {
            return Err(Error::ZeroNormalizer { n });
        }
        let row: f64 = (0..=n).map(|m| (pv[n - m] * qv[m]).abs()).sum();
        bounded_ratio = bounded_ratio.max(row / table.r[n].abs());
    }

    let mid = horizon / 2;
    let mut vanishing_verified = true;
    for m in 0..=VANISHING_COLUMNS.min(mid) {
        if qv[m] == 0.0 {
            continue;
        }
        let v_end = pv[horizon - m] / table.r[horizon].abs();
        let v_mid = pv[mid - m] / table.r[mid].abs();
        if v_end > VANISHING_TOLERANCE || v_end > v_mid {
            vanishing_verified = false;
            break;
        }
    }

    Ok(RegularityReport {
        bounded_ratio,
        vanishing_verified,
        horizon,
    })
}

/// Outcome of the three classification-derived inequalities checked over all
/// n <= horizon, m in [0, n]:
/// peak:    p_m <= (K_p + 1) p_n,
/// tail:    q_{n-m} <= K_q q_n,
/// row sum: sum_m p_m q_{n-m} <= (K_p + 1) K_q (n + 1) p_n q_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProofBoundsCheck {
    pub peak_bound: bool,
    pub tail_bound: bool,
    pub row_sum_bound: bool,
}

impl ProofBoundsCheck {
    pub fn all(&self) -> bool {
        self.peak_bound && self.tail_bound && self.row_sum_bound
    }
}

/// Sweep the three inequalities with exact comparisons (no tolerance).
pub fn check_proof_bounds(
    p: &WeightSequence,
    q: &WeightSequence,
    k_p: f64,
    k_q: f64,
    horizon: usize,
) -> Result<ProofBoundsCheck> {
    let pv = p.values(horizon)?;
    let qv = q.values(horizon)?;
    let mut peak = true;
    let mut tail = true;
    let mut row = true;
    for n in 0..=horizon {
        let mut row_sum = 0.0;
        for m in 0..=n {
            if pv[m] > (k_p + 1.0) * pv[n] {
                peak = false;
            }
            if qv[n - m] > k_q * qv[n] {
                tail = false;
            }
            row_sum += pv[m] * qv[n - m];
        }
        if row_sum > (k_p + 1.0) * k_q * (n as f64 + 1.0) * pv[n] * qv[n] {
            row = false;
        }
    }
    Ok(ProofBoundsCheck {
        peak_bound: peak,
        tail_bound: tail,
        row_sum_bound: row,
    })
}

/// Parse a sequence expression: a registry name with optional parameters
/// (`ones`, `harmonic`, `cesaro(0.5)`, `geometric(0.5)`) or an inline
/// comma-separated list of decimal values.
pub fn sequence_from_expr(expr: &str) -> Result<WeightSequence> {
    let s = expr.trim();
    if s.is_empty() {
        return Err(Error::UnknownName("<empty sequence>".into()));
    }
    match s {
        "ones" => return Ok(WeightSequence::ones()),
        "harmonic" => return Ok(WeightSequence::harmonic()),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("cesaro(").and_then(|r| r.strip_suffix(')')) {
        let alpha: f64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("malformed cesaro parameter: {rest}")))?;
        return WeightSequence::cesaro(alpha);
    }
    if let Some(rest) = s.strip_prefix("geometric(").and_then(|r| r.strip_suffix(')')) {
        let ratio: f64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("malformed geometric parameter: {rest}")))?;
        return WeightSequence::geometric(ratio);
    }
    // Inline list: every comma-separated token must parse as a number.
    if s.contains(',') || s.parse::<f64>().is_ok() {
        let mut values = Vec::new();
        for tok in s.split(',') {
            let v: f64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("malformed numeric in sequence list: {tok}")))?;
            values.push(v);
        }
        return Ok(WeightSequence::explicit(values));
    }
    Err(Error::UnknownName(s.into()))
}
