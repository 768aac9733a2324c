//! Composite Gauss–Legendre quadrature with uniform or geometrically graded
//! panels. The graded layout is used wherever an integrand steepens toward an
//! endpoint (cotangent-type kernels, modulus integrals near t = 0).

use crate::error::{Error, Result};

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Build an `order`-point rule by Newton iteration on the Legendre
    /// polynomial roots. Accurate to machine precision for order <= 64.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > 64 {
            return Err(Error::Parameter(format!(
                "Gauss-Legendre order must be in 1..=64, got {order}"
            )));
        }
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Chebyshev-like initial guess for the i-th root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Evaluate P_n and P_{n-1} by the three-term recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Ok(Self { nodes, weights })
    }

    /// Number of points in the rule.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integrate `f` over [a, b] with a single application of the rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        sum * half
    }
}

/// Integrate `f` over consecutive panels delimited by `edges` (ascending).
pub fn integrate_panels<F: Fn(f64) -> f64>(f: &F, edges: &[f64], rule: &GaussLegendre) -> f64 {
    edges
        .windows(2)
        .map(|w| rule.integrate(f, w[0], w[1]))
        .sum()
}

/// Uniform panel edges over [a, b].
pub fn uniform_edges(a: f64, b: f64, panels: usize) -> Vec<f64> {
    let panels = panels.max(1);
    (0..=panels)
        .map(|i| a + (b - a) * i as f64 / panels as f64)
        .collect()
}

/// Geometrically graded panel edges over [a, b] with 0 < a < b. Panels are
/// log-uniform, so they shrink toward the left endpoint.
pub fn geometric_edges(a: f64, b: f64, panels: usize) -> Result<Vec<f64>> {
    if !(a > 0.0 && b > a) {
        return Err(Error::Parameter(format!(
            "geometric grading needs 0 < a < b, got a = {a}, b = {b}"
        )));
    }
    let panels = panels.max(1);
    let la = a.ln();
    let lb = b.ln();
    let mut edges: Vec<f64> = (0..=panels)
        .map(|i| (la + (lb - la) * i as f64 / panels as f64).exp())
        .collect();
    // Pin the endpoints to avoid round-off drift at the boundaries.
    edges[0] = a;
    edges[panels] = b;
    Ok(edges)
}

/// Periodic rectangle rule for smooth 2pi-periodic integrands: spectrally
/// accurate and exact for trigonometric polynomials of degree < grid_points.
pub fn periodic_rectangle<F: Fn(f64) -> f64>(f: &F, grid_points: usize) -> f64 {
    let g = grid_points.max(1);
    let step = std::f64::consts::TAU / g as f64;
    let sum: f64 = (0..g).map(|j| f(j as f64 * step)).sum();
    sum * step
}
