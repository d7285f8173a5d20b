//! Lagrange cardinal basis `{h_k}` at the collocation nodes.
//!
//! `h_k ∈ P_N` with `h_k(x_j) = δ_{kj}`, so interpolant coefficients are
//! nodal values. The default evaluation path is the barycentric second form
//!
//! ```text
//! h_k(x) = (λ_k / (x - x_k)) / Σ_j λ_j / (x - x_j),
//! ```
//!
//! which is stable for large `N`. The modal representation
//! `h_k = Σ_p β_{p,k} L_p` with `β_{p,k} = L_p(x_k) ω_k / γ_p` is kept as an
//! independent cross-check route; `γ_p = (p + 1/2)^{-1}` for `p < N` with the
//! endpoint correction `γ_N = 2/N` for Lobatto nodes.

use crate::legendre::{eval_legendre, GaussRuleKind};
use crate::quadrature::QuadratureRule;
use std::fmt;

/// Cardinal (nodal Lagrange) basis on a Gauss-type node set.
///
/// Immutable after construction; shareable across threads.
#[derive(Clone, Debug)]
pub struct CardinalBasis {
    kind: GaussRuleKind,
    nodes: Vec<f64>,
    quad_weights: Vec<f64>,
    bary_weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisError {
    IndexOutOfRange { k: usize, degree: usize },
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisError::IndexOutOfRange { k, degree } => {
                write!(f, "cardinal index {k} out of range 0..={degree}")
            }
        }
    }
}

impl std::error::Error for BasisError {}

impl CardinalBasis {
    /// Build the basis on the nodes of `rule` (the quadrature weights are
    /// kept for the modal coefficients).
    pub fn from_rule(rule: &QuadratureRule) -> Self {
        let bary_weights = barycentric_weights(&rule.nodes);
        CardinalBasis {
            kind: rule.kind,
            nodes: rule.nodes.clone(),
            quad_weights: rule.weights.clone(),
            bary_weights,
        }
    }

    /// Polynomial degree `N` (one less than the node count).
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn kind(&self) -> GaussRuleKind {
        self.kind
    }

    /// Value of `h_k(x)`; exactly 0 or 1 when `x` is a stored node.
    pub fn eval_cardinal(&self, k: usize, x: f64) -> Result<f64, BasisError> {
        let n = self.degree();
        if k > n {
            return Err(BasisError::IndexOutOfRange { k, degree: n });
        }
        if let Some(j) = self.node_index(x) {
            return Ok(if j == k { 1.0 } else { 0.0 });
        }
        let den: f64 = self
            .nodes
            .iter()
            .zip(&self.bary_weights)
            .map(|(&xj, &wj)| wj / (x - xj))
            .sum();
        Ok(self.bary_weights[k] / (x - self.nodes[k]) / den)
    }

    /// All cardinal values `h_0(x), ..., h_N(x)` in one barycentric sweep.
    pub fn eval_all(&self, x: f64, out: &mut [f64]) {
        assert_eq!(out.len(), self.nodes.len());
        if let Some(j) = self.node_index(x) {
            out.fill(0.0);
            out[j] = 1.0;
            return;
        }
        let mut den = 0.0;
        for ((o, &xj), &wj) in out.iter_mut().zip(&self.nodes).zip(&self.bary_weights) {
            let t = wj / (x - xj);
            *o = t;
            den += t;
        }
        for o in out.iter_mut() {
            *o /= den;
        }
    }

    /// `Σ_k values_k h_k(x)` in barycentric form. Reproduces any polynomial
    /// of degree ≤ N sampled at the nodes.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        assert_eq!(values.len(), self.nodes.len(), "nodal value count mismatch");
        if let Some(j) = self.node_index(x) {
            return values[j];
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&v, &xj), &wj) in values.iter().zip(&self.nodes).zip(&self.bary_weights) {
            let t = wj / (x - xj);
            num += t * v;
            den += t;
        }
        num / den
    }

    /// Modal coefficients `β_{p,k}`, row-major `(N+1) × (N+1)` with `p` as
    /// the row index.
    pub fn modal_coeffs(&self) -> Vec<f64> {
        let n = self.degree();
        let len = n + 1;
        let mut beta = vec![0.0; len * len];
        for p in 0..=n {
            let gamma = self.discrete_norm(p);
            for k in 0..=n {
                let lp = eval_legendre(p, self.nodes[k])
                    .expect("nodes lie in [-1, 1]")
                    .value;
                beta[p * len + k] = lp * self.quad_weights[k] / gamma;
            }
        }
        beta
    }

    /// `h_k(x)` through the modal route `Σ_p β_{p,k} L_p(x)`; used only to
    /// cross-validate the barycentric path.
    pub fn eval_cardinal_modal(&self, k: usize, x: f64) -> Result<f64, BasisError> {
        let n = self.degree();
        if k > n {
            return Err(BasisError::IndexOutOfRange { k, degree: n });
        }
        let beta = self.modal_coeffs();
        let len = n + 1;
        let mut sum = 0.0;
        for p in 0..=n {
            let lp = eval_legendre(p, x).expect("x in [-1, 1]").value;
            sum += beta[p * len + k] * lp;
        }
        Ok(sum)
    }

    /// Max over a uniform sample of the Lebesgue function `Σ_k |h_k(x)|`.
    pub fn lebesgue_constant(&self, sample_count: usize) -> f64 {
        assert!(
            sample_count >= 10 * self.nodes.len(),
            "sample count {sample_count} too small for degree {}",
            self.degree()
        );
        let mut values = vec![0.0; self.nodes.len()];
        let mut max = 0.0f64;
        for i in 0..sample_count {
            let x = -1.0 + 2.0 * i as f64 / (sample_count - 1) as f64;
            self.eval_all(x, &mut values);
            let lam: f64 = values.iter().map(|v| v.abs()).sum();
            max = max.max(lam);
        }
        max
    }

    /// Discrete norm `γ_p = Σ_i L_p(x_i)² ω_i` in closed form.
    fn discrete_norm(&self, p: usize) -> f64 {
        let n = self.degree();
        if p < n {
            2.0 / (2 * p + 1) as f64
        } else {
            match self.kind {
                GaussRuleKind::Lobatto => 2.0 / n as f64,
                _ => 2.0 / (2 * n + 1) as f64,
            }
        }
    }

    fn node_index(&self, x: f64) -> Option<usize> {
        self.nodes.iter().position(|&xj| xj == x)
    }
}

/// Barycentric weights `λ_k = 1 / Π_{j≠k} (x_k - x_j)`, computed through log
/// magnitudes and rescaled by the mean exponent so no intermediate overflows
/// for large `N`. Any common scale factor cancels in the barycentric ratios.
fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut log_mag = vec![0.0f64; n];
    for k in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            if j != k {
                acc += (nodes[k] - nodes[j]).abs().ln();
            }
        }
        log_mag[k] = acc;
    }
    let mean = log_mag.iter().sum::<f64>() / n as f64;
    (0..n)
        .map(|k| {
            // sign of Π (x_k - x_j): negative once per node above x_k
            let sign = if (n - 1 - k).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            sign * (mean - log_mag[k]).exp()
        })
        .collect()
}
