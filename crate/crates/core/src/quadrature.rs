//! Application of Gauss-type quadrature rules on `[-1, 1]` and on affinely
//! mapped subintervals `[a, b]`.

use crate::legendre::GaussRuleKind;

/// Nodes and weights of a Gauss-type rule on `[-1, 1]`.
///
/// A rule of order `N` holds `N+1` strictly increasing nodes with positive
/// weights summing to 2, and integrates polynomials exactly up to
/// `exact_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub kind: GaussRuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub exact_degree: usize,
}

impl QuadratureRule {
    pub(crate) fn new(kind: GaussRuleKind, nodes: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(nodes.len(), weights.len());
        let order = nodes.len() - 1;
        QuadratureRule {
            kind,
            nodes,
            weights,
            exact_degree: kind.exact_degree(order),
        }
    }

    /// Rule order `N` (one less than the node count).
    pub fn order(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Integrate `f` over `[a, b]` by mapping the nodes through
    /// `y = (b-a)/2 · t + (a+b)/2` and scaling by the Jacobian `(b-a)/2`.
    ///
    /// Exact to roundoff for polynomials of degree ≤ `exact_degree`; the
    /// weighted sum is compensated so accumulation error stays at the ulp of
    /// the result even when the terms are large against it. The degenerate
    /// interval `a == b` returns exactly 0 without evaluating `f`, which
    /// assembly relies on when a truncated horizon collapses.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
        assert!(a <= b, "integration bounds out of order: [{a}, {b}]");
        if a == b {
            return 0.0;
        }
        let jac = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        // Neumaier-compensated summation
        let mut sum = 0.0;
        let mut comp = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let term = f(jac * t + mid) * w;
            let next = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - next) + term
            } else {
                (term - next) + sum
            };
            sum = next;
        }
        jac * (sum + comp)
    }
}

/// Free-function form of [`QuadratureRule::integrate`].
pub fn integrate(rule: &QuadratureRule, f: impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
    rule.integrate(f, a, b)
}
