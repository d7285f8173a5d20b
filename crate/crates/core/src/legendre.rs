//! Legendre polynomials and Legendre-Gauss-type quadrature nodes and weights.
//!
//! Values come from the three-term recurrence
//!
//! ```text
//! (n+1) L_{n+1}(x) = (2n+1) x L_n(x) - n L_{n-1}(x),   L_0 = 1, L_1 = x,
//! ```
//!
//! and the node sets are the zeros of
//!
//! * `L_{N+1}`            (Gauss, exact through degree 2N+1),
//! * `L_N + L_{N+1}`      (Gauss-Radau, includes -1, exact through 2N),
//! * `(1-x²) L'_N`        (Gauss-Lobatto, includes ±1, exact through 2N-1),
//!
//! each with the closed-form weights stated below. Roots are located by
//! sign-change bracketing on a cos-spaced grid followed by safeguarded Newton
//! iteration, so construction is deterministic and cannot silently converge
//! to a wrong root.

use crate::quadrature::QuadratureRule;
use std::fmt;

/// Slack allowed on the evaluation domain `[-1, 1]`.
const DOMAIN_SLACK: f64 = 1e-12;

/// Residual bound `|defining polynomial(node)|` enforced on every node.
const RESIDUAL_BOUND: f64 = 1e-12;

/// The three Legendre-Gauss rule families on `[-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaussRuleKind {
    /// Legendre-Gauss: all nodes interior.
    Gauss,
    /// Legendre-Gauss-Radau: node at -1, rest interior.
    Radau,
    /// Legendre-Gauss-Lobatto: nodes at ±1, rest interior.
    Lobatto,
}

impl GaussRuleKind {
    /// Maximal polynomial degree integrated exactly by the rule of order `n`
    /// (`n+1` nodes): `2n+1` for Gauss, `2n` for Radau, `2n-1` for Lobatto.
    pub fn exact_degree(self, order: usize) -> usize {
        match self {
            GaussRuleKind::Gauss => 2 * order + 1,
            GaussRuleKind::Radau => 2 * order,
            GaussRuleKind::Lobatto => 2 * order - 1,
        }
    }

    /// Smallest admissible order (Lobatto needs both endpoints).
    pub fn min_order(self) -> usize {
        match self {
            GaussRuleKind::Lobatto => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for GaussRuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GaussRuleKind::Gauss => "lg",
            GaussRuleKind::Radau => "lgr",
            GaussRuleKind::Lobatto => "lgl",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for GaussRuleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lg" | "gauss" => Ok(GaussRuleKind::Gauss),
            "lgr" | "radau" => Ok(GaussRuleKind::Radau),
            "lgl" | "lobatto" => Ok(GaussRuleKind::Lobatto),
            other => Err(format!(
                "unknown rule kind `{other}` (expected lg, lgr, or lgl)"
            )),
        }
    }
}

/// Value and first derivative of a Legendre polynomial at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyEval {
    pub value: f64,
    pub derivative: f64,
}

/// Errors from polynomial evaluation or rule construction.
#[derive(Debug, Clone, PartialEq)]
pub enum LegendreError {
    /// Evaluation point outside `[-1 - 1e-12, 1 + 1e-12]`.
    DomainError { x: f64 },
    /// Order below the family minimum (Lobatto needs `n >= 1`).
    InvalidOrder { kind: GaussRuleKind, order: usize },
    /// The bracketing/Newton search did not isolate or refine all roots.
    RootFinding {
        kind: GaussRuleKind,
        order: usize,
        detail: String,
    },
}

impl fmt::Display for LegendreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LegendreError::DomainError { x } => {
                write!(f, "evaluation point {x} outside [-1, 1]")
            }
            LegendreError::InvalidOrder { kind, order } => {
                write!(
                    f,
                    "order {order} below minimum {} for {kind}",
                    kind.min_order()
                )
            }
            LegendreError::RootFinding {
                kind,
                order,
                detail,
            } => {
                write!(f, "root finding failed for {kind} order {order}: {detail}")
            }
        }
    }
}

impl std::error::Error for LegendreError {}

/// Evaluate `L_n(x)` and `L'_n(x)`.
///
/// The value uses the upward three-term recurrence. The derivative uses
/// `(1-x²) L'_n = n (L_{n-1} - x L_n)` away from the endpoints and the
/// closed form `L'_n(±1) = (±1)^{n+1} n(n+1)/2` at `±1`, where the quotient
/// is singular.
pub fn eval_legendre(n: usize, x: f64) -> Result<PolyEval, LegendreError> {
    if x.is_nan() || x.abs() > 1.0 + DOMAIN_SLACK {
        return Err(LegendreError::DomainError { x });
    }
    let (value, prev) = value_pair(n, x);
    let derivative = derivative_from_pair(n, x, value, prev);
    Ok(PolyEval { value, derivative })
}

/// `(L_n(x), L_{n-1}(x))` by the three-term recurrence; `L_{-1}` reported as 0.
fn value_pair(n: usize, x: f64) -> (f64, f64) {
    match n {
        0 => (1.0, 0.0),
        1 => (x, 1.0),
        _ => {
            let mut prev = 1.0;
            let mut curr = x;
            for k in 1..n {
                let next = ((2 * k + 1) as f64 * x * curr - k as f64 * prev) / (k + 1) as f64;
                prev = curr;
                curr = next;
            }
            (curr, prev)
        }
    }
}

fn derivative_from_pair(n: usize, x: f64, l_n: f64, l_nm1: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let endpoint = (n * (n + 1)) as f64 / 2.0;
    if (x - 1.0).abs() <= DOMAIN_SLACK {
        endpoint
    } else if (x + 1.0).abs() <= DOMAIN_SLACK {
        if n.is_multiple_of(2) {
            -endpoint
        } else {
            endpoint
        }
    } else {
        n as f64 * (l_nm1 - x * l_n) / (1.0 - x * x)
    }
}

/// Build the nodes and weights of a Gauss-type rule of order `n` (`n+1` nodes).
///
/// Weights:
///
/// ```text
/// Gauss:   ω_j = 2 / ((1 - x_j²) [L'_{N+1}(x_j)]²)
/// Radau:   ω_j = (1 - x_j) / ((N+1)² [L_N(x_j)]²)
/// Lobatto: ω_j = 2 / (N(N+1) [L_N(x_j)]²)
/// ```
///
/// Nodes come out strictly ascending; Gauss and Lobatto sets are symmetrized
/// about 0 so paired nodes are exact negatives. Every node is checked against
/// the defining polynomial (residual ≤ 1e-12) and construction aborts with a
/// diagnostic if the check fails; this does not happen for `n ≤ 256`.
pub fn gauss_nodes(kind: GaussRuleKind, n: usize) -> Result<QuadratureRule, LegendreError> {
    if n < kind.min_order() {
        return Err(LegendreError::InvalidOrder { kind, order: n });
    }
    let nodes = match kind {
        GaussRuleKind::Gauss => gauss_nodes_only(n)?,
        GaussRuleKind::Radau => radau_nodes_only(n)?,
        GaussRuleKind::Lobatto => lobatto_nodes_only(n)?,
    };
    validate_nodes(kind, n, &nodes)?;
    let weights = weights_for(kind, n, &nodes);
    Ok(QuadratureRule::new(kind, nodes, weights))
}

fn gauss_nodes_only(n: usize) -> Result<Vec<f64>, LegendreError> {
    if n == 0 {
        return Ok(vec![0.0]);
    }
    // zeros of L_{n+1}
    let deg = n + 1;
    let f = |x: f64| {
        let (v, p) = value_pair(deg, x);
        (v, derivative_from_pair(deg, x, v, p))
    };
    let mut roots = isolate_roots(&f, deg, GaussRuleKind::Gauss, n)?;
    symmetrize(&mut roots);
    polish_symmetric(&f, &mut roots);
    Ok(roots)
}

fn radau_nodes_only(n: usize) -> Result<Vec<f64>, LegendreError> {
    if n == 0 {
        return Ok(vec![-1.0]);
    }
    // Interior zeros of q = L_n + L_{n+1}; the remaining zero is exactly -1.
    // Scanning q/(1+x) keeps the known root from polluting the brackets.
    let q = |x: f64| {
        let (v1, p1) = value_pair(n, x);
        let (v2, p2) = value_pair(n + 1, x);
        let d1 = derivative_from_pair(n, x, v1, p1);
        let d2 = derivative_from_pair(n + 1, x, v2, p2);
        (v1 + v2, d1 + d2)
    };
    let deflated = |x: f64| {
        let (v, d) = q(x);
        let s = 1.0 + x;
        ((v / s), (d * s - v) / (s * s))
    };
    let mut roots = isolate_roots(&deflated, n, GaussRuleKind::Radau, n)?;
    polish(&q, &mut roots);
    let mut nodes = Vec::with_capacity(n + 1);
    nodes.push(-1.0);
    nodes.extend(roots);
    Ok(nodes)
}

fn lobatto_nodes_only(n: usize) -> Result<Vec<f64>, LegendreError> {
    if n == 1 {
        return Ok(vec![-1.0, 1.0]);
    }
    // Interior zeros of L'_n via the cancellation-free form
    // F = L_{n-1} - x L_n = (1-x²) L'_n / n, with F' = -(n+1) L_n.
    let f = |x: f64| {
        let (l_n, l_nm1) = value_pair(n, x);
        (l_nm1 - x * l_n, -((n + 1) as f64) * l_n)
    };
    let mut roots = isolate_roots(&f, n - 1, GaussRuleKind::Lobatto, n)?;
    symmetrize(&mut roots);
    polish_symmetric(&f, &mut roots);
    let mut nodes = Vec::with_capacity(n + 1);
    nodes.push(-1.0);
    nodes.extend(roots);
    nodes.push(1.0);
    Ok(nodes)
}

fn weights_for(kind: GaussRuleKind, n: usize, nodes: &[f64]) -> Vec<f64> {
    match kind {
        GaussRuleKind::Gauss => {
            let deg = n + 1;
            let half = nodes.len() / 2;
            let mut w: Vec<f64> = nodes
                .iter()
                .map(|&x| {
                    let (v, p) = value_pair(deg, x);
                    let d = derivative_from_pair(deg, x, v, p);
                    2.0 / ((1.0 - x * x) * d * d)
                })
                .collect();
            // mirror so symmetric nodes get bit-identical weights
            for j in 0..half {
                w[nodes.len() - 1 - j] = w[j];
            }
            w
        }
        GaussRuleKind::Radau => {
            let scale = ((n + 1) * (n + 1)) as f64;
            nodes
                .iter()
                .map(|&x| {
                    let (v, _) = value_pair(n, x);
                    (1.0 - x) / (scale * v * v)
                })
                .collect()
        }
        GaussRuleKind::Lobatto => {
            let scale = (n * (n + 1)) as f64;
            let half = nodes.len() / 2;
            let mut w: Vec<f64> = nodes
                .iter()
                .map(|&x| {
                    let (v, _) = value_pair(n, x);
                    2.0 / (scale * v * v)
                })
                .collect();
            for j in 0..half {
                w[nodes.len() - 1 - j] = w[j];
            }
            w
        }
    }
}

/// Locate `count` simple roots of `f` strictly inside (-1, 1) by sign-change
/// bracketing on a cos-spaced grid, densifying until every root is isolated.
/// Grid points cluster near ±1 like the roots themselves; the exact endpoints
/// are excluded because some scan functions vanish there.
fn isolate_roots(
    f: &impl Fn(f64) -> (f64, f64),
    count: usize,
    kind: GaussRuleKind,
    order: usize,
) -> Result<Vec<f64>, LegendreError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut density = 8;
    for _ in 0..5 {
        let grid_len = density * (count + 1);
        let grid: Vec<f64> = (1..grid_len)
            .map(|i| -(std::f64::consts::PI * i as f64 / grid_len as f64).cos())
            .collect();
        let mut brackets = Vec::with_capacity(count);
        let mut prev_x = grid[0];
        let mut prev_f = f(prev_x).0;
        for &x in &grid[1..] {
            let fx = f(x).0;
            if prev_f == 0.0 || prev_f * fx < 0.0 {
                brackets.push((prev_x, x));
            }
            prev_x = x;
            prev_f = fx;
        }
        if brackets.len() == count {
            let roots: Vec<f64> = brackets
                .iter()
                .map(|&(lo, hi)| refine_root(f, lo, hi))
                .collect();
            return Ok(roots);
        }
        density *= 2;
    }
    Err(LegendreError::RootFinding {
        kind,
        order,
        detail: format!("could not isolate {count} roots by grid scanning"),
    })
}

/// Safeguarded Newton inside a sign-change bracket: a Newton step is taken
/// when it stays inside the bracket, otherwise the bracket is bisected. The
/// bracket shrinks monotonically, so the iteration cannot escape or cycle.
fn refine_root(f: &impl Fn(f64) -> (f64, f64), mut lo: f64, mut hi: f64) -> f64 {
    let (mut flo, _) = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx > 0.0) == (flo > 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

/// Snap each root to whichever of {x, x±ulp} minimizes |f|; Newton stops
/// within one ulp of the true root and the neighbor check recovers the best
/// representable one.
fn polish(f: &impl Fn(f64) -> (f64, f64), roots: &mut [f64]) {
    for r in roots.iter_mut() {
        *r = polish_one(f, *r);
    }
}

/// Polish the left half and mirror. The recurrence is exactly parity
/// symmetric in IEEE arithmetic, so the mirrored node carries the bitwise
/// identical residual and the set stays exactly symmetric.
fn polish_symmetric(f: &impl Fn(f64) -> (f64, f64), roots: &mut [f64]) {
    let n = roots.len();
    for i in 0..n / 2 {
        roots[i] = polish_one(f, roots[i]);
        roots[n - 1 - i] = -roots[i];
    }
}

fn polish_one(f: &impl Fn(f64) -> (f64, f64), r: f64) -> f64 {
    let mut best = r;
    let mut best_abs = f(r).0.abs();
    // walk ulp by ulp to the local minimum of |f| (a few steps at most,
    // since the safeguarded Newton stops within a couple of ulps)
    for step in [next_up as fn(f64) -> f64, next_down] {
        let mut cand = step(best);
        while f(cand).0.abs() < best_abs {
            best_abs = f(cand).0.abs();
            best = cand;
            cand = step(best);
        }
    }
    best
}

fn next_up(x: f64) -> f64 {
    f64::from_bits(if x >= 0.0 {
        x.to_bits() + 1
    } else {
        x.to_bits() - 1
    })
}

fn next_down(x: f64) -> f64 {
    f64::from_bits(if x > 0.0 {
        x.to_bits() - 1
    } else {
        x.to_bits() + 1
    })
}

/// Average mirrored root pairs so the set is exactly symmetric about 0
/// (odd counts pin the middle root to 0).
fn symmetrize(roots: &mut [f64]) {
    let n = roots.len();
    for i in 0..n / 2 {
        let m = 0.5 * (roots[n - 1 - i] - roots[i]);
        roots[i] = -m;
        roots[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        roots[n / 2] = 0.0;
    }
}

fn validate_nodes(kind: GaussRuleKind, n: usize, nodes: &[f64]) -> Result<(), LegendreError> {
    if nodes.len() != n + 1 {
        return Err(LegendreError::RootFinding {
            kind,
            order: n,
            detail: format!("expected {} nodes, found {}", n + 1, nodes.len()),
        });
    }
    for pair in nodes.windows(2) {
        if pair[1] <= pair[0] {
            return Err(LegendreError::RootFinding {
                kind,
                order: n,
                detail: format!("nodes not strictly increasing near {}", pair[0]),
            });
        }
    }
    for &x in nodes {
        let r = defining_residual(kind, n, x);
        // A correctly rounded node can still carry a residual of
        // |F'(x)| · ulp/2, which crosses 1e-12 for the steepest Lobatto
        // nodes near n = 256; allow that placement floor (with margin)
        // while still catching mislocated roots, which sit many orders
        // of magnitude higher.
        let tol = RESIDUAL_BOUND.max(defining_derivative(kind, n, x).abs() * f64::EPSILON);
        if r.is_nan() || r > tol {
            return Err(LegendreError::RootFinding {
                kind,
                order: n,
                detail: format!("residual {r:.3e} at node {x} exceeds {tol:.3e}"),
            });
        }
    }
    Ok(())
}

/// `|defining polynomial|` at `x`: `L_{N+1}` (Gauss), `L_N + L_{N+1}` (Radau),
/// `(1-x²) L'_N = N (L_{N-1} - x L_N)` (Lobatto, in product form so the
/// endpoints evaluate to exactly zero).
pub fn defining_residual(kind: GaussRuleKind, n: usize, x: f64) -> f64 {
    match kind {
        GaussRuleKind::Gauss => value_pair(n + 1, x).0.abs(),
        GaussRuleKind::Radau => (value_pair(n, x).0 + value_pair(n + 1, x).0).abs(),
        GaussRuleKind::Lobatto => {
            let (l_n, l_nm1) = value_pair(n, x);
            (n as f64 * (l_nm1 - x * l_n)).abs()
        }
    }
}

/// Derivative of the defining polynomial, used to scale the admissible
/// residual to the node's representation floor.
fn defining_derivative(kind: GaussRuleKind, n: usize, x: f64) -> f64 {
    match kind {
        GaussRuleKind::Gauss => {
            let (v, p) = value_pair(n + 1, x);
            derivative_from_pair(n + 1, x, v, p)
        }
        GaussRuleKind::Radau => {
            let (v1, p1) = value_pair(n, x);
            let (v2, p2) = value_pair(n + 1, x);
            derivative_from_pair(n, x, v1, p1) + derivative_from_pair(n + 1, x, v2, p2)
        }
        GaussRuleKind::Lobatto => {
            let (l_n, _) = value_pair(n, x);
            -((n * (n + 1)) as f64) * l_n
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KINDS: [GaussRuleKind; 3] = [
        GaussRuleKind::Gauss,
        GaussRuleKind::Radau,
        GaussRuleKind::Lobatto,
    ];

    #[test]
    fn low_degree_closed_forms() {
        // L_2(x) = (3x² - 1)/2 at x = 0
        assert_eq!(eval_legendre(2, 0.0).unwrap().value, -0.5);
        // L_5(1) = 1
        assert_eq!(eval_legendre(5, 1.0).unwrap().value, 1.0);
        // L_3(x) = (5x³ - 3x)/2 at x = 0.4: recurrence vs explicit cubic
        let x = 0.4;
        let explicit = (5.0 * x * x * x - 3.0 * x) / 2.0;
        let rec = eval_legendre(3, x).unwrap().value;
        assert!((rec - explicit).abs() <= 1e-14, "{rec} vs {explicit}");
    }

    #[test]
    fn endpoint_values() {
        for n in 0..=12 {
            let at1 = eval_legendre(n, 1.0).unwrap();
            assert!((at1.value - 1.0).abs() < 1e-14);
            let atm1 = eval_legendre(n, -1.0).unwrap();
            let expect = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            assert!((atm1.value - expect).abs() < 1e-14);
            // L'_n(±1) = (±1)^{n+1} n(n+1)/2
            let d = (n * (n + 1)) as f64 / 2.0;
            assert!((at1.derivative - d).abs() < 1e-12);
            let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
            assert!((atm1.derivative - sign * d).abs() < 1e-12);
        }
    }

    #[test]
    fn bounded_on_interval() {
        for n in 0..=32 {
            for i in 0..=200 {
                let x = -1.0 + i as f64 / 100.0;
                let v = eval_legendre(n, x).unwrap().value;
                assert!(v.abs() <= 1.0 + 1e-12, "L_{n}({x}) = {v}");
            }
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let h = 1e-6;
        for n in 1..=10 {
            for &x in &[-0.83, -0.2, 0.31, 0.77] {
                let d = eval_legendre(n, x).unwrap().derivative;
                let fd = (eval_legendre(n, x + h).unwrap().value
                    - eval_legendre(n, x - h).unwrap().value)
                    / (2.0 * h);
                assert!((d - fd).abs() < 1e-7 * (1.0 + d.abs()), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(matches!(
            eval_legendre(4, 1.0 + 1e-9),
            Err(LegendreError::DomainError { .. })
        ));
        assert!(eval_legendre(4, 1.0 + 1e-13).is_ok());
    }

    #[test]
    fn lobatto_order_two_exact() {
        let rule = gauss_nodes(GaussRuleKind::Lobatto, 2).unwrap();
        let expect_nodes = [-1.0, 0.0, 1.0];
        let expect_weights = [1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0];
        for j in 0..3 {
            assert!((rule.nodes[j] - expect_nodes[j]).abs() <= 1e-14);
            assert!((rule.weights[j] - expect_weights[j]).abs() <= 1e-14);
        }
    }

    #[test]
    fn gauss_order_one_exact() {
        let rule = gauss_nodes(GaussRuleKind::Gauss, 1).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((rule.nodes[0] + x).abs() <= 1e-14);
        assert!((rule.nodes[1] - x).abs() <= 1e-14);
        assert!((rule.weights[0] - 1.0).abs() <= 1e-14);
        assert!((rule.weights[1] - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn weights_sum_to_two() {
        for kind in KINDS {
            for n in kind.min_order().max(1)..=40 {
                let rule = gauss_nodes(kind, n).unwrap();
                let sum: f64 = rule.weights.iter().sum();
                assert!((sum - 2.0).abs() <= 1e-13, "{kind} n={n}: sum={sum}");
                assert!(rule.weights.iter().all(|&w| w > 0.0));
            }
        }
    }

    #[test]
    fn endpoint_membership() {
        for n in 1..=20 {
            let lgl = gauss_nodes(GaussRuleKind::Lobatto, n).unwrap();
            assert_eq!(lgl.nodes[0], -1.0);
            assert_eq!(lgl.nodes[n], 1.0);
            let lgr = gauss_nodes(GaussRuleKind::Radau, n).unwrap();
            assert_eq!(lgr.nodes[0], -1.0);
            assert!(lgr.nodes[n] < 1.0);
        }
    }

    #[test]
    fn residuals_within_bound_up_to_256() {
        for kind in KINDS {
            for &n in &[1usize, 2, 7, 16, 33, 64, 128, 256] {
                if n < kind.min_order() {
                    continue;
                }
                let rule = gauss_nodes(kind, n).unwrap_or_else(|e| panic!("{e}"));
                for &x in &rule.nodes {
                    let r = defining_residual(kind, n, x);
                    if n <= 128 {
                        assert!(r <= 1e-12, "{kind} n={n} x={x}: {r:.3e}");
                    } else {
                        // the steepest nodes hit the f64 placement floor
                        // |F'| · ulp/2 just above 1e-12
                        let floor = defining_derivative(kind, n, x).abs() * f64::EPSILON;
                        assert!(r <= 1e-12f64.max(floor), "{kind} n={n} x={x}: {r:.3e}");
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_and_lobatto_symmetric() {
        for kind in [GaussRuleKind::Gauss, GaussRuleKind::Lobatto] {
            for &n in &[2usize, 5, 16, 33] {
                let rule = gauss_nodes(kind, n).unwrap();
                for j in 0..=n {
                    assert_eq!(rule.nodes[j], -rule.nodes[n - j], "{kind} n={n} j={j}");
                    assert!(
                        (rule.weights[j] - rule.weights[n - j]).abs() <= 1e-14,
                        "{kind} n={n} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn radau_small_orders() {
        let r0 = gauss_nodes(GaussRuleKind::Radau, 0).unwrap();
        assert_eq!(r0.nodes, vec![-1.0]);
        assert_eq!(r0.weights, vec![2.0]);
        // order 1: zeros of L_1 + L_2 = (3x-1)(x+1)/2 -> {-1, 1/3};
        // weights 1/2 and 3/2 from the closed form
        let r1 = gauss_nodes(GaussRuleKind::Radau, 1).unwrap();
        assert!((r1.nodes[1] - 1.0 / 3.0).abs() <= 1e-15);
        assert!((r1.weights[0] - 0.5).abs() <= 1e-15);
        assert!((r1.weights[1] - 1.5).abs() <= 1e-15);
    }

    #[test]
    fn lobatto_rejects_order_zero() {
        assert!(matches!(
            gauss_nodes(GaussRuleKind::Lobatto, 0),
            Err(LegendreError::InvalidOrder { .. })
        ));
    }

    #[test]
    fn exactness_on_monomials() {
        // each rule integrates x^k exactly through its declared degree
        for kind in KINDS {
            for n in kind.min_order().max(1)..=8 {
                let rule = gauss_nodes(kind, n).unwrap();
                for k in 0..=rule.exact_degree {
                    let exact = if k.is_multiple_of(2) {
                        2.0 / (k + 1) as f64
                    } else {
                        0.0
                    };
                    let got: f64 = rule
                        .nodes
                        .iter()
                        .zip(&rule.weights)
                        .map(|(&x, &w)| w * x.powi(k as i32))
                        .sum();
                    assert!(
                        (got - exact).abs() <= 1e-13,
                        "{kind} n={n} degree {k}: {got} vs {exact}"
                    );
                }
            }
        }
    }
}
