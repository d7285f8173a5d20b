//! Assembly of the dense collocation system.
//!
//! Row `i` enforces the discretized equation at the collocation point `x_i`.
//! The operator integral runs over `Λ = (x_i - δ, x_i + δ) ∩ (-1, 1)`; the
//! part of the ball outside the domain, `Λ_c`, is known from the constraint
//! data `g` and moves to the right-hand side:
//!
//! ```text
//! A[i][k] = (b_i - a_i)/2 · Σ_j h_k(y(x_i, t_j)) γ(|y(x_i, t_j) - x_i|) ω_j
//!           - δ_{ik} ∫_{-δ}^{δ} γ(|s|) ds,
//! b[i]    = f(x_i) - ∫_{Λ_c} g(y) γ(|y - x_i|) dy.
//! ```
//!
//! Rows are tagged by how the horizon ball meets the domain boundary:
//! interior (no truncation), left- or right-truncated (one overhang piece),
//! or both-truncated, which only arises for δ > 1 and is gated off by
//! default.

use crate::basis::CardinalBasis;
use crate::legendre::{gauss_nodes, GaussRuleKind, LegendreError};
use crate::linsolve::DenseMatrix;
use crate::model::{Kernel, NonlocalProblem};
use crate::quadrature::QuadratureRule;
use std::fmt;

/// Horizon-truncation case of a collocation row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowCase {
    /// `(x_i - δ, x_i + δ) ⊂ (-1, 1)`.
    Interior,
    /// Ball overhangs the left boundary.
    LeftTruncated,
    /// Ball overhangs the right boundary.
    RightTruncated,
    /// Ball overhangs both boundaries (requires δ > 1).
    BothTruncated,
}

impl fmt::Display for RowCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RowCase::Interior => "I",
            RowCase::LeftTruncated => "II",
            RowCase::RightTruncated => "III",
            RowCase::BothTruncated => "IV",
        };
        f.write_str(s)
    }
}

/// Integration geometry of one row: the clipped interior interval `Λ` and
/// the exterior overhang pieces `Λ_c` (at most two, ordered left to right).
#[derive(Clone, Debug, PartialEq)]
pub struct RowGeometry {
    pub case: RowCase,
    pub node: f64,
    pub interior: (f64, f64),
    pub exterior: Vec<(f64, f64)>,
}

/// Classify a collocation point: `Λ = (max(x_i-δ, -1), min(x_i+δ, 1))` with
/// the overhangs as exterior pieces. Tangent balls (`x_i ± δ` exactly on the
/// boundary) count as interior since the overhang has measure zero.
pub fn classify_row(x_i: f64, delta: f64) -> RowGeometry {
    let lo = x_i - delta;
    let hi = x_i + delta;
    let a = lo.max(-1.0);
    let b = hi.min(1.0);
    let left = lo < -1.0;
    let right = hi > 1.0;
    let (case, exterior) = match (left, right) {
        (false, false) => (RowCase::Interior, vec![]),
        (true, false) => (RowCase::LeftTruncated, vec![(lo, -1.0)]),
        (false, true) => (RowCase::RightTruncated, vec![(1.0, hi)]),
        (true, true) => (RowCase::BothTruncated, vec![(lo, -1.0), (1.0, hi)]),
    };
    RowGeometry {
        case,
        node: x_i,
        interior: (a, b),
        exterior,
    }
}

/// Assembly parameters: operator quadrature order `M` (independent of the
/// collocation degree), the quadrature family, and the `δ > 1` gate.
#[derive(Clone, Copy, Debug)]
pub struct AssemblyOptions {
    pub quad_order: usize,
    pub quad_kind: GaussRuleKind,
    pub allow_case_iv: bool,
}

impl AssemblyOptions {
    /// Defaults for collocation degree `n`: `M = n + 8`, Lobatto quadrature,
    /// no both-truncated rows.
    pub fn for_degree(n: usize) -> Self {
        AssemblyOptions {
            quad_order: n + 8,
            quad_kind: GaussRuleKind::Lobatto,
            allow_case_iv: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemMeta {
    pub n: usize,
    pub m: usize,
    pub delta: f64,
    pub colloc_kind: GaussRuleKind,
    pub quad_kind: GaussRuleKind,
}

/// Dense collocation system `A u = b` with per-row case tags.
#[derive(Clone, Debug)]
pub struct CollocationSystem {
    pub matrix: DenseMatrix,
    pub rhs: Vec<f64>,
    pub rows: Vec<RowGeometry>,
    pub meta: SystemMeta,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AssembleError {
    /// δ > 1 produces both-truncated rows; enable the case-IV gate to accept.
    HorizonRequiresCaseIv {
        delta: f64,
    },
    /// Operator quadrature must resolve the basis: `M ≥ N`.
    QuadratureOrderTooLow {
        m: usize,
        n: usize,
    },
    /// Nodal vector length differs from the system size.
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    Rule(LegendreError),
}

impl fmt::Display for AssembleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssembleError::HorizonRequiresCaseIv { delta } => {
                write!(f, "horizon {delta} > 1 requires the case-IV flag")
            }
            AssembleError::QuadratureOrderTooLow { m, n } => {
                write!(f, "quadrature order {m} below collocation degree {n}")
            }
            AssembleError::DimensionMismatch { expected, got } => {
                write!(f, "nodal vector length {got}, expected {expected}")
            }
            AssembleError::Rule(e) => write!(f, "quadrature rule construction: {e}"),
        }
    }
}

impl std::error::Error for AssembleError {}

impl From<LegendreError> for AssembleError {
    fn from(e: LegendreError) -> Self {
        AssembleError::Rule(e)
    }
}

/// Boundary load `∫_{Λ_c} g(y) γ(|y - x_i|) dy`, one mapped quadrature per
/// overhang piece.
pub fn exterior_load(
    geometry: &RowGeometry,
    kernel: &Kernel,
    g: impl Fn(f64) -> f64,
    rule: &QuadratureRule,
) -> f64 {
    let x_i = geometry.node;
    geometry
        .exterior
        .iter()
        .map(|&(a, b)| rule.integrate(|y| g(y) * kernel.eval((y - x_i).abs()), a, b))
        .sum()
}

/// Assemble the collocation system for `problem` on the nodes of `basis`.
///
/// Assembly is row-independent and deterministic: the same inputs produce
/// bit-identical matrices.
pub fn assemble(
    basis: &CardinalBasis,
    problem: &NonlocalProblem,
    opts: &AssemblyOptions,
) -> Result<CollocationSystem, AssembleError> {
    let n = basis.degree();
    let kernel = problem.kernel();
    let delta = kernel.horizon();
    if delta > 1.0 && !opts.allow_case_iv {
        return Err(AssembleError::HorizonRequiresCaseIv { delta });
    }
    if opts.quad_order < n {
        return Err(AssembleError::QuadratureOrderTooLow {
            m: opts.quad_order,
            n,
        });
    }
    let rule = gauss_nodes(opts.quad_kind, opts.quad_order)?;
    let self_term = kernel.self_term();

    let mut matrix = DenseMatrix::zeros(n + 1);
    let mut rhs = vec![0.0; n + 1];
    let mut rows = Vec::with_capacity(n + 1);
    let mut cardinal = vec![0.0; n + 1];

    for i in 0..=n {
        let x_i = basis.nodes()[i];
        let geometry = classify_row(x_i, delta);
        let (a, b) = geometry.interior;
        let jac = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let row = matrix.row_mut(i);
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let y = jac * t + mid;
            basis.eval_all(y, &mut cardinal);
            let factor = jac * w * kernel.eval((y - x_i).abs());
            for (entry, &h) in row.iter_mut().zip(&cardinal) {
                *entry += factor * h;
            }
        }
        row[i] -= self_term;
        rhs[i] = problem.source(x_i)
            - exterior_load(&geometry, kernel, |y| problem.constraint(y), &rule);
        rows.push(geometry);
    }

    Ok(CollocationSystem {
        matrix,
        rhs,
        rows,
        meta: SystemMeta {
            n,
            m: opts.quad_order,
            delta,
            colloc_kind: basis.kind(),
            quad_kind: opts.quad_kind,
        },
    })
}

/// `A · nodal` without solving; used by residual and maximum-principle
/// checks.
pub fn apply_discrete(
    system: &CollocationSystem,
    nodal: &[f64],
) -> Result<Vec<f64>, AssembleError> {
    let expected = system.matrix.size();
    if nodal.len() != expected {
        return Err(AssembleError::DimensionMismatch {
            expected,
            got: nodal.len(),
        });
    }
    Ok(system.matrix.matvec(nodal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{apply_operator, example1_problem};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lobatto_basis(n: usize) -> CardinalBasis {
        CardinalBasis::from_rule(&gauss_nodes(GaussRuleKind::Lobatto, n).unwrap())
    }

    #[test]
    fn classify_interior() {
        let g = classify_row(0.0, 0.1);
        assert_eq!(g.case, RowCase::Interior);
        assert_eq!(g.interior, (-0.1, 0.1));
        assert!(g.exterior.is_empty());
    }

    #[test]
    fn classify_left_endpoint() {
        let g = classify_row(-1.0, 0.1);
        assert_eq!(g.case, RowCase::LeftTruncated);
        assert_eq!(g.interior, (-1.0, -0.9));
        assert_eq!(g.exterior, vec![(-1.1, -1.0)]);
    }

    #[test]
    fn classify_right_overhang() {
        let g = classify_row(0.95, 0.1);
        assert_eq!(g.case, RowCase::RightTruncated);
        assert_eq!(g.interior, (0.85, 1.0));
        assert_eq!(g.exterior.len(), 1);
        assert_eq!(g.exterior[0].0, 1.0);
        assert!((g.exterior[0].1 - 1.05).abs() <= 1e-15);
    }

    #[test]
    fn classify_tangent_is_interior() {
        let g = classify_row(-0.9, 0.1);
        assert_eq!(g.case, RowCase::Interior);
        assert_eq!(g.interior, (-1.0, -0.8));
    }

    #[test]
    fn classify_both_truncated() {
        let g = classify_row(0.0, 1.5);
        assert_eq!(g.case, RowCase::BothTruncated);
        assert_eq!(g.interior, (-1.0, 1.0));
        assert_eq!(g.exterior.len(), 2);
    }

    #[test]
    fn case_coverage_small_horizon() {
        let basis = lobatto_basis(8);
        let problem = example1_problem(0.01).unwrap();
        let system = assemble(&basis, &problem, &AssemblyOptions::for_degree(8)).unwrap();
        assert_eq!(system.rows[0].case, RowCase::LeftTruncated);
        assert_eq!(system.rows[8].case, RowCase::RightTruncated);
        for row in &system.rows[1..8] {
            assert_eq!(row.case, RowCase::Interior, "node {}", row.node);
        }
    }

    #[test]
    fn rejects_large_horizon_without_gate() {
        use crate::model::{Kernel, NonlocalProblem};
        let kernel = Kernel::constant(1.5).unwrap();
        let problem = NonlocalProblem::new(kernel, |_| 0.0, |_| 0.0, None);
        let basis = lobatto_basis(4);
        let err = assemble(&basis, &problem, &AssemblyOptions::for_degree(4)).unwrap_err();
        assert!(matches!(err, AssembleError::HorizonRequiresCaseIv { .. }));
    }

    #[test]
    fn rejects_underresolved_quadrature() {
        let basis = lobatto_basis(8);
        let problem = example1_problem(0.1).unwrap();
        let opts = AssemblyOptions {
            quad_order: 4,
            ..AssemblyOptions::for_degree(8)
        };
        assert!(matches!(
            assemble(&basis, &problem, &opts),
            Err(AssembleError::QuadratureOrderTooLow { .. })
        ));
    }

    /// With g ≡ 1 and nodal vector 1, every row reproduces L_δ 1 = 0: the
    /// quadrature of γ over the ball splits exactly across Λ and Λ_c.
    #[test]
    fn operator_annihilates_constants_rowwise() {
        use crate::model::{Kernel, NonlocalProblem};
        for delta in [0.05, 0.3, 1.0] {
            let kernel = Kernel::constant(delta).unwrap();
            let problem = NonlocalProblem::new(kernel, |_| 0.0, |_| 1.0, None);
            let basis = lobatto_basis(10);
            let system = assemble(&basis, &problem, &AssemblyOptions::for_degree(10)).unwrap();
            let ones = vec![1.0; 11];
            let av = apply_discrete(&system, &ones).unwrap();
            for (i, (&lhs, &b)) in av.iter().zip(&system.rhs).enumerate() {
                // (A·1)_i - b_i = L_δ1(x_i) - f(x_i) = 0
                assert!(
                    (lhs - b).abs() <= 1e-11,
                    "delta={delta} row {i}: {}",
                    lhs - b
                );
            }
        }
    }

    #[test]
    fn case_iv_rows_annihilate_constants() {
        use crate::model::{Kernel, NonlocalProblem};
        let kernel = Kernel::constant(1.5).unwrap();
        let problem = NonlocalProblem::new(kernel, |_| 0.0, |_| 1.0, None);
        let basis = lobatto_basis(6);
        let opts = AssemblyOptions {
            allow_case_iv: true,
            ..AssemblyOptions::for_degree(6)
        };
        let system = assemble(&basis, &problem, &opts).unwrap();
        assert!(system.rows.iter().any(|r| r.case == RowCase::BothTruncated));
        let ones = vec![1.0; 7];
        let av = apply_discrete(&system, &ones).unwrap();
        for (&lhs, &b) in av.iter().zip(&system.rhs) {
            assert!((lhs - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn rows_mirror_under_reflection() {
        let n = 8;
        let basis = lobatto_basis(n);
        let problem = example1_problem(0.1).unwrap();
        let system = assemble(&basis, &problem, &AssemblyOptions::for_degree(n)).unwrap();
        for i in 0..=n {
            for k in 0..=n {
                let lhs = system.matrix[(i, k)];
                let rhs = system.matrix[(n - i, n - k)];
                assert!(
                    (lhs - rhs).abs() <= 1e-11 * lhs.abs().max(1.0),
                    "({i},{k}): {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn assembly_is_deterministic() {
        let basis = lobatto_basis(12);
        let problem = example1_problem(0.1).unwrap();
        let opts = AssemblyOptions::for_degree(12);
        let s1 = assemble(&basis, &problem, &opts).unwrap();
        let s2 = assemble(&basis, &problem, &opts).unwrap();
        assert_eq!(s1.matrix, s2.matrix);
        assert_eq!(s1.rhs, s2.rhs);
    }

    #[test]
    fn apply_discrete_is_linear() {
        let basis = lobatto_basis(6);
        let problem = example1_problem(0.2).unwrap();
        let system = assemble(&basis, &problem, &AssemblyOptions::for_degree(6)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u: Vec<f64> = (0..7).map(|_| rng.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..7).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (alpha, beta) = (0.7, -1.3);
        let combo: Vec<f64> = u
            .iter()
            .zip(&v)
            .map(|(&a, &b)| alpha * a + beta * b)
            .collect();
        let au = apply_discrete(&system, &u).unwrap();
        let av = apply_discrete(&system, &v).unwrap();
        let ac = apply_discrete(&system, &combo).unwrap();
        for i in 0..7 {
            let expect = alpha * au[i] + beta * av[i];
            assert!((ac[i] - expect).abs() <= 1e-13 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn apply_discrete_zero_and_mismatch() {
        let basis = lobatto_basis(4);
        let problem = example1_problem(0.1).unwrap();
        let system = assemble(&basis, &problem, &AssemblyOptions::for_degree(4)).unwrap();
        let zero = apply_discrete(&system, &[0.0; 5]).unwrap();
        assert!(zero.iter().all(|&v| v == 0.0));
        assert!(matches!(
            apply_discrete(&system, &[0.0; 4]),
            Err(AssembleError::DimensionMismatch { .. })
        ));
    }

    /// Assembled rows agree with the continuous operator on resolvable
    /// polynomials, boundary rows included.
    #[test]
    fn rows_match_operator_oracle_on_polynomials() {
        use crate::model::{Kernel, NonlocalProblem};
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for &delta in &[0.1, 0.5] {
            let n = 9;
            let coeffs: Vec<f64> = (0..=n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let poly = move |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
            let kernel = Kernel::constant(delta).unwrap();
            let problem = NonlocalProblem::new(kernel, |_| 0.0, poly.clone(), None);
            let basis = lobatto_basis(n);
            let system = assemble(&basis, &problem, &AssemblyOptions::for_degree(n)).unwrap();
            let nodal: Vec<f64> = basis.nodes().iter().map(|&x| poly(x)).collect();
            let av = apply_discrete(&system, &nodal).unwrap();
            for (i, ((&lhs, &rhs), &x_i)) in
                av.iter().zip(&system.rhs).zip(basis.nodes()).enumerate()
            {
                // load_i = f_i - b_i = -b_i here because f ≡ 0
                let discrete = lhs - rhs;
                let oracle = apply_operator(problem.kernel(), &poly, x_i, 64);
                assert!(
                    (discrete - oracle).abs() <= 1e-10,
                    "delta={delta} row {i}: {discrete} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn residual_of_exact_interpolant_decays() {
        let problem = example1_problem(0.1).unwrap();
        let exact = problem.exact().unwrap();
        let residual_at = |n: usize| {
            let basis = lobatto_basis(n);
            let system = assemble(&basis, &problem, &AssemblyOptions::for_degree(n)).unwrap();
            let nodal: Vec<f64> = basis.nodes().iter().map(|&x| exact(x)).collect();
            let av = apply_discrete(&system, &nodal).unwrap();
            av.iter()
                .zip(&system.rhs)
                .map(|(&a, &b)| (a - b).abs())
                .fold(0.0f64, f64::max)
        };
        let r4 = residual_at(4);
        let r8 = residual_at(8);
        let r16 = residual_at(16);
        assert!(r8 < r4 / 50.0, "r4={r4} r8={r8}");
        assert!(r16 < r8 / 1e3, "r8={r8} r16={r16}");
    }

    proptest! {
        /// Λ ∪ Λ_c recovers the full ball: lengths add to 2δ and Λ stays
        /// inside [-1, 1].
        #[test]
        fn ball_partition(x in -1.0f64..1.0, delta in 1e-3f64..1.9) {
            let g = classify_row(x, delta);
            let (a, b) = g.interior;
            prop_assert!(a >= -1.0 && b <= 1.0 && a < b);
            let total = (b - a) + g.exterior.iter().map(|(lo, hi)| hi - lo).sum::<f64>();
            prop_assert!((total - 2.0 * delta).abs() <= 1e-12);
        }
    }
}
