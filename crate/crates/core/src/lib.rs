//! Legendre spectral collocation for the 1-D steady nonlocal diffusion problem
//!
//! ```text
//! L_δ u(x) = ∫_{x-δ}^{x+δ} (u(y) - u(x)) γ(|y-x|) dy = f(x),   x ∈ [-1, 1],
//!        u = g                on (-1-δ, -1) ∪ (1, 1+δ),
//! ```
//!
//! where `γ` is a nonnegative radial kernel with horizon `δ` and the solution
//! is prescribed by `g` on the interaction collar instead of a pointwise
//! boundary condition.
//!
//! The solver seeks `u_N ∈ P_N` through its values at Gauss-Lobatto
//! collocation points, evaluates the operator integral with a Gauss-type
//! quadrature of independent order `M`, and solves the resulting dense
//! `(N+1) × (N+1)` system by LU with partial pivoting. For smooth kernels and
//! data the error decays exponentially in `N`; with the local (Laplacian)
//! source the gap to the local solution closes at rate `O(δ²)`.
//!
//! Module map:
//! * [`legendre`] — polynomial evaluation, Gauss/Radau/Lobatto nodes and weights
//! * [`quadrature`] — rule application on `[-1, 1]` and mapped subintervals
//! * [`basis`] — barycentric Lagrange cardinal basis at the collocation nodes
//! * [`model`] — kernels, problems, and the continuous-operator oracle
//! * [`assembler`] — dense collocation system with horizon-truncation cases
//! * [`linsolve`] — pivoted LU with one step of iterative refinement
//! * [`analysis`] — error norms, stability probes, and convergence sweeps

pub mod analysis;
pub mod assembler;
pub mod basis;
pub mod legendre;
pub mod linsolve;
pub mod model;
pub mod quadrature;

pub use analysis::{
    check_barrier_identity, check_max_principle, max_error, solve_problem, solve_problem_detailed,
    stability_probe, sweep_delta, sweep_n, AnalysisError, BarrierBound, DeltaSweep, ErrorRecord,
    MPolicy, MaxPrincipleReport, SolveConfig, SpectralSolution, StabilityReport, DEFAULT_GRID,
};
pub use assembler::{
    apply_discrete, assemble, classify_row, exterior_load, AssembleError, AssemblyOptions,
    CollocationSystem, RowCase, RowGeometry, SystemMeta,
};
pub use basis::{BasisError, CardinalBasis};
pub use legendre::{eval_legendre, gauss_nodes, GaussRuleKind, LegendreError, PolyEval};
pub use linsolve::{solve_dense, solve_linear, DenseMatrix, LinsolveError, SolveReport};
pub use model::{
    apply_operator, example1_problem, local_limit_problem, Kernel, ModelError, NonlocalProblem,
    RealFn,
};
pub use quadrature::{integrate, QuadratureRule};
