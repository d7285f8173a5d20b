//! Error norms, maximum-principle and stability checks, and the convergence
//! sweeps over `N` and `δ`.
//!
//! "Maximum error" is measured on a uniform evaluation grid (2001 points by
//! default) through barycentric evaluation of the solution polynomial, not
//! only at the collocation nodes, since the nodal error understates the
//! interpolation error between nodes.

use crate::assembler::{assemble, AssembleError, AssemblyOptions, SystemMeta};
use crate::basis::CardinalBasis;
use crate::legendre::{gauss_nodes, GaussRuleKind, LegendreError};
use crate::linsolve::{solve_dense, LinsolveError};
use crate::model::{apply_operator, Kernel, ModelError, NonlocalProblem, ORACLE_QUAD_ORDER};
use rayon::prelude::*;
use std::fmt;
use std::time::Instant;

/// Default evaluation grid for sup norms and error records.
pub const DEFAULT_GRID: usize = 2001;

/// Quadrature-order policy for sweeps: `Auto` resolves to `N + 8`, which
/// keeps quadrature aliasing out of convergence measurements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MPolicy {
    Auto,
    Fixed(usize),
}

impl MPolicy {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            MPolicy::Auto => n + 8,
            MPolicy::Fixed(m) => m,
        }
    }
}

/// Parameters of a single solve.
#[derive(Clone, Copy, Debug)]
pub struct SolveConfig {
    pub n: usize,
    pub m: MPolicy,
    pub colloc_kind: GaussRuleKind,
    pub quad_kind: GaussRuleKind,
    pub allow_case_iv: bool,
    pub grid_size: usize,
}

impl SolveConfig {
    pub fn new(n: usize) -> Self {
        SolveConfig {
            n,
            m: MPolicy::Auto,
            colloc_kind: GaussRuleKind::Lobatto,
            quad_kind: GaussRuleKind::Lobatto,
            allow_case_iv: false,
            grid_size: DEFAULT_GRID,
        }
    }

    pub fn with_n(self, n: usize) -> Self {
        SolveConfig { n, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    Model(ModelError),
    Assemble(AssembleError),
    Solve(LinsolveError),
    Rule(LegendreError),
    /// Barrier identity requires kernel second moment 2.
    MomentMismatch {
        moment: f64,
    },
    /// `L_δ u` dropped below the tolerance somewhere, so the
    /// maximum-principle check is vacuous for this `u`.
    HypothesisFailed {
        x: f64,
        value: f64,
    },
    InvalidSweep(String),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::Model(e) => write!(f, "{e}"),
            AnalysisError::Assemble(e) => write!(f, "{e}"),
            AnalysisError::Solve(e) => write!(f, "{e}"),
            AnalysisError::Rule(e) => write!(f, "{e}"),
            AnalysisError::MomentMismatch { moment } => {
                write!(f, "kernel second moment {moment} differs from 2")
            }
            AnalysisError::HypothesisFailed { x, value } => {
                write!(
                    f,
                    "operator hypothesis failed at x={x}: L_delta u = {value}"
                )
            }
            AnalysisError::InvalidSweep(msg) => write!(f, "invalid sweep: {msg}"),
        }
    }
}

impl std::error::Error for AnalysisError {}

impl From<ModelError> for AnalysisError {
    fn from(e: ModelError) -> Self {
        AnalysisError::Model(e)
    }
}

impl From<AssembleError> for AnalysisError {
    fn from(e: AssembleError) -> Self {
        AnalysisError::Assemble(e)
    }
}

impl From<LinsolveError> for AnalysisError {
    fn from(e: LinsolveError) -> Self {
        AnalysisError::Solve(e)
    }
}

impl From<LegendreError> for AnalysisError {
    fn from(e: LegendreError) -> Self {
        AnalysisError::Rule(e)
    }
}

/// Nodal solution plus a stable evaluator for arbitrary points in `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct SpectralSolution {
    basis: CardinalBasis,
    nodal: Vec<f64>,
    meta: SystemMeta,
    residual_inf: f64,
    pivot_growth: f64,
    condition_estimate: Option<f64>,
    wall_ms: f64,
}

impl SpectralSolution {
    /// Evaluate the solution polynomial at `x` by barycentric interpolation.
    pub fn eval(&self, x: f64) -> f64 {
        self.basis.interpolate(&self.nodal, x)
    }

    pub fn nodal(&self) -> &[f64] {
        &self.nodal
    }

    pub fn basis(&self) -> &CardinalBasis {
        &self.basis
    }

    pub fn meta(&self) -> SystemMeta {
        self.meta
    }

    pub fn residual_inf(&self) -> f64 {
        self.residual_inf
    }

    pub fn pivot_growth(&self) -> f64 {
        self.pivot_growth
    }

    pub fn condition_estimate(&self) -> Option<f64> {
        self.condition_estimate
    }

    pub fn wall_ms(&self) -> f64 {
        self.wall_ms
    }

    /// `max |u_N|` over a uniform grid.
    pub fn sup_norm(&self, grid_size: usize) -> f64 {
        uniform_grid(grid_size).fold(0.0, |m, x| m.max(self.eval(x).abs()))
    }
}

/// Run the full pipeline: collocation rule, basis, assembly, dense solve.
pub fn solve_problem(
    problem: &NonlocalProblem,
    cfg: &SolveConfig,
) -> Result<SpectralSolution, AnalysisError> {
    Ok(solve_problem_detailed(problem, cfg)?.0)
}

/// [`solve_problem`] keeping the assembled system (for dumps and residual
/// work against the original matrix).
pub fn solve_problem_detailed(
    problem: &NonlocalProblem,
    cfg: &SolveConfig,
) -> Result<(SpectralSolution, crate::assembler::CollocationSystem), AnalysisError> {
    let start = Instant::now();
    let rule = gauss_nodes(cfg.colloc_kind, cfg.n)?;
    let basis = CardinalBasis::from_rule(&rule);
    let opts = AssemblyOptions {
        quad_order: cfg.m.resolve(cfg.n),
        quad_kind: cfg.quad_kind,
        allow_case_iv: cfg.allow_case_iv,
    };
    let system = assemble(&basis, problem, &opts)?;
    let report = solve_dense(&system)?;
    let solution = SpectralSolution {
        basis,
        nodal: report.solution,
        meta: system.meta,
        residual_inf: report.residual_inf,
        pivot_growth: report.pivot_growth,
        condition_estimate: report.condition_estimate,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((solution, system))
}

/// One sweep point: parameters, sampled sup error, and solve diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRecord {
    pub n: usize,
    pub m: usize,
    pub delta: f64,
    pub max_error: f64,
    pub argmax_x: f64,
    pub residual_inf: f64,
    pub wall_ms: f64,
}

fn uniform_grid(grid_size: usize) -> impl Iterator<Item = f64> {
    assert!(grid_size >= 2);
    let step = 2.0 / (grid_size - 1) as f64;
    (0..grid_size).map(move |i| (-1.0 + i as f64 * step).min(1.0))
}

/// Sampled `L^∞` error of a solution against a reference on `[-1, 1]`,
/// with the location of the maximum.
pub fn max_error(
    solution: &SpectralSolution,
    exact: impl Fn(f64) -> f64,
    grid_size: usize,
) -> ErrorRecord {
    let mut max = -1.0;
    let mut argmax = -1.0;
    for x in uniform_grid(grid_size) {
        let e = (solution.eval(x) - exact(x)).abs();
        if e > max {
            max = e;
            argmax = x;
        }
    }
    let meta = solution.meta();
    ErrorRecord {
        n: meta.n,
        m: meta.m,
        delta: meta.delta,
        max_error: max,
        argmax_x: argmax,
        residual_inf: solution.residual_inf(),
        wall_ms: solution.wall_ms(),
    }
}

/// The barrier `ϖ(t) = t(1-t)/2 + δ(1+δ)` and its sup over `[-1, 1]`,
/// `C = 1/8 + δ(1+δ)`, the constant in the `L^∞` stability bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarrierBound {
    pub delta: f64,
}

impl BarrierBound {
    pub fn new(delta: f64) -> Self {
        BarrierBound { delta }
    }

    pub fn barrier(&self, t: f64) -> f64 {
        t * (1.0 - t) / 2.0 + self.delta * (1.0 + self.delta)
    }

    pub fn constant(&self) -> f64 {
        0.125 + self.delta * (1.0 + self.delta)
    }
}

/// Verify `L_δ ϖ = -1` at interior sample points for a kernel with second
/// moment 2 (the identity is exact on quadratics for such kernels). Returns
/// the largest deviation `|L_δ ϖ(x) + 1|`.
///
/// The moment precondition is checked first and a mismatch is reported as an
/// error so callers can skip rather than fail.
pub fn check_barrier_identity(kernel: &Kernel, sample_xs: &[f64]) -> Result<f64, AnalysisError> {
    let moment = kernel.second_moment();
    if (moment - 2.0).abs() > 1e-10 {
        return Err(AnalysisError::MomentMismatch { moment });
    }
    let delta = kernel.horizon();
    let barrier = BarrierBound::new(delta);
    let mut worst = 0.0f64;
    for &x in sample_xs {
        assert!(
            x >= -1.0 + delta && x <= 1.0 - delta,
            "barrier identity holds on the interior strip; got x={x}"
        );
        let dev =
            (apply_operator(kernel, |t| barrier.barrier(t), x, ORACLE_QUAD_ORDER) + 1.0).abs();
        worst = worst.max(dev);
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxPrincipleReport {
    /// `max u` over sampled `[-1, 1]`.
    pub interior_max: f64,
    /// `max u` over the sampled interaction collar.
    pub exterior_max: f64,
    /// smallest sampled `L_δ u` (the verified hypothesis).
    pub hypothesis_min: f64,
    /// interior_max ≤ exterior_max + 1e-10
    pub satisfied: bool,
}

/// Check the maximum principle for a given `u` defined on `[-1-δ, 1+δ]`:
/// when `L_δ u ≥ 0` across `[-1, 1]`, the maximum must be attained on the
/// interaction collar. A sampled hypothesis violation is reported as
/// [`AnalysisError::HypothesisFailed`] (the conclusion is then vacuous).
pub fn check_max_principle(
    kernel: &Kernel,
    u: impl Fn(f64) -> f64,
    samples: usize,
) -> Result<MaxPrincipleReport, AnalysisError> {
    assert!(samples >= 2);
    let delta = kernel.horizon();
    let mut hypothesis_min = f64::INFINITY;
    for x in uniform_grid(samples) {
        let v = apply_operator(kernel, &u, x, ORACLE_QUAD_ORDER);
        if v < -1e-10 {
            return Err(AnalysisError::HypothesisFailed { x, value: v });
        }
        hypothesis_min = hypothesis_min.min(v);
    }
    let interior_max = uniform_grid(samples).fold(f64::NEG_INFINITY, |m, x| m.max(u(x)));
    let half = (samples / 2).max(2);
    let mut exterior_max = f64::NEG_INFINITY;
    for i in 0..half {
        let t = i as f64 / (half - 1) as f64;
        exterior_max = exterior_max.max(u(-1.0 - delta + t * delta));
        exterior_max = exterior_max.max(u(1.0 + t * delta));
    }
    Ok(MaxPrincipleReport {
        interior_max,
        exterior_max,
        hypothesis_min,
        satisfied: interior_max <= exterior_max + 1e-10,
    })
}

/// Outcome of the stability probe `‖u_N‖_∞ ≤ (C + 0.5) ‖f‖_∞` with
/// `C = 1/8 + δ(1+δ)` from the barrier bound. The slack acknowledges that
/// the continuum bound carries over to the discrete scheme only up to
/// quadrature and interpolation perturbations, so the probe reports rather
/// than hard-fails at the exact constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityReport {
    pub norm: f64,
    pub source_sup: f64,
    pub bound: f64,
    pub within_bound: bool,
}

/// Solve `problem` (meant to carry `g = 0`) and compare `‖u_N‖_∞` against
/// the barrier-bound slack `(C + 0.5) ‖f‖_∞`. With `f = 0` this is the
/// homogeneous uniqueness probe and the norm must vanish to roundoff.
pub fn stability_probe(
    problem: &NonlocalProblem,
    cfg: &SolveConfig,
) -> Result<StabilityReport, AnalysisError> {
    let solution = solve_problem(problem, cfg)?;
    let norm = solution.sup_norm(cfg.grid_size);
    let source_sup =
        uniform_grid(cfg.grid_size).fold(0.0f64, |m, x| m.max(problem.source(x).abs()));
    let c = BarrierBound::new(problem.kernel().horizon()).constant();
    let bound = (c + 0.5) * source_sup;
    Ok(StabilityReport {
        norm,
        source_sup,
        bound,
        within_bound: norm <= bound + 1e-11,
    })
}

/// Error records for ascending `N` at fixed `δ`; points run in parallel and
/// come back ordered by parameter.
pub fn sweep_n(
    problem: &NonlocalProblem,
    n_list: &[usize],
    m_policy: MPolicy,
    base: &SolveConfig,
) -> Result<Vec<ErrorRecord>, AnalysisError> {
    if n_list.is_empty() {
        return Err(AnalysisError::InvalidSweep("empty N list".into()));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(AnalysisError::InvalidSweep(
            "N list must be strictly ascending".into(),
        ));
    }
    if base.grid_size < 1000 {
        return Err(AnalysisError::InvalidSweep(format!(
            "evaluation grid {} below 1000 points",
            base.grid_size
        )));
    }
    let exact = problem
        .exact()
        .ok_or_else(|| AnalysisError::InvalidSweep("problem has no exact solution".into()))?;
    n_list
        .par_iter()
        .map(|&n| {
            let cfg = SolveConfig {
                n,
                m: m_policy,
                ..*base
            };
            let solution = solve_problem(problem, &cfg)?;
            Ok(max_error(&solution, |x| exact(x), cfg.grid_size))
        })
        .collect()
}

/// Result of a horizon sweep: per-δ records, the OLS slope of
/// `log10(max_error)` against `log10(δ)`, and whether all errors sit at the
/// numerical floor (which makes the slope physically meaningless).
#[derive(Clone, Debug)]
pub struct DeltaSweep {
    pub records: Vec<ErrorRecord>,
    pub slope: f64,
    pub floor_dominated: bool,
}

/// Numerical floor below which a δ-sweep is flagged floor-dominated.
pub const SWEEP_FLOOR: f64 = 1e-10;

/// Sweep the horizon at fixed `N`, fitting the modeling-error rate. The
/// slope is fit by ordinary least squares on all points, no point dropping.
pub fn sweep_delta(
    problem_for: impl Fn(f64) -> Result<NonlocalProblem, ModelError> + Sync,
    delta_list: &[f64],
    n: usize,
    m_policy: MPolicy,
    base: &SolveConfig,
) -> Result<DeltaSweep, AnalysisError> {
    if delta_list.len() < 2 {
        return Err(AnalysisError::InvalidSweep(
            "horizon sweep needs at least two deltas for a slope".into(),
        ));
    }
    if delta_list.iter().any(|&d| d <= 0.0) {
        return Err(AnalysisError::InvalidSweep(
            "deltas must be positive".into(),
        ));
    }
    if base.grid_size < 1000 {
        return Err(AnalysisError::InvalidSweep(format!(
            "evaluation grid {} below 1000 points",
            base.grid_size
        )));
    }
    let records: Vec<ErrorRecord> = delta_list
        .par_iter()
        .map(|&delta| {
            let problem = problem_for(delta)?;
            let exact = problem.exact().ok_or_else(|| {
                AnalysisError::InvalidSweep("problem has no exact solution".into())
            })?;
            let cfg = SolveConfig {
                n,
                m: m_policy,
                ..*base
            };
            let solution = solve_problem(&problem, &cfg)?;
            Ok(max_error(&solution, |x| exact(x), cfg.grid_size))
        })
        .collect::<Result<_, AnalysisError>>()?;
    let xs: Vec<f64> = records.iter().map(|r| r.delta.log10()).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.max_error.log10()).collect();
    let slope = ols_slope(&xs, &ys);
    let floor_dominated = records.iter().all(|r| r.max_error <= SWEEP_FLOOR);
    Ok(DeltaSweep {
        records,
        slope,
        floor_dominated,
    })
}

fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
