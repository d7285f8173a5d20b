//! Problem data: kernels, the nonlocal operator applied to a known function
//! (the reference oracle for the assembled scheme), and the built-in
//! manufactured problems.
//!
//! The operator acts on `u` as
//!
//! ```text
//! L_δ u(x) = ∫_{x-δ}^{x+δ} u(y) γ(|y - x|) dy - u(x) ∫_{-δ}^{δ} γ(|s|) ds,
//! ```
//!
//! after the change of variable `y = x + s`. The second factor is the
//! kernel's self term, stored once per kernel.

use crate::legendre::{gauss_nodes, GaussRuleKind};
use crate::quadrature::QuadratureRule;
use std::fmt;
use std::sync::Arc;

/// Shared real-valued function of one variable.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Quadrature size used for self terms, moments, and oracle defaults.
pub const ORACLE_QUAD_ORDER: usize = 64;

/// Radial interaction kernel `γ(|s|)` with horizon `δ`.
#[derive(Clone)]
pub struct Kernel {
    horizon: f64,
    profile: RealFn,
    self_term: f64,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Kernel")
            .field("horizon", &self.horizon)
            .field("self_term", &self.self_term)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    /// Horizon must be positive (built-in problems additionally require δ ≤ 1).
    InvalidHorizon { delta: f64, max: f64 },
    /// Self term `∫ γ` must be positive and finite.
    InvalidSelfTerm { value: f64 },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidHorizon { delta, max } => {
                write!(f, "horizon {delta} outside (0, {max}]")
            }
            ModelError::InvalidSelfTerm { value } => {
                write!(f, "kernel self term {value} is not positive and finite")
            }
        }
    }
}

impl std::error::Error for ModelError {}

impl Kernel {
    /// Kernel with a caller-supplied radial profile on `[0, δ]`.
    ///
    /// When no analytic self term is given, `∫_{-δ}^{δ} γ(|s|) ds` is
    /// computed as twice the integral over `[0, δ]` with a 64-point Gauss
    /// rule.
    pub fn new(
        horizon: f64,
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
        analytic_self_term: Option<f64>,
    ) -> Result<Kernel, ModelError> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(ModelError::InvalidHorizon {
                delta: horizon,
                max: f64::INFINITY,
            });
        }
        let profile: RealFn = Arc::new(profile);
        let self_term = match analytic_self_term {
            Some(v) => v,
            None => {
                let rule = oracle_rule();
                2.0 * rule.integrate(|r| profile(r), 0.0, horizon)
            }
        };
        if !(self_term > 0.0 && self_term.is_finite()) {
            return Err(ModelError::InvalidSelfTerm { value: self_term });
        }
        Ok(Kernel {
            horizon,
            profile,
            self_term,
        })
    }

    /// The constant kernel `γ = 3/δ³`, normalized so the second moment
    /// `∫ s² γ(|s|) ds = 2` and the self term is `6/δ²`.
    pub fn constant(horizon: f64) -> Result<Kernel, ModelError> {
        let c = 3.0 / (horizon * horizon * horizon);
        let self_term = 6.0 / (horizon * horizon);
        Kernel::new(horizon, move |_| c, Some(self_term))
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// `γ(r)` for `r ∈ [0, δ]`.
    pub fn eval(&self, r: f64) -> f64 {
        (self.profile)(r)
    }

    /// `∫_{-δ}^{δ} γ(|s|) ds`.
    pub fn self_term(&self) -> f64 {
        self.self_term
    }

    pub fn profile(&self) -> RealFn {
        Arc::clone(&self.profile)
    }

    /// `∫_{-δ}^{δ} s² γ(|s|) ds` by quadrature (equals 2 for kernels scaled
    /// like the constant one).
    pub fn second_moment(&self) -> f64 {
        let rule = oracle_rule();
        2.0 * rule.integrate(|r| r * r * self.eval(r), 0.0, self.horizon)
    }
}

fn oracle_rule() -> QuadratureRule {
    gauss_nodes(GaussRuleKind::Gauss, ORACLE_QUAD_ORDER - 1).expect("oracle rule construction")
}

/// Apply the continuous operator to a known function by quadrature over the
/// full ball `[x-δ, x+δ]` (so `u` must be defined there, extended by the
/// constraint data where the ball leaves `[-1, 1]`).
///
/// This is the reference oracle the assembled scheme is checked against; it
/// uses a Gauss rule of order `quad_order` independent of the assembly path.
pub fn apply_operator(kernel: &Kernel, u: impl Fn(f64) -> f64, x: f64, quad_order: usize) -> f64 {
    let rule =
        gauss_nodes(GaussRuleKind::Gauss, quad_order).expect("operator quadrature construction");
    let delta = kernel.horizon();
    let ball = rule.integrate(|y| u(y) * kernel.eval((y - x).abs()), x - delta, x + delta);
    ball - u(x) * kernel.self_term()
}

/// A volume-constrained steady problem on `[-1, 1]`.
#[derive(Clone)]
pub struct NonlocalProblem {
    kernel: Kernel,
    source: RealFn,
    constraint: RealFn,
    exact: Option<RealFn>,
}

impl fmt::Debug for NonlocalProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NonlocalProblem")
            .field("kernel", &self.kernel)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

impl NonlocalProblem {
    /// Problem from kernel, source `f` on `[-1, 1]`, constraint data `g` on
    /// the interaction collar, and an optional exact solution for error
    /// measurement.
    pub fn new(
        kernel: Kernel,
        source: impl Fn(f64) -> f64 + Send + Sync + 'static,
        constraint: impl Fn(f64) -> f64 + Send + Sync + 'static,
        exact: Option<RealFn>,
    ) -> Self {
        NonlocalProblem {
            kernel,
            source: Arc::new(source),
            constraint: Arc::new(constraint),
            exact,
        }
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn source(&self, x: f64) -> f64 {
        (self.source)(x)
    }

    pub fn constraint(&self, x: f64) -> f64 {
        (self.constraint)(x)
    }

    pub fn exact(&self) -> Option<RealFn> {
        self.exact.clone()
    }

    pub fn source_fn(&self) -> RealFn {
        Arc::clone(&self.source)
    }

    pub fn constraint_fn(&self) -> RealFn {
        Arc::clone(&self.constraint)
    }
}

/// The multiplier `c(δ)` with `L_δ e^{4x} = c(δ) e^{4x}` for the constant
/// kernel: `c = 3/δ³ · ((e^{4δ} - e^{-4δ})/4 - 2δ)`, which tends to 16 as
/// `δ → 0`.
///
/// The bracket is `(sinh(4δ) - 4δ)/2`, evaluated by the all-positive series
/// `Σ_{k≥1} t^{2k+1}/(2k+1)!`; the direct difference loses ~`3/(8δ²)` digits
/// to cancellation, which would dominate the manufactured-solution floor.
pub fn exp4_operator_factor(delta: f64) -> f64 {
    let t = 4.0 * delta;
    let t2 = t * t;
    // sinh(t) - t
    let mut term = t * t2 / 6.0;
    let mut sum = term;
    let mut k = 1;
    while term > f64::EPSILON * sum {
        term *= t2 / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
        sum += term;
        k += 1;
    }
    3.0 / (delta * delta * delta) * (sum / 2.0)
}

fn validate_builtin_horizon(delta: f64) -> Result<(), ModelError> {
    if delta > 0.0 && delta <= 1.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidHorizon { delta, max: 1.0 })
    }
}

/// Manufactured problem with the constant kernel and exact solution
/// `u = e^{4x}`: the source is `f_δ(x) = c(δ) e^{4x}` obtained by applying
/// the operator to the exact solution, so the discretization error is
/// measurable on its own and decays spectrally in `N`.
pub fn example1_problem(delta: f64) -> Result<NonlocalProblem, ModelError> {
    validate_builtin_horizon(delta)?;
    let kernel = Kernel::constant(delta)?;
    let factor = exp4_operator_factor(delta);
    let exact: RealFn = Arc::new(|x: f64| (4.0 * x).exp());
    Ok(NonlocalProblem::new(
        kernel,
        move |x: f64| factor * (4.0 * x).exp(),
        |x: f64| (4.0 * x).exp(),
        Some(exact),
    ))
}

/// Same kernel and constraint data as [`example1_problem`] but with the
/// local Laplacian source `f = 16 e^{4x}`; the solved nonlocal solution then
/// differs from `e^{4x}` by the `O(δ²)` modeling error.
pub fn local_limit_problem(delta: f64) -> Result<NonlocalProblem, ModelError> {
    validate_builtin_horizon(delta)?;
    let kernel = Kernel::constant(delta)?;
    let exact: RealFn = Arc::new(|x: f64| (4.0 * x).exp());
    Ok(NonlocalProblem::new(
        kernel,
        |x: f64| 16.0 * (4.0 * x).exp(),
        |x: f64| (4.0 * x).exp(),
        Some(exact),
    ))
}
