//! Dense direct solve with row partial pivoting, one step of iterative
//! refinement, and residual/pivot-growth reporting.

use crate::assembler::CollocationSystem;
use std::fmt;

/// Square dense matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let mut m = DenseMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &v)| a * v).sum())
            .collect()
    }

    /// `max_i Σ_j |a_ij|`.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|a| a.abs()).sum())
            .fold(0.0, f64::max)
    }

    /// `max_j Σ_i |a_ij|`.
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].abs()).sum())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinsolveError {
    /// A pivot fell below `1e-14 · ‖A‖_∞`, signalling a degenerate
    /// discretization (for instance a vanishing kernel).
    SingularMatrix {
        row: usize,
        pivot: f64,
    },
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for LinsolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinsolveError::SingularMatrix { row, pivot } => {
                write!(
                    f,
                    "singular matrix: pivot {pivot:.3e} at elimination step {row}"
                )
            }
            LinsolveError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
        }
    }
}

impl std::error::Error for LinsolveError {}

/// Solution plus the diagnostics that always travel with it.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: Vec<f64>,
    /// `‖A·u - b‖_∞` evaluated with the original matrix after refinement.
    pub residual_inf: f64,
    /// `max |U| / max |A|` from the factorization.
    pub pivot_growth: f64,
    /// 1-norm condition estimate (Hager power iteration); diagnostic only.
    pub condition_estimate: Option<f64>,
}

/// LU factorization `PA = LU` with row partial pivoting.
pub struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    pivot_growth: f64,
}

const PIVOT_RTOL: f64 = 1e-14;

/// Factor `a` with partial pivoting. Fails when a pivot drops below
/// `1e-14 · ‖A‖_∞`.
pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactors, LinsolveError> {
    let n = a.size();
    let mut lu = a.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let threshold = PIVOT_RTOL * a.norm_inf();
    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_val = lu[k * n + k].abs();
        for i in k + 1..n {
            let v = lu[i * n + k].abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = i;
            }
        }
        if pivot_val < threshold || pivot_val == 0.0 {
            return Err(LinsolveError::SingularMatrix {
                row: k,
                pivot: pivot_val,
            });
        }
        if pivot_row != k {
            for j in 0..n {
                lu.swap(k * n + j, pivot_row * n + j);
            }
            perm.swap(k, pivot_row);
        }
        let pivot = lu[k * n + k];
        for i in k + 1..n {
            let factor = lu[i * n + k] / pivot;
            lu[i * n + k] = factor;
            for j in k + 1..n {
                lu[i * n + j] -= factor * lu[k * n + j];
            }
        }
    }
    let max_u = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| lu[i * n + j].abs())
        .fold(0.0, f64::max);
    let max_a = a.max_abs();
    let pivot_growth = if max_a > 0.0 { max_u / max_a } else { 1.0 };
    Ok(LuFactors {
        n,
        lu,
        perm,
        pivot_growth,
    })
}

impl LuFactors {
    pub fn pivot_growth(&self) -> f64 {
        self.pivot_growth
    }

    /// Solve `A x = b`.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }

    /// Solve `Aᵀ x = b` (needed by the condition estimator).
    #[allow(clippy::needless_range_loop)]
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        // Aᵀ = Uᵀ Lᵀ P, so forward with Uᵀ, back with Lᵀ, then un-permute.
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for j in 0..i {
                s -= self.lu[j * n + i] * y[j];
            }
            y[i] = s / self.lu[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..n {
                s -= self.lu[j * n + i] * y[j];
            }
            y[i] = s;
        }
        let mut x = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = y[i];
        }
        x
    }
}

/// Hager's 1-norm estimate of `‖A⁻¹‖_1 · ‖A‖_1`.
fn condition_estimate(a: &DenseMatrix, lu: &LuFactors) -> f64 {
    let n = a.size();
    if n == 1 {
        return 1.0;
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut estimate = 0.0;
    for _ in 0..5 {
        let y = lu.solve(&x);
        estimate = y.iter().map(|v| v.abs()).sum();
        let xi: Vec<f64> = y
            .iter()
            .map(|&v| if v >= 0.0 { 1.0 } else { -1.0 })
            .collect();
        let z = lu.solve_transpose(&xi);
        let (j, z_inf) = z
            .iter()
            .enumerate()
            .map(|(j, v)| (j, v.abs()))
            .fold((0, 0.0), |acc, it| if it.1 > acc.1 { it } else { acc });
        let zx: f64 = z.iter().zip(&x).map(|(&a, &b)| a * b).sum();
        if z_inf <= zx.abs() {
            break;
        }
        x = vec![0.0; n];
        x[j] = 1.0;
    }
    estimate * a.norm_one()
}

fn residual_inf(a: &DenseMatrix, x: &[f64], b: &[f64]) -> f64 {
    a.matvec(x)
        .iter()
        .zip(b)
        .map(|(&ax, &bi)| (ax - bi).abs())
        .fold(0.0, f64::max)
}

/// Solve `A x = b` with partial pivoting and one step of iterative
/// refinement, reporting the final residual, the pivot growth, and a 1-norm
/// condition estimate.
pub fn solve_linear(a: &DenseMatrix, b: &[f64]) -> Result<SolveReport, LinsolveError> {
    if b.len() != a.size() {
        return Err(LinsolveError::DimensionMismatch {
            expected: a.size(),
            got: b.len(),
        });
    }
    let lu = lu_factor(a)?;
    let mut x = lu.solve(b);
    // one refinement pass against the original matrix
    let r: Vec<f64> = a
        .matvec(&x)
        .iter()
        .zip(b)
        .map(|(&ax, &bi)| bi - ax)
        .collect();
    let d = lu.solve(&r);
    for (xi, di) in x.iter_mut().zip(&d) {
        *xi += di;
    }
    let residual = residual_inf(a, &x, b);
    let cond = condition_estimate(a, &lu);
    Ok(SolveReport {
        solution: x,
        residual_inf: residual,
        pivot_growth: lu.pivot_growth(),
        condition_estimate: Some(cond),
    })
}

/// Solve an assembled collocation system.
pub fn solve_dense(system: &CollocationSystem) -> Result<SolveReport, LinsolveError> {
    solve_linear(&system.matrix, &system.rhs)
}
