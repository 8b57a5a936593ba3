//! Self-expressive coefficient solvers: each sample is reconstructed as a
//! linear combination of the other samples, under four regularization
//! regimes (LSR, SSC-ADMM, SSC-OMP, EnSC).

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Column-stacked sample descriptors: one D-dimensional sample per column.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    data: DMatrix<f64>,
}

impl FeatureMatrix {
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        if data.ncols() < 2 {
            return Err(Error::InvalidParam("need at least 2 samples".into()));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParam("feature matrix contains non-finite entries".into()));
        }
        Ok(FeatureMatrix { data })
    }

    /// Build from per-sample feature vectors (columns).
    pub fn from_columns(cols: &[Vec<f64>]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::InvalidParam("no samples".into()));
        }
        let d = cols[0].len();
        if cols.iter().any(|c| c.len() != d) {
            return Err(Error::InvalidParam("samples have inconsistent dimensions".into()));
        }
        let mut m = DMatrix::zeros(d, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_column(j, &DVector::from_column_slice(c));
        }
        FeatureMatrix::new(m)
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn count(&self) -> usize {
        self.data.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }
}

/// Per-dimension z-scoring across samples. Dimensions with (near-)zero
/// variance are centered only.
pub fn standardize(x: &FeatureMatrix) -> FeatureMatrix {
    let mut m = x.data.clone();
    let n = m.ncols() as f64;
    for i in 0..m.nrows() {
        let mean = m.row(i).sum() / n;
        let var = m.row(i).iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let std = var.sqrt();
        for j in 0..m.ncols() {
            m[(i, j)] -= mean;
            if std > 1e-12 {
                m[(i, j)] /= std;
            }
        }
    }
    FeatureMatrix { data: m }
}

/// N×N self-expressive coefficients with machine-exact zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    coeffs: DMatrix<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// ‖X − XC‖_F at the returned iterate.
    pub residual: f64,
    /// ADMM per-iteration primal residual ‖C − A‖_F; empty for other solvers.
    pub primal_residuals: Vec<f64>,
}

impl CoefficientMatrix {
    fn new(mut coeffs: DMatrix<f64>, converged: bool, iterations: usize, x: &DMatrix<f64>) -> Self {
        coeffs.fill_diagonal(0.0);
        let residual = (x - x * &coeffs).norm();
        CoefficientMatrix {
            coeffs,
            converged,
            iterations,
            residual,
            primal_residuals: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn coeffs(&self) -> &DMatrix<f64> {
        &self.coeffs
    }
}

/// Solver hyperparameters. `None` fields fall back to data-dependent
/// self-tuning defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverParams {
    /// Regularization weight. Default: self-tuned per solver.
    pub lambda: Option<f64>,
    /// ADMM penalty. Default 20.
    pub rho: Option<f64>,
    pub max_iter: usize,
    pub tol: f64,
    /// OMP support cap. Default min(10, N−1).
    pub omp_sparsity: Option<usize>,
    /// EnSC L1/L2 mix μ in (0, 1].
    pub ensc_mix: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            lambda: None,
            rho: None,
            max_iter: 200,
            tol: 1e-6,
            omp_sparsity: None,
            ensc_mix: 0.9,
        }
    }
}

impl SolverParams {
    fn validate(&self) -> Result<()> {
        if let Some(l) = self.lambda {
            if !(l > 0.0) {
                return Err(Error::InvalidParam("lambda must be > 0".into()));
            }
        }
        if let Some(r) = self.rho {
            if !(r > 0.0) {
                return Err(Error::InvalidParam("rho must be > 0".into()));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParam("max_iter must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParam("tol must be > 0".into()));
        }
        if let Some(k) = self.omp_sparsity {
            if k == 0 {
                return Err(Error::InvalidParam("omp_sparsity must be positive".into()));
            }
        }
        if !(self.ensc_mix > 0.0 && self.ensc_mix <= 1.0) {
            return Err(Error::InvalidParam("ensc_mix must be in (0, 1]".into()));
        }
        Ok(())
    }
}

const ADMM_ALPHA: f64 = 20.0;
const MONOTONE_SLACK: f64 = 1e-8;

/// Self-tuning λ for the L1 solvers. The literature's rule for
/// `min ‖C‖₁ + (α/μ₂)/2 ‖X − XC‖²` rescales to λ = μ₂/α in our
/// normalization `min λ‖C‖₁ + ½‖X − XC‖²`, with
/// μ₂ = min_j max_{i≠j} |x_iᵀ x_j|.
fn lambda_l1_default(x: &DMatrix<f64>) -> f64 {
    let g = x.transpose() * x;
    let n = g.ncols();
    let mut mu2 = f64::INFINITY;
    for j in 0..n {
        let mut best = 0.0f64;
        for i in 0..n {
            if i != j {
                best = best.max(g[(i, j)].abs());
            }
        }
        mu2 = mu2.min(best);
    }
    (mu2 / ADMM_ALPHA).max(1e-12)
}

/// Least squares regression with zero-diagonal constraint, in closed form:
/// with Z̃ = (XᵀX + λI)⁻¹, C_ij = −Z̃_ij / Z̃_jj for i ≠ j.
pub fn solve_lsr(x: &FeatureMatrix, params: &SolverParams) -> Result<CoefficientMatrix> {
    params.validate()?;
    let xm = x.matrix();
    let n = x.count();
    let lambda = params
        .lambda
        .unwrap_or_else(|| 0.1 * (xm.transpose() * xm).trace() / n as f64)
        .max(1e-12);

    let gram = xm.transpose() * xm + DMatrix::identity(n, n) * lambda;
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::Numerical("Gram matrix not positive definite".into()))?;
    let ztilde = chol.inverse();

    let mut c = DMatrix::zeros(n, n);
    for j in 0..n {
        let zjj = ztilde[(j, j)];
        for i in 0..n {
            if i != j {
                c[(i, j)] = -ztilde[(i, j)] / zjj;
            }
        }
    }
    Ok(CoefficientMatrix::new(c, true, 1, xm))
}

fn soft_threshold(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

/// Sparse subspace clustering via ADMM on
/// `min λ‖C‖₁ + ½‖X − XC‖²_F  s.t. diag(C) = 0`.
///
/// C-update is a ridge solve, the auxiliary update is an entrywise soft
/// threshold with diagonal zeroing, followed by dual ascent. Non-convergence
/// at `max_iter` is reported through the `converged` flag, not an error.
pub fn solve_ssc_admm(x: &FeatureMatrix, params: &SolverParams) -> Result<CoefficientMatrix> {
    params.validate()?;
    let xm = x.matrix();
    let n = x.count();
    let lambda = params.lambda.unwrap_or_else(|| lambda_l1_default(xm));
    let rho = params.rho.unwrap_or(ADMM_ALPHA);

    let gram = xm.transpose() * xm;
    let factor = |rho: f64| {
        (&gram + DMatrix::identity(n, n) * rho)
            .cholesky()
            .ok_or_else(|| Error::Numerical("ADMM system not positive definite".into()))
    };
    let mut rho = rho;
    let mut chol = factor(rho)?;

    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut u = DMatrix::<f64>::zeros(n, n);
    let mut converged = false;
    let mut iterations = params.max_iter;
    let mut primal_trace = Vec::with_capacity(params.max_iter);
    let mut decay_streak = 0usize;

    for it in 0..params.max_iter {
        // C-step: (XᵀX + ρI) C = XᵀX + ρ(A − U)
        let rhs = &gram + (&a - &u) * rho;
        let c = chol.solve(&rhs);

        // auxiliary step: soft threshold, zero diagonal
        let a_prev = a.clone();
        a = (&c + &u).map(|v| soft_threshold(v, lambda / rho));
        a.fill_diagonal(0.0);

        // dual ascent (scaled dual variable)
        u += &c - &a;

        let primal = (&c - &a).norm();
        let dual = rho * (&a - &a_prev).norm();
        // terminate only while the primal residual is in a decaying phase, so
        // a converged run always ends on a non-increasing tail (ADMM ripples
        // near its fixed point; stopping mid-ripple would hide that)
        if primal <= primal_trace.last().copied().unwrap_or(f64::INFINITY) + MONOTONE_SLACK {
            decay_streak += 1;
        } else {
            decay_streak = 0;
        }
        primal_trace.push(primal);
        if primal < params.tol && dual < params.tol && decay_streak >= 9.min(it) {
            converged = true;
            iterations = it + 1;
            break;
        }

        // residual balancing (Boyd et al. §3.4.1); u is scaled by 1/ρ, so
        // rescale it whenever ρ changes, then refactor the C-step system
        if primal > 10.0 * dual {
            rho *= 2.0;
            u /= 2.0;
            chol = factor(rho)?;
        } else if dual > 10.0 * primal {
            rho /= 2.0;
            u *= 2.0;
            chol = factor(rho)?;
        }
    }
    let mut out = CoefficientMatrix::new(a, converged, iterations, xm);
    out.primal_residuals = primal_trace;
    Ok(out)
}

/// Sparse subspace clustering via per-column orthogonal matching pursuit.
/// Columns are normalized to unit L2 norm internally; coefficients are
/// rescaled back so that `X ≈ XC` holds in the original scale.
pub fn solve_ssc_omp(x: &FeatureMatrix, params: &SolverParams) -> Result<CoefficientMatrix> {
    params.validate()?;
    let xm = x.matrix();
    let n = x.count();
    let k_max = params.omp_sparsity.unwrap_or_else(|| 10.min(n - 1)).min(n - 1);

    let mut norms = vec![0.0; n];
    let mut xn = xm.clone();
    for j in 0..n {
        let nrm = xm.column(j).norm();
        if nrm <= 1e-300 {
            return Err(Error::InvalidParam(format!("column {j} of X has zero norm")));
        }
        norms[j] = nrm;
        let col = xm.column(j) / nrm;
        xn.set_column(j, &col);
    }

    let mut c = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let target = xn.column(j).clone_owned();
        let mut residual = target.clone();
        let mut support: Vec<usize> = Vec::new();

        for _ in 0..k_max {
            if residual.norm() < params.tol {
                break;
            }
            let mut best = 0usize;
            let mut best_corr = -1.0;
            for i in 0..n {
                if i == j || support.contains(&i) {
                    continue;
                }
                let corr = xn.column(i).dot(&residual).abs();
                if corr > best_corr {
                    best_corr = corr;
                    best = i;
                }
            }
            if best_corr < 1e-12 {
                break;
            }
            support.push(best);

            // least-squares refit on the selected support
            let sub = DMatrix::from_fn(xn.nrows(), support.len(), |r, k| xn[(r, support[k])]);
            let coef = lstsq(&sub, &target)?;
            residual = &target - &sub * &coef;
        }

        if !support.is_empty() {
            let sub = DMatrix::from_fn(xn.nrows(), support.len(), |r, k| xn[(r, support[k])]);
            let coef = lstsq(&sub, &target)?;
            for (k, &i) in support.iter().enumerate() {
                // x_j/‖x_j‖ = Σ coef_i x_i/‖x_i‖  ⇒  x_j = Σ coef_i ‖x_j‖/‖x_i‖ x_i
                c[(i, j)] = coef[k] * norms[j] / norms[i];
            }
        }
    }
    Ok(CoefficientMatrix::new(c, true, 1, xm))
}

fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    let ata = a.transpose() * a;
    let atb = a.transpose() * b;
    let k = ata.nrows();
    (ata + DMatrix::identity(k, k) * 1e-12)
        .cholesky()
        .map(|ch| ch.solve(&atb))
        .ok_or_else(|| Error::Numerical("least-squares normal equations singular".into()))
}

/// Elastic-net subspace clustering: per column j,
/// `min λ[μ‖c‖₁ + (1−μ)/2 ‖c‖₂²] + ½‖x_j − X₋ⱼ c‖₂²`
/// by cyclic coordinate descent with the elastic-net soft-threshold update.
pub fn solve_ensc(x: &FeatureMatrix, params: &SolverParams) -> Result<CoefficientMatrix> {
    params.validate()?;
    let xm = x.matrix();
    let n = x.count();
    let mu = params.ensc_mix;
    let lambda = params.lambda.unwrap_or_else(|| lambda_l1_default(xm));

    let gram = xm.transpose() * xm;
    let mut c = DMatrix::<f64>::zeros(n, n);
    let mut all_converged = true;
    let mut total_sweeps = 0usize;

    for j in 0..n {
        let gj = gram.column(j).clone_owned(); // Xᵀ x_j
        let mut cj = DVector::<f64>::zeros(n);
        let mut gc = DVector::<f64>::zeros(n); // G * cj, maintained incrementally
        let mut converged = false;

        for sweep in 0..params.max_iter {
            let mut max_delta = 0.0f64;
            for i in 0..n {
                if i == j {
                    continue;
                }
                let gii = gram[(i, i)];
                if gii <= 1e-300 {
                    continue;
                }
                let rho_i = gj[i] - gc[i] + gii * cj[i];
                let new = soft_threshold(rho_i, lambda * mu) / (gii + lambda * (1.0 - mu));
                let delta = new - cj[i];
                if delta != 0.0 {
                    gc += gram.column(i) * delta;
                    cj[i] = new;
                    max_delta = max_delta.max(delta.abs());
                }
            }
            total_sweeps += 1;
            if max_delta < params.tol {
                converged = true;
                let _ = sweep;
                break;
            }
        }
        all_converged &= converged;
        c.set_column(j, &cj);
    }
    Ok(CoefficientMatrix::new(c, all_converged, total_sweeps, xm))
}
