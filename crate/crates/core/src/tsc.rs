//! Temporal Subspace Clustering: nonnegative dictionary learning
//! `X ≈ DZ` with Frobenius and temporal-Laplacian regularization, plus the
//! cosine-affinity / normalized-cuts clustering built on the learned codes.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::graph::{build_affinity_cosine, kmeans_restarts, normalized_cuts, ClusterLabels};
use crate::selfexpress::FeatureMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TscParams {
    /// Dictionary size. `None` defaults to `min(ceil(n/4), 50)`.
    pub r: Option<usize>,
    /// Weight of ‖Z‖²_F.
    pub lambda1: f64,
    /// Weight of the temporal Laplacian term tr(Z L Zᵀ).
    pub lambda2: f64,
    /// Temporal neighborhood radius s for the Laplacian graph.
    pub neighbor_window: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub rng_seed: u64,
    /// Use the multiplicative dictionary update instead of projected gradient.
    pub multiplicative_dict_update: bool,
}

impl Default for TscParams {
    fn default() -> Self {
        TscParams {
            r: None,
            lambda1: 0.01,
            lambda2: 15.0,
            neighbor_window: 3,
            max_iter: 300,
            tol: 1e-6,
            rng_seed: 0,
            multiplicative_dict_update: false,
        }
    }
}

impl TscParams {
    fn validate(&self) -> Result<()> {
        if let Some(r) = self.r {
            if r == 0 {
                return Err(Error::InvalidParam("r must be >= 1".into()));
            }
        }
        if self.neighbor_window == 0 {
            return Err(Error::InvalidParam("neighbor_window must be >= 1".into()));
        }
        if !(self.lambda1 >= 0.0 && self.lambda2 >= 0.0) {
            return Err(Error::InvalidParam("regularization weights must be >= 0".into()));
        }
        if self.max_iter == 0 || !(self.tol > 0.0) {
            return Err(Error::InvalidParam("max_iter and tol must be positive".into()));
        }
        Ok(())
    }

    fn effective_r(&self, n: usize) -> usize {
        self.r.unwrap_or_else(|| n.div_ceil(4).clamp(1, 50))
    }
}

/// Learned nonnegative factorization with its per-iteration objective trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TscModel {
    pub dictionary: DMatrix<f64>,
    pub codes: DMatrix<f64>,
    pub objective_trace: Vec<f64>,
    /// Constant subtracted from X to make it nonnegative (0 when X >= 0).
    pub shift: f64,
    pub converged: bool,
}

/// Laplacian of the graph connecting each index to indices within temporal
/// distance `s` (unit weights): `L = Deg − A`.
pub fn build_temporal_laplacian(n: usize, s: usize) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(Error::InvalidParam("need n >= 2".into()));
    }
    if s == 0 {
        return Err(Error::InvalidParam("window must be >= 1".into()));
    }
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j && i.abs_diff(j) <= s {
                l[(i, j)] = -1.0;
                l[(i, i)] += 1.0;
            }
        }
    }
    Ok(l)
}

fn objective(x: &DMatrix<f64>, d: &DMatrix<f64>, z: &DMatrix<f64>, lap: &DMatrix<f64>, p: &TscParams) -> f64 {
    let recon = (x - d * z).norm_squared();
    let zl = z * lap;
    let lap_term: f64 = zl.component_mul(z).sum();
    recon + p.lambda1 * z.norm_squared() + p.lambda2 * lap_term
}

/// One projected-gradient step with backtracking: never increases `f`.
fn projected_step(
    var: &DMatrix<f64>,
    grad: &DMatrix<f64>,
    mut step: f64,
    project: impl Fn(&mut DMatrix<f64>),
    f: impl Fn(&DMatrix<f64>) -> f64,
) -> DMatrix<f64> {
    let f0 = f(var);
    for _ in 0..30 {
        let mut cand = (var - grad * step).map(|v| v.max(0.0));
        project(&mut cand);
        if f(&cand) <= f0 {
            return cand;
        }
        step *= 0.5;
    }
    var.clone()
}

/// Projection of dictionary columns onto the unit L2 ball. Atoms are capped
/// at unit norm so the λ₁ penalty on Z cannot be dodged by inflating D.
fn cap_atom_norms(d: &mut DMatrix<f64>) {
    for c in 0..d.ncols() {
        let g = d.column(c).norm();
        if g > 1.0 {
            d.column_mut(c).scale_mut(1.0 / g);
        }
    }
}

/// Pull every nonzero atom up to exactly unit norm, compensating in Z.
/// Reconstruction is unchanged and the regularizers shrink (atom norms are
/// ≤ 1 going in), so the objective never increases.
fn normalize_atoms(d: &mut DMatrix<f64>, z: &mut DMatrix<f64>) {
    for c in 0..d.ncols() {
        let g = d.column(c).norm();
        if g > 1e-12 && g < 1.0 {
            d.column_mut(c).scale_mut(1.0 / g);
            z.row_mut(c).scale_mut(g);
        }
    }
}

/// Alternating minimization of
/// `‖X − DZ‖²_F + λ₁‖Z‖²_F + λ₂ tr(Z L Zᵀ)` with `D ≥ 0, Z ≥ 0`.
///
/// X is shifted nonnegative internally (min-subtraction, recorded in the
/// model). Dictionary atoms are renormalized to unit L2 norm each outer
/// iteration with Z compensating, skipped when it would raise the objective.
pub fn solve_tsc(x: &FeatureMatrix, params: &TscParams) -> Result<TscModel> {
    params.validate()?;
    let n = x.count();
    let dim = x.dim();
    let r = params.effective_r(n);
    if r > n {
        return Err(Error::InvalidParam(format!("r={r} exceeds sample count n={n}")));
    }

    let min_entry = x.matrix().iter().cloned().fold(f64::INFINITY, f64::min);
    let shift = if min_entry < 0.0 { min_entry } else { 0.0 };
    let xp = if shift < 0.0 {
        x.matrix().map(|v| v - shift)
    } else {
        x.matrix().clone()
    };

    let lap = build_temporal_laplacian(n, params.neighbor_window)?;
    let lap_norm = lap
        .row_iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);

    // init: k-means++ centroids of the data columns as atoms
    let cols_as_rows = xp.transpose();
    let km = kmeans_restarts(&cols_as_rows, r, params.rng_seed, 1)?;
    let mut d = DMatrix::<f64>::zeros(dim, r);
    let mut counts = vec![0usize; r];
    for (j, &c) in km.labels.iter().enumerate() {
        counts[c] += 1;
        for i in 0..dim {
            d[(i, c)] += xp[(i, j)];
        }
    }
    for c in 0..r {
        if counts[c] > 0 {
            for i in 0..dim {
                d[(i, c)] /= counts[c] as f64;
            }
        }
        let g = d.column(c).norm();
        if g <= 1e-12 {
            d.column_mut(c).fill(1.0 / (dim as f64).sqrt());
        } else {
            // unit-norm atoms from the start keeps the solve equivariant to
            // a global positive scaling of X
            d.column_mut(c).scale_mut(1.0 / g);
        }
    }

    // init Z: ridge solve against D, clamped nonnegative
    let dtd = d.transpose() * &d;
    let mut z = (dtd + DMatrix::identity(r, r) * 1e-8)
        .cholesky()
        .map(|ch| ch.solve(&(d.transpose() * &xp)))
        .unwrap_or_else(|| DMatrix::from_element(r, n, 0.1))
        .map(|v| v.max(0.0));

    let mut trace = Vec::with_capacity(params.max_iter);
    trace.push(objective(&xp, &d, &z, &lap, params));
    let mut converged = false;
    let mut increases = 0usize;

    for _ in 0..params.max_iter {
        // Z-step
        let dtd = d.transpose() * &d;
        let dtx = d.transpose() * &xp;
        let lip = 2.0 * (dtd.norm() + params.lambda1 + params.lambda2 * lap_norm);
        let grad_z = (&dtd * &z - &dtx) * 2.0 + &z * 2.0 * params.lambda1 + (&z * &lap) * 2.0 * params.lambda2;
        z = projected_step(&z, &grad_z, 1.0 / lip.max(1e-12), |_| {}, |cand| {
            objective(&xp, &d, cand, &lap, params)
        });

        // D-step: atoms constrained to the nonnegative unit ball
        if params.multiplicative_dict_update {
            let numer = &xp * z.transpose();
            let denom = &d * (&z * z.transpose());
            let mut d_new = d.clone();
            for i in 0..dim {
                for c in 0..r {
                    d_new[(i, c)] *= numer[(i, c)] / denom[(i, c)].max(1e-12);
                }
            }
            cap_atom_norms(&mut d_new);
            // the multiplicative update is monotone only before the norm
            // cap; accept the candidate when it actually decreases
            if objective(&xp, &d_new, &z, &lap, params) <= objective(&xp, &d, &z, &lap, params) {
                d = d_new;
            }
        } else {
            let zzt = &z * z.transpose();
            let lip_d = 2.0 * zzt.norm();
            let grad_d = (&d * &zzt - &xp * z.transpose()) * 2.0;
            d = projected_step(&d, &grad_d, 1.0 / lip_d.max(1e-12), cap_atom_norms, |cand| {
                objective(&xp, cand, &z, &lap, params)
            });
        }

        // scale balancing: pull shrunken atoms back to unit norm with Z
        // compensating; never increases the objective
        normalize_atoms(&mut d, &mut z);
        let obj = objective(&xp, &d, &z, &lap, params);

        let prev = *trace.last().unwrap();
        trace.push(obj);
        if obj > prev * (1.0 + 1e-6) + 1e-300 {
            increases += 1;
            if increases >= 3 {
                return Err(Error::Numerical(format!(
                    "TSC objective diverging; trace tail {:?}",
                    &trace[trace.len().saturating_sub(5)..]
                )));
            }
        } else {
            increases = 0;
        }
        let denom = prev.abs().max(1e-300);
        if (prev - obj).abs() / denom < params.tol {
            converged = true;
            break;
        }
    }

    Ok(TscModel {
        dictionary: d,
        codes: z,
        objective_trace: trace,
        shift,
        converged,
    })
}

/// Full TSC clustering: learn codes, build the cosine affinity, and
/// partition with normalized cuts.
pub fn tsc_cluster(x: &FeatureMatrix, params: &TscParams, k: usize) -> Result<ClusterLabels> {
    if k == 0 {
        return Err(Error::InvalidParam("k must be >= 1".into()));
    }
    let model = solve_tsc(x, params)?;
    if k == 1 {
        return ClusterLabels::new(vec![0; x.count()], 1);
    }
    let w = build_affinity_cosine(&model.codes);
    normalized_cuts(&w, k, params.rng_seed)
}
