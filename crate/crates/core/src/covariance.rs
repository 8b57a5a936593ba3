//! Covariance descriptors: encode a variable-length skeleton sequence as a
//! fixed-size symmetric matrix and flatten its upper triangle into a vector.

use nalgebra::{DMatrix, DVector};

use crate::skeleton::SkeletonSequence;
use crate::{Error, Result};

/// Symmetric positive semidefinite second-moment summary of a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceDescriptor {
    matrix: DMatrix<f64>,
}

impl CovarianceDescriptor {
    /// Wrap a matrix, checking symmetry and (approximate) PSD-ness.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidParam("covariance matrix must be square".into()));
        }
        let scale = matrix.amax().max(1e-300);
        for i in 0..matrix.nrows() {
            for j in (i + 1)..matrix.ncols() {
                if (matrix[(i, j)] - matrix[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::InvalidParam(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let eigs = matrix.clone().symmetric_eigen().eigenvalues;
        let top = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(1.0);
        if eigs.iter().any(|&e| e < -1e-10 * top) {
            return Err(Error::Numerical("covariance matrix not PSD".into()));
        }
        Ok(CovarianceDescriptor { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Flattened upper-triangular (diagonal included) covariance entries.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Temporal covariance of a sequence's frames with population divisor T:
/// `Λ = (1/T) Σ_t (p(t) − μ)(p(t) − μ)ᵀ`.
pub fn covariance(seq: &SkeletonSequence) -> Result<CovarianceDescriptor> {
    let d = seq.frame_dim();
    let t = seq.len();
    let mut mean = DVector::zeros(d);
    for f in seq.frames() {
        mean += f;
    }
    mean /= t as f64;

    let mut centered = DMatrix::zeros(d, t);
    for (k, f) in seq.frames().iter().enumerate() {
        centered.set_column(k, &(f - &mean));
    }
    let mut cov = &centered * centered.transpose() / t as f64;
    // exact symmetry against round-off
    for i in 0..d {
        for j in (i + 1)..d {
            let v = 0.5 * (cov[(i, j)] + cov[(j, i)]);
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    CovarianceDescriptor::new(cov)
}

/// Row-major traversal of entries with `j >= i`: diagonal plus strict upper
/// triangle, length `d(d+1)/2`.
pub fn flatten_upper(desc: &CovarianceDescriptor) -> FeatureVector {
    flatten_upper_with(desc, false)
}

/// As [`flatten_upper`], optionally scaling strict off-diagonal entries by
/// `sqrt(2)` to preserve the Frobenius inner product.
pub fn flatten_upper_with(desc: &CovarianceDescriptor, frobenius_weighting: bool) -> FeatureVector {
    let d = desc.dim();
    let m = desc.matrix();
    let mut values = Vec::with_capacity(d * (d + 1) / 2);
    let w = if frobenius_weighting { 2f64.sqrt() } else { 1.0 };
    for i in 0..d {
        for j in i..d {
            let v = m[(i, j)];
            values.push(if j > i { w * v } else { v });
        }
    }
    FeatureVector { values }
}

/// Inverse of [`flatten_upper`] (unweighted): rebuild the symmetric matrix.
pub fn reconstruct_symmetric(fv: &FeatureVector, dim: usize) -> Result<DMatrix<f64>> {
    if fv.len() != dim * (dim + 1) / 2 {
        return Err(Error::InvalidParam(format!(
            "feature length {} does not match dim {dim}",
            fv.len()
        )));
    }
    let mut m = DMatrix::zeros(dim, dim);
    let mut k = 0;
    for i in 0..dim {
        for j in i..dim {
            m[(i, j)] = fv.values[k];
            m[(j, i)] = fv.values[k];
            k += 1;
        }
    }
    Ok(m)
}
