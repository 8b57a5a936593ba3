//! Affinity graph construction and partitioning: spectral clustering,
//! normalized cuts, and the seeded k-means primitive.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::selfexpress::CoefficientMatrix;
use crate::{Error, Result};

/// Symmetric nonnegative weight matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinityGraph {
    weights: DMatrix<f64>,
}

impl AffinityGraph {
    pub fn new(weights: DMatrix<f64>) -> Result<Self> {
        let n = weights.nrows();
        if weights.ncols() != n {
            return Err(Error::InvalidParam("affinity matrix must be square".into()));
        }
        for i in 0..n {
            if weights[(i, i)] != 0.0 {
                return Err(Error::InvalidParam("affinity diagonal must be zero".into()));
            }
            for j in 0..n {
                let w = weights[(i, j)];
                if !(w >= 0.0) {
                    return Err(Error::InvalidParam(format!(
                        "negative or non-finite weight at ({i},{j})"
                    )));
                }
                if (w - weights[(j, i)]).abs() > 1e-9 * w.abs().max(1.0) {
                    return Err(Error::InvalidParam(format!("asymmetric weight at ({i},{j})")));
                }
            }
        }
        Ok(AffinityGraph { weights })
    }

    pub fn size(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }
}

/// Per-sample cluster assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterLabels {
    pub labels: Vec<usize>,
    pub k: usize,
}

impl ClusterLabels {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidParam(format!("label {bad} out of range for k={k}")));
        }
        Ok(ClusterLabels { labels, k })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Affinity from self-expressive coefficients: `W = |C| + |Cᵀ|` entrywise.
/// The literal symmetrization `C + Cᵀ` can go negative; the absolute value keeps
/// spectral methods well-posed.
pub fn build_affinity_selfexpress(c: &CoefficientMatrix) -> AffinityGraph {
    let m = c.coeffs();
    let n = m.nrows();
    let mut w = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w[(i, j)] = m[(i, j)].abs() + m[(j, i)].abs();
            }
        }
    }
    AffinityGraph { weights: w }
}

/// Cosine-similarity affinity between the columns of a code matrix,
/// clamped below at zero, zero diagonal. All-zero columns get zero affinity
/// to everything (with a warning).
pub fn build_affinity_cosine(z: &DMatrix<f64>) -> AffinityGraph {
    let n = z.ncols();
    let norms: Vec<f64> = (0..n).map(|j| z.column(j).norm()).collect();
    if norms.iter().any(|&v| v <= 1e-300) {
        log::warn!("cosine affinity: zero column in code matrix, assigning zero affinity");
    }
    let mut w = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            if norms[i] > 1e-300 && norms[j] > 1e-300 {
                let sim = (z.column(i).dot(&z.column(j)) / (norms[i] * norms[j])).max(0.0);
                w[(i, j)] = sim;
                w[(j, i)] = sim;
            }
        }
    }
    AffinityGraph { weights: w }
}

/// Laplacian normalization used by [`spectral_clustering_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    /// `L_sym = I − D^{−1/2} W D^{−1/2}`
    Symmetric,
    /// `L = D − W`
    Unnormalized,
}

/// Degrees with isolated vertices given unit self-degree.
fn degrees(w: &DMatrix<f64>) -> DVector<f64> {
    let n = w.nrows();
    DVector::from_fn(n, |i, _| {
        let d = w.row(i).sum();
        if d > 1e-300 {
            d
        } else {
            1.0
        }
    })
}

/// Symmetric-normalized Laplacian of an affinity graph.
pub fn normalized_laplacian(w: &AffinityGraph) -> DMatrix<f64> {
    let n = w.size();
    let d = degrees(w.weights());
    let mut l = DMatrix::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                l[(i, j)] = -w.weights()[(i, j)] / (d[i] * d[j]).sqrt();
            }
        }
    }
    l
}

/// Eigenvectors of the k smallest eigenvalues of a symmetric matrix,
/// returned as an N×k embedding.
fn smallest_eigenvectors(m: &DMatrix<f64>, k: usize) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let eig = m.clone().symmetric_eigen();
    if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("eigen-solver returned non-finite values".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    Ok(DMatrix::from_fn(n, k, |r, c| eig.eigenvectors[(r, order[c])]))
}

/// Spectral clustering on the symmetric-normalized Laplacian with a
/// row-normalized k-dimensional embedding and seeded k-means.
pub fn spectral_clustering(w: &AffinityGraph, k: usize, seed: u64) -> Result<ClusterLabels> {
    spectral_clustering_with(w, k, seed, LaplacianKind::Symmetric)
}

pub fn spectral_clustering_with(
    w: &AffinityGraph,
    k: usize,
    seed: u64,
    kind: LaplacianKind,
) -> Result<ClusterLabels> {
    let n = w.size();
    if k < 2 {
        return Err(Error::InvalidParam("spectral clustering needs k >= 2".into()));
    }
    if n < k {
        return Err(Error::InvalidParam(format!("N={n} smaller than k={k}")));
    }
    let l = match kind {
        LaplacianKind::Symmetric => normalized_laplacian(w),
        LaplacianKind::Unnormalized => {
            let d = degrees(w.weights());
            DMatrix::from_diagonal(&d) - w.weights()
        }
    };
    let mut emb = smallest_eigenvectors(&l, k)?;
    if kind == LaplacianKind::Symmetric {
        for i in 0..n {
            let nrm = emb.row(i).norm();
            if nrm > 1e-300 {
                for c in 0..k {
                    emb[(i, c)] /= nrm;
                }
            }
        }
    }
    kmeans_restarts(&emb, k, seed, KMEANS_RESTARTS)
}

/// Random-walk normalized cuts: generalized eigenproblem `(D − W)v = λ D v`,
/// solved through the symmetric form and mapped back with `v = D^{−1/2} u`.
pub fn normalized_cuts(w: &AffinityGraph, k: usize, seed: u64) -> Result<ClusterLabels> {
    let n = w.size();
    if k < 2 {
        return Err(Error::InvalidParam("normalized cuts needs k >= 2".into()));
    }
    if n < k {
        return Err(Error::InvalidParam(format!("N={n} smaller than k={k}")));
    }
    let d = degrees(w.weights());
    let l = normalized_laplacian(w);
    let u = smallest_eigenvectors(&l, k)?;
    let emb = DMatrix::from_fn(n, k, |r, c| u[(r, c)] / d[r].sqrt());
    kmeans_restarts(&emb, k, seed, KMEANS_RESTARTS)
}

const KMEANS_RESTARTS: usize = 10;
const LLOYD_MAX_ITER: usize = 300;

/// Seeded k-means++ with Lloyd iterations; rows of `points` are samples.
pub fn kmeans(points: &DMatrix<f64>, k: usize, seed: u64) -> Result<ClusterLabels> {
    kmeans_with_wcss(points, k, seed).map(|(l, _)| l)
}

pub fn kmeans_with_wcss(points: &DMatrix<f64>, k: usize, seed: u64) -> Result<(ClusterLabels, f64)> {
    let n = points.nrows();
    if k == 0 || n < k {
        return Err(Error::InvalidParam(format!("kmeans needs N >= k >= 1, got N={n}, k={k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centroids = kmeanspp_init(points, k, &mut rng);
    Ok(lloyd(points, centroids))
}

/// Best of `restarts` seeded runs by within-cluster sum of squares.
pub fn kmeans_restarts(
    points: &DMatrix<f64>,
    k: usize,
    seed: u64,
    restarts: usize,
) -> Result<ClusterLabels> {
    let mut best: Option<(ClusterLabels, f64)> = None;
    for r in 0..restarts.max(1) {
        let (labels, wcss) = kmeans_with_wcss(points, k, seed.wrapping_add(r as u64))?;
        if best.as_ref().map_or(true, |(_, b)| wcss < *b) {
            best = Some((labels, wcss));
        }
    }
    Ok(best.unwrap().0)
}

fn kmeanspp_init<R: Rng>(points: &DMatrix<f64>, k: usize, rng: &mut R) -> Vec<DVector<f64>> {
    let n = points.nrows();
    let mut centroids = Vec::with_capacity(k);
    let first = rng.gen_range(0..n);
    centroids.push(points.row(first).transpose());
    let mut d2: Vec<f64> = (0..n)
        .map(|i| (points.row(i).transpose() - &centroids[0]).norm_squared())
        .collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let idx = if total <= 1e-300 {
            // all points coincide with chosen centroids; pick any
            rng.gen_range(0..n)
        } else {
            let mut target = rng.gen_range(0.0..total);
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if target < w {
                    pick = i;
                    break;
                }
                target -= w;
            }
            pick
        };
        let c = points.row(idx).transpose();
        for i in 0..n {
            d2[i] = d2[i].min((points.row(i).transpose() - &c).norm_squared());
        }
        centroids.push(c);
    }
    centroids
}

fn lloyd(points: &DMatrix<f64>, mut centroids: Vec<DVector<f64>>) -> (ClusterLabels, f64) {
    let n = points.nrows();
    let k = centroids.len();
    let mut labels = vec![0usize; n];
    for _ in 0..LLOYD_MAX_ITER {
        let mut changed = false;
        for i in 0..n {
            let p = points.row(i).transpose();
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (c, cent) in centroids.iter().enumerate() {
                let d = (&p - cent).norm_squared();
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            if labels[i] != best {
                labels[i] = best;
                changed = true;
            }
        }

        // recompute centroids; reseed empties from the farthest point
        let mut counts = vec![0usize; k];
        let mut sums = vec![DVector::<f64>::zeros(points.ncols()); k];
        for i in 0..n {
            counts[labels[i]] += 1;
            sums[labels[i]] += points.row(i).transpose();
        }
        for c in 0..k {
            if counts[c] > 0 {
                centroids[c] = &sums[c] / counts[c] as f64;
            } else {
                let far = (0..n)
                    .max_by(|&a, &b| {
                        let da = (points.row(a).transpose() - &centroids[labels[a]]).norm_squared();
                        let db = (points.row(b).transpose() - &centroids[labels[b]]).norm_squared();
                        da.partial_cmp(&db).unwrap()
                    })
                    .unwrap();
                centroids[c] = points.row(far).transpose();
                labels[far] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let wcss: f64 = (0..n)
        .map(|i| (points.row(i).transpose() - &centroids[labels[i]]).norm_squared())
        .sum();
    (ClusterLabels { labels, k }, wcss)
}
