//! Hungarian matching between predicted clusters and ground-truth classes,
//! and the resulting clustering accuracy.

use nalgebra::DMatrix;

use crate::graph::ClusterLabels;
use crate::{Error, Result};

/// Outcome of matching predicted clusters to ground-truth classes.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentResult {
    /// cluster id -> class id bijection over the padded square dimension.
    pub mapping: Vec<usize>,
    /// Predictions relabeled through `mapping`.
    pub matched_labels: Vec<usize>,
    /// `100 · matches / N`.
    pub accuracy_percent: f64,
}

/// Minimum-cost assignment on a square cost matrix, O(k³) shortest
/// augmenting path with potentials. Returns `perm` with row `i` assigned to
/// column `perm[i]`. Ties resolve to the lowest column index scanned first.
pub fn hungarian(cost: &DMatrix<f64>) -> Result<Vec<usize>> {
    let n = cost.nrows();
    if cost.ncols() != n {
        return Err(Error::InvalidParam("cost matrix must be square".into()));
    }
    if cost.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParam("cost matrix has non-finite entries".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    // 1-indexed potentials; p[j] = row matched to column j, 0 = free
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1, j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut perm = vec![0usize; n];
    for j in 1..=n {
        perm[p[j] - 1] = j - 1;
    }
    Ok(perm)
}

/// Total cost of an assignment.
pub fn assignment_cost(cost: &DMatrix<f64>, perm: &[usize]) -> f64 {
    perm.iter().enumerate().map(|(i, &j)| cost[(i, j)]).sum()
}

/// Hungarian-matched clustering accuracy: build the contingency matrix
/// (zero-padded to square), maximize matches, relabel, and report
/// `ACC(%) = (1 − misclassified/total) · 100`.
pub fn accuracy(pred: &ClusterLabels, truth: &[usize]) -> Result<AssignmentResult> {
    if pred.len() != truth.len() {
        return Err(Error::InvalidParam(format!(
            "{} predictions vs {} ground-truth labels",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::InvalidParam("empty label vectors".into()));
    }
    let classes = truth.iter().max().unwrap() + 1;
    let dim = pred.k.max(classes);

    let mut contingency = DMatrix::<f64>::zeros(dim, dim);
    for (&c, &t) in pred.labels.iter().zip(truth) {
        contingency[(c, t)] += 1.0;
    }
    // maximize matches == minimize negated counts
    let mapping = hungarian(&(-&contingency))?;

    let matched_labels: Vec<usize> = pred.labels.iter().map(|&c| mapping[c]).collect();
    let matches = matched_labels
        .iter()
        .zip(truth)
        .filter(|(a, b)| a == b)
        .count();
    Ok(AssignmentResult {
        mapping,
        matched_labels,
        accuracy_percent: 100.0 * matches as f64 / truth.len() as f64,
    })
}
