//! Temporal pruning: compress each sequence along time by clustering its
//! timestamps and averaging poses within each temporal subspace, plus the
//! dataset-level strategies that pick the target length φ.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{build_affinity_cosine, build_affinity_selfexpress, kmeans_restarts, spectral_clustering};
use crate::selfexpress::{solve_ssc_admm, standardize, FeatureMatrix, SolverParams};
use crate::skeleton::{Dataset, SkeletonSequence};
use crate::{Error, Result};

/// How φ is chosen and how each sample is compressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PruneStrategy {
    /// φ = shortest duration; seeded random timestamp subsampling.
    MinPhi,
    /// φ = shortest duration; SSC-based pruning of every sample.
    MinTemporalSsc,
    /// per sample φ = round(pct% · T); SSC-based pruning.
    PercentageTemporalSsc,
    /// φ = round(pct% · max T) as a threshold; longer samples pruned to it.
    ThresholdTemporalSsc,
    /// φ = shortest duration; seeded random subsampling (TSC path).
    TscMin,
    /// φ = longest duration; cyclic frame replication.
    TscMax,
    /// φ = shortest duration; spectral-clustering pruning.
    TemporalSc,
    /// φ = shortest duration; k-means pruning.
    TemporalKm,
}

/// Frame-clustering backend for [`prune_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PruneMethod {
    Ssc,
    Spectral,
    Kmeans,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneConfig {
    pub strategy: PruneStrategy,
    /// Required for the percentage/threshold strategies; one of {25, 50, 75}.
    pub phi_percent: Option<u32>,
    pub rng_seed: u64,
    /// Parameters for the inner SSC on frames.
    pub solver_params: SolverParams,
}

impl Default for PruneConfig {
    fn default() -> Self {
        PruneConfig {
            strategy: PruneStrategy::MinTemporalSsc,
            phi_percent: None,
            rng_seed: 0,
            solver_params: SolverParams::default(),
        }
    }
}

impl PruneConfig {
    pub fn validate(&self) -> Result<()> {
        let needs_pct = matches!(
            self.strategy,
            PruneStrategy::PercentageTemporalSsc | PruneStrategy::ThresholdTemporalSsc
        );
        match (needs_pct, self.phi_percent) {
            (true, None) => Err(Error::Config(
                "phi_percent required for percentage/threshold strategies".into(),
            )),
            (true, Some(p)) if ![25, 50, 75].contains(&p) => {
                Err(Error::Config(format!("phi_percent must be 25, 50 or 75, got {p}")))
            }
            (false, Some(_)) => Err(Error::Config(
                "phi_percent only applies to percentage/threshold strategies".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// A pruned sequence plus bookkeeping about forced group re-splits.
#[derive(Debug, Clone, PartialEq)]
pub struct PruneOutcome {
    pub sequence: SkeletonSequence,
    /// True when the clustering produced fewer than φ non-empty groups and
    /// the largest groups were re-split to reach φ.
    pub resplit: bool,
}

/// Group frames by the given per-timestamp assignment and replace each group
/// with its average pose. Groups are ordered by earliest member timestamp.
///
/// This is the averaging step shared by every pruning method; an assignment
/// like `[1,1,2,1,2]` over five frames yields
/// `[⅓(p₁+p₂+p₄), ½(p₃+p₅)]`.
pub fn prune_with_assignment(
    seq: &SkeletonSequence,
    assignment: &[usize],
) -> Result<SkeletonSequence> {
    if assignment.len() != seq.len() {
        return Err(Error::InvalidParam(format!(
            "{} assignments for {} frames",
            assignment.len(),
            seq.len()
        )));
    }
    // group ids in order of first appearance == earliest member timestamp
    let mut order: Vec<usize> = Vec::new();
    for &g in assignment {
        if !order.contains(&g) {
            order.push(g);
        }
    }
    let frames = order
        .iter()
        .map(|&g| {
            let members: Vec<usize> = (0..seq.len()).filter(|&t| assignment[t] == g).collect();
            let mut mean = DVector::zeros(seq.frame_dim());
            for &t in &members {
                mean += seq.frame(t);
            }
            mean / members.len() as f64
        })
        .collect();
    SkeletonSequence::new(seq.joints(), frames)
}

/// Cluster the timestamps of one sequence into φ groups and average within
/// each group.
pub fn prune_sequence(
    seq: &SkeletonSequence,
    phi: usize,
    method: PruneMethod,
    params: &SolverParams,
    seed: u64,
) -> Result<PruneOutcome> {
    let t = seq.len();
    if phi == 0 || phi > t {
        return Err(Error::InvalidParam(format!("phi={phi} outside 1..={t}")));
    }
    if phi == t {
        return Ok(PruneOutcome {
            sequence: seq.clone(),
            resplit: false,
        });
    }
    if phi == 1 {
        let assignment = vec![0usize; t];
        return Ok(PruneOutcome {
            sequence: prune_with_assignment(seq, &assignment)?,
            resplit: false,
        });
    }

    // frames as columns, z-scored per coordinate before clustering
    let mut frame_mat = DMatrix::zeros(seq.frame_dim(), t);
    for (i, f) in seq.frames().iter().enumerate() {
        frame_mat.set_column(i, f);
    }
    let fm = standardize(&FeatureMatrix::new(frame_mat.clone())?);

    let mut assignment = match method {
        PruneMethod::Ssc => {
            let c = solve_ssc_admm(&fm, params)?;
            let w = build_affinity_selfexpress(&c);
            spectral_clustering(&w, phi, seed)?.labels
        }
        PruneMethod::Spectral => {
            let w = build_affinity_cosine(fm.matrix());
            spectral_clustering(&w, phi, seed)?.labels
        }
        PruneMethod::Kmeans => {
            let pts = fm.matrix().transpose();
            kmeans_restarts(&pts, phi, seed, 10)?.labels
        }
    };

    // guarantee exactly φ non-empty groups: re-split the largest group
    // (second half of its timestamps gets a fresh id) until φ reached
    let mut resplit = false;
    loop {
        let mut counts = std::collections::BTreeMap::new();
        for &g in &assignment {
            *counts.entry(g).or_insert(0usize) += 1;
        }
        if counts.len() >= phi {
            break;
        }
        resplit = true;
        let (&largest, _) = counts.iter().max_by_key(|(_, &c)| c).unwrap();
        let members: Vec<usize> = (0..t).filter(|&i| assignment[i] == largest).collect();
        let fresh = counts.keys().max().unwrap() + 1;
        for &i in &members[members.len() / 2..] {
            assignment[i] = fresh;
        }
    }

    Ok(PruneOutcome {
        sequence: prune_with_assignment(seq, &assignment)?,
        resplit,
    })
}

/// Seeded subsampling of φ timestamps without replacement, restored to
/// chronological order.
fn subsample(seq: &SkeletonSequence, phi: usize, rng: &mut ChaCha8Rng) -> Result<SkeletonSequence> {
    let t = seq.len();
    let mut idx: Vec<usize> = (0..t).collect();
    // partial Fisher-Yates: first φ entries form the sample
    for i in 0..phi {
        let j = rng.gen_range(i..t);
        idx.swap(i, j);
    }
    let mut chosen = idx[..phi].to_vec();
    chosen.sort_unstable();
    let frames = chosen.iter().map(|&i| seq.frame(i).clone()).collect();
    SkeletonSequence::new(seq.joints(), frames)
}

fn cyclic_replicate(seq: &SkeletonSequence, phi: usize) -> Result<SkeletonSequence> {
    let t = seq.len();
    let frames = (0..phi).map(|i| seq.frame(i % t).clone()).collect();
    SkeletonSequence::new(seq.joints(), frames)
}

/// Apply a dataset-level pruning strategy. Labels and class count carry over.
pub fn apply_strategy(dataset: &Dataset, cfg: &PruneConfig) -> Result<Dataset> {
    cfg.validate()?;
    if dataset.is_empty() {
        return Err(Error::InvalidParam("empty dataset".into()));
    }
    let min_t = dataset.samples.iter().map(|s| s.len()).min().unwrap();
    let max_t = dataset.samples.iter().map(|s| s.len()).max().unwrap();

    let samples: Vec<SkeletonSequence> = match cfg.strategy {
        PruneStrategy::MinPhi | PruneStrategy::TscMin => dataset
            .samples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(cfg.rng_seed.wrapping_add(i as u64));
                subsample(s, min_t, &mut rng)
            })
            .collect::<Result<_>>()?,
        PruneStrategy::MinTemporalSsc => prune_all(dataset, |_| min_t, PruneMethod::Ssc, cfg)?,
        PruneStrategy::PercentageTemporalSsc => {
            let pct = cfg.phi_percent.unwrap() as f64 / 100.0;
            prune_all(dataset, |t| phi_round(pct * t as f64), PruneMethod::Ssc, cfg)?
        }
        PruneStrategy::ThresholdTemporalSsc => {
            let pct = cfg.phi_percent.unwrap() as f64 / 100.0;
            let thr = phi_round(pct * max_t as f64);
            prune_all(
                dataset,
                move |t| if t > thr { thr } else { t },
                PruneMethod::Ssc,
                cfg,
            )?
        }
        PruneStrategy::TscMax => dataset
            .samples
            .iter()
            .map(|s| cyclic_replicate(s, max_t))
            .collect::<Result<_>>()?,
        PruneStrategy::TemporalSc => prune_all(dataset, |_| min_t, PruneMethod::Spectral, cfg)?,
        PruneStrategy::TemporalKm => prune_all(dataset, |_| min_t, PruneMethod::Kmeans, cfg)?,
    };

    Dataset::new(samples, dataset.labels.clone(), dataset.num_classes)
}

fn phi_round(v: f64) -> usize {
    (v.round() as usize).max(1)
}

fn prune_all(
    dataset: &Dataset,
    phi_of: impl Fn(usize) -> usize,
    method: PruneMethod,
    cfg: &PruneConfig,
) -> Result<Vec<SkeletonSequence>> {
    dataset
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let phi = phi_of(s.len()).min(s.len());
            let seed = cfg.rng_seed.wrapping_add(i as u64);
            prune_sequence(s, phi, method, &cfg.solver_params, seed).map(|o| o.sequence)
        })
        .collect()
}
