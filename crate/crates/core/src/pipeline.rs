//! End-to-end experiment orchestration: configuration, the three pipeline
//! variants, per-seed runs, reporting, and persistence.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::covariance::{covariance, flatten_upper_with};
use crate::graph::{build_affinity_selfexpress, spectral_clustering, ClusterLabels};
use crate::metrics::accuracy;
use crate::pruning::{apply_strategy, PruneConfig};
use crate::selfexpress::{
    solve_ensc, solve_lsr, solve_ssc_admm, solve_ssc_omp, standardize, FeatureMatrix, SolverParams,
};
use crate::skeleton::{
    generate_synthetic_dataset, load_dataset, to_relative_displacements, Dataset, FileFormat,
    SyntheticSpec,
};
use crate::tsc::{tsc_cluster, TscParams};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataSource {
    File { path: PathBuf, format: FileFormat },
    Synthetic(SyntheticSpec),
}

/// The three pipeline variants: plain self-expressive clustering on encoded
/// samples, the same with temporal pruning in front, and TSC dictionary
/// learning with normalized cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineVariant {
    #[serde(rename = "selfexpress")]
    SelfExpress,
    #[serde(rename = "pruned_selfexpress")]
    PrunedSelfExpress,
    Tsc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Encoder {
    Covariance,
    /// Column-stack each sample's frames; requires uniform temporal length.
    RawStacked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverChoice {
    Lsr,
    SscAdmm,
    SscOmp,
    Ensc,
}

impl std::str::FromStr for SolverChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lsr" => Ok(SolverChoice::Lsr),
            "ssc_admm" => Ok(SolverChoice::SscAdmm),
            "ssc_omp" => Ok(SolverChoice::SscOmp),
            "ensc" => Ok(SolverChoice::Ensc),
            other => Err(Error::Config(format!("unknown solver '{other}'"))),
        }
    }
}

impl std::str::FromStr for PipelineVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "selfexpress" => Ok(PipelineVariant::SelfExpress),
            "pruned_selfexpress" => Ok(PipelineVariant::PrunedSelfExpress),
            "tsc" => Ok(PipelineVariant::Tsc),
            other => Err(Error::Config(format!("unknown variant '{other}'"))),
        }
    }
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

fn default_true() -> bool {
    true
}

fn default_root_joint() -> usize {
    0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub data: DataSource,
    /// Root joint for relative-displacement preprocessing.
    #[serde(default = "default_root_joint")]
    pub root_joint: usize,
    pub variant: PipelineVariant,
    pub encoder: Encoder,
    #[serde(default = "default_solver")]
    pub solver: SolverChoice,
    #[serde(default)]
    pub solver_params: SolverParams,
    #[serde(default)]
    pub prune: Option<PruneConfig>,
    #[serde(default)]
    pub tsc: Option<TscParams>,
    /// Cluster count; defaults to the ground-truth class count when labels
    /// are present.
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Per-dimension z-scoring of the encoded feature matrix.
    #[serde(default = "default_true")]
    pub standardize: bool,
    /// Scale strict off-diagonal covariance entries by sqrt(2) when flattening.
    #[serde(default)]
    pub frobenius_weighting: bool,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn default_solver() -> SolverChoice {
    SolverChoice::SscAdmm
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        match self.variant {
            PipelineVariant::PrunedSelfExpress if self.prune.is_none() => {
                return Err(Error::Config(
                    "variant pruned_selfexpress requires a [prune] section".into(),
                ));
            }
            PipelineVariant::Tsc if self.tsc.is_none() => {
                return Err(Error::Config("variant tsc requires a [tsc] section".into()));
            }
            _ => {}
        }
        if let Some(ref p) = self.prune {
            p.validate()?;
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed required".into()));
        }
        if self.k == Some(0) {
            return Err(Error::Config("k must be >= 1".into()));
        }
        Ok(())
    }

    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    /// Name of the failing stage, when the run failed.
    pub failed_stage: Option<String>,
    pub error: Option<String>,
    pub accuracy_percent: Option<f64>,
    pub converged: bool,
    pub iterations: usize,
    pub wall_time_ms: f64,
    pub predicted_labels: Vec<usize>,
    pub objective_trace: Option<Vec<f64>>,
}

/// Aggregated experiment result. AVG is the arithmetic mean, STD the
/// population standard deviation over the successful per-seed accuracies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config_digest: String,
    pub records: Vec<RunRecord>,
    pub avg_accuracy: Option<f64>,
    pub std_accuracy: Option<f64>,
}

impl Report {
    fn aggregate(config_digest: String, records: Vec<RunRecord>) -> Report {
        let accs: Vec<f64> = records.iter().filter_map(|r| r.accuracy_percent).collect();
        let (avg, std) = if accs.is_empty() {
            (None, None)
        } else {
            let mean = accs.iter().sum::<f64>() / accs.len() as f64;
            let var = accs.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / accs.len() as f64;
            (Some(mean), Some(var.sqrt()))
        };
        Report {
            config_digest,
            records,
            avg_accuracy: avg,
            std_accuracy: std,
        }
    }

    /// The report with wall-time fields zeroed, for determinism comparisons.
    pub fn without_wall_times(&self) -> Report {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.wall_time_ms = 0.0;
        }
        r
    }
}

struct StageError {
    stage: &'static str,
    error: Error,
}

fn stage<T>(name: &'static str, r: Result<T>) -> std::result::Result<T, StageError> {
    r.map_err(|error| StageError { stage: name, error })
}

/// Execute the configured experiment once per seed. Stage failures are
/// recorded per run; remaining seeds proceed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let dataset = match &cfg.data {
        DataSource::File { path, format } => load_dataset(path, *format)?,
        DataSource::Synthetic(spec) => generate_synthetic_dataset(spec)?,
    };
    let k = match (cfg.k, dataset.labels.is_some()) {
        (Some(k), _) => k,
        (None, true) => dataset.num_classes,
        (None, false) => {
            return Err(Error::Config(
                "k required when the dataset has no ground-truth labels".into(),
            ));
        }
    };

    let mut records = Vec::with_capacity(cfg.seeds.len());
    for &seed in &cfg.seeds {
        let start = Instant::now();
        match run_single(cfg, &dataset, k, seed) {
            Ok(mut rec) => {
                rec.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
                records.push(rec);
            }
            Err(e) => records.push(RunRecord {
                seed,
                failed_stage: Some(e.stage.to_string()),
                error: Some(e.error.to_string()),
                accuracy_percent: None,
                converged: false,
                iterations: 0,
                wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                predicted_labels: Vec::new(),
                objective_trace: None,
            }),
        }
    }
    Ok(Report::aggregate(cfg.digest(), records))
}

/// Predicted labels for one seed, without touching ground truth. Exposed so
/// the unsupervised guarantee (labels stripped, identical assignments) can be
/// checked directly.
pub fn predict_single(cfg: &ExperimentConfig, dataset: &Dataset, k: usize, seed: u64) -> Result<ClusterLabels> {
    run_stages(cfg, dataset, k, seed).map(|(l, _, _, _)| l).map_err(|e| e.error)
}

fn run_single(
    cfg: &ExperimentConfig,
    dataset: &Dataset,
    k: usize,
    seed: u64,
) -> std::result::Result<RunRecord, StageError> {
    let (labels, converged, iterations, trace) = run_stages(cfg, dataset, k, seed)?;
    let accuracy_percent = match &dataset.labels {
        Some(truth) => Some(
            stage("accuracy", accuracy(&labels, truth))?.accuracy_percent,
        ),
        None => None,
    };
    Ok(RunRecord {
        seed,
        failed_stage: None,
        error: None,
        accuracy_percent,
        converged,
        iterations,
        wall_time_ms: 0.0,
        predicted_labels: labels.labels,
        objective_trace: trace,
    })
}

type StageOutput = (ClusterLabels, bool, usize, Option<Vec<f64>>);

fn run_stages(
    cfg: &ExperimentConfig,
    dataset: &Dataset,
    k: usize,
    seed: u64,
) -> std::result::Result<StageOutput, StageError> {
    // preprocess: relative displacements about the root joint.
    // Ground-truth labels are deliberately not consulted past this point;
    // they reappear only in the accuracy stage.
    let preprocessed: Vec<_> = stage(
        "preprocess",
        dataset
            .samples
            .iter()
            .map(|s| to_relative_displacements(s, cfg.root_joint))
            .collect::<Result<Vec<_>>>(),
    )?;
    let working = stage(
        "preprocess",
        Dataset::new(preprocessed, None, dataset.num_classes.max(1)),
    )?;

    // optional pruning; sub-config seeds are superseded by the run seed
    let working = match (&cfg.variant, &cfg.prune) {
        (PipelineVariant::SelfExpress, _) | (_, None) => working,
        (_, Some(p)) => {
            let mut p = p.clone();
            p.rng_seed = p.rng_seed.wrapping_add(seed);
            stage("prune", apply_strategy(&working, &p))?
        }
    };

    // encode
    let fm = stage("encode", encode(&working, cfg))?;
    let fm = if cfg.standardize { standardize(&fm) } else { fm };

    match cfg.variant {
        PipelineVariant::SelfExpress | PipelineVariant::PrunedSelfExpress => {
            let c = stage(
                "solve",
                match cfg.solver {
                    SolverChoice::Lsr => solve_lsr(&fm, &cfg.solver_params),
                    SolverChoice::SscAdmm => solve_ssc_admm(&fm, &cfg.solver_params),
                    SolverChoice::SscOmp => solve_ssc_omp(&fm, &cfg.solver_params),
                    SolverChoice::Ensc => solve_ensc(&fm, &cfg.solver_params),
                },
            )?;
            let w = build_affinity_selfexpress(&c);
            let labels = stage("cluster", spectral_clustering(&w, k, seed))?;
            Ok((labels, c.converged, c.iterations, None))
        }
        PipelineVariant::Tsc => {
            let mut params = cfg.tsc.clone().unwrap();
            params.rng_seed = params.rng_seed.wrapping_add(seed);
            let model = stage("solve", crate::tsc::solve_tsc(&fm, &params))?;
            let labels = stage("cluster", tsc_cluster(&fm, &params, k))?;
            Ok((
                labels,
                model.converged,
                model.objective_trace.len(),
                Some(model.objective_trace),
            ))
        }
    }
}

fn encode(dataset: &Dataset, cfg: &ExperimentConfig) -> Result<FeatureMatrix> {
    let cols: Vec<Vec<f64>> = match cfg.encoder {
        Encoder::Covariance => dataset
            .samples
            .iter()
            .map(|s| {
                covariance(s).map(|c| flatten_upper_with(&c, cfg.frobenius_weighting).values)
            })
            .collect::<Result<_>>()?,
        Encoder::RawStacked => {
            let t0 = dataset.samples[0].len();
            if dataset.samples.iter().any(|s| s.len() != t0) {
                return Err(Error::Config(
                    "raw_stacked encoder requires uniform temporal length (use a pruning strategy)"
                        .into(),
                ));
            }
            dataset
                .samples
                .iter()
                .map(|s| {
                    let mut v = Vec::with_capacity(s.frame_dim() * t0);
                    for f in s.frames() {
                        v.extend(f.iter());
                    }
                    Ok(v)
                })
                .collect::<Result<_>>()?
        }
    };
    FeatureMatrix::from_columns(&cols)
}

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Write a report to disk. JSON mirrors the full structure; CSV has one row
/// per record plus AVG/STD aggregate rows, accuracies rendered with two
/// decimal places.
pub fn emit_report(report: &Report, path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Json => serde_json::to_string_pretty(report)?,
        ReportFormat::Csv => render_csv(report),
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn render_csv(report: &Report) -> String {
    let mut out = String::from("seed,status,accuracy_percent,converged,iterations,wall_time_ms\n");
    for r in &report.records {
        let status = r
            .failed_stage
            .as_deref()
            .map(|s| format!("failed:{s}"))
            .unwrap_or_else(|| "ok".into());
        let acc = r
            .accuracy_percent
            .map(|a| format!("{a:.2}"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{:.3}\n",
            r.seed, status, acc, r.converged, r.iterations, r.wall_time_ms
        ));
    }
    if let (Some(avg), Some(std)) = (report.avg_accuracy, report.std_accuracy) {
        out.push_str(&format!("AVG,,{avg:.2},,,\n"));
        out.push_str(&format!("STD,,{std:.2},,,\n"));
    }
    out
}

/// Parse a JSON report back (the `report` CLI subcommand).
pub fn load_report(path: impl AsRef<Path>) -> Result<Report> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
