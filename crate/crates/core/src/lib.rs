//! Unsupervised skeleton-based action clustering.
//!
//! The pipeline encodes variable-length skeleton sequences as flattened
//! covariance descriptors, learns a self-expressive coefficient matrix with
//! one of several subspace-clustering solvers (LSR, SSC-ADMM, SSC-OMP, EnSC),
//! partitions the induced affinity graph spectrally, and scores the result
//! against ground truth with Hungarian-matched clustering accuracy. Temporal
//! pruning strategies compress sequences along time, and a temporal subspace
//! clustering (TSC) solver offers a dictionary-learning alternative with a
//! temporal Laplacian regularizer.

pub mod covariance;
pub mod graph;
pub mod metrics;
pub mod pipeline;
pub mod pruning;
pub mod selfexpress;
pub mod skeleton;
pub mod tsc;

mod error;

pub use error::{Error, Result};

pub use covariance::{CovarianceDescriptor, FeatureVector};
pub use graph::{AffinityGraph, ClusterLabels};
pub use metrics::AssignmentResult;
pub use pipeline::{ExperimentConfig, Report, ReportFormat};
pub use pruning::{PruneConfig, PruneMethod, PruneStrategy};
pub use selfexpress::{CoefficientMatrix, FeatureMatrix, SolverParams};
pub use skeleton::{Dataset, FileFormat, SkeletonSequence, SyntheticSpec};
pub use tsc::{TscModel, TscParams};
