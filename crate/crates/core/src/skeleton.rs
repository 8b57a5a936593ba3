//! Skeleton sequence data model, file ingestion, hip-centered preprocessing,
//! and a synthetic dataset generator for desk-scale experiments.

use std::fs;
use std::path::Path;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One action sample: per-timestamp stacked 3D joint positions.
///
/// Frame `t` is the column vectorization of all joint positions at time `t`,
/// so every frame has exactly `3 * joints` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonSequence {
    joints: usize,
    frames: Vec<DVector<f64>>,
}

impl SkeletonSequence {
    /// Build a sequence, validating frame dimensions and finiteness.
    pub fn new(joints: usize, frames: Vec<DVector<f64>>) -> Result<Self> {
        if joints == 0 {
            return Err(Error::InvalidParam("joints must be positive".into()));
        }
        if frames.is_empty() {
            return Err(Error::InvalidParam(
                "sequence must have at least one frame".into(),
            ));
        }
        for (t, f) in frames.iter().enumerate() {
            if f.len() != 3 * joints {
                return Err(Error::InvalidParam(format!(
                    "frame {t} has {} entries, expected {}",
                    f.len(),
                    3 * joints
                )));
            }
            if f.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParam(format!(
                    "frame {t} contains a non-finite value"
                )));
            }
        }
        Ok(SkeletonSequence { joints, frames })
    }

    pub fn from_rows(joints: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let frames = rows
            .iter()
            .map(|r| DVector::from_column_slice(r))
            .collect();
        SkeletonSequence::new(joints, frames)
    }

    pub fn joints(&self) -> usize {
        self.joints
    }

    /// Number of timestamps T.
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        false // T >= 1 by construction
    }

    /// Frame dimension 3J.
    pub fn frame_dim(&self) -> usize {
        3 * self.joints
    }

    pub fn frames(&self) -> &[DVector<f64>] {
        &self.frames
    }

    pub fn frame(&self, t: usize) -> &DVector<f64> {
        &self.frames[t]
    }
}

/// Translate every joint relative to a root joint and drop the root,
/// yielding `J - 1` joints of relative displacements per frame.
///
/// Output frame `t` concatenates `p_j(t) - p_root(t)` for all `j != root`,
/// in ascending joint order.
pub fn to_relative_displacements(
    seq: &SkeletonSequence,
    root_joint: usize,
) -> Result<SkeletonSequence> {
    let j = seq.joints();
    if j < 2 {
        return Err(Error::InvalidParam("no non-root joints".into()));
    }
    if root_joint >= j {
        return Err(Error::InvalidParam(format!(
            "root joint {root_joint} out of range for {j} joints"
        )));
    }
    let frames = seq
        .frames()
        .iter()
        .map(|f| {
            let root = [f[3 * root_joint], f[3 * root_joint + 1], f[3 * root_joint + 2]];
            let mut out = Vec::with_capacity(3 * (j - 1));
            for joint in 0..j {
                if joint == root_joint {
                    continue;
                }
                for axis in 0..3 {
                    out.push(f[3 * joint + axis] - root[axis]);
                }
            }
            DVector::from_vec(out)
        })
        .collect();
    SkeletonSequence::new(j - 1, frames)
}

/// An ordered collection of skeleton sequences with optional ground-truth
/// labels. Labels are consumed only by evaluation; no pipeline stage reads
/// them before the final accuracy computation.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub samples: Vec<SkeletonSequence>,
    pub labels: Option<Vec<usize>>,
    pub num_classes: usize,
}

impl Dataset {
    pub fn new(
        samples: Vec<SkeletonSequence>,
        labels: Option<Vec<usize>>,
        num_classes: usize,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::parse(None, "empty dataset"));
        }
        if num_classes == 0 {
            return Err(Error::InvalidParam("num_classes must be positive".into()));
        }
        if let Some(ref l) = labels {
            if l.len() != samples.len() {
                return Err(Error::InvalidParam(format!(
                    "{} labels for {} samples",
                    l.len(),
                    samples.len()
                )));
            }
            if let Some(&bad) = l.iter().find(|&&c| c >= num_classes) {
                return Err(Error::InvalidParam(format!(
                    "label {bad} out of range for {num_classes} classes"
                )));
            }
        }
        Ok(Dataset {
            samples,
            labels,
            num_classes,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// A copy with ground-truth labels removed (for unsupervised-guarantee checks).
    pub fn without_labels(&self) -> Dataset {
        Dataset {
            samples: self.samples.clone(),
            labels: None,
            num_classes: self.num_classes,
        }
    }
}

/// Dataset file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileFormat {
    Json,
    Csv,
}

#[derive(Serialize, Deserialize)]
struct JsonSample {
    label: Option<usize>,
    frames: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct JsonDataset {
    joints: usize,
    samples: Vec<JsonSample>,
}

/// Load a dataset from disk in the given format.
pub fn load_dataset(path: impl AsRef<Path>, format: FileFormat) -> Result<Dataset> {
    let text = fs::read_to_string(path)?;
    match format {
        FileFormat::Json => parse_json(&text),
        FileFormat::Csv => parse_csv(&text),
    }
}

/// Save a dataset as JSON, bit-exactly reloadable through [`load_dataset`].
pub fn save_dataset(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let samples = dataset
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| JsonSample {
            label: dataset.labels.as_ref().map(|l| l[i]),
            frames: s.frames().iter().map(|f| f.iter().copied().collect()).collect(),
        })
        .collect();
    let doc = JsonDataset {
        joints: dataset.samples[0].joints(),
        samples,
    };
    fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

fn finish_dataset(
    sequences: Vec<SkeletonSequence>,
    labels: Vec<Option<usize>>,
) -> Result<Dataset> {
    if sequences.is_empty() {
        return Err(Error::parse(None, "empty dataset"));
    }
    let present = labels.iter().filter(|l| l.is_some()).count();
    let labels = if present == 0 {
        None
    } else if present == labels.len() {
        Some(labels.into_iter().map(|l| l.unwrap()).collect::<Vec<_>>())
    } else {
        return Err(Error::parse(
            None,
            "labels must be present on all samples or on none",
        ));
    };
    let num_classes = labels
        .as_ref()
        .map(|l| l.iter().max().map(|m| m + 1).unwrap_or(1))
        .unwrap_or(1);
    Dataset::new(sequences, labels, num_classes)
}

fn parse_json(text: &str) -> Result<Dataset> {
    let doc: JsonDataset =
        serde_json::from_str(text).map_err(|e| Error::parse(None, e.to_string()))?;
    if doc.joints == 0 {
        return Err(Error::parse(None, "joints header must be positive"));
    }
    let mut sequences = Vec::with_capacity(doc.samples.len());
    let mut labels = Vec::with_capacity(doc.samples.len());
    for (i, s) in doc.samples.iter().enumerate() {
        let seq = SkeletonSequence::from_rows(doc.joints, &s.frames)
            .map_err(|e| Error::parse(Some(i), e.to_string()))?;
        sequences.push(seq);
        labels.push(s.label);
    }
    finish_dataset(sequences, labels)
}

/// CSV rows: `sample_id,label,t,x1,y1,z1,...`. Frames of a sample must be
/// contiguous with strictly increasing `t`; an empty label field means
/// unlabeled. A header row is skipped when the first field is not numeric.
fn parse_csv(text: &str) -> Result<Dataset> {
    let mut sequences = Vec::new();
    let mut labels: Vec<Option<usize>> = Vec::new();
    let mut cur_id: Option<u64> = None;
    let mut cur_label: Option<usize> = None;
    let mut cur_frames: Vec<Vec<f64>> = Vec::new();
    let mut cur_t: Option<i64> = None;
    let mut joints: Option<usize> = None;
    let mut seen_ids: Vec<u64> = Vec::new();

    let flush = |frames: &mut Vec<Vec<f64>>,
                     label: Option<usize>,
                     joints: usize,
                     sequences: &mut Vec<SkeletonSequence>,
                     labels: &mut Vec<Option<usize>>|
     -> Result<()> {
        let idx = sequences.len();
        let seq = SkeletonSequence::from_rows(joints, frames)
            .map_err(|e| Error::parse(Some(idx), e.to_string()))?;
        sequences.push(seq);
        labels.push(label);
        frames.clear();
        Ok(())
    };

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if lineno == 0 && fields[0].parse::<u64>().is_err() {
            continue; // header row
        }
        if fields.len() < 6 {
            return Err(Error::parse(
                Some(sequences.len()),
                format!("line {}: expected at least 6 columns", lineno + 1),
            ));
        }
        let id: u64 = fields[0].parse().map_err(|_| {
            Error::parse(Some(sequences.len()), format!("line {}: bad sample_id", lineno + 1))
        })?;
        let label: Option<usize> = if fields[1].is_empty() {
            None
        } else {
            Some(fields[1].parse().map_err(|_| {
                Error::parse(Some(sequences.len()), format!("line {}: bad label", lineno + 1))
            })?)
        };
        let t: i64 = fields[2].parse().map_err(|_| {
            Error::parse(Some(sequences.len()), format!("line {}: bad timestamp", lineno + 1))
        })?;
        let coords: Vec<f64> = fields[3..]
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| {
                Error::parse(Some(sequences.len()), format!("line {}: bad coordinate", lineno + 1))
            })?;
        if !coords.len().is_multiple_of(3) {
            return Err(Error::parse(
                Some(sequences.len()),
                format!("line {}: coordinate count {} not a multiple of 3", lineno + 1, coords.len()),
            ));
        }
        let j = coords.len() / 3;
        match joints {
            None => joints = Some(j),
            Some(expect) if expect != j => {
                return Err(Error::parse(
                    Some(sequences.len()),
                    format!("line {}: frame has {} joints, expected {}", lineno + 1, j, expect),
                ));
            }
            _ => {}
        }

        if cur_id != Some(id) {
            if cur_id.is_some() {
                flush(&mut cur_frames, cur_label, joints.unwrap(), &mut sequences, &mut labels)?;
            }
            if seen_ids.contains(&id) {
                return Err(Error::parse(
                    Some(sequences.len()),
                    format!("line {}: sample {} not contiguous", lineno + 1, id),
                ));
            }
            seen_ids.push(id);
            cur_id = Some(id);
            cur_label = label;
            cur_t = None;
        } else if label != cur_label {
            return Err(Error::parse(
                Some(sequences.len()),
                format!("line {}: label changes within sample {}", lineno + 1, id),
            ));
        }
        if let Some(prev) = cur_t {
            if t <= prev {
                return Err(Error::parse(
                    Some(sequences.len()),
                    format!("line {}: timestamps not strictly increasing", lineno + 1),
                ));
            }
        }
        cur_t = Some(t);
        cur_frames.push(coords);
    }
    if cur_id.is_some() {
        flush(&mut cur_frames, cur_label, joints.unwrap(), &mut sequences, &mut labels)?;
    }
    finish_dataset(sequences, labels)
}

/// Parameters for the synthetic generator. Each class gets a distinct random
/// smooth trajectory template (random Fourier coefficients); samples add a
/// per-sample time warp and Gaussian noise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub num_classes: usize,
    pub samples_per_class: usize,
    pub joints: usize,
    pub mean_duration: usize,
    pub duration_jitter: usize,
    pub noise_std: f64,
    pub rng_seed: u64,
}

impl SyntheticSpec {
    fn validate(&self) -> Result<()> {
        if self.num_classes == 0
            || self.samples_per_class == 0
            || self.joints == 0
            || self.mean_duration == 0
        {
            return Err(Error::InvalidParam("all counts must be positive".into()));
        }
        if !(self.noise_std >= 0.0) {
            return Err(Error::InvalidParam("noise_std must be >= 0".into()));
        }
        Ok(())
    }
}

const HARMONICS: usize = 3;

/// Deterministic synthetic skeleton dataset. Same spec, same bits.
pub fn generate_synthetic_dataset(spec: &SyntheticSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let dim = 3 * spec.joints;

    // Per-class Fourier templates: coefficient vectors and phases per harmonic.
    let mut coeffs = Vec::with_capacity(spec.num_classes);
    let mut phases = Vec::with_capacity(spec.num_classes);
    for _ in 0..spec.num_classes {
        let a: Vec<DVector<f64>> = (0..HARMONICS)
            .map(|_| DVector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0)))
            .collect();
        let p: Vec<f64> = (0..HARMONICS)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        coeffs.push(a);
        phases.push(p);
    }

    let mut samples = Vec::new();
    let mut labels = Vec::new();
    for class in 0..spec.num_classes {
        for _ in 0..spec.samples_per_class {
            let jitter = spec.duration_jitter as i64;
            let t_len = if jitter == 0 {
                spec.mean_duration
            } else {
                let delta = rng.gen_range(-jitter..=jitter);
                ((spec.mean_duration as i64 + delta).max(2)) as usize
            };
            // Time warp only varies across samples when durations do; with
            // zero jitter and zero noise, class members must be identical.
            let warp = if spec.duration_jitter == 0 {
                1.0
            } else {
                rng.gen_range(0.75..1.33)
            };
            let frames: Vec<DVector<f64>> = (0..t_len)
                .map(|i| {
                    let tau = if t_len > 1 {
                        (i as f64 / (t_len - 1) as f64).powf(warp)
                    } else {
                        0.0
                    };
                    let mut frame = DVector::zeros(dim);
                    for h in 0..HARMONICS {
                        let arg = std::f64::consts::TAU * (h + 1) as f64 * tau + phases[class][h];
                        frame += &coeffs[class][h] * arg.sin();
                    }
                    if spec.noise_std > 0.0 {
                        for v in frame.iter_mut() {
                            *v += gaussian(&mut rng) * spec.noise_std;
                        }
                    }
                    frame
                })
                .collect();
            samples.push(SkeletonSequence::new(spec.joints, frames)?);
            labels.push(class);
        }
    }
    Dataset::new(samples, Some(labels), spec.num_classes)
}

/// Box-Muller standard normal. Kept local so the generator's draw sequence
/// is pinned by this crate alone.
fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
