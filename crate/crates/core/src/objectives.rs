//! Forward values of the three embedding training objectives: acoustic
//! reconstruction, phonological decoding and triplet margin loss with
//! hardest in-batch negatives.

use crate::corpus::{EmbeddingSet, PhonemeSequence};
use crate::discrimination::cosine_distance;
use crate::error::{Error, Result};
use crate::scalar::{norm, Scalar};

/// Default triplet margin.
pub const DEFAULT_MARGIN: f64 = 0.4;

/// Ordered frames of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSequence<T> {
    data: Vec<T>,
    dim: usize,
}

impl<T: Scalar> FeatureSequence<T> {
    pub fn new(frames: Vec<Vec<T>>) -> Result<Self> {
        let dim = frames.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::Validation(
                "feature sequence needs non-empty frames".into(),
            ));
        }
        let mut data = Vec::with_capacity(frames.len() * dim);
        for (i, f) in frames.into_iter().enumerate() {
            if f.len() != dim {
                return Err(Error::DimensionMismatch {
                    line: i + 1,
                    expected: dim,
                    found: f.len(),
                });
            }
            if f.iter().any(|v| !v.is_finite()) {
                return Err(Error::Validation(format!("frame {i} is not finite")));
            }
            data.extend(f);
        }
        Ok(Self { data, dim })
    }

    /// One frame per line, tab-separated components.
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let frames = parse_rows(text)?;
        if frames.is_empty() {
            return Err(Error::EmptyInput);
        }
        Self::new(frames)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frames(&self) -> std::slice::ChunksExact<'_, T> {
        self.data.chunks_exact(self.dim)
    }
}

/// Per-step probability vectors over a label inventory.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbSequence<T> {
    data: Vec<T>,
    size: usize,
}

impl<T: Scalar> ProbSequence<T> {
    pub fn new(steps: Vec<Vec<T>>) -> Result<Self> {
        let size = steps.first().map_or(0, Vec::len);
        if size == 0 {
            return Err(Error::Validation(
                "probability sequence needs non-empty steps".into(),
            ));
        }
        let mut data = Vec::with_capacity(steps.len() * size);
        for (t, step) in steps.into_iter().enumerate() {
            if step.len() != size {
                return Err(Error::DimensionMismatch {
                    line: t + 1,
                    expected: size,
                    found: step.len(),
                });
            }
            if step.iter().any(|p| !p.is_finite() || *p < T::zero()) {
                return Err(Error::Validation(format!(
                    "step {t} has a negative or non-finite entry"
                )));
            }
            let total: T = step.iter().copied().sum();
            if (total - T::one()).abs() > T::of(1e-6) {
                return Err(Error::Validation(format!(
                    "step {t} sums to {total}, not 1"
                )));
            }
            data.extend(step);
        }
        Ok(Self { data, size })
    }

    /// Header line of tab-separated inventory symbols, then one step per line.
    pub fn parse_tsv(text: &str) -> Result<(Vec<String>, Self)> {
        let (header, body) = text.split_once('\n').unwrap_or((text, ""));
        let header = header.strip_suffix('\r').unwrap_or(header);
        if header.is_empty() {
            return Err(Error::EmptyInput);
        }
        let inventory: Vec<String> = header.split('\t').map(str::to_owned).collect();
        let steps = parse_rows(body)?;
        let seq = Self::new(steps)?;
        if seq.size != inventory.len() {
            return Err(Error::DimensionMismatch {
                line: 2,
                expected: inventory.len(),
                found: seq.size,
            });
        }
        Ok((inventory, seq))
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.size
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn step(&self, t: usize) -> &[T] {
        &self.data[t * self.size..(t + 1) * self.size]
    }
}

fn parse_rows<T: Scalar>(text: &str) -> Result<Vec<Vec<T>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            line.trim_end_matches('\r')
                .split('\t')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map(T::of)
                        .map_err(|_| Error::Parse {
                            line: i + 1,
                            message: format!("`{tok}` is not a number"),
                        })
                })
                .collect()
        })
        .collect()
}

/// Sum over timesteps of the Euclidean (not squared) distance between
/// target and predicted frames.
pub fn reconstruction_loss<T: Scalar>(
    predicted: &FeatureSequence<T>,
    target: &FeatureSequence<T>,
) -> Result<T> {
    if predicted.len() != target.len() || predicted.dim() != target.dim() {
        return Err(Error::Validation(format!(
            "predicted is {}×{} but target is {}×{}",
            predicted.len(),
            predicted.dim(),
            target.len(),
            target.dim()
        )));
    }
    Ok(predicted
        .frames()
        .zip(target.frames())
        .map(|(p, t)| {
            let diff: Vec<T> = t.iter().zip(p).map(|(&a, &b)| a - b).collect();
            norm(&diff)
        })
        .sum())
}

/// Categorical cross-entropy `-Σ_t ln P(φ_t at step t)`; `inventory[i]`
/// names column `i` of every step.
pub fn phonological_decoding_loss<T: Scalar>(
    probs: &ProbSequence<T>,
    target: &PhonemeSequence,
    inventory: &[String],
) -> Result<T> {
    if probs.size != inventory.len() {
        return Err(Error::Validation(format!(
            "{} probability columns for an inventory of {}",
            probs.size,
            inventory.len()
        )));
    }
    if probs.len() != target.len() {
        return Err(Error::Validation(format!(
            "{} steps for a target of length {}",
            probs.len(),
            target.len()
        )));
    }
    let mut loss = T::zero();
    for (step, sym) in target.symbols().iter().enumerate() {
        let col = inventory
            .iter()
            .position(|s| s == sym)
            .ok_or_else(|| Error::OutOfVocabulary(sym.clone()))?;
        let p = probs.step(step)[col];
        if p.is_zero() {
            return Err(Error::ZeroProbability {
                symbol: sym.clone(),
                step,
            });
        }
        loss -= p.ln();
    }
    Ok(loss)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripletConfig<T> {
    pub margin: T,
}

impl<T: Scalar> TripletConfig<T> {
    pub fn new(margin: T) -> Result<Self> {
        if !margin.is_finite() || margin < T::zero() {
            return Err(Error::Validation(format!(
                "margin must be non-negative, got {margin}"
            )));
        }
        Ok(Self { margin })
    }
}

impl<T: Scalar> Default for TripletConfig<T> {
    fn default() -> Self {
        Self {
            margin: T::of(DEFAULT_MARGIN),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripletOutcome<T> {
    /// Mean of the per-pair hinge terms.
    pub loss: T,
    /// Hardest negative row chosen for each pair.
    pub negatives: Vec<usize>,
    pub terms: Vec<T>,
}

/// Hardest different-label row for `anchor`: minimal cosine distance, ties
/// to the lowest row index.
pub fn hardest_negative<T: Scalar>(
    embeddings: &EmbeddingSet<T>,
    anchor: usize,
) -> Result<(usize, T)> {
    let label = embeddings.label(anchor);
    let mut best: Option<(usize, T)> = None;
    for row in 0..embeddings.len() {
        if embeddings.label(row) == label {
            continue;
        }
        let d = cosine_distance(embeddings.row(anchor), embeddings.row(row))?;
        if best.is_none_or(|(_, b)| d < b) {
            best = Some((row, d));
        }
    }
    best.ok_or(Error::NoNegative { anchor })
}

/// Triplet margin loss over explicit `(anchor, positive)` row pairs with
/// in-batch hardest negative mining:
/// `mean_pairs max(0, m + d(a, +) - d(a, -))`.
pub fn triplet_loss_batch<T: Scalar>(
    embeddings: &EmbeddingSet<T>,
    pairs: &[(usize, usize)],
    config: &TripletConfig<T>,
) -> Result<TripletOutcome<T>> {
    if pairs.is_empty() {
        return Err(Error::Validation("no anchor-positive pairs".into()));
    }
    let n = embeddings.len();
    let mut negatives = Vec::with_capacity(pairs.len());
    let mut terms = Vec::with_capacity(pairs.len());
    for &(a, p) in pairs {
        if a >= n || p >= n {
            return Err(Error::Validation(format!(
                "pair ({a}, {p}) is out of range for {n} rows"
            )));
        }
        if embeddings.label(a) != embeddings.label(p) {
            return Err(Error::Validation(format!(
                "pair ({a}, {p}) joins labels `{}` and `{}`",
                embeddings.label(a),
                embeddings.label(p)
            )));
        }
        let (neg, d_neg) = hardest_negative(embeddings, a)?;
        let d_pos = cosine_distance(embeddings.row(a), embeddings.row(p))?;
        terms.push((config.margin + d_pos - d_neg).max(T::zero()));
        negatives.push(neg);
    }
    let loss = terms.iter().copied().sum::<T>() / T::count(terms.len());
    Ok(TripletOutcome {
        loss,
        negatives,
        terms,
    })
}
