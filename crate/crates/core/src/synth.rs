//! Deterministic synthetic embedding sets with controllable category
//! separation, within-category spread and dimension utilization.
//!
//! All randomness flows from `SynthSpec::seed` through ChaCha8 streams, and
//! Gaussian variates use the Box–Muller transform, so output is identical
//! across platforms. Only the first `utilized_dims` coordinates receive
//! Gaussian centroid draws and exemplar noise; the remaining coordinates are
//! zero unless orthogonal centroid placement puts an axis there.

use rand::{Rng, RngCore};

use crate::corpus::{EmbeddingSet, Lexicon, PhonemeSequence};
use crate::error::{Error, Result};
use crate::rng::{seeded, SeededRng};
use crate::scalar::Scalar;

/// Phoneme inventory of the synthetic lexicon.
pub const SYNTH_PHONEMES: [&str; 20] = [
    "AA", "AE", "AH", "B", "D", "EH", "F", "G", "IY", "K", "L", "M", "N", "P", "R", "S", "T", "UW",
    "V", "Z",
];

/// Inclusive range of synthetic pronunciation lengths.
pub const SYNTH_PRON_LENGTH: (usize, usize) = (2, 8);

/// Stream separation constant for the lexicon generator.
const LEXICON_STREAM: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub num_categories: usize,
    pub exemplars_per_category: usize,
    pub dim: usize,
    /// Scale of centroid placement.
    pub separation: f64,
    /// Standard deviation of per-exemplar noise.
    pub within_spread: f64,
    /// Number of leading coordinates that carry variation, in `[1, dim]`.
    pub utilized_dims: usize,
    /// Place centroids on `separation`-scaled orthonormal axes instead of
    /// drawing them from a Gaussian.
    pub orthogonal: bool,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            num_categories: 10,
            exemplars_per_category: 8,
            dim: 16,
            separation: 1.0,
            within_spread: 0.1,
            utilized_dims: 16,
            orthogonal: false,
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.num_categories == 0 || self.exemplars_per_category == 0 || self.dim == 0 {
            return Err(Error::Validation(
                "category count, exemplar count and dimension must be at least 1".into(),
            ));
        }
        if self.utilized_dims == 0 || self.utilized_dims > self.dim {
            return Err(Error::Validation(format!(
                "utilized_dims must be in [1, {}], got {}",
                self.dim, self.utilized_dims
            )));
        }
        for (name, v) in [
            ("separation", self.separation),
            ("within_spread", self.within_spread),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Validation(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        if self.orthogonal && self.num_categories > self.dim {
            return Err(Error::Capacity(format!(
                "{} orthogonal centroids do not fit in {} dimensions",
                self.num_categories, self.dim
            )));
        }
        Ok(())
    }

    /// Label of category `c` (zero-based): `w0001`, `w0002`, ...
    pub fn label(c: usize) -> String {
        format!("w{:04}", c + 1)
    }
}

/// Standard normal variates from a seeded uniform stream (Box–Muller).
pub struct Gaussian {
    rng: SeededRng,
    spare: Option<f64>,
}

impl Gaussian {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: seeded(seed),
            spare: None,
        }
    }

    /// Uniform in `(0, 1]` with 53 random bits.
    fn open_unit(&mut self) -> f64 {
        let bits = self.rng.next_u64() >> 11;
        (bits + 1) as f64 / (1u64 << 53) as f64
    }

    pub fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.open_unit();
        let u2 = self.open_unit();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}

/// Generates the embedding set (category-major row order) and a synthetic
/// lexicon covering every label.
pub fn generate<T: Scalar>(spec: &SynthSpec) -> Result<(EmbeddingSet<T>, Lexicon)> {
    spec.validate()?;
    let d = spec.dim;
    let u = spec.utilized_dims;
    let mut gauss = Gaussian::new(spec.seed);

    let centroids: Vec<Vec<f64>> = (0..spec.num_categories)
        .map(|c| {
            let mut v = vec![0.0; d];
            if spec.orthogonal {
                v[c] = spec.separation;
            } else {
                for x in &mut v[..u] {
                    *x = spec.separation * gauss.sample();
                }
            }
            v
        })
        .collect();

    let n = spec.num_categories * spec.exemplars_per_category;
    let mut labels = Vec::with_capacity(n);
    let mut data = Vec::with_capacity(n * d);
    for (c, centroid) in centroids.iter().enumerate() {
        let label = SynthSpec::label(c);
        for _ in 0..spec.exemplars_per_category {
            labels.push(label.clone());
            for (k, &m) in centroid.iter().enumerate() {
                let noise = if k < u && spec.within_spread > 0.0 {
                    spec.within_spread * gauss.sample()
                } else {
                    0.0
                };
                data.push(T::of(m + noise));
            }
        }
    }
    let set = EmbeddingSet::from_flat(labels, data, d)?;

    let mut rng = seeded(spec.seed ^ LEXICON_STREAM);
    let mut lexicon = Lexicon::new();
    for c in 0..spec.num_categories {
        let len = rng.random_range(SYNTH_PRON_LENGTH.0..=SYNTH_PRON_LENGTH.1);
        let symbols: Vec<&str> = (0..len)
            .map(|_| SYNTH_PHONEMES[rng.random_range(0..SYNTH_PHONEMES.len())])
            .collect();
        lexicon.insert(SynthSpec::label(c), PhonemeSequence::new(symbols)?);
    }
    Ok((set, lexicon))
}
