use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;

use crate::corpus::{CategoryIndex, EmbeddingSet};
use crate::discrimination::cosine_similarity;
use crate::error::{Error, Result};
use crate::rng::seeded;
use crate::scalar::Scalar;

pub const DEFAULT_BINS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimilarityConfig {
    /// Cap on the number of pairs in each group.
    pub max_pairs_per_group: usize,
    pub seed: u64,
    /// Number of uniform histogram bins over `[-1, 1]`.
    pub bins: usize,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        Self {
            max_pairs_per_group: 10_000,
            seed: 0,
            bins: DEFAULT_BINS,
        }
    }
}

/// Within- and cross-category cosine similarity samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityStats<T> {
    pub within_scores: Vec<T>,
    pub cross_scores: Vec<T>,
    pub within_mean: T,
    pub cross_mean: T,
    pub mean_difference: T,
    pub within_histogram: Vec<usize>,
    pub cross_histogram: Vec<usize>,
}

impl<T: Scalar> SimilarityStats<T> {
    /// The `bins + 1` histogram bin edges, from -1 to 1.
    pub fn bin_edges(&self) -> Vec<T> {
        let bins = self.within_histogram.len();
        let width = T::of(2.0) / T::count(bins);
        (0..=bins)
            .map(|b| {
                if b == bins {
                    T::one()
                } else {
                    -T::one() + width * T::count(b)
                }
            })
            .collect()
    }
}

/// Samples same-category and different-category row pairs and records the
/// cosine similarity of each.
///
/// Pairs are unordered `(i, j)` with `i < j`. When a group holds more pairs
/// than `max_pairs_per_group`, a uniform sample without replacement is drawn
/// with the seeded generator. Selected pairs are reported in ascending
/// `(i, j)` order.
pub fn similarity_distributions<T: Scalar>(
    set: &EmbeddingSet<T>,
    index: &CategoryIndex,
    config: &SimilarityConfig,
) -> Result<SimilarityStats<T>> {
    if config.bins == 0 {
        return Err(Error::Validation("histogram needs at least one bin".into()));
    }
    if config.max_pairs_per_group == 0 {
        return Err(Error::Validation(
            "max pairs per group must be positive".into(),
        ));
    }
    let n = set.len();
    let mut rng = seeded(config.seed);

    // Within pairs: category k owns linear indices [offsets[k], offsets[k+1]).
    let groups: Vec<&[usize]> = index.iter().map(|(_, rows)| rows).collect();
    let mut offsets = Vec::with_capacity(groups.len() + 1);
    offsets.push(0usize);
    for rows in &groups {
        let m = rows.len();
        offsets.push(offsets.last().unwrap() + m * m.saturating_sub(1) / 2);
    }
    let within_total = *offsets.last().unwrap();
    if within_total == 0 {
        return Err(Error::WithinEmpty);
    }
    if groups.len() < 2 {
        return Err(Error::CrossEmpty);
    }
    let within_ids: Vec<usize> = if within_total <= config.max_pairs_per_group {
        (0..within_total).collect()
    } else {
        let mut ids = index::sample(&mut rng, within_total, config.max_pairs_per_group).into_vec();
        ids.sort_unstable();
        ids
    };
    let mut within_pairs: Vec<(usize, usize)> = within_ids
        .into_iter()
        .map(|id| {
            let k = offsets.partition_point(|&o| o <= id) - 1;
            let (a, b) = decode_pair(id - offsets[k], groups[k].len());
            (groups[k][a], groups[k][b])
        })
        .collect();
    within_pairs.sort_unstable();

    let all_total = n * (n - 1) / 2;
    let cross_total = all_total - within_total;
    let cross_pairs: Vec<(usize, usize)> = if cross_total <= config.max_pairs_per_group {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !index.same_category(i, j))
            .collect()
    } else {
        let mut chosen = HashSet::with_capacity(config.max_pairs_per_group);
        while chosen.len() < config.max_pairs_per_group {
            let id = rng.random_range(0..all_total);
            let (i, j) = decode_pair(id, n);
            if !index.same_category(i, j) {
                chosen.insert(id);
            }
        }
        let mut ids: Vec<usize> = chosen.into_iter().collect();
        ids.sort_unstable();
        ids.into_iter().map(|id| decode_pair(id, n)).collect()
    };

    let score = |&(i, j): &(usize, usize)| cosine_similarity(set.row(i), set.row(j));
    let within_scores = within_pairs.iter().map(score).collect::<Result<Vec<T>>>()?;
    let cross_scores = cross_pairs.iter().map(score).collect::<Result<Vec<T>>>()?;
    let within_mean = mean(&within_scores);
    let cross_mean = mean(&cross_scores);
    Ok(SimilarityStats {
        within_histogram: histogram(&within_scores, config.bins),
        cross_histogram: histogram(&cross_scores, config.bins),
        within_mean,
        cross_mean,
        mean_difference: within_mean - cross_mean,
        within_scores,
        cross_scores,
    })
}

/// Counts scores into `bins` uniform bins over `[-1, 1]`; bins are right-open
/// except the last, which includes 1.
pub fn histogram<T: Scalar>(scores: &[T], bins: usize) -> Vec<usize> {
    let mut counts = vec![0; bins];
    let nb = T::count(bins);
    for &s in scores {
        let pos = ((s + T::one()) / T::of(2.0) * nb).floor();
        let b = pos.to_usize().unwrap_or(0).min(bins - 1);
        counts[b] += 1;
    }
    counts
}

fn mean<T: Scalar>(xs: &[T]) -> T {
    xs.iter().copied().sum::<T>() / T::count(xs.len())
}

/// Maps a linear index over the upper triangle of an `n × n` matrix
/// (row-major, diagonal excluded) back to `(i, j)` with `i < j`.
fn decode_pair(id: usize, n: usize) -> (usize, usize) {
    let before = |i: usize| i * n - i * (i + 1) / 2;
    let (mut lo, mut hi) = (0, n - 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if before(mid) <= id {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, lo + 1 + id - before(lo))
}
