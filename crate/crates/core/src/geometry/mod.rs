//! Embedding-space uniformity and cross-instance similarity.

mod cka;
mod isoscore;
mod similarity;

pub use cka::{consistency_matrix, linear_cka, linear_cka_pair, ConsistencyMatrix, GramMatrix};
pub use isoscore::isoscore;
pub use similarity::{
    histogram, similarity_distributions, SimilarityConfig, SimilarityStats, DEFAULT_BINS,
};

use crate::scalar::Scalar;

/// Column-centered copy of a row-major `rows × dim` matrix, plus a flag that
/// is set when every row is numerically identical to the column means.
pub(crate) fn center_columns<T: Scalar>(data: &[T], rows: usize, dim: usize) -> (Vec<T>, bool) {
    let mut means = vec![T::zero(); dim];
    for row in data.chunks_exact(dim) {
        for (m, &v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    let n = T::count(rows);
    for m in &mut means {
        *m /= n;
    }
    let mut raw_sq = T::zero();
    let mut centered_sq = T::zero();
    let centered: Vec<T> = data
        .chunks_exact(dim)
        .flat_map(|row| row.iter().zip(&means).map(|(&v, &m)| v - m))
        .collect();
    for (&c, &v) in centered.iter().zip(data) {
        raw_sq += v * v;
        centered_sq += c * c;
    }
    let eps = T::epsilon();
    let degenerate = centered_sq <= eps * eps * T::of(64.0) * raw_sq;
    (centered, degenerate)
}
