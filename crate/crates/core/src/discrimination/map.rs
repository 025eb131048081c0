use std::cmp::Ordering;

use rayon::prelude::*;

use super::{clamp_unit, unit_rows};
use crate::corpus::{CategoryIndex, EmbeddingSet};
use crate::error::{Error, Result};
use crate::scalar::{dot, Scalar};

/// Name of the mAP variant, stamped into reports.
pub const MAP_VARIANT: &str = "query-based";

/// Average precision of every valid query row, in row order.
///
/// A row is a valid query when at least one other row shares its label. All
/// other rows, including label singletons, are ranked by descending cosine
/// similarity to the query; ties go to the lower row index.
pub fn average_precisions<T: Scalar>(
    set: &EmbeddingSet<T>,
    index: &CategoryIndex,
) -> Result<Vec<(usize, T)>> {
    let n = set.len();
    let dim = set.dim();
    let units = unit_rows(set.as_flat(), dim)?;
    let row = |i: usize| &units[i * dim..(i + 1) * dim];
    let queries: Vec<usize> = (0..n)
        .filter(|&q| index.get(set.label(q)).is_some_and(|g| g.len() >= 2))
        .collect();
    if queries.is_empty() {
        return Err(Error::NoValidQueries);
    }
    let aps = queries
        .par_iter()
        .map(|&q| {
            let mut ranked: Vec<(T, usize)> = (0..n)
                .filter(|&j| j != q)
                .map(|j| (clamp_unit(dot(row(q), row(j))), j))
                .collect();
            ranked.sort_by(|a, b| {
                b.0.partial_cmp(&a.0)
                    .unwrap_or(Ordering::Equal)
                    .then(a.1.cmp(&b.1))
            });
            let mut hits = 0usize;
            let mut precision_sum = T::zero();
            for (rank, &(_, j)) in ranked.iter().enumerate() {
                if index.same_category(q, j) {
                    hits += 1;
                    precision_sum += T::count(hits) / T::count(rank + 1);
                }
            }
            (q, precision_sum / T::count(hits))
        })
        .collect();
    Ok(aps)
}

/// Query-based same-different mean average precision.
pub fn map_same_different<T: Scalar>(set: &EmbeddingSet<T>, index: &CategoryIndex) -> Result<T> {
    let aps = average_precisions(set, index)?;
    Ok(aps.iter().map(|&(_, ap)| ap).sum::<T>() / T::count(aps.len()))
}
