use std::cmp::Ordering;

use super::cosine_similarity;
use crate::corpus::{CategoryIndex, EmbeddingSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Per-category mean vectors, in label order.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidTable<T> {
    labels: Vec<String>,
    counts: Vec<usize>,
    data: Vec<T>,
    dim: usize,
}

impl<T: Scalar> CentroidTable<T> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn centroid(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn get(&self, label: &str) -> Option<&[T]> {
        self.position(label).map(|i| self.centroid(i))
    }

    /// Up to three labels adjacent to where `label` would sort.
    fn suggestions(&self, label: &str) -> Vec<String> {
        let at = self.labels.partition_point(|l| l.as_str() < label);
        let lo = at.saturating_sub(1);
        let hi = (at + 2).min(self.labels.len());
        self.labels[lo..hi].to_vec()
    }
}

/// Arithmetic mean of each category's exemplars (not normalized).
pub fn centroids<T: Scalar>(set: &EmbeddingSet<T>, index: &CategoryIndex) -> CentroidTable<T> {
    let dim = set.dim();
    let mut labels = Vec::with_capacity(index.len());
    let mut counts = Vec::with_capacity(index.len());
    let mut data = Vec::with_capacity(index.len() * dim);
    for (label, rows) in index.iter() {
        let mut acc = vec![T::zero(); dim];
        for &r in rows {
            for (a, &v) in acc.iter_mut().zip(set.row(r)) {
                *a += v;
            }
        }
        let n = T::count(rows.len());
        data.extend(acc.into_iter().map(|a| a / n));
        labels.push(label.to_owned());
        counts.push(rows.len());
    }
    CentroidTable {
        labels,
        counts,
        data,
        dim,
    }
}

/// Other centroids ranked by descending cosine similarity to `query`'s
/// centroid, ties in label order, truncated to `k`.
pub fn nearest_centroids<T: Scalar>(
    table: &CentroidTable<T>,
    query: &str,
    k: usize,
) -> Result<Vec<(String, T)>> {
    let q = table.position(query).ok_or_else(|| Error::NotFound {
        label: query.to_owned(),
        suggestions: table.suggestions(query),
    })?;
    let target = table.centroid(q);
    let mut ranked = (0..table.len())
        .filter(|&i| i != q)
        .map(|i| {
            Ok((
                table.labels[i].clone(),
                cosine_similarity(target, table.centroid(i))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    ranked.truncate(k);
    Ok(ranked)
}
