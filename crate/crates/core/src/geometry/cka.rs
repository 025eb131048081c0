use rayon::prelude::*;

use super::center_columns;
use crate::corpus::{align_views, AlignedViews, EmbeddingSet};
use crate::error::{Error, Result};
use crate::scalar::{dot, Scalar};

/// Centered second-moment matrix `H X Xᵀ Hᵀ / D` of one view, `K × K`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    size: usize,
    values: Vec<T>,
}

impl<T: Scalar> GramMatrix<T> {
    /// Builds the centered Gram matrix of `set`. Centering the columns of `X`
    /// is the same as multiplying by `H = I - 1/K` on the left.
    pub fn centered(set: &EmbeddingSet<T>) -> Result<Self> {
        let k = set.len();
        let d = set.dim();
        let (centered, degenerate) = center_columns(set.as_flat(), k, d);
        if degenerate {
            return Err(Error::DegenerateView(
                "centered Gram matrix is zero (all rows identical)".into(),
            ));
        }
        let dim = T::count(d);
        let mut values = vec![T::zero(); k * k];
        for i in 0..k {
            let ri = &centered[i * d..(i + 1) * d];
            for j in i..k {
                let v = dot(ri, &centered[j * d..(j + 1) * d]) / dim;
                values[i * k + j] = v;
                values[j * k + i] = v;
            }
        }
        Ok(Self { size: k, values })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.size + j]
    }

    /// `⟨vec(self), vec(other)⟩`.
    pub fn inner(&self, other: &Self) -> T {
        dot(&self.values, &other.values)
    }

    pub fn frobenius(&self) -> T {
        self.inner(self).sqrt()
    }

    /// Linear CKA between the two views these matrices were built from.
    pub fn alignment(&self, other: &Self) -> T {
        self.inner(other) / (self.frobenius() * other.frobenius())
    }
}

/// Linear CKA of exactly two aligned views.
pub fn linear_cka<T: Scalar>(views: &AlignedViews<'_, T>) -> Result<T> {
    let [x, y] = views.views() else {
        return Err(Error::Validation(format!(
            "linear CKA compares exactly 2 views, got {}",
            views.len()
        )));
    };
    if views.samples() < 2 {
        return Err(Error::InsufficientData(
            "CKA needs at least 2 samples".into(),
        ));
    }
    let gx = GramMatrix::centered(x).map_err(|e| annotate(e, "view 0"))?;
    let gy = GramMatrix::centered(y).map_err(|e| annotate(e, "view 1"))?;
    Ok(gx.alignment(&gy))
}

/// Convenience wrapper that aligns `x` and `y` first.
pub fn linear_cka_pair<T: Scalar>(x: &EmbeddingSet<T>, y: &EmbeddingSet<T>) -> Result<T> {
    let pair = [x.clone(), y.clone()];
    linear_cka(&align_views(&pair)?)
}

/// Pairwise CKA across `M` instances.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyMatrix<T> {
    /// `M × M`, symmetric with unit diagonal.
    pub matrix: Vec<Vec<T>>,
    /// Mean over the `M(M-1)/2` upper-triangle entries.
    pub mean_offdiag: T,
}

impl<T> ConsistencyMatrix<T> {
    /// Number of unique pairwise comparisons.
    pub fn comparisons(&self) -> usize {
        let m = self.matrix.len();
        m * (m - 1) / 2
    }
}

pub fn consistency_matrix<T: Scalar>(sets: &[EmbeddingSet<T>]) -> Result<ConsistencyMatrix<T>> {
    let views = align_views(sets)?;
    if views.samples() < 2 {
        return Err(Error::InsufficientData(
            "CKA needs at least 2 samples".into(),
        ));
    }
    let m = sets.len();
    let grams = sets
        .par_iter()
        .enumerate()
        .map(|(v, set)| {
            GramMatrix::centered(set).map_err(|e| {
                let partner = if v == 0 { 1 } else { 0 };
                let (a, b) = (v.min(partner), v.max(partner));
                annotate(e, &format!("view {v} in comparison ({a}, {b})"))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let scores: Vec<T> = pairs
        .par_iter()
        .map(|&(i, j)| grams[i].alignment(&grams[j]))
        .collect();

    let mut matrix = vec![vec![T::zero(); m]; m];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = T::one();
    }
    for (&(i, j), &s) in pairs.iter().zip(&scores) {
        matrix[i][j] = s;
        matrix[j][i] = s;
    }
    let mean_offdiag = scores.iter().copied().sum::<T>() / T::count(scores.len());
    Ok(ConsistencyMatrix {
        matrix,
        mean_offdiag,
    })
}

fn annotate(err: Error, context: &str) -> Error {
    match err {
        Error::DegenerateView(msg) => Error::DegenerateView(format!("{context}: {msg}")),
        other => other,
    }
}
