use crate::error::{Error, Result};
use crate::scalar::{dot, norm, Scalar};

/// Cosine similarity clamped to `[-1, 1]`. Zero-norm inputs are an error.
pub fn cosine_similarity<T: Scalar>(u: &[T], v: &[T]) -> Result<T> {
    debug_assert_eq!(u.len(), v.len());
    let nu = norm(u);
    let nv = norm(v);
    if nu.is_zero() || nv.is_zero() {
        return Err(Error::DegenerateVector);
    }
    Ok(clamp_unit(dot(u, v) / (nu * nv)))
}

/// `1 - cos(u, v)`, in `[0, 2]`.
pub fn cosine_distance<T: Scalar>(u: &[T], v: &[T]) -> Result<T> {
    cosine_similarity(u, v).map(|s| T::one() - s)
}

pub(crate) fn clamp_unit<T: Scalar>(s: T) -> T {
    s.max(-T::one()).min(T::one())
}

/// Rows scaled to unit length, so cosine similarity reduces to a dot product.
pub(crate) fn unit_rows<T: Scalar>(data: &[T], dim: usize) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(data.len());
    for row in data.chunks_exact(dim) {
        let n = norm(row);
        if n.is_zero() {
            return Err(Error::DegenerateVector);
        }
        out.extend(row.iter().map(|&v| v / n));
    }
    Ok(out)
}
