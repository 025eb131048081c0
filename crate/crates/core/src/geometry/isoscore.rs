use nalgebra::{DMatrix, SymmetricEigen};

use super::center_columns;
use crate::corpus::EmbeddingSet;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Isotropy score in `[0, 1]`: 1 when variance is spread evenly over all `D`
/// principal directions, 0 when it is concentrated in a single one.
///
/// The points are reoriented onto the eigenvectors of their sample covariance;
/// the per-axis variances (unbiased) of the reoriented points form the
/// variance profile that is compared against the uniform profile.
pub fn isoscore<T: Scalar>(set: &EmbeddingSet<T>) -> Result<T> {
    let n = set.len();
    let d = set.dim();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "isoscore needs at least 2 points, got {n}"
        )));
    }
    if d < 2 {
        return Err(Error::InsufficientData(format!(
            "isoscore needs at least 2 dimensions, got {d}"
        )));
    }
    let (centered, degenerate) = center_columns(set.as_flat(), n, d);
    if degenerate {
        return Err(Error::DegenerateInput("all points are identical".into()));
    }
    let dof = T::count(n - 1);

    let mut cov = vec![T::zero(); d * d];
    for row in centered.chunks_exact(d) {
        for a in 0..d {
            let ra = row[a];
            for b in a..d {
                cov[a * d + b] += ra * row[b];
            }
        }
    }
    for a in 0..d {
        for b in a..d {
            let v = cov[a * d + b] / dof;
            cov[a * d + b] = v;
            cov[b * d + a] = v;
        }
    }

    let axes = principal_axes(&cov, d);
    let mut variances = vec![T::zero(); d];
    for row in centered.chunks_exact(d) {
        for (k, var) in variances.iter_mut().enumerate() {
            let proj: T = (0..d).map(|a| row[a] * axes[a * d + k]).sum();
            *var += proj * proj;
        }
    }
    for var in &mut variances {
        *var /= dof;
    }
    Ok(score_from_variances(&variances))
}

/// Maps a diagonal variance profile to the isotropy score.
fn score_from_variances<T: Scalar>(variances: &[T]) -> T {
    let d = T::count(variances.len());
    let sqrt_d = d.sqrt();
    let profile_norm = variances.iter().map(|&v| v * v).sum::<T>().sqrt();
    let defect_sq: T = variances
        .iter()
        .map(|&v| {
            let diff = sqrt_d * v / profile_norm - T::one();
            diff * diff
        })
        .sum();
    let defect = defect_sq.sqrt() / (T::of(2.0) * (d - sqrt_d)).sqrt();
    let spread = (d - defect * defect * (d - sqrt_d)).powi(2) / (d * d);
    let score = (d * spread - T::one()) / (d - T::one());
    debug_assert!(
        score > -T::of(1e-9) && score < T::one() + T::of(1e-9),
        "isoscore out of range: {score}"
    );
    score.max(T::zero()).min(T::one())
}

/// Eigenvectors of a symmetric `d × d` matrix, returned row-major with one
/// eigenvector per column.
fn principal_axes<T: Scalar>(cov: &[T], d: usize) -> Vec<T> {
    let m = DMatrix::from_row_iterator(d, d, cov.iter().map(|v| v.to_f64_lossy()));
    let eig = SymmetricEigen::new(m);
    let mut axes = Vec::with_capacity(d * d);
    for a in 0..d {
        for k in 0..d {
            axes.push(T::of(eig.eigenvectors[(a, k)]));
        }
    }
    axes
}
