use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary<T> {
    pub mean: T,
    pub max: T,
    pub min: T,
    /// Population standard deviation (divides by `n`).
    pub std: T,
}

/// Mean, extrema and population standard deviation of per-run results.
pub fn run_summary<T: Scalar>(values: &[T]) -> Result<RunSummary<T>> {
    if values.is_empty() {
        return Err(Error::Validation(
            "run summary needs at least one value".into(),
        ));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Validation("run values must be finite".into()));
    }
    let n = T::count(values.len());
    let mean = values.iter().copied().sum::<T>() / n;
    let var = values.iter().map(|&v| (v - mean) * (v - mean)).sum::<T>() / n;
    Ok(RunSummary {
        mean,
        max: values.iter().copied().fold(T::neg_infinity(), T::max),
        min: values.iter().copied().fold(T::infinity(), T::min),
        std: var.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_runs() {
        let s = run_summary(&[0.5, 0.5, 0.5]).unwrap();
        assert_eq!(s.mean, 0.5);
        assert_eq!(s.std, 0.0);
    }

    #[test]
    fn two_runs() {
        let s = run_summary(&[0.0, 1.0]).unwrap();
        assert_eq!((s.mean, s.max, s.min, s.std), (0.5, 1.0, 0.0, 0.5));
    }

    #[test]
    fn empty_is_rejected() {
        assert!(run_summary::<f64>(&[]).is_err());
    }
}
