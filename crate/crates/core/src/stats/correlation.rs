use super::special::student_t_two_tailed;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult<T> {
    pub r: T,
    pub n: usize,
    pub t_statistic: T,
    /// Two-tailed, in `(0, 1]`.
    pub p_value: T,
}

impl<T: Scalar> CorrelationResult<T> {
    pub fn significant_05(&self) -> bool {
        self.p_value < T::of(0.05)
    }

    pub fn significant_001(&self) -> bool {
        self.p_value < T::of(0.001)
    }

    /// `†` below 0.001, `*` below 0.05, empty otherwise.
    pub fn flag(&self) -> &'static str {
        if self.significant_001() {
            "†"
        } else if self.significant_05() {
            "*"
        } else {
            ""
        }
    }
}

/// Sample Pearson correlation with a two-tailed Student-t p-value on `n - 2`
/// degrees of freedom.
pub fn pearson<T: Scalar>(x: &[T], y: &[T]) -> Result<CorrelationResult<T>> {
    if x.len() != y.len() {
        return Err(Error::Validation(format!(
            "series lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "correlation needs at least 3 points, got {n}"
        )));
    }
    if let Some(bad) = x.iter().chain(y).find(|v| !v.is_finite()) {
        return Err(Error::Validation(format!("non-finite value {bad}")));
    }
    let count = T::count(n);
    let mx = x.iter().copied().sum::<T>() / count;
    let my = y.iter().copied().sum::<T>() / count;
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx.is_zero() {
        return Err(Error::ConstantSeries("x"));
    }
    if syy.is_zero() {
        return Err(Error::ConstantSeries("y"));
    }
    let r = (sxy / (sxx * syy).sqrt()).max(-T::one()).min(T::one());
    let dof = T::count(n - 2);
    let (t_statistic, p_value) = if r.abs() == T::one() {
        (r.signum() * T::infinity(), T::min_positive_value())
    } else {
        let t = r * (dof / (T::one() - r * r)).sqrt();
        let p = student_t_two_tailed(t, dof);
        (t, p.max(T::min_positive_value()).min(T::one()))
    };
    Ok(CorrelationResult {
        r,
        n,
        t_statistic,
        p_value,
    })
}
