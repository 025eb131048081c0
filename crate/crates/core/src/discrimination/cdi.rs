use rand::Rng;
use rayon::prelude::*;

use super::{clamp_unit, unit_rows};
use crate::corpus::{CategoryIndex, EmbeddingSet};
use crate::error::{Error, Result};
use crate::rng::seeded_for_label;
use crate::scalar::{dot, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryCdi<T> {
    pub label: String,
    pub cdi: T,
    /// Ordered within-category pairs evaluated, `|C|(|C|-1)`.
    pub pairs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdiResult<T> {
    /// Eligible categories in label order.
    pub per_category: Vec<CategoryCdi<T>>,
    pub mean: T,
    /// Population standard deviation over categories.
    pub std: T,
    pub seed: u64,
    /// Categories left out for having fewer than two exemplars, with their size.
    pub skipped: Vec<(String, usize)>,
}

impl<T: Scalar> CdiResult<T> {
    pub fn get(&self, label: &str) -> Option<T> {
        self.per_category
            .binary_search_by(|c| c.label.as_str().cmp(label))
            .ok()
            .map(|i| self.per_category[i].cdi)
    }
}

/// Unit-normalized rows, so that `d(i, j) = 1 - clamp(<u_i, u_j>)`.
struct UnitRows<T> {
    data: Vec<T>,
    dim: usize,
}

impl<T: Scalar> UnitRows<T> {
    fn new(set: &EmbeddingSet<T>) -> Result<Self> {
        Ok(Self {
            data: unit_rows(set.as_flat(), set.dim())?,
            dim: set.dim(),
        })
    }

    fn distance(&self, i: usize, j: usize) -> T {
        let a = &self.data[i * self.dim..(i + 1) * self.dim];
        let b = &self.data[j * self.dim..(j + 1) * self.dim];
        T::one() - clamp_unit(dot(a, b))
    }
}

/// Category discriminability index of one category.
///
/// For every ordered pair `(e_i, e_j)` of distinct exemplars in the category,
/// one contrast row `ẽ` is drawn uniformly from all rows outside the category
/// and `d(e_i, ẽ) - d(e_i, e_j)` is accumulated. The sum is divided by the
/// number of ordered pairs, giving a value in `[-2, 2]`.
///
/// Draws come from a generator seeded with `seed ^ fnv1a(label)`, consumed in
/// `(i, j)` row order, so the result does not depend on evaluation order
/// across categories.
pub fn cdi_category<T: Scalar>(
    set: &EmbeddingSet<T>,
    index: &CategoryIndex,
    label: &str,
    seed: u64,
) -> Result<T> {
    let units = UnitRows::new(set)?;
    category_cdi(&units, index, label, seed).map(|c| c.cdi)
}

fn category_cdi<T: Scalar>(
    units: &UnitRows<T>,
    index: &CategoryIndex,
    label: &str,
    seed: u64,
) -> Result<CategoryCdi<T>> {
    let members = index.get(label).ok_or_else(|| Error::NotFound {
        label: label.to_owned(),
        suggestions: Vec::new(),
    })?;
    if members.len() < 2 {
        return Err(Error::InsufficientExemplars {
            label: label.to_owned(),
            count: members.len(),
        });
    }
    let outside: Vec<usize> = (0..index.num_rows())
        .filter(|&r| members.binary_search(&r).is_err())
        .collect();
    if outside.is_empty() {
        return Err(Error::NoContrast {
            label: label.to_owned(),
        });
    }
    let mut rng = seeded_for_label(seed, label);
    let mut acc = T::zero();
    for &i in members {
        for &j in members {
            if i == j {
                continue;
            }
            let contrast = outside[rng.random_range(0..outside.len())];
            acc += units.distance(i, contrast) - units.distance(i, j);
        }
    }
    let pairs = members.len() * (members.len() - 1);
    Ok(CategoryCdi {
        label: label.to_owned(),
        cdi: acc / T::count(pairs),
        pairs,
    })
}

/// CDI of every category with at least two exemplars, with mean and
/// population standard deviation over categories.
pub fn cdi_all<T: Scalar>(
    set: &EmbeddingSet<T>,
    index: &CategoryIndex,
    seed: u64,
) -> Result<CdiResult<T>> {
    let (eligible, skipped): (Vec<_>, Vec<_>) = index.iter().partition(|(_, rows)| rows.len() >= 2);
    if eligible.is_empty() {
        return Err(Error::NoEligibleCategories);
    }
    if index.len() < 2 {
        return Err(Error::NoContrast {
            label: eligible[0].0.to_owned(),
        });
    }
    let units = UnitRows::new(set)?;
    let per_category = eligible
        .par_iter()
        .map(|(label, _)| category_cdi(&units, index, label, seed))
        .collect::<Result<Vec<_>>>()?;

    let n = T::count(per_category.len());
    let mean = per_category.iter().map(|c| c.cdi).sum::<T>() / n;
    let var = per_category
        .iter()
        .map(|c| (c.cdi - mean) * (c.cdi - mean))
        .sum::<T>()
        / n;
    Ok(CdiResult {
        per_category,
        mean,
        std: var.sqrt(),
        seed,
        skipped: skipped
            .into_iter()
            .map(|(l, rows)| (l.to_owned(), rows.len()))
            .collect(),
    })
}
