use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `N` labeled embedding vectors of dimension `D`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSet<T> {
    labels: Vec<String>,
    data: Vec<T>,
    dim: usize,
}

impl<T: Scalar> EmbeddingSet<T> {
    /// Builds a set from labels and rows, validating shape and finiteness.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<T>>) -> Result<Self> {
        if labels.len() != rows.len() {
            return Err(Error::Validation(format!(
                "{} labels for {} rows",
                labels.len(),
                rows.len()
            )));
        }
        let dim = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    line: i + 1,
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Self::from_flat(labels, data, dim)
    }

    /// Builds a set from a row-major buffer of `labels.len() * dim` values.
    pub fn from_flat(labels: Vec<String>, data: Vec<T>, dim: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyInput);
        }
        if dim == 0 {
            return Err(Error::Validation(
                "embedding dimension must be positive".into(),
            ));
        }
        if data.len() != labels.len() * dim {
            return Err(Error::Validation(format!(
                "buffer of {} values cannot hold {} rows of dimension {dim}",
                data.len(),
                labels.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::Validation(format!(
                "row {} holds a non-finite component",
                pos / dim
            )));
        }
        Ok(Self { labels, data, dim })
    }

    /// Parses the tab-separated embedding format: `label\tx1\t...\txD` per line.
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut labels = Vec::new();
        let mut data = Vec::new();
        let mut dim = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "blank line".into(),
                });
            }
            let mut fields = line.split('\t');
            let label = fields.next().unwrap_or_default();
            if label.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "missing label".into(),
                });
            }
            let start = data.len();
            for token in fields {
                let value: f64 = token.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{token}` is not a number"),
                })?;
                let value = T::of(value);
                if !value.is_finite() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("`{token}` is not finite"),
                    });
                }
                data.push(value);
            }
            let found = data.len() - start;
            match dim {
                None if found == 0 => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "no components".into(),
                    })
                }
                None => dim = Some(found),
                Some(expected) if expected != found => {
                    return Err(Error::DimensionMismatch {
                        line: line_no,
                        expected,
                        found,
                    })
                }
                Some(_) => {}
            }
            labels.push(label.to_owned());
        }
        let dim = dim.ok_or(Error::EmptyInput)?;
        Self::from_flat(labels, data, dim)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_tsv(&text)
    }

    /// Renders the set in the embedding TSV format, one line per row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (label, row) in self.labels.iter().zip(self.rows()) {
            out.push_str(label);
            for &v in row {
                out.push('\t');
                write_number(&mut out, v);
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_tsv()).map_err(|e| Error::io(path, e))
    }

    /// Applies `f` to every row, keeping labels. The output dimension may differ.
    pub fn map_rows(&self, mut f: impl FnMut(&[T]) -> Vec<T>) -> Result<Self> {
        let rows = self.rows().map(&mut f).collect();
        Self::new(self.labels.clone(), rows)
    }

    pub fn category_index(&self) -> CategoryIndex {
        CategoryIndex::from_labels(&self.labels)
    }
}

impl<T> EmbeddingSet<T> {
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

    pub fn label(&self, row: usize) -> &str {
        &self.labels[row]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, T> {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[T] {
        &self.data
    }
}

/// Shortest round-trip decimal, switching to scientific notation for very
/// large or very small magnitudes.
fn write_number<T: Scalar>(out: &mut String, v: T) {
    let mag = v.abs().to_f64_lossy();
    if v.is_zero() || (1e-5..1e16).contains(&mag) {
        let _ = write!(out, "{v}");
    } else {
        let _ = write!(out, "{v:e}");
    }
}

/// Partition of row indices by word-type label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryIndex {
    groups: BTreeMap<String, Vec<usize>>,
    row_category: Vec<usize>,
}

impl CategoryIndex {
    pub fn from_labels(labels: &[String]) -> Self {
        let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, label) in labels.iter().enumerate() {
            groups.entry(label.clone()).or_default().push(i);
        }
        let mut row_category = vec![0; labels.len()];
        for (c, rows) in groups.values().enumerate() {
            for &r in rows {
                row_category[r] = c;
            }
        }
        Self {
            groups,
            row_category,
        }
    }

    /// Number of categories.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn num_rows(&self) -> usize {
        self.row_category.len()
    }

    pub fn get(&self, label: &str) -> Option<&[usize]> {
        self.groups.get(label).map(Vec::as_slice)
    }

    /// Categories in lexicographic (byte) order of their labels.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[usize])> {
        self.groups.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.groups.keys().map(String::as_str)
    }

    /// Position of the row's category in label order.
    pub fn category_of(&self, row: usize) -> usize {
        self.row_category[row]
    }

    pub fn same_category(&self, a: usize, b: usize) -> bool {
        self.row_category[a] == self.row_category[b]
    }

    /// True iff the groups partition `0..n` exactly.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        let mut total = 0;
        for rows in self.groups.values() {
            for &r in rows {
                if r >= n || seen[r] {
                    return false;
                }
                seen[r] = true;
                total += 1;
            }
        }
        total == n
    }
}

/// Two or more sets embedding the same samples in the same order.
#[derive(Debug, Clone, Copy)]
pub struct AlignedViews<'a, T> {
    views: &'a [EmbeddingSet<T>],
}

impl<'a, T> AlignedViews<'a, T> {
    pub fn views(&self) -> &'a [EmbeddingSet<T>] {
        self.views
    }

    /// Number of shared samples `K`.
    pub fn samples(&self) -> usize {
        self.views[0].len()
    }

    pub fn len(&self) -> usize {
        self.views.len()
    }

    pub fn is_empty(&self) -> bool {
        self.views.is_empty()
    }
}

/// Checks that every set has the same row count and label sequence.
pub fn align_views<T>(sets: &[EmbeddingSet<T>]) -> Result<AlignedViews<'_, T>> {
    if sets.len() < 2 {
        return Err(Error::Alignment(format!(
            "at least 2 views are required, got {}",
            sets.len()
        )));
    }
    let base = &sets[0];
    for (v, other) in sets.iter().enumerate().skip(1) {
        if other.len() != base.len() {
            return Err(Error::Alignment(format!(
                "view 0 has {} rows but view {v} has {}",
                base.len(),
                other.len()
            )));
        }
        if let Some(row) = (0..base.len()).find(|&i| base.label(i) != other.label(i)) {
            return Err(Error::Alignment(format!(
                "row {row}: view 0 has `{}` but view {v} has `{}`",
                base.label(row),
                other.label(row)
            )));
        }
    }
    Ok(AlignedViews { views: sets })
}
