use super::correlation::{pearson, CorrelationResult};
use crate::corpus::{EmbeddingSet, Lexicon};
use crate::discrimination::CdiResult;
use crate::error::{Error, Result};
use crate::phonology::{pic, TrigramPlm};
use crate::scalar::Scalar;

/// Predictor columns correlated against CDI, in report order.
pub const PREDICTORS: [&str; 3] = ["frequency", "length", "pic"];

#[derive(Debug, Clone, PartialEq)]
pub struct PredictorRow<T> {
    pub label: String,
    pub cdi: T,
    /// Exemplar count in the embedding set.
    pub frequency: usize,
    /// Pronunciation length in phonemes.
    pub length: usize,
    pub pic: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictorTable<T> {
    pub rows: Vec<PredictorRow<T>>,
    /// Word types left out, with the reason.
    pub skipped: Vec<(String, String)>,
}

impl<T: Scalar> PredictorTable<T> {
    pub fn column(&self, name: &str) -> Option<Vec<T>> {
        let get: fn(&PredictorRow<T>) -> T = match name {
            "cdi" => |r| r.cdi,
            "frequency" => |r| T::count(r.frequency),
            "length" => |r| T::count(r.length),
            "pic" => |r| r.pic,
            _ => return None,
        };
        Some(self.rows.iter().map(get).collect())
    }

    /// Pearson correlation of CDI with each predictor. A predictor that is
    /// constant over the table yields an error entry rather than failing the
    /// whole analysis.
    pub fn correlations(&self) -> Vec<(&'static str, Result<CorrelationResult<T>>)> {
        let cdi = self.column("cdi").expect("cdi column exists");
        PREDICTORS
            .iter()
            .map(|&name| {
                let col = self.column(name).expect("predictor column exists");
                (name, pearson(&col, &cdi))
            })
            .collect()
    }
}

/// Joins per-category CDI with frequency, length and PIC.
///
/// Categories with fewer than `min_exemplars` exemplars, or without a
/// pronunciation in `lexicon`, are skipped and listed.
pub fn build_predictor_table<T: Scalar>(
    cdi: &CdiResult<T>,
    set: &EmbeddingSet<T>,
    lexicon: &Lexicon,
    plm: &TrigramPlm<T>,
    min_exemplars: usize,
) -> Result<PredictorTable<T>> {
    let index = set.category_index();
    let mut rows = Vec::new();
    let mut skipped: Vec<(String, String)> = cdi
        .skipped
        .iter()
        .map(|(l, n)| (l.clone(), format!("{n} exemplar(s), no CDI")))
        .collect();
    for entry in &cdi.per_category {
        let frequency = index.get(&entry.label).map_or(0, <[usize]>::len);
        if frequency < min_exemplars {
            skipped.push((
                entry.label.clone(),
                format!("{frequency} exemplar(s), below minimum {min_exemplars}"),
            ));
            continue;
        }
        let Some(pron) = lexicon.get(&entry.label) else {
            skipped.push((entry.label.clone(), "no pronunciation".into()));
            continue;
        };
        rows.push(PredictorRow {
            label: entry.label.clone(),
            cdi: entry.cdi,
            frequency,
            length: pron.len(),
            pic: pic(plm, pron)?,
        });
    }
    if rows.is_empty() {
        return Err(Error::NoOverlap);
    }
    skipped.sort();
    Ok(PredictorTable { rows, skipped })
}
