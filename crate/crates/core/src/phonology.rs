//! Trigram phoneme language model and phonological information content.
//!
//! Every word is padded on the left with two boundary slots; there is no
//! end-of-word event. Probabilities use add-k smoothing over the phoneme
//! inventory: `p(x | c) = (count(c, x) + k) / (total(c) + k·V)`.
//! Surprisal is in nats.

use std::collections::BTreeMap;

use crate::corpus::PhonemeSequence;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Display name of the reserved left-padding symbol.
pub const BOUNDARY: &str = "#";

/// Default add-k smoothing constant.
pub const DEFAULT_SMOOTHING: f64 = 1.0;

/// A history slot: `0` is the boundary, `i + 1` is inventory symbol `i`.
type Slot = usize;

#[derive(Debug, Clone, PartialEq)]
struct ContextCounts {
    counts: Vec<u64>,
    total: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigramPlm<T> {
    inventory: Vec<String>,
    contexts: BTreeMap<(Slot, Slot), ContextCounts>,
    smoothing: T,
}

/// Fits a trigram model whose inventory is every phoneme seen in training.
pub fn fit_trigram<T: Scalar>(pronunciations: &[PhonemeSequence], k: T) -> Result<TrigramPlm<T>> {
    let inventory: Vec<String> = pronunciations
        .iter()
        .flat_map(|p| p.symbols().iter().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    TrigramPlm::fit(pronunciations, k, inventory)
}

/// Fits a trigram model over an explicit inventory, which must cover every
/// training phoneme.
pub fn fit_trigram_with_inventory<T: Scalar, S: Into<String>>(
    pronunciations: &[PhonemeSequence],
    k: T,
    inventory: impl IntoIterator<Item = S>,
) -> Result<TrigramPlm<T>> {
    let mut inventory: Vec<String> = inventory.into_iter().map(Into::into).collect();
    inventory.sort();
    inventory.dedup();
    TrigramPlm::fit(pronunciations, k, inventory)
}

impl<T: Scalar> TrigramPlm<T> {
    fn fit(pronunciations: &[PhonemeSequence], k: T, inventory: Vec<String>) -> Result<Self> {
        if !k.is_finite() || k < T::zero() {
            return Err(Error::Validation(format!(
                "smoothing constant must be finite and non-negative, got {k}"
            )));
        }
        if inventory.is_empty() {
            return Err(Error::UnusableModel("empty phoneme inventory".into()));
        }
        if k.is_zero() && pronunciations.is_empty() {
            return Err(Error::UnusableModel(
                "no training data and smoothing disabled".into(),
            ));
        }
        if inventory.iter().any(|s| s == BOUNDARY) {
            return Err(Error::Validation(format!(
                "`{BOUNDARY}` is reserved for the word boundary"
            )));
        }
        let mut model = Self {
            inventory,
            contexts: BTreeMap::new(),
            smoothing: k,
        };
        let v = model.inventory.len();
        for word in pronunciations {
            let (mut prev2, mut prev1) = (0, 0);
            for sym in word.symbols() {
                let id = model.symbol_id(sym)?;
                let ctx = model
                    .contexts
                    .entry((prev2, prev1))
                    .or_insert_with(|| ContextCounts {
                        counts: vec![0; v],
                        total: 0,
                    });
                ctx.counts[id] += 1;
                ctx.total += 1;
                prev2 = prev1;
                prev1 = id + 1;
            }
        }
        Ok(model)
    }

    fn symbol_id(&self, sym: &str) -> Result<usize> {
        self.inventory
            .binary_search_by(|s| s.as_str().cmp(sym))
            .map_err(|_| Error::OutOfVocabulary(sym.to_owned()))
    }

    fn slot(&self, sym: Option<&str>) -> Result<Slot> {
        sym.map_or(Ok(0), |s| self.symbol_id(s).map(|i| i + 1))
    }

    fn slot_name(&self, slot: Slot) -> &str {
        if slot == 0 {
            BOUNDARY
        } else {
            &self.inventory[slot - 1]
        }
    }

    pub fn inventory(&self) -> &[String] {
        &self.inventory
    }

    pub fn smoothing(&self) -> T {
        self.smoothing
    }

    /// Attested contexts with their event totals, in slot order. `None`
    /// stands for the boundary.
    pub fn contexts(&self) -> impl Iterator<Item = ((Option<&str>, Option<&str>), u64)> + '_ {
        self.contexts.iter().map(|(&(a, b), c)| {
            let name = |s: Slot| (s != 0).then(|| self.slot_name(s));
            ((name(a), name(b)), c.total)
        })
    }

    fn prob_slots(&self, prev2: Slot, prev1: Slot, next: usize) -> Result<T> {
        let k = self.smoothing;
        let v = T::count(self.inventory.len());
        let (count, total) = self
            .contexts
            .get(&(prev2, prev1))
            .map_or((0, 0), |c| (c.counts[next], c.total));
        let denom = T::count(total as usize) + k * v;
        if denom.is_zero() {
            return Err(Error::UnattestedContext(
                self.slot_name(prev2).to_owned(),
                self.slot_name(prev1).to_owned(),
            ));
        }
        Ok((T::count(count as usize) + k) / denom)
    }

    /// `p(next | prev2, prev1)`; `None` in the context is the boundary.
    pub fn probability(&self, prev2: Option<&str>, prev1: Option<&str>, next: &str) -> Result<T> {
        self.prob_slots(self.slot(prev2)?, self.slot(prev1)?, self.symbol_id(next)?)
    }

    /// Full conditional distribution over the inventory for one context.
    pub fn distribution(&self, prev2: Option<&str>, prev1: Option<&str>) -> Result<Vec<T>> {
        let (a, b) = (self.slot(prev2)?, self.slot(prev1)?);
        (0..self.inventory.len())
            .map(|x| self.prob_slots(a, b, x))
            .collect()
    }

    /// Per-phoneme surprisal `-ln p(φ_i | φ_{i-2}, φ_{i-1})`.
    pub fn surprisals(&self, word: &PhonemeSequence) -> Result<Vec<T>> {
        if word.is_empty() {
            return Err(Error::Validation("empty phoneme sequence".into()));
        }
        let (mut prev2, mut prev1) = (0, 0);
        let mut out = Vec::with_capacity(word.len());
        for (step, sym) in word.symbols().iter().enumerate() {
            let id = self.symbol_id(sym)?;
            let p = self.prob_slots(prev2, prev1, id)?;
            if p.is_zero() {
                return Err(Error::ZeroProbability {
                    symbol: sym.clone(),
                    step,
                });
            }
            // `0 - ln 1` is +0, where `-ln 1` would be -0.
            out.push(T::zero() - p.ln());
            prev2 = prev1;
            prev1 = id + 1;
        }
        Ok(out)
    }
}

/// Phonological information content: summed surprisal of the word's
/// phonemes, not length normalized.
pub fn pic<T: Scalar>(model: &TrigramPlm<T>, word: &PhonemeSequence) -> Result<T> {
    Ok(model.surprisals(word)?.into_iter().sum())
}

/// Number of phonemes in the word.
pub fn word_length(word: &PhonemeSequence) -> usize {
    word.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> PhonemeSequence {
        PhonemeSequence::parse(s).unwrap()
    }

    #[test]
    fn pure_smoothing_is_uniform() {
        let m = fit_trigram_with_inventory::<f64, _>(&[], 1.0, ["A", "B", "C", "D"]).unwrap();
        for p in m.distribution(None, Some("C")).unwrap() {
            assert_eq!(p, 0.25);
        }
        let v = pic(&m, &seq("A B C")).unwrap();
        assert!((v - 3.0 * 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn single_attested_path() {
        let m = fit_trigram::<f64>(&[seq("A B")], 0.0).unwrap();
        assert_eq!(m.probability(None, None, "A").unwrap(), 1.0);
        assert_eq!(m.probability(None, Some("A"), "B").unwrap(), 1.0);
        assert_eq!(pic(&m, &seq("A B")).unwrap(), 0.0);
    }

    #[test]
    fn unsmoothed_errors() {
        assert!(matches!(
            fit_trigram::<f64>(&[], 0.0),
            Err(Error::UnusableModel(_))
        ));
        let m = fit_trigram::<f64>(&[seq("A B")], 0.0).unwrap();
        assert!(matches!(
            pic(&m, &seq("A C")),
            Err(Error::OutOfVocabulary(_))
        ));
        assert!(matches!(
            pic(&m, &seq("B A")),
            Err(Error::ZeroProbability { step: 0, .. })
        ));
        assert!(matches!(
            pic(&m, &seq("A B B")),
            Err(Error::UnattestedContext(..))
        ));
        assert!(matches!(
            pic(&m, &seq("A A")),
            Err(Error::ZeroProbability { step: 1, .. })
        ));
    }

    #[test]
    fn rejects_bad_smoothing_and_reserved_symbol() {
        assert!(fit_trigram::<f64>(&[seq("A")], -1.0).is_err());
        assert!(fit_trigram::<f64>(&[seq("A #")], 1.0).is_err());
        assert!(matches!(
            fit_trigram_with_inventory::<f64, _>(&[seq("A Z")], 1.0, ["A"]),
            Err(Error::OutOfVocabulary(_))
        ));
    }

    #[test]
    fn counts_follow_left_padding() {
        let m = fit_trigram::<f64>(&[seq("A B A"), seq("A A")], 0.0).unwrap();
        // Contexts: (#,#)->A twice; (#,A)->B, (#,A)->A; (A,B)->A.
        assert_eq!(m.probability(None, Some("A"), "B").unwrap(), 0.5);
        assert_eq!(m.probability(Some("A"), Some("B"), "A").unwrap(), 1.0);
        let totals: Vec<u64> = m.contexts().map(|(_, t)| t).collect();
        assert_eq!(totals.iter().sum::<u64>(), 5);
    }

    #[test]
    fn word_length_counts_phonemes() {
        assert_eq!(word_length(&seq("M EY D")), 3);
        assert_eq!(word_length(&seq("AH")), 1);
    }
}
