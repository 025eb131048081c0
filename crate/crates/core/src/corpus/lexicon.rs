use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

/// Ordered, non-empty phoneme symbols of one word form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhonemeSequence {
    symbols: Vec<String>,
}

impl PhonemeSequence {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Validation("empty pronunciation".into()));
        }
        if let Some(bad) = symbols
            .iter()
            .find(|s| s.is_empty() || s.chars().any(char::is_whitespace))
        {
            return Err(Error::Validation(format!("invalid phoneme symbol `{bad}`")));
        }
        Ok(Self { symbols })
    }

    /// Parses space-separated symbols, e.g. `"M EY D"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.split_whitespace())
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Word length in phonemes.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Self { symbols }
    }
}

impl std::fmt::Display for PhonemeSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.symbols.join(" "))
    }
}

/// Word → pronunciation mapping.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, PhonemeSequence>,
    duplicates: usize,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an entry. A repeated word replaces the earlier pronunciation
    /// and bumps the duplicate counter.
    pub fn insert(&mut self, word: impl Into<String>, pron: PhonemeSequence) {
        if self.entries.insert(word.into(), pron).is_some() {
            self.duplicates += 1;
        }
    }

    /// Parses `word\tP1 P2 ...` lines.
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut lex = Self::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.is_empty() {
                continue;
            }
            let (word, pron) = line.split_once('\t').ok_or_else(|| Error::Parse {
                line: line_no,
                message: "missing tab separator".into(),
            })?;
            if word.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "missing word".into(),
                });
            }
            let pron = PhonemeSequence::parse(pron)
                .map_err(|e| Error::Validation(format!("line {line_no}: {e}")))?;
            lex.insert(word, pron);
        }
        Ok(lex)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_tsv(&text)
    }

    pub fn to_tsv(&self) -> String {
        self.entries
            .iter()
            .map(|(w, p)| format!("{w}\t{p}\n"))
            .collect()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_tsv()).map_err(|e| Error::io(path, e))
    }

    pub fn get(&self, word: &str) -> Option<&PhonemeSequence> {
        self.entries.get(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PhonemeSequence)> {
        self.entries.iter().map(|(w, p)| (w.as_str(), p))
    }

    pub fn pronunciations(&self) -> impl Iterator<Item = &PhonemeSequence> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of lines that overwrote an earlier entry for the same word.
    pub fn duplicates(&self) -> usize {
        self.duplicates
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entry() {
        let lex = Lexicon::parse_tsv("made\tM EY D\n").unwrap();
        let p = lex.get("made").unwrap();
        assert_eq!(p.symbols(), &["M", "EY", "D"]);
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn empty_pronunciation_is_rejected() {
        assert!(matches!(
            Lexicon::parse_tsv("made\t"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            Lexicon::parse_tsv("made M EY D"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn last_duplicate_wins() {
        let lex = Lexicon::parse_tsv("made\tM EY D\nmade\tM EY T\n").unwrap();
        assert_eq!(lex.duplicates(), 1);
        assert_eq!(lex.get("made").unwrap().to_string(), "M EY T");
    }

    #[test]
    fn symbols_reject_whitespace() {
        assert!(PhonemeSequence::new(["A B"]).is_err());
        assert!(PhonemeSequence::new([""]).is_err());
        assert!(PhonemeSequence::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn length_is_additive() {
        let a = PhonemeSequence::parse("M EY").unwrap();
        let b = PhonemeSequence::parse("D").unwrap();
        assert_eq!(a.concat(&b).len(), a.len() + b.len());
    }
}
