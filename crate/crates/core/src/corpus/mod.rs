//! Labeled embedding sets, pronunciation lexicons and analysis reports.

mod embedding;
mod lexicon;
mod report;

pub use embedding::{align_views, AlignedViews, CategoryIndex, EmbeddingSet};
pub use lexicon::{Lexicon, PhonemeSequence};
pub use report::{AnalysisReport, Cell, InputDigest, ParamValue, Table};
