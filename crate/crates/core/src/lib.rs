//! Representational-geometry analyses for labeled word embedding sets.
//!
//! Every analysis is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below name the double-precision instantiations used by the CLI.
//!
//! - [`corpus`]: embedding sets, category partitions, lexicons, reports
//! - [`geometry`]: isotropy score, similarity distributions, linear CKA
//! - [`discrimination`]: cosine distance, CDI, same-different mAP, centroids
//! - [`phonology`]: trigram phoneme model and phonological information content
//! - [`stats`]: Pearson correlation with p-values, run summaries, predictors
//! - [`objectives`]: reconstruction, phonological decoding and triplet losses
//! - [`synth`]: seeded synthetic embedding sets

pub mod corpus;
pub mod discrimination;
pub mod error;
pub mod geometry;
pub mod objectives;
pub mod phonology;
pub mod rng;
pub mod scalar;
pub mod stats;
pub mod synth;

pub use corpus::{
    align_views, AlignedViews, AnalysisReport, CategoryIndex, EmbeddingSet, Lexicon,
    PhonemeSequence,
};
pub use error::{Error, Result};
pub use scalar::Scalar;

pub type EmbeddingSet64 = corpus::EmbeddingSet<f64>;
pub type EmbeddingSet32 = corpus::EmbeddingSet<f32>;
pub type SimilarityStats64 = geometry::SimilarityStats<f64>;
pub type ConsistencyMatrix64 = geometry::ConsistencyMatrix<f64>;
pub type GramMatrix64 = geometry::GramMatrix<f64>;
pub type CdiResult64 = discrimination::CdiResult<f64>;
pub type CentroidTable64 = discrimination::CentroidTable<f64>;
pub type TrigramPlm64 = phonology::TrigramPlm<f64>;
pub type CorrelationResult64 = stats::CorrelationResult<f64>;
pub type RunSummary64 = stats::RunSummary<f64>;
pub type PredictorTable64 = stats::PredictorTable<f64>;
pub type FeatureSequence64 = objectives::FeatureSequence<f64>;
pub type ProbSequence64 = objectives::ProbSequence<f64>;
pub type TripletConfig64 = objectives::TripletConfig<f64>;
